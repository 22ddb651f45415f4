#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "symparab/errors.hpp"
#include "symparab/matgroup.hpp"

using namespace symparab;

namespace {

const Cyclotomic I = imaginary_unit();

ExactMatrix perm_matrix(const std::vector<std::size_t>& p) {
  ExactMatrix m(p.size(), p.size());
  for (std::size_t j = 0; j < p.size(); ++j) m(p[j], j) = Cyclotomic(1);
  return m;
}

// Sym(n) as permutation matrices, generated by a transposition and an n-cycle.
FiniteMatrixGroup symmetric(std::size_t n) {
  std::vector<std::size_t> t(n), c(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return FiniteMatrixGroup(n, {perm_matrix(t), perm_matrix(c)});
}

// Signed permutations of n coordinates (order 2^n n!).
FiniteMatrixGroup hyperoctahedral(std::size_t n) {
  FiniteMatrixGroup s = symmetric(n);
  std::vector<ExactMatrix> gens = s.gens();
  ExactMatrix d = ExactMatrix::identity(n);
  d(0, 0) = Cyclotomic(-1);
  gens.push_back(d);
  return FiniteMatrixGroup(n, gens);
}

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

ExactVector random_small_vector(std::mt19937& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  ExactVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Cyclotomic(d(rng));
  return v;
}

} // namespace

TEST(PermBsgs, SymmetricGroupOrders) {
  for (std::size_t n = 2; n <= 7; ++n) {
    Perm t = perm_identity(n), c(n);
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>((i + 1) % n);
    std::vector<Point> base(n - 1);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Perm> gens{t, c};
    PermBsgs b = PermBsgs::build(n, base, gens);
    EXPECT_EQ(b.order(), factorial(n));
    EXPECT_TRUE(b.contains(perm_compose(t, c)));
  }
}

TEST(PermBsgs, AlternatingGroupExcludesOddPermutations) {
  // A_5 via 3-cycles on 5 points.
  Perm a{1, 2, 0, 3, 4}, b{0, 1, 3, 4, 2};
  std::vector<Perm> gens{a, b};
  PermBsgs bs = PermBsgs::build(5, {0, 1, 2, 3}, gens);
  EXPECT_EQ(bs.order(), 60u);
  Perm transposition{1, 0, 2, 3, 4};
  EXPECT_FALSE(bs.contains(transposition));
  EXPECT_TRUE(bs.contains(perm_compose(a, b)));
}

TEST(MatGroup, TrivialGroup) {
  auto g = FiniteMatrixGroup::trivial(3);
  EXPECT_EQ(g.order(), 1u);
  ASSERT_EQ(g.elements().size(), 1u);
  EXPECT_TRUE(g.elements()[0].is_identity());
  EXPECT_EQ(g.element_order_histogram(), (std::map<std::uint64_t, std::uint64_t>{{1, 1}}));
  EXPECT_TRUE(g.is_member(ExactMatrix::identity(3)));
  EXPECT_FALSE(g.is_member(perm_matrix({1, 0, 2})));
  OrbitData o = g.orbit(ExactVector(3));
  EXPECT_EQ(o.size(), 1u);
  EXPECT_TRUE(g.transversal(o, 0).is_identity());
}

TEST(MatGroup, CyclicOrderFourHistogram) {
  FiniteMatrixGroup g(2, {ExactMatrix{{I, 0}, {0, -I}}});
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.element_order_histogram(), (std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 1}, {4, 2}}));
}

TEST(MatGroup, QuaternionGroup) {
  FiniteMatrixGroup q(2, {ExactMatrix{{I, 0}, {0, -I}}, ExactMatrix{{0, 1}, {-1, 0}}});
  EXPECT_EQ(q.order(), 8u);
  EXPECT_EQ(q.elements().size(), 8u);
  EXPECT_EQ(q.element_order_histogram(), (std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 1}, {4, 6}}));
}

TEST(MatGroup, OrderAgreesWithEnumeration) {
  for (std::size_t n = 2; n <= 5; ++n) {
    auto s = symmetric(n);
    EXPECT_EQ(s.order(), factorial(n));
    EXPECT_EQ(s.elements().size(), s.order());
    auto b = hyperoctahedral(n);
    EXPECT_EQ(b.order(), (1u << n) * factorial(n));
    EXPECT_EQ(b.elements().size(), b.order());
  }
}

TEST(MatGroup, MembershipAgreesWithEnumeration) {
  auto s = symmetric(4);
  auto b = hyperoctahedral(4);
  for (const auto& g : b.elements()) {
    bool in_s = std::find(s.elements().begin(), s.elements().end(), g) != s.elements().end();
    EXPECT_EQ(s.is_member(g), in_s);
    EXPECT_TRUE(b.is_member(g));
  }
  EXPECT_FALSE(b.is_member(Cyclotomic(2) * ExactMatrix::identity(4)));
  EXPECT_TRUE(b.contains(s));
  EXPECT_FALSE(s.contains(b));
}

TEST(MatGroup, EnumerationCap) {
  auto s = symmetric(6).with_limits({.orbit_cap = 1000, .enumeration_cap = 100, .domain_cap = 1000});
  EXPECT_THROW(s.elements(), CapExceeded);
  auto small = symmetric(4).with_limits({.orbit_cap = 3, .enumeration_cap = 100, .domain_cap = 1000});
  EXPECT_THROW(small.orbit(ExactVector{1, 0, 0, 0}), CapExceeded);
}

TEST(MatGroup, OrbitStabilizerOnRandomVectors) {
  std::mt19937 rng(1);
  auto b = hyperoctahedral(4);
  const auto& elems = b.elements();
  for (int trial = 0; trial < 25; ++trial) {
    ExactVector v = random_small_vector(rng, 4, 2);
    OrbitData o = b.orbit(v);
    FiniteMatrixGroup st = b.stabilizer(v, static_cast<std::uint64_t>(trial));
    EXPECT_EQ(o.size() * st.order(), b.order());
    // Brute-force oracle: elements fixing v.
    std::size_t fixing = 0;
    for (const auto& g : elems)
      if (g * v == v) ++fixing;
    EXPECT_EQ(st.order(), fixing);
    EXPECT_EQ(st.elements().size(), fixing);
    for (const auto& g : st.gens()) EXPECT_EQ(g * v, v);
    for (std::size_t i = 0; i < o.size(); i += 7) EXPECT_EQ(b.transversal(o, i) * v, o.point(i));
  }
}

TEST(MatGroup, ProjectiveOrbit) {
  auto b = hyperoctahedral(3);
  // Lines through (+-1, +-1, 0) and permutations: 6 lines; vectors: 12.
  EXPECT_EQ(b.orbit(ExactVector{1, 1, 0}).size(), 12u);
  OrbitData lines = b.orbit(ExactVector{2, 2, 0}, OrbitNormalize::projective);
  EXPECT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines.point(0), (ExactVector{1, 1, 0}));
}

TEST(MatGroup, PointwiseStabilizerIsBasisIndependent) {
  auto b = hyperoctahedral(4);
  std::vector<ExactVector> vs{ExactVector{1, 1, 0, 0}, ExactVector{0, 0, 1, 0}};
  Subspace s = Subspace::span(vs, 4);
  FiniteMatrixGroup p1 = b.pointwise_stabilizer(s);
  FiniteMatrixGroup p2 = b.stabilizer(vs[1]).stabilizer(vs[0]);
  FiniteMatrixGroup p3 = b.stabilizer(vs[0] + vs[1]).stabilizer(vs[0]);
  // Fixes e0 + e1 and e2: swap(0,1) and sign on e3 -> order 4.
  EXPECT_EQ(p1.order(), 4u);
  EXPECT_TRUE(p1.same_group(p2));
  EXPECT_TRUE(p1.same_group(p3));
  EXPECT_TRUE(b.pointwise_stabilizer(Subspace::zero(4)).same_group(b));
  EXPECT_EQ(b.pointwise_stabilizer(Subspace::full(4)).order(), 1u);
}

TEST(MatGroup, StabilizerOfZeroIsWholeGroup) {
  auto s = symmetric(4);
  EXPECT_EQ(s.stabilizer(ExactVector(4)).order(), 24u);
}

TEST(MatGroup, SchreierGeneratorsGenerateTheStabilizer) {
  // Re-enumerating from the returned generators reproduces the element set
  // of the stabilizer obtained by filtering.
  auto b = hyperoctahedral(3);
  ExactVector v{1, 0, 0};
  FiniteMatrixGroup st = b.stabilizer(v);
  FiniteMatrixGroup fresh(3, st.gens());
  std::vector<ExactMatrix> expected;
  for (const auto& g : b.elements())
    if (g * v == v) expected.push_back(g);
  auto got = fresh.elements();
  auto less = [](const ExactMatrix& x, const ExactMatrix& y) { return canonical_less(x, y); };
  std::sort(expected.begin(), expected.end(), less);
  std::sort(got.begin(), got.end(), less);
  EXPECT_EQ(got, expected);
}
