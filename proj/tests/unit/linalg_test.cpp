#include <random>

#include <gtest/gtest.h>

#include "symparab/errors.hpp"
#include "symparab/linalg.hpp"

using namespace symparab;

namespace {

const Cyclotomic I = imaginary_unit();

Cyclotomic random_gaussian(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> d(-range, range);
  return Cyclotomic(d(rng)) + Cyclotomic(d(rng)) * I;
}

ExactMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range = 3) {
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_gaussian(rng, range);
  return m;
}

// Matrix of rank <= k as a product of random (r x k) and (k x c) factors.
ExactMatrix random_low_rank(std::mt19937& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k) * random_matrix(rng, k, c);
}

ExactVector random_vector(std::mt19937& rng, std::size_t n) {
  ExactVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = random_gaussian(rng);
  return v;
}

ExactMatrix perm_matrix(const std::vector<std::size_t>& p) {
  ExactMatrix m(p.size(), p.size());
  for (std::size_t j = 0; j < p.size(); ++j) m(p[j], j) = Cyclotomic(1);
  return m;
}

} // namespace

TEST(Linalg, RrefOfSmallRationalMatrix) {
  // Worked by hand: rows (1 2 3), (2 4 7), (1 2 4) reduce to (1 2 0), (0 0 1).
  ExactMatrix m{{1, 2, 3}, {2, 4, 7}, {1, 2, 4}};
  RrefResult r = rref(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 2}));
  ExactMatrix expected{{1, 2, 0}, {0, 0, 1}, {0, 0, 0}};
  EXPECT_EQ(r.reduced, expected);
}

TEST(Linalg, KernelAndRankNullity) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t r = 2 + trial % 4, c = 3 + trial % 5, k = 1 + trial % 3;
    ExactMatrix m = random_low_rank(rng, r, c, k);
    Subspace ker = kernel(m);
    EXPECT_EQ(rank(m) + ker.dim(), c);
    for (const auto& v : ker.basis_vectors()) EXPECT_TRUE((m * v).is_zero());
  }
}

TEST(Linalg, InverseOfRandomMatrices) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix m = random_matrix(rng, 4, 4);
    if (rank(m) < 4) continue;
    ExactMatrix inv = m.inverse();
    EXPECT_TRUE((m * inv).is_identity());
    EXPECT_TRUE((inv * m).is_identity());
  }
  ExactMatrix singular{{1, 2}, {2, 4}};
  EXPECT_THROW(singular.inverse(), DivisionByZero);
}

TEST(Linalg, SolveAndInconsistentSystems) {
  ExactMatrix a{{1, 1}, {1, -1}, {2, 0}};
  ExactMatrix b{{3}, {1}, {4}};
  ExactMatrix x = solve(a, b);
  EXPECT_EQ(a * x, b);
  ExactMatrix bad{{3}, {1}, {5}};
  EXPECT_THROW(solve(a, bad), InvalidArgument);
}

TEST(Linalg, SubspaceCanonicalForm) {
  // Two different spanning sets of the same plane give identical bases.
  ExactVector a{1, I, 0}, b{0, 1, 1};
  ExactVector c = a + b, d = Cyclotomic(2) * a - Cyclotomic(3) * I * b;
  std::vector<ExactVector> s1{a, b}, s2{d, c};
  Subspace p = Subspace::span(s1, 3), q = Subspace::span(s2, 3);
  EXPECT_EQ(p, q);
  EXPECT_EQ(p.hash(), q.hash());
  EXPECT_TRUE(p.contains(c));
  EXPECT_FALSE(p.contains(ExactVector{0, 0, 1}));
}

TEST(Linalg, IntersectionDimensionFormula) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 6;
    std::vector<ExactVector> xs, ys;
    for (int i = 0; i < 2 + trial % 3; ++i) xs.push_back(random_vector(rng, n));
    ExactVector shared = random_vector(rng, n);
    xs.push_back(shared);
    for (int i = 0; i < 1 + trial % 4; ++i) ys.push_back(random_vector(rng, n));
    ys.push_back(shared);
    Subspace x = Subspace::span(xs, n), y = Subspace::span(ys, n);
    Subspace cap = x.intersect(y);
    EXPECT_EQ(cap.dim() + x.sum(y).dim(), x.dim() + y.dim());
    EXPECT_TRUE(x.contains(cap));
    EXPECT_TRUE(y.contains(cap));
    EXPECT_TRUE(cap.contains(shared));
  }
}

TEST(Linalg, FixedSpaceOfPermutations) {
  // <(0 1 2)> on C^4 fixes span{e0 + e1 + e2, e3}.
  std::vector<ExactMatrix> gens{perm_matrix({1, 2, 0, 3})};
  Subspace fix = fixed_space(gens, 4);
  EXPECT_EQ(fix.dim(), 2u);
  EXPECT_TRUE(fix.contains(ExactVector{1, 1, 1, 0}));
  EXPECT_TRUE(fix.contains(ExactVector{0, 0, 0, 1}));
  EXPECT_EQ(fixed_space({}, 3), Subspace::full(3));
}

TEST(Linalg, AveragingProjectorIsIdempotentOntoFixedSpace) {
  ExactMatrix g = perm_matrix({1, 2, 0, 3});
  std::vector<ExactMatrix> elems{ExactMatrix::identity(4), g, g * g};
  ExactMatrix p = averaging_projector(elems);
  EXPECT_EQ(p * p, p);
  EXPECT_EQ(Subspace::column_space(p), fixed_space(std::span(elems).subspan(1, 1), 4));
  for (const auto& h : elems) EXPECT_EQ(h * p, p);
  EXPECT_THROW(averaging_projector({}), InvalidArgument);
}

TEST(Linalg, SymplecticComplementProperties) {
  std::mt19937 rng(3);
  auto sp = SymplecticSpace::standard(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ExactVector> vs;
    for (int i = 0; i < 1 + trial % 5; ++i) vs.push_back(random_vector(rng, 8));
    Subspace s = Subspace::span(vs, 8);
    Subspace c = symplectic_complement(s, sp);
    EXPECT_EQ(c.dim() + s.dim(), 8u);
    EXPECT_EQ(symplectic_complement(c, sp), s);
    for (const auto& x : s.basis_vectors())
      for (const auto& y : c.basis_vectors()) EXPECT_TRUE(sp.omega(x, y).is_zero());
  }
}

TEST(Linalg, IsotropicAndLagrangian) {
  auto sp = SymplecticSpace::standard(4);
  std::vector<ExactVector> lag{ExactVector::unit(4, 0), ExactVector::unit(4, 1)};
  Subspace l = Subspace::span(lag, 4);
  EXPECT_TRUE(is_isotropic(l, sp));
  EXPECT_TRUE(is_lagrangian(l, sp));
  std::vector<ExactVector> hyp{ExactVector::unit(4, 0), ExactVector::unit(4, 2)};
  Subspace h = Subspace::span(hyp, 4);
  EXPECT_FALSE(is_isotropic(h, sp));
  EXPECT_TRUE(is_symplectic_subspace(h, sp));
  std::vector<ExactVector> line{ExactVector{1, 1, 0, 0}};
  Subspace ln = Subspace::span(line, 4);
  EXPECT_TRUE(is_isotropic(ln, sp));
  EXPECT_FALSE(is_lagrangian(ln, sp));
}

TEST(Linalg, SymplecticFormValidation) {
  EXPECT_THROW(SymplecticSpace(ExactMatrix{{1, 0}, {0, 1}}), InvalidArgument);
  EXPECT_THROW(SymplecticSpace(ExactMatrix{{0, 0}, {0, 0}}), DegenerateForm);
  EXPECT_NO_THROW(SymplecticSpace(ExactMatrix{{0, 2}, {-2, 0}}));
}

TEST(Linalg, SymplecticBasisOfStandardForms) {
  ExactMatrix j = standard_symplectic_form(6);
  SymplecticBasis b = symplectic_basis(j);
  EXPECT_TRUE(b.change.is_identity());
  EXPECT_TRUE(b.scale.is_one());
  SymplecticBasis b2 = symplectic_basis(Cyclotomic(2) * j);
  EXPECT_TRUE(b2.change.is_identity());
  EXPECT_EQ(b2.scale, Cyclotomic(2));
}

TEST(Linalg, SymplecticBasisOfRandomGram) {
  std::mt19937 rng(19);
  int checked = 0;
  for (int trial = 0; trial < 20 && checked < 6; ++trial) {
    ExactMatrix a = random_matrix(rng, 6, 6);
    ExactMatrix gram = a - a.transpose();
    if (rank(gram) < 6) continue;
    ++checked;
    SymplecticBasis b = symplectic_basis(gram);
    EXPECT_EQ(b.change.transpose() * gram * b.change, b.scale * standard_symplectic_form(6));
    EXPECT_EQ(rank(b.change), 6u);
  }
  EXPECT_GT(checked, 0);
  EXPECT_THROW(symplectic_basis(ExactMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}), DegenerateForm);
}

TEST(Linalg, RestrictionToInvariantSubspace) {
  // Swap of the two hyperbolic planes of C^4 with form J_4 preserves
  // W = span{e0 + e1, e2 + e3}, on which it acts trivially.
  auto sp = SymplecticSpace::standard(4);
  ExactMatrix swap = perm_matrix({1, 0, 3, 2});
  ASSERT_TRUE(sp.preserves(swap));
  std::vector<ExactVector> wv{ExactVector{1, 1, 0, 0}, ExactVector{0, 0, 1, 1}};
  Subspace w = Subspace::span(wv, 4);
  std::vector<ExactMatrix> gens{swap};
  Restriction r = restrict_to(gens, w, sp);
  ASSERT_EQ(r.gens.size(), 1u);
  EXPECT_TRUE(r.gens[0].is_identity());
  EXPECT_EQ(r.form, (ExactMatrix{{0, 2}, {-2, 0}}));

  std::vector<ExactVector> bad{ExactVector{1, 0, 0, 0}, ExactVector{0, 0, 1, 0}};
  EXPECT_THROW(restrict_to(gens, Subspace::span(bad, 4), sp), NotInvariant);
  std::vector<ExactVector> iso{ExactVector{1, 1, 0, 0}};
  EXPECT_THROW(restrict_to(gens, Subspace::span(iso, 4), sp), DegenerateForm);
}

TEST(Linalg, SpinIsSmallestInvariantSubspace) {
  ExactMatrix g = perm_matrix({1, 2, 0, 3});
  std::vector<ExactMatrix> gens{g};
  Subspace s = spin(ExactVector{1, 0, 0, 0}, gens);
  EXPECT_EQ(s.dim(), 3u);
  EXPECT_EQ(s.image_under(g), s);
  Subspace t = spin(ExactVector{1, 1, 1, 5}, gens);
  EXPECT_EQ(t.dim(), 1u);
  // Contained in every invariant subspace that contains the seed.
  std::mt19937 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    ExactVector v = random_vector(rng, 4);
    v[3] = Cyclotomic(0);
    Subspace sv = spin(v, gens);
    EXPECT_TRUE(s.contains(sv));
    for (const auto& b : sv.basis_vectors()) EXPECT_TRUE(sv.contains(g * b));
  }
  EXPECT_EQ(spin(ExactVector(4), gens).dim(), 0u);
}

TEST(Linalg, EchelonBasisMatchesBatchSpan) {
  std::mt19937 rng(23);
  std::vector<ExactVector> vs;
  EchelonBasis eb(5);
  for (int i = 0; i < 4; ++i) {
    vs.push_back(random_vector(rng, 5));
    eb.add(vs.back());
  }
  vs.push_back(vs[0] + vs[1]);
  EXPECT_FALSE(eb.add(vs.back()));
  EXPECT_EQ(eb.subspace(), Subspace::span(vs, 5));
}

TEST(Linalg, DimensionErrors) {
  ExactMatrix a(2, 3), b(2, 3);
  EXPECT_THROW(a * b, DimensionMismatch);
  EXPECT_THROW(a * ExactVector(2), DimensionMismatch);
  EXPECT_THROW(Subspace::full(3).intersect(Subspace::full(4)), DimensionMismatch);
}
