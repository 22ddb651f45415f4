#include <algorithm>
#include <cctype>

#include <gtest/gtest.h>

#include "symparab/catalogue.hpp"
#include "symparab/errors.hpp"
#include "symparab/reflection.hpp"

using namespace symparab;

namespace {

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

} // namespace

TEST(Catalogue, PrimitiveOrders) {
  // Orders as tabulated for the seven groups.
  const std::vector<std::pair<std::string, std::uint64_t>> orders{
      {"Q", 12096}, {"R", 1209600}, {"S1", 6912}, {"S2", 82944}, {"S3", 3317760}, {"T", 2592000}, {"U", 27371520}};
  ASSERT_EQ(primitive_names().size(), orders.size());
  for (const auto& [name, order] : orders) {
    const GroupSpec& spec = build_primitive(name);
    EXPECT_EQ(spec.expected_order, order) << name;
    EXPECT_EQ(spec.group.order(), order) << name;
  }
  EXPECT_THROW(build_primitive("V"), InvalidArgument);
}

TEST(Catalogue, OrderAgreesWithEnumerationForSmallPrimitives) {
  for (const char* name : {"Q", "S1"}) {
    const GroupSpec& spec = build_primitive(name);
    EXPECT_EQ(spec.group.elements().size(), spec.expected_order) << name;
  }
}

TEST(Catalogue, RootLineCounts) {
  const std::vector<std::pair<std::string, std::size_t>> counts{{"Q", 4}, {"R", 4},  {"S1", 4}, {"S2", 4},
                                                                {"S3", 5}, {"T", 4}, {"U", 5}};
  for (const auto& [name, n] : counts) {
    const GroupSpec& spec = build_primitive(name);
    EXPECT_EQ(spec.root_lines.size(), n) << name;
    for (const auto& r : spec.root_lines) {
      EXPECT_FALSE(r.vector.is_zero());
      EXPECT_EQ(r.vector[r.vector.leading_index()], Cyclotomic(1));
    }
  }
}

TEST(Catalogue, TableRowCounts) {
  const std::vector<std::pair<std::string, std::size_t>> rows{{"Q", 2}, {"R", 3},  {"S1", 6}, {"S2", 5},
                                                              {"S3", 4}, {"T", 7}, {"U", 5}};
  for (const auto& [name, n] : rows) {
    const GroupSpec& spec = build_primitive(name);
    EXPECT_EQ(spec.table.size(), n) << name;
    EXPECT_EQ(spec.maximal_classes, n) << name;
    EXPECT_EQ(spec.default_mode, spec.expected_order <= 82944 ? "full-lattice" : "table") << name;
  }
}

TEST(Catalogue, ReflectionFromRootBasics) {
  // Root (2, 0, 0, 0, 0, 0) of a 6-dimensional space: J e1 = e4.
  const ExactVector a{2, 0, 0, 0, 0, 0};
  const ExactMatrix g = reflection_from_root(a, SymplecticSpace::standard(6), QuaternionicStructure(6));
  ExactMatrix expected = ExactMatrix::identity(6);
  expected(0, 0) = -1;
  expected(3, 3) = -1;
  EXPECT_EQ(g, expected);
  EXPECT_EQ(g * g, ExactMatrix::identity(6));
  EXPECT_TRUE(is_symplectic_reflection(g));
  EXPECT_THROW(reflection_from_root(ExactVector(6), SymplecticSpace::standard(6), QuaternionicStructure(6)), Error);
}

TEST(Catalogue, QuaternionicStructure) {
  const QuaternionicStructure j(4);
  const Cyclotomic i = imaginary_unit();
  const ExactVector x{1, i, 2, -i};
  // J^2 = -1 and J is antilinear.
  EXPECT_EQ(j.apply(j.apply(x)), -x);
  EXPECT_EQ(j.apply(i * x), (-i) * j.apply(x));
  // omega(Jx, Jy) = conj(omega(x, y)).
  const SymplecticSpace sp = SymplecticSpace::standard(4);
  const ExactVector y{0, 1, i, 3};
  EXPECT_EQ(sp.omega(j.apply(x), j.apply(y)), sp.omega(x, y).conj());
}

TEST(Catalogue, Sl2SubgroupOrders) {
  const SymplecticSpace sp = SymplecticSpace::standard(2);
  const std::vector<std::pair<FiniteMatrixGroup, std::size_t>> cases{
      {build_sl2_subgroup(Sl2Kind::cyclic, 4), 4},
      {build_sl2_subgroup(Sl2Kind::binary_dihedral, 2), 8},
      {build_sl2_subgroup(Sl2Kind::binary_dihedral, 5), 20},
      {build_sl2_subgroup(Sl2Kind::binary_tetrahedral), 24},
      {build_sl2_subgroup(Sl2Kind::binary_octahedral), 48},
      {build_sl2_subgroup(Sl2Kind::binary_icosahedral), 120},
  };
  for (const auto& [g, n] : cases) {
    EXPECT_EQ(g.elements().size(), n);
    EXPECT_EQ(g.order(), n);
    for (const auto& x : g.gens()) EXPECT_TRUE(sp.preserves(x));
  }
  // Entries of the icosahedral group live in Q(zeta_5, i).
  const FiniteMatrixGroup ico = build_sl2_subgroup(Sl2Kind::binary_icosahedral);
  for (const auto& x : ico.elements())
    for (const auto& c : x.data()) EXPECT_EQ(20 % c.conductor(), 0);
  EXPECT_THROW(build_sl2_subgroup(Sl2Kind::binary_dihedral, 1), InvalidArgument);
}

TEST(Catalogue, GmpnOrdersByEnumeration) {
  const std::vector<std::array<int, 4>> cases{{3, 3, 2, 6},   {4, 2, 2, 16}, {5, 5, 2, 10}, {2, 2, 3, 24},
                                              {2, 1, 3, 48},  {4, 4, 3, 96}, {5, 5, 3, 150}, {3, 3, 4, 648},
                                              {3, 3, 3, 54}};
  for (auto [m, p, n, order] : cases) {
    const FiniteMatrixGroup w = build_gmpn(m, p, n);
    const std::uint64_t formula = power(m, n) * factorial(n) / p;
    EXPECT_EQ(w.elements().size(), formula) << m << p << n;
    EXPECT_EQ(formula, static_cast<std::uint64_t>(order));
    const FiniteMatrixGroup d = double_group(w);
    EXPECT_EQ(d.order(), formula);
    const SymplecticSpace sp = SymplecticSpace::standard(2 * n);
    for (const auto& g : d.gens()) EXPECT_TRUE(sp.preserves(g));
  }
  EXPECT_THROW(build_gmpn(4, 3, 2), InvalidArgument);
  EXPECT_EQ(double_group(build_gmpn(1, 1, 5)).elements().size(), 120u);
}

TEST(Catalogue, IcosahedralGroup) {
  const FiniteMatrixGroup h3 = build_h3();
  EXPECT_EQ(h3.elements().size(), 120u);
  const Fingerprint fp = fingerprint(double_group(h3));
  EXPECT_EQ(fp.order, 120u);
  EXPECT_EQ(fp.rank, 6u);
}

TEST(Catalogue, ImprimitiveSmallCases) {
  const FiniteMatrixGroup c2 = build_sl2_subgroup(Sl2Kind::cyclic, 2);
  // G_2({+-I}, 1): pairs (k1, k2) with k1 k2 = 1, times S_2.
  EXPECT_EQ(build_imprimitive(c2, {}, 2).elements().size(), 4u);
  const FiniteMatrixGroup q8 = build_sl2_subgroup(Sl2Kind::binary_dihedral, 2);
  // Wreath product when H = K.
  EXPECT_EQ(build_imprimitive(q8, q8.gens(), 2).elements().size(), 8u * 8u * 2u);
  // H must contain [K, K] = {+-I}.
  EXPECT_THROW(build_imprimitive(q8, {}, 2), InvalidArgument);
  const SymplecticSpace sp = SymplecticSpace::standard(6);
  const FiniteMatrixGroup g3 = build_imprimitive(q8, {ExactMatrix::scalar(2, -1)}, 3);
  for (const auto& g : g3.gens()) EXPECT_TRUE(sp.preserves(g));
}

TEST(Catalogue, BlockStructurePrediction) {
  const FiniteMatrixGroup c2 = build_sl2_subgroup(Sl2Kind::cyclic, 2);
  const FiniteMatrixGroup g = build_imprimitive(c2, {}, 2);
  // v = (w, w): one K-orbit of size two, predicted S_2.
  const ExactVector v{1, 1, 2, 2};
  const BlockStructure bs = imprimitive_block_structure(c2, 1, 2, v);
  EXPECT_EQ(bs.zero_blocks, 0u);
  EXPECT_EQ(bs.orbit_blocks, std::vector<std::size_t>{2});
  EXPECT_EQ(bs.predicted_order, 2u);
  std::uint64_t count = 0;
  for (const auto& x : g.elements())
    if (x * v == v) ++count;
  EXPECT_EQ(count, 2u);

  const FiniteMatrixGroup c4 = build_sl2_subgroup(Sl2Kind::cyclic, 4);
  const FiniteMatrixGroup g4 = build_imprimitive(c4, c4.gens(), 3);
  const Cyclotomic i = imaginary_unit();
  // Three blocks in three different K-orbits, none zero.
  const ExactVector w{1, 2, 3, 1, i, 1};
  const BlockStructure b4 = imprimitive_block_structure(c4, 4, 3, w);
  EXPECT_EQ(b4.orbit_blocks, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(b4.predicted_order, 1u);
  EXPECT_EQ(g4.stabilizer(w).order(), 1u);
  // Zero vector: everything.
  EXPECT_EQ(imprimitive_block_structure(c4, 4, 3, ExactVector(6)).predicted_order, g4.order());
}

TEST(Catalogue, AmbiguousRowResolvesUniquely) {
  const GroupSpec& r = build_primitive("R");
  const auto& row = r.table.front();
  ASSERT_EQ(row.label, "H1");
  ASSERT_EQ(row.candidates.size(), 4u);
  std::vector<std::size_t> matching;
  for (std::size_t c = 0; c < row.candidates.size(); ++c) {
    const FiniteMatrixGroup h = r.group.stabilizer(row.candidates[c].vector);
    if (h.order() == 6 && recognize(h) == "G(3,3,2)") matching.push_back(c);
  }
  EXPECT_EQ(matching, std::vector<std::size_t>{row.resolved});
  EXPECT_EQ(row.vector, row.candidates[row.resolved].vector);
}

TEST(Catalogue, ThreePlaneCentralGroup) {
  const ReferenceGroup* c = nullptr;
  for (const auto& r : reference_groups())
    if (r.name == "C2xC2xC2") c = &r;
  ASSERT_NE(c, nullptr);
  const auto& elems = c->group.elements();
  EXPECT_EQ(elems.size(), 8u);
  std::size_t reflections = 0;
  for (const auto& g : elems) {
    EXPECT_EQ(g * g, ExactMatrix::identity(6));
    if (is_symplectic_reflection(g)) ++reflections;
  }
  EXPECT_EQ(reflections, 3u);
}

TEST(Catalogue, ReferenceFingerprintsDoNotCollide) {
  EXPECT_TRUE(reference_collisions().empty());
  for (const auto& r : reference_fingerprints()) {
    if (r.name == "G(3,3,3)") {
      EXPECT_EQ(r.fingerprint.order, 54u);
      EXPECT_EQ(r.fingerprint.rank, 6u);
    }
    if (r.name == "G23") {
      EXPECT_EQ(r.fingerprint.order, 120u);
      EXPECT_EQ(r.fingerprint.rank, 6u);
    }
    if (r.name == "G(D2,C2,1)") EXPECT_EQ(r.fingerprint.order, 32u);
    if (r.name == "G3(D2,C2)") EXPECT_EQ(r.fingerprint.order, 768u);
  }
}

TEST(Catalogue, DataChecksums) {
  const auto& files = data_files();
  ASSERT_EQ(files.size(), 2u);
  for (const auto& f : files) {
    if (f.name == "primitive_groups.json") EXPECT_EQ(f.sha256, SYMPARAB_PRIMITIVE_SHA256);
    if (f.name == "s1_example.json") EXPECT_EQ(f.sha256, SYMPARAB_EXAMPLE_SHA256);
  }
}
