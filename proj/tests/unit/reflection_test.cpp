#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "symparab/catalogue.hpp"
#include "symparab/reflection.hpp"

using namespace symparab;

TEST(Reflection, Basics) {
  EXPECT_FALSE(is_symplectic_reflection(ExactMatrix::identity(4)));
  EXPECT_FALSE(is_symplectic_reflection(ExactMatrix::scalar(4, -1)));
  ExactMatrix r = ExactMatrix::identity(4);
  r(0, 0) = -1;
  r(2, 2) = -1;
  EXPECT_TRUE(is_symplectic_reflection(r));

  const FiniteMatrixGroup c5 = build_sl2_subgroup(Sl2Kind::cyclic, 5);
  EXPECT_EQ(reflections_in(c5).size(), 4u);
  EXPECT_TRUE(steinberg_check(c5));
}

TEST(Reflection, MinusIdentityOnFourSpaceFailsSteinberg) {
  const FiniteMatrixGroup g(4, {ExactMatrix::scalar(4, -1)});
  EXPECT_TRUE(reflections_in(g).empty());
  EXPECT_FALSE(steinberg_check(g));
  EXPECT_TRUE(steinberg_check(FiniteMatrixGroup(4, std::vector<ExactMatrix>{})));
}

TEST(Reflection, SmallLattices) {
  const FiniteMatrixGroup trivial(4, std::vector<ExactMatrix>{});
  const auto l0 = fixed_space_lattice(trivial);
  ASSERT_EQ(l0.size(), 1u);
  EXPECT_EQ(l0.front(), Subspace::full(4));

  ExactMatrix r = ExactMatrix::identity(4);
  r(1, 1) = -1;
  r(3, 3) = -1;
  const FiniteMatrixGroup g(4, {r});
  const auto l1 = fixed_space_lattice(g);
  ASSERT_EQ(l1.size(), 2u);
  EXPECT_EQ(l1[0].dim(), 2u);
  EXPECT_EQ(l1[1], Subspace::full(4));
  EXPECT_TRUE(l1[0].contains(ExactVector::unit(4, 0)));
  EXPECT_TRUE(l1[0].contains(ExactVector::unit(4, 2)));

  const LatticeClassification c = classify_full_lattice(g);
  EXPECT_EQ(c.lattice_size, 2u);
  EXPECT_EQ(c.maximal_classes, 1u);
  EXPECT_TRUE(c.all_steinberg);
}

TEST(Reflection, TrivialFingerprint) {
  const Fingerprint fp = fingerprint(FiniteMatrixGroup(6, std::vector<ExactMatrix>{}));
  EXPECT_EQ(fp.rank, 0u);
  EXPECT_EQ(fp.order, 1u);
  EXPECT_EQ(fp.reflection_count, 0u);
  EXPECT_EQ(recognize(fp), "trivial");
  EXPECT_EQ(recognize(fingerprint(c2_plane())), "C2");
}

TEST(Reflection, FullLatticeOfS1) {
  const GroupSpec& s1 = build_primitive("S1");
  const LatticeClassification c = classify_full_lattice(s1.group);
  EXPECT_EQ(c.maximal_classes, 6u);
  EXPECT_TRUE(c.all_steinberg);
  ASSERT_EQ(c.members.size(), c.classes.size());

  std::size_t total = 0;
  std::multiset<std::string> maximal_types;
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    const auto& rec = c.classes[k];
    total += c.members[k].size();
    EXPECT_EQ(rec.class_size, c.members[k].size());
    EXPECT_TRUE(rec.steinberg_ok);
    // Orbit-stabilizer: |G| = |class| * |Stab_G(X)|, and the pointwise
    // stabilizer is normal in the setwise one.
    EXPECT_EQ(s1.group.order() % c.members[k].size(), 0u);
    if (rec.group.order() > 1) EXPECT_FALSE(reflections_in(rec.group).empty());
    if (rec.is_maximal) maximal_types.insert(rec.recognized_type);
    // Parabolic closure: the group is the pointwise stabilizer of its fixed space.
    EXPECT_EQ(fixed_space(rec.group.gens(), 8), rec.fixed_space);
    // Every member has the same fingerprint.
    for (std::size_t m = 1; m < std::min<std::size_t>(c.members[k].size(), 3); ++m)
      EXPECT_EQ(fingerprint(s1.group.pointwise_stabilizer(c.members[k][m])), rec.fingerprint);
  }
  EXPECT_EQ(total, c.lattice_size);
  EXPECT_EQ(c.lattice_size, 528u);
  EXPECT_EQ(maximal_types.count("G(2,2,3)"), 4u);
  EXPECT_EQ(maximal_types.count("G(3,3,3)"), 1u);
}

TEST(Reflection, VectorsModeChain) {
  const GroupSpec& r = build_primitive("R");
  const auto& h2 = r.table.at(1);
  ASSERT_EQ(h2.label, "H2");
  const auto recs = classify_vectors(r.group, std::vector<VectorInput>{{h2.label, h2.vector}});
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].group.order(), 10u);
  EXPECT_EQ(recs[0].recognized_type, "G(5,5,2)");
  EXPECT_TRUE(recs[0].is_maximal);
  EXPECT_TRUE(recs[0].steinberg_ok);
}

TEST(Reflection, TableTypesForU) {
  const GroupSpec& u = build_primitive("U");
  std::vector<VectorInput> in;
  for (const auto& row : u.table) in.push_back({row.label, row.vector});
  const auto recs = classify_vectors(u.group, in, 1);
  ASSERT_EQ(recs.size(), u.table.size());
  std::set<std::size_t> classes;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    EXPECT_EQ(recs[k].recognized_type, u.table[k].type) << u.table[k].label;
    EXPECT_TRUE(recs[k].steinberg_ok) << u.table[k].label;
    EXPECT_TRUE(recs[k].is_maximal) << u.table[k].label;
    classes.insert(recs[k].conjugacy_class_id);
  }
  EXPECT_EQ(classes.size(), recs.size());
}
