#include <gtest/gtest.h>

#include "symparab/errors.hpp"
#include "symparab/report.hpp"

using namespace symparab;

TEST(Report, VectorLiterals) {
  const Cyclotomic i = imaginary_unit();
  EXPECT_EQ(parse_vector_literal("(1, 0, -1)"), (ExactVector{1, 0, -1}));
  EXPECT_EQ(parse_vector_literal("1,i,0"), (ExactVector{1, i, 0}));
  EXPECT_EQ(parse_vector_literal("2*(1, i)"), (ExactVector{2, 2 * i}));
  const ExactVector s = parse_vector_literal("(sqrt5, 1)");
  EXPECT_EQ(s[0] * s[0], Cyclotomic(5));
  EXPECT_THROW(parse_vector_literal("(1, 2"), Error);
  EXPECT_THROW(parse_vector_literal("(1, foo)"), Error);
}

TEST(Report, Lookup) {
  const GroupLimits limits;
  EXPECT_EQ(lookup_group("S1", limits).group.order(), 6912u);
  EXPECT_EQ(lookup_group("W(Q)", limits).name, "Q");
  EXPECT_EQ(lookup_group("trivial-4", limits).group.order(), 1u);
  EXPECT_EQ(lookup_group("G(3,3,3)", limits).group.order(), 54u);
  EXPECT_THROW(lookup_group("W(V)", limits), InvalidArgument);
}

TEST(Report, StabilizerOfWorkedExampleVector) {
  const GroupHandle g = lookup_group("S1", {});
  // The catalogue group also contains the printed matrices, so the column
  // stabilizer of v has the same order as the row stabilizer.
  const Report r = stabilizer_report(g, s1_example().vector, 0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.json["record"]["order"], 54);
  EXPECT_EQ(r.json["record"]["recognized_type"], "G(3,3,3)");
}

TEST(Report, DeterministicOrderReport) {
  const GroupHandle g = lookup_group("Q", {});
  EXPECT_EQ(order_report(g).json.dump(), order_report(g).json.dump());
  EXPECT_TRUE(order_report(g).pass);
}
