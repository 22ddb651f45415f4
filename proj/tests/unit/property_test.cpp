// Smaller runs of the shared property suites; the acceptance binary runs
// them at full size.
#include <gtest/gtest.h>

#include "suites.hpp"

TEST(Properties, ProjectorOnStabilizers) {
  const auto r = suites::projector_suite(30, 7);
  EXPECT_TRUE(r.ok) << r.summary();
  EXPECT_GE(r.cases, 30u);
}

TEST(Properties, RankTwoSubgroups) {
  const auto r = suites::rank_two_suite();
  EXPECT_TRUE(r.ok) << r.summary();
}

TEST(Properties, DoubledGmpnStabilizers) {
  const auto r = suites::doubled_gmpn_suite(8, 11);
  EXPECT_TRUE(r.ok) << r.summary();
}

TEST(Properties, ImprimitiveStabilizerOrders) {
  const auto r = suites::imprimitive_suite(4, 13);
  EXPECT_TRUE(r.ok) << r.summary();
}

TEST(Properties, Construction) {
  const auto r = suites::construction_suite();
  EXPECT_TRUE(r.ok) << r.summary();
}
