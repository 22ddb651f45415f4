// Property suites shared by the unit tests and the acceptance binary.
#ifndef SYMPARAB_TESTS_SUITES_HPP_
#define SYMPARAB_TESTS_SUITES_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symparab/linalg.hpp"
#include "symparab/matgroup.hpp"

namespace suites {

struct Result {
  bool ok = true;
  std::size_t cases = 0;
  std::vector<std::string> failures; // first few only

  void fail(std::string what) {
    ok = false;
    if (failures.size() < 10) failures.push_back(std::move(what));
  }
  std::string summary() const;
};

// A vector fixed by a random element of g: a small integer combination of a
// basis of Fix(h), so its stabilizer is usually nontrivial.
symparab::ExactVector vector_fixed_by_random_element(const symparab::FiniteMatrixGroup& g, std::mt19937_64& rng);

// Averaging projector vs fixed space and symplectic complement, on at least
// `min_cases` stabilizers from catalogue groups.
Result projector_suite(std::size_t min_cases, std::uint64_t seed);

// Finite subgroups of Sp_2: every nontrivial element is a reflection and every
// subgroup passes the Steinberg check.
Result rank_two_suite();

// Stabilizers in doubled G(m,p,n), m <= 5, n <= 3.
Result doubled_gmpn_suite(std::size_t vectors_per_group, std::uint64_t seed);

// Stabilizer orders in G_n(K, H), n <= 3, |K| <= 24, against the block
// structure prediction (and an enumeration count when |G| is small).
Result imprimitive_suite(std::size_t trials_per_group, std::uint64_t seed);

// S1 root lines vs printed matrices; symplectic form and J for all seven
// primitive groups.
Result construction_suite();

} // namespace suites

#endif // SYMPARAB_TESTS_SUITES_HPP_
