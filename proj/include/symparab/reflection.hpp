// Symplectic reflections, the Steinberg check, fixed-space lattices and
// classification of parabolic subgroups.
#ifndef SYMPARAB_REFLECTION_HPP_
#define SYMPARAB_REFLECTION_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symparab/linalg.hpp"
#include "symparab/matgroup.hpp"

namespace symparab {

// rank(g - I) == 2, exactly.
bool is_symplectic_reflection(const ExactMatrix& g);

// All symplectic reflections of an enumerable group, in canonical order.
std::vector<ExactMatrix> reflections_in(const FiniteMatrixGroup& h);

// |<reflections_in(h)>| == |h|.  The trivial group passes (empty set).
bool steinberg_check(const FiniteMatrixGroup& h);

struct Fingerprint {
  std::size_t rank = 0; // dim V - dim Fix(H)
  std::uint64_t order = 1;
  std::uint64_t reflection_count = 0;
  std::map<std::uint64_t, std::uint64_t> order_histogram;
  std::uint64_t center_order = 1;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::string str() const;
};

Fingerprint fingerprint(const FiniteMatrixGroup& h);

struct ReferenceFingerprint {
  std::string name;
  std::string construction;
  Fingerprint fingerprint;
};

// Computed once from catalogue::reference_groups().
const std::vector<ReferenceFingerprint>& reference_fingerprints();
// Groups of reference names sharing a fingerprint (each of size >= 2).
std::vector<std::vector<std::string>> reference_collisions();

// "trivial", a reference name, "unknown", or "ambiguous: [a, b]".
std::string recognize(const Fingerprint& fp);
std::string recognize(const FiniteMatrixGroup& h);

// Every distinct intersection of element fixed spaces, V included, sorted by
// (dimension, canonical basis).
std::vector<Subspace> fixed_space_lattice(const FiniteMatrixGroup& g);

// Images of x under g, breadth-first; throws CapExceeded past `cap`.
std::vector<Subspace> subspace_orbit(const FiniteMatrixGroup& g, const Subspace& x, std::size_t cap);

struct ParabolicRecord {
  std::string label;                 // table label, or "" in lattice mode
  std::optional<ExactVector> vector; // vectors mode only
  Subspace fixed_space;
  FiniteMatrixGroup group;
  bool steinberg_ok = false;
  Fingerprint fingerprint;
  std::string recognized_type;
  bool is_maximal = false;
  // False when maximality could not be decided exactly (vectors mode with
  // codimension above Fix(G) larger than 2).
  bool maximality_certified = true;
  std::size_t conjugacy_class_id = 0;
  // Lattice mode: number of lattice elements in the class.  Vectors mode:
  // length of the G-orbit of the fixed space, when computed (else 0).
  std::size_t class_size = 0;
  // Lattice mode: #{g in G : g fixes the subspace}, counted by enumeration
  // independently of the stabilizer chain.
  std::uint64_t enumeration_count = 0;
};

struct LatticeClassification {
  std::size_t element_fixed_spaces = 0; // distinct Fix(g)
  std::size_t lattice_size = 0;
  std::vector<ParabolicRecord> classes; // one record per conjugacy class
  std::vector<std::vector<Subspace>> members; // lattice elements of each class
  std::size_t maximal_classes = 0;
  bool all_steinberg = false;
};

// Full lattice mode; requires |G| within the enumeration cap.  Steinberg is
// checked once per conjugacy class: conjugate parabolics are conjugate
// groups, so the check is class invariant.
LatticeClassification classify_full_lattice(const FiniteMatrixGroup& g);

struct VectorInput {
  std::string label;
  ExactVector vector;
};

// One record per vector.  Records with equal fingerprints are tested for
// conjugacy by orbit of fixed spaces (up to orbit_cap); different
// fingerprints are different classes.
std::vector<ParabolicRecord> classify_vectors(const FiniteMatrixGroup& g, std::span<const VectorInput> vectors,
                                              std::uint64_t seed = 0);

} // namespace symparab

#endif // SYMPARAB_REFLECTION_HPP_
