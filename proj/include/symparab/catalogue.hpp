// Group constructors and the embedded root-line data.
//
// Coordinates: quaternionic coordinate k of a 2n-dimensional space is the
// pair of complex coordinates (k, k+n), the form is [[0, I], [-I, 0]] and
// J(x, y) = (-conj(y), conj(x)).  Reflections built from the stored root
// lines reproduce the explicit W(S1) matrices under this convention.
//
// The tabulated vectors are rows acted on from the right, v -> v g.  A
// GroupSpec stores the transposed generators so that everything downstream
// works with column vectors; for these unitary involutions the transpose of
// the reflection in a is the reflection in conj(a).
#ifndef SYMPARAB_CATALOGUE_HPP_
#define SYMPARAB_CATALOGUE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symparab/linalg.hpp"
#include "symparab/matgroup.hpp"

namespace symparab {

class QuaternionicStructure {
public:
  explicit QuaternionicStructure(std::size_t dim);
  std::size_t dim() const noexcept { return dim_; }
  // Antilinear: J(c x) = conj(c) J(x).
  ExactVector apply(const ExactVector& x) const;

private:
  std::size_t dim_;
};

struct RootLine {
  ExactVector vector;  // first nonzero coordinate 1
  ExactVector printed; // with the printed overall scale applied
  std::string source;  // "S1 root 2"
  std::vector<std::string> literals;
};

// -1 on span{a, J a}, +1 on its hermitian orthogonal complement.
ExactMatrix reflection_from_root(const ExactVector& a, const SymplecticSpace& sp, const QuaternionicStructure& j);

// A printed reading of a table vector that was ambiguous as printed.
struct TableCandidate {
  std::string reading;
  ExactVector vector;
};

struct TableRow {
  std::string label; // H1, H2, ...
  std::string type;  // expected type name
  ExactVector vector;
  std::vector<std::string> literals;
  // Nonempty only for rows that needed resolution; `vector` is then
  // candidates[resolved].vector.
  std::vector<TableCandidate> candidates;
  std::size_t resolved = 0;
  std::string note;
};

struct GroupSpec {
  std::string name;    // Q, R, S1, ...
  std::string display; // W(Q), ...
  SymplecticSpace space;
  std::vector<ExactMatrix> generators; // column action, see above
  std::uint64_t expected_order = 0;
  std::string order_factored;
  std::vector<RootLine> root_lines;
  std::vector<TableRow> table;
  std::size_t maximal_classes = 0;
  std::string default_mode; // "full-lattice" or "table"
  // Shares caches across copies of the spec.
  FiniteMatrixGroup group;
};

const std::vector<std::string>& primitive_names();
// Cached; throws InvalidArgument for unknown names.
const GroupSpec& build_primitive(std::string_view name);

// The W(S1) example: explicit generators, the stabilized vector, and the
// complement basis with the restricted generators as printed.
struct S1Example {
  std::vector<ExactMatrix> m; // M1..M4
  std::vector<std::vector<std::size_t>> stabilizer_words; // indices into m
  ExactVector vector;
  ExactVector fixed_companion;
  std::uint64_t stabilizer_order = 0;
  std::string stabilizer_type;
  ExactMatrix complement_basis; // 8 x 6, columns w1..w6
  std::vector<ExactMatrix> restricted_generators;
  std::vector<std::size_t> lagrangian_columns;
};
const S1Example& s1_example();

enum class Sl2Kind { cyclic, binary_dihedral, binary_tetrahedral, binary_octahedral, binary_icosahedral };
// cyclic: order m; binary dihedral: order 4m (m >= 2).
FiniteMatrixGroup build_sl2_subgroup(Sl2Kind kind, int m = 0);

// G_n(K, H) on C^{2n}, block j on coordinates (j, j+n).
FiniteMatrixGroup build_imprimitive(const FiniteMatrixGroup& k, const std::vector<ExactMatrix>& h_gens, std::size_t n);
ExactMatrix imprimitive_block(const ExactMatrix& k, std::size_t slot, std::size_t n);

// Blocks of v grouped by K-orbit: n0 zero blocks and classes of sizes n_1..n_r.
// The stabilizer of v in G_n(K, H) is conjugate in K wr S_n to
// G_{n0}(K, H) x S_{n_1} x ... x S_{n_r}, whose order is predicted_order.
struct BlockStructure {
  std::size_t zero_blocks = 0;
  std::vector<std::size_t> orbit_blocks; // in order of first occurrence
  std::uint64_t predicted_order = 1;
};
BlockStructure imprimitive_block_structure(const FiniteMatrixGroup& k, std::uint64_t h_order, std::size_t n,
                                           const ExactVector& v);

FiniteMatrixGroup build_gmpn(int m, int p, int n);
// g -> diag(g, g^{-T}) in Sp_{2d}.
FiniteMatrixGroup double_group(const FiniteMatrixGroup& w);
// Orthogonal sum of symplectic spaces in the (k, k+n) convention.
ExactMatrix symplectic_direct_sum(const ExactMatrix& a, const ExactMatrix& b);
FiniteMatrixGroup symplectic_direct_sum(const FiniteMatrixGroup& a, const FiniteMatrixGroup& b);
// {+-I} on one symplectic plane.
FiniteMatrixGroup c2_plane();
// The icosahedral reflection group of order 120 on C^3.
FiniteMatrixGroup build_h3();

struct ReferenceGroup {
  std::string name;
  std::string construction;
  FiniteMatrixGroup group;
};
// Every type name used in the tables plus C2 and C2xC2 (small parabolics).
// The D2/C2 names are matched to G_n(Q8, Z(Q8)) by fingerprint.
const std::vector<ReferenceGroup>& reference_groups();

struct DataFile {
  std::string name;
  std::string_view text;
  std::string sha256;
};
const std::vector<DataFile>& data_files();

} // namespace symparab

#endif // SYMPARAB_CATALOGUE_HPP_
