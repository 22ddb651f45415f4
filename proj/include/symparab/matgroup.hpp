// Finite matrix groups over cyclotomic fields.
//
// Orders and membership come from a BSGS of the permutation action on a
// finite invariant set of vectors (the "domain").  The domain is a union of
// orbits of seed vectors that together span V, and its base points are
// chosen to span V as well, so a group element is determined by the images
// of the base points.  Enumeration is a separate breadth-first closure over
// matrices and never consults the BSGS.
#ifndef SYMPARAB_MATGROUP_HPP_
#define SYMPARAB_MATGROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "symparab/linalg.hpp"
#include "symparab/modular.hpp"
#include "symparab/perm.hpp"

namespace symparab {

struct GroupLimits {
  std::size_t orbit_cap = 10'000'000;
  std::size_t enumeration_cap = 100'000;
  std::size_t domain_cap = 2'000'000;
};

// Hash set of equal-length vectors stored contiguously, with dense indices in
// insertion order.
class VectorTable {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit VectorTable(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const Cyclotomic> at(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  ExactVector vector(std::size_t i) const;
  std::size_t find(std::span<const Cyclotomic> v) const;
  std::size_t find(const ExactVector& v) const { return find(v.entries()); }
  // (index, inserted)
  std::pair<std::size_t, bool> insert(std::span<const Cyclotomic> v);

private:
  static std::size_t hash_of(std::span<const Cyclotomic> v) noexcept;
  void grow();

  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<Cyclotomic> data_;
  std::vector<std::size_t> hashes_;
  std::vector<std::uint32_t> slots_; // index + 1, 0 = empty
};

// Precomputed sparse form of a matrix for repeated matrix-vector products.
class MatrixAction {
public:
  explicit MatrixAction(const ExactMatrix& m);
  std::size_t dim() const noexcept { return rows_.size(); }
  void apply(std::span<const Cyclotomic> in, std::span<Cyclotomic> out) const;

private:
  struct Entry {
    std::uint32_t col;
    signed char unit; // +1 / -1 for unit coefficients, 0 otherwise
    Cyclotomic coeff;
  };
  std::vector<std::vector<Entry>> rows_;
};

enum class OrbitNormalize { none, projective };

// Breadth-first orbit with its Schreier tree: point i (i > 0) is
// gens[generator[i]] applied to point parent[i].
struct OrbitData {
  VectorTable points;
  std::vector<std::uint32_t> parent;
  std::vector<std::int32_t> generator; // -1 for the seed
  OrbitNormalize normalize = OrbitNormalize::none;

  std::size_t size() const noexcept { return points.size(); }
  ExactVector point(std::size_t i) const { return points.vector(i); }
  // Generator indices applied in order to move the seed to point i.
  std::vector<std::size_t> word(std::size_t i) const;
};

// The permutation domain shared by a group and all subgroups derived from it.
class PermDomain {
public:
  // Union of orbits of `seeds` (then standard basis vectors) under gens until
  // the points span the space.
  static std::shared_ptr<const PermDomain> build(std::size_t dim, std::span<const ExactMatrix> gens,
                                                 std::span<const ExactVector> seeds, std::size_t cap);

  std::size_t dim() const noexcept { return points_.dim(); }
  std::size_t size() const noexcept { return points_.size(); }
  const VectorTable& points() const noexcept { return points_; }
  const std::vector<Point>& base() const noexcept { return base_; }

  // Permutation induced by g; throws NotInvariant if g does not preserve the
  // domain.
  Perm action(const ExactMatrix& g) const;
  // Images of the base points under g, or nullopt if one leaves the domain.
  std::optional<std::vector<Point>> base_images(const ExactMatrix& g) const;
  // The unique matrix sending each base vector to the given image point.
  ExactMatrix matrix_from_base_images(std::span<const Point> images) const;
  ExactMatrix matrix_of(const Perm& p) const;

private:
  VectorTable points_;
  std::vector<Point> base_;
  ExactMatrix base_inverse_;
};

class FiniteMatrixGroup {
public:
  FiniteMatrixGroup() : FiniteMatrixGroup(0, {}) {}
  // Identity and repeated generators are dropped.  `domain_seeds` are tried
  // first when building the permutation domain (root vectors work well).
  FiniteMatrixGroup(std::size_t dim, std::vector<ExactMatrix> gens, GroupLimits limits = {},
                    std::vector<ExactVector> domain_seeds = {});

  static FiniteMatrixGroup trivial(std::size_t dim, GroupLimits limits = {});

  std::size_t dim() const noexcept;
  const std::vector<ExactMatrix>& gens() const noexcept;
  const GroupLimits& limits() const noexcept;
  // Same group with different caps (caches are shared).
  FiniteMatrixGroup with_limits(GroupLimits limits) const;

  std::uint64_t order() const;
  bool is_member(const ExactMatrix& m) const;
  // Every generator of h lies in this group.
  bool contains(const FiniteMatrixGroup& h) const;
  bool same_group(const FiniteMatrixGroup& h) const;

  // All elements in breadth-first order from the identity.  Throws
  // CapExceeded when the group is larger than the enumeration cap.
  const std::vector<ExactMatrix>& elements() const;
  bool is_enumerated() const;

  OrbitData orbit(const ExactVector& seed, OrbitNormalize normalize = OrbitNormalize::none) const;
  // Matrix taking the orbit seed to point i (up to scalar when projective).
  ExactMatrix transversal(const OrbitData& orbit, std::size_t i) const;

  // Stab_G(v), generated by Schreier generators that are added (seeded order)
  // until the orbit-stabilizer order is reached.
  FiniteMatrixGroup stabilizer(const ExactVector& v, std::uint64_t seed = 0) const;
  FiniteMatrixGroup pointwise_stabilizer(const Subspace& s, std::uint64_t seed = 0) const;

  // Multiplicative order of one element (must be of finite order).
  static std::uint64_t element_order(const ExactMatrix& g, std::uint64_t bound = 1'000'000);
  std::map<std::uint64_t, std::uint64_t> element_order_histogram() const;

  const PermDomain& domain() const;

private:
  struct State;
  struct ModularData {
    ModularReduction red;
    std::vector<ModularMatrix> gens;
  };
  explicit FiniteMatrixGroup(std::shared_ptr<State> state, GroupLimits limits)
      : state_(std::move(state)), limits_(limits) {}

  const PermBsgs& bsgs() const;
  // Generators reduced into a prime field containing the given conductor.
  std::shared_ptr<const ModularData> modular(std::int64_t conductor) const;
  // Stabilizer of v from an orbit given by its image table; null if a
  // generator found does not fix v exactly.
  template <class Image, class Word>
  std::shared_ptr<State> schreier_stabilizer(std::size_t npoints, Image image, Word word, std::uint64_t target,
                                             const ExactVector& v, std::uint64_t seed) const;

  std::shared_ptr<State> state_;
  GroupLimits limits_;
};

// Group version of the spin search in linalg: eigenspaces of central elements
// are invariant and are tried first, then eigenvectors of the other elements
// are used as seeds.  Needs h within the enumeration cap.  nullopt still does
// not prove that no invariant Lagrangian exists.
std::optional<Subspace> find_invariant_lagrangian(const FiniteMatrixGroup& h, const SymplecticSpace& sp,
                                                  std::uint64_t seed = 0);

} // namespace symparab

#endif // SYMPARAB_MATGROUP_HPP_
