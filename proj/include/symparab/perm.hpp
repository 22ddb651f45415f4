// Permutation groups with a base and strong generating set.
//
// The base is fixed up front by the caller and must have the property that
// only the identity of the group fixes every base point.  Matrix groups get
// this for free by choosing base points whose vectors span the ambient space,
// and it lets sifting track just the images of the base points.
#ifndef SYMPARAB_PERM_HPP_
#define SYMPARAB_PERM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace symparab {

using Point = std::uint32_t;
using Perm = std::vector<Point>;

Perm perm_identity(std::size_t degree);
Perm perm_inverse(const Perm& p);
// (a * b)(x) = a(b(x)): apply b first.
Perm perm_compose(const Perm& a, const Perm& b);
bool perm_is_identity(const Perm& p);

class PermBsgs {
public:
  PermBsgs(std::size_t degree, std::vector<Point> base);

  // Builds the chain for <gens>: a seeded random phase followed by full
  // deterministic Schreier-Sims verification.
  static PermBsgs build(std::size_t degree, std::vector<Point> base, std::span<const Perm> gens,
                        std::uint64_t seed = 0);

  // Adds g to the group and restores completeness.  Returns false if g was
  // already a member.
  bool extend(const Perm& g);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Point>& base() const noexcept { return base_; }
  std::uint64_t order() const;
  std::size_t orbit_size(std::size_t level) const { return levels_[level].orbit.size(); }

  // Sifts a tuple of base-point images.  True iff it is the image tuple of
  // some group element.
  bool sift_images(std::vector<Point> images) const;
  bool contains(const Perm& g) const;

  const std::vector<Perm>& strong_generators() const noexcept { return gens_; }

private:
  struct Level {
    std::vector<std::int32_t> edge; // -2: not in orbit, -1: base point, else strong generator index
    std::vector<Point> orbit;
  };
  static constexpr std::int32_t kAbsent = -2;
  static constexpr std::int32_t kRoot = -1;

  // Level of g: index of the first base point it moves (base size if none).
  std::size_t level_of(const Perm& g) const;
  void rebuild_orbit(std::size_t level);
  // Applies u_p^{-1} (transversal at `level`) to x.
  Point apply_inverse_transversal(std::size_t level, Point p, Point x) const;
  // Strong generator indices along the tree path root -> p, in application order.
  void path_to(std::size_t level, Point p, std::vector<std::int32_t>& path) const;
  // Full sift starting at `from`; returns level where it stopped (base size if
  // it fixes every base point) and leaves the residue in g.
  std::size_t sift_full(Perm& g, std::size_t from) const;
  void add_strong(Perm g, std::size_t level);
  void complete(std::size_t start);

  std::size_t degree_;
  std::vector<Point> base_;
  std::vector<Perm> gens_;
  std::vector<Perm> inv_;
  std::vector<std::size_t> gen_level_;
  std::vector<Level> levels_;
};

// Product-replacement random elements (seeded, deterministic).
class RandomPermSource {
public:
  RandomPermSource(std::span<const Perm> gens, std::size_t degree, std::uint64_t seed);
  const Perm& next();

private:
  std::vector<Perm> slots_;
  Perm acc_;
  std::mt19937_64 rng_;
};

} // namespace symparab

#endif // SYMPARAB_PERM_HPP_
