#include "symparab/perm.hpp"

#include <algorithm>

#include "symparab/errors.hpp"

namespace symparab {

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<Point>(i);
  return p;
}

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<Point>(i);
  return q;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// ---------------------------------------------------------------------------

PermBsgs::PermBsgs(std::size_t degree, std::vector<Point> base) : degree_(degree), base_(std::move(base)) {
  for (Point b : base_)
    if (b >= degree_) throw InvalidArgument("base point outside the domain");
  levels_.resize(base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i) rebuild_orbit(i);
}

PermBsgs PermBsgs::build(std::size_t degree, std::vector<Point> base, std::span<const Perm> gens,
                         std::uint64_t seed) {
  PermBsgs b(degree, std::move(base));
  std::vector<Perm> nontrivial;
  for (const auto& g : gens) {
    if (g.size() != degree) throw DimensionMismatch("permutation of wrong degree");
    if (!perm_is_identity(g)) nontrivial.push_back(g);
  }
  if (nontrivial.empty()) return b;
  // Random phase: sift random elements and keep non-trivial residues until a
  // run of them sifts through.  This only shapes the strong generating set;
  // correctness comes from the deterministic completion below.
  for (const auto& g : nontrivial) {
    Perm r = g;
    std::size_t lvl = b.sift_full(r, 0);
    if (lvl < b.base_.size()) b.add_strong(std::move(r), lvl);
  }
  for (std::size_t i = 0; i < b.base_.size(); ++i) b.rebuild_orbit(i);
  RandomPermSource rnd(nontrivial, degree, seed);
  int quiet = 0;
  while (quiet < 24) {
    Perm r = rnd.next();
    std::size_t lvl = b.sift_full(r, 0);
    if (lvl == b.base_.size()) {
      if (!perm_is_identity(r)) throw Error("base does not determine group elements");
      ++quiet;
      continue;
    }
    quiet = 0;
    b.add_strong(std::move(r), lvl);
    for (std::size_t i = 0; i <= lvl; ++i) b.rebuild_orbit(i);
  }
  if (!b.base_.empty()) b.complete(b.base_.size() - 1);
  return b;
}

std::size_t PermBsgs::level_of(const Perm& g) const {
  for (std::size_t i = 0; i < base_.size(); ++i)
    if (g[base_[i]] != base_[i]) return i;
  return base_.size();
}

void PermBsgs::rebuild_orbit(std::size_t level) {
  Level& L = levels_[level];
  L.edge.assign(degree_, kAbsent);
  L.orbit.clear();
  Point b = base_[level];
  L.edge[b] = kRoot;
  L.orbit.push_back(b);
  for (std::size_t q = 0; q < L.orbit.size(); ++q) {
    Point p = L.orbit[q];
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      if (gen_level_[s] < level) continue;
      Point x = gens_[s][p];
      if (L.edge[x] == kAbsent) {
        L.edge[x] = static_cast<std::int32_t>(s);
        L.orbit.push_back(x);
      }
    }
  }
}

Point PermBsgs::apply_inverse_transversal(std::size_t level, Point p, Point x) const {
  const Level& L = levels_[level];
  while (L.edge[p] != kRoot) {
    const Perm& inv = inv_[static_cast<std::size_t>(L.edge[p])];
    x = inv[x];
    p = inv[p];
  }
  return x;
}

void PermBsgs::path_to(std::size_t level, Point p, std::vector<std::int32_t>& path) const {
  const Level& L = levels_[level];
  path.clear();
  while (L.edge[p] != kRoot) {
    std::int32_t s = L.edge[p];
    path.push_back(s);
    p = inv_[static_cast<std::size_t>(s)][p];
  }
  std::reverse(path.begin(), path.end());
}

std::size_t PermBsgs::sift_full(Perm& g, std::size_t from) const {
  for (std::size_t j = from; j < base_.size(); ++j) {
    Point q = g[base_[j]];
    const Level& L = levels_[j];
    if (L.edge[q] == kAbsent) return j;
    // g <- u_q^{-1} g
    Point p = q;
    while (L.edge[p] != kRoot) {
      const Perm& inv = inv_[static_cast<std::size_t>(L.edge[p])];
      for (auto& x : g) x = inv[x];
      p = inv[p];
    }
  }
  return base_.size();
}

void PermBsgs::add_strong(Perm g, std::size_t level) {
  inv_.push_back(perm_inverse(g));
  gens_.push_back(std::move(g));
  gen_level_.push_back(level);
}

bool PermBsgs::extend(const Perm& g) {
  if (g.size() != degree_) throw DimensionMismatch("permutation of wrong degree");
  Perm r = g;
  std::size_t lvl = sift_full(r, 0);
  if (lvl == base_.size()) {
    if (!perm_is_identity(r)) throw Error("base does not determine group elements");
    return false;
  }
  add_strong(std::move(r), lvl);
  for (std::size_t i = 0; i <= lvl; ++i) rebuild_orbit(i);
  complete(lvl);
  return true;
}

void PermBsgs::complete(std::size_t start) {
  const std::size_t k = base_.size();
  std::size_t i = start;
  std::vector<std::int32_t> path;
  std::vector<Point> img;
  for (;;) {
    bool restarted = false;
    const Level& L = levels_[i];
    for (std::size_t oi = 0; oi < L.orbit.size() && !restarted; ++oi) {
      Point p = L.orbit[oi];
      path_to(i, p, path);
      for (std::size_t s = 0; s < gens_.size(); ++s) {
        if (gen_level_[s] < i) continue;
        Point q = gens_[s][p];
        // Images of the deeper base points under h = u_q^{-1} s u_p.
        img.assign(base_.begin() + static_cast<std::ptrdiff_t>(i + 1), base_.end());
        for (auto& x : img) {
          for (auto e : path) x = gens_[static_cast<std::size_t>(e)][x];
          x = gens_[s][x];
          x = apply_inverse_transversal(i, q, x);
        }
        std::size_t fail = k;
        for (std::size_t j = i + 1; j < k; ++j) {
          Point y = img[j - i - 1];
          if (levels_[j].edge[y] == kAbsent) {
            fail = j;
            break;
          }
          for (std::size_t t = j - i - 1; t < img.size(); ++t) img[t] = apply_inverse_transversal(j, y, img[t]);
        }
        if (fail == k) continue;
        // Materialize the Schreier generator and add its residue.
        Perm h = perm_identity(degree_);
        for (auto e : path) h = perm_compose(gens_[static_cast<std::size_t>(e)], h);
        h = perm_compose(gens_[s], h);
        Point x = q;
        while (L.edge[x] != kRoot) {
          const Perm& inv = inv_[static_cast<std::size_t>(L.edge[x])];
          for (auto& y : h) y = inv[y];
          x = inv[x];
        }
        std::size_t lvl = sift_full(h, i + 1);
        if (lvl != fail) throw Error("inconsistent sift in Schreier-Sims");
        add_strong(std::move(h), lvl);
        for (std::size_t t = 0; t <= lvl; ++t) rebuild_orbit(t);
        i = lvl;
        restarted = true;
        break;
      }
    }
    if (restarted) continue;
    if (i == 0) break;
    --i;
  }
}

std::uint64_t PermBsgs::order() const {
  unsigned __int128 n = 1;
  for (const auto& L : levels_) {
    n *= L.orbit.size();
    if (n > static_cast<unsigned __int128>(UINT64_MAX)) throw Error("group order overflows 64 bits");
  }
  return static_cast<std::uint64_t>(n);
}

bool PermBsgs::sift_images(std::vector<Point> images) const {
  if (images.size() != base_.size()) throw DimensionMismatch("image tuple of wrong length");
  for (std::size_t j = 0; j < base_.size(); ++j) {
    Point y = images[j];
    if (y >= degree_ || levels_[j].edge[y] == kAbsent) return false;
    for (std::size_t t = j; t < images.size(); ++t) images[t] = apply_inverse_transversal(j, y, images[t]);
  }
  return true;
}

bool PermBsgs::contains(const Perm& g) const {
  if (g.size() != degree_) throw DimensionMismatch("permutation of wrong degree");
  Perm r = g;
  return sift_full(r, 0) == base_.size() && perm_is_identity(r);
}

// ---------------------------------------------------------------------------

RandomPermSource::RandomPermSource(std::span<const Perm> gens, std::size_t degree, std::uint64_t seed)
    : acc_(perm_identity(degree)), rng_(seed) {
  slots_.assign(gens.begin(), gens.end());
  if (slots_.empty()) slots_.push_back(perm_identity(degree));
  const std::size_t n = slots_.size();
  while (slots_.size() < 10) slots_.push_back(slots_[slots_.size() % n]);
  for (int i = 0; i < 50; ++i) next();
}

const Perm& RandomPermSource::next() {
  std::uniform_int_distribution<std::size_t> pick(0, slots_.size() - 1);
  std::size_t a = pick(rng_), b = pick(rng_);
  while (b == a) b = pick(rng_);
  if (rng_() & 1)
    slots_[a] = perm_compose(slots_[a], slots_[b]);
  else
    slots_[a] = perm_compose(slots_[b], slots_[a]);
  acc_ = perm_compose(acc_, slots_[a]);
  return acc_;
}

} // namespace symparab
