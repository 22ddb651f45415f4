#include "symparab/reflection.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "symparab/catalogue.hpp"
#include "symparab/errors.hpp"
#include "symparab/modular.hpp"

namespace symparab {

namespace {

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

bool subspace_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return canonical_less(a.basis(), b.basis());
}

// Dense matrices over F_p.  Everything computed here is only a filter: any
// conclusion drawn from it is confirmed in exact arithmetic.
class DenseMod {
public:
  DenseMod(std::span<const ExactMatrix> mats, std::size_t dim)
      : red_(common_conductor(mats, {})), dim_(dim) {}

  const ModularReduction& red() const noexcept { return red_; }

  std::vector<std::uint64_t> reduce(const ExactMatrix& m) const {
    std::vector<std::uint64_t> out(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] = red_.reduce(m(i, j));
    return out;
  }
  std::vector<std::uint64_t> reduce(const ExactVector& v) const {
    std::vector<std::uint64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = red_.reduce(v[i]);
    return out;
  }

  std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const {
    const std::uint64_t p = red_.prime();
    std::vector<std::uint64_t> c(dim_ * dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        std::uint64_t x = a[i * dim_ + k];
        if (x == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
          std::uint64_t& t = c[i * dim_ + j];
          t += red_.mul(x, b[k * dim_ + j]);
          if (t >= p) t -= p;
        }
      }
    return c;
  }

  bool fixes(const std::vector<std::uint64_t>& g, const std::vector<std::uint64_t>& x) const {
    const std::uint64_t p = red_.prime();
    for (std::size_t i = 0; i < dim_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < dim_; ++j) {
        acc += red_.mul(g[i * dim_ + j], x[j]);
        if (acc >= p) acc -= p;
      }
      if (acc != x[i]) return false;
    }
    return true;
  }

  // Reduced row echelon form of g - I; the nonzero rows determine Fix(g).
  std::vector<std::uint64_t> rref_minus_identity(std::vector<std::uint64_t> a, std::size_t& rank) const {
    const std::uint64_t p = red_.prime();
    for (std::size_t i = 0; i < dim_; ++i) a[i * dim_ + i] = (a[i * dim_ + i] + p - 1) % p;
    rank = 0;
    for (std::size_t col = 0; col < dim_ && rank < dim_; ++col) {
      std::size_t piv = rank;
      while (piv < dim_ && a[piv * dim_ + col] == 0) ++piv;
      if (piv == dim_) continue;
      for (std::size_t j = 0; j < dim_; ++j) std::swap(a[piv * dim_ + j], a[rank * dim_ + j]);
      const std::uint64_t inv = red_.inverse(a[rank * dim_ + col]);
      for (std::size_t j = 0; j < dim_; ++j) a[rank * dim_ + j] = red_.mul(a[rank * dim_ + j], inv);
      for (std::size_t i = 0; i < dim_; ++i) {
        if (i == rank || a[i * dim_ + col] == 0) continue;
        const std::uint64_t f = a[i * dim_ + col];
        for (std::size_t j = 0; j < dim_; ++j)
          a[i * dim_ + j] = (a[i * dim_ + j] + p - red_.mul(f, a[rank * dim_ + j])) % p;
      }
      ++rank;
    }
    a.resize(rank * dim_);
    return a;
  }

private:
  ModularReduction red_;
  std::size_t dim_;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
    std::size_t h = k.size();
    for (auto x : k) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

bool exactly_fixes(const ExactMatrix& g, const Subspace& x) {
  for (const auto& b : x.basis_vectors())
    if (!(g * b == b)) return false;
  return true;
}

} // namespace

bool is_symplectic_reflection(const ExactMatrix& g) {
  if (!g.is_square()) throw DimensionMismatch("reflection test needs a square matrix");
  return rank(g - ExactMatrix::identity(g.rows())) == 2;
}

std::vector<ExactMatrix> reflections_in(const FiniteMatrixGroup& h) {
  const auto& elems = h.elements();
  std::vector<ExactMatrix> out;
  if (elems.size() <= 1) return out;
  DenseMod mod(h.gens(), h.dim());
  for (const auto& g : elems) {
    if (g.is_identity()) continue;
    std::size_t r = 0;
    mod.rref_minus_identity(mod.reduce(g), r);
    // rank mod p never exceeds the exact rank
    if (r <= 2 && is_symplectic_reflection(g)) out.push_back(g);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool steinberg_check(const FiniteMatrixGroup& h) {
  if (h.order() == 1) return true;
  auto refl = reflections_in(h);
  if (refl.empty()) return false;
  FiniteMatrixGroup r(h.dim(), std::move(refl), h.limits());
  return r.order() == h.order();
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "rank " << rank << ", order " << order << ", reflections " << reflection_count << ", center " << center_order
     << ", orders {";
  bool first = true;
  for (const auto& [k, c] : order_histogram) {
    os << (first ? "" : ", ") << k << ": " << c;
    first = false;
  }
  os << "}";
  return os.str();
}

Fingerprint fingerprint(const FiniteMatrixGroup& h) {
  Fingerprint fp;
  fp.rank = h.dim() - fixed_space(h.gens(), h.dim()).dim();
  fp.order = h.order();
  const auto& elems = h.elements();
  fp.order_histogram = h.element_order_histogram();
  if (elems.size() <= 1) return fp;
  DenseMod mod(h.gens(), h.dim());
  std::vector<std::vector<std::uint64_t>> gens;
  for (const auto& s : h.gens()) gens.push_back(mod.reduce(s));
  fp.reflection_count = 0;
  fp.center_order = 0;
  for (const auto& g : elems) {
    auto gm = mod.reduce(g);
    std::size_t r = 0;
    mod.rref_minus_identity(gm, r);
    if (!g.is_identity() && r <= 2 && is_symplectic_reflection(g)) ++fp.reflection_count;
    bool central = true;
    for (const auto& s : gens)
      if (mod.mul(gm, s) != mod.mul(s, gm)) {
        central = false;
        break;
      }
    if (central) {
      for (const auto& s : h.gens())
        if (!(g * s == s * g)) central = false;
      if (central) ++fp.center_order;
    }
  }
  return fp;
}

const std::vector<ReferenceFingerprint>& reference_fingerprints() {
  static std::once_flag once;
  static std::vector<ReferenceFingerprint> refs;
  std::call_once(once, [] {
    for (const auto& r : reference_groups()) refs.push_back({r.name, r.construction, fingerprint(r.group)});
  });
  return refs;
}

std::vector<std::vector<std::string>> reference_collisions() {
  const auto& refs = reference_fingerprints();
  std::vector<std::vector<std::string>> out;
  std::vector<bool> used(refs.size(), false);
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::string> group{refs[i].name};
    for (std::size_t j = i + 1; j < refs.size(); ++j)
      if (!used[j] && refs[j].fingerprint == refs[i].fingerprint) {
        used[j] = true;
        group.push_back(refs[j].name);
      }
    if (group.size() > 1) out.push_back(std::move(group));
  }
  return out;
}

std::string recognize(const Fingerprint& fp) {
  if (fp.order == 1) return "trivial";
  std::vector<std::string> hits;
  for (const auto& r : reference_fingerprints())
    if (r.fingerprint == fp) hits.push_back(r.name);
  if (hits.empty()) return "unknown";
  if (hits.size() == 1) return hits.front();
  std::string s = "ambiguous: [";
  for (std::size_t i = 0; i < hits.size(); ++i) s += (i ? ", " : "") + hits[i];
  return s + "]";
}

std::string recognize(const FiniteMatrixGroup& h) { return recognize(fingerprint(h)); }

std::vector<Subspace> subspace_orbit(const FiniteMatrixGroup& g, const Subspace& x, std::size_t cap) {
  std::vector<Subspace> orbit{x};
  std::unordered_set<Subspace, SubspaceHash> seen{x};
  for (std::size_t q = 0; q < orbit.size(); ++q)
    for (const auto& s : g.gens()) {
      Subspace y = orbit[q].image_under(s);
      if (!seen.insert(y).second) continue;
      if (orbit.size() + 1 > cap)
        throw CapExceeded(CapExceeded::Kind::orbit, cap, "subspace orbit exceeds " + std::to_string(cap));
      orbit.push_back(std::move(y));
    }
  return orbit;
}

namespace {

struct Lattice {
  std::vector<Subspace> element_fixed;      // distinct Fix(g), g != 1
  std::vector<std::vector<Subspace>> orbits; // G-orbits of lattice elements
};

Lattice build_lattice(const FiniteMatrixGroup& g) {
  const std::size_t n = g.dim();
  const auto& elems = g.elements();
  Lattice lat;
  std::unordered_set<Subspace, SubspaceHash> fixed_set;
  if (elems.size() > 1) {
    DenseMod mod(g.gens(), n);
    std::unordered_map<std::vector<std::uint64_t>, std::vector<std::size_t>, KeyHash> buckets;
    std::vector<std::vector<std::uint64_t>> order_of_keys;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i].is_identity()) continue;
      std::size_t r = 0;
      auto key = mod.rref_minus_identity(mod.reduce(elems[i]), r);
      auto [it, inserted] = buckets.try_emplace(key);
      if (inserted) order_of_keys.push_back(key);
      it->second.push_back(i);
    }
    const ExactMatrix id = ExactMatrix::identity(n);
    for (const auto& key : order_of_keys) {
      const auto& members = buckets.at(key);
      const std::size_t key_dim = n - key.size() / n;
      Subspace x = kernel(elems[members.front()] - id);
      bool ok = x.dim() == key_dim;
      // X is inside Fix(h) exactly and dim Fix(h) <= key_dim = dim X.
      for (std::size_t k = 1; ok && k < members.size(); ++k) ok = exactly_fixes(elems[members[k]], x);
      if (ok) {
        fixed_set.insert(std::move(x));
      } else {
        for (auto idx : members) fixed_set.insert(kernel(elems[idx] - id));
      }
    }
  }
  lat.element_fixed.assign(fixed_set.begin(), fixed_set.end());
  std::sort(lat.element_fixed.begin(), lat.element_fixed.end(), subspace_less);

  const std::size_t cap = g.limits().orbit_cap;
  std::unordered_set<Subspace, SubspaceHash> in_lattice;
  std::vector<Subspace> reps;
  auto add_orbit = [&](const Subspace& y) {
    auto orb = subspace_orbit(g, y, cap);
    for (const auto& z : orb) in_lattice.insert(z);
    reps.push_back(y);
    lat.orbits.push_back(std::move(orb));
  };
  add_orbit(Subspace::full(n));
  for (std::size_t q = 0; q < reps.size(); ++q) {
    const Subspace x = reps[q];
    for (const auto& f : lat.element_fixed) {
      Subspace y = x.intersect(f);
      if (!in_lattice.count(y)) add_orbit(y);
    }
  }
  for (auto& orb : lat.orbits) std::sort(orb.begin(), orb.end(), subspace_less);
  std::sort(lat.orbits.begin(), lat.orbits.end(),
            [](const auto& a, const auto& b) { return subspace_less(a.front(), b.front()); });
  return lat;
}

} // namespace

std::vector<Subspace> fixed_space_lattice(const FiniteMatrixGroup& g) {
  Lattice lat = build_lattice(g);
  std::vector<Subspace> out;
  for (const auto& orb : lat.orbits) out.insert(out.end(), orb.begin(), orb.end());
  std::sort(out.begin(), out.end(), subspace_less);
  return out;
}

LatticeClassification classify_full_lattice(const FiniteMatrixGroup& g) {
  Lattice lat = build_lattice(g);
  LatticeClassification out;
  out.element_fixed_spaces = lat.element_fixed.size();
  const Subspace fix_g = fixed_space(g.gens(), g.dim());
  std::vector<Subspace> all;
  for (const auto& orb : lat.orbits) all.insert(all.end(), orb.begin(), orb.end());
  out.lattice_size = all.size();

  const auto& elems = g.elements();
  DenseMod mod(g.gens(), g.dim());
  std::vector<std::vector<std::uint64_t>> reduced;
  reduced.reserve(elems.size());
  for (const auto& e : elems) reduced.push_back(mod.reduce(e));

  out.all_steinberg = true;
  for (std::size_t c = 0; c < lat.orbits.size(); ++c) {
    const Subspace& x = lat.orbits[c].front();
    ParabolicRecord rec;
    rec.fixed_space = x;
    rec.group = g.pointwise_stabilizer(x);
    rec.conjugacy_class_id = c;
    rec.class_size = lat.orbits[c].size();
    std::vector<std::vector<std::uint64_t>> basis;
    for (const auto& b : x.basis_vectors()) basis.push_back(mod.reduce(b));
    for (const auto& r : reduced) {
      bool fixes = true;
      for (const auto& b : basis)
        if (!mod.fixes(r, b)) {
          fixes = false;
          break;
        }
      if (fixes) ++rec.enumeration_count;
    }
    // count mod p >= #{g fixing x} >= |rec.group|, so equality pins both.
    if (rec.enumeration_count != rec.group.order())
      throw Error("pointwise stabilizer order disagrees with the enumeration count");
    if (!(fixed_space(rec.group.gens(), g.dim()) == x))
      throw Error("lattice element is not the fixed space of its pointwise stabilizer");
    rec.steinberg_ok = steinberg_check(rec.group);
    rec.fingerprint = fingerprint(rec.group);
    rec.recognized_type = recognize(rec.fingerprint);
    if (!(x == fix_g)) {
      rec.is_maximal = true;
      for (const auto& y : all)
        if (y.dim() < x.dim() && !(y == fix_g) && x.contains(y) && y.contains(fix_g)) {
          rec.is_maximal = false;
          break;
        }
    }
    if (rec.is_maximal) ++out.maximal_classes;
    out.all_steinberg = out.all_steinberg && rec.steinberg_ok;
    out.classes.push_back(std::move(rec));
  }
  out.members = std::move(lat.orbits);
  return out;
}

std::vector<ParabolicRecord> classify_vectors(const FiniteMatrixGroup& g, std::span<const VectorInput> vectors,
                                              std::uint64_t seed) {
  const Subspace fix_g = fixed_space(g.gens(), g.dim());
  std::vector<ParabolicRecord> recs;
  for (const auto& in : vectors) {
    if (in.vector.size() != g.dim()) throw DimensionMismatch(in.label + ": vector of wrong length");
    ParabolicRecord rec;
    rec.label = in.label;
    rec.vector = in.vector;
    rec.group = in.vector.is_zero() ? g : g.stabilizer(in.vector, seed);
    rec.fixed_space = fixed_space(rec.group.gens(), g.dim());
    rec.steinberg_ok = steinberg_check(rec.group);
    rec.fingerprint = fingerprint(rec.group);
    rec.recognized_type = recognize(rec.fingerprint);
    if (rec.fixed_space == fix_g) {
      rec.is_maximal = false;
    } else if (rec.fixed_space.dim() == fix_g.dim() + 2) {
      // Fixed spaces are symplectic, so nothing lies strictly between.
      rec.is_maximal = true;
    } else {
      rec.maximality_certified = false;
    }
    recs.push_back(std::move(rec));
  }

  // Conjugacy: same fingerprint and fixed spaces in one orbit.
  std::vector<std::vector<Subspace>> orbits(recs.size());
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    bool assigned = false;
    for (std::size_t j = 0; j < i && !assigned; ++j) {
      if (!(recs[j].fingerprint == recs[i].fingerprint) || recs[j].fixed_space.dim() != recs[i].fixed_space.dim())
        continue;
      if (orbits[j].empty()) {
        orbits[j] = subspace_orbit(g, recs[j].fixed_space, g.limits().orbit_cap);
        recs[j].class_size = orbits[j].size();
      }
      if (std::find(orbits[j].begin(), orbits[j].end(), recs[i].fixed_space) != orbits[j].end()) {
        recs[i].conjugacy_class_id = recs[j].conjugacy_class_id;
        recs[i].class_size = orbits[j].size();
        assigned = true;
      }
    }
    if (!assigned) recs[i].conjugacy_class_id = next_id++;
  }
  // Orbit sizes for records that shared a fingerprint with a later one.
  for (std::size_t i = 0; i < recs.size(); ++i)
    if (recs[i].class_size == 0)
      for (std::size_t j = 0; j < recs.size(); ++j)
        if (j != i && recs[j].fingerprint == recs[i].fingerprint) {
          if (orbits[i].empty()) orbits[i] = subspace_orbit(g, recs[i].fixed_space, g.limits().orbit_cap);
          recs[i].class_size = orbits[i].size();
          break;
        }
  return recs;
}

} // namespace symparab
