#include "symparab/matgroup.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "symparab/errors.hpp"

namespace symparab {

namespace {

std::size_t mix_hash(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool equal_spans(std::span<const Cyclotomic> a, std::span<const Cyclotomic> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

void normalize_projective(std::span<Cyclotomic> v) {
  std::size_t l = 0;
  while (l < v.size() && v[l].is_zero()) ++l;
  if (l == v.size() || v[l].is_one()) return;
  Cyclotomic inv = v[l].inverse();
  v[l] = Cyclotomic(1);
  for (std::size_t i = l + 1; i < v.size(); ++i)
    if (!v[i].is_zero()) v[i] = inv * v[i];
}

struct MatrixHash {
  std::size_t operator()(const ExactMatrix& m) const noexcept { return m.hash(); }
};

} // namespace

// ---------------------------------------------------------------------------
// VectorTable

ExactVector VectorTable::vector(std::size_t i) const {
  auto s = at(i);
  return ExactVector(std::vector<Cyclotomic>(s.begin(), s.end()));
}

std::size_t VectorTable::hash_of(std::span<const Cyclotomic> v) noexcept {
  std::size_t h = 0x51ed270b27f2a3c1ULL;
  for (const auto& c : v) h = mix_hash(h, c.hash());
  return h;
}

std::size_t VectorTable::find(std::span<const Cyclotomic> v) const {
  if (v.size() != dim_) throw DimensionMismatch("vector table: wrong length");
  if (slots_.empty()) return npos;
  std::size_t h = hash_of(v);
  std::size_t mask = slots_.size() - 1;
  for (std::size_t i = h & mask; slots_[i] != 0; i = (i + 1) & mask) {
    std::size_t idx = slots_[i] - 1;
    if (hashes_[idx] == h && equal_spans(at(idx), v)) return idx;
  }
  return npos;
}

std::pair<std::size_t, bool> VectorTable::insert(std::span<const Cyclotomic> v) {
  if (v.size() != dim_) throw DimensionMismatch("vector table: wrong length");
  if (slots_.empty()) slots_.assign(64, 0);
  std::size_t h = hash_of(v);
  std::size_t mask = slots_.size() - 1;
  std::size_t i = h & mask;
  for (; slots_[i] != 0; i = (i + 1) & mask) {
    std::size_t idx = slots_[i] - 1;
    if (hashes_[idx] == h && equal_spans(at(idx), v)) return {idx, false};
  }
  if (count_ >= 0xffffffffULL - 1) throw Error("vector table full");
  data_.insert(data_.end(), v.begin(), v.end());
  hashes_.push_back(h);
  slots_[i] = static_cast<std::uint32_t>(++count_);
  if (count_ * 2 > slots_.size()) grow();
  return {count_ - 1, true};
}

void VectorTable::grow() {
  std::vector<std::uint32_t> next(slots_.size() * 2, 0);
  std::size_t mask = next.size() - 1;
  for (std::size_t idx = 0; idx < count_; ++idx) {
    std::size_t i = hashes_[idx] & mask;
    while (next[i] != 0) i = (i + 1) & mask;
    next[i] = static_cast<std::uint32_t>(idx + 1);
  }
  slots_.swap(next);
}

// ---------------------------------------------------------------------------
// MatrixAction

MatrixAction::MatrixAction(const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("matrix action needs a square matrix");
  rows_.resize(m.rows());
  const Cyclotomic minus_one(-1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Cyclotomic& c = m(i, j);
      if (c.is_zero()) continue;
      signed char unit = c.is_one() ? 1 : (c == minus_one ? -1 : 0);
      rows_[i].push_back({static_cast<std::uint32_t>(j), unit, c});
    }
}

void MatrixAction::apply(std::span<const Cyclotomic> in, std::span<Cyclotomic> out) const {
  thread_local CyclotomicAccumulator acc;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Entry* single = nullptr;
    int count = 0;
    for (const auto& e : rows_[i]) {
      if (in[e.col].is_zero()) continue;
      if (count++ == 0) single = &e;
    }
    if (count == 0) {
      out[i] = Cyclotomic();
      continue;
    }
    if (count == 1) {
      const Cyclotomic& x = in[single->col];
      out[i] = single->unit == 1 ? x : (single->unit == -1 ? -x : single->coeff * x);
      continue;
    }
    for (const auto& e : rows_[i]) {
      const Cyclotomic& x = in[e.col];
      if (x.is_zero()) continue;
      if (e.unit == 1)
        acc.add(x);
      else if (e.unit == -1)
        acc.sub(x);
      else
        acc.add_product(e.coeff, x);
    }
    out[i] = acc.take();
  }
}

// ---------------------------------------------------------------------------
// OrbitData

std::vector<std::size_t> OrbitData::word(std::size_t i) const {
  std::vector<std::size_t> w;
  while (generator[i] >= 0) {
    w.push_back(static_cast<std::size_t>(generator[i]));
    i = parent[i];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

// ---------------------------------------------------------------------------
// PermDomain

namespace {

// Closes table[first..] under the actions, appending new points.
void close_orbit(VectorTable& table, std::size_t first, std::span<const MatrixAction> acts, std::size_t cap) {
  std::vector<Cyclotomic> cur(table.dim()), out(table.dim());
  for (std::size_t q = first; q < table.size(); ++q) {
    auto p = table.at(q);
    std::copy(p.begin(), p.end(), cur.begin());
    for (const auto& a : acts) {
      a.apply(cur, out);
      table.insert(out);
      if (table.size() > cap)
        throw CapExceeded(CapExceeded::Kind::domain, cap,
                          "permutation domain exceeds " + std::to_string(cap) + " points");
    }
  }
}

} // namespace

std::shared_ptr<const PermDomain> PermDomain::build(std::size_t dim, std::span<const ExactMatrix> gens,
                                                    std::span<const ExactVector> seeds, std::size_t cap) {
  auto d = std::make_shared<PermDomain>();
  d->points_ = VectorTable(dim);
  std::vector<MatrixAction> acts;
  for (const auto& g : gens) acts.emplace_back(g);

  std::vector<ExactVector> candidates(seeds.begin(), seeds.end());
  ExactMatrix id = ExactMatrix::identity(dim);
  for (const auto& g : gens) {
    ExactMatrix diff = g - id;
    if (rank(diff) > 2) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      ExactVector c = diff.column(j);
      if (!c.is_zero()) candidates.push_back(c);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) candidates.push_back(ExactVector::unit(dim, i));

  EchelonBasis span(dim);
  for (const auto& c : candidates) {
    if (span.dim() == dim) break;
    if (c.size() != dim) throw DimensionMismatch("domain seed of wrong length");
    if (c.is_zero() || d->points_.find(c) != VectorTable::npos) continue;
    std::size_t first = d->points_.size();
    d->points_.insert(c.entries());
    close_orbit(d->points_, first, acts, cap);
    for (std::size_t i = first; i < d->points_.size() && span.dim() < dim; ++i) span.add(d->points_.vector(i));
  }

  EchelonBasis chosen(dim);
  std::vector<ExactVector> cols;
  for (std::size_t i = 0; i < d->points_.size() && chosen.dim() < dim; ++i) {
    ExactVector v = d->points_.vector(i);
    if (chosen.add(v)) {
      d->base_.push_back(static_cast<Point>(i));
      cols.push_back(std::move(v));
    }
  }
  if (dim > 0) d->base_inverse_ = ExactMatrix::from_columns(cols).inverse();
  return d;
}

Perm PermDomain::action(const ExactMatrix& g) const {
  MatrixAction a(g);
  Perm p(size());
  std::vector<Cyclotomic> cur(dim()), out(dim());
  for (std::size_t i = 0; i < size(); ++i) {
    auto x = points_.at(i);
    std::copy(x.begin(), x.end(), cur.begin());
    a.apply(cur, out);
    std::size_t j = points_.find(out);
    if (j == VectorTable::npos) throw NotInvariant("matrix does not preserve the permutation domain");
    p[i] = static_cast<Point>(j);
  }
  return p;
}

std::optional<std::vector<Point>> PermDomain::base_images(const ExactMatrix& g) const {
  if (g.rows() != dim() || g.cols() != dim()) throw DimensionMismatch("matrix of wrong size for this group");
  MatrixAction a(g);
  std::vector<Point> img;
  std::vector<Cyclotomic> cur(dim()), out(dim());
  for (Point b : base_) {
    auto x = points_.at(b);
    std::copy(x.begin(), x.end(), cur.begin());
    a.apply(cur, out);
    std::size_t j = points_.find(out);
    if (j == VectorTable::npos) return std::nullopt;
    img.push_back(static_cast<Point>(j));
  }
  return img;
}

ExactMatrix PermDomain::matrix_from_base_images(std::span<const Point> images) const {
  std::vector<ExactVector> cols;
  for (Point p : images) cols.push_back(points_.vector(p));
  return ExactMatrix::from_columns(cols) * base_inverse_;
}

ExactMatrix PermDomain::matrix_of(const Perm& p) const {
  std::vector<Point> img;
  for (Point b : base_) img.push_back(p[b]);
  return matrix_from_base_images(img);
}

// ---------------------------------------------------------------------------
// FiniteMatrixGroup

struct FiniteMatrixGroup::State {
  std::size_t dim = 0;
  std::vector<ExactMatrix> gens;
  std::vector<ExactVector> seeds;

  std::recursive_mutex mutex;
  std::shared_ptr<const PermDomain> domain;
  std::vector<Perm> gen_perms;
  std::unique_ptr<PermBsgs> bsgs;
  std::vector<MatrixAction> actions;
  std::unique_ptr<std::vector<ExactMatrix>> elements;
  std::unique_ptr<std::unordered_map<ExactMatrix, std::size_t, MatrixHash>> index;
  std::shared_ptr<const ModularData> modular;
};

FiniteMatrixGroup::FiniteMatrixGroup(std::size_t dim, std::vector<ExactMatrix> gens, GroupLimits limits,
                                     std::vector<ExactVector> domain_seeds)
    : state_(std::make_shared<State>()), limits_(limits) {
  state_->dim = dim;
  std::unordered_set<ExactMatrix, MatrixHash> seen;
  for (auto& g : gens) {
    if (g.rows() != dim || g.cols() != dim) throw DimensionMismatch("generator of wrong size");
    if (g.is_identity() || !seen.insert(g).second) continue;
    state_->gens.push_back(std::move(g));
  }
  state_->seeds = std::move(domain_seeds);
  for (const auto& g : state_->gens) state_->actions.emplace_back(g);
}

FiniteMatrixGroup FiniteMatrixGroup::trivial(std::size_t dim, GroupLimits limits) {
  return FiniteMatrixGroup(dim, {}, limits);
}

std::size_t FiniteMatrixGroup::dim() const noexcept { return state_->dim; }
const std::vector<ExactMatrix>& FiniteMatrixGroup::gens() const noexcept { return state_->gens; }
const GroupLimits& FiniteMatrixGroup::limits() const noexcept { return limits_; }

FiniteMatrixGroup FiniteMatrixGroup::with_limits(GroupLimits limits) const {
  return FiniteMatrixGroup(state_, limits);
}

const PermDomain& FiniteMatrixGroup::domain() const {
  std::lock_guard lock(state_->mutex);
  if (!state_->domain)
    state_->domain = PermDomain::build(state_->dim, state_->gens, state_->seeds, limits_.domain_cap);
  return *state_->domain;
}

const PermBsgs& FiniteMatrixGroup::bsgs() const {
  std::lock_guard lock(state_->mutex);
  if (!state_->bsgs) {
    const PermDomain& d = domain();
    if (state_->gen_perms.size() != state_->gens.size()) {
      state_->gen_perms.clear();
      for (const auto& g : state_->gens) state_->gen_perms.push_back(d.action(g));
    }
    state_->bsgs = std::make_unique<PermBsgs>(PermBsgs::build(d.size(), d.base(), state_->gen_perms));
  }
  return *state_->bsgs;
}

std::uint64_t FiniteMatrixGroup::order() const { return bsgs().order(); }

bool FiniteMatrixGroup::is_member(const ExactMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim()) throw DimensionMismatch("matrix of wrong size for this group");
  const PermBsgs& b = bsgs();
  auto img = domain().base_images(m);
  if (!img) return false;
  return b.sift_images(std::move(*img));
}

bool FiniteMatrixGroup::contains(const FiniteMatrixGroup& h) const {
  if (h.dim() != dim()) throw DimensionMismatch("groups of different dimension");
  return std::all_of(h.gens().begin(), h.gens().end(), [this](const ExactMatrix& g) { return is_member(g); });
}

bool FiniteMatrixGroup::same_group(const FiniteMatrixGroup& h) const {
  return h.dim() == dim() && order() == h.order() && contains(h);
}

bool FiniteMatrixGroup::is_enumerated() const {
  std::lock_guard lock(state_->mutex);
  return state_->elements != nullptr;
}

const std::vector<ExactMatrix>& FiniteMatrixGroup::elements() const {
  std::lock_guard lock(state_->mutex);
  if (state_->elements) return *state_->elements;
  const std::size_t cap = limits_.enumeration_cap;
  auto cap_error = [cap] {
    return CapExceeded(CapExceeded::Kind::enumeration, cap,
                       "group has more than " + std::to_string(cap) +
                           " elements; enumeration refused (use BSGS-based operations instead)");
  };
  // Refuse early when the stabilizer chain shows the group is too big.
  try {
    if (order() > cap) throw cap_error();
  } catch (const CapExceeded& e) {
    if (e.kind() != CapExceeded::Kind::domain) throw;
  }
  auto elems = std::make_unique<std::vector<ExactMatrix>>();
  auto index = std::make_unique<std::unordered_map<ExactMatrix, std::size_t, MatrixHash>>();
  ExactMatrix id = ExactMatrix::identity(dim());
  elems->push_back(id);
  index->emplace(id, 0);
  for (std::size_t q = 0; q < elems->size(); ++q) {
    for (const auto& g : state_->gens) {
      ExactMatrix x = g * (*elems)[q];
      if (index->find(x) != index->end()) continue;
      if (elems->size() >= cap) throw cap_error();
      index->emplace(x, elems->size());
      elems->push_back(std::move(x));
    }
  }
  state_->elements = std::move(elems);
  state_->index = std::move(index);
  return *state_->elements;
}

OrbitData FiniteMatrixGroup::orbit(const ExactVector& seed, OrbitNormalize normalize) const {
  if (seed.size() != dim()) throw DimensionMismatch("orbit seed of wrong length");
  OrbitData o;
  o.normalize = normalize;
  o.points = VectorTable(dim());
  std::vector<Cyclotomic> cur(seed.begin(), seed.end()), out(dim());
  if (normalize == OrbitNormalize::projective) normalize_projective(cur);
  o.points.insert(cur);
  o.parent.push_back(0);
  o.generator.push_back(-1);
  const auto& acts = state_->actions;
  const std::size_t cap = limits_.orbit_cap;
  for (std::size_t q = 0; q < o.points.size(); ++q) {
    auto p = o.points.at(q);
    std::copy(p.begin(), p.end(), cur.begin());
    for (std::size_t s = 0; s < acts.size(); ++s) {
      acts[s].apply(cur, out);
      if (normalize == OrbitNormalize::projective) normalize_projective(out);
      if (!o.points.insert(out).second) continue;
      if (o.points.size() > cap)
        throw CapExceeded(CapExceeded::Kind::orbit, cap, "orbit exceeds " + std::to_string(cap) + " points");
      o.parent.push_back(static_cast<std::uint32_t>(q));
      o.generator.push_back(static_cast<std::int32_t>(s));
    }
  }
  return o;
}

ExactMatrix FiniteMatrixGroup::transversal(const OrbitData& orbit, std::size_t i) const {
  ExactMatrix m = ExactMatrix::identity(dim());
  for (std::size_t s : orbit.word(i)) m = gens()[s] * m;
  return m;
}

namespace {

// Orbit over F_p with the full image table, for stabilizer computations.
struct ModularOrbit {
  std::size_t dim = 0;
  std::size_t ngens = 0;
  std::vector<std::uint64_t> data;
  std::vector<std::uint32_t> parent;
  std::vector<std::int32_t> generator;
  std::vector<std::uint32_t> image; // image[p * ngens + s]

  std::size_t size() const noexcept { return parent.size(); }
  std::vector<std::size_t> word(std::size_t i) const {
    std::vector<std::size_t> w;
    while (generator[i] >= 0) {
      w.push_back(static_cast<std::size_t>(generator[i]));
      i = parent[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

ModularOrbit modular_orbit(std::span<const ModularMatrix> gens, std::vector<std::uint64_t> seed, std::size_t cap) {
  ModularOrbit o;
  o.dim = seed.size();
  o.ngens = gens.size();
  const std::size_t d = o.dim;
  std::vector<std::uint32_t> slots(1024, 0);
  auto hash = [&](const std::uint64_t* x) {
    std::size_t h = 0x2545f4914f6cdd1dULL;
    for (std::size_t i = 0; i < d; ++i) h = mix_hash(h, x[i] * 0x9e3779b97f4a7c15ULL);
    return h;
  };
  auto lookup = [&](const std::uint64_t* x, bool insert) -> std::pair<std::size_t, bool> {
    std::size_t mask = slots.size() - 1;
    for (std::size_t i = hash(x) & mask;; i = (i + 1) & mask) {
      std::uint32_t s = slots[i];
      if (s == 0) {
        if (!insert) return {VectorTable::npos, false};
        std::size_t idx = o.data.size() / d;
        o.data.insert(o.data.end(), x, x + d);
        slots[i] = static_cast<std::uint32_t>(idx + 1);
        return {idx, true};
      }
      if (std::equal(x, x + d, o.data.data() + (s - 1) * d)) return {s - 1, false};
    }
  };
  auto grow = [&] {
    std::vector<std::uint32_t> fresh(slots.size() * 2, 0);
    std::size_t mask = fresh.size() - 1;
    for (std::size_t idx = 0; idx < o.data.size() / d; ++idx) {
      std::size_t i = hash(o.data.data() + idx * d) & mask;
      while (fresh[i] != 0) i = (i + 1) & mask;
      fresh[i] = static_cast<std::uint32_t>(idx + 1);
    }
    slots.swap(fresh);
  };
  lookup(seed.data(), true);
  o.parent.push_back(0);
  o.generator.push_back(-1);
  std::vector<std::uint64_t> cur(d), out(d);
  for (std::size_t q = 0; q < o.size(); ++q) {
    std::copy(o.data.begin() + static_cast<std::ptrdiff_t>(q * d),
              o.data.begin() + static_cast<std::ptrdiff_t>((q + 1) * d), cur.begin());
    for (std::size_t s = 0; s < gens.size(); ++s) {
      gens[s].apply(cur, out);
      if (2 * (o.size() + 1) > slots.size()) grow();
      auto [idx, inserted] = lookup(out.data(), true);
      o.image.push_back(static_cast<std::uint32_t>(idx));
      if (!inserted) continue;
      if (o.size() + 1 > cap)
        throw CapExceeded(CapExceeded::Kind::orbit, cap, "orbit exceeds " + std::to_string(cap) + " points");
      o.parent.push_back(static_cast<std::uint32_t>(q));
      o.generator.push_back(static_cast<std::int32_t>(s));
    }
  }
  return o;
}

} // namespace

std::shared_ptr<const FiniteMatrixGroup::ModularData> FiniteMatrixGroup::modular(std::int64_t conductor) const {
  std::lock_guard lock(state_->mutex);
  auto& m = state_->modular;
  if (m && m->red.modulus_order() % conductor == 0) return m;
  std::int64_t n = std::lcm(conductor, common_conductor(state_->gens, {}));
  if (m) n = std::lcm(n, m->red.modulus_order());
  auto fresh = std::make_shared<ModularData>(ModularData{ModularReduction(n), {}});
  for (const auto& g : state_->gens) fresh->gens.emplace_back(g, fresh->red);
  m = fresh;
  return m;
}

FiniteMatrixGroup FiniteMatrixGroup::stabilizer(const ExactVector& v, std::uint64_t seed) const {
  if (v.size() != dim()) throw DimensionMismatch("stabilizer vector of wrong length");
  if (v.is_zero()) return *this;
  const std::uint64_t n = order();

  // Fast path: the orbit over F_p.  Its stabilizer S_p contains Stab(v); if
  // the Schreier generators of S_p all fix v exactly then S_p = Stab(v).
  // A collision in F_p shows up as a generator that does not, and we fall
  // back to the exact orbit.
  std::shared_ptr<const ModularData> md;
  try {
    md = modular(common_conductor({}, std::span<const ExactVector>(&v, 1)));
  } catch (const InvalidArgument&) {
    md = nullptr; // a denominator vanished mod p
  }
  if (md) {
    std::vector<std::uint64_t> mv(dim());
    for (std::size_t i = 0; i < dim(); ++i) mv[i] = md->red.reduce(v[i]);
    ModularOrbit o = modular_orbit(md->gens, std::move(mv), limits_.orbit_cap);
    if (n % o.size() == 0) {
      auto image = [&](std::size_t p, std::size_t s) -> std::size_t { return o.image[p * o.ngens + s]; };
      auto word = [&](std::size_t i) { return o.word(i); };
      if (auto st = schreier_stabilizer(o.size(), image, word, n / o.size(), v, seed))
        return FiniteMatrixGroup(std::move(st), limits_);
    }
  }

  OrbitData o = orbit(v);
  if (n % o.size() != 0) throw Error("orbit length does not divide the group order");
  std::vector<Cyclotomic> cur(dim()), out(dim());
  auto image = [&](std::size_t p, std::size_t s) -> std::size_t {
    auto x = o.points.at(p);
    std::copy(x.begin(), x.end(), cur.begin());
    state_->actions[s].apply(cur, out);
    std::size_t q = o.points.find(out);
    if (q == VectorTable::npos) throw Error("orbit is not closed");
    return q;
  };
  auto word = [&](std::size_t i) { return o.word(i); };
  auto st = schreier_stabilizer(o.size(), image, word, n / o.size(), v, seed);
  if (!st) throw Error("Schreier generator does not fix the vector");
  return FiniteMatrixGroup(std::move(st), limits_);
}

template <class Image, class Word>
std::shared_ptr<FiniteMatrixGroup::State>
FiniteMatrixGroup::schreier_stabilizer(std::size_t npoints, Image image, Word word, std::uint64_t target,
                                       const ExactVector& v, std::uint64_t seed) const {
  const PermDomain& dom = domain();
  bsgs(); // makes sure generator permutations exist
  const std::vector<Perm>& gp = state_->gen_perms;

  auto result = std::make_shared<State>();
  result->dim = dim();
  result->domain = state_->domain;
  result->bsgs = std::make_unique<PermBsgs>(dom.size(), dom.base());
  if (target == order()) {
    result->gens = state_->gens;
    result->gen_perms = gp;
    result->bsgs = std::make_unique<PermBsgs>(*state_->bsgs);
  } else if (target > 1) {
    std::unordered_map<std::size_t, Perm> tcache;
    auto transversal_perm = [&](std::size_t i) -> const Perm& {
      auto it = tcache.find(i);
      if (it != tcache.end()) return it->second;
      Perm t = perm_identity(dom.size());
      for (std::size_t s : word(i)) t = perm_compose(gp[s], t);
      return tcache.emplace(i, std::move(t)).first->second;
    };
    auto try_pair = [&](std::size_t p, std::size_t s) {
      std::size_t q = image(p, s);
      Perm h = perm_compose(gp[s], transversal_perm(p));
      h = perm_compose(perm_inverse(transversal_perm(q)), h);
      if (perm_is_identity(h)) return;
      if (!result->bsgs->extend(h)) return;
      result->gen_perms.push_back(h);
      result->gens.push_back(dom.matrix_of(h));
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_point(0, npoints - 1);
    std::uniform_int_distribution<std::size_t> pick_gen(0, gens().size() - 1);
    const std::size_t budget = 200 + 20 * gens().size();
    for (std::size_t t = 0; t < budget && result->bsgs->order() < target; ++t) {
      if (tcache.size() > 4096) tcache.clear();
      try_pair(pick_point(rng), pick_gen(rng));
    }
    // Schreier's lemma guarantees the exhaustive pass finishes the job.
    for (std::size_t p = 0; p < npoints && result->bsgs->order() < target; ++p) {
      if (tcache.size() > 4096) tcache.clear();
      for (std::size_t s = 0; s < gens().size() && result->bsgs->order() < target; ++s) try_pair(p, s);
    }
    if (result->bsgs->order() != target) throw Error("stabilizer order does not match orbit-stabilizer");
  }
  for (const auto& g : result->gens)
    if (!(g * v == v)) return nullptr;
  for (const auto& g : result->gens) result->actions.emplace_back(g);
  return result;
}

FiniteMatrixGroup FiniteMatrixGroup::pointwise_stabilizer(const Subspace& s, std::uint64_t seed) const {
  if (s.ambient_dim() != dim()) throw DimensionMismatch("subspace of wrong ambient dimension");
  FiniteMatrixGroup h = *this;
  for (const auto& b : s.basis_vectors()) h = h.stabilizer(b, seed);
  return h;
}

std::uint64_t FiniteMatrixGroup::element_order(const ExactMatrix& g, std::uint64_t bound) {
  if (!g.is_square()) throw DimensionMismatch("element order of a non-square matrix");
  ExactMatrix x = g;
  std::uint64_t k = 1;
  while (!x.is_identity()) {
    if (++k > bound) throw Error("element order exceeds bound");
    x = x * g;
  }
  return k;
}

std::map<std::uint64_t, std::uint64_t> FiniteMatrixGroup::element_order_histogram() const {
  const auto& elems = elements();
  std::lock_guard lock(state_->mutex);
  const auto& index = *state_->index;
  std::vector<std::uint64_t> ord(elems.size(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (ord[i] != 0) continue;
    std::vector<std::size_t> powers{i};
    ExactMatrix x = elems[i];
    while (!x.is_identity()) {
      x = x * elems[i];
      powers.push_back(index.at(x));
    }
    std::uint64_t k = powers.size();
    for (std::size_t j = 0; j < powers.size(); ++j) ord[powers[j]] = k / std::gcd<std::uint64_t>(j + 1, k);
  }
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto o : ord) ++hist[o];
  return hist;
}

std::optional<Subspace> find_invariant_lagrangian(const FiniteMatrixGroup& h, const SymplecticSpace& sp,
                                                  std::uint64_t seed) {
  const std::size_t n = sp.dim();
  if (h.dim() != n) throw DimensionMismatch("find_invariant_lagrangian: group and form dimensions differ");
  const auto& elems = h.elements();
  const ExactMatrix id = ExactMatrix::identity(n);
  std::vector<ExactVector> seeds;
  auto eigenspaces = [&](const ExactMatrix& g, bool central) -> std::optional<Subspace> {
    const std::uint64_t k = FiniteMatrixGroup::element_order(g);
    for (std::uint64_t j = 0; j < k; ++j) {
      const Subspace e = kernel(g - Cyclotomic::root_of_unity(static_cast<std::int64_t>(k), static_cast<std::int64_t>(j)) * id);
      if (e.dim() == 0 || e.dim() == n) continue;
      if (central && e.dim() == n / 2 && is_isotropic(e, sp)) return e;
      for (auto& v : e.basis_vectors()) seeds.push_back(std::move(v));
    }
    return std::nullopt;
  };
  std::vector<const ExactMatrix*> rest;
  for (const auto& g : elems) {
    if (g == id) continue;
    const bool central = std::all_of(h.gens().begin(), h.gens().end(), [&](const ExactMatrix& x) { return x * g == g * x; });
    if (!central) {
      rest.push_back(&g);
      continue;
    }
    if (auto e = eigenspaces(g, true)) return e;
  }
  if (auto s = find_invariant_lagrangian(h.gens(), sp, seeds, seed, 0)) return s;
  seeds.clear();
  for (const ExactMatrix* g : rest) eigenspaces(*g, false);
  return find_invariant_lagrangian(h.gens(), sp, seeds, seed);
}

} // namespace symparab
