#include "symparab/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "symparab/errors.hpp"

namespace symparab {

namespace detail {

struct CycNode {
  int conductor = 1;
  std::vector<CyclotomicTerm> terms;
  std::size_t hash = 0;
  mutable std::atomic<const CycNode*> neg{nullptr};
  mutable std::atomic<const CycNode*> conj{nullptr};
  mutable std::atomic<const CycNode*> inv{nullptr};
};

} // namespace detail

namespace {

using detail::CycNode;
using Term = CyclotomicTerm;

std::size_t content_hash(int n, std::span<const Term> terms) {
  std::size_t h = 0x84222325cbf29ce4ULL ^ static_cast<std::size_t>(n);
  for (const Term& t : terms) {
    h ^= static_cast<std::size_t>(t.exponent) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= t.coeff.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool same_content(const CycNode& node, int n, std::span<const Term> terms) {
  if (node.conductor != n || node.terms.size() != terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (node.terms[i].exponent != terms[i].exponent || !(node.terms[i].coeff == terms[i].coeff))
      return false;
  return true;
}

// Open-addressing table of interned nodes.  Nodes live in a deque so their
// addresses are stable for the lifetime of the process.
class InternTable {
public:
  InternTable() : slots_(1024, nullptr) {}

  const CycNode* intern(int n, std::vector<Term>&& terms) {
    std::size_t h = content_hash(n, terms);
    std::lock_guard lock(mutex_);
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (const CycNode* node = slots_[i]) {
      if (node->hash == h && same_content(*node, n, terms)) return node;
      i = (i + 1) & mask;
    }
    CycNode& node = storage_.emplace_back();
    node.conductor = n;
    node.terms = std::move(terms);
    node.hash = h;
    slots_[i] = &node;
    if (++count_ * 2 > slots_.size()) grow();
    return &node;
  }

private:
  void grow() {
    std::vector<const CycNode*> next(slots_.size() * 2, nullptr);
    std::size_t mask = next.size() - 1;
    for (const CycNode* node : slots_) {
      if (!node) continue;
      std::size_t i = node->hash & mask;
      while (next[i]) i = (i + 1) & mask;
      next[i] = node;
    }
    slots_.swap(next);
  }

  std::mutex mutex_;
  std::deque<CycNode> storage_;
  std::vector<const CycNode*> slots_;
  std::size_t count_ = 0;
};

InternTable& table() {
  static InternTable t;
  return t;
}

const CycNode* intern(int n, std::vector<Term>&& terms) {
  return table().intern(n, std::move(terms));
}

const CycNode* zero_node() {
  static const CycNode* z = intern(1, {});
  return z;
}

const CycNode* one_node() {
  static const CycNode* o = [] {
    std::vector<Term> t;
    t.push_back({0, Rational(1)});
    return intern(1, std::move(t));
  }();
  return o;
}

const CycNode* minus_one_node() {
  static const CycNode* m = [] {
    std::vector<Term> t;
    t.push_back({0, Rational(-1)});
    return intern(1, std::move(t));
  }();
  return m;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  // m > 1, gcd(a, m) = 1
  std::int64_t t = 0, new_t = 1, r = m, new_r = mod(a, m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return mod(t, m);
}

struct PrimePower {
  int p;
  int nu;
  int q; // p^nu
};

std::vector<PrimePower> factor(int n) {
  std::vector<PrimePower> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.nu;
      pp.q *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

// Expansion of every zeta_n^k on the Zumbroich basis of Q(zeta_n).
struct ZumbroichTable {
  int n = 1;
  std::vector<char> is_basis;
  std::vector<std::vector<std::pair<int, int>>> expansion; // (basis exponent, sign)
};

std::unique_ptr<ZumbroichTable> build_table(int n) {
  auto tab = std::make_unique<ZumbroichTable>();
  tab->n = n;
  tab->is_basis.assign(n, 0);
  tab->expansion.resize(n);
  auto pps = factor(n);
  std::vector<int> cofactor, cofactor_inv;
  for (const auto& pp : pps) {
    int c = n / pp.q;
    cofactor.push_back(c);
    cofactor_inv.push_back(pp.q == 1 ? 0 : static_cast<int>(inverse_mod(c, pp.q)));
  }
  for (int k = 0; k < n; ++k) {
    // Components e_p with k = sum e_p * (n / p^nu) mod n; expand each one on
    // the prime-power basis, then take the tensor product.
    std::vector<std::pair<int, int>> acc{{0, 1}};
    bool basis = true;
    for (std::size_t j = 0; j < pps.size(); ++j) {
      const auto& pp = pps[j];
      int e = static_cast<int>(mod(static_cast<std::int64_t>(k) * cofactor_inv[j], pp.q));
      int step = pp.q / pp.p; // p^(nu-1)
      int low = e % step;
      int high = e / step;
      std::vector<std::pair<int, int>> comp;
      if (pp.p == 2) {
        if (high == 1) {
          comp.push_back({low, -1});
          basis = false;
        } else {
          comp.push_back({e, 1});
        }
      } else {
        if (high == 0) {
          for (int h = 1; h < pp.p; ++h) comp.push_back({low + step * h, -1});
          basis = false;
        } else {
          comp.push_back({e, 1});
        }
      }
      std::vector<std::pair<int, int>> next;
      for (auto [ea, sa] : acc)
        for (auto [ec, sc] : comp)
          next.push_back({static_cast<int>(mod(ea + static_cast<std::int64_t>(ec) * cofactor[j], n)), sa * sc});
      acc.swap(next);
    }
    tab->is_basis[k] = basis ? 1 : 0;
    if (!basis) tab->expansion[k] = std::move(acc);
  }
  return tab;
}

const ZumbroichTable& zumbroich(int n) {
  thread_local std::unordered_map<int, const ZumbroichTable*> local;
  if (auto it = local.find(n); it != local.end()) return *it->second;
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<ZumbroichTable>> global;
  std::lock_guard lock(mutex);
  auto& slot = global[n];
  if (!slot) slot = build_table(n);
  local.emplace(n, slot.get());
  return *slot;
}

// Reduce a dense buffer (index = exponent mod n, arbitrary exponents) to a
// canonical interned node.  The buffer is consumed (left zeroed).
const CycNode* canonicalize(int n, std::vector<Rational>& buf) {
  if (n == 1) {
    if (buf[0].is_zero()) return zero_node();
    std::vector<Term> t;
    t.push_back({0, std::move(buf[0])});
    buf[0] = Rational();
    return intern(1, std::move(t));
  }
  const ZumbroichTable& tab = zumbroich(n);
  for (int k = 0; k < n; ++k) {
    if (buf[k].is_zero() || tab.is_basis[k]) continue;
    Rational c = std::move(buf[k]);
    buf[k] = Rational();
    for (auto [b, s] : tab.expansion[k]) {
      if (s > 0)
        buf[b] += c;
      else
        buf[b] -= c;
    }
  }
  std::vector<Term> terms;
  for (int k = 0; k < n; ++k) {
    if (buf[k].is_zero()) continue;
    terms.push_back({k, std::move(buf[k])});
    buf[k] = Rational();
  }
  if (terms.empty()) return zero_node();

  // Conductor minimization.
  bool changed = true;
  while (changed && n > 1) {
    changed = false;
    for (const auto& pp : factor(n)) {
      if (pp.p == 2 && pp.nu == 1) {
        for (auto& t : terms) t.exponent /= 2;
        n /= 2;
        changed = true;
        break;
      }
      bool all_div = std::all_of(terms.begin(), terms.end(),
                                 [&](const Term& t) { return t.exponent % pp.p == 0; });
      if (pp.p == 2) {
        if (!all_div) continue;
        int f = pp.nu == 2 ? 4 : 2;
        for (auto& t : terms) t.exponent /= f;
        n /= f;
        changed = true;
        break;
      }
      if (pp.nu >= 2) {
        if (!all_div) continue;
        for (auto& t : terms) t.exponent /= pp.p;
        n /= pp.p;
        changed = true;
        break;
      }
      // p || n: each fiber over the complementary components must carry the
      // same coefficient on all p-1 basis positions.
      int m = n / pp.p;
      std::int64_t minv = inverse_mod(m % pp.p, pp.p);
      struct Fiber {
        int count = 0;
        const Rational* coeff = nullptr;
        bool ok = true;
      };
      std::map<int, Fiber> fibers;
      bool ok = true;
      for (const auto& t : terms) {
        std::int64_t ep = mod(static_cast<std::int64_t>(t.exponent) * minv, pp.p);
        int rest = static_cast<int>(mod(t.exponent - ep * m, n));
        Fiber& f = fibers[rest];
        if (f.coeff && !(*f.coeff == t.coeff)) {
          ok = false;
          break;
        }
        f.coeff = &t.coeff;
        ++f.count;
      }
      if (!ok) continue;
      for (const auto& [rest, f] : fibers)
        if (f.count != pp.p - 1) ok = false;
      if (!ok) continue;
      std::vector<Term> next;
      next.reserve(fibers.size());
      for (const auto& [rest, f] : fibers) next.push_back({rest / pp.p, -*f.coeff});
      std::sort(next.begin(), next.end(),
                [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
      terms.swap(next);
      n = m;
      changed = true;
      break;
    }
  }
  if (n == 1 && terms.size() == 1 && terms[0].exponent == 0 && terms[0].coeff.is_one())
    return one_node();
  return intern(n, std::move(terms));
}

const CycNode* from_dense_terms(int n, std::span<const std::pair<std::int64_t, Rational>> terms) {
  // Conductors congruent to 2 mod 4 are handled by the generic table.
  std::vector<Rational> buf(n);
  for (const auto& [k, c] : terms) buf[mod(k, n)] += c;
  return canonicalize(n, buf);
}

const CycNode* map_exponents(const CycNode* a, std::int64_t k) {
  int n = a->conductor;
  if (n == 1) return a;
  std::vector<Rational> buf(n);
  for (const auto& t : a->terms) buf[mod(static_cast<std::int64_t>(t.exponent) * k, n)] += t.coeff;
  return canonicalize(n, buf);
}

} // namespace

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic() noexcept : node_(zero_node()) {}

Cyclotomic::Cyclotomic(std::int64_t n) : Cyclotomic(Rational(n)) {}

Cyclotomic::Cyclotomic(const Rational& q) {
  if (q.is_zero()) {
    node_ = zero_node();
  } else if (q.is_one()) {
    node_ = one_node();
  } else {
    std::vector<Term> t;
    t.push_back({0, q});
    node_ = intern(1, std::move(t));
  }
}

Cyclotomic Cyclotomic::root_of_unity(std::int64_t n, std::int64_t k) {
  if (n < 1) throw InvalidArgument("root_of_unity: order must be positive");
  std::pair<std::int64_t, Rational> t{k, Rational(1)};
  return Cyclotomic(from_dense_terms(static_cast<int>(n), std::span(&t, 1)));
}

Cyclotomic Cyclotomic::from_exponents(std::int64_t n,
                                      std::span<const std::pair<std::int64_t, Rational>> terms) {
  if (n < 1) throw InvalidArgument("from_exponents: conductor must be positive");
  return Cyclotomic(from_dense_terms(static_cast<int>(n), terms));
}

int Cyclotomic::conductor() const noexcept { return node_->conductor; }

std::span<const CyclotomicTerm> Cyclotomic::terms() const noexcept { return node_->terms; }

bool Cyclotomic::is_zero() const noexcept { return node_ == zero_node(); }

bool Cyclotomic::is_one() const noexcept { return node_ == one_node(); }

std::optional<Rational> Cyclotomic::as_rational() const {
  if (node_->conductor != 1) return std::nullopt;
  if (node_->terms.empty()) return Rational();
  return node_->terms[0].coeff;
}

std::size_t Cyclotomic::hash() const noexcept { return node_->hash; }

Cyclotomic Cyclotomic::operator-() const {
  if (const CycNode* cached = node_->neg.load(std::memory_order_acquire)) return Cyclotomic(cached);
  std::vector<Term> t;
  t.reserve(node_->terms.size());
  for (const auto& term : node_->terms) t.push_back({term.exponent, -term.coeff});
  const CycNode* out = node_->terms.empty() ? zero_node() : intern(node_->conductor, std::move(t));
  node_->neg.store(out, std::memory_order_release);
  out->neg.store(node_, std::memory_order_release);
  return Cyclotomic(out);
}

Cyclotomic Cyclotomic::conj() const {
  if (node_->conductor == 1) return *this;
  if (const CycNode* cached = node_->conj.load(std::memory_order_acquire)) return Cyclotomic(cached);
  const CycNode* out = map_exponents(node_, -1);
  node_->conj.store(out, std::memory_order_release);
  out->conj.store(node_, std::memory_order_release);
  return Cyclotomic(out);
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  int n = node_->conductor;
  if (n == 1) return *this;
  if (std::gcd(mod(k, n), static_cast<std::int64_t>(n)) != 1)
    throw InvalidArgument("galois: exponent not coprime to the conductor");
  return Cyclotomic(map_exponents(node_, k));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (const CycNode* cached = node_->inv.load(std::memory_order_acquire)) return Cyclotomic(cached);
  Cyclotomic out;
  int n = node_->conductor;
  if (n == 1) {
    out = Cyclotomic(node_->terms[0].coeff.inverse());
  } else if (node_->terms.size() == 1) {
    std::pair<std::int64_t, Rational> t{-node_->terms[0].exponent, node_->terms[0].coeff.inverse()};
    out = Cyclotomic(from_dense_terms(n, std::span(&t, 1)));
  } else {
    // Norm trick: the product of all nontrivial Galois conjugates times a is
    // the (rational) norm.
    Cyclotomic others(Rational(1));
    for (int k = 2; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      others *= Cyclotomic(map_exponents(node_, k));
    }
    Cyclotomic norm = *this * others;
    auto q = norm.as_rational();
    if (!q || q->is_zero()) throw Error("inverse: norm computation failed");
    out = others * Cyclotomic(q->inverse());
  }
  node_->inv.store(out.node_, std::memory_order_release);
  out.node_->inv.store(node_, std::memory_order_release);
  return out;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  int n = node_->conductor;
  for (const auto& t : node_->terms) {
    double angle = 2.0 * std::numbers::pi * t.exponent / n;
    z += t.coeff.to_double() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

std::string Cyclotomic::str() const {
  if (node_->terms.empty()) return "0";
  int n = node_->conductor;
  if (n == 1) return node_->terms[0].coeff.str();
  std::string out;
  bool first = true;
  for (const auto& t : node_->terms) {
    std::string mono;
    if (t.exponent == 0)
      mono = "";
    else if (t.exponent == 1)
      mono = "E(" + std::to_string(n) + ")";
    else
      mono = "E(" + std::to_string(n) + ")^" + std::to_string(t.exponent);
    Rational c = t.coeff;
    bool negative = c.sign() < 0;
    if (negative) c.negate();
    std::string body;
    if (mono.empty())
      body = c.str();
    else if (c.is_one())
      body = mono;
    else
      body = c.str() + "*" + mono;
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? "-" : "+") + body;
    first = false;
  }
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) { return *this = *this + rhs; }
Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this = *this - rhs; }
Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) { return *this = *this * rhs; }
Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& rhs) { return *this = *this / rhs; }

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  CyclotomicAccumulator acc;
  acc.add(a);
  acc.add(b);
  return acc.take();
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a == b) return Cyclotomic();
  CyclotomicAccumulator acc;
  acc.add(a);
  acc.sub(b);
  return acc.take();
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_zero() || b.is_zero()) return Cyclotomic();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.node_ == minus_one_node()) return -b;
  if (b.node_ == minus_one_node()) return -a;
  CyclotomicAccumulator acc;
  acc.add_product(a, b);
  return acc.take();
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

int compare(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.node_ == b.node_) return 0;
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor() ? -1 : 1;
  auto ta = a.terms();
  auto tb = b.terms();
  std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ta[i].exponent != tb[i].exponent) return ta[i].exponent < tb[i].exponent ? -1 : 1;
    auto c = ta[i].coeff <=> tb[i].coeff;
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Accumulator

CyclotomicAccumulator::CyclotomicAccumulator() : buf_(1) {}

void CyclotomicAccumulator::ensure(int n) {
  if (n_ % n == 0) return;
  int l = std::lcm(n_, n);
  if (n_ == 1) {
    // Common case right after take(): grow in place, keeping capacity.
    Rational c = std::move(buf_[0]);
    buf_.resize(static_cast<std::size_t>(l));
    buf_[0] = std::move(c);
    n_ = l;
    return;
  }
  std::vector<Rational> next(l);
  int f = l / n_;
  for (int e = 0; e < n_; ++e)
    if (!buf_[e].is_zero()) next[e * f] = std::move(buf_[e]);
  buf_.swap(next);
  n_ = l;
}

void CyclotomicAccumulator::add(const Cyclotomic& a) {
  if (a.is_zero()) return;
  ensure(a.conductor());
  int f = n_ / a.conductor();
  for (const auto& t : a.terms()) buf_[t.exponent * f] += t.coeff;
}

void CyclotomicAccumulator::sub(const Cyclotomic& a) {
  if (a.is_zero()) return;
  ensure(a.conductor());
  int f = n_ / a.conductor();
  for (const auto& t : a.terms()) buf_[t.exponent * f] -= t.coeff;
}

void CyclotomicAccumulator::product(const Cyclotomic& a, const Cyclotomic& b, bool negate) {
  if (a.is_zero() || b.is_zero()) return;
  ensure(a.conductor());
  ensure(b.conductor());
  int fa = n_ / a.conductor();
  int fb = n_ / b.conductor();
  for (const auto& ta : a.terms()) {
    if (negate) {
      Rational ca = -ta.coeff;
      for (const auto& tb : b.terms()) buf_[(ta.exponent * fa + tb.exponent * fb) % n_].add_mul(ca, tb.coeff);
    } else {
      for (const auto& tb : b.terms())
        buf_[(ta.exponent * fa + tb.exponent * fb) % n_].add_mul(ta.coeff, tb.coeff);
    }
  }
}

void CyclotomicAccumulator::add_product(const Cyclotomic& a, const Cyclotomic& b) { product(a, b, false); }

void CyclotomicAccumulator::sub_product(const Cyclotomic& a, const Cyclotomic& b) { product(a, b, true); }

Cyclotomic CyclotomicAccumulator::take() {
  const CycNode* node = canonicalize(n_, buf_);
  if (n_ != 1) {
    // canonicalize() leaves the buffer zeroed, so shrinking keeps it clean.
    n_ = 1;
    buf_.resize(1);
  }
  return Cyclotomic(node);
}

Cyclotomic imaginary_unit() {
  static const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  return i;
}

Cyclotomic sqrt5() {
  static const Cyclotomic s = Cyclotomic(1) + Cyclotomic(2) * Cyclotomic::root_of_unity(5, 1) +
                              Cyclotomic(2) * Cyclotomic::root_of_unity(5, 4);
  return s;
}

} // namespace symparab
