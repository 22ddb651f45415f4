#include "symparab/modular.hpp"

#include <numeric>

#include "symparab/errors.hpp"

namespace symparab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      f.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) f.push_back(n);
  return f;
}

std::uint64_t mod_of(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

} // namespace

ModularReduction::ModularReduction(std::int64_t n) : n_(n) {
  if (n < 1) throw InvalidArgument("modular reduction needs n >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  std::uint64_t k = ((std::uint64_t{1} << 61) - 1) / un;
  while (!is_prime(k * un + 1)) --k;
  p_ = k * un + 1;
  std::uint64_t omega = 1;
  const auto factors = prime_factors(un);
  for (std::uint64_t g = 2;; ++g) {
    omega = powmod(g, (p_ - 1) / un, p_);
    bool primitive = true;
    for (auto q : factors)
      if (powmod(omega, un / q, p_) == 1) primitive = false;
    if (primitive) break;
  }
  powers_.resize(un);
  powers_[0] = 1;
  for (std::uint64_t i = 1; i < un; ++i) powers_[i] = mulmod(powers_[i - 1], omega, p_);
}

std::uint64_t ModularReduction::pow(std::uint64_t a, std::uint64_t e) const noexcept { return powmod(a, e, p_); }

std::uint64_t ModularReduction::inverse(std::uint64_t a) const {
  if (a % p_ == 0) throw DivisionByZero();
  return powmod(a, p_ - 2, p_);
}

std::uint64_t ModularReduction::reduce(const Rational& q) const {
  std::uint64_t num, den;
  if (q.is_small()) {
    std::int64_t a = q.small_num();
    num = a >= 0 ? static_cast<std::uint64_t>(a) % p_
                 : (p_ - static_cast<std::uint64_t>(-(a + 1)) % p_ - 1) % p_;
    den = static_cast<std::uint64_t>(q.small_den()) % p_;
  } else {
    mpq_class big = q.to_mpq();
    num = mod_of(big.get_num(), p_);
    den = mod_of(big.get_den(), p_);
  }
  if (den == 0) throw InvalidArgument("denominator vanishes modulo the working prime");
  return mulmod(num, inverse(den), p_);
}

std::uint64_t ModularReduction::reduce(const Cyclotomic& c) const {
  const std::int64_t cond = c.conductor();
  if (n_ % cond != 0) throw InvalidArgument("conductor does not divide the modular field order");
  const std::int64_t f = n_ / cond;
  std::uint64_t r = 0;
  for (const auto& t : c.terms()) {
    r += mulmod(reduce(t.coeff), powers_[static_cast<std::size_t>(t.exponent * f)], p_);
    if (r >= p_) r -= p_;
  }
  return r;
}

std::int64_t common_conductor(std::span<const ExactMatrix> mats, std::span<const ExactVector> vecs) {
  std::int64_t n = 1;
  for (const auto& m : mats)
    for (const auto& x : m.data()) n = std::lcm(n, static_cast<std::int64_t>(x.conductor()));
  for (const auto& v : vecs)
    for (const auto& x : v) n = std::lcm(n, static_cast<std::int64_t>(x.conductor()));
  return n;
}

ModularMatrix::ModularMatrix(const ExactMatrix& m, const ModularReduction& red) : p_(red.prime()) {
  rows_.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) rows_[i].push_back({static_cast<std::uint32_t>(j), red.reduce(m(i, j))});
}

void ModularMatrix::apply(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) const {
  // p < 2^61 keeps each product below 2^122, so 32 of them fit in 128 bits.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    unsigned __int128 acc = 0;
    std::size_t n = 0;
    for (const auto& e : rows_[i]) {
      acc += static_cast<unsigned __int128>(e.value) * in[e.col];
      if (++n == 32) {
        acc %= p_;
        n = 0;
      }
    }
    out[i] = static_cast<std::uint64_t>(acc % p_);
  }
}

} // namespace symparab
