// Exact elements of cyclotomic fields Q(zeta_n).
//
// Every value is kept in canonical form: coefficients on the Zumbroich basis
// of Q(zeta_n) with n the minimal conductor (rationals have conductor 1).
// Values are hash-consed: each distinct canonical form exists exactly once in
// a process-wide table, so a Cyclotomic is a pointer-sized handle and
// equality is pointer comparison.  Interned nodes are immutable and never
// freed, which makes handles safe to copy and share across threads.
#ifndef SYMPARAB_CYCLOTOMIC_HPP_
#define SYMPARAB_CYCLOTOMIC_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symparab/rational.hpp"

namespace symparab {

struct CyclotomicTerm {
  int exponent;
  Rational coeff;
};

namespace detail {
struct CycNode;
}

class Cyclotomic;

// Named constants available to the literal parser (data files use this for
// things like `i` and `s5`).  Plain CLI input uses an empty table.
using SymbolTable = std::map<std::string, Cyclotomic, std::less<>>;

class Cyclotomic {
public:
  using Term = CyclotomicTerm;

  Cyclotomic() noexcept; // zero
  Cyclotomic(std::int64_t n); // NOLINT: integers embed implicitly
  Cyclotomic(int n) : Cyclotomic(static_cast<std::int64_t>(n)) {} // NOLINT
  Cyclotomic(const Rational& q); // NOLINT

  // zeta_n^k.  Throws InvalidArgument for n < 1.
  static Cyclotomic root_of_unity(std::int64_t n, std::int64_t k);

  // sum_k coeff_k * zeta_n^k for arbitrary (not necessarily basis) exponents.
  static Cyclotomic from_exponents(std::int64_t n,
                                   std::span<const std::pair<std::int64_t, Rational>> terms);

  // Literal grammar: rationals, E(n), integer powers "^", "*", "/", "+", "-",
  // parentheses, and identifiers resolved through `symbols`.
  static Cyclotomic parse(std::string_view text, const SymbolTable* symbols = nullptr);

  int conductor() const noexcept;
  std::span<const Term> terms() const noexcept;

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept { return conductor() == 1; }
  std::optional<Rational> as_rational() const;

  Cyclotomic conj() const;             // zeta -> zeta^-1
  Cyclotomic galois(std::int64_t k) const; // zeta_n -> zeta_n^k, gcd(k, n) = 1
  Cyclotomic inverse() const;          // throws DivisionByZero on zero

  std::complex<double> to_complex() const;
  std::string str() const;             // round-trips through parse()

  // Content hash of the canonical form; stable across runs.
  std::size_t hash() const noexcept;
  // Identity of the interned node; equal values share it.
  const void* id() const noexcept { return node_; }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  Cyclotomic& operator/=(const Cyclotomic& rhs);

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) noexcept {
    return a.node_ == b.node_;
  }

  // Total order on canonical forms (conductor, then terms).  Deterministic.
  friend int compare(const Cyclotomic& a, const Cyclotomic& b);

private:
  explicit Cyclotomic(const detail::CycNode* node) noexcept : node_(node) {}
  friend class CyclotomicAccumulator;

  const detail::CycNode* node_;
};

// Accumulates sums of products in one dense buffer and canonicalizes once.
// This is the kernel behind dot products and matrix multiplication.
class CyclotomicAccumulator {
public:
  CyclotomicAccumulator();

  void add(const Cyclotomic& a);
  void sub(const Cyclotomic& a);
  void add_product(const Cyclotomic& a, const Cyclotomic& b);
  void sub_product(const Cyclotomic& a, const Cyclotomic& b);

  // Canonical value of the sum; resets the accumulator to zero.
  Cyclotomic take();

private:
  void ensure(int n);
  void product(const Cyclotomic& a, const Cyclotomic& b, bool negate);

  int n_ = 1;
  std::vector<Rational> buf_;
};

// Numeric shadow for sanity checks only; never used in exact decisions.
inline std::complex<double> to_complex(const Cyclotomic& a) { return a.to_complex(); }

// Frequently used constants.
Cyclotomic imaginary_unit();
Cyclotomic sqrt5(); // 1 + 2 zeta_5 + 2 zeta_5^4

} // namespace symparab

template <>
struct std::hash<symparab::Cyclotomic> {
  std::size_t operator()(const symparab::Cyclotomic& a) const noexcept { return a.hash(); }
};

#endif // SYMPARAB_CYCLOTOMIC_HPP_
