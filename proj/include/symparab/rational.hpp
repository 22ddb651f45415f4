// Arbitrary-precision rationals with an inline 64-bit fast path.
//
// Values that fit in (int64 numerator, int64 denominator) are kept inline;
// anything larger is promoted to a GMP rational and demoted again as soon as
// it fits.  The representation is therefore canonical: equal values always
// compare and hash identically.
#ifndef SYMPARAB_RATIONAL_HPP_
#define SYMPARAB_RATIONAL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace symparab {

class Rational {
public:
  Rational() noexcept = default;
  Rational(std::int64_t n) noexcept : num_(n) {} // NOLINT: implicit by design of the scalar tower
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const noexcept;
  bool is_small() const noexcept { return !big_; }

  // Only meaningful when is_small().
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

  mpq_class to_mpq() const;
  double to_double() const;
  std::string str() const;
  std::size_t hash() const noexcept;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  // *this += a * b without materializing the product when everything is small.
  void add_mul(const Rational& a, const Rational& b);
  void negate();

  Rational inverse() const;

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  void assign_wide(__int128 num, __int128 den);
  void assign_big(mpq_class&& q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

} // namespace symparab

#endif // SYMPARAB_RATIONAL_HPP_
