#include "symparab/rational.hpp"

#include <cctype>
#include <functional>
#include <limits>

#include "symparab/errors.hpp"

namespace symparab {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}


bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(mag),
                            static_cast<std::uint64_t>(mag >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (neg) z = -z;
  return z;
}

bool mpz_fits64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DivisionByZero();
  assign_wide(num, den);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  assign_big(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty rational");
  std::string s(text);
  std::size_t slash = s.find('/');
  auto check_digits = [&](std::size_t from, std::size_t to) {
    std::size_t i = from;
    if (i < to && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == to) throw ParseError(from, "expected digits");
    for (; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError(i, "expected digit");
  };
  if (slash == std::string::npos) {
    check_digits(0, s.size());
    mpz_class z(s[0] == '+' ? s.substr(1) : s, 10);
    return Rational(mpq_class(z));
  }
  check_digits(0, slash);
  check_digits(slash + 1, s.size());
  mpz_class n(s[0] == '+' ? s.substr(1, slash - 1) : s.substr(0, slash), 10);
  mpz_class d(s.substr(slash + 1), 10);
  if (d == 0) throw DivisionByZero();
  return Rational(mpq_class(n, d));
}

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    big_.reset();
    num_ = 0;
    den_ = 1;
    return;
  }
  if (den != 1) {
    u128 g = gcd128(num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num), static_cast<u128>(den));
    if (g != 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (fits64(num) && fits64(den)) {
    big_.reset();
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  assign_big(std::move(q));
}

void Rational::assign_big(mpq_class&& q) {
  if (mpz_fits64(q.get_num()) && mpz_fits64(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  if (big_)
    *big_ = std::move(q);
  else
    big_ = std::make_unique<mpq_class>(std::move(q));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
  return q;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const noexcept {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const mpz_class& z) {
    std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
      h *= 0x100000001b3ULL;
    }
    h ^= static_cast<std::size_t>(sgn(z) + 7);
    h *= 0x100000001b3ULL;
  };
  mix(big_->get_num());
  mix(big_->get_den());
  return h;
}

Rational Rational::operator-() const {
  Rational r(*this);
  r.negate();
  return r;
}

void Rational::negate() {
  if (big_) {
    mpq_class q = -*big_;
    assign_big(std::move(q));
    return;
  }
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    assign_wide(-static_cast<i128>(num_), den_);
    return;
  }
  num_ = -num_;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t out;
      if (!__builtin_add_overflow(num_, rhs.num_, &out)) {
        num_ = out;
        return *this;
      }
      assign_wide(static_cast<i128>(num_) + rhs.num_, 1);
      return *this;
    }
    if (den_ == rhs.den_) {
      assign_wide(static_cast<i128>(num_) + rhs.num_, den_);
      return *this;
    }
    i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
    i128 d = static_cast<i128>(den_) * rhs.den_;
    assign_wide(n, d);
    return *this;
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!rhs.big_ && rhs.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational neg;
    neg.num_ = -rhs.num_;
    neg.den_ = rhs.den_;
    return *this += neg;
  }
  return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t out;
      if (!__builtin_mul_overflow(num_, rhs.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    assign_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  return *this *= rhs.inverse();
}

void Rational::add_mul(const Rational& a, const Rational& b) {
  if (!big_ && !a.big_ && !b.big_) {
    if (den_ == 1 && a.den_ == 1 && b.den_ == 1) {
      std::int64_t p, s;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_add_overflow(num_, p, &s)) {
        num_ = s;
        return;
      }
    }
    i128 pn = static_cast<i128>(a.num_) * b.num_;
    i128 pd = static_cast<i128>(a.den_) * b.den_;
    // pn/pd may not fit in 128 bits when combined; go through GMP if the
    // cross multiplication would overflow.
    constexpr i128 limit = static_cast<i128>(1) << 62;
    if (pd < limit && pn < limit && pn > -limit) {
      if (pd == den_) {
        assign_wide(static_cast<i128>(num_) + pn, pd);
      } else {
        assign_wide(static_cast<i128>(num_) * pd + pn * den_, static_cast<i128>(den_) * pd);
      }
      return;
    }
  }
  assign_big(to_mpq() + a.to_mpq() * b.to_mpq());
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (big_) {
    mpq_class q;
    mpq_inv(q.get_mpq_t(), big_->get_mpq_t());
    return Rational(q);
  }
  Rational r;
  r.assign_wide(den_, num_);
  return r;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false; // canonical: big never equals small
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

} // namespace symparab
