// Images of cyclotomic numbers in a prime field F_p with p = 1 (mod N), so
// that Q(zeta_N) maps into F_p by zeta_N -> omega.  Used to enumerate large
// orbits cheaply.  The map is a ring homomorphism but not injective, so
// anything deduced from it must be confirmed in exact arithmetic.
#ifndef SYMPARAB_MODULAR_HPP_
#define SYMPARAB_MODULAR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symparab/cyclotomic.hpp"
#include "symparab/linalg.hpp"

namespace symparab {

class ModularReduction {
public:
  // p is the first prime = 1 (mod n) below 2^61 (deterministic).
  explicit ModularReduction(std::int64_t n);

  std::uint64_t prime() const noexcept { return p_; }
  std::int64_t modulus_order() const noexcept { return n_; }

  // Throws InvalidArgument if the conductor does not divide n, or a
  // denominator vanishes mod p.
  std::uint64_t reduce(const Cyclotomic& c) const;
  std::uint64_t reduce(const Rational& q) const;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  std::uint64_t inverse(std::uint64_t a) const;

private:
  std::int64_t n_;
  std::uint64_t p_;
  std::vector<std::uint64_t> powers_; // omega^k, k < n
};

// Least common multiple of the conductors of all entries.
std::int64_t common_conductor(std::span<const ExactMatrix> mats, std::span<const ExactVector> vecs);

// Dense d x d matrix over F_p.
class ModularMatrix {
public:
  ModularMatrix(const ExactMatrix& m, const ModularReduction& red);
  void apply(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) const;

private:
  struct Entry {
    std::uint32_t col;
    std::uint64_t value;
  };
  std::uint64_t p_;
  std::vector<std::vector<Entry>> rows_;
};

} // namespace symparab

#endif // SYMPARAB_MODULAR_HPP_
