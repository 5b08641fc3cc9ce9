#pragma once

// Arithmetic in the prime field F_p for odd primes p.
//
// A PrimeField validates its modulus once; FieldElements are plain values
// (canonical representative plus the modulus they belong to) and mixing
// elements of different fields is rejected at run time.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supreg/error.hpp"

namespace supreg {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n) noexcept;

/// Smallest prime strictly greater than n (n < 2^63).
u64 next_prime(u64 n) noexcept;

namespace detail {

inline u64 mul_mod(u64 a, u64 b, u64 p) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 add_mod(u64 a, u64 b, u64 p) noexcept {
  u64 s = a + b;  // p < 2^63, so no wrap
  return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) noexcept {
  return a >= b ? a - b : a + p - b;
}

u64 pow_mod(u64 base, u64 exp, u64 p) noexcept;

/// Inverse by the extended Euclidean algorithm; a must be nonzero mod p.
u64 inv_mod(u64 a, u64 p) noexcept;

}  // namespace detail

class PrimeField;

class FieldElement {
 public:
  u64 value() const noexcept { return value_; }
  u64 modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  /// For code that already holds a reduced value and a validated modulus.
  static FieldElement unchecked(u64 value, u64 modulus) noexcept {
    return {value, modulus};
  }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement& a, const FieldElement& b) {
    return std::pair(a.modulus_, a.value_) <=> std::pair(b.modulus_, b.value_);
  }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x);

  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }

 private:
  friend class PrimeField;
  FieldElement(u64 value, u64 modulus) : value_(value), modulus_(modulus) {}

  u64 value_;
  u64 modulus_;
};

class PrimeField {
 public:
  /// Throws NotPrime for composite p, InvalidArgument for p = 2 or p >= 2^63.
  explicit PrimeField(u64 p);

  u64 modulus() const noexcept { return p_; }
  u64 size() const noexcept { return p_; }

  FieldElement element(std::int64_t v) const noexcept;
  FieldElement from_u64(u64 v) const noexcept { return {v % p_, p_}; }
  FieldElement zero() const noexcept { return {0, p_}; }
  FieldElement one() const noexcept { return {1, p_}; }

  /// Elements 0, 1, ..., p-1 in ascending order.
  std::vector<FieldElement> elements() const;

  /// Checks that x lives in this field.
  void require_member(const FieldElement& x) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
    return a.p_ == b.p_;
  }

 private:
  u64 p_;
};

void require_same_field(const FieldElement& x, const FieldElement& y);

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement sub(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement neg(const FieldElement& x);
FieldElement pow(const FieldElement& x, u64 exponent);

/// Multiplicative inverse; ZeroInverse when x = 0.
FieldElement inv(const FieldElement& x);

/// Parses `[-]digits[/digits]` (ASCII, no whitespace) into F_p.
FieldElement parse_rational(std::string_view text, const PrimeField& field);

/// Legendre symbol (u/p) in {-1, 0, +1}, computed by quadratic reciprocity.
int legendre(const FieldElement& u);

/// Both square roots of u, smaller representative first.
/// NonResidue when u is not a square; u = 0 yields (0, 0).
std::pair<FieldElement, FieldElement> sqrt_mod(const FieldElement& u);

/// Root of c*x + d = 0. DegenerateLinear when c = 0.
FieldElement solve_linear(const FieldElement& c, const FieldElement& d);

}  // namespace supreg
