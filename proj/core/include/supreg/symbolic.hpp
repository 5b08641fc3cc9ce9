#pragma once

// Exact multivariate polynomials in the indeterminates x_1, ..., x_gamma of
// the generic lower-triangular Toeplitz matrix X_gamma, and the census of
// minors that are linear in x_gamma.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "supreg/toeplitz.hpp"

namespace supreg {

/// Highest order the symbolic layer handles: exponents are packed four bits
/// per variable into one 64-bit word.
inline constexpr int kMaxSymbolicOrder = 15;

/// Signed integer that stays in int64 while it can and escalates to
/// arbitrary precision on overflow instead of wrapping.
class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  Integer(std::int64_t v = 0) : rep_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(const Big& v);

  bool is_zero() const;
  bool is_small() const noexcept { return std::holds_alternative<std::int64_t>(rep_); }
  int sign() const;
  Big to_big() const;

  /// Representative in [0, p).
  std::uint64_t mod(std::uint64_t p) const;

  std::string to_string() const;

  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a);
  friend Integer operator*(const Integer& a, const Integer& b);
  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

 private:
  std::variant<std::int64_t, Big> rep_;
};

/// Exponent vector (e_1, ..., e_15), x_1 in the most significant nibble so
/// that integer order is lexicographic order with x_1 > x_2 > ... .
class Monomial {
 public:
  constexpr Monomial() = default;
  static constexpr Monomial variable(int var) { return Monomial(std::uint64_t{1} << shift(var)); }

  int exponent(int var) const noexcept { return static_cast<int>((bits_ >> shift(var)) & 0xF); }
  int total_degree() const noexcept;
  std::uint64_t bits() const noexcept { return bits_; }

  Monomial with_exponent(int var, int e) const noexcept;

  friend constexpr Monomial operator*(Monomial a, Monomial b) { return Monomial(a.bits_ + b.bits_); }
  friend constexpr auto operator<=>(Monomial a, Monomial b) = default;

 private:
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  static constexpr int shift(int var) { return 4 * (16 - var); }
  std::uint64_t bits_ = 0;
};

class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Integer coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MultiPoly() = default;
  static MultiPoly constant(const Integer& c);
  static MultiPoly variable(int var);
  /// Sorts, merges like monomials and drops zero coefficients.
  static MultiPoly from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  int degree_in(int var) const noexcept;

  /// Polynomial with x_var set to 1.
  MultiPoly substitute_one(int var) const;
  MultiPoly times(Monomial m) const;

  std::uint64_t evaluate(std::span<const std::uint64_t> values, std::uint64_t p) const;

  /// Text form, e.g. `x3^2 - x2*x4`: total degree descending, ties in
  /// reverse-lexicographic order.
  std::string to_string() const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;
  friend bool operator<(const MultiPoly& a, const MultiPoly& b);

 private:
  std::vector<Term> terms_;  // ascending Monomial order, no zero coefficients
};

/// x_1 <- 1, x_2 <- 1 (the normalized matrix A(1, 1, a_3, ...)).
MultiPoly substitute_ones(const MultiPoly& p);

/// p = c * x_var + d with c, d free of x_var. DegreeTooHigh if deg > 1.
std::pair<MultiPoly, MultiPoly> linear_split(const MultiPoly& p, int var);

/// Memoized symbolic minors of X_gamma. Determinants are expanded along the
/// first column and cached under the translation-normalized index pair, so a
/// minor and its diagonal translates share one entry.
class SymbolicMinors {
 public:
  const MultiPoly& det(const MinorIndex& idx);
  std::size_t cache_size() const noexcept { return cache_.size(); }

 private:
  const MultiPoly& det_masks(std::uint32_t rows, std::uint32_t cols);
  std::unordered_map<std::uint64_t, MultiPoly> cache_;
};

/// Determinant polynomial of the selected submatrix of X_gamma.
MultiPoly sym_det(const MinorIndex& idx, int gamma);

/// i_l - j_m == i_{k+1-m} - j_{k+1-l} for all l, m.
bool is_antidiag_symmetric(const MinorIndex& idx, int gamma);

/// (1/gamma) C(2gamma-2, gamma-1) + C(gamma-1, floor((gamma-1)/2)), halved.
std::uint64_t n_gamma_closed_form(int gamma);
std::uint64_t catalan(int n);
std::uint64_t binomial(int n, int k);

struct CensusResult {
  int gamma = 0;
  std::uint64_t count_L = 0;
  std::uint64_t count_Lsym = 0;
  std::uint64_t n_gamma = 0;              // (count_L + count_Lsym) / 2
  std::uint64_t n_gamma_closed_form = 0;  // binomial formula
  std::uint64_t distinct = 0;             // after x_1 = x_2 = 1
  std::uint64_t distinct_raw = 0;         // as polynomials in x_1..x_gamma
};

CensusResult census(int gamma);

}  // namespace supreg
