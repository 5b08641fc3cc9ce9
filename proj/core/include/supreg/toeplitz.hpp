#pragma once

// Lower-triangular Toeplitz matrices over F_p and their minors.
//
// All row/column indices are 1-based, matching the usual A(i, j) notation:
// entry(i, j) = a_{i-j+1} for i >= j and 0 above the diagonal.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supreg/prime_field.hpp"

namespace supreg {

/// Largest order accepted by the index machinery (row/column sets are
/// carried as 32-bit masks).
inline constexpr int kMaxOrder = 30;

/// Strictly increasing, equal-length row and column index lists.
class MinorIndex {
 public:
  MinorIndex(std::vector<int> rows, std::vector<int> cols);

  /// From bit masks, bit (i-1) standing for index i.
  static MinorIndex from_masks(std::uint32_t row_mask, std::uint32_t col_mask);

  int size() const noexcept { return static_cast<int>(rows_.size()); }
  const std::vector<int>& rows() const noexcept { return rows_; }
  const std::vector<int>& cols() const noexcept { return cols_; }
  std::uint32_t row_mask() const noexcept;
  std::uint32_t col_mask() const noexcept;
  int max_index() const noexcept;

  /// Size first, then rows lexicographically, then columns.
  friend std::strong_ordering operator<=>(const MinorIndex& a, const MinorIndex& b);
  friend bool operator==(const MinorIndex& a, const MinorIndex& b) = default;

  std::string to_string() const;

 private:
  std::vector<int> rows_;
  std::vector<int> cols_;
};

/// True iff the minor can be nonzero in a lower-triangular matrix, i.e. some
/// Leibniz term uses only on-or-below-diagonal positions. For sorted index
/// lists this is exactly cols[l] <= rows[l] for every l.
bool is_nontrivial(const MinorIndex& idx, int gamma);
bool is_nontrivial_masks(std::uint32_t row_mask, std::uint32_t col_mask) noexcept;

/// Every non-trivial minor of a gamma x gamma lower-triangular matrix,
/// ordered by size, then rows, then columns.
std::vector<MinorIndex> nontrivial_minors(int gamma);

/// Non-trivial minors that contain row k and column 1 (the position of a_k in
/// A_k), in size-then-lex order.
std::vector<MinorIndex> corner_minors(int k);

/// The set L_gamma: minors whose determinant is linear (degree exactly one)
/// in a_gamma. These are the corner minors whose complement
/// (rows minus gamma, cols minus 1) is itself non-trivial.
std::vector<MinorIndex> minors_involving_last(int gamma);

/// The complement of a corner minor: row gamma and column 1 removed.
/// Returns nullopt for 1x1 minors (empty complement).
std::optional<MinorIndex> corner_complement(const MinorIndex& idx);

class ToeplitzLT {
 public:
  /// entries = first column (a_1, ..., a_gamma), all in `field`.
  ToeplitzLT(PrimeField field, std::vector<FieldElement> entries);

  /// Convenience constructor from integers (reduced mod p).
  static ToeplitzLT from_integers(const PrimeField& field, std::span<const std::int64_t> values);

  const PrimeField& field() const noexcept { return field_; }
  int gamma() const noexcept { return static_cast<int>(entries_.size()); }
  const std::vector<FieldElement>& entries() const noexcept { return entries_; }

  /// a_k, 1-based.
  const FieldElement& a(int k) const;

  /// Matrix entry (i, j), 1-based; IndexOutOfRange outside [1, gamma].
  FieldElement entry(int i, int j) const;

  std::vector<std::uint64_t> values() const;

  friend bool operator==(const ToeplitzLT& x, const ToeplitzLT& y) noexcept {
    return x.field_ == y.field_ && x.entries_ == y.entries_;
  }

 private:
  PrimeField field_;
  std::vector<FieldElement> entries_;
};

/// Determinant of the selected submatrix by Gaussian elimination over F_p.
FieldElement det(const ToeplitzLT& m, const MinorIndex& idx);

struct SuperregularityReport {
  bool verdict = true;
  std::uint64_t checked_minors = 0;
  std::optional<MinorIndex> first_failure;
  std::optional<FieldElement> failure_det;
};

/// Checks every non-trivial minor, including the full determinant.
SuperregularityReport is_superregular(const ToeplitzLT& m);

/// Same verdict as is_superregular, checking for k = 1..gamma only the corner
/// minors of A_k. Every other non-trivial minor of A_k is a minor of A_{k-1}
/// or a translate of one (shift rows and columns by one).
SuperregularityReport is_superregular_incremental(const ToeplitzLT& m);

/// alpha (x) A: first column (a_1, alpha a_2, ..., alpha^{gamma-1} a_gamma).
ToeplitzLT scale(const ToeplitzLT& m, const FieldElement& alpha);

struct ColumnCoefficient {
  int column;  // 0-based, b_0 ... b_{n-1}
  FieldElement coeff;
};

/// Weight bound for a combination of columns b_{i_1}, ..., b_{i_N}
/// (i_1 < ... < i_N, all coefficients nonzero):
///   wt(sum) >= (n - i_1) - N + 1.
bool column_weight_check(const ToeplitzLT& m, std::span<const ColumnCoefficient> coeffs);

}  // namespace supreg
