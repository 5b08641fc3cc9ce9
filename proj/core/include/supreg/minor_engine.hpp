#pragma once

// Incremental evaluation of Toeplitz minors for depth-first search.
//
// Every non-trivial minor of A_k is a diagonal translate of a "corner" minor,
// one whose column set contains column 1. A corner minor whose last row is m
// involves only a_1..a_m, so when a search fixes entries left to right the
// corner minors of row m can be computed as soon as a_m is known. Expanding
// along the last row writes each of them as a signed sum of a_e times corner
// minors of earlier rows; MinorPlan compiles those expansions once per order
// and the search replays them.
//
// The corner minors of row m split into
//   * linear ones (the set L_m): value = c * a_m + d, c = +/- a minor of the
//     prefix. Each forbids a_m = -d/c.
//   * static ones: their (m, 1) cofactor is a trivial minor, so they do not
//     involve a_m at all. Such a minor is block lower triangular and factors
//     into two smaller non-trivial minors of the prefix, hence is nonzero
//     whenever the prefix is superregular.

#include <cstdint>
#include <span>
#include <vector>

#include "supreg/prime_field.hpp"
#include "supreg/toeplitz.hpp"

namespace supreg {

class MinorPlan {
 public:
  struct Term {
    std::uint32_t child;  // id of the cofactor minor (0 = empty minor, value 1)
    std::uint16_t entry;  // k in a_k
    bool negate;
  };
  struct LinearMinor {
    std::uint32_t id;
    std::uint32_t coeff_child;  // complement minor: coefficient of a_m up to sign
    bool coeff_negate;
    std::uint32_t term_begin, term_end;  // the a_m-free part of the expansion
  };
  struct StaticMinor {
    std::uint32_t id;
    std::uint32_t term_begin, term_end;
  };

  explicit MinorPlan(int max_order);

  int max_order() const noexcept { return max_order_; }
  std::size_t minor_count() const noexcept { return index_.size() + 1; }

  std::span<const LinearMinor> linear(int row) const { return linear_[row]; }
  std::span<const StaticMinor> statics(int row) const { return static_[row]; }
  std::span<const Term> terms() const noexcept { return terms_; }

  /// Id of the corner minor obtained by translating `idx` (0 if trivial is
  /// not allowed: callers pass non-trivial minors only).
  std::uint32_t id_of(const MinorIndex& idx) const;
  const MinorIndex& index_of(std::uint32_t id) const { return index_[id - 1]; }

 private:
  int max_order_;
  std::vector<MinorIndex> index_;  // id - 1 -> corner minor
  std::vector<std::vector<LinearMinor>> linear_;
  std::vector<std::vector<StaticMinor>> static_;
  std::vector<Term> terms_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> lookup_;  // sorted mask key -> id

  std::uint32_t lookup(std::uint32_t rows, std::uint32_t cols) const;
};

/// Modular helpers tuned for moduli below 2^31, with an inverse table for
/// small fields.
class FastField {
 public:
  explicit FastField(std::uint64_t p);

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t inv(std::uint64_t x) const noexcept {
    return inverse_.empty() ? detail::inv_mod(x, p_) : inverse_[x];
  }
  /// Products of two reduced values can be summed this many times without
  /// overflowing 64 bits before a reduction is needed.
  bool lazy_sums() const noexcept { return lazy_; }

 private:
  std::uint64_t p_;
  bool lazy_;
  std::vector<std::uint32_t> inverse_;
};

/// Per-thread evaluation state over a MinorPlan: entry values a_1..a_n and the
/// value of every corner minor of the rows fixed so far.
class MinorEvaluator {
 public:
  MinorEvaluator(const MinorPlan& plan, const FastField& field);

  void set_entry(int k, std::uint64_t value) noexcept { a_[k] = value; }
  std::uint64_t entry(int k) const noexcept { return a_[k]; }

  /// Computes the static corner minors of `row`; returns false if one is 0.
  bool eval_static(int row) noexcept;

  /// Coefficients (c, d) of every linear corner minor of `row`.
  void eval_linear(int row, std::span<std::uint64_t> c, std::span<std::uint64_t> d) noexcept;

  /// Stores c * a_row + d for the linear minors after a_row is set.
  void commit_linear(int row, std::span<const std::uint64_t> c, std::span<const std::uint64_t> d) noexcept;

  /// Evaluates rows 1..n of the given first column from scratch.
  /// Returns false as soon as some corner minor of those rows is zero.
  bool load_prefix(std::span<const std::uint64_t> column);

  std::uint64_t value(std::uint32_t id) const noexcept { return values_[id]; }

 private:
  std::uint64_t expand(std::uint32_t begin, std::uint32_t end) const noexcept;

  const MinorPlan* plan_;
  const FastField* field_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> values_;
};

}  // namespace supreg
