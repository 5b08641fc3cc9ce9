#include "supreg/minor_engine.hpp"

#include <algorithm>
#include <bit>

#include "supreg/error.hpp"

namespace supreg {

namespace {

std::uint64_t mask_key(std::uint32_t rows, std::uint32_t cols) {
  return (std::uint64_t{rows} << 32) | cols;
}

}  // namespace

MinorPlan::MinorPlan(int max_order) : max_order_(max_order) {
  if (max_order < 1 || max_order > kMaxOrder) raise(ErrorCode::InvalidArgument, "order out of range");
  linear_.resize(max_order + 1);
  static_.resize(max_order + 1);

  for (int m = 1; m <= max_order; ++m) {
    const auto corners = corner_minors(m);
    // Ids for this row are assigned before any expansion so that ids within
    // a row are contiguous; children always live in earlier rows.
    std::vector<std::uint32_t> ids;
    ids.reserve(corners.size());
    for (const auto& idx : corners) {
      index_.push_back(idx);
      const auto id = static_cast<std::uint32_t>(index_.size());
      ids.push_back(id);
      lookup_.emplace_back(mask_key(idx.row_mask(), idx.col_mask()), id);
    }
    std::sort(lookup_.begin(), lookup_.end());

    for (std::size_t n = 0; n < corners.size(); ++n) {
      const auto& idx = corners[n];
      const int k = idx.size();
      const std::uint32_t rows = idx.row_mask() & ~(1u << (m - 1));
      const std::uint32_t cols = idx.col_mask();

      bool linear = false;
      std::uint32_t coeff_child = 0;
      bool coeff_negate = false;
      const auto begin = static_cast<std::uint32_t>(terms_.size());
      for (int l = 1; l <= k; ++l) {
        const int c = idx.cols()[l - 1];
        const std::uint32_t child_cols = cols & ~(1u << (c - 1));
        if (rows != 0 && !is_nontrivial_masks(rows, child_cols)) continue;
        const std::uint32_t child = rows == 0 ? 0 : lookup(rows, child_cols);
        const bool negate = ((k + l) % 2) != 0;
        if (c == 1) {
          linear = true;
          coeff_child = child;
          coeff_negate = negate;
        } else {
          terms_.push_back({child, static_cast<std::uint16_t>(m - c + 1), negate});
        }
      }
      const auto end = static_cast<std::uint32_t>(terms_.size());
      if (linear) {
        linear_[m].push_back({ids[n], coeff_child, coeff_negate, begin, end});
      } else {
        static_[m].push_back({ids[n], begin, end});
      }
    }
  }
}

std::uint32_t MinorPlan::lookup(std::uint32_t rows, std::uint32_t cols) const {
  const int shift = std::countr_zero(cols);
  const auto key = mask_key(rows >> shift, cols >> shift);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, std::uint32_t{0}));
  if (it == lookup_.end() || it->first != key) raise(ErrorCode::IndexOutOfRange, "minor outside the plan");
  return it->second;
}

std::uint32_t MinorPlan::id_of(const MinorIndex& idx) const {
  if (idx.max_index() > max_order_) raise(ErrorCode::IndexOutOfRange, "minor outside the plan");
  if (!is_nontrivial_masks(idx.row_mask(), idx.col_mask())) {
    raise(ErrorCode::InvalidArgument, "trivial minor " + idx.to_string());
  }
  return lookup(idx.row_mask(), idx.col_mask());
}

FastField::FastField(std::uint64_t p) : p_(p), lazy_(p < (std::uint64_t{1} << 26)) {
  if (p < 3 || p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    raise(ErrorCode::InvalidArgument, "search fields need an odd prime below 2^31");
  }
  if (p <= (std::uint64_t{1} << 20)) {
    inverse_.assign(p, 0);
    inverse_[1] = 1;
    // inv(i) = -(p / i) * inv(p mod i)
    for (std::uint64_t i = 2; i < p; ++i) {
      inverse_[i] = static_cast<std::uint32_t>((p - (p / i) * inverse_[p % i] % p) % p);
    }
  }
}

MinorEvaluator::MinorEvaluator(const MinorPlan& plan, const FastField& field)
    : plan_(&plan), field_(&field), a_(plan.max_order() + 1, 0), values_(plan.minor_count(), 0) {
  values_[0] = 1;
}

std::uint64_t MinorEvaluator::expand(std::uint32_t begin, std::uint32_t end) const noexcept {
  const std::uint64_t p = field_->p();
  const auto* t = plan_->terms().data();
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  if (field_->lazy_sums()) {
    for (std::uint32_t i = begin; i < end; ++i) {
      const std::uint64_t v = a_[t[i].entry] * values_[t[i].child];
      (t[i].negate ? neg : pos) += v;
    }
    pos %= p;
    neg %= p;
  } else {
    for (std::uint32_t i = begin; i < end; ++i) {
      const std::uint64_t v = a_[t[i].entry] * values_[t[i].child] % p;
      auto& acc = t[i].negate ? neg : pos;
      acc += v;
      if (acc >= p) acc -= p;
    }
  }
  return pos >= neg ? pos - neg : pos + p - neg;
}

bool MinorEvaluator::eval_static(int row) noexcept {
  bool ok = true;
  for (const auto& s : plan_->statics(row)) {
    const std::uint64_t v = expand(s.term_begin, s.term_end);
    values_[s.id] = v;
    ok = ok && v != 0;
  }
  return ok;
}

void MinorEvaluator::eval_linear(int row, std::span<std::uint64_t> c, std::span<std::uint64_t> d) noexcept {
  const std::uint64_t p = field_->p();
  std::size_t n = 0;
  for (const auto& l : plan_->linear(row)) {
    const std::uint64_t cv = values_[l.coeff_child];
    c[n] = (l.coeff_negate && cv != 0) ? p - cv : cv;
    d[n] = expand(l.term_begin, l.term_end);
    ++n;
  }
}

void MinorEvaluator::commit_linear(int row, std::span<const std::uint64_t> c,
                                   std::span<const std::uint64_t> d) noexcept {
  const std::uint64_t p = field_->p();
  const std::uint64_t x = a_[row];
  std::size_t n = 0;
  for (const auto& l : plan_->linear(row)) {
    values_[l.id] = (c[n] * x + d[n]) % p;
    ++n;
  }
}

bool MinorEvaluator::load_prefix(std::span<const std::uint64_t> column) {
  if (static_cast<int>(column.size()) > plan_->max_order()) raise(ErrorCode::InvalidArgument, "prefix too long");
  std::vector<std::uint64_t> c;
  std::vector<std::uint64_t> d;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const int row = static_cast<int>(i) + 1;
    a_[row] = column[i] % field_->p();
    const auto lin = plan_->linear(row);
    c.resize(lin.size());
    d.resize(lin.size());
    eval_linear(row, c, d);
    commit_linear(row, c, d);
    for (const auto& l : lin) {
      if (values_[l.id] == 0) return false;
    }
    if (!eval_static(row)) return false;
  }
  return true;
}

}  // namespace supreg
