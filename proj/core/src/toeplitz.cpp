#include "supreg/toeplitz.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

namespace supreg {

namespace {

void require_increasing(const std::vector<int>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1 || v[i] > kMaxOrder) {
      raise(ErrorCode::IndexOutOfRange, std::string(what) + " index " + std::to_string(v[i]));
    }
    if (i > 0 && v[i] <= v[i - 1]) {
      raise(ErrorCode::InvalidArgument, std::string(what) + " must be strictly increasing");
    }
  }
}

std::vector<int> mask_to_list(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

// All k-subsets of {lo, ..., hi} in lexicographic order.
std::vector<std::vector<int>> combinations(int lo, int hi, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > hi - lo + 1) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = lo + i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == hi - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

bool dominated(const std::vector<int>& rows, const std::vector<int>& cols) {
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (cols[l] > rows[l]) return false;
  }
  return true;
}

// Determinant of the k x k submatrix of the Toeplitz matrix with first column
// `a` (a[0] = a_1), by elimination with first-nonzero pivoting.
u64 det_raw(std::span<const u64> a, u64 p, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  std::array<u64, kMaxOrder * kMaxOrder> buf{};
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      int d = rows[r] - cols[c];
      buf[r * k + c] = d >= 0 ? a[d] : 0;
    }
  }
  u64 result = 1;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r) {
      if (buf[r * k + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = col; c < k; ++c) std::swap(buf[pivot * k + c], buf[col * k + c]);
      result = result == 0 ? 0 : p - result;
    }
    const u64 pv = buf[col * k + col];
    result = detail::mul_mod(result, pv, p);
    const u64 pinv = detail::inv_mod(pv, p);
    for (int r = col + 1; r < k; ++r) {
      u64 f = buf[r * k + col];
      if (f == 0) continue;
      f = detail::mul_mod(f, pinv, p);
      for (int c = col + 1; c < k; ++c) {
        buf[r * k + c] = detail::sub_mod(buf[r * k + c], detail::mul_mod(f, buf[col * k + c], p), p);
      }
    }
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------- MinorIndex

MinorIndex::MinorIndex(std::vector<int> rows, std::vector<int> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)) {
  if (rows_.empty() || rows_.size() != cols_.size()) {
    raise(ErrorCode::InvalidArgument, "minor needs equal, nonzero numbers of rows and columns");
  }
  require_increasing(rows_, "row");
  require_increasing(cols_, "column");
}

MinorIndex MinorIndex::from_masks(std::uint32_t row_mask, std::uint32_t col_mask) {
  return MinorIndex(mask_to_list(row_mask), mask_to_list(col_mask));
}

std::uint32_t MinorIndex::row_mask() const noexcept {
  std::uint32_t m = 0;
  for (int r : rows_) m |= 1u << (r - 1);
  return m;
}

std::uint32_t MinorIndex::col_mask() const noexcept {
  std::uint32_t m = 0;
  for (int c : cols_) m |= 1u << (c - 1);
  return m;
}

int MinorIndex::max_index() const noexcept { return std::max(rows_.back(), cols_.back()); }

std::strong_ordering operator<=>(const MinorIndex& a, const MinorIndex& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  return a.cols_ <=> b.cols_;
}

std::string MinorIndex::to_string() const {
  std::ostringstream os;
  auto list = [&os](const std::vector<int>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << "rows ";
  list(rows_);
  os << " cols ";
  list(cols_);
  return os.str();
}

// --------------------------------------------------------------- enumeration

bool is_nontrivial(const MinorIndex& idx, int gamma) {
  if (idx.max_index() > gamma) {
    raise(ErrorCode::IndexOutOfRange, idx.to_string() + " exceeds order " + std::to_string(gamma));
  }
  return dominated(idx.rows(), idx.cols());
}

bool is_nontrivial_masks(std::uint32_t row_mask, std::uint32_t col_mask) noexcept {
  if (std::popcount(row_mask) != std::popcount(col_mask)) return false;
  while (row_mask) {
    int r = std::countr_zero(row_mask);
    int c = std::countr_zero(col_mask);
    if (c > r) return false;
    row_mask &= row_mask - 1;
    col_mask &= col_mask - 1;
  }
  return true;
}

std::vector<MinorIndex> nontrivial_minors(int gamma) {
  if (gamma < 1 || gamma > kMaxOrder) raise(ErrorCode::InvalidArgument, "order out of range");
  std::vector<MinorIndex> out;
  for (int k = 1; k <= gamma; ++k) {
    const auto subsets = combinations(1, gamma, k);
    for (const auto& rows : subsets) {
      for (const auto& cols : subsets) {
        if (dominated(rows, cols)) out.emplace_back(rows, cols);
      }
    }
  }
  return out;
}

std::vector<MinorIndex> corner_minors(int k) {
  if (k < 1 || k > kMaxOrder) raise(ErrorCode::InvalidArgument, "order out of range");
  std::vector<MinorIndex> out;
  for (int size = 1; size <= k; ++size) {
    const auto row_heads = combinations(1, k - 1, size - 1);
    const auto col_tails = combinations(2, k, size - 1);
    for (const auto& head : row_heads) {
      std::vector<int> rows = head;
      rows.push_back(k);
      for (const auto& tail : col_tails) {
        std::vector<int> cols{1};
        cols.insert(cols.end(), tail.begin(), tail.end());
        if (dominated(rows, cols)) out.emplace_back(rows, cols);
      }
    }
  }
  return out;
}

std::optional<MinorIndex> corner_complement(const MinorIndex& idx) {
  if (idx.size() == 1) return std::nullopt;
  std::vector<int> rows(idx.rows().begin(), idx.rows().end() - 1);
  std::vector<int> cols(idx.cols().begin() + 1, idx.cols().end());
  return MinorIndex(std::move(rows), std::move(cols));
}

std::vector<MinorIndex> minors_involving_last(int gamma) {
  std::vector<MinorIndex> out;
  for (auto& idx : corner_minors(gamma)) {
    auto comp = corner_complement(idx);
    if (!comp || dominated(comp->rows(), comp->cols())) out.push_back(std::move(idx));
  }
  return out;
}

// ---------------------------------------------------------------- ToeplitzLT

ToeplitzLT::ToeplitzLT(PrimeField field, std::vector<FieldElement> entries)
    : field_(field), entries_(std::move(entries)) {
  if (entries_.empty() || static_cast<int>(entries_.size()) > kMaxOrder) {
    raise(ErrorCode::InvalidArgument, "order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  for (const auto& e : entries_) field_.require_member(e);
}

ToeplitzLT ToeplitzLT::from_integers(const PrimeField& field, std::span<const std::int64_t> values) {
  std::vector<FieldElement> entries;
  entries.reserve(values.size());
  for (auto v : values) entries.push_back(field.element(v));
  return ToeplitzLT(field, std::move(entries));
}

const FieldElement& ToeplitzLT::a(int k) const {
  if (k < 1 || k > gamma()) raise(ErrorCode::IndexOutOfRange, "a_" + std::to_string(k));
  return entries_[k - 1];
}

FieldElement ToeplitzLT::entry(int i, int j) const {
  if (i < 1 || j < 1 || i > gamma() || j > gamma()) {
    raise(ErrorCode::IndexOutOfRange,
          "(" + std::to_string(i) + "," + std::to_string(j) + ") outside order " + std::to_string(gamma()));
  }
  return i >= j ? entries_[i - j] : field_.zero();
}

std::vector<std::uint64_t> ToeplitzLT::values() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.value());
  return out;
}

FieldElement det(const ToeplitzLT& m, const MinorIndex& idx) {
  if (idx.max_index() > m.gamma()) {
    raise(ErrorCode::IndexOutOfRange, idx.to_string() + " exceeds order " + std::to_string(m.gamma()));
  }
  const auto a = m.values();
  return FieldElement::unchecked(det_raw(a, m.field().modulus(), idx.rows(), idx.cols()),
                                 m.field().modulus());
}

// ---------------------------------------------------------- superregularity

namespace {

SuperregularityReport check_all(const ToeplitzLT& m, const std::vector<MinorIndex>& minors,
                                SuperregularityReport report) {
  const auto a = m.values();
  const u64 p = m.field().modulus();
  for (const auto& idx : minors) {
    ++report.checked_minors;
    if (det_raw(a, p, idx.rows(), idx.cols()) == 0) {
      report.verdict = false;
      report.first_failure = idx;
      report.failure_det = m.field().zero();
      break;
    }
  }
  return report;
}

}  // namespace

SuperregularityReport is_superregular(const ToeplitzLT& m) {
  return check_all(m, nontrivial_minors(m.gamma()), {});
}

SuperregularityReport is_superregular_incremental(const ToeplitzLT& m) {
  SuperregularityReport report;
  for (int k = 1; k <= m.gamma() && report.verdict; ++k) {
    report = check_all(m, corner_minors(k), report);
  }
  return report;
}

ToeplitzLT scale(const ToeplitzLT& m, const FieldElement& alpha) {
  m.field().require_member(alpha);
  if (alpha.is_zero()) raise(ErrorCode::ZeroScalar, "scaling by 0");
  std::vector<FieldElement> entries;
  entries.reserve(m.gamma());
  FieldElement power = m.field().one();
  for (const auto& e : m.entries()) {
    entries.push_back(power * e);
    power *= alpha;
  }
  return ToeplitzLT(m.field(), std::move(entries));
}

bool column_weight_check(const ToeplitzLT& m, std::span<const ColumnCoefficient> coeffs) {
  const int n = m.gamma();
  if (coeffs.empty()) raise(ErrorCode::InvalidArgument, "no columns selected");
  std::vector<int> columns;
  for (const auto& cc : coeffs) {
    if (cc.column < 0 || cc.column >= n) {
      raise(ErrorCode::IndexOutOfRange, "column " + std::to_string(cc.column));
    }
    m.field().require_member(cc.coeff);
    if (cc.coeff.is_zero()) raise(ErrorCode::InvalidArgument, "zero coefficient");
    columns.push_back(cc.column);
  }
  std::sort(columns.begin(), columns.end());
  if (std::adjacent_find(columns.begin(), columns.end()) != columns.end()) {
    raise(ErrorCode::InvalidArgument, "repeated column");
  }
  std::vector<FieldElement> combo(n, m.field().zero());
  for (const auto& cc : coeffs) {
    for (int i = cc.column; i < n; ++i) combo[i] += cc.coeff * m.entries()[i - cc.column];
  }
  const auto weight = std::count_if(combo.begin(), combo.end(), [](const FieldElement& x) { return !x.is_zero(); });
  const int count = static_cast<int>(coeffs.size());
  return weight >= (n - columns.front()) - count + 1;
}

}  // namespace supreg
