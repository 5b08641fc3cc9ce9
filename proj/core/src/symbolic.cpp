#include "supreg/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace supreg {

// ------------------------------------------------------------------ Integer

Integer::Integer(const Big& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    rep_ = static_cast<std::int64_t>(v);
  } else {
    rep_ = v;
  }
}

bool Integer::is_zero() const {
  // Big values are normalized to small whenever they fit, so a big zero never exists.
  return is_small() && std::get<std::int64_t>(rep_) == 0;
}

int Integer::sign() const {
  if (is_small()) {
    auto v = std::get<std::int64_t>(rep_);
    return (v > 0) - (v < 0);
  }
  return std::get<Big>(rep_).sign();
}

Integer::Big Integer::to_big() const {
  return is_small() ? Big(std::get<std::int64_t>(rep_)) : std::get<Big>(rep_);
}

std::uint64_t Integer::mod(std::uint64_t p) const {
  if (is_small()) {
    auto v = std::get<std::int64_t>(rep_);
    auto r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  Big r = std::get<Big>(rep_) % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::string Integer::to_string() const {
  return is_small() ? std::to_string(std::get<std::int64_t>(rep_)) : std::get<Big>(rep_).str();
}

Integer operator+(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t r;
    if (!__builtin_add_overflow(std::get<std::int64_t>(a.rep_), std::get<std::int64_t>(b.rep_), &r)) return r;
  }
  return Integer(a.to_big() + b.to_big());
}

Integer operator-(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t r;
    if (!__builtin_sub_overflow(std::get<std::int64_t>(a.rep_), std::get<std::int64_t>(b.rep_), &r)) return r;
  }
  return Integer(a.to_big() - b.to_big());
}

Integer operator-(const Integer& a) { return Integer(0) - a; }

Integer operator*(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t r;
    if (!__builtin_mul_overflow(std::get<std::int64_t>(a.rep_), std::get<std::int64_t>(b.rep_), &r)) return r;
  }
  return Integer(a.to_big() * b.to_big());
}

bool operator==(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return std::get<std::int64_t>(a.rep_) == std::get<std::int64_t>(b.rep_);
  return a.to_big() == b.to_big();
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return std::get<std::int64_t>(a.rep_) <=> std::get<std::int64_t>(b.rep_);
  auto c = a.to_big().compare(b.to_big());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// ----------------------------------------------------------------- Monomial

int Monomial::total_degree() const noexcept {
  int d = 0;
  for (int v = 1; v <= 16; ++v) d += exponent(v);
  return d;
}

Monomial Monomial::with_exponent(int var, int e) const noexcept {
  const std::uint64_t mask = std::uint64_t{0xF} << shift(var);
  return Monomial((bits_ & ~mask) | (static_cast<std::uint64_t>(e) << shift(var)));
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(const Integer& c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
  return p;
}

MultiPoly MultiPoly::variable(int var) {
  if (var < 1 || var > kMaxSymbolicOrder) raise(ErrorCode::IndexOutOfRange, "x_" + std::to_string(var));
  MultiPoly p;
  p.terms_.push_back({Monomial::variable(var), Integer(1)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
  MultiPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = p.terms_.back().coeff + t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

int MultiPoly::degree_in(int var) const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
  return d;
}

MultiPoly MultiPoly::substitute_one(int var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.mono.with_exponent(var, 0), t.coeff});
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::times(Monomial m) const {
  // Adding a fixed exponent vector preserves the packed order (no nibble carries).
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;
}

std::uint64_t MultiPoly::evaluate(std::span<const std::uint64_t> values, std::uint64_t p) const {
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    std::uint64_t term = t.coeff.mod(p);
    for (int v = 1; v <= kMaxSymbolicOrder && term != 0; ++v) {
      int e = t.mono.exponent(v);
      if (e == 0) continue;
      if (v > static_cast<int>(values.size())) {
        raise(ErrorCode::IndexOutOfRange, "no value for x_" + std::to_string(v));
      }
      term = detail::mul_mod(term, detail::pow_mod(values[v - 1], e, p), p);
    }
    acc = detail::add_mod(acc, term, p);
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* x, const Term* y) {
    int dx = x->mono.total_degree(), dy = y->mono.total_degree();
    if (dx != dy) return dx > dy;
    for (int v = kMaxSymbolicOrder; v >= 1; --v) {
      int ex = x->mono.exponent(v), ey = y->mono.exponent(v);
      if (ex != ey) return ex < ey;
    }
    return false;
  });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : order) {
    const bool negative = t->coeff.sign() < 0;
    const Integer magnitude = negative ? -t->coeff : t->coeff;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string vars;
    for (int v = 1; v <= kMaxSymbolicOrder; ++v) {
      int e = t->mono.exponent(v);
      if (e == 0) continue;
      if (!vars.empty()) vars += '*';
      vars += "x" + std::to_string(v);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      os << magnitude.to_string();
    } else if (magnitude == Integer(1)) {
      os << vars;
    } else {
      os << magnitude.to_string() << '*' << vars;
    }
  }
  return os.str();
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  std::vector<MultiPoly::Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return MultiPoly::from_terms(std::move(terms));
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly p = a;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

bool operator<(const MultiPoly& a, const MultiPoly& b) {
  return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                      [](const MultiPoly::Term& x, const MultiPoly::Term& y) {
                                        if (x.mono != y.mono) return x.mono < y.mono;
                                        return x.coeff < y.coeff;
                                      });
}

MultiPoly substitute_ones(const MultiPoly& p) { return p.substitute_one(1).substitute_one(2); }

std::pair<MultiPoly, MultiPoly> linear_split(const MultiPoly& p, int var) {
  if (p.degree_in(var) > 1) {
    raise(ErrorCode::DegreeTooHigh, "degree " + std::to_string(p.degree_in(var)) + " in x_" + std::to_string(var));
  }
  std::vector<MultiPoly::Term> c, d;
  for (const auto& t : p.terms()) {
    if (t.mono.exponent(var) == 1) {
      c.push_back({t.mono.with_exponent(var, 0), t.coeff});
    } else {
      d.push_back(t);
    }
  }
  return {MultiPoly::from_terms(std::move(c)), MultiPoly::from_terms(std::move(d))};
}

// ----------------------------------------------------------- symbolic minors

const MultiPoly& SymbolicMinors::det(const MinorIndex& idx) {
  if (idx.max_index() > kMaxSymbolicOrder) {
    raise(ErrorCode::IndexOutOfRange, "symbolic minors support order <= " + std::to_string(kMaxSymbolicOrder));
  }
  return det_masks(idx.row_mask(), idx.col_mask());
}

const MultiPoly& SymbolicMinors::det_masks(std::uint32_t rows, std::uint32_t cols) {
  static const MultiPoly kZero;
  static const MultiPoly kOne = MultiPoly::constant(1);
  if (rows == 0) return kOne;
  if (!is_nontrivial_masks(rows, cols)) return kZero;

  // Translate so the first selected column is column 1; a Toeplitz minor is
  // unchanged by shifting rows and columns together.
  const int shift = std::countr_zero(cols);
  rows >>= shift;
  cols >>= shift;
  const std::uint64_t key = (static_cast<std::uint64_t>(rows) << 32) | cols;
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  // Expansion along column 1: sum over selected rows r (position l) of
  // (-1)^(l+1) x_r * det(rows \ r, cols \ 1).
  const std::uint32_t rest_cols = cols & (cols - 1);
  std::vector<MultiPoly::Term> terms;
  int position = 0;
  for (std::uint32_t rem = rows; rem; rem &= rem - 1, ++position) {
    const int r = std::countr_zero(rem) + 1;
    const MultiPoly& minor = det_masks(rows & ~(1u << (r - 1)), rest_cols);
    if (minor.is_zero()) continue;
    const Monomial x = Monomial::variable(r);
    const bool negate = position % 2 == 1;
    for (const auto& t : minor.terms()) terms.push_back({t.mono * x, negate ? -t.coeff : t.coeff});
  }
  auto [it, inserted] = cache_.emplace(key, MultiPoly::from_terms(std::move(terms)));
  return it->second;
}

MultiPoly sym_det(const MinorIndex& idx, int gamma) {
  if (idx.max_index() > gamma) raise(ErrorCode::IndexOutOfRange, idx.to_string());
  SymbolicMinors minors;
  return minors.det(idx);
}

bool is_antidiag_symmetric(const MinorIndex& idx, int gamma) {
  if (idx.max_index() > gamma) raise(ErrorCode::IndexOutOfRange, idx.to_string());
  const auto& i = idx.rows();
  const auto& j = idx.cols();
  const int k = idx.size();
  for (int l = 0; l < k; ++l) {
    for (int m = 0; m < k; ++m) {
      if (i[l] - j[m] != i[k - 1 - m] - j[k - 1 - l]) return false;
    }
  }
  return true;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t catalan(int n) { return binomial(2 * n, n) / static_cast<std::uint64_t>(n + 1); }

std::uint64_t n_gamma_closed_form(int gamma) {
  if (gamma < 1) raise(ErrorCode::InvalidArgument, "order must be >= 1");
  return (catalan(gamma - 1) + binomial(gamma - 1, (gamma - 1) / 2)) / 2;
}

CensusResult census(int gamma) {
  if (gamma < 1 || gamma > kMaxSymbolicOrder) {
    raise(ErrorCode::InvalidArgument, "census supports 1 <= gamma <= " + std::to_string(kMaxSymbolicOrder));
  }
  CensusResult result;
  result.gamma = gamma;
  SymbolicMinors minors;
  std::set<MultiPoly> raw, normalized;
  for (const auto& idx : minors_involving_last(gamma)) {
    ++result.count_L;
    if (is_antidiag_symmetric(idx, gamma)) ++result.count_Lsym;
    const MultiPoly& poly = minors.det(idx);
    raw.insert(poly);
    normalized.insert(substitute_ones(poly));
  }
  result.n_gamma = (result.count_L + result.count_Lsym) / 2;
  result.n_gamma_closed_form = n_gamma_closed_form(gamma);
  result.distinct_raw = raw.size();
  result.distinct = normalized.size();
  return result;
}

}  // namespace supreg
