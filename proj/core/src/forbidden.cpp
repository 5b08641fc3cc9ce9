#include "supreg/forbidden.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace supreg {

ForbiddenSet forbidden_set(const PrimeField& field, std::span<const FieldElement> prefix, int gamma) {
  if (gamma < 1 || gamma > kMaxOrder) raise(ErrorCode::InvalidArgument, "order out of range");
  if (static_cast<int>(prefix.size()) != gamma - 1) {
    raise(ErrorCode::PrefixLengthMismatch, "prefix has " + std::to_string(prefix.size()) +
                                               " entries, order " + std::to_string(gamma) + " needs " +
                                               std::to_string(gamma - 1));
  }
  for (const auto& x : prefix) field.require_member(x);
  if (!prefix.empty() && prefix.front().is_zero()) raise(ErrorCode::InvalidArgument, "a_1 must be nonzero");

  ForbiddenSet fs{gamma, field, {prefix.begin(), prefix.end()}, {}, {}, false, {}};

  // A_gamma with a_gamma = 0: every corner minor then evaluates to d.
  std::vector<FieldElement> column(prefix.begin(), prefix.end());
  column.push_back(field.zero());
  const ToeplitzLT base(field, std::move(column));

  std::set<FieldElement> values;
  for (const auto& idx : minors_involving_last(gamma)) {
    FieldElement c = field.one();
    if (auto comp = corner_complement(idx)) {
      c = det(base, *comp);
      if (idx.size() % 2 == 0) c = -c;  // cofactor sign of position (k, 1)
    }
    const FieldElement d = det(base, idx);
    if (c.is_zero()) {
      if (d.is_zero()) {
        fs.dead = true;
        fs.dead_minors.push_back(idx);
      }
      continue;
    }
    const FieldElement root = -d / c;
    values.insert(root);
    fs.provenance[root.value()].push_back(idx);
  }
  fs.values.assign(values.begin(), values.end());
  return fs;
}

std::vector<FieldElement> extension_candidates(const ForbiddenSet& fs) {
  if (fs.dead) raise(ErrorCode::DeadPrefix, "a minor vanishes for every choice of a_" + std::to_string(fs.gamma));
  std::vector<FieldElement> out;
  auto it = fs.values.begin();
  for (u64 v = 0; v < fs.field.modulus(); ++v) {
    if (it != fs.values.end() && it->value() == v) {
      ++it;
      continue;
    }
    out.push_back(fs.field.from_u64(v));
  }
  return out;
}

std::vector<FieldElement> ClosedFormSet::distinct() const {
  std::set<FieldElement> s(expressions.begin(), expressions.end());
  return {s.begin(), s.end()};
}

ClosedFormSet closed_form_set(int gamma, std::span<const FieldElement> free_entries) {
  if (gamma < 4 || gamma > 6) raise(ErrorCode::InvalidArgument, "closed forms exist for gamma = 4, 5, 6 only");
  if (static_cast<int>(free_entries.size()) != gamma - 3) {
    raise(ErrorCode::PrefixLengthMismatch, "expected (a_3, ..., a_" + std::to_string(gamma - 1) + ")");
  }
  for (const auto& x : free_entries) require_same_field(x, free_entries.front());

  const u64 p = free_entries.front().modulus();
  auto k = [p](std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return FieldElement::unchecked(static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r), p);
  };
  const FieldElement one = k(1);
  const FieldElement a3 = free_entries[0];

  ClosedFormSet out{gamma, {}};
  auto& e = out.expressions;
  auto quotient = [&](const FieldElement& num, const FieldElement& den, const char* den_text) {
    if (den.is_zero()) {
      raise(ErrorCode::DenominatorVanishes, "expression " + std::to_string(e.size() + 1) + ": " + den_text + " = 0");
    }
    return num / den;
  };

  if (gamma == 4) {
    e = {k(0), a3, a3 * a3, k(2) * a3 - one};
    return out;
  }

  const FieldElement a4 = free_entries[1];
  if (gamma == 5) {
    e.push_back(k(0));
    e.push_back(a4);
    e.push_back(a3 * a4);
    e.push_back(a3 * a3);
    e.push_back(quotient(a4 * a4, a3, "a3"));
    e.push_back(a3 * a3 - a3 + a4);
    e.push_back(-(a3 * a3) + a3 * a4 + a4);
    e.push_back(k(2) * a4 - a3);
    e.push_back(quotient(a3 * a3 * a3 - k(2) * a3 * a4 + a4 * a4, a3 - one, "a3 - 1"));
    e.push_back(a3 * a3 - k(3) * a3 + k(2) * a4 + one);
    return out;
  }

  const FieldElement a5 = free_entries[2];
  const FieldElement a3s = a3 * a3;
  const FieldElement a4s = a4 * a4;
  e.push_back(k(0));
  e.push_back(a5);
  e.push_back(a3 * a4);
  e.push_back(a4s);
  e.push_back(quotient(a5 * a5, a4, "a4"));
  e.push_back(quotient(a5 * a5 - k(2) * a3 * a4 * a5 + a4s * a4, a4 - a3s, "a4 - a3^2"));
  e.push_back(quotient(a3 * a5 - a4s + a4 * a5, a3, "a3"));
  e.push_back(a5 - a3 * a4 + a4s);
  e.push_back(a5 - a3 * a4 + a3 * a5);
  e.push_back(quotient(a4 * a5 + a3s * a5 - a3 * a4s - a5 * a5, a3 - a4, "a3 - a4"));
  e.push_back(quotient(a3 * a5 + a4s - a3s * a4 - a4 * a5, one - a3, "1 - a3"));
  e.push_back(quotient(a5 - k(2) * a3 * a4 + a3s * a3 + k(2) * a4s - a3s * a4 - a4 * a5, one - a3, "1 - a3"));
  e.push_back(-one + k(4) * a3 - k(3) * a4 - k(3) * a3s + k(2) * a5 + k(2) * a3 * a4);
  e.push_back(a3 * a5);
  e.push_back(a3 * (k(2) * a5 - a3 * a4));
  e.push_back(a3 * (a4 - a3s + a5));
  e.push_back(quotient(a4 * a5, a3, "a3"));
  e.push_back(-(a4 - a3s - a5 + a3s * a3 - a3 * a5));
  e.push_back(-(a4 - a3s - k(2) * a5 + k(2) * a3 * a4 - a4s));
  e.push_back(-a3s + k(2) * a3 * a4);
  e.push_back(-a4 + k(2) * a5);
  e.push_back(-a3s + a5 + a3 * a4);
  e.push_back(-a4 + a5 + a3 * a4);
  e.push_back(a3 - k(2) * a4 - a3s + k(2) * a5 + a3 * a4);
  e.push_back(a3 - a4 - k(2) * a3s + a5 + k(2) * a3 * a4);
  e.push_back(quotient(k(2) * a3 * a5 + a4s - k(3) * a3s * a4 + a3s * a3s - k(2) * a4 * a5 - k(2) * a3s * a5 +
                           k(2) * a3 * a4s + a5 * a5,
                       one - k(2) * a3 + a4, "1 - 2a3 + a4"));
  return out;
}

}  // namespace supreg
