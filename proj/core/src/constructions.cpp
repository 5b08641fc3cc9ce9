#include "supreg/constructions.hpp"

#include <algorithm>
#include <mutex>

#include <nlohmann/json.hpp>

#include "supreg/error.hpp"
#include "supreg/forbidden.hpp"
#include "witness_data.hpp"

namespace supreg {

std::string to_string(FamilyId id) {
  switch (id) {
    case FamilyId::SqrtMinus1: return "sqrt-1";
    case FamilyId::Sqrt2: return "sqrt2";
    case FamilyId::SqrtMinus3: return "sqrt-3";
    case FamilyId::Sqrt5: return "sqrt5";
    case FamilyId::Sqrt3: return "sqrt3";
  }
  return "?";
}

std::optional<FamilyId> parse_family(const std::string& text) {
  for (auto id : kAllFamilies) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

int radicand(FamilyId id) {
  switch (id) {
    case FamilyId::SqrtMinus1: return -1;
    case FamilyId::Sqrt2: return 2;
    case FamilyId::SqrtMinus3: return -3;
    case FamilyId::Sqrt5: return 5;
    case FamilyId::Sqrt3: return 3;
  }
  return 0;
}

bool family_applies(FamilyId id, std::uint64_t p) {
  switch (id) {
    case FamilyId::SqrtMinus1: return p % 4 == 1;
    case FamilyId::Sqrt2: return p % 8 == 1 || p % 8 == 7;
    case FamilyId::SqrtMinus3: return p % 3 == 1;
    case FamilyId::Sqrt5: return p % 5 == 1 || p % 5 == 4;
    case FamilyId::Sqrt3: return p % 12 == 1 || p % 12 == 11;
  }
  return false;
}

std::vector<FamilyId> family_cover(const PrimeField& field) {
  if (field.modulus() < 11) raise(ErrorCode::FieldTooSmall, "families are defined for p >= 11");
  std::vector<FamilyId> out;
  for (auto id : kAllFamilies) {
    if (family_applies(id, field.modulus())) out.push_back(id);
  }
  return out;
}

namespace {

FieldElement frac(const FieldElement& num, std::int64_t den) {
  return num / PrimeField(num.modulus()).element(den);
}

FieldElement q(const PrimeField& f, std::int64_t num, std::int64_t den) { return f.element(num) / f.element(den); }

bool superregular(const ToeplitzLT& m) { return is_superregular(m).verdict; }

std::optional<ToeplitzLT> checked(const PrimeField& f, std::vector<FieldElement> entries) {
  ToeplitzLT m(f, std::move(entries));
  if (!superregular(m)) return std::nullopt;
  return m;
}

std::vector<FieldElement> column(const PrimeField& f, std::initializer_list<std::pair<std::int64_t, std::int64_t>> xs) {
  std::vector<FieldElement> out;
  for (auto [n, d] : xs) out.push_back(q(f, n, d));
  return out;
}

struct FamilyOverride {
  FamilyId family;
  std::uint64_t p;
  std::uint64_t root;
  std::optional<std::uint64_t> a6;
};

// Roots (and one a_6) known to be needed at particular primes; the canonical
// formula fails there for the other choice.
constexpr FamilyOverride kOverrides[] = {
    {FamilyId::SqrtMinus1, 37, 6, std::nullopt}, {FamilyId::Sqrt2, 17, 6, std::nullopt},
    {FamilyId::SqrtMinus3, 37, 16, std::nullopt}, {FamilyId::Sqrt3, 23, 16, std::nullopt},
    {FamilyId::Sqrt3, 73, 52, std::nullopt},      {FamilyId::Sqrt3, 37, 22, 10},
};

std::optional<Construction> family_construction(FamilyId id, const PrimeField& f) {
  const std::uint64_t p = f.modulus();
  const auto u = f.element(radicand(id));
  if (legendre(u) != 1) return std::nullopt;
  const auto [r0, r1] = sqrt_mod(u);

  struct Attempt {
    std::uint64_t root;
    std::optional<std::uint64_t> a6;
  };
  std::vector<Attempt> attempts;
  for (const auto& o : kOverrides) {
    if (o.family == id && o.p == p) attempts.push_back({o.root, o.a6});
  }
  attempts.push_back({r0.value(), std::nullopt});
  attempts.push_back({r1.value(), std::nullopt});

  const std::string name = to_string(id);
  for (const auto& a : attempts) {
    auto entries = family_prefix(id, f.from_u64(a.root));
    entries.push_back(a.a6 ? f.from_u64(*a.a6) : q(f, 1, 4));
    if (auto m = checked(f, entries)) return Construction{*m, name, a.root, a.a6 ? "override" : "formula"};
  }
  for (const auto& a : attempts) {
    auto prefix = family_prefix(id, f.from_u64(a.root));
    if (!is_superregular(ToeplitzLT(f, prefix)).verdict) continue;
    const auto fs = forbidden_set(f, prefix, 6);
    if (fs.dead) continue;
    for (const auto& c : extension_candidates(fs)) {
      auto entries = prefix;
      entries.push_back(c);
      if (auto m = checked(f, entries)) return Construction{*m, name, a.root, "smallest admissible"};
    }
  }
  return std::nullopt;
}

[[noreturn]] void inapplicable(int gamma, const std::string& variant, std::uint64_t p, const std::string& why) {
  raise(ErrorCode::VariantInapplicable,
        "variant '" + variant + "' of order " + std::to_string(gamma) + " at p = " + std::to_string(p) + ": " + why);
}

std::optional<Construction> try_variant(int gamma, const std::string& v, const PrimeField& f, std::string& why) {
  const std::uint64_t p = f.modulus();
  auto fixed = [&](std::uint64_t min_p, std::vector<FieldElement> entries) -> std::optional<Construction> {
    if (p < min_p) {
      why = "needs p >= " + std::to_string(min_p);
      return std::nullopt;
    }
    if (auto m = checked(f, std::move(entries))) return Construction{*m, v, std::nullopt, "formula"};
    why = "the formula matrix is not superregular";
    return std::nullopt;
  };

  if (gamma == 3 && v == "default") return fixed(3, column(f, {{1, 1}, {1, 1}, {-1, 1}}));
  if (gamma == 4 && v == "default") return fixed(5, column(f, {{1, 1}, {1, 1}, {1, 2}, {1, 1}}));
  if (gamma == 5 || gamma == 6) {
    const bool six = gamma == 6;
    const std::uint64_t min_p5 = six ? 23 : 11;
    const std::uint64_t min_p7 = six ? 23 : 7;
    if (v == "half-one") {
      auto c = column(f, {{1, 1}, {1, 1}, {1, 2}, {1, 1}, {-1, 2}});
      if (six) c.push_back(q(f, 3, 2));
      return fixed(min_p5, c);
    }
    if (v == "quarter") {
      auto c = column(f, {{1, 1}, {1, 1}, {1, 4}, {-1, 8}, {1, 4}});
      if (six) c.push_back(q(f, -1, 4));
      return fixed(min_p7, c);
    }
    if (v == "three-quarter") {
      auto c = column(f, {{1, 1}, {1, 1}, {3, 4}, {3, 8}, {1, 4}});
      if (six) c.push_back(q(f, -5, 16));
      return fixed(min_p7, c);
    }
  }
  if (gamma == 6) {
    if (v == "small-prime") {
      if (p == 11) return fixed(11, column(f, {{1, 1}, {1, 1}, {6, 1}, {1, 1}, {5, 1}, {4, 1}}));
      if (p == 13) return fixed(13, column(f, {{1, 1}, {1, 1}, {7, 1}, {8, 1}, {3, 1}, {2, 1}}));
      why = "only defined for p = 11 and p = 13";
      return std::nullopt;
    }
    if (v == "sqrt-1-half") {
      if (p < 17 || p % 4 != 1) {
        why = "needs p = 1 mod 4 and p >= 17";
        return std::nullopt;
      }
      const auto r = sqrt_mod(f.element(-1)).first;  // the root below p/2
      auto c = family_prefix(FamilyId::SqrtMinus1, r);
      c.push_back(frac(r, 2));
      auto out = fixed(17, c);
      if (out) out->root = r.value();
      return out;
    }
    if (auto id = parse_family(v)) {
      if (!family_applies(*id, p)) {
        why = "needs " + to_string(*id).substr(4) + " to be a square mod p";
        return std::nullopt;
      }
      auto out = family_construction(*id, f);
      if (!out) why = "no superregular completion for either square root";
      return out;
    }
  }
  why = "unknown variant";
  return std::nullopt;
}

}  // namespace

std::vector<FieldElement> family_prefix(FamilyId id, const FieldElement& r) {
  const PrimeField f(r.modulus());
  const auto one = f.one();
  FieldElement a4 = one;
  FieldElement a5 = one;
  switch (id) {
    case FamilyId::SqrtMinus1:
      a4 = frac(one + r, 4);
      a5 = frac(one + f.element(2) * r, 8);
      break;
    case FamilyId::Sqrt2:
      a4 = frac(r + f.element(2), 8);
      a5 = frac(r + one, 8);
      break;
    case FamilyId::SqrtMinus3:
      a4 = frac(f.element(3) + r, 8);
      a5 = frac(f.element(2) + r, 8);
      break;
    case FamilyId::Sqrt5:
      a4 = frac(one + r, 8);
      a5 = frac(r, 8);
      break;
    case FamilyId::Sqrt3:
      a4 = frac(r - one, 4);
      a5 = frac(f.element(2) * r - f.element(3), 8);
      break;
  }
  return {one, one, q(f, 1, 2), a4, a5};
}

std::vector<std::string> construct_variants(int gamma) {
  switch (gamma) {
    case 3:
    case 4: return {"default"};
    case 5: return {"half-one", "quarter", "three-quarter"};
    case 6: {
      std::vector<std::string> out{"small-prime"};
      for (auto id : kAllFamilies) out.push_back(to_string(id));
      for (const char* v : {"sqrt-1-half", "quarter", "three-quarter", "half-one"}) out.emplace_back(v);
      return out;
    }
    default: return {};
  }
}

std::uint64_t min_prime_for_order(int gamma) {
  switch (gamma) {
    case 3: return 3;
    case 4: return 5;
    case 5: return 7;
    case 6: return 11;
    default: raise(ErrorCode::InvalidArgument, "constructions cover orders 3 to 6");
  }
}

Construction construct_detailed(int gamma, const PrimeField& field, const std::optional<std::string>& variant) {
  const std::uint64_t min_p = min_prime_for_order(gamma);
  if (field.modulus() < min_p) {
    raise(ErrorCode::FieldTooSmall,
          "order " + std::to_string(gamma) + " needs p >= " + std::to_string(min_p));
  }
  std::string why;
  if (variant) {
    const auto names = construct_variants(gamma);
    if (std::find(names.begin(), names.end(), *variant) == names.end()) {
      raise(ErrorCode::InvalidArgument, "unknown variant '" + *variant + "' for order " + std::to_string(gamma));
    }
    if (auto c = try_variant(gamma, *variant, field, why)) return *c;
    inapplicable(gamma, *variant, field.modulus(), why);
  }
  for (const auto& v : construct_variants(gamma)) {
    if (auto c = try_variant(gamma, v, field, why)) return *c;
  }
  raise(ErrorCode::VariantInapplicable, "no construction of order " + std::to_string(gamma) + " applies at p = " +
                                            std::to_string(field.modulus()));
}

ToeplitzLT construct(int gamma, const PrimeField& field, const std::optional<std::string>& variant) {
  return construct_detailed(gamma, field, variant).matrix;
}

// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t witness_checksum() { return fnv1a64(detail::kWitnessJson); }

const std::vector<WitnessEntry>& witness_table() {
  static const std::vector<WitnessEntry> table = [] {
    if (witness_checksum() != detail::kWitnessChecksum) {
      raise(ErrorCode::DataCorrupt, "embedded witness data does not match its checksum");
    }
    std::vector<WitnessEntry> out;
    try {
      for (const auto& row : nlohmann::json::parse(detail::kWitnessJson)) {
        WitnessEntry e;
        e.gamma = row.at("gamma").get<int>();
        e.p = row.at("p").get<std::uint64_t>();
        e.entries = row.at("entries").get<std::vector<std::int64_t>>();
        e.source_table = row.at("source_table").get<std::string>();
        if (static_cast<int>(e.entries.size()) != e.gamma) {
          raise(ErrorCode::DataCorrupt, "witness row has the wrong number of entries");
        }
        out.push_back(std::move(e));
      }
    } catch (const nlohmann::json::exception& ex) {
      raise(ErrorCode::DataCorrupt, std::string("witness data: ") + ex.what());
    }
    return out;
  }();
  return table;
}

std::vector<ToeplitzLT> witnesses(int gamma, const PrimeField& field) {
  std::vector<ToeplitzLT> out;
  for (const auto& e : witness_table()) {
    if (e.gamma == gamma && e.p == field.modulus()) out.push_back(ToeplitzLT::from_integers(field, e.entries));
  }
  return out;
}

ToeplitzLT witness(int gamma, const PrimeField& field) {
  auto all = witnesses(gamma, field);
  if (all.empty()) {
    raise(ErrorCode::NoWitness,
          "no stored witness of order " + std::to_string(gamma) + " over F_" + std::to_string(field.modulus()));
  }
  return all.front();
}

}  // namespace supreg
