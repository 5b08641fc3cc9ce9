#pragma once

// Explicit superregular Toeplitz matrices of orders 3 to 6 for every large
// enough prime, and a table of known witnesses of orders 6 to 10.
//
// Order 6 is built from A(1, 1, 1/2, a_4, a_5, a_6) with (a_4, a_5) taken from
// one of five square-root families. Family "sqrt u" needs u to be a square
// mod p:
//
//   id       condition on p   a_4               a_5
//   sqrt-1   1 mod 4          (1 + r) / 4       (1 + 2r) / 8
//   sqrt2    +-1 mod 8        (r + 2) / 8       (r + 1) / 8
//   sqrt-3   1 mod 3          (3 + r) / 8       (2 + r) / 8
//   sqrt5    +-1 mod 5        (1 + r) / 8       r / 8
//   sqrt3    +-1 mod 12       (r - 1) / 4       (2r - 3) / 8
//
// with r a square root of u and a_6 = 1/4 by default. Every odd prime
// p >= 11 satisfies at least one condition.
//
// Every matrix returned here has been checked with is_superregular.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supreg/toeplitz.hpp"

namespace supreg {

enum class FamilyId { SqrtMinus1, Sqrt2, SqrtMinus3, Sqrt5, Sqrt3 };

inline constexpr FamilyId kAllFamilies[] = {FamilyId::SqrtMinus1, FamilyId::Sqrt2, FamilyId::SqrtMinus3,
                                            FamilyId::Sqrt5, FamilyId::Sqrt3};

std::string to_string(FamilyId id);
std::optional<FamilyId> parse_family(const std::string& text);

/// The u in "sqrt u".
int radicand(FamilyId id);

/// Congruence condition of the family (u is a nonzero square mod p).
bool family_applies(FamilyId id, std::uint64_t p);

/// Families whose condition holds at p, in the order above. Requires p >= 11.
std::vector<FamilyId> family_cover(const PrimeField& field);

/// (1, 1, 1/2, a_4, a_5) for the family with the given square root r.
std::vector<FieldElement> family_prefix(FamilyId id, const FieldElement& root);

struct Construction {
  ToeplitzLT matrix;
  std::string variant;
  /// Square root used by a family variant, if any.
  std::optional<std::uint64_t> root;
  /// How a_gamma was chosen: "formula", "override" or "smallest admissible".
  std::string choice;
};

/// Variant ids accepted for an order, in default-preference order.
std::vector<std::string> construct_variants(int gamma);

/// gamma in 3..6. Without a variant the first one that applies is used.
/// FieldTooSmall below the smallest prime that admits the order;
/// VariantInapplicable when the variant does not apply at p.
Construction construct_detailed(int gamma, const PrimeField& field, const std::optional<std::string>& variant = {});

ToeplitzLT construct(int gamma, const PrimeField& field, const std::optional<std::string>& variant = {});

/// Smallest prime admitting a superregular matrix of order gamma, for 3..6.
std::uint64_t min_prime_for_order(int gamma);

// ---------------------------------------------------------------------------
// Witness table

struct WitnessEntry {
  int gamma = 0;
  std::uint64_t p = 0;
  std::vector<std::int64_t> entries;  // full first column, a_1 .. a_gamma
  std::string source_table;
};

/// The embedded witness list, in file order. DataCorrupt if the embedded
/// text does not match its recorded checksum.
const std::vector<WitnessEntry>& witness_table();

/// 64-bit FNV-1a of the embedded witness file.
std::uint64_t witness_checksum();
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// All witnesses for (gamma, p), in file order.
std::vector<ToeplitzLT> witnesses(int gamma, const PrimeField& field);

/// The first witness for (gamma, p). NoWitness if there is none.
ToeplitzLT witness(int gamma, const PrimeField& field);

}  // namespace supreg
