#pragma once

// Forbidden values for the last entry of a Toeplitz matrix.
//
// For a prefix (a_1, ..., a_{gamma-1}) every minor of A_gamma that involves
// a_gamma is linear in it: c * a_gamma + d, with c = +/- the complementary
// minor of the prefix. Each such minor with c != 0 forbids a_gamma = -d/c.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "supreg/toeplitz.hpp"

namespace supreg {

struct ForbiddenSet {
  int gamma;
  PrimeField field;
  std::vector<FieldElement> prefix;  // a_1 .. a_{gamma-1}
  std::vector<FieldElement> values;  // ascending, distinct
  std::map<std::uint64_t, std::vector<MinorIndex>> provenance;
  /// Some minor vanishes identically in a_gamma (c = 0 and d = 0).
  bool dead = false;
  std::vector<MinorIndex> dead_minors;
};

/// Requires prefix.size() == gamma - 1 (PrefixLengthMismatch) and a_1 != 0.
ForbiddenSet forbidden_set(const PrimeField& field, std::span<const FieldElement> prefix, int gamma);

/// F_p minus the forbidden values, ascending. DeadPrefix when fs.dead.
std::vector<FieldElement> extension_candidates(const ForbiddenSet& fs);

/// The hand-derived expression lists for gamma = 4, 5, 6 in the normalized
/// matrix A(1, 1, a_3, ...), evaluated literally.
///
/// gamma = 4 (4 expressions):  0, a3, a3^2, 2a3 - 1
/// gamma = 5 (10 expressions): 0, a4, a3a4, a3^2, a4^2/a3, a3^2 - a3 + a4,
///   -a3^2 + a3a4 + a4, 2a4 - a3, (a3^3 - 2a3a4 + a4^2)/(a3 - 1),
///   a3^2 - 3a3 + 2a4 + 1
/// gamma = 6 (26 expressions), in reading order:
///    1: 0                      2: a5                    3: a3a4
///    4: a4^2                   5: a5^2/a4
///    6: (a5^2 - 2a3a4a5 + a4^3)/(a4 - a3^2)
///    7: (a3a5 - a4^2 + a4a5)/a3
///    8: a5 - a3a4 + a4^2       9: a5 - a3a4 + a3a5
///   10: (a4a5 + a3^2a5 - a3a4^2 - a5^2)/(a3 - a4)
///   11: (a3a5 + a4^2 - a3^2a4 - a4a5)/(1 - a3)
///   12: (a5 - 2a3a4 + a3^3 + 2a4^2 - a3^2a4 - a4a5)/(1 - a3)
///   13: -1 + 4a3 - 3a4 - 3a3^2 + 2a5 + 2a3a4
///   14: a3a5                  15: a3(2a5 - a3a4)
///   16: a3(a4 - a3^2 + a5)    17: a4a5/a3
///   18: -(a4 - a3^2 - a5 + a3^3 - a3a5)
///   19: -(a4 - a3^2 - 2a5 + 2a3a4 - a4^2)
///   20: -a3^2 + 2a3a4         21: -a4 + 2a5
///   22: -a3^2 + a5 + a3a4     23: -a4 + a5 + a3a4
///   24: a3 - 2a4 - a3^2 + 2a5 + a3a4
///   25: a3 - a4 - 2a3^2 + a5 + 2a3a4
///   26: (2a3a5 + a4^2 - 3a3^2a4 + a3^4 - 2a4a5 - 2a3^2a5 + 2a3a4^2 + a5^2)/(1 - 2a3 + a4)
struct ClosedFormSet {
  int gamma;
  std::vector<FieldElement> expressions;  // index i holds expression i+1
  std::vector<FieldElement> distinct() const;
};

/// `free_entries` = (a_3, ..., a_{gamma-1}). DenominatorVanishes names the
/// first expression whose denominator is zero.
ClosedFormSet closed_form_set(int gamma, std::span<const FieldElement> free_entries);

}  // namespace supreg
