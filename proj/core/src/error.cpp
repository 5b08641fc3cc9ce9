#include "supreg/error.hpp"

namespace supreg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DenominatorZeroModP: return "DenominatorZeroModP";
    case ErrorCode::NonResidue: return "NonResidue";
    case ErrorCode::DegenerateLinear: return "DegenerateLinear";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroScalar: return "ZeroScalar";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::CoefficientOverflow: return "CoefficientOverflow";
    case ErrorCode::PrefixLengthMismatch: return "PrefixLengthMismatch";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::DeadPrefix: return "DeadPrefix";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::VariantInapplicable: return "VariantInapplicable";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::DeadEnd: return "DeadEnd";
    case ErrorCode::DataCorrupt: return "DataCorrupt";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace supreg
