#include "caplat/error.hpp"

namespace caplat {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotAPoset: return "NotAPoset";
    case Errc::NotALattice: return "NotALattice";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::EmptyLattice: return "EmptyLattice";
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::NotComparable: return "NotComparable";
    case Errc::NotDominating: return "NotDominating";
    case Errc::EmptyGenerator: return "EmptyGenerator";
    case Errc::Unreducible: return "Unreducible";
    case Errc::NotADownSet: return "NotADownSet";
    case Errc::NotACapacity: return "NotACapacity";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::NotCompletelyMonotone: return "NotCompletelyMonotone";
    case Errc::NotCompletelyAlternating: return "NotCompletelyAlternating";
    case Errc::MarginalMismatch: return "MarginalMismatch";
    case Errc::NotATree: return "NotATree";
    case Errc::RootNotInTree: return "RootNotInTree";
    case Errc::NotMonotonePath: return "NotMonotonePath";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NotACdf: return "NotACdf";
    case Errc::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
      code_(code) {}

}  // namespace caplat
