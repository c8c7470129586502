#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caplat {

// Domain error kinds. The CLI reports `name()` verbatim.
enum class Errc {
  NotAPoset,
  NotALattice,
  CapExceeded,
  EmptyLattice,
  DuplicateElement,
  UnknownElement,
  NotComparable,
  NotDominating,
  EmptyGenerator,
  Unreducible,
  NotADownSet,
  NotACapacity,
  NotMonotone,
  NegativeValue,
  NotCompletelyMonotone,
  NotCompletelyAlternating,
  MarginalMismatch,
  NotATree,
  RootNotInTree,
  NotMonotonePath,
  Infeasible,
  NotACdf,
  DimensionMismatch,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace caplat
