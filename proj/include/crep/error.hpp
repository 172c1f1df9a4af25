#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crep {

enum class Errc {
  CoincidentCircles,
  DegeneratePoints,
  NonpositiveRadius,
  PoleOnSamplePoint,
  SideMismatch,
  NoOuterSolution,
  NotAChain,
  NonpositiveInput,
  OrderViolation,
  PreconditionFailed,
  NotSymmetric,
  NotOrdered,
  UnknownKind,
  DimensionMismatch,
  NoSuchEdge,
  DegreeMismatch,
  InvalidInstance,
  TriplePoint,
  FreeCircle,
  PoleOnCircle,
  UnknownId,
  IoFailure,
  ParseFailure,
};

std::string_view to_string(Errc code);

// Single exception type for the library; the code carries the failure kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace crep
