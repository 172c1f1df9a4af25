#include "crep/error.hpp"

namespace crep {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::CoincidentCircles: return "CoincidentCircles";
    case Errc::DegeneratePoints: return "DegeneratePoints";
    case Errc::NonpositiveRadius: return "NonpositiveRadius";
    case Errc::PoleOnSamplePoint: return "PoleOnSamplePoint";
    case Errc::SideMismatch: return "SideMismatch";
    case Errc::NoOuterSolution: return "NoOuterSolution";
    case Errc::NotAChain: return "NotAChain";
    case Errc::NonpositiveInput: return "NonpositiveInput";
    case Errc::OrderViolation: return "OrderViolation";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotOrdered: return "NotOrdered";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoSuchEdge: return "NoSuchEdge";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::InvalidInstance: return "InvalidInstance";
    case Errc::TriplePoint: return "TriplePoint";
    case Errc::FreeCircle: return "FreeCircle";
    case Errc::PoleOnCircle: return "PoleOnCircle";
    case Errc::UnknownId: return "UnknownId";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ParseFailure: return "ParseFailure";
  }
  return "Unknown";
}

}  // namespace crep
