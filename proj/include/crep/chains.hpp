#pragma once

// Algebra of circles tangent to the x-axis: tangent-circle constructions,
// four-circle chain gap laws and the octuple contradiction certificate.

#include <array>
#include <string>
#include <utility>

#include "crep/geom.hpp"

namespace crep::chains {

using geom::AxisTangentCircle;
using geom::Side;

/// Horizontal distance at which two same-side axis-tangent circles touch.
double tangent_gap(double ra, double rb);

/// |Δt| − 2√(ra·rb) for two same-side circles; zero iff they touch.
double tangency_residual(const AxisTangentCircle& a, const AxisTangentCircle& b);

/// Circle between A and B touching both and the axis.
AxisTangentCircle inner_tangent_circle(const AxisTangentCircle& a, const AxisTangentCircle& b);

/// Circle to the right of B touching A, B and the axis. Requires A.r > B.r.
AxisTangentCircle outer_tangent_circle(const AxisTangentCircle& a, const AxisTangentCircle& b);

struct ChainGaps {
  double left = 0.0;    // t2 - t1
  double middle = 0.0;  // t3 - t2
  double right = 0.0;   // t4 - t3
  double span = 0.0;    // t4 - t1
};

using Quad = std::array<AxisTangentCircle, 4>;

/// Gaps of a closed four-chain with touching pairs (1,2),(2,3),(3,4),(1,4).
/// `tol` is relative to the chain's span.
ChainGaps chain_gaps_check(const Quad& quad, double tol = 1e-9);

/// The middle gap of a four-chain as a function of its outer gaps:
/// the positive root m of l·r = m·(l + m + r).
double f_gap(double left, double right);

/// (∂f/∂left, ∂f/∂right).
std::pair<double, double> f_gap_gradient(double left, double right);

/// Exact four-chain with outer gaps (left, right), starting at the anchor.
Quad build_chain(double left, double right, double anchor_t, double anchor_r, Side side);

enum class OctupleKind { Induced, Symmetric };

/// Eight axis-tangent circles C1..C8 (stored at indices 0..7). Circles 2,3,6,7
/// lie above the axis, 1,4,5,8 below.
struct OctupleConfig {
  std::array<AxisTangentCircle, 8> circles{};
  OctupleKind kind = OctupleKind::Induced;

  const AxisTangentCircle& operator[](int label) const { return circles[label - 1]; }
  AxisTangentCircle& operator[](int label) { return circles[label - 1]; }

  double span() const { return circles[7].t - circles[0].t; }
};

Side octuple_side(int label);
/// Builds a config from (t, r) pairs, assigning the fixed sides.
OctupleConfig make_octuple(const std::array<std::pair<double, double>, 8>& tr, OctupleKind kind);

/// Touching pairs (1-based) required by each kind.
const std::array<std::pair<int, int>, 4>& induced_pairs();
const std::array<std::pair<int, int>, 4>& symmetric_extra_pairs();

/// Largest |tangency_residual| over the required pairs of `kind`.
double max_tangency_residual(const OctupleConfig& cfg, OctupleKind kind);
bool strictly_ordered(const OctupleConfig& cfg);

struct SymmetrizeReport {
  std::array<double, 8> old_t{};
  std::array<double, 8> new_t{};
  bool first_enlarged = false;
  double old_r1 = 0.0;
  double new_r1 = 0.0;
  // Order claims of the replacement argument.
  bool top_inner_moved_left = false;    // t3' < t3
  bool top_outer_between = false;       // t6 < t7' < t7
  bool bottom_inner_moved_left = false; // t4' < t4
  bool bottom_outer_between = false;    // t5 < t8' < t8
  bool output_strictly_ordered = false;
};

enum class OrderPolicy { Throw, Report };

/// Rebuilds an (approximately) induced configuration into a symmetric one:
/// C3, C7 are replaced by the inner/outer circles tangent to C2, C6 and the
/// axis; C4, C8 likewise from C1, C5 after C1 is enlarged (along its tangency
/// with C4) to r5·(1 + 1e-6) when r1 <= r5. `tol` is relative to the span.
/// An exactly tangent, strictly ordered output cannot exist, so with
/// OrderPolicy::Throw an unordered output raises OrderViolation; with
/// OrderPolicy::Report it is returned and flagged in the report.
std::pair<OctupleConfig, SymmetrizeReport> symmetrize(const OctupleConfig& cfg, double tol = 1e-8,
                                                      OrderPolicy policy = OrderPolicy::Throw);

enum class Conflict { Nesting, Monotonicity, Premise };

struct ContradictionReport {
  double m_top = 0.0;     // t6 - t3
  double m_bottom = 0.0;  // t5 - t4
  double f_top = 0.0;     // f(t3 - t2, t7 - t6)
  double f_bottom = 0.0;  // f(t4 - t1, t8 - t5)
  /// f_bottom - f_top: the chain laws plus monotonicity put m_bottom above
  /// m_top by this much.
  double monotonicity_bound = 0.0;
  /// m_top - m_bottom = (t4 - t3) + (t6 - t5): nesting needs this positive.
  double nesting_bound = 0.0;
  double nesting_violation = 0.0;
  double monotonicity_violation = 0.0;
  double premise_violation = 0.0;
  /// |m_top - f_top| + |m_bottom - f_bottom| as measured on the input.
  double chain_law_deviation = 0.0;
  Conflict violated = Conflict::Nesting;
  std::string description;
  double magnitude = 0.0;
};

/// Checks a symmetric configuration against the chain laws and the nesting
/// order and reports the amount by which they conflict. Each chain must be
/// internally ordered (t1<t4<t5<t8, t2<t3<t6<t7); the interleaving between
/// the chains is what the report measures. `tol` is relative to the span.
ContradictionReport contradiction_certificate(const OctupleConfig& cfg, double tol = 1e-8);

/// Snaps a configuration onto exact chains: the top chain is rebuilt from
/// (t3 - t2, t7 - t6) anchored at C2 and the bottom one from (t4 - t1, t8 - t5)
/// anchored at C1.
OctupleConfig project_to_symmetric(const OctupleConfig& cfg);

}  // namespace crep::chains
