#include "crep/chains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crep/error.hpp"

namespace crep::chains {

namespace {

void require_positive_radius(const AxisTangentCircle& c) {
  if (!(c.r > 0.0)) throw Error(Errc::NonpositiveRadius, "axis-tangent circle needs r > 0");
}

void require_same_side(const AxisTangentCircle& a, const AxisTangentCircle& b) {
  if (a.side != b.side) throw Error(Errc::SideMismatch, "circles lie on opposite sides");
}

constexpr double kEnlargeMargin = 1e-6;

}  // namespace

double tangent_gap(double ra, double rb) {
  if (!(ra > 0.0) || !(rb > 0.0)) {
    throw Error(Errc::NonpositiveRadius, "tangent_gap needs positive radii");
  }
  return 2.0 * std::sqrt(ra * rb);
}

double tangency_residual(const AxisTangentCircle& a, const AxisTangentCircle& b) {
  return std::abs(b.t - a.t) - tangent_gap(a.r, b.r);
}

AxisTangentCircle inner_tangent_circle(const AxisTangentCircle& a, const AxisTangentCircle& b) {
  require_same_side(a, b);
  require_positive_radius(a);
  require_positive_radius(b);
  if (!(a.t < b.t)) throw Error(Errc::PreconditionFailed, "inner_tangent_circle needs A.t < B.t");
  const double root = (b.t - a.t) / (2.0 * (std::sqrt(a.r) + std::sqrt(b.r)));
  AxisTangentCircle c{0.0, root * root, a.side};
  c.t = a.t + 2.0 * std::sqrt(a.r) * root;
  return c;
}

AxisTangentCircle outer_tangent_circle(const AxisTangentCircle& a, const AxisTangentCircle& b) {
  require_same_side(a, b);
  require_positive_radius(a);
  require_positive_radius(b);
  if (!(a.t < b.t)) throw Error(Errc::PreconditionFailed, "outer_tangent_circle needs A.t < B.t");
  const double diff = std::sqrt(a.r) - std::sqrt(b.r);
  if (!(diff > 1e-12 * std::sqrt(a.r))) {
    throw Error(Errc::NoOuterSolution, "no outer tangent circle unless A.r > B.r");
  }
  const double root = (b.t - a.t) / (2.0 * diff);
  AxisTangentCircle c{0.0, root * root, a.side};
  c.t = b.t + 2.0 * std::sqrt(b.r) * root;
  return c;
}

ChainGaps chain_gaps_check(const Quad& q, double tol) {
  for (const auto& c : q) require_positive_radius(c);
  for (int i = 1; i < 4; ++i) {
    if (q[i].side != q[0].side) throw Error(Errc::NotAChain, "chain circles must share a side");
    if (!(q[i - 1].t < q[i].t)) throw Error(Errc::NotAChain, "chain must be t-ordered");
  }
  const double span = q[3].t - q[0].t;
  constexpr std::array<std::pair<int, int>, 4> pairs{{{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  for (auto [i, j] : pairs) {
    if (std::abs(tangency_residual(q[i], q[j])) > tol * span) {
      std::ostringstream msg;
      msg << "circles " << i + 1 << " and " << j + 1 << " do not touch (residual "
          << tangency_residual(q[i], q[j]) << ")";
      throw Error(Errc::NotAChain, msg.str());
    }
  }
  return {q[1].t - q[0].t, q[2].t - q[1].t, q[3].t - q[2].t, span};
}

double f_gap(double left, double right) {
  if (!(left > 0.0) || !(right > 0.0)) throw Error(Errc::NonpositiveInput, "f_gap needs l, r > 0");
  const double s = left + right;
  // Rationalized root; avoids cancellation when l*r is small against (l+r)^2.
  return 2.0 * left * right / (s + std::sqrt(s * s + 4.0 * left * right));
}

std::pair<double, double> f_gap_gradient(double left, double right) {
  if (!(left > 0.0) || !(right > 0.0)) {
    throw Error(Errc::NonpositiveInput, "f_gap_gradient needs l, r > 0");
  }
  const double s = left + right;
  const double root = std::sqrt(s * s + 4.0 * left * right);
  return {0.5 * ((left + 3.0 * right) / root - 1.0), 0.5 * ((right + 3.0 * left) / root - 1.0)};
}

Quad build_chain(double left, double right, double anchor_t, double anchor_r, Side side) {
  if (!(left > 0.0) || !(right > 0.0) || !(anchor_r > 0.0)) {
    throw Error(Errc::NonpositiveInput, "build_chain needs positive gaps and anchor radius");
  }
  const double middle = f_gap(left, right);
  Quad q;
  q[0] = {anchor_t, anchor_r, side};
  const std::array<double, 3> gaps{left, middle, right};
  for (int i = 1; i < 4; ++i) {
    q[i].t = q[i - 1].t + gaps[i - 1];
    q[i].r = gaps[i - 1] * gaps[i - 1] / (4.0 * q[i - 1].r);
    q[i].side = side;
  }
  return q;
}

Side octuple_side(int label) {
  switch (label) {
    case 2: case 3: case 6: case 7: return Side::Above;
    default: return Side::Below;
  }
}

OctupleConfig make_octuple(const std::array<std::pair<double, double>, 8>& tr, OctupleKind kind) {
  OctupleConfig cfg;
  cfg.kind = kind;
  for (int i = 0; i < 8; ++i) cfg.circles[i] = {tr[i].first, tr[i].second, octuple_side(i + 1)};
  return cfg;
}

const std::array<std::pair<int, int>, 4>& induced_pairs() {
  static const std::array<std::pair<int, int>, 4> pairs{{{1, 4}, {2, 7}, {3, 6}, {5, 8}}};
  return pairs;
}

const std::array<std::pair<int, int>, 4>& symmetric_extra_pairs() {
  static const std::array<std::pair<int, int>, 4> pairs{{{1, 8}, {4, 5}, {2, 3}, {6, 7}}};
  return pairs;
}

double max_tangency_residual(const OctupleConfig& cfg, OctupleKind kind) {
  double worst = 0.0;
  for (auto [i, j] : induced_pairs()) worst = std::max(worst, std::abs(tangency_residual(cfg[i], cfg[j])));
  if (kind == OctupleKind::Symmetric) {
    for (auto [i, j] : symmetric_extra_pairs()) {
      worst = std::max(worst, std::abs(tangency_residual(cfg[i], cfg[j])));
    }
  }
  return worst;
}

bool strictly_ordered(const OctupleConfig& cfg) {
  for (int i = 1; i < 8; ++i) {
    if (!(cfg.circles[i - 1].t < cfg.circles[i].t)) return false;
  }
  return true;
}

namespace {

void require_sides(const OctupleConfig& cfg) {
  for (int i = 1; i <= 8; ++i) {
    require_positive_radius(cfg[i]);
    if (cfg[i].side != octuple_side(i)) {
      throw Error(Errc::SideMismatch, "circle " + std::to_string(i) + " is on the wrong side");
    }
  }
}

}  // namespace

std::pair<OctupleConfig, SymmetrizeReport> symmetrize(const OctupleConfig& cfg, double tol,
                                                      OrderPolicy policy) {
  require_sides(cfg);
  if (!strictly_ordered(cfg)) {
    throw Error(Errc::PreconditionFailed, "symmetrize needs t1 < ... < t8");
  }
  const double residual = max_tangency_residual(cfg, OctupleKind::Induced);
  if (residual > tol * cfg.span()) {
    std::ostringstream msg;
    msg << "induced tangency residual " << residual << " exceeds " << tol << " x span";
    throw Error(Errc::PreconditionFailed, msg.str());
  }

  SymmetrizeReport report;
  for (int i = 0; i < 8; ++i) report.old_t[i] = cfg.circles[i].t;

  OctupleConfig out = cfg;
  out.kind = OctupleKind::Symmetric;
  out[3] = inner_tangent_circle(cfg[2], cfg[6]);
  out[7] = outer_tangent_circle(cfg[2], cfg[6]);

  report.old_r1 = cfg[1].r;
  report.new_r1 = cfg[1].r;
  if (cfg[1].r <= cfg[5].r) {
    // Grow C1 while keeping it tangent to C4 and the axis.
    const double r1 = cfg[5].r * (1.0 + kEnlargeMargin);
    out[1].r = r1;
    out[1].t = cfg[4].t - tangent_gap(r1, cfg[4].r);
    report.first_enlarged = true;
    report.new_r1 = r1;
  }
  out[4] = inner_tangent_circle(out[1], cfg[5]);
  out[8] = outer_tangent_circle(out[1], cfg[5]);

  for (int i = 0; i < 8; ++i) report.new_t[i] = out.circles[i].t;
  report.top_inner_moved_left = out[3].t < cfg[3].t;
  report.top_outer_between = cfg[6].t < out[7].t && out[7].t < cfg[7].t;
  report.bottom_inner_moved_left = out[4].t < cfg[4].t;
  report.bottom_outer_between = cfg[5].t < out[8].t && out[8].t < cfg[8].t;
  report.output_strictly_ordered = strictly_ordered(out);

  if (!report.output_strictly_ordered && policy == OrderPolicy::Throw) {
    std::ostringstream msg;
    msg << "symmetrized configuration is not strictly ordered: t =";
    for (double t : report.new_t) msg << ' ' << t;
    throw Error(Errc::OrderViolation, msg.str());
  }
  return {out, report};
}

ContradictionReport contradiction_certificate(const OctupleConfig& cfg, double tol) {
  require_sides(cfg);
  if (!(cfg[1].t < cfg[4].t && cfg[4].t < cfg[5].t && cfg[5].t < cfg[8].t) ||
      !(cfg[2].t < cfg[3].t && cfg[3].t < cfg[6].t && cfg[6].t < cfg[7].t)) {
    throw Error(Errc::NotOrdered, "each chain must be ordered: t1<t4<t5<t8 and t2<t3<t6<t7");
  }
  const double span = std::max(cfg[8].t, cfg[7].t) - std::min(cfg[1].t, cfg[2].t);
  const double residual = max_tangency_residual(cfg, OctupleKind::Symmetric);
  if (residual > tol * span) {
    std::ostringstream msg;
    msg << "symmetric tangency residual " << residual << " exceeds " << tol << " x span";
    throw Error(Errc::NotSymmetric, msg.str());
  }

  ContradictionReport rep;
  const double l_top = cfg[3].t - cfg[2].t;
  const double r_top = cfg[7].t - cfg[6].t;
  const double l_bottom = cfg[4].t - cfg[1].t;
  const double r_bottom = cfg[8].t - cfg[5].t;
  rep.m_top = cfg[6].t - cfg[3].t;
  rep.m_bottom = cfg[5].t - cfg[4].t;
  rep.f_top = f_gap(l_top, r_top);
  rep.f_bottom = f_gap(l_bottom, r_bottom);
  rep.monotonicity_bound = rep.f_bottom - rep.f_top;
  rep.nesting_bound = rep.m_top - rep.m_bottom;
  rep.chain_law_deviation = std::abs(rep.m_top - rep.f_top) + std::abs(rep.m_bottom - rep.f_bottom);

  // Nesting (t3 < t4 < t5 < t6) needs m_top > m_bottom.
  rep.nesting_violation = std::max(0.0, -rep.nesting_bound);
  // t1 < t2 and t3 < t4 give l_top < l_bottom; t5 < t6 and t7 < t8 give r_top < r_bottom.
  rep.premise_violation = std::max({0.0, l_top - l_bottom, r_top - r_bottom});
  // With the premises in place the chain laws force m_bottom - m_top up to the
  // monotonicity bound; any shortfall is a breach of the chain laws.
  if (rep.premise_violation == 0.0) {
    rep.monotonicity_violation =
        std::max(0.0, rep.monotonicity_bound - (rep.m_bottom - rep.m_top));
  }

  rep.magnitude = rep.nesting_violation;
  rep.violated = Conflict::Nesting;
  if (rep.monotonicity_violation > rep.magnitude) {
    rep.magnitude = rep.monotonicity_violation;
    rep.violated = Conflict::Monotonicity;
  }
  if (rep.premise_violation > rep.magnitude) {
    rep.magnitude = rep.premise_violation;
    rep.violated = Conflict::Premise;
  }

  std::ostringstream msg;
  switch (rep.violated) {
    case Conflict::Nesting:
      msg << "nesting t3<t4<t5<t6 fails: m_bottom exceeds m_top by " << rep.nesting_violation;
      break;
    case Conflict::Monotonicity:
      msg << "chain laws with monotonicity need m_bottom - m_top >= " << rep.monotonicity_bound
          << " but ordering gives " << (rep.m_bottom - rep.m_top);
      break;
    case Conflict::Premise:
      msg << "ordering premise l < l', r < r' fails by " << rep.premise_violation;
      break;
  }
  rep.description = msg.str();
  return rep;
}

OctupleConfig project_to_symmetric(const OctupleConfig& cfg) {
  const double l_top = cfg[3].t - cfg[2].t;
  const double r_top = cfg[7].t - cfg[6].t;
  const double l_bottom = cfg[4].t - cfg[1].t;
  const double r_bottom = cfg[8].t - cfg[5].t;
  if (!(l_top > 0.0 && r_top > 0.0 && l_bottom > 0.0 && r_bottom > 0.0)) {
    throw Error(Errc::NotOrdered, "projection needs positive outer gaps on both chains");
  }
  const Quad top = build_chain(l_top, r_top, cfg[2].t, cfg[2].r, Side::Above);
  const Quad bottom = build_chain(l_bottom, r_bottom, cfg[1].t, cfg[1].r, Side::Below);
  OctupleConfig out;
  out.kind = OctupleKind::Symmetric;
  out[2] = top[0];
  out[3] = top[1];
  out[6] = top[2];
  out[7] = top[3];
  out[1] = bottom[0];
  out[4] = bottom[1];
  out[5] = bottom[2];
  out[8] = bottom[3];
  return out;
}

}  // namespace crep::chains
