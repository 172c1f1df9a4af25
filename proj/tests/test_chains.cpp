#include <cmath>
#include <random>

#include "doctest.h"

#include "crep/chains.hpp"
#include "crep/error.hpp"
#include "crep/geom.hpp"

using namespace crep;
using namespace crep::chains;
using geom::Side;

namespace {

// Touching test from the plane geometry: centre distance equals r_a + r_b.
double contact_defect(const AxisTangentCircle& a, const AxisTangentCircle& b) {
  const auto ca = geom::axis_tangent_to_circle(a);
  const auto cb = geom::axis_tangent_to_circle(b);
  return std::abs(geom::distance(ca.center(), cb.center()) - (a.r + b.r));
}

bool touches(const AxisTangentCircle& a, const AxisTangentCircle& b) {
  return geom::classify_intersection(geom::axis_tangent_to_circle(a), geom::axis_tangent_to_circle(b)).tag ==
         geom::IntersectionTag::Touching;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::PreconditionFailed;
}

}  // namespace

TEST_SUITE("chains") {

TEST_CASE("tangent_gap against the plane classifier") {
  CHECK(tangent_gap(1, 1) == doctest::Approx(2.0));
  CHECK(tangent_gap(9, 4) == doctest::Approx(12.0));
  CHECK(tangent_gap(1, 0.25) == doctest::Approx(1.0));
  CHECK(touches({0, 9, Side::Above}, {12, 4, Side::Above}));
  CHECK(touches({0, 1, Side::Above}, {1, 0.25, Side::Above}));
  CHECK_FALSE(touches({0, 1, Side::Above}, {1.1, 0.25, Side::Above}));
  CHECK(code_of([] { tangent_gap(0, 1); }) == Errc::NonpositiveRadius);
}

TEST_CASE("inner_tangent_circle examples") {
  struct Case {
    AxisTangentCircle a, b;
    double t, r;
  };
  for (const Case& c : {Case{{0, 1, Side::Above}, {4, 1, Side::Above}, 2, 1},
                        Case{{0, 1, Side::Above}, {2, 1, Side::Above}, 1, 0.25},
                        Case{{0, 9, Side::Above}, {12, 4, Side::Above}, 7.2, 1.44}}) {
    const auto got = inner_tangent_circle(c.a, c.b);
    CHECK(got.t == doctest::Approx(c.t));
    CHECK(got.r == doctest::Approx(c.r));
    CHECK(contact_defect(got, c.a) <= 1e-12 * c.b.t);
    CHECK(contact_defect(got, c.b) <= 1e-12 * c.b.t);
    CHECK(got.side == Side::Above);
  }
  CHECK(code_of([] { inner_tangent_circle({0, 1, Side::Above}, {2, 1, Side::Below}); }) == Errc::SideMismatch);
}

TEST_CASE("outer_tangent_circle examples") {
  const auto c1 = outer_tangent_circle({0, 4, Side::Above}, {6, 1, Side::Above});
  CHECK(c1.t == doctest::Approx(12.0));
  CHECK(c1.r == doctest::Approx(9.0));
  CHECK(contact_defect(c1, {0, 4, Side::Above}) <= 1e-12 * 12);
  CHECK(contact_defect(c1, {6, 1, Side::Above}) <= 1e-12 * 12);

  const auto c2 = outer_tangent_circle({0, 1, Side::Below}, {3, 0.25, Side::Below});
  CHECK(c2.t == doctest::Approx(6.0));
  CHECK(c2.r == doctest::Approx(9.0));
  CHECK(c2.side == Side::Below);

  CHECK(code_of([] { outer_tangent_circle({0, 1, Side::Above}, {3, 1, Side::Above}); }) == Errc::NoOuterSolution);
}

TEST_CASE("chain_gaps_check") {
  const double s2 = std::sqrt(2.0);
  const Quad q{{{0, 1, Side::Above},
                {1, 0.25, Side::Above},
                {s2, 3 - 2 * s2, Side::Above},
                {1 + s2, (3 + 2 * s2) / 4, Side::Above}}};
  const auto g = chain_gaps_check(q);
  CHECK(g.left == doctest::Approx(1.0));
  CHECK(g.middle == doctest::Approx(s2 - 1));
  CHECK(g.right == doctest::Approx(1.0));
  CHECK(g.span == doctest::Approx(1 + s2));
  CHECK(std::abs(g.middle * g.span - g.left * g.right) <= 1e-9 * g.span * g.span);

  Quad broken = q;
  broken[3].t += 0.3;  // C1 and C4 no longer touch
  CHECK(code_of([&] { chain_gaps_check(broken); }) == Errc::NotAChain);
}

TEST_CASE("f_gap values and root property") {
  CHECK(f_gap(1, 1) == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-12));
  CHECK(f_gap(1, 2) == doctest::Approx((-3 + std::sqrt(17.0)) / 2).epsilon(1e-12));
  CHECK(f_gap(1e-12, 5) < 1e-11);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    const double l = std::exp(u(rng));
    const double r = std::exp(u(rng));
    const double m = f_gap(l, r);
    CHECK(m > 0);
    CHECK(std::abs(m * (l + m + r) - l * r) <= 1e-12 * l * r);
    CHECK(std::abs(f_gap(r, l) - m) <= 1e-12 * m);
  }
  CHECK(code_of([] { f_gap(0, 1); }) == Errc::NonpositiveInput);
}

TEST_CASE("f_gap_gradient matches central differences") {
  const auto [gl, gr] = f_gap_gradient(1, 1);
  CHECK(gl == doctest::Approx((std::sqrt(2.0) - 1) / 2));
  CHECK(gr == doctest::Approx((std::sqrt(2.0) - 1) / 2));
  const auto [hl, hr] = f_gap_gradient(1, 2);
  CHECK(hl == doctest::Approx(0.34887).epsilon(1e-4));
  CHECK(hr == doctest::Approx(0.10634).epsilon(1e-4));
  const double h = 1e-6;
  for (auto [l, r] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {0.3, 7.0}}) {
    const auto [al, ar] = f_gap_gradient(l, r);
    CHECK(std::abs(al - (f_gap(l + h, r) - f_gap(l - h, r)) / (2 * h)) < 1e-6);
    CHECK(std::abs(ar - (f_gap(l, r + h) - f_gap(l, r - h)) / (2 * h)) < 1e-6);
  }
  CHECK(code_of([] { f_gap_gradient(1, -1); }) == Errc::NonpositiveInput);
}

TEST_CASE("build_chain example and similarity") {
  const double s2 = std::sqrt(2.0);
  const auto q = build_chain(1, 1, 0, 1, Side::Above);
  const std::array<double, 4> t{0, 1, s2, 1 + s2};
  const std::array<double, 4> r{1, 0.25, 3 - 2 * s2, (3 + 2 * s2) / 4};
  for (int i = 0; i < 4; ++i) {
    CHECK(q[i].t == doctest::Approx(t[i]).epsilon(1e-14));
    CHECK(q[i].r == doctest::Approx(r[i]).epsilon(1e-14));
  }
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) CHECK(contact_defect(q[i], q[j]) < 1e-12);
  const double d14 = q[3].t - q[0].t;
  CHECK(std::abs(d14 * d14 - 4 * q[0].r * q[3].r) < 1e-12);

  const double s = 3.7;
  const auto scaled = build_chain(s * 1, s * 1, 0, s * 1, Side::Above);
  for (int i = 0; i < 4; ++i) {
    CHECK(scaled[i].t == doctest::Approx(s * q[i].t));
    CHECK(scaled[i].r == doctest::Approx(s * q[i].r));
  }
  const auto moved = build_chain(1, 1, 5, 1, Side::Above);
  for (int i = 0; i < 4; ++i) CHECK(moved[i].t == doctest::Approx(q[i].t + 5));
  CHECK(code_of([] { build_chain(1, 1, 0, 0, Side::Above); }) == Errc::NonpositiveInput);
}

TEST_CASE("symmetrize top-side example") {
  // Top side from the replacement argument; bottom side chosen so that the
  // induced tangencies hold and C1 needs enlarging (r1 = r5).
  const double r4 = 3.2 * 3.2 / 4.0;
  const double r8 = 4.6 * 4.6 / 4.0;
  const auto cfg = make_octuple(
      {{{-1, 1}, {0, 1}, {2, 0.25}, {2.2, r4}, {2.4, 1}, {2.5, 0.25}, {6, 9}, {7, r8}}}, OctupleKind::Induced);
  REQUIRE(max_tangency_residual(cfg, OctupleKind::Induced) < 1e-12);

  const auto [out, rep] = symmetrize(cfg, 1e-8, OrderPolicy::Report);
  CHECK(out[3].t == doctest::Approx(5.0 / 3.0));
  CHECK(out[3].r == doctest::Approx(25.0 / 36.0));
  CHECK(out[7].t == doctest::Approx(5.0));
  CHECK(out[7].r == doctest::Approx(6.25));
  CHECK(rep.top_inner_moved_left);
  CHECK(rep.top_outer_between);
  CHECK(rep.first_enlarged);
  CHECK(rep.new_r1 > out[5].r);
  for (auto [i, j] : {std::pair{2, 3}, {3, 6}, {6, 7}, {2, 7}, {1, 4}, {4, 5}, {5, 8}, {1, 8}}) {
    CHECK(contact_defect(out[i], out[j]) <= 1e-12 * 10);
  }
  // An exactly symmetric output would realize the impossible configuration.
  CHECK_FALSE(rep.output_strictly_ordered);
  CHECK(code_of([&] { symmetrize(cfg); }) == Errc::OrderViolation);

  auto off = cfg;
  off[7].t += 0.01;
  CHECK(code_of([&] { symmetrize(off); }) == Errc::PreconditionFailed);
}

TEST_CASE("replacement inequalities on random top sides") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    const double r2 = 0.5 + 4 * u(rng);
    const double r6 = r2 * u(rng);
    const AxisTangentCircle c2{0, r2, Side::Above};
    const AxisTangentCircle c6{tangent_gap(r2, r6) * (1.0 + 2 * u(rng)), r6, Side::Above};
    // C3 touches C6 and is smaller than the inner solution, so it clears C2.
    const auto c3_star = inner_tangent_circle(c2, c6);
    const double r3 = c3_star.r * u(rng);
    const AxisTangentCircle c3{c6.t - tangent_gap(r3, r6), r3, Side::Above};
    // C7 touches C2 and is larger than the outer solution, so it clears C6.
    const auto c7_star = outer_tangent_circle(c2, c6);
    const double r7 = c7_star.r * (1.0 + 3 * u(rng));
    const AxisTangentCircle c7{tangent_gap(r2, r7), r7, Side::Above};
    REQUIRE(c3.t > tangent_gap(r2, r3));
    REQUIRE(c7.t - c6.t > tangent_gap(r6, r7));

    const auto c3p = inner_tangent_circle(c2, c6);
    const auto c7p = outer_tangent_circle(c2, c6);
    const bool inner_ok = c3p.r > c3.r && c3p.t < c3.t && c2.t < c3p.t;
    const bool outer_ok = c7p.r < c7.r && c6.t < c7p.t && c7p.t < c7.t;
    if (!inner_ok || !outer_ok) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("contradiction certificate") {
  const auto top = build_chain(1, 1, 0, 1, Side::Above);
  const auto bottom = build_chain(1.7, 1.7, -0.5, 1.3, Side::Below);
  OctupleConfig cfg;
  cfg.kind = OctupleKind::Symmetric;
  cfg[2] = top[0], cfg[3] = top[1], cfg[6] = top[2], cfg[7] = top[3];
  cfg[1] = bottom[0], cfg[4] = bottom[1], cfg[5] = bottom[2], cfg[8] = bottom[3];
  CHECK(cfg[5].t == doctest::Approx(1.9042).epsilon(1e-4));
  CHECK(cfg[6].t == doctest::Approx(1.4142).epsilon(1e-4));

  const auto rep = contradiction_certificate(cfg);
  CHECK(rep.violated == Conflict::Nesting);
  // f(1.7,1.7) - f(1,1) = 0.7(√2 - 1).
  CHECK(rep.m_bottom - rep.m_top == doctest::Approx(0.7 * (std::sqrt(2.0) - 1)));
  CHECK(rep.magnitude == doctest::Approx(0.29).epsilon(0.02 / 0.29));
  CHECK(rep.chain_law_deviation < 1e-12);

  auto swapped = cfg;
  std::swap(swapped[4].t, swapped[5].t);
  CHECK(code_of([&] { contradiction_certificate(swapped); }) == Errc::NotOrdered);

  auto loose = cfg;
  loose[7].t += 1e-3;
  CHECK(code_of([&] { contradiction_certificate(loose); }) == Errc::NotSymmetric);
}

TEST_CASE("certificate is positive on projected random configurations") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 300; ++i) {
    const auto top = build_chain(u(rng), u(rng), 0, u(rng), Side::Above);
    const auto bottom = build_chain(u(rng), u(rng), u(rng) - 1.5, u(rng), Side::Below);
    OctupleConfig cfg;
    cfg.kind = OctupleKind::Symmetric;
    cfg[2] = top[0], cfg[3] = top[1], cfg[6] = top[2], cfg[7] = top[3];
    cfg[1] = bottom[0], cfg[4] = bottom[1], cfg[5] = bottom[2], cfg[8] = bottom[3];
    const auto rep = contradiction_certificate(project_to_symmetric(cfg));
    CHECK(rep.magnitude > 0);
  }
}

}  // TEST_SUITE
