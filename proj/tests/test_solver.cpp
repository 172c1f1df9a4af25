#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "crep/chains.hpp"
#include "crep/error.hpp"
#include "crep/solver.hpp"

using namespace crep;
using namespace crep::solver;

namespace {

// Same-side pairs of the listed labels that are not in `touching`, by brute
// enumeration over the side table of the octuple.
std::set<LabelPair> expected_disjoint(const std::vector<int>& labels, const std::set<LabelPair>& touching) {
  const std::set<int> above{2, 3, 6, 7};
  std::set<LabelPair> out;
  for (int a : labels) {
    for (int b : labels) {
      if (a < b && above.count(a) == above.count(b) && !touching.count({a, b})) out.insert({a, b});
    }
  }
  return out;
}

std::set<LabelPair> as_set(const std::vector<LabelPair>& v) {
  std::set<LabelPair> out;
  for (auto [a, b] : v) out.insert({std::min(a, b), std::max(a, b)});
  return out;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("constraint systems") {
  const auto induced = build_constraint_system(SystemKind::Induced);
  CHECK(induced.equalities.size() == 4);
  CHECK(induced.ordering.size() == 7);
  const std::set<LabelPair> induced_touch{{1, 4}, {2, 7}, {3, 6}, {5, 8}};
  CHECK(as_set(induced.disjoint) == expected_disjoint(induced.labels, induced_touch));
  CHECK(as_set(induced.disjoint) ==
        std::set<LabelPair>{{1, 5}, {4, 8}, {1, 8}, {4, 5}, {2, 3}, {2, 6}, {3, 7}, {6, 7}});

  const auto sym = build_constraint_system(SystemKind::Symmetric);
  CHECK(sym.equalities.size() == 8);
  CHECK(as_set(sym.disjoint) == std::set<LabelPair>{{1, 5}, {4, 8}, {2, 6}, {3, 7}});

  const auto chain = build_constraint_system(SystemKind::SingleChainTop);
  CHECK(chain.labels == std::vector<int>{2, 3, 6, 7});
  CHECK(chain.equalities.size() == 4);
  CHECK(chain.disjoint.size() == 2);

  CHECK(parse_system_kind("single_chain_top") == SystemKind::SingleChainTop);
  CHECK_THROWS_AS(parse_system_kind("pentagon"), Error);
}

TEST_CASE("residuals") {
  const auto sys = build_constraint_system(SystemKind::SingleChainTop);
  const auto q = chains::build_chain(1.3, 0.4, 0.7, 2.0, geom::Side::Above);
  Assignment exact;
  for (const auto& c : q) {
    exact.t.push_back(c.t);
    exact.r.push_back(c.r);
  }
  for (double v : residuals(sys, exact)) CHECK(std::abs(v) <= 1e-12);

  Assignment swapped = exact;
  std::swap(swapped.t[1], swapped.t[2]);
  const auto res = residuals(sys, swapped);
  const std::size_t first_order = sys.equalities.size();
  CHECK(res[first_order + 1] > 0);

  Assignment short_one{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(residuals(sys, short_one), Error);

  // The symmetric system has no exact solution; random points never zero it.
  const auto symmetric = build_constraint_system(SystemKind::Symmetric);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    Assignment a;
    for (int k = 0; k < 8; ++k) {
      a.t.push_back(u(rng));
      a.r.push_back(std::exp(8 * u(rng) - 4));
    }
    std::sort(a.t.begin(), a.t.end());
    CHECK(residual_norm(symmetric, a) > 0);
  }
}

TEST_CASE("residuals are similarity invariant") {
  const auto sys = build_constraint_system(SystemKind::Induced);
  Assignment a{{0, 0.1, 0.2, 0.35, 0.5, 0.6, 0.8, 1.0}, {0.02, 0.3, 0.01, 0.5, 0.04, 0.2, 0.06, 0.3}};
  Assignment b = a;
  for (auto& t : b.t) t = 3.5 * t - 2.0;
  for (auto& r : b.r) r *= 3.5;
  const auto ra = residuals(sys, a);
  const auto rb = residuals(sys, b);
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(rb[i] == doctest::Approx(ra[i]).epsilon(1e-12));
}

TEST_CASE("single-chain control solves") {
  const auto sys = build_constraint_system(SystemKind::SingleChainTop);
  const auto result = solve_feasibility(sys, 1, 20, 5000);
  CHECK(result.residual < 1e-10);
  CHECK(result.restarts_used == 20);
  CHECK(result.seed == 1);
  // The solution is a genuine four-chain.
  chains::Quad q;
  for (int i = 0; i < 4; ++i) q[i] = {result.best.t[i], result.best.r[i], geom::Side::Above};
  const auto gaps = chains::chain_gaps_check(q, 1e-8);
  CHECK(std::abs(gaps.middle * gaps.span - gaps.left * gaps.right) <= 1e-8 * gaps.span * gaps.span);
}

TEST_CASE("empty system has zero residual") {
  ConstraintSystem sys;
  sys.labels = {1, 2};
  sys.sides = {geom::Side::Below, geom::Side::Above};
  const auto result = solve_feasibility(sys, 5, 3, 10);
  CHECK(result.residual == 0.0);
  CHECK_THROWS_AS(solve_feasibility(sys, 5, 0, 10), Error);
}

TEST_CASE("determinism and thread independence") {
  const auto sys = build_constraint_system(SystemKind::Induced);
  const auto a = solve_feasibility(sys, 42, 12, 300);
  const auto b = solve_feasibility(sys, 42, 12, 300);
  const auto c = solve_feasibility(sys, 42, 12, 300, {4});
  CHECK(a.best == b.best);
  CHECK(a.best == c.best);
  CHECK(a.best_restart == c.best_restart);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].assignment == c.runs[i].assignment);
    CHECK(a.runs[i].residual == c.runs[i].residual);
  }
  const auto other = solve_feasibility(sys, 43, 12, 300);
  CHECK_FALSE(other.best == a.best);
}

TEST_CASE("more restarts never hurt") {
  const auto sys = build_constraint_system(SystemKind::Symmetric);
  double previous = INFINITY;
  for (int restarts = 1; restarts <= 8; ++restarts) {
    const double r = solve_feasibility(sys, 9, restarts, 300).residual;
    CHECK(r <= previous);
    previous = r;
  }
}

TEST_CASE("octuple round trip") {
  const auto sys = build_constraint_system(SystemKind::Symmetric);
  Assignment a{{0, 0.1, 0.2, 0.35, 0.5, 0.6, 0.8, 1.0}, {1, 2, 3, 4, 5, 6, 7, 8}};
  const auto cfg = to_octuple(sys, a);
  CHECK(cfg.kind == chains::OctupleKind::Symmetric);
  CHECK(cfg[3].side == geom::Side::Above);
  CHECK(cfg[4].side == geom::Side::Below);
  CHECK(from_octuple(sys, cfg) == a);
}

}  // TEST_SUITE
