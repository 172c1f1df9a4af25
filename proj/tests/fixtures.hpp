#pragma once

// Circle sets and hand-built target multigraphs shared by the unit tests and
// the acceptance run.

#include <cmath>
#include <random>

#include "crep/geom.hpp"
#include "crep/graphs.hpp"
#include "crep/representation.hpp"

namespace fixtures {

using crep::geom::GeneralizedCircle;
using crep::graphs::PlaneMultigraph;
using crep::representation::CircleSet;

inline CircleSet two_crossing() {
  CircleSet cs;
  cs.add("a", GeneralizedCircle::circle({0, 0}, 1));
  cs.add("b", GeneralizedCircle::circle({1, 0}, 1));
  return cs;
}

inline CircleSet doubled_triangle() {
  CircleSet cs;
  cs.add("a", GeneralizedCircle::circle({0, 0}, 1));
  cs.add("b", GeneralizedCircle::circle({2, 0}, 1));
  cs.add("c", GeneralizedCircle::circle({1, std::sqrt(3.0)}, 1));
  return cs;
}

inline CircleSet triple_point() {
  CircleSet cs;
  cs.add("a", GeneralizedCircle::circle({1, 0}, 1));
  cs.add("b", GeneralizedCircle::circle({0, 1}, 1));
  cs.add("c", GeneralizedCircle::circle({-1, 0}, 1));
  return cs;
}

// Two vertices joined by four parallel edges.
inline PlaneMultigraph quadruple_digon() {
  PlaneMultigraph g;
  const int u = g.add_vertex("u");
  const int v = g.add_vertex("v");
  for (int i = 0; i < 4; ++i) g.add_edge(u, v, "e" + std::to_string(i));
  return g;
}

// Triangle with every edge doubled.
inline PlaneMultigraph doubled_triangle_graph() {
  PlaneMultigraph g;
  const int x = g.add_vertex("x");
  const int y = g.add_vertex("y");
  const int z = g.add_vertex("z");
  g.add_edge(x, y, "xy1");
  g.add_edge(x, y, "xy2");
  g.add_edge(y, z, "yz1");
  g.add_edge(y, z, "yz2");
  g.add_edge(z, x, "zx1");
  g.add_edge(z, x, "zx2");
  return g;
}

// One vertex carrying two loops.
inline PlaneMultigraph double_loop() {
  PlaneMultigraph g;
  const int u = g.add_vertex("u");
  g.add_edge(u, u, "l1");
  g.add_edge(u, u, "l2");
  return g;
}

// Random Moebius map whose pole keeps at least `margin` away from every member.
inline crep::geom::MobiusMap random_admissible_map(const CircleSet& cs, std::mt19937_64& rng, double margin = 0.05) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const crep::geom::Complex a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)}, d{u(rng), u(rng)};
    if (std::abs(a * d - b * c) < 0.1) continue;
    const crep::geom::MobiusMap m(a, b, c, d);
    const auto pole = m.pole();
    bool clear = true;
    if (!pole.is_infinite()) {
      for (const auto& member : cs.members()) {
        clear = clear && std::abs(member.shape.signed_distance(pole.point())) > margin;
      }
    }
    if (clear) return m;
  }
}

}  // namespace fixtures
