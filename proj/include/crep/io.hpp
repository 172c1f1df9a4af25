#pragma once

// JSON forms of graphs, circle sets, solver assignments and reports.

#include <cstdint>
#include <string>

#include "json.hpp"

#include "crep/chains.hpp"
#include "crep/graphs.hpp"
#include "crep/representation.hpp"
#include "crep/solver.hpp"

namespace crep::io {

using Json = nlohmann::json;

/// Vertices and edges listed in natural id order; rotation entries are edge
/// ids suffixed "+" (first end) or "-" (second end).
Json graph_to_json(const graphs::PlaneMultigraph& g);
graphs::PlaneMultigraph graph_from_json(const Json& j);

Json circles_to_json(const representation::CircleSet& cs);
representation::CircleSet circles_from_json(const Json& j);

struct SavedAssignment {
  solver::SystemKind system = solver::SystemKind::Custom;
  std::vector<int> labels;
  solver::Assignment assignment;
  double residual = 0.0;
  std::uint64_t seed = 0;
  int restarts = 0;
  int iterations = 0;
};

Json assignment_to_json(const SavedAssignment& a);
SavedAssignment assignment_from_json(const Json& j);

Json to_json(const graphs::ValidationReport& r);
Json to_json(const representation::VerificationReport& r, const graphs::PlaneMultigraph& target);
Json to_json(const chains::ContradictionReport& r);

/// Throws IoFailure or ParseFailure.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// "v2" < "v10": digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace crep::io
