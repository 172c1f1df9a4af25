#pragma once

// Multi-start least-squares feasibility search over axis-tangent circle
// configurations. Used to exhibit the residual floor of the octuple systems.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crep/chains.hpp"

namespace crep::solver {

enum class SystemKind { Induced, Symmetric, SingleChainTop, Custom };

std::string_view to_string(SystemKind kind);
/// Accepts "induced", "symmetric", "single-chain"/"single_chain_top", "custom".
SystemKind parse_system_kind(std::string_view name);

using LabelPair = std::pair<int, int>;

/// Circles are named by their 1-based labels and listed in t-order. During a
/// solve the first and last abscissae are pinned to 0 and 1.
struct ConstraintSystem {
  SystemKind kind = SystemKind::Custom;
  std::vector<int> labels;
  std::vector<geom::Side> sides;
  std::vector<LabelPair> equalities;  // (t_j - t_i)^2 - 4 r_i r_j = 0
  std::vector<LabelPair> ordering;    // t_j - t_i >= margin * span, consecutive labels
  std::vector<LabelPair> disjoint;    // (t_j - t_i)^2 - 4 r_i r_j >= 0
  double margin = 1e-4;

  int position(int label) const;
  std::size_t term_count() const { return equalities.size() + ordering.size() + disjoint.size(); }
};

ConstraintSystem build_constraint_system(SystemKind kind);

/// Circles with the given labels (t-ordered, sides from the octuple layout),
/// the listed touching pairs as equalities, every other same-side pair as a
/// disjointness term.
ConstraintSystem custom_system(std::vector<int> labels, std::vector<LabelPair> touching);

/// Values in the order of ConstraintSystem::labels.
struct Assignment {
  std::vector<double> t;
  std::vector<double> r;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Equality terms raw, inequality terms as hinges; quadratic terms divided by
/// span^2 and linear ones by span, so the vector is scale invariant.
std::vector<double> residuals(const ConstraintSystem& sys, const Assignment& a);
double residual_norm(const ConstraintSystem& sys, const Assignment& a);

struct RunResult {
  Assignment assignment;
  double residual = 0.0;
};

struct SolveResult {
  Assignment best;
  double residual = 0.0;
  int restarts_used = 0;
  std::uint64_t seed = 0;
  int best_restart = 0;
  /// Per-restart outcomes in restart order.
  std::vector<RunResult> runs;
};

struct SolveOptions {
  /// Worker threads for independent restarts; results do not depend on it.
  int threads = 1;
};

SolveResult solve_feasibility(const ConstraintSystem& sys, std::uint64_t seed, int restarts,
                              int iterations, const SolveOptions& options = {});

/// Octuple view of an eight-circle assignment.
chains::OctupleConfig to_octuple(const ConstraintSystem& sys, const Assignment& a);
Assignment from_octuple(const ConstraintSystem& sys, const chains::OctupleConfig& cfg);

}  // namespace crep::solver
