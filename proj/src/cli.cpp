#include "crep/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

#include "CLI11.hpp"

#include "crep/chains.hpp"
#include "crep/error.hpp"
#include "crep/geom.hpp"
#include "crep/graphs.hpp"
#include "crep/io.hpp"
#include "crep/representation.hpp"
#include "crep/solver.hpp"

namespace crep::cli {

namespace {

struct BuildArgs {
  std::string kind;
  std::string variant = "gadget";
  std::string output;
};

struct VerifyArgs {
  std::string circles;
  std::string graph;
};

struct SolveArgs {
  std::string system;
  std::uint64_t seed = 1;
  int restarts = 100;
  int iterations = 2000;
  int threads = 1;
  std::string output;
};

struct CertifyArgs {
  std::string assignment;
  double tol = 1e-8;
  bool project = false;
};

struct RenderArgs {
  std::string circles;
  std::string graph;
  std::string output;
};

graphs::PlaneMultigraph build_graph(const BuildArgs& a) {
  if (a.kind == "octahedron") return graphs::build_octahedron();
  if (a.kind == "mini-gadget") return graphs::build_mini_gadget_octahedral().graph;
  if (a.kind == "mini-bigadget") return graphs::build_mini_bigadget_octahedral().graph;
  if (a.kind == "m") return graphs::build_base_multigraph_m().graph;
  const auto variant = a.variant == "bigadget" ? graphs::Variant::Bigadget : graphs::Variant::Gadget;
  return graphs::build_counterexample_68(variant).graph;
}

int do_build(const BuildArgs& a, std::ostream& out) {
  const auto g = build_graph(a);
  if (!a.output.empty()) io::write_json_file(a.output, io::graph_to_json(g));
  out << io::to_json(graphs::validate(g)).dump(2) << '\n';
  return 0;
}

int do_verify(const VerifyArgs& a, std::ostream& out) {
  const auto cs = io::circles_from_json(io::read_json_file(a.circles));
  const auto target = io::graph_from_json(io::read_json_file(a.graph));
  const auto report = representation::verify_representation(cs, target);
  out << io::to_json(report, target).dump(2) << '\n';
  return report.ok ? 0 : 1;
}

int do_solve(const SolveArgs& a, std::ostream& out) {
  const auto sys = solver::build_constraint_system(solver::parse_system_kind(a.system));
  const auto result = solver::solve_feasibility(sys, a.seed, a.restarts, a.iterations, {a.threads});
  io::SavedAssignment saved{sys.kind, sys.labels, result.best, result.residual, a.seed, a.restarts, a.iterations};
  if (!a.output.empty()) io::write_json_file(a.output, io::assignment_to_json(saved));
  io::Json summary = {{"system", std::string(solver::to_string(sys.kind))},
                      {"residual", result.residual},
                      {"best_restart", result.best_restart},
                      {"seed", a.seed},
                      {"restarts", a.restarts},
                      {"iterations", a.iterations}};
  out << summary.dump(2) << '\n';
  return 0;
}

int do_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto saved = io::assignment_from_json(io::read_json_file(a.assignment));
  std::vector<int> sorted = saved.labels;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}) {
    err << "certify needs an eight-circle assignment labelled 1..8\n";
    return 1;
  }
  chains::OctupleConfig cfg;
  cfg.kind = chains::OctupleKind::Symmetric;
  for (std::size_t i = 0; i < saved.labels.size(); ++i) {
    const int label = saved.labels[i];
    cfg[label] = {saved.assignment.t[i], saved.assignment.r[i], chains::octuple_side(label)};
  }
  try {
    if (a.project) cfg = chains::project_to_symmetric(cfg);
    const auto report = chains::contradiction_certificate(cfg, a.tol);
    out << io::to_json(report).dump(2) << '\n';
    return report.magnitude > 0.0 ? 0 : 1;
  } catch (const Error& e) {
    if (e.code() != Errc::NotSymmetric && e.code() != Errc::NotOrdered) throw;
    out << io::Json{{"error", std::string(to_string(e.code()))}, {"detail", e.what()}}.dump(2) << '\n';
    return 1;
  }
}

int do_render(const RenderArgs& a) {
  if (!a.circles.empty()) {
    representation::render_svg(io::circles_from_json(io::read_json_file(a.circles)), a.output);
  } else {
    representation::render_svg(io::graph_from_json(io::read_json_file(a.graph)), a.output);
  }
  return 0;
}

// Returns false when CREP_EPS is set but unusable.
bool apply_eps_override(std::ostream& err) {
  const char* value = std::getenv("CREP_EPS");
  if (value == nullptr || *value == '\0') return true;
  char* end = nullptr;
  const double eps = std::strtod(value, &end);
  if (end == value || *end != '\0' || !(eps > 0.0) || !(eps < 1.0)) {
    err << "CREP_EPS must be a number in (0, 1), got '" << value << "'\n";
    return false;
  }
  geom::set_eps(eps);
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circle representations: graph constructions, verification and infeasibility probes", "crep"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "build a graph, print its validation report");
  build_cmd->add_option("kind", build.kind, "graph to build")
      ->required()
      ->check(CLI::IsMember({"octahedron", "mini-gadget", "mini-bigadget", "m", "counterexample68"}));
  build_cmd->add_option("--variant", build.variant, "attachment pattern for counterexample68")
      ->check(CLI::IsMember({"gadget", "bigadget"}));
  build_cmd->add_option("-o,--output", build.output, "write graph JSON here");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check a circle set against a plane multigraph");
  verify_cmd->add_option("--circles", verify.circles, "circle-set JSON")->required();
  verify_cmd->add_option("--graph", verify.graph, "graph JSON")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "multi-start feasibility search");
  solve_cmd->add_option("--system", solve.system, "constraint system")
      ->required()
      ->check(CLI::IsMember({"induced", "symmetric", "single-chain"}));
  solve_cmd->add_option("--seed", solve.seed, "base seed");
  solve_cmd->add_option("--restarts", solve.restarts, "independent starts")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--iters", solve.iterations, "descent iterations per start")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--threads", solve.threads, "worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("-o,--output", solve.output, "write assignment JSON here");

  CertifyArgs certify;
  auto* certify_cmd = app.add_subcommand("certify", "contradiction certificate for an eight-circle assignment");
  certify_cmd->add_option("--assignment", certify.assignment, "assignment JSON")->required();
  certify_cmd->add_option("--tol", certify.tol, "tangency tolerance relative to the span")
      ->check(CLI::PositiveNumber);
  certify_cmd->add_flag("--project", certify.project, "snap onto exact chains before certifying");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "draw a circle set or graph as SVG");
  auto* render_circles = render_cmd->add_option("--circles", render.circles, "circle-set JSON");
  auto* render_graph = render_cmd->add_option("--graph", render.graph, "graph JSON");
  render_circles->excludes(render_graph);
  render_cmd->add_option("-o,--output", render.output, "SVG path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (render_cmd->parsed() && render.circles.empty() && render.graph.empty()) {
      throw CLI::RequiredError("render needs --circles or --graph");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!apply_eps_override(err)) return 2;

  try {
    if (build_cmd->parsed()) return do_build(build, out);
    if (verify_cmd->parsed()) return do_verify(verify, out);
    if (solve_cmd->parsed()) return do_solve(solve, out);
    if (certify_cmd->parsed()) return do_certify(certify, out, err);
    return do_render(render);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  }
}

}  // namespace crep::cli
