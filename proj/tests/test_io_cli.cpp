#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "crep/cli.hpp"
#include "crep/error.hpp"
#include "crep/graphs.hpp"
#include "crep/io.hpp"
#include "crep/solver.hpp"
#include "fixtures.hpp"

using namespace crep;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("crep_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void check_same_embedding(const graphs::PlaneMultigraph& a, const graphs::PlaneMultigraph& b) {
  REQUIRE(a.order() == b.order());
  REQUIRE(a.size() == b.size());
  for (int e = 0; e < a.size(); ++e) {
    const auto eb = b.find_edge(a.edge(e).id);
    REQUIRE(eb.has_value());
    for (int s = 0; s < 2; ++s) CHECK(a.name(a.edge(e).ends[s]) == b.name(b.edge(*eb).ends[s]));
  }
  for (int v = 0; v < a.order(); ++v) {
    const auto vb = b.find_vertex(a.name(v));
    REQUIRE(vb.has_value());
    const auto& ra = a.rotation(v);
    const auto& rb = b.rotation(*vb);
    REQUIRE(ra.size() == rb.size());
    // Equal up to a cyclic shift.
    bool found = false;
    for (std::size_t shift = 0; shift < ra.size() && !found; ++shift) {
      bool same = true;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const auto x = ra[i];
        const auto y = rb[(i + shift) % rb.size()];
        same = same && a.edge(x.edge).id == b.edge(y.edge).id && x.side == y.side;
      }
      found = same;
    }
    CHECK(found);
  }
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("graph json round trip") {
  for (const auto& g : {graphs::build_octahedron(), graphs::build_base_multigraph_m().graph,
                        graphs::build_counterexample_68(graphs::Variant::Bigadget).graph,
                        fixtures::double_loop()}) {
    const auto j = io::graph_to_json(g);
    const auto back = io::graph_from_json(j);
    check_same_embedding(g, back);
    CHECK(graphs::validate(back) == graphs::validate(g));
    CHECK(io::graph_to_json(back) == j);
  }
  const auto j = io::graph_to_json(graphs::build_octahedron());
  CHECK(j.at("vertices").is_array());
  CHECK(j.at("edges")[0].at("ends").size() == 2);
  const std::string tok = j.at("rotation").at("t")[0].get<std::string>();
  CHECK((tok.back() == '+' || tok.back() == '-'));
}

TEST_CASE("malformed graph json") {
  auto j = io::graph_to_json(graphs::build_octahedron());
  auto missing = j;
  missing.erase("rotation");
  CHECK_THROWS_AS(io::graph_from_json(missing), Error);
  auto dangling = j;
  dangling["edges"][0]["ends"][0] = "nowhere";
  CHECK_THROWS_AS(io::graph_from_json(dangling), Error);
  auto badtoken = j;
  badtoken["rotation"]["t"][0] = "t1*";
  CHECK_THROWS_AS(io::graph_from_json(badtoken), Error);
  auto duplicated = j;
  duplicated["rotation"]["t"][1] = duplicated["rotation"]["t"][0];
  CHECK_THROWS_AS(io::graph_from_json(duplicated), Error);
}

TEST_CASE("circle json round trip") {
  representation::CircleSet cs = fixtures::doubled_triangle();
  cs.add("ax", geom::GeneralizedCircle::line(0, 2, 0));
  const auto j = io::circles_to_json(cs);
  CHECK(j.at("circles").size() == 3);
  CHECK(j.at("line").at("id") == "ax");
  const auto back = io::circles_from_json(j);
  REQUIRE(back.size() == 4);
  CHECK(io::circles_to_json(back) == j);

  const auto plain = io::circles_from_json(io::Json::parse(R"({"circles":[{"id":"c1","cx":0,"cy":0,"r":1}]})"));
  CHECK(plain.size() == 1);
  CHECK_THROWS_AS(io::circles_from_json(io::Json::parse(R"({"circles":[{"id":"c1","cx":0}]})")), Error);
  CHECK_THROWS_AS(io::circles_from_json(io::Json::parse(R"({"circles":[{"id":"c1","cx":0,"cy":0,"r":-1}]})")),
                  Error);
}

TEST_CASE("assignment json round trip") {
  const auto sys = solver::build_constraint_system(solver::SystemKind::Induced);
  const auto res = solver::solve_feasibility(sys, 3, 2, 50);
  io::SavedAssignment saved{sys.kind, sys.labels, res.best, res.residual, 3, 2, 50};
  const auto back = io::assignment_from_json(io::assignment_to_json(saved));
  CHECK(back.system == saved.system);
  CHECK(back.labels == saved.labels);
  CHECK(back.assignment == saved.assignment);
  CHECK(back.residual == saved.residual);
  CHECK(back.seed == 3);
}

TEST_CASE("natural ordering") {
  CHECK(io::natural_less("v2", "v10"));
  CHECK_FALSE(io::natural_less("v10", "v2"));
  CHECK(io::natural_less("a", "b"));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"build", "dodecahedron"}).code == 2);
  CHECK(run({"build", "m", "--bogus"}).code == 2);
  CHECK(run({"solve", "--system", "pentagon"}).code == 2);
  CHECK(run({"render", "-o", "x.svg"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("build, write, read, validate") {
  TempDir dir;
  for (const std::vector<std::string>& kind : std::vector<std::vector<std::string>>{
           {"m"}, {"octahedron"}, {"mini-gadget"}, {"counterexample68", "--variant", "bigadget"}}) {
    std::vector<std::string> args{"build"};
    args.insert(args.end(), kind.begin(), kind.end());
    args.push_back("-o");
    args.push_back(dir / "g.json");
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto printed = io::Json::parse(r.out);
    const auto reread = graphs::validate(io::graph_from_json(io::read_json_file(dir / "g.json")));
    CHECK(io::to_json(reread) == printed);
  }
  const auto m = io::Json::parse(run({"build", "m"}).out);
  CHECK(m.at("order") == 12);
  CHECK(m.at("regular4") == true);
  const auto big = io::Json::parse(run({"build", "counterexample68", "--variant", "bigadget"}).out);
  CHECK(big.at("order") == 68);
  CHECK(big.at("two_connected") == true);
}

TEST_CASE("verify exit codes") {
  TempDir dir;
  io::write_json_file(dir / "two.json", io::circles_to_json(fixtures::two_crossing()));
  io::write_json_file(dir / "tri.json", io::circles_to_json(fixtures::doubled_triangle()));
  io::write_json_file(dir / "triple.json", io::circles_to_json(fixtures::triple_point()));
  io::write_json_file(dir / "digon.json", io::graph_to_json(fixtures::quadruple_digon()));
  io::write_json_file(dir / "dt.json", io::graph_to_json(fixtures::doubled_triangle_graph()));

  const auto good = run({"verify", "--circles", dir / "two.json", "--graph", dir / "digon.json"});
  CHECK(good.code == 0);
  CHECK(io::Json::parse(good.out).at("ok") == true);
  CHECK(run({"verify", "--circles", dir / "tri.json", "--graph", dir / "dt.json"}).code == 0);
  const auto wrong = run({"verify", "--circles", dir / "two.json", "--graph", dir / "dt.json"});
  CHECK(wrong.code == 1);
  CHECK(io::Json::parse(wrong.out).at("ok") == false);
  CHECK(run({"verify", "--circles", dir / "triple.json", "--graph", dir / "dt.json"}).code == 1);
  CHECK(run({"verify", "--circles", dir / "missing.json", "--graph", dir / "dt.json"}).code == 1);
}

TEST_CASE("solve and certify") {
  TempDir dir;
  const auto solved = run({"solve", "--system", "symmetric", "--seed", "1", "--restarts", "4", "--iters", "200",
                           "-o", dir / "a.json"});
  REQUIRE(solved.code == 0);
  const auto summary = io::Json::parse(solved.out);
  CHECK(summary.at("residual").get<double>() > 1e-3);
  const auto saved = io::assignment_from_json(io::read_json_file(dir / "a.json"));
  CHECK(saved.residual == summary.at("residual").get<double>());

  const auto projected = run({"certify", "--assignment", dir / "a.json", "--project"});
  const auto raw = run({"certify", "--assignment", dir / "a.json"});
  CHECK(raw.code == 1);
  const auto raw_json = io::Json::parse(raw.out);
  CHECK(raw_json.contains("error"));
  if (projected.code == 0) {
    CHECK(io::Json::parse(projected.out).at("magnitude").get<double>() > 0);
  } else {
    CHECK(io::Json::parse(projected.out).at("error") == "NotOrdered");
  }

  const auto chain = run({"solve", "--system", "single-chain", "--restarts", "4", "--iters", "100", "-o",
                          dir / "c.json"});
  REQUIRE(chain.code == 0);
  CHECK(run({"certify", "--assignment", dir / "c.json"}).code == 1);
}

TEST_CASE("render") {
  TempDir dir;
  io::write_json_file(dir / "two.json", io::circles_to_json(fixtures::two_crossing()));
  CHECK(run({"render", "--circles", dir / "two.json", "-o", dir / "two.svg"}).code == 0);
  CHECK(fs::exists(dir / "two.svg"));
  CHECK(run({"build", "m", "-o", dir / "m.json"}).code == 0);
  CHECK(run({"render", "--graph", dir / "m.json", "-o", dir / "m.svg"}).code == 0);
  CHECK(fs::file_size(dir / "m.svg") > 0);
}

TEST_CASE("tolerance override") {
  const double before = geom::eps();
  ::setenv("CREP_EPS", "banana", 1);
  CHECK(run({"build", "octahedron"}).code == 2);
  ::setenv("CREP_EPS", "2", 1);
  CHECK(run({"build", "octahedron"}).code == 2);
  ::setenv("CREP_EPS", "1e-7", 1);
  CHECK(run({"build", "octahedron"}).code == 0);
  CHECK(geom::eps() == 1e-7);
  ::unsetenv("CREP_EPS");
  geom::set_eps(before);
}

}  // TEST_SUITE
