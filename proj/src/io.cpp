#include "crep/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "crep/error.hpp"

namespace crep::io {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseFailure, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseFailure, std::string("bad field '") + key + "': " + e.what());
  }
}

std::string end_token(const graphs::PlaneMultigraph& g, graphs::EdgeEnd end) {
  return g.edge(end.edge).id + (end.side == 0 ? "+" : "-");
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      // Compare digit runs by value: strip leading zeros, then length, then text.
      std::string_view da(a.data() + i, ie - i), db(b.data() + j, je - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

Json graph_to_json(const graphs::PlaneMultigraph& g) {
  std::vector<int> vorder(g.order()), eorder(g.size());
  for (int v = 0; v < g.order(); ++v) vorder[v] = v;
  for (int e = 0; e < g.size(); ++e) eorder[e] = e;
  std::sort(vorder.begin(), vorder.end(), [&](int x, int y) { return natural_less(g.name(x), g.name(y)); });
  std::sort(eorder.begin(), eorder.end(),
            [&](int x, int y) { return natural_less(g.edge(x).id, g.edge(y).id); });

  Json j;
  j["vertices"] = Json::array();
  for (int v : vorder) j["vertices"].push_back(g.name(v));
  j["edges"] = Json::array();
  for (int e : eorder) {
    const auto& edge = g.edge(e);
    j["edges"].push_back({{"id", edge.id}, {"ends", {g.name(edge.ends[0]), g.name(edge.ends[1])}}});
  }
  j["rotation"] = Json::object();
  for (int v : vorder) {
    Json rot = Json::array();
    for (auto end : g.rotation(v)) rot.push_back(end_token(g, end));
    j["rotation"][g.name(v)] = std::move(rot);
  }
  return j;
}

graphs::PlaneMultigraph graph_from_json(const Json& j) {
  graphs::PlaneMultigraph g;
  for (const auto& name : field<std::vector<std::string>>(j, "vertices")) {
    if (g.find_vertex(name)) throw Error(Errc::ParseFailure, "duplicate vertex " + name);
    g.add_vertex(name);
  }
  const Json edges = field<Json>(j, "edges");
  if (!edges.is_array()) throw Error(Errc::ParseFailure, "'edges' must be an array");
  std::map<std::string, int> edge_index;
  for (const auto& e : edges) {
    const auto id = field<std::string>(e, "id");
    const auto ends = field<std::vector<std::string>>(e, "ends");
    if (ends.size() != 2) throw Error(Errc::ParseFailure, "edge " + id + " needs two ends");
    const auto u = g.find_vertex(ends[0]);
    const auto v = g.find_vertex(ends[1]);
    if (!u || !v) throw Error(Errc::ParseFailure, "edge " + id + " names an unknown vertex");
    if (edge_index.count(id)) throw Error(Errc::ParseFailure, "duplicate edge " + id);
    edge_index[id] = g.add_edge(*u, *v, id);
  }
  const Json rotation = field<Json>(j, "rotation");
  for (int v = 0; v < g.order(); ++v) {
    if (!rotation.contains(g.name(v))) throw Error(Errc::ParseFailure, "no rotation for " + g.name(v));
    std::vector<graphs::EdgeEnd> rot;
    for (const auto& token : rotation.at(g.name(v))) {
      const auto text = token.get<std::string>();
      if (text.size() < 2 || (text.back() != '+' && text.back() != '-')) {
        throw Error(Errc::ParseFailure, "bad rotation entry '" + text + "'");
      }
      const auto it = edge_index.find(text.substr(0, text.size() - 1));
      if (it == edge_index.end()) throw Error(Errc::ParseFailure, "rotation names unknown edge in '" + text + "'");
      rot.push_back({it->second, text.back() == '+' ? 0 : 1});
    }
    g.set_rotation(v, std::move(rot));
  }
  if (!g.rotation_consistent()) throw Error(Errc::ParseFailure, "rotation does not match the edge ends");
  return g;
}

Json circles_to_json(const representation::CircleSet& cs) {
  Json j;
  j["circles"] = Json::array();
  for (const auto& m : cs.members()) {
    if (m.shape.is_circle()) {
      j["circles"].push_back(
          {{"id", m.id}, {"cx", m.shape.center().x}, {"cy", m.shape.center().y}, {"r", m.shape.radius()}});
    } else {
      j["line"] = {{"id", m.id}, {"a", m.shape.normal().x}, {"b", m.shape.normal().y}, {"c", m.shape.offset()}};
    }
  }
  return j;
}

representation::CircleSet circles_from_json(const Json& j) {
  representation::CircleSet cs;
  const Json circles = field<Json>(j, "circles");
  if (!circles.is_array()) throw Error(Errc::ParseFailure, "'circles' must be an array");
  for (const auto& c : circles) {
    cs.add(field<std::string>(c, "id"), geom::GeneralizedCircle::circle({field<double>(c, "cx"), field<double>(c, "cy")},
                                                                        field<double>(c, "r")));
  }
  if (j.contains("line") && !j.at("line").is_null()) {
    const Json& l = j.at("line");
    const std::string id = l.contains("id") ? field<std::string>(l, "id") : "line";
    cs.add(id, geom::GeneralizedCircle::line(field<double>(l, "a"), field<double>(l, "b"), field<double>(l, "c")));
  }
  return cs;
}

Json assignment_to_json(const SavedAssignment& a) {
  Json j;
  j["system"] = std::string(solver::to_string(a.system));
  j["variables"] = Json::array();
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    const bool above = chains::octuple_side(a.labels[i]) == geom::Side::Above;
    j["variables"].push_back({{"index", a.labels[i]},
                              {"t", a.assignment.t[i]},
                              {"r", a.assignment.r[i]},
                              {"side", above ? "above" : "below"}});
  }
  j["residual"] = a.residual;
  j["seed"] = a.seed;
  j["restarts"] = a.restarts;
  j["iterations"] = a.iterations;
  return j;
}

SavedAssignment assignment_from_json(const Json& j) {
  SavedAssignment a;
  try {
    a.system = solver::parse_system_kind(field<std::string>(j, "system"));
  } catch (const Error& e) {
    throw Error(Errc::ParseFailure, e.what());
  }
  const Json vars = field<Json>(j, "variables");
  if (!vars.is_array()) throw Error(Errc::ParseFailure, "'variables' must be an array");
  for (const auto& v : vars) {
    a.labels.push_back(field<int>(v, "index"));
    a.assignment.t.push_back(field<double>(v, "t"));
    a.assignment.r.push_back(field<double>(v, "r"));
  }
  a.residual = j.value("residual", 0.0);
  a.seed = j.value("seed", std::uint64_t{0});
  a.restarts = j.value("restarts", 0);
  a.iterations = j.value("iterations", 0);
  return a;
}

Json to_json(const graphs::ValidationReport& r) {
  return {{"order", r.order},
          {"size", r.size},
          {"faces", r.faces},
          {"regular4", r.regular4},
          {"simple", r.simple},
          {"euler_ok", r.euler_ok},
          {"two_connected", r.two_connected},
          {"three_connected", r.three_connected}};
}

Json to_json(const representation::VerificationReport& r, const graphs::PlaneMultigraph& target) {
  Json j;
  j["ok"] = r.ok;
  j["failure_reason"] = r.ok ? Json(nullptr) : Json(std::string(representation::to_string(r.reason)));
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.mapping) {
    Json m = Json::object();
    for (std::size_t i = 0; i < r.mapping->size(); ++i) m["p" + std::to_string(i)] = target.name((*r.mapping)[i]);
    j["mapping"] = std::move(m);
  } else {
    j["mapping"] = nullptr;
  }
  j["digons"] = Json::array();
  for (const auto& d : r.digons) {
    j["digons"].push_back({{"u", d.u},
                           {"v", d.v},
                           {"multiplicity", d.multiplicity},
                           {"two_cut", d.two_cut},
                           {"touching", d.touching},
                           {"single_circle", d.single_circle},
                           {"consecutive", d.consecutive},
                           {"carriers", d.carriers}});
  }
  if (r.unsupported_surgery) j["unsupported_surgery"] = true;
  return j;
}

Json to_json(const chains::ContradictionReport& r) {
  const char* kind = r.violated == chains::Conflict::Nesting        ? "nesting"
                     : r.violated == chains::Conflict::Monotonicity ? "monotonicity"
                                                                     : "premise";
  return {{"m_top", r.m_top},
          {"m_bottom", r.m_bottom},
          {"f_top", r.f_top},
          {"f_bottom", r.f_bottom},
          {"monotonicity_bound", r.monotonicity_bound},
          {"nesting_bound", r.nesting_bound},
          {"nesting_violation", r.nesting_violation},
          {"monotonicity_violation", r.monotonicity_violation},
          {"premise_violation", r.premise_violation},
          {"chain_law_deviation", r.chain_law_deviation},
          {"violated", kind},
          {"description", r.description},
          {"magnitude", r.magnitude}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseFailure, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::IoFailure, "failed writing " + path);
}

}  // namespace crep::io
