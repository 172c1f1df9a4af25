#include "crep/graphs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "crep/error.hpp"

namespace crep::graphs {

namespace {

// Position of every end in its vertex rotation, indexed [edge][side].
std::vector<std::array<int, 2>> end_positions(const PlaneMultigraph& g) {
  std::vector<std::array<int, 2>> pos(g.size(), {-1, -1});
  for (int v = 0; v < g.order(); ++v) {
    const auto& rot = g.rotation(v);
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) pos[rot[i].edge][rot[i].side] = i;
  }
  return pos;
}

EdgeEnd end_at(const PlaneMultigraph& g, int e, int v) {
  const Edge& edge = g.edge(e);
  if (edge.ends[0] == v) return {e, 0};
  if (edge.ends[1] == v) return {e, 1};
  throw Error(Errc::NoSuchEdge, "edge " + edge.id + " is not incident to " + g.name(v));
}

// Copies g without the listed vertices and their incident edges. Returns the
// new graph and old->new edge index map (-1 for dropped edges).
std::pair<PlaneMultigraph, std::vector<int>> without_vertices(const PlaneMultigraph& g,
                                                               const std::vector<char>& removed) {
  PlaneMultigraph out;
  std::vector<int> vmap(g.order(), -1);
  for (int v = 0; v < g.order(); ++v) {
    if (!removed[v]) vmap[v] = out.add_vertex(g.name(v));
  }
  std::vector<int> emap(g.size(), -1);
  for (int e = 0; e < g.size(); ++e) {
    const Edge& edge = g.edge(e);
    if (removed[edge.ends[0]] || removed[edge.ends[1]]) continue;
    emap[e] = out.add_edge(vmap[edge.ends[0]], vmap[edge.ends[1]], edge.id);
  }
  for (int v = 0; v < g.order(); ++v) {
    if (removed[v]) continue;
    std::vector<EdgeEnd> rot;
    for (EdgeEnd end : g.rotation(v)) {
      if (emap[end.edge] >= 0) rot.push_back({emap[end.edge], end.side});
    }
    out.set_rotation(vmap[v], std::move(rot));
  }
  return {std::move(out), std::move(emap)};
}

std::vector<std::vector<int>> multiplicity_matrix(const PlaneMultigraph& g) {
  std::vector<std::vector<int>> m(g.order(), std::vector<int>(g.order(), 0));
  for (const Edge& e : g.edges()) {
    ++m[e.ends[0]][e.ends[1]];
    if (e.ends[0] != e.ends[1]) ++m[e.ends[1]][e.ends[0]];
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// PlaneMultigraph

int PlaneMultigraph::add_vertex(std::string name) {
  names_.push_back(std::move(name));
  rotation_.emplace_back();
  return order() - 1;
}

int PlaneMultigraph::add_edge(int u, int v, std::string id) {
  if (u < 0 || v < 0 || u >= order() || v >= order()) {
    throw Error(Errc::NoSuchEdge, "edge endpoint out of range");
  }
  if (id.empty()) id = fresh_edge_id();
  const int e = size();
  edges_.push_back({std::move(id), {u, v}});
  rotation_[u].push_back({e, 0});
  rotation_[v].push_back({e, 1});
  return e;
}

std::optional<int> PlaneMultigraph::find_vertex(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

std::optional<int> PlaneMultigraph::find_edge(const std::string& id) const {
  const auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
  if (it == edges_.end()) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

int PlaneMultigraph::other_vertex(int e, int v) const {
  const Edge& edge = edges_[e];
  return edge.ends[0] == v ? edge.ends[1] : edge.ends[0];
}

void PlaneMultigraph::set_rotation(int v, std::vector<EdgeEnd> ends) { rotation_[v] = std::move(ends); }

void PlaneMultigraph::replace_end(int v, EdgeEnd from, EdgeEnd to) {
  auto& rot = rotation_[v];
  const auto it = std::find(rot.begin(), rot.end(), from);
  if (it == rot.end()) throw Error(Errc::NoSuchEdge, "end not present in rotation of " + names_[v]);
  *it = to;
}

void PlaneMultigraph::set_edge_ends(int e, int u, int v) { edges_[e].ends = {u, v}; }

int PlaneMultigraph::multiplicity(int u, int v) const {
  int count = 0;
  for (const Edge& e : edges_) {
    if ((e.ends[0] == u && e.ends[1] == v) || (e.ends[0] == v && e.ends[1] == u)) ++count;
  }
  return count;
}

bool PlaneMultigraph::rotation_consistent() const {
  std::vector<std::array<int, 2>> seen(size(), {0, 0});
  for (int v = 0; v < order(); ++v) {
    for (EdgeEnd end : rotation_[v]) {
      if (end.edge < 0 || end.edge >= size() || end.side < 0 || end.side > 1) return false;
      if (edges_[end.edge].ends[end.side] != v) return false;
      ++seen[end.edge][end.side];
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](const auto& s) { return s[0] == 1 && s[1] == 1; });
}

int PlaneMultigraph::face_count() const { return static_cast<int>(trace_faces(*this).size()); }

std::string PlaneMultigraph::fresh_vertex_name(const std::string& stem) const {
  if (!find_vertex(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!find_vertex(candidate)) return candidate;
  }
}

std::string PlaneMultigraph::fresh_edge_id() const {
  std::set<std::string> used;
  for (const Edge& e : edges_) used.insert(e.id);
  for (int k = size() + 1;; ++k) {
    std::string candidate = "e" + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Faces and validation

std::vector<std::vector<Corner>> trace_faces(const PlaneMultigraph& g) {
  const auto pos = end_positions(g);
  std::vector<std::array<char, 2>> used(g.size(), {0, 0});
  std::vector<std::vector<Corner>> faces;
  for (int e = 0; e < g.size(); ++e) {
    for (int s = 0; s < 2; ++s) {
      if (used[e][s]) continue;
      std::vector<Corner> face;
      EdgeEnd dart{e, s};
      while (!used[dart.edge][dart.side]) {
        used[dart.edge][dart.side] = 1;
        const EdgeEnd arrival{dart.edge, 1 - dart.side};
        const int w = g.end_vertex(arrival);
        const int i = pos[arrival.edge][arrival.side];
        const auto& rot = g.rotation(w);
        face.push_back({w, i});
        dart = rot[(i + 1) % rot.size()];
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

bool connected_without(const PlaneMultigraph& g, const std::vector<int>& removed) {
  std::vector<char> gone(g.order(), 0);
  for (int v : removed) gone[v] = 1;
  int start = -1;
  int remaining = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (!gone[v]) {
      ++remaining;
      if (start < 0) start = v;
    }
  }
  if (remaining == 0) return true;
  std::vector<std::vector<int>> adj(g.order());
  for (const Edge& e : g.edges()) {
    adj[e.ends[0]].push_back(e.ends[1]);
    adj[e.ends[1]].push_back(e.ends[0]);
  }
  std::vector<char> seen(g.order(), 0);
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (gone[w] || seen[w]) continue;
      seen[w] = 1;
      ++reached;
      q.push(w);
    }
  }
  return reached == remaining;
}

ValidationReport validate(const PlaneMultigraph& g) {
  ValidationReport rep;
  rep.order = g.order();
  rep.size = g.size();
  rep.regular4 = g.order() > 0;
  for (int v = 0; v < g.order(); ++v) rep.regular4 = rep.regular4 && g.degree(v) == 4;

  rep.simple = true;
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    const auto key = std::minmax(e.ends[0], e.ends[1]);
    if (e.ends[0] == e.ends[1] || !seen.insert(key).second) rep.simple = false;
  }

  const bool consistent = g.rotation_consistent();
  rep.faces = consistent ? g.face_count() : 0;
  rep.euler_ok = consistent && rep.order - rep.size + rep.faces == 2;

  rep.two_connected = g.order() >= 3 && connected_without(g, {});
  for (int v = 0; rep.two_connected && v < g.order(); ++v) {
    rep.two_connected = connected_without(g, {v});
  }
  rep.three_connected = rep.two_connected && g.order() >= 4;
  for (int u = 0; rep.three_connected && u < g.order(); ++u) {
    for (int v = u + 1; rep.three_connected && v < g.order(); ++v) {
      rep.three_connected = connected_without(g, {u, v});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Builders

PlaneMultigraph build_octahedron() {
  PlaneMultigraph g;
  // Drawn with the equator e1..e4 counterclockwise, top inside, bottom outside.
  const int top = g.add_vertex("t");
  std::array<int, 4> eq{};
  for (int i = 0; i < 4; ++i) eq[i] = g.add_vertex("e" + std::to_string(i + 1));
  const int bottom = g.add_vertex("b");
  std::array<int, 4> up{}, down{}, ring{};
  for (int i = 0; i < 4; ++i) up[i] = g.add_edge(top, eq[i], "t" + std::to_string(i + 1));
  for (int i = 0; i < 4; ++i) ring[i] = g.add_edge(eq[i], eq[(i + 1) % 4], "q" + std::to_string(i + 1));
  for (int i = 0; i < 4; ++i) down[i] = g.add_edge(bottom, eq[i], "b" + std::to_string(i + 1));

  g.set_rotation(top, {{up[0], 0}, {up[1], 0}, {up[2], 0}, {up[3], 0}});
  g.set_rotation(bottom, {{down[3], 0}, {down[2], 0}, {down[1], 0}, {down[0], 0}});
  for (int i = 0; i < 4; ++i) {
    const int next = ring[i];
    const int prev = ring[(i + 3) % 4];
    g.set_rotation(eq[i], {{next, 0}, {up[i], 1}, {prev, 1}, {down[i], 1}});
  }
  return g;
}

MiniGadget build_mini_gadget_octahedral() {
  const PlaneMultigraph octa = build_octahedron();
  auto [g, s] = subdivide_edge(octa, *octa.find_edge("t1"));
  return {std::move(g), s};
}

MiniBigadget build_mini_bigadget_octahedral() {
  PlaneMultigraph g;
  // The octahedron's top vertex split into a1 (neighbours e1, e2) and
  // a2 (neighbours e3, e4).
  const int a1 = g.add_vertex("a1");
  const int a2 = g.add_vertex("a2");
  std::array<int, 4> eq{};
  for (int i = 0; i < 4; ++i) eq[i] = g.add_vertex("e" + std::to_string(i + 1));
  const int bottom = g.add_vertex("b");
  std::array<int, 4> up{}, down{}, ring{};
  for (int i = 0; i < 4; ++i) up[i] = g.add_edge(i < 2 ? a1 : a2, eq[i], "t" + std::to_string(i + 1));
  for (int i = 0; i < 4; ++i) ring[i] = g.add_edge(eq[i], eq[(i + 1) % 4], "q" + std::to_string(i + 1));
  for (int i = 0; i < 4; ++i) down[i] = g.add_edge(bottom, eq[i], "b" + std::to_string(i + 1));

  g.set_rotation(a1, {{up[0], 0}, {up[1], 0}});
  g.set_rotation(a2, {{up[2], 0}, {up[3], 0}});
  g.set_rotation(bottom, {{down[3], 0}, {down[2], 0}, {down[1], 0}, {down[0], 0}});
  for (int i = 0; i < 4; ++i) {
    g.set_rotation(eq[i], {{ring[i], 0}, {up[i], 1}, {ring[(i + 3) % 4], 1}, {down[i], 1}});
  }
  return {std::move(g), a1, a2};
}

BaseMultigraph build_base_multigraph_m() {
  BaseMultigraph m;
  PlaneMultigraph& g = m.graph;
  for (int i = 0; i < 8; ++i) m.cycle[i] = g.add_vertex("v" + std::to_string(i + 1));
  constexpr std::array<std::pair<int, int>, 4> pairs{{{1, 4}, {2, 7}, {3, 6}, {5, 8}}};
  // Drawn with the 8-cycle as a convex octagon (counterclockwise); the digon
  // pairs at (2,7) and (3,6) run inside it, those at (1,4) and (5,8) outside.
  constexpr std::array<bool, 4> inside{false, true, true, false};
  for (int k = 0; k < 4; ++k) {
    m.red[k] = g.add_vertex("r" + std::to_string(pairs[k].first) + std::to_string(pairs[k].second));
  }
  std::array<int, 8> cyc{};
  for (int i = 0; i < 8; ++i) {
    cyc[i] = g.add_edge(m.cycle[i], m.cycle[(i + 1) % 8], "c" + std::to_string(i + 1));
  }
  // digon[i] = the two parallel edges between v_{i+1} and its red vertex.
  std::array<std::array<int, 2>, 8> digon{};
  std::array<bool, 8> digon_inside{};
  for (int k = 0; k < 4; ++k) {
    const auto [a, b] = pairs[k];
    const std::string tag = std::to_string(a) + std::to_string(b);
    digon[a - 1] = {g.add_edge(m.cycle[a - 1], m.red[k], "d" + tag + "a1"),
                    g.add_edge(m.cycle[a - 1], m.red[k], "d" + tag + "a2")};
    digon[b - 1] = {g.add_edge(m.red[k], m.cycle[b - 1], "d" + tag + "b1"),
                    g.add_edge(m.red[k], m.cycle[b - 1], "d" + tag + "b2")};
    digon_inside[a - 1] = digon_inside[b - 1] = inside[k];
  }
  for (int i = 0; i < 8; ++i) {
    const int v = m.cycle[i];
    const EdgeEnd next = end_at(g, cyc[i], v);
    const EdgeEnd prev = end_at(g, cyc[(i + 7) % 8], v);
    const EdgeEnd d1 = end_at(g, digon[i][0], v);
    const EdgeEnd d2 = end_at(g, digon[i][1], v);
    if (digon_inside[i]) {
      g.set_rotation(v, {next, d1, d2, prev});
    } else {
      g.set_rotation(v, {next, prev, d1, d2});
    }
  }
  // At a red vertex each lens appears in the reverse order of its other end.
  for (int k = 0; k < 4; ++k) {
    const auto [a, b] = pairs[k];
    const int x = m.red[k];
    g.set_rotation(x, {end_at(g, digon[a - 1][1], x), end_at(g, digon[a - 1][0], x),
                       end_at(g, digon[b - 1][1], x), end_at(g, digon[b - 1][0], x)});
  }
  return m;
}

// ---------------------------------------------------------------------------
// Surgery

SubdivideResult subdivide_edge(const PlaneMultigraph& g, int e) {
  if (e < 0 || e >= g.size()) throw Error(Errc::NoSuchEdge, "no edge with index " + std::to_string(e));
  PlaneMultigraph out = g;
  const int v = g.edge(e).ends[1];
  const int s = out.add_vertex(out.fresh_vertex_name("s" + g.edge(e).id));
  const int f = out.add_edge(s, v, out.fresh_edge_id());
  // add_edge appended f's ends; put them where e's far end used to be.
  auto rot_v = out.rotation(v);
  rot_v.pop_back();
  std::replace(rot_v.begin(), rot_v.end(), EdgeEnd{e, 1}, EdgeEnd{f, 1});
  out.set_rotation(v, std::move(rot_v));
  out.set_edge_ends(e, g.edge(e).ends[0], s);
  out.set_rotation(s, {{e, 1}, {f, 0}});
  return {std::move(out), s};
}

PlaneMultigraph attach(const PlaneMultigraph& host, const PlaneMultigraph& guest,
                       const std::vector<Attachment>& pairs, const std::string& prefix) {
  if (pairs.empty() || pairs.size() > 2) {
    throw Error(Errc::PreconditionFailed, "attach supports one or two identified pairs");
  }
  // Corner (sector) at which each identification happens.
  std::vector<Corner> host_corner(pairs.size()), guest_corner(pairs.size());
  if (pairs.size() == 1) {
    host_corner[0] = {pairs[0].host_vertex, host.degree(pairs[0].host_vertex) - 1};
    guest_corner[0] = {pairs[0].guest_vertex, guest.degree(pairs[0].guest_vertex) - 1};
  } else {
    auto pick = [](const PlaneMultigraph& g, int x, int y, std::vector<Corner>& out) {
      for (const auto& face : trace_faces(g)) {
        const auto cx = std::find_if(face.begin(), face.end(), [&](const Corner& c) { return c.vertex == x; });
        const auto cy = std::find_if(face.begin(), face.end(), [&](const Corner& c) { return c.vertex == y; });
        if (cx != face.end() && cy != face.end()) {
          out = {*cx, *cy};
          return true;
        }
      }
      return false;
    };
    if (!pick(host, pairs[0].host_vertex, pairs[1].host_vertex, host_corner) ||
        !pick(guest, pairs[0].guest_vertex, pairs[1].guest_vertex, guest_corner)) {
      throw Error(Errc::PreconditionFailed, "two-point attachment needs vertices on a common face");
    }
  }

  PlaneMultigraph out = host;
  std::vector<int> vmap(guest.order(), -1);
  for (const Attachment& p : pairs) vmap[p.guest_vertex] = p.host_vertex;
  for (int v = 0; v < guest.order(); ++v) {
    if (vmap[v] < 0) vmap[v] = out.add_vertex(prefix + "." + guest.name(v));
  }
  const int offset = out.size();
  for (const Edge& e : guest.edges()) out.add_edge(vmap[e.ends[0]], vmap[e.ends[1]], prefix + "." + e.id);
  auto shifted = [&](EdgeEnd end) { return EdgeEnd{end.edge + offset, end.side}; };

  for (int v = 0; v < guest.order(); ++v) {
    const bool identified = std::any_of(pairs.begin(), pairs.end(),
                                        [&](const Attachment& p) { return p.guest_vertex == v; });
    if (identified) continue;
    std::vector<EdgeEnd> rot;
    for (EdgeEnd end : guest.rotation(v)) rot.push_back(shifted(end));
    out.set_rotation(vmap[v], std::move(rot));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& hrot = host.rotation(host_corner[k].vertex);
    const auto& grot = guest.rotation(guest_corner[k].vertex);
    const int hi = host_corner[k].index;
    const int gi = guest_corner[k].index;
    std::vector<EdgeEnd> merged(hrot.begin(), hrot.begin() + hi + 1);
    for (std::size_t j = 1; j <= grot.size(); ++j) merged.push_back(shifted(grot[(gi + j) % grot.size()]));
    merged.insert(merged.end(), hrot.begin() + hi + 1, hrot.end());
    out.set_rotation(host_corner[k].vertex, std::move(merged));
  }
  return out;
}

PlaneMultigraph attach_at_degree2(const PlaneMultigraph& g, int u, const PlaneMultigraph& h, int a,
                                  const std::string& prefix) {
  if (g.degree(u) != 2 || h.degree(a) != 2) {
    throw Error(Errc::DegreeMismatch, "attach_at_degree2 needs two degree-2 vertices");
  }
  return attach(g, h, {{u, a}}, prefix);
}

Counterexample build_counterexample_68(Variant variant) {
  const BaseMultigraph m = build_base_multigraph_m();
  Counterexample out;
  PlaneMultigraph g = m.graph;
  constexpr std::array<std::pair<int, int>, 4> pairs{{{1, 4}, {2, 7}, {3, 6}, {5, 8}}};

  for (int k = 0; k < 4; ++k) {
    GadgetInstance inst;
    inst.bigadget = variant == Variant::Bigadget;
    inst.w = m.graph.name(m.red[k]);
    const std::array<int, 2> ends{pairs[k].first, pairs[k].second};
    for (int i = 0; i < 2; ++i) {
      const std::string v_name = "v" + std::to_string(ends[i]);
      const std::string tag = std::to_string(pairs[k].first) + std::to_string(pairs[k].second);
      const std::string stem = "g" + tag + (i == 0 ? "a" : "b");
      inst.v[i] = v_name;
      // First of the two parallel edges between v_i and w.
      const std::string digon_edge = "d" + tag + (i == 0 ? "a1" : "b1");
      const int e = *g.find_edge(digon_edge);

      const int before = g.order();
      auto [g1, s] = subdivide_edge(g, e);
      g = std::move(g1);
      const std::string s_name = stem + ".w";
      // Rename by rebuilding is needless; names only need to be unique and
      // stable, so record what subdivide_edge chose.
      inst.attach[i] = g.name(s);
      std::vector<std::string> members{g.name(s)};

      if (variant == Variant::Gadget) {
        const MiniGadget mini = build_mini_gadget_octahedral();
        g = attach_at_degree2(g, s, mini.graph, mini.attach, stem);
      } else {
        // s is adjacent to v_i; split its edge towards w once more.
        int toward_w = -1;
        for (EdgeEnd end : g.rotation(s)) {
          if (g.other_vertex(end.edge, s) == *g.find_vertex(inst.w)) toward_w = end.edge;
        }
        auto [g2, s2] = subdivide_edge(g, toward_w);
        g = std::move(g2);
        inst.attach_prime[i] = g.name(s2);
        members.push_back(g.name(s2));
        const MiniBigadget mini = build_mini_bigadget_octahedral();
        g = attach(g, mini.graph, {{s, mini.attach1}, {s2, mini.attach2}}, stem);
      }
      (void)s_name;
      for (int v = before; v < g.order(); ++v) {
        if (std::find(members.begin(), members.end(), g.name(v)) == members.end()) {
          members.push_back(g.name(v));
        }
      }
      inst.mini_vertices[i] = std::move(members);
    }
    out.instances.push_back(std::move(inst));
  }
  out.graph = std::move(g);
  return out;
}

PlaneMultigraph prune_mini_gadget(const PlaneMultigraph& g, const GadgetInstance& inst, int which) {
  if (which != 1 && which != 2) throw Error(Errc::InvalidInstance, "which must be 1 or 2");
  const int side = which - 1;
  const auto w = g.find_vertex(inst.w);
  const auto v = g.find_vertex(inst.v[side]);
  if (!w || !v) throw Error(Errc::InvalidInstance, "instance role vertex missing from graph");

  std::vector<char> removed(g.order(), 0);
  for (const std::string& name : inst.mini_vertices[side]) {
    const auto idx = g.find_vertex(name);
    if (!idx) throw Error(Errc::InvalidInstance, "mini-gadget vertex " + name + " missing");
    removed[*idx] = 1;
  }
  if (removed[*w] || removed[*v]) {
    throw Error(Errc::InvalidInstance, "mini-gadget vertices overlap the instance roles");
  }

  // The two edges leaving the removed set, as ends at v and w.
  std::vector<std::pair<int, EdgeEnd>> boundary;
  for (int e = 0; e < g.size(); ++e) {
    const Edge& edge = g.edge(e);
    for (int s = 0; s < 2; ++s) {
      if (!removed[edge.ends[s]] && removed[edge.ends[1 - s]]) boundary.emplace_back(edge.ends[s], EdgeEnd{e, s});
    }
  }
  if (boundary.size() != 2) {
    throw Error(Errc::InvalidInstance, "mini-gadget must hang by exactly two edges");
  }
  if (boundary[0].first != *v) std::swap(boundary[0], boundary[1]);
  if (boundary[0].first != *v || boundary[1].first != *w) {
    throw Error(Errc::InvalidInstance, "mini-gadget does not hang between v_i and w");
  }

  const std::string id = g.fresh_edge_id();
  auto [out, emap] = without_vertices(g, removed);
  const int nv = *out.find_vertex(inst.v[side]);
  const int nw = *out.find_vertex(inst.w);
  // Rebuild the two rotations with the new edge where the boundary ends were.
  auto patched = [&](int old_vertex, EdgeEnd old_end, EdgeEnd new_end) {
    std::vector<EdgeEnd> rot;
    for (EdgeEnd end : g.rotation(old_vertex)) {
      if (end == old_end) {
        rot.push_back(new_end);
      } else if (emap[end.edge] >= 0) {
        rot.push_back({emap[end.edge], end.side});
      }
    }
    return rot;
  };
  const int ne = out.size();
  const auto rot_v = patched(*v, boundary[0].second, {ne, 0});
  const auto rot_w = patched(*w, boundary[1].second, {ne, 1});
  out.add_edge(nv, nw, id);
  out.set_rotation(nv, rot_v);
  out.set_rotation(nw, rot_w);
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

std::optional<std::vector<int>> isomorphic(const PlaneMultigraph& g, const PlaneMultigraph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return std::nullopt;
  const int n = g.order();
  if (n == 0) return std::vector<int>{};
  const auto mg = multiplicity_matrix(g);
  const auto mh = multiplicity_matrix(h);

  // Joint colour refinement so colours are comparable across both graphs.
  using Signature = std::vector<std::pair<int, int>>;
  std::vector<int> cg(n), ch(n);
  for (int v = 0; v < n; ++v) {
    cg[v] = g.degree(v) * 1000 + mg[v][v];
    ch[v] = h.degree(v) * 1000 + mh[v][v];
  }
  for (int round = 0; round < n; ++round) {
    std::map<std::pair<int, Signature>, int> palette;
    auto signature = [](const std::vector<std::vector<int>>& m, const std::vector<int>& c, int v) {
      Signature s;
      for (std::size_t w = 0; w < m.size(); ++w) {
        if (m[v][w] > 0) s.emplace_back(c[w], m[v][w]);
      }
      std::sort(s.begin(), s.end());
      return s;
    };
    std::vector<std::pair<int, Signature>> kg(n), kh(n);
    for (int v = 0; v < n; ++v) {
      kg[v] = {cg[v], signature(mg, cg, v)};
      kh[v] = {ch[v], signature(mh, ch, v)};
      palette.emplace(kg[v], 0);
      palette.emplace(kh[v], 0);
    }
    int next = 0;
    for (auto& [key, colour] : palette) colour = next++;
    std::vector<int> ng(n), nh(n);
    for (int v = 0; v < n; ++v) {
      ng[v] = palette[kg[v]];
      nh[v] = palette[kh[v]];
    }
    const auto classes = [](const std::vector<int>& c) { return std::set<int>(c.begin(), c.end()).size(); };
    const bool stable = classes(ng) == classes(cg) && classes(nh) == classes(ch);
    cg = std::move(ng);
    ch = std::move(nh);
    if (stable) break;
  }
  {
    auto sg = cg, sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  // Assign g's vertices in BFS order from the rarest colour class.
  std::map<int, int> class_size;
  for (int c : cg) ++class_size[c];
  std::vector<int> order;
  std::vector<char> queued(n, 0);
  while (static_cast<int>(order.size()) < n) {
    int start = -1;
    for (int v = 0; v < n; ++v) {
      if (!queued[v] && (start < 0 || class_size[cg[v]] < class_size[cg[start]])) start = v;
    }
    std::queue<int> q;
    q.push(start);
    queued[start] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w = 0; w < n; ++w) {
        if (mg[v][w] > 0 && !queued[w]) {
          queued[w] = 1;
          q.push(w);
        }
      }
    }
  }

  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> extend = [&](int k) {
    if (k == n) return true;
    const int v = order[k];
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand] || ch[cand] != cg[v]) continue;
      bool ok = mg[v][v] == mh[cand][cand];
      for (int j = 0; ok && j < k; ++j) {
        const int u = order[j];
        ok = mg[v][u] == mh[cand][map[u]];
      }
      if (!ok) continue;
      map[v] = cand;
      used[cand] = 1;
      if (extend(k + 1)) return true;
      used[cand] = 0;
      map[v] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

}  // namespace crep::graphs
