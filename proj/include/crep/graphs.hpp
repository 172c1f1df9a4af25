#pragma once

// Plane multigraphs given by rotation systems, and the constructions built on
// them: octahedron, octahedral mini-gadgets and mini-bigadgets, the base
// multigraph M and its 68-vertex simple descendants.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crep::graphs {

/// One end of an edge: side 0 sits at ends[0] ("+"), side 1 at ends[1] ("-").
struct EdgeEnd {
  int edge = 0;
  int side = 0;

  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

struct Edge {
  std::string id;
  std::array<int, 2> ends{};
};

/// Vertices and edges are indexed densely; names and ids are persistent
/// labels. rotation(v) lists the edge-ends at v counterclockwise. Loops and
/// parallel edges are allowed.
class PlaneMultigraph {
 public:
  int add_vertex(std::string name);
  /// Appends the new ends to the rotations of both endpoints.
  int add_edge(int u, int v, std::string id = {});

  int order() const { return static_cast<int>(names_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }

  const std::string& name(int v) const { return names_[v]; }
  std::optional<int> find_vertex(const std::string& name) const;
  std::optional<int> find_edge(const std::string& id) const;
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int end_vertex(EdgeEnd end) const { return edges_[end.edge].ends[end.side]; }
  int other_vertex(int e, int v) const;

  const std::vector<EdgeEnd>& rotation(int v) const { return rotation_[v]; }
  void set_rotation(int v, std::vector<EdgeEnd> ends);
  /// Replaces one end in v's rotation in place.
  void replace_end(int v, EdgeEnd from, EdgeEnd to);
  /// Re-points an edge; rotations are left for the caller to fix.
  void set_edge_ends(int e, int u, int v);

  /// Edge multiplicity between u and v (loops count once per loop).
  int multiplicity(int u, int v) const;
  /// True when every end appears exactly once, at its own endpoint.
  bool rotation_consistent() const;
  /// Faces of the embedding, traced as orbits of darts.
  int face_count() const;

  /// Fresh names that are not yet in use.
  std::string fresh_vertex_name(const std::string& stem) const;
  std::string fresh_edge_id() const;

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeEnd>> rotation_;
};

/// A corner is the angular sector at `vertex` between rotation positions
/// `index` and `index + 1`.
struct Corner {
  int vertex = 0;
  int index = 0;
};

/// Faces as lists of corners, in tracing order.
std::vector<std::vector<Corner>> trace_faces(const PlaneMultigraph& g);

struct ValidationReport {
  int order = 0;
  int size = 0;
  int faces = 0;
  bool regular4 = false;
  bool simple = false;
  bool euler_ok = false;
  bool two_connected = false;
  bool three_connected = false;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate(const PlaneMultigraph& g);
bool connected_without(const PlaneMultigraph& g, const std::vector<int>& removed);

PlaneMultigraph build_octahedron();

struct MiniGadget {
  PlaneMultigraph graph;
  int attach = 0;
};

struct MiniBigadget {
  PlaneMultigraph graph;
  int attach1 = 0;
  int attach2 = 0;
};

/// Octahedron with one edge replaced by a path of length two.
MiniGadget build_mini_gadget_octahedral();
/// Octahedron with one vertex split into two degree-2 vertices sharing a face.
MiniBigadget build_mini_bigadget_octahedral();

struct BaseMultigraph {
  PlaneMultigraph graph;
  std::array<int, 8> cycle{};  // v1..v8
  std::array<int, 4> red{};    // shared vertices of the digon pairs at (1,4),(2,7),(3,6),(5,8)
};

BaseMultigraph build_base_multigraph_m();

struct SubdivideResult {
  PlaneMultigraph graph;
  int vertex = 0;
};

/// Replaces edge e = (u, v) by u - s - v; the edge id stays on the u side.
SubdivideResult subdivide_edge(const PlaneMultigraph& g, int e);

struct Attachment {
  int host_vertex = 0;
  int guest_vertex = 0;
};

/// Disjoint union of `host` and `guest` with each listed pair identified.
/// With two pairs, both host vertices must share a face and so must both guest
/// vertices. Guest names are prefixed with `prefix`.
PlaneMultigraph attach(const PlaneMultigraph& host, const PlaneMultigraph& guest,
                       const std::vector<Attachment>& pairs, const std::string& prefix);

/// One-point attachment of degree-2 vertices.
PlaneMultigraph attach_at_degree2(const PlaneMultigraph& g, int u, const PlaneMultigraph& h, int a,
                                  const std::string& prefix = "h");

/// Role labels of a (bi)gadget-subgraph. Side i (0 or 1) is the mini-(bi)gadget
/// hanging between v_i and w; attach[i] is w_i, attach_prime[i] is w_i' for
/// bigadgets. Vertex names rather than indices, so instances survive pruning.
struct GadgetInstance {
  std::string w;
  std::array<std::string, 2> v;
  std::array<std::string, 2> attach;
  std::array<std::optional<std::string>, 2> attach_prime;
  std::array<std::vector<std::string>, 2> mini_vertices;
  bool bigadget = false;
};

enum class Variant { Gadget, Bigadget };

struct Counterexample {
  PlaneMultigraph graph;
  std::vector<GadgetInstance> instances;
};

Counterexample build_counterexample_68(Variant variant);

/// Removes mini-(bi)gadget `which` (1 or 2) of the instance, attachment
/// vertices included, and joins v_which to w by a new edge placed where the
/// removed ends were.
PlaneMultigraph prune_mini_gadget(const PlaneMultigraph& g, const GadgetInstance& inst, int which);

/// Vertex bijection G -> H preserving edge multiplicities, if any.
std::optional<std::vector<int>> isomorphic(const PlaneMultigraph& g, const PlaneMultigraph& h);

}  // namespace crep::graphs
