#pragma once

// Circle sets, their contact multigraphs, and verification of a circle set as
// a circle representation of a given plane multigraph.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crep/geom.hpp"
#include "crep/graphs.hpp"

namespace crep::representation {

struct Member {
  std::string id;
  geom::GeneralizedCircle shape;
};

/// Ordered collection of uniquely named generalized circles, at most one of
/// them a line.
class CircleSet {
 public:
  void add(std::string id, const geom::GeneralizedCircle& shape);

  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::optional<std::size_t> find(const std::string& id) const;

 private:
  std::vector<Member> members_;
};

enum class PointClass { Touching, Crossing };

struct ContactPoint {
  geom::Point position;
  std::array<int, 2> members{};  // indices into the circle set, ascending
  PointClass cls = PointClass::Crossing;
};

/// Arc of `member` from point `from` to point `to` in the member's
/// orientation; arc k is edge k of the derived graph.
struct Arc {
  int member = 0;
  int from = 0;
  int to = 0;
};

struct ContactStructure {
  std::vector<ContactPoint> points;
  /// Per member, its points in orientation order.
  std::vector<std::vector<int>> member_points;
  std::vector<Arc> arcs;
  /// Vertices are points ("p0", "p1", ...), edges are arcs.
  graphs::PlaneMultigraph graph;
};

/// Circles run counterclockwise, the line by increasing abscissa along
/// direction(). Throws TriplePoint, FreeCircle or CoincidentCircles.
ContactStructure extract_contact_graph(const CircleSet& cs);

enum class FailureReason { None, TriplePoint, FreeCircle, NotIsomorphic, CoincidentCircles };

std::string_view to_string(FailureReason reason);

/// A target digon (vertex pair joined by two or more parallel edges) as it
/// appears under the mapping.
struct DigonReport {
  std::string u, v;
  int multiplicity = 0;
  bool two_cut = false;
  /// Some endpoint is a touching point.
  bool touching = false;
  /// All the parallel arcs lie on one member.
  bool single_circle = false;
  /// The parallel arcs are consecutive in the rotations at both endpoints.
  bool consecutive = false;
  std::vector<std::string> carriers;
};

struct VerificationReport {
  bool ok = false;
  FailureReason reason = FailureReason::None;
  std::string detail;
  /// mapping[i] = target vertex of contact point i.
  std::optional<std::vector<int>> mapping;
  std::vector<DigonReport> digons;
  /// Set by prune_circles when deletion alone cannot produce the expected graph.
  bool unsupported_surgery = false;
};

VerificationReport verify_representation(const CircleSet& cs, const graphs::PlaneMultigraph& target);

/// Throws PoleOnCircle when the pole lies on a member.
CircleSet transport(const CircleSet& cs, const geom::MobiusMap& m);

struct PruneResult {
  CircleSet remaining;
  VerificationReport report;
};

/// Deletes the listed members and verifies what is left against `expected`.
/// Throws UnknownId.
PruneResult prune_circles(const CircleSet& cs, const std::set<std::string>& ids,
                          const graphs::PlaneMultigraph& expected);

std::string svg_document(const CircleSet& cs);
std::string svg_document(const graphs::PlaneMultigraph& g);
/// Throws IoFailure.
void render_svg(const CircleSet& cs, const std::string& path);
void render_svg(const graphs::PlaneMultigraph& g, const std::string& path);

}  // namespace crep::representation
