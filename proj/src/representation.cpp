#include "crep/representation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "crep/error.hpp"

namespace crep::representation {

using geom::GeneralizedCircle;
using geom::Point;

namespace {

struct RawPoint {
  Point p;
  int a = 0;
  int b = 0;
  PointClass cls = PointClass::Crossing;
  double magnitude = 0.0;
};

// Position along a member used to order its points.
double member_parameter(const GeneralizedCircle& c, Point p) {
  if (c.is_line()) return dot(p, c.direction());
  const Point u = p - c.center();
  return std::atan2(u.y, u.x);
}

struct EndDirection {
  graphs::EdgeEnd end;
  Point dir;
  double curvature = 0.0;
};

// Direction in which the arc leaves the point, and its signed curvature
// relative to the left normal of that direction.
EndDirection end_direction(const GeneralizedCircle& c, Point p, graphs::EdgeEnd end) {
  const double sign = end.side == 0 ? 1.0 : -1.0;
  if (c.is_line()) return {end, sign * c.direction(), 0.0};
  const Point u = (1.0 / c.radius()) * (p - c.center());
  return {end, sign * Point{-u.y, u.x}, sign / c.radius()};
}

std::vector<graphs::EdgeEnd> sort_counterclockwise(std::vector<EndDirection> ends) {
  // Measure angles from a reference perpendicular to one tangent so that the
  // tangent directions never straddle the branch cut.
  const Point d0 = ends.front().dir;
  const Point ref{-d0.y, d0.x};
  std::vector<double> angle;
  for (const auto& e : ends) angle.push_back(std::atan2(cross(ref, e.dir), dot(ref, e.dir)));
  std::vector<int> idx(ends.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    if (std::abs(angle[i] - angle[j]) > 1e-9) return angle[i] < angle[j];
    return ends[i].curvature < ends[j].curvature;
  });
  std::vector<graphs::EdgeEnd> out;
  for (int i : idx) out.push_back(ends[i].end);
  return out;
}

bool cyclically_contiguous(const std::vector<char>& mask) {
  const int n = static_cast<int>(mask.size());
  int starts = 0;
  for (int i = 0; i < n; ++i) {
    if (mask[i] && !mask[(i + n - 1) % n]) ++starts;
  }
  return starts <= 1;
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(Errc::IoFailure, "failed writing " + path);
}

}  // namespace

void CircleSet::add(std::string id, const GeneralizedCircle& shape) {
  if (find(id)) throw Error(Errc::PreconditionFailed, "duplicate circle id " + id);
  if (shape.is_line() &&
      std::any_of(members_.begin(), members_.end(), [](const Member& m) { return m.shape.is_line(); })) {
    throw Error(Errc::PreconditionFailed, "a circle set holds at most one line");
  }
  members_.push_back({std::move(id), shape});
}

std::optional<std::size_t> CircleSet::find(const std::string& id) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].id == id) return i;
  }
  return std::nullopt;
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::None: return "None";
    case FailureReason::TriplePoint: return "TriplePoint";
    case FailureReason::FreeCircle: return "FreeCircle";
    case FailureReason::NotIsomorphic: return "NotIsomorphic";
    case FailureReason::CoincidentCircles: return "CoincidentCircles";
  }
  return "None";
}

ContactStructure extract_contact_graph(const CircleSet& cs) {
  const auto& members = cs.members();
  const int n = static_cast<int>(members.size());

  std::vector<RawPoint> raw;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto hit = geom::classify_intersection(members[i].shape, members[j].shape);
      const PointClass cls = hit.tag == geom::IntersectionTag::Touching ? PointClass::Touching
                                                                        : PointClass::Crossing;
      for (const auto& ep : hit.points) {
        if (ep.is_infinite()) continue;
        const double magnitude =
            std::max({members[i].shape.scale(), members[j].shape.scale(), norm(ep.point())});
        raw.push_back({ep.point(), i, j, cls, magnitude});
      }
    }
  }

  // Cluster coincident intersection points.
  struct Cluster {
    Point p;
    double magnitude = 0.0;
    std::set<int> members;
    PointClass cls = PointClass::Crossing;
  };
  std::vector<Cluster> clusters;
  for (const RawPoint& rp : raw) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return distance(c.p, rp.p) <= geom::eps() * std::max(c.magnitude, rp.magnitude);
    });
    if (it == clusters.end()) {
      clusters.push_back({rp.p, rp.magnitude, {rp.a, rp.b}, rp.cls});
      continue;
    }
    it->members.insert(rp.a);
    it->members.insert(rp.b);
    it->magnitude = std::max(it->magnitude, rp.magnitude);
    if (it->members.size() > 2) {
      std::ostringstream msg;
      msg << "point (" << fmt(it->p.x) << ", " << fmt(it->p.y) << ") lies on more than two circles";
      throw Error(Errc::TriplePoint, msg.str());
    }
  }

  ContactStructure out;
  out.member_points.assign(n, {});
  for (const Cluster& c : clusters) {
    const int a = *c.members.begin();
    const int b = *c.members.rbegin();
    const int index = static_cast<int>(out.points.size());
    out.points.push_back({c.p, {a, b}, c.cls});
    out.member_points[a].push_back(index);
    out.member_points[b].push_back(index);
  }

  for (int m = 0; m < n; ++m) {
    auto& pts = out.member_points[m];
    if (pts.empty()) throw Error(Errc::FreeCircle, "circle " + members[m].id + " meets no other circle");
    const auto& shape = members[m].shape;
    std::stable_sort(pts.begin(), pts.end(), [&](int x, int y) {
      return member_parameter(shape, out.points[x].position) < member_parameter(shape, out.points[y].position);
    });
  }

  graphs::PlaneMultigraph& g = out.graph;
  for (std::size_t i = 0; i < out.points.size(); ++i) g.add_vertex("p" + std::to_string(i));
  for (int m = 0; m < n; ++m) {
    const auto& pts = out.member_points[m];
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const int from = pts[k];
      const int to = pts[(k + 1) % pts.size()];
      out.arcs.push_back({m, from, to});
      g.add_edge(from, to, members[m].id + "." + std::to_string(k));
    }
  }

  std::vector<std::vector<EndDirection>> at(out.points.size());
  for (std::size_t e = 0; e < out.arcs.size(); ++e) {
    const Arc& arc = out.arcs[e];
    const auto& shape = members[arc.member].shape;
    const int edge = static_cast<int>(e);
    at[arc.from].push_back(end_direction(shape, out.points[arc.from].position, {edge, 0}));
    at[arc.to].push_back(end_direction(shape, out.points[arc.to].position, {edge, 1}));
  }
  for (std::size_t v = 0; v < at.size(); ++v) g.set_rotation(static_cast<int>(v), sort_counterclockwise(at[v]));
  return out;
}

VerificationReport verify_representation(const CircleSet& cs, const graphs::PlaneMultigraph& target) {
  VerificationReport rep;
  ContactStructure contact;
  try {
    contact = extract_contact_graph(cs);
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::TriplePoint: rep.reason = FailureReason::TriplePoint; break;
      case Errc::FreeCircle: rep.reason = FailureReason::FreeCircle; break;
      case Errc::CoincidentCircles: rep.reason = FailureReason::CoincidentCircles; break;
      default: throw;
    }
    rep.detail = e.what();
    return rep;
  }

  rep.mapping = graphs::isomorphic(contact.graph, target);
  if (!rep.mapping) {
    rep.reason = FailureReason::NotIsomorphic;
    rep.detail = "contact graph has " + std::to_string(contact.graph.order()) + " vertices and " +
                 std::to_string(contact.graph.size()) + " edges; no multiplicity-preserving bijection";
    return rep;
  }
  rep.ok = true;

  const auto& mapping = *rep.mapping;
  std::vector<int> inverse(mapping.size());
  for (std::size_t i = 0; i < mapping.size(); ++i) inverse[mapping[i]] = static_cast<int>(i);
  const auto& g = contact.graph;
  for (int u = 0; u < target.order(); ++u) {
    for (int v = u + 1; v < target.order(); ++v) {
      const int mult = target.multiplicity(u, v);
      if (mult < 2) continue;
      DigonReport d;
      d.u = target.name(u);
      d.v = target.name(v);
      d.multiplicity = mult;
      d.two_cut = !graphs::connected_without(target, {u, v});
      const int pu = inverse[u];
      const int pv = inverse[v];
      d.touching = contact.points[pu].cls == PointClass::Touching ||
                   contact.points[pv].cls == PointClass::Touching;
      std::vector<char> parallel(g.size(), 0);
      std::set<std::string> carriers;
      for (int e = 0; e < g.size(); ++e) {
        const auto& ends = g.edge(e).ends;
        if ((ends[0] == pu && ends[1] == pv) || (ends[0] == pv && ends[1] == pu)) {
          parallel[e] = 1;
          carriers.insert(cs.members()[contact.arcs[e].member].id);
        }
      }
      d.carriers.assign(carriers.begin(), carriers.end());
      d.single_circle = carriers.size() == 1;
      d.consecutive = true;
      for (int p : {pu, pv}) {
        std::vector<char> mask;
        for (auto end : g.rotation(p)) mask.push_back(parallel[end.edge]);
        d.consecutive = d.consecutive && cyclically_contiguous(mask);
      }
      rep.digons.push_back(std::move(d));
    }
  }
  return rep;
}

CircleSet transport(const CircleSet& cs, const geom::MobiusMap& m) {
  const auto pole = m.pole();
  CircleSet out;
  for (const Member& member : cs.members()) {
    if (!pole.is_infinite()) {
      const Point p = pole.point();
      const double slack = geom::eps() * std::max({member.shape.scale(), norm(p), 1.0});
      if (std::abs(member.shape.signed_distance(p)) <= slack) {
        throw Error(Errc::PoleOnCircle, "the map's pole lies on " + member.id);
      }
    }
    out.add(member.id, geom::mobius_apply_gcircle(m, member.shape));
  }
  return out;
}

PruneResult prune_circles(const CircleSet& cs, const std::set<std::string>& ids,
                          const graphs::PlaneMultigraph& expected) {
  for (const auto& id : ids) {
    if (!cs.find(id)) throw Error(Errc::UnknownId, "no circle with id " + id);
  }
  PruneResult result;
  for (const Member& m : cs.members()) {
    if (!ids.count(m.id)) result.remaining.add(m.id, m.shape);
  }
  result.report = verify_representation(result.remaining, expected);
  result.report.unsupported_surgery = result.report.reason == FailureReason::FreeCircle ||
                                      result.report.reason == FailureReason::NotIsomorphic;
  return result;
}

std::string svg_document(const CircleSet& cs) {
  const auto& members = cs.members();
  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
  bool have_box = false;
  for (const Member& m : members) {
    if (!m.shape.is_circle()) continue;
    const Point c = m.shape.center();
    const double r = m.shape.radius();
    if (!have_box) {
      lo_x = c.x - r, hi_x = c.x + r, lo_y = c.y - r, hi_y = c.y + r;
      have_box = true;
    } else {
      lo_x = std::min(lo_x, c.x - r), hi_x = std::max(hi_x, c.x + r);
      lo_y = std::min(lo_y, c.y - r), hi_y = std::max(hi_y, c.y + r);
    }
  }
  if (!have_box) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double pad = 0.1 * std::max(hi_x - lo_x, hi_y - lo_y);
  lo_x -= pad, hi_x += pad, lo_y -= pad, hi_y += pad;
  const double w = hi_x - lo_x;
  const double h = hi_y - lo_y;
  const double stroke = std::max(w, h) / 400.0;
  const double dot_radius = std::max(w, h) / 150.0;

  // SVG's y axis points down; flip every y coordinate.
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"" << fmt(600.0 * h / w)
    << "\" viewBox=\"" << fmt(lo_x) << ' ' << fmt(-hi_y) << ' ' << fmt(w) << ' ' << fmt(h) << "\">\n";
  for (const Member& m : members) {
    if (m.shape.is_circle()) {
      s << "  <circle class=\"member\" id=\"" << m.id << "\" cx=\"" << fmt(m.shape.center().x) << "\" cy=\""
        << fmt(-m.shape.center().y) << "\" r=\"" << fmt(m.shape.radius())
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt(stroke) << "\"/>\n";
    } else {
      const Point foot = m.shape.offset() * m.shape.normal();
      const Point dir = m.shape.direction();
      const Point mid{(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
      const Point q = foot + dot(mid - foot, dir) * dir;
      const double reach = w + h;
      const Point p1 = q - reach * dir;
      const Point p2 = q + reach * dir;
      s << "  <line class=\"member\" id=\"" << m.id << "\" x1=\"" << fmt(p1.x) << "\" y1=\"" << fmt(-p1.y)
        << "\" x2=\"" << fmt(p2.x) << "\" y2=\"" << fmt(-p2.y) << "\" stroke=\"black\" stroke-width=\""
        << fmt(stroke) << "\"/>\n";
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      geom::IntersectionClass hit;
      try {
        hit = geom::classify_intersection(members[i].shape, members[j].shape);
      } catch (const Error&) {
        continue;
      }
      const bool touching = hit.tag == geom::IntersectionTag::Touching;
      for (const auto& ep : hit.points) {
        if (ep.is_infinite()) continue;
        s << "  <circle class=\"" << (touching ? "touching" : "crossing") << "\" cx=\"" << fmt(ep.point().x)
          << "\" cy=\"" << fmt(-ep.point().y) << "\" r=\"" << fmt(dot_radius) << "\" fill=\""
          << (touching ? "red" : "blue") << "\"/>\n";
      }
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_document(const graphs::PlaneMultigraph& g) {
  constexpr double size = 500.0;
  constexpr double radius = 200.0;
  const int n = g.order();
  std::vector<Point> pos(n);
  for (int v = 0; v < n; ++v) {
    const double a = 2.0 * std::numbers::pi * v / std::max(n, 1) + std::numbers::pi / 2.0;
    pos[v] = {size / 2.0 + radius * std::cos(a), size / 2.0 - radius * std::sin(a)};
  }

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
    << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";

  std::map<std::pair<int, int>, int> seen, total;
  for (const auto& e : g.edges()) ++total[std::minmax(e.ends[0], e.ends[1])];
  for (const auto& e : g.edges()) {
    const auto key = std::minmax(e.ends[0], e.ends[1]);
    const int k = seen[key]++;
    const int m = total[key];
    const Point a = pos[key.first];
    const Point b = pos[key.second];
    if (key.first == key.second) {
      const Point out = a - Point{size / 2.0, size / 2.0};
      const double len = std::max(norm(out), 1.0);
      const double r = 12.0 + 6.0 * k;
      const Point c = a + (r / len) * out;
      s << "  <circle class=\"edge\" id=\"" << e.id << "\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
        << "\" r=\"" << fmt(r) << "\" fill=\"none\" stroke=\"black\"/>\n";
      continue;
    }
    const Point mid = 0.5 * (a + b);
    const Point d = b - a;
    const double len = std::max(norm(d), 1e-9);
    const Point normal{-d.y / len, d.x / len};
    const double bend = 24.0 * (k - (m - 1) / 2.0);
    const Point c = mid + bend * normal;
    s << "  <path class=\"edge\" id=\"" << e.id << "\" d=\"M " << fmt(a.x) << ' ' << fmt(a.y) << " Q " << fmt(c.x)
      << ' ' << fmt(c.y) << ' ' << fmt(b.x) << ' ' << fmt(b.y) << "\" fill=\"none\" stroke=\"black\"/>\n";
  }
  for (int v = 0; v < n; ++v) {
    s << "  <circle class=\"vertex\" cx=\"" << fmt(pos[v].x) << "\" cy=\"" << fmt(pos[v].y)
      << "\" r=\"4\" fill=\"black\"/>\n"
      << "  <text x=\"" << fmt(pos[v].x + 6.0) << "\" y=\"" << fmt(pos[v].y - 6.0) << "\" font-size=\"10\">"
      << g.name(v) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void render_svg(const CircleSet& cs, const std::string& path) { write_file(path, svg_document(cs)); }

void render_svg(const graphs::PlaneMultigraph& g, const std::string& path) { write_file(path, svg_document(g)); }

}  // namespace crep::representation
