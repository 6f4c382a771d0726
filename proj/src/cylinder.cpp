#include "dimerbfz/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace dimerbfz {

// ---------------------------------------------------------------------------
// Branches

std::vector<int> BranchDecomposition::sheets_of_string(int string) const {
  std::vector<int> out;
  for (std::size_t s = 0; s < branches.size(); ++s)
    if (std::find(branches[s].begin(), branches[s].end(), string) != branches[s].end())
      out.push_back(static_cast<int>(s));
  return out;
}

int BranchDecomposition::sheet_of_edge(int i, int j) const {
  for (std::size_t s = 0; s < branches.size(); ++s) {
    const auto& path = branches[s];
    for (std::size_t p = 0; p + 1 < path.size(); ++p)
      if ((path[p] == i && path[p + 1] == j) || (path[p] == j && path[p + 1] == i))
        return static_cast<int>(s);
  }
  return -1;
}

int BranchDecomposition::x_in_sheet(std::size_t sheet, int string) const {
  const auto& path = branches.at(sheet);
  auto it = std::find(path.begin(), path.end(), string);
  return it == path.end() ? -1 : static_cast<int>(it - path.begin());
}

BranchDecomposition branch_decompose(const DynkinGraph& graph) {
  const int r = graph.rank;
  // Union-find to detect cycles.
  std::vector<int> parent(r + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [i, j] : graph.edges) {
    const int a = find(i), b = find(j);
    if (a == b)
      throw ValidationError("Dynkin diagram has a cycle through the edge {" + std::to_string(i) +
                            "," + std::to_string(j) + "}; branch decomposition needs a forest");
    parent[a] = b;
  }

  BranchDecomposition out;
  out.graph = graph;
  auto special = [&](int v) { return graph.degree(v) == 1 || graph.degree(v) >= 3; };
  for (int v = 1; v <= r; ++v) {
    if (special(v)) out.special.push_back(v);
    if (graph.degree(v) == 0) out.branches.push_back({v});
  }
  for (int s : out.special) {
    for (int next : graph.neighbours[s]) {
      std::vector<int> path{s, next};
      while (!special(path.back())) {
        const int here = path.back();
        const int prev = path[path.size() - 2];
        const auto& nb = graph.neighbours[here];
        path.push_back(nb[0] == prev ? nb[1] : nb[0]);
      }
      if (path.front() < path.back()) out.branches.push_back(std::move(path));
    }
  }
  std::sort(out.branches.begin(), out.branches.end());
  return out;
}

// ---------------------------------------------------------------------------
// Layout

CylinderLayout::CylinderLayout(BranchDecomposition branches, std::map<int, Placement> placement)
    : branches_(std::move(branches)), placement_(std::move(placement)) {
  for (const auto& [v, p] : placement_) {
    if (p.string < 1 || p.string > branches_.graph.rank)
      throw ValidationError("vertex " + std::to_string(v) + " placed on unknown string " +
                            std::to_string(p.string));
  }
}

const Placement& CylinderLayout::at(int vertex) const {
  auto it = placement_.find(vertex);
  if (it == placement_.end())
    throw ValidationError("vertex " + std::to_string(vertex) + " has no placement");
  return it->second;
}

bool CylinderLayout::covers(const Quiver& quiver) const {
  return std::all_of(quiver.vertices().begin(), quiver.vertices().end(),
                     [&](const Vertex& v) { return placement_.count(v.id) != 0; });
}

std::vector<int> CylinderLayout::string_vertices(int string) const {
  std::vector<int> out;
  for (const auto& [v, p] : placement_)
    if (p.string == string) out.push_back(v);
  std::sort(out.begin(), out.end(),
            [&](int a, int b) { return placement_.at(a).height < placement_.at(b).height; });
  return out;
}

CylinderLayout layout(const BfzQuiver& quiver, const BranchDecomposition& branches) {
  std::map<int, Placement> placement;
  for (const Vertex& v : quiver.quiver.vertices())
    placement.emplace(v.id, Placement{quiver.word.abs_letter(v.id), quiver.word.ordinal(v.id)});
  return CylinderLayout(branches, std::move(placement));
}

std::pair<int, int> sheet_point(const CylinderLayout& layout, int sheet, int vertex) {
  const Placement& p = layout.at(vertex);
  return {layout.branches().x_in_sheet(sheet, p.string), p.height};
}

long long doubled_signed_area(const CylinderLayout& layout, int sheet,
                              const std::vector<int>& cycle_vertices) {
  long long area = 0;
  const std::size_t n = cycle_vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto [x1, y1] = sheet_point(layout, sheet, cycle_vertices[i]);
    auto [x2, y2] = sheet_point(layout, sheet, cycle_vertices[(i + 1) % n]);
    area += static_cast<long long>(x1) * y2 - static_cast<long long>(x2) * y1;
  }
  return area;
}

// ---------------------------------------------------------------------------
// Axiom checks

ProjectionReport check_arrow_projection(const Quiver& quiver, const CylinderLayout& layout) {
  ProjectionReport report;
  const auto& graph = layout.branches().graph;
  for (const Arrow& a : quiver.arrows()) {
    const int s = layout.at(a.src).string;
    const int t = layout.at(a.tgt).string;
    const bool ok = s == t || std::find(graph.neighbours[s].begin(), graph.neighbours[s].end(), t) !=
                                  graph.neighbours[s].end();
    if (!ok) report.violations.push_back(a.id);
  }
  report.pass = report.violations.empty();
  return report;
}

std::vector<int> sheet_arrows(const Quiver& quiver, const CylinderLayout& layout, int sheet) {
  const auto& b = layout.branches();
  std::vector<int> out;
  for (const Arrow& a : quiver.arrows()) {
    const int s = layout.at(a.src).string;
    const int t = layout.at(a.tgt).string;
    const int xs = b.x_in_sheet(sheet, s);
    const int xt = b.x_in_sheet(sheet, t);
    if (xs < 0 || xt < 0) continue;
    if (s == t || std::abs(xs - xt) == 1) out.push_back(a.id);
  }
  return out;
}

PlanarityReport check_planarity_per_sheet(const Quiver& quiver, const CylinderLayout& layout) {
  PlanarityReport report;
  const auto& b = layout.branches();
  std::set<std::pair<int, int>> crossings;
  std::set<int> through;
  for (std::size_t sheet = 0; sheet < b.sheet_count(); ++sheet) {
    const std::vector<int> ids = sheet_arrows(quiver, layout, static_cast<int>(sheet));
    struct Segment {
      int id;
      int x0, y0, x1, y1;  // x0 <= x1; for vertical segments y0 < y1
    };
    std::vector<Segment> segments;
    for (int id : ids) {
      const Arrow& a = quiver.arrow(id);
      auto [xa, ya] = sheet_point(layout, static_cast<int>(sheet), a.src);
      auto [xb, yb] = sheet_point(layout, static_cast<int>(sheet), a.tgt);
      if (xa > xb || (xa == xb && ya > yb)) {
        std::swap(xa, xb);
        std::swap(ya, yb);
      }
      segments.push_back({id, xa, ya, xb, yb});
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const Segment& s = segments[i];
      if (s.x0 == s.x1) {
        for (int v : layout.string_vertices(b.branches[sheet][s.x0])) {
          const int h = layout.at(v).height;
          if (h > s.y0 && h < s.y1) through.insert(s.id);
        }
      }
      for (std::size_t j = i + 1; j < segments.size(); ++j) {
        const Segment& t = segments[j];
        if (s.x0 != t.x0 || s.x1 != t.x1) continue;
        bool cross;
        if (s.x0 == s.x1)
          cross = std::max(s.y0, t.y0) < std::min(s.y1, t.y1);
        else
          cross = static_cast<long long>(s.y0 - t.y0) * (s.y1 - t.y1) < 0;
        if (cross) crossings.insert({std::min(s.id, t.id), std::max(s.id, t.id)});
      }
    }
  }
  report.crossings.assign(crossings.begin(), crossings.end());
  report.through_vertex.assign(through.begin(), through.end());
  report.pass = report.crossings.empty() && report.through_vertex.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Faces

namespace {

struct HalfEdge {
  int arrow;
  int from;
  int to;
};

std::pair<int, int> face_edge(const CylinderLayout& layout, const std::vector<int>& vertices) {
  std::set<int> strings;
  for (int v : vertices) strings.insert(layout.at(v).string);
  if (strings.size() != 2) return {0, 0};
  const int i = *strings.begin();
  const int j = *strings.rbegin();
  const auto& nb = layout.branches().graph.neighbours[i];
  if (std::find(nb.begin(), nb.end(), j) == nb.end()) return {0, 0};
  return {i, j};
}

}  // namespace

std::vector<SheetEmbedding> embed_sheets(const Quiver& quiver, const CylinderLayout& layout) {
  if (!layout.covers(quiver)) throw ValidationError("layout does not cover every vertex");
  const PlanarityReport planarity = check_planarity_per_sheet(quiver, layout);
  if (!planarity.pass)
    throw ValidationError(
        "quiver is not planar in every sheet; run check_planarity_per_sheet for the offending "
        "arrows");
  const auto& b = layout.branches();
  std::vector<SheetEmbedding> out;
  for (std::size_t s = 0; s < b.sheet_count(); ++s) {
    const int sheet = static_cast<int>(s);
    SheetEmbedding emb;
    emb.sheet = sheet;
    for (const Vertex& v : quiver.vertices())
      if (b.x_in_sheet(s, layout.at(v.id).string) >= 0) emb.vertices.push_back(v.id);
    emb.arrows = sheet_arrows(quiver, layout, sheet);

    // Rotation system: incident arrows sorted counter-clockwise by angle.
    std::map<int, std::vector<std::pair<double, HalfEdge>>> around;
    for (int id : emb.arrows) {
      const Arrow& a = quiver.arrow(id);
      auto [xa, ya] = sheet_point(layout, sheet, a.src);
      auto [xb, yb] = sheet_point(layout, sheet, a.tgt);
      around[a.src].push_back({std::atan2(yb - ya, xb - xa), HalfEdge{id, a.src, a.tgt}});
      around[a.tgt].push_back({std::atan2(ya - yb, xa - xb), HalfEdge{id, a.tgt, a.src}});
    }
    for (auto& [v, list] : around)
      std::sort(list.begin(), list.end(), [](const auto& p, const auto& q) {
        return p.first < q.first || (p.first == q.first && p.second.arrow < q.second.arrow);
      });

    std::set<std::pair<int, int>> used;  // (arrow, from)
    for (int id : emb.arrows) {
      const Arrow& arrow = quiver.arrow(id);
      for (const HalfEdge start : {HalfEdge{id, arrow.src, arrow.tgt}, HalfEdge{id, arrow.tgt, arrow.src}}) {
        if (used.count({start.arrow, start.from})) continue;
        std::vector<HalfEdge> walk;
        HalfEdge h = start;
        do {
          used.insert({h.arrow, h.from});
          walk.push_back(h);
          const auto& list = around.at(h.to);
          std::size_t pos = 0;
          while (list[pos].second.arrow != h.arrow) ++pos;
          h = list[(pos + list.size() - 1) % list.size()].second;
        } while (!(h.arrow == start.arrow && h.from == start.from));

        std::vector<int> vertices;
        for (const HalfEdge& e : walk) vertices.push_back(e.from);
        if (doubled_signed_area(layout, sheet, vertices) <= 0) {
          for (const HalfEdge& e : walk) emb.boundary_arrows.insert(e.arrow);
          continue;
        }
        Face face;
        face.sheet = sheet;
        std::size_t forward = 0;
        for (const HalfEdge& e : walk) forward += quiver.arrow(e.arrow).src == e.from;
        if (forward == walk.size()) {
          face.orientation = Orientation::anticlockwise;
          for (const HalfEdge& e : walk) {
            face.arrows.push_back(e.arrow);
            face.vertices.push_back(e.from);
          }
        } else if (forward == 0) {
          face.orientation = Orientation::clockwise;
          for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
            face.arrows.push_back(it->arrow);
            face.vertices.push_back(it->to);
          }
        } else {
          for (const HalfEdge& e : walk) {
            face.arrows.push_back(e.arrow);
            face.vertices.push_back(e.from);
          }
        }
        face.edge = face_edge(layout, face.vertices);
        emb.faces.push_back(std::move(face));
      }
    }
    out.push_back(std::move(emb));
  }
  return out;
}

std::vector<Face> enumerate_faces(const Quiver& quiver, const CylinderLayout& layout) {
  std::vector<Face> faces;
  for (auto& emb : embed_sheets(quiver, layout))
    for (auto& f : emb.faces) faces.push_back(std::move(f));
  auto key = [&](const Face& f) {
    std::vector<int> heights;
    for (int v : f.vertices) heights.push_back(layout.at(v).height);
    std::sort(heights.begin(), heights.end());
    std::vector<int> arrows = f.arrows;
    std::sort(arrows.begin(), arrows.end());
    return std::make_tuple(f.sheet, heights, arrows);
  };
  std::sort(faces.begin(), faces.end(), [&](const Face& a, const Face& b) { return key(a) < key(b); });
  return faces;
}

DimerReport check_dimer(const Quiver& quiver, const CylinderLayout& layout) {
  DimerReport report;
  report.arrow_projection = check_arrow_projection(quiver, layout);
  report.planarity = check_planarity_per_sheet(quiver, layout);
  if (!report.planarity.pass) {
    // Faces are undefined without a planar embedding.
    report.face_projection.pass = false;
    report.face_orientation.pass = false;
    return report;
  }
  report.faces = enumerate_faces(quiver, layout);
  for (std::size_t i = 0; i < report.faces.size(); ++i) {
    const Face& f = report.faces[i];
    if (f.edge == std::pair{0, 0}) report.face_projection.violations.push_back(static_cast<int>(i));
    if (!f.oriented()) report.face_orientation.violations.push_back(static_cast<int>(i));
  }
  report.face_projection.pass = report.face_projection.violations.empty();
  report.face_orientation.pass = report.face_orientation.violations.empty();
  return report;
}

}  // namespace dimerbfz
