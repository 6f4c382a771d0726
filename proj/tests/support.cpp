#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace testing {

Quiver triangle_quiver() {
  return Quiver({{1, false, {}}, {2, false, {}}, {3, false, {}}},
                {{0, 1, 2}, {1, 2, 3}, {2, 3, 1}, {3, 3, 1}});
}

Quiver two_triangle_quiver() {
  return Quiver({{1, false, {}}, {2, false, {}}, {3, false, {}}, {4, false, {}}},
                {{a, 1, 2}, {b, 2, 4}, {c, 4, 1}, {d, 1, 3}, {e, 3, 4}});
}

Instance make_instance(const std::string& type, const WeylWord& u, const WeylWord& v,
                       const std::vector<int>& interleave, FrozenArrows frozen) {
  CartanMatrix cartan = CartanMatrix::named(type);
  ShuffledWord word = build_shuffle(cartan, u, v, interleave);
  BfzQuiver bfz = build_bfz_quiver(cartan, word, frozen);
  BranchDecomposition branches = branch_decompose(dynkin_graph(cartan));
  CylinderLayout lay = layout(bfz, branches);
  return Instance{std::move(cartan), std::move(bfz), std::move(branches), std::move(lay)};
}

std::vector<std::pair<int, int>> arrow_pairs(const Quiver& q) {
  std::vector<std::pair<int, int>> out;
  for (const Arrow& a : q.arrows()) out.emplace_back(a.src, a.tgt);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> a3_drawn_arrows() {
  std::vector<std::pair<int, int>> out{
      {1, -3}, {5, 1}, {2, -2}, {4, 2}, {3, -1},                // along strings
      {-3, -2}, {-2, -1}, {-2, 1}, {-1, 2}, {1, 4}, {2, 3},     // between strings
      {3, 4}, {4, 5},                                           // along the top
  };
  std::sort(out.begin(), out.end());
  return out;
}

std::string fixture_path(const std::string& name) { return std::string(DIMERBFZ_FIXTURES) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> permutation_of(int n, const WeylWord& word) {
  std::vector<int> p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = i;
  for (int s : word) std::swap(p[s - 1], p[s]);
  return p;
}

bool permutation_is_reduced(int n, const WeylWord& word) {
  const std::vector<int> p = permutation_of(n, word);
  std::size_t inversions = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) inversions += p[i] > p[j];
  return inversions == word.size();
}

std::vector<std::vector<int>> matrix_mutation(const std::vector<std::vector<int>>& b, std::size_t k,
                                              const std::vector<bool>& frozen) {
  const std::size_t n = b.size();
  auto out = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out[i][j] = -b[i][j];
      } else if (frozen[i] && frozen[j]) {
        out[i][j] = b[i][j];
      } else {
        const int sign = (b[i][k] > 0) - (b[i][k] < 0);
        out[i][j] = b[i][j] + sign * std::max(b[i][k] * b[k][j], 0);
      }
    }
  }
  return out;
}

namespace {

using Point = std::pair<long long, long long>;

long long cross(Point o, Point p, Point q) {
  return (p.first - o.first) * (q.second - o.second) - (p.second - o.second) * (q.first - o.first);
}

bool on_segment(Point a, Point b, Point p) {
  return cross(a, b, p) == 0 && std::min(a.first, b.first) <= p.first &&
         p.first <= std::max(a.first, b.first) && std::min(a.second, b.second) <= p.second &&
         p.second <= std::max(a.second, b.second);
}

bool strictly_inside(const std::vector<Point>& poly, Point p) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(poly[i], poly[(i + 1) % n], p)) return false;
  bool in = false;
  for (std::size_t i = 0; i < n; ++i) {
    Point a = poly[i], b = poly[(i + 1) % n];
    if ((a.second > p.second) != (b.second > p.second)) {
      // x-coordinate of the crossing compared with p.x, exactly.
      const long long num = (p.second - a.second) * (b.first - a.first);
      const long long den = b.second - a.second;
      const long long lhs = (p.first - a.first) * den;
      if (den > 0 ? lhs < num : lhs > num) in = !in;
    }
  }
  return in;
}

}  // namespace

std::set<std::vector<int>> polygon_faces(const Quiver& q, const CylinderLayout& layout, int sheet) {
  const std::vector<int> arrows = sheet_arrows(q, layout, sheet);
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (arrow, other)
  std::set<int> vertices;
  for (const Vertex& v : q.vertices())
    if (layout.branches().x_in_sheet(sheet, layout.at(v.id).string) >= 0) vertices.insert(v.id);
  for (int id : arrows) {
    const Arrow& a = q.arrow(id);
    adj[a.src].push_back({id, a.tgt});
    adj[a.tgt].push_back({id, a.src});
  }
  auto point = [&](int v) {
    auto [x, y] = sheet_point(layout, sheet, v);
    return Point{2 * x, 2 * y};
  };

  std::set<std::vector<int>> cycles;
  std::vector<int> path_arrows;
  std::vector<int> path_vertices;
  std::set<int> on_path;
  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (auto [id, w] : adj[v]) {
      if (!path_arrows.empty() && id == path_arrows.back()) continue;
      if (w == start && path_arrows.size() >= 2) {
        std::vector<int> cycle = path_arrows;
        cycle.push_back(id);
        std::vector<int> key = cycle;
        std::sort(key.begin(), key.end());
        if (cycles.count(key)) continue;
        std::vector<Point> poly;
        for (int u : path_vertices) poly.push_back(point(u));
        bool empty = true;
        for (int u : vertices)
          if (strictly_inside(poly, point(u))) empty = false;
        for (int other : arrows) {
          if (std::find(cycle.begin(), cycle.end(), other) != cycle.end()) continue;
          const Arrow& oa = q.arrow(other);
          Point p = point(oa.src), r = point(oa.tgt);
          if (strictly_inside(poly, {(p.first + r.first) / 2, (p.second + r.second) / 2})) empty = false;
        }
        long long area = 0;
        for (std::size_t i = 0; i < poly.size(); ++i)
          area += poly[i].first * poly[(i + 1) % poly.size()].second -
                  poly[(i + 1) % poly.size()].first * poly[i].second;
        if (empty && area != 0) cycles.insert(key);
        continue;
      }
      if (w <= start || on_path.count(w)) continue;
      on_path.insert(w);
      path_arrows.push_back(id);
      path_vertices.push_back(w);
      dfs(start, w);
      path_vertices.pop_back();
      path_arrows.pop_back();
      on_path.erase(w);
    }
  };
  for (int s : vertices) {
    on_path = {s};
    path_vertices = {s};
    dfs(s, s);
  }
  return cycles;
}

Quiver random_quiver(std::mt19937& rng, int n, int max_mult, bool with_frozen) {
  std::vector<Vertex> vertices;
  std::uniform_int_distribution<int> coin(0, 3);
  for (int i = 1; i <= n; ++i) vertices.push_back({i, with_frozen && coin(rng) == 0, std::nullopt});
  if (std::all_of(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.frozen; }))
    vertices[0].frozen = false;
  std::vector<Arrow> arrows;
  std::uniform_int_distribution<int> mult(-max_mult, max_mult);
  int id = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (vertices[i - 1].frozen && vertices[j - 1].frozen) continue;
      const int m = mult(rng);
      for (int t = 0; t < std::abs(m); ++t) arrows.push_back(m > 0 ? Arrow{id++, i, j} : Arrow{id++, j, i});
    }
  }
  return Quiver(std::move(vertices), std::move(arrows));
}

WeylWord random_reduced_word(std::mt19937& rng, const CartanMatrix& cartan, int max_len) {
  std::uniform_int_distribution<int> letter(1, cartan.rank());
  std::uniform_int_distribution<int> length(0, max_len);
  const int target = length(rng);
  WeylWord w;
  for (int tries = 0; tries < 50 * (target + 1) && static_cast<int>(w.size()) < target; ++tries) {
    w.push_back(letter(rng));
    if (!is_reduced(cartan, w)) w.pop_back();
  }
  return w;
}

}  // namespace testing
