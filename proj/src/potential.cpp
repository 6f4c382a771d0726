#include "dimerbfz/potential.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace dimerbfz {

// ---------------------------------------------------------------------------
// Paths

bool composable(const Quiver& quiver, const Path& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (quiver.arrow(path[i]).tgt != quiver.arrow(path[i + 1]).src) return false;
  return true;
}

bool is_cycle(const Quiver& quiver, const Path& path) {
  return !path.empty() && composable(quiver, path) &&
         quiver.arrow(path.back()).tgt == quiver.arrow(path.front()).src;
}

bool is_simple_cycle(const Quiver& quiver, const Path& path) {
  if (!is_cycle(quiver, path)) return false;
  std::vector<int> vs = path_vertices(quiver, path);
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

std::vector<int> path_vertices(const Quiver& quiver, const Path& path) {
  std::vector<int> out;
  out.reserve(path.size());
  for (int a : path) out.push_back(quiver.arrow(a).src);
  return out;
}

Path cyc(const Path& cycle) {
  Path best = cycle;
  Path rotated = cycle;
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (rotated < best) best = rotated;
  }
  return best;
}

Path rotate_to(const Path& cycle, int arrow) {
  auto it = std::find(cycle.begin(), cycle.end(), arrow);
  if (it == cycle.end()) return {};
  Path out(it, cycle.end());
  out.insert(out.end(), cycle.begin(), it);
  return out;
}

// ---------------------------------------------------------------------------
// PathElement

PathElement::PathElement(const Path& path, const Rational& coef) { add(path, coef); }

Rational PathElement::coefficient(const Path& path) const {
  auto it = terms_.find(path);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PathElement::add(const Path& path, const Rational& value) {
  Rational coef = value;
  coef.canonicalize();
  if (coef == 0) return;
  auto [it, inserted] = terms_.emplace(path, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

std::size_t PathElement::max_length() const {
  std::size_t n = 0;
  for (const auto& [p, c] : terms_) n = std::max(n, p.size());
  return n;
}

PathElement& PathElement::operator+=(const PathElement& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PathElement& PathElement::operator-=(const PathElement& other) {
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

PathElement PathElement::operator+(const PathElement& other) const {
  PathElement out = *this;
  out += other;
  return out;
}

PathElement PathElement::operator-(const PathElement& other) const {
  PathElement out = *this;
  out -= other;
  return out;
}

PathElement PathElement::scaled(const Rational& c) const {
  PathElement out;
  if (c == 0) return out;
  for (const auto& [p, x] : terms_) out.terms_.emplace(p, x * c);
  return out;
}

namespace {

bool joins(const Quiver& quiver, const Path& a, const Path& b) {
  return a.empty() || b.empty() || quiver.arrow(a.back()).tgt == quiver.arrow(b.front()).src;
}

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

PathElement multiply(const Quiver& quiver, const PathElement& a, const PathElement& b) {
  PathElement out;
  for (const auto& [p, x] : a.terms())
    for (const auto& [q, y] : b.terms())
      if (joins(quiver, p, q)) out.add(concat(p, q), x * y);
  return out;
}

PathElement multiply(const Quiver& quiver, const Path& left, const PathElement& x,
                     const Path& right) {
  PathElement out;
  for (const auto& [p, c] : x.terms())
    if (joins(quiver, left, p) && joins(quiver, p, right) &&
        (!p.empty() || joins(quiver, left, right)))
      out.add(concat(concat(left, p), right), c);
  return out;
}

PathElement cyc(const Quiver& quiver, const PathElement& x) {
  PathElement out;
  for (const auto& [p, c] : x.terms()) out.add(is_cycle(quiver, p) ? cyc(p) : p, c);
  return out;
}

// ---------------------------------------------------------------------------
// Potentials

Potential::Potential(const Quiver& quiver, PathElement element) : element_(std::move(element)) {
  for (const auto& [p, c] : element_.terms()) {
    for (int a : p)
      if (!quiver.has_arrow(a)) throw ValidationError("potential uses unknown arrow " + std::to_string(a));
    if (!is_cycle(quiver, p)) throw ValidationError("potential term is not a cycle");
  }
}

namespace {

Path anchored(const Quiver& quiver, const Face& face, Anchor anchor) {
  if (!face.oriented() || !is_cycle(quiver, face.arrows))
    throw ValidationError("face is not an oriented cycle");
  const std::vector<int> vs = path_vertices(quiver, face.arrows);
  const auto it = anchor == Anchor::min_vertex ? std::min_element(vs.begin(), vs.end())
                                               : std::max_element(vs.begin(), vs.end());
  Path out = face.arrows;
  std::rotate(out.begin(), out.begin() + (it - vs.begin()), out.end());
  return out;
}

Rational face_sign(const Face& face) {
  return face.orientation == Orientation::clockwise ? Rational(1) : Rational(-1);
}

}  // namespace

Potential superpotential(const Quiver& quiver, const std::vector<Face>& faces, Anchor anchor) {
  PathElement s;
  for (const Face& f : faces) s.add(anchored(quiver, f, anchor), face_sign(f));
  return Potential(quiver, std::move(s));
}

std::map<int, Potential> sheet_potentials(const Quiver& quiver, const std::vector<Face>& faces,
                                          Anchor anchor) {
  std::map<int, PathElement> parts;
  for (const Face& f : faces) parts[f.sheet].add(anchored(quiver, f, anchor), face_sign(f));
  std::map<int, Potential> out;
  for (auto& [sheet, s] : parts) out.emplace(sheet, Potential(quiver, std::move(s)));
  return out;
}

PathElement cyclic_derivative(const PathElement& s, int arrow) {
  PathElement out;
  for (const auto& [p, c] : s.terms()) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != arrow) continue;
      Path rest(p.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.end());
      rest.insert(rest.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
      out.add(rest, c);
    }
  }
  return out;
}

PathElement cyclic_derivative(const Potential& s, int arrow) {
  return cyclic_derivative(s.element(), arrow);
}

std::vector<JacobianGenerator> jacobian_generators(const Quiver& quiver, const Potential& s) {
  std::vector<int> ids;
  for (const Arrow& a : quiver.arrows()) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());
  std::vector<JacobianGenerator> out;
  for (int id : ids) {
    PathElement d = cyclic_derivative(s, id);
    if (!d.is_zero()) out.push_back({id, std::move(d)});
  }
  return out;
}

std::vector<Face> faces_from_potential(const Quiver& quiver, const Potential& s) {
  std::vector<Face> out;
  for (const auto& [p, c] : s.element().terms()) {
    Face f;
    f.arrows = p;
    f.vertices = path_vertices(quiver, p);
    f.orientation = c > 0 ? Orientation::clockwise : Orientation::anticlockwise;
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expansions

void accumulate(Expansion& into, const Expansion& from, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [t, c] : from) {
    auto [it, inserted] = into.emplace(t, c * scale);
    if (!inserted) {
      it->second += c * scale;
      if (it->second == 0) into.erase(it);
    }
  }
}

namespace {

class DerivativeCache {
 public:
  explicit DerivativeCache(const Potential& s) : s_(s) {}
  const PathElement& operator()(int arrow) {
    auto it = cache_.find(arrow);
    if (it == cache_.end()) it = cache_.emplace(arrow, cyclic_derivative(s_, arrow)).first;
    return it->second;
  }

 private:
  const Potential& s_;
  std::map<int, PathElement> cache_;
};

}  // namespace

PathElement expand(const Quiver& quiver, const Potential& s, const Expansion& expansion) {
  DerivativeCache d(s);
  PathElement out;
  for (const auto& [t, c] : expansion) out += multiply(quiver, t.left, d(t.arrow), t.right).scaled(c);
  return out;
}

std::size_t max_term_length(const Quiver&, const Potential& s, const Expansion& expansion) {
  DerivativeCache d(s);
  std::size_t n = 0;
  for (const auto& [t, c] : expansion)
    n = std::max(n, t.left.size() + d(t.arrow).max_length() + t.right.size());
  return n;
}

bool replay(const Quiver& quiver, const Potential& s, const Expansion& expansion,
            const PathElement& target) {
  return cyc(quiver, expand(quiver, s, expansion)) == cyc(quiver, target);
}

// ---------------------------------------------------------------------------
// Faces

std::vector<int> face_distances(const std::vector<Face>& faces, const std::set<int>& boundary_arrows) {
  const std::size_t n = faces.size();
  std::map<int, std::vector<std::size_t>> by_arrow;
  for (std::size_t i = 0; i < n; ++i)
    for (int a : faces[i].arrows) by_arrow[a].push_back(i);
  std::vector<int> dist(n, -1);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::any_of(faces[i].arrows.begin(), faces[i].arrows.end(),
                    [&](int a) { return boundary_arrows.count(a) != 0; })) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t f = queue.front();
    queue.pop_front();
    for (int a : faces[f].arrows)
      for (std::size_t g : by_arrow[a])
        if (dist[g] < 0) {
          dist[g] = dist[f] + 1;
          queue.push_back(g);
        }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i] < 0)
      throw std::logic_error("face " + std::to_string(i) + " is not reachable from the boundary");
  return dist;
}

int face_distance(std::size_t face, const std::vector<Face>& faces,
                  const std::set<int>& boundary_arrows) {
  return face_distances(faces, boundary_arrows).at(face);
}

std::map<std::size_t, Certificate> face_certificates(const Quiver& quiver, const Potential& s,
                                                     const std::vector<Face>& faces,
                                                     const std::vector<std::size_t>& order) {
  std::vector<std::size_t> sequence = order;
  if (sequence.empty())
    for (std::size_t i = 0; i < faces.size(); ++i) sequence.push_back(i);
  std::map<Path, std::size_t> face_of;
  for (std::size_t i = 0; i < faces.size(); ++i) face_of.emplace(cyc(faces[i].arrows), i);

  DerivativeCache d(s);
  std::map<std::size_t, Certificate> done;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i : sequence) {
      if (done.count(i)) continue;
      const Face& face = faces[i];
      const Path key = cyc(face.arrows);
      struct Option {
        int arrow;
        Rational own;
        std::vector<std::pair<std::size_t, Rational>> others;
      };
      std::optional<Option> best;
      for (int a : face.arrows) {
        Option opt{a, 0, {}};
        bool blocked = false;
        for (const auto& [t, c] : d(a).terms()) {
          const Path whole = cyc(concat(Path{a}, t));
          if (whole == key) {
            opt.own += c;
            continue;
          }
          auto it = face_of.find(whole);
          if (it == face_of.end() || !done.count(it->second)) {
            blocked = true;
            break;
          }
          opt.others.emplace_back(it->second, c);
        }
        if (blocked || opt.own == 0) continue;
        if (!best || opt.others.size() < best->others.size()) best = std::move(opt);
        if (best->others.empty()) break;
      }
      if (!best) continue;

      Certificate cert;
      cert.cycle = face.arrows;
      const Rational inv = 1 / best->own;
      cert.expansion.emplace(JTerm{Path{best->arrow}, best->arrow, Path{}}, inv);
      CertificateStep step;
      step.kind = best->others.empty() ? StepKind::boundary : StepKind::adjacent;
      step.edge = best->arrow;
      step.face = face.arrows;
      for (const auto& [g, c] : best->others) {
        accumulate(cert.expansion, done.at(g).expansion, -c * inv);
        step.others.push_back(faces[g].arrows);
      }
      cert.steps.push_back(std::move(step));
      cert.verified = replay(quiver, s, cert.expansion, PathElement(face.arrows));
      if (!cert.verified)
        throw std::logic_error("certificate replay failed for face " + std::to_string(i));
      done.emplace(i, std::move(cert));
      progress = true;
    }
  }
  return done;
}

// ---------------------------------------------------------------------------
// Geometry of cycles

int cycle_sheet(const Quiver& quiver, const CylinderLayout& layout, const Path& cycle) {
  for (std::size_t s = 0; s < layout.branches().sheet_count(); ++s) {
    const std::vector<int> arrows = sheet_arrows(quiver, layout, static_cast<int>(s));
    const std::set<int> in_sheet(arrows.begin(), arrows.end());
    if (std::all_of(cycle.begin(), cycle.end(), [&](int a) { return in_sheet.count(a) != 0; }))
      return static_cast<int>(s);
  }
  return -1;
}

namespace {

// Ray casting with exact integers; the point must not lie on the polygon.
bool inside(const std::vector<std::pair<long long, long long>>& polygon, long long px, long long py) {
  bool in = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto [ax, ay] = polygon[i];
    auto [bx, by] = polygon[(i + 1) % n];
    if ((ay > py) == (by > py)) continue;
    const long long t = (px - ax) * (by - ay) - (py - ay) * (bx - ax);
    if (by > ay ? t < 0 : t > 0) in = !in;
  }
  return in;
}

}  // namespace

std::vector<std::size_t> enclosed_faces(const Quiver& quiver, const CylinderLayout& layout,
                                        const std::vector<Face>& faces, const Path& cycle) {
  std::vector<std::size_t> out;
  const int sheet = cycle_sheet(quiver, layout, cycle);
  if (sheet < 0) return out;
  std::vector<std::pair<long long, long long>> polygon;
  for (int v : path_vertices(quiver, cycle)) {
    auto [x, y] = sheet_point(layout, sheet, v);
    polygon.emplace_back(x, y);
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (f.sheet != sheet || f.vertices.empty()) continue;
    const long long n = static_cast<long long>(f.vertices.size());
    long long sx = 0, sy = 0;
    for (int v : f.vertices) {
      auto [x, y] = sheet_point(layout, sheet, v);
      sx += x;
      sy += y;
    }
    std::vector<std::pair<long long, long long>> scaled;
    for (auto [x, y] : polygon) scaled.emplace_back(x * n, y * n);
    if (inside(scaled, sx, sy)) out.push_back(i);
  }
  return out;
}

namespace {

// F = e p1 with p1 a contiguous part of C and e not on C.
std::optional<int> splitting_edge(const Face& face, const Path& cycle) {
  if (!face.oriented()) return std::nullopt;
  const std::set<int> on_cycle(cycle.begin(), cycle.end());
  std::vector<int> off;
  for (int a : face.arrows)
    if (!on_cycle.count(a)) off.push_back(a);
  if (off.size() != 1) return std::nullopt;
  const Path rotated = rotate_to(face.arrows, off[0]);
  const Path p1(rotated.begin() + 1, rotated.end());
  if (p1.empty()) return std::nullopt;
  const Path from = rotate_to(cycle, p1.front());
  if (from.size() < p1.size() || !std::equal(p1.begin(), p1.end(), from.begin())) return std::nullopt;
  return off[0];
}

}  // namespace

std::optional<DifferentiableEdge> find_differentiable_edge(const Quiver& quiver,
                                                           const CylinderLayout& layout,
                                                           const std::vector<Face>& faces,
                                                           const Path& cycle) {
  const int sheet = cycle_sheet(quiver, layout, cycle);
  if (sheet < 0 || !is_simple_cycle(quiver, cycle)) return std::nullopt;
  const std::vector<std::size_t> enclosed = enclosed_faces(quiver, layout, faces, cycle);
  if (enclosed.size() < 2) return std::nullopt;
  const std::set<std::size_t> inner(enclosed.begin(), enclosed.end());

  auto x_of = [&](int v) { return sheet_point(layout, sheet, v).first; };
  const std::size_t n = cycle.size();
  std::vector<int> xs;
  for (int v : path_vertices(quiver, cycle)) xs.push_back(x_of(v));

  // Runs of C along the extreme string, entered by an inclined arrow e1.
  auto along_extreme = [&](int x) -> std::optional<DifferentiableEdge> {
    for (std::size_t i = 0; i < n; ++i) {
      const Arrow& a = quiver.arrow(cycle[i]);
      const std::size_t prev = (i + n - 1) % n;
      const Arrow& e1 = quiver.arrow(cycle[prev]);
      if (x_of(a.src) != x || x_of(a.tgt) != x || x_of(e1.src) == x) continue;
      for (std::size_t f : enclosed) {
        if (std::find(faces[f].arrows.begin(), faces[f].arrows.end(), e1.id) == faces[f].arrows.end())
          continue;
        if (auto e = splitting_edge(faces[f], cycle)) return DifferentiableEdge{*e, f};
      }
    }
    return std::nullopt;
  };
  const int x_max = *std::max_element(xs.begin(), xs.end());
  const int x_min = *std::min_element(xs.begin(), xs.end());
  if (auto found = along_extreme(x_max)) return found;
  if (auto found = along_extreme(x_min)) return found;
  spdlog::debug("no split along the extreme strings of a {}-arrow cycle; trying every face", n);
  for (std::size_t f : enclosed)
    if (auto e = splitting_edge(faces[f], cycle)) return DifferentiableEdge{*e, f};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

using SparseRow = std::map<std::size_t, Rational>;

// Solves sum_j x_j column_j = target; columns are given as rows x columns
// entries. Returns nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(std::vector<SparseRow> rows, std::size_t columns) {
  std::map<std::size_t, SparseRow> pivots;  // leading column -> row
  for (SparseRow& row : rows) {
    auto it = row.begin();
    while (it != row.end()) {
      const std::size_t col = it->first;
      auto p = pivots.find(col);
      if (p == pivots.end()) {
        if (col == columns) return std::nullopt;
        const Rational lead = it->second;
        for (auto& [c, v] : row) v /= lead;
        pivots.emplace(col, std::move(row));
        break;
      }
      const Rational factor = it->second;
      for (const auto& [c, v] : p->second) {
        auto [slot, inserted] = row.emplace(c, -factor * v);
        if (!inserted) {
          slot->second -= factor * v;
          if (slot->second == 0) row.erase(slot);
        }
      }
      it = row.upper_bound(col);
    }
  }
  std::vector<Rational> x(columns, 0);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto& [lead, row] = *it;
    Rational value = 0;
    for (const auto& [c, v] : row) {
      if (c == columns)
        value += v;
      else if (c != lead)
        value -= v * x[c];
    }
    x[lead] = value;
  }
  return x;
}

}  // namespace

MembershipResult brute_force_membership(const Quiver& quiver, const Potential& s,
                                        const Path& cycle, std::size_t max_length,
                                        std::size_t max_dimension) {
  if (!is_cycle(quiver, cycle)) throw ValidationError("membership target is not a cycle");
  MembershipResult result;
  const std::vector<JacobianGenerator> gens = jacobian_generators(quiver, s);
  const Path target = cyc(cycle);
  const bool monomial =
      std::all_of(gens.begin(), gens.end(), [](const JacobianGenerator& g) { return g.element.terms().size() == 1; });

  if (monomial) {
    Path rotated = target;
    for (std::size_t r = 0; r < target.size(); ++r) {
      for (const JacobianGenerator& g : gens) {
        const auto& [t, c] = *g.element.terms().begin();
        if (t.size() < rotated.size() && rotated.size() <= max_length &&
            std::equal(t.begin(), t.end(), rotated.begin())) {
          result.verdict = Membership::member;
          result.witness.emplace(JTerm{{}, g.arrow, Path(rotated.begin() + static_cast<std::ptrdiff_t>(t.size()), rotated.end())},
                                 1 / c);
          result.dimension = 1;
          return result;
        }
      }
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    }
    result.verdict = target.size() <= max_length ? Membership::not_member_exact
                                                 : Membership::not_certified_within_cap;
    return result;
  }

  // Connected component of the target in the bipartite graph between
  // cyclic monomials and generators d_a(S) w.
  std::map<Path, std::size_t> monomials;
  std::vector<Path> monomial_list;
  std::map<std::pair<int, Path>, std::size_t> generator_index;
  std::vector<std::pair<int, Path>> generator_list;
  std::vector<PathElement> generator_images;
  std::deque<std::size_t> queue;
  auto monomial_id = [&](const Path& p) {
    auto [it, inserted] = monomials.emplace(p, monomial_list.size());
    if (inserted) {
      monomial_list.push_back(p);
      queue.push_back(it->second);
    }
    return it->second;
  };
  monomial_id(target);
  if (target.size() > max_length) return result;
  while (!queue.empty()) {
    const Path m = monomial_list[queue.front()];
    queue.pop_front();
    Path rotated = m;
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (const JacobianGenerator& g : gens) {
        for (const auto& [t, c] : g.element.terms()) {
          if (t.size() >= rotated.size() || !std::equal(t.begin(), t.end(), rotated.begin())) continue;
          Path w(rotated.begin() + static_cast<std::ptrdiff_t>(t.size()), rotated.end());
          if (g.element.max_length() + w.size() > max_length) continue;
          auto key = std::make_pair(g.arrow, w);
          if (generator_index.count(key)) continue;
          generator_index.emplace(key, generator_list.size());
          generator_list.push_back(key);
          PathElement image = cyc(quiver, multiply(quiver, {}, g.element, w));
          for (const auto& [p, x] : image.terms()) monomial_id(p);
          generator_images.push_back(std::move(image));
          if (generator_list.size() > max_dimension)
            throw CapError("membership system exceeds " + std::to_string(max_dimension) +
                           " unknowns (" + std::to_string(monomial_list.size()) + " monomials)");
        }
      }
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    }
  }
  result.dimension = generator_list.size();

  const std::size_t columns = generator_list.size();
  std::vector<SparseRow> rows(monomial_list.size());
  for (std::size_t j = 0; j < columns; ++j)
    for (const auto& [p, x] : generator_images[j].terms()) rows[monomials.at(p)].emplace(j, x);
  rows[monomials.at(target)].emplace(columns, 1);
  const auto x = solve(std::move(rows), columns);
  if (!x) return result;
  for (std::size_t j = 0; j < columns; ++j)
    if ((*x)[j] != 0) result.witness.emplace(JTerm{{}, generator_list[j].first, generator_list[j].second}, (*x)[j]);
  if (!replay(quiver, s, result.witness, PathElement(cycle)))
    throw std::logic_error("membership witness failed to replay");
  result.verdict = Membership::member;
  return result;
}

// ---------------------------------------------------------------------------
// Rigidity

std::vector<Path> simple_cycles(const Quiver& quiver, std::size_t length_cap, std::size_t max_cycles) {
  std::vector<int> ids;
  for (const Vertex& v : quiver.vertices()) ids.push_back(v.id);
  std::sort(ids.begin(), ids.end());
  std::map<int, std::vector<const Arrow*>> out_arrows;
  for (const Arrow& a : quiver.arrows()) out_arrows[a.src].push_back(&a);

  std::vector<Path> cycles;
  std::set<int> on_path;
  Path path;
  for (int start : ids) {
    std::function<void(int)> dfs = [&](int v) {
      for (const Arrow* a : out_arrows[v]) {
        if (a->tgt == start) {
          path.push_back(a->id);
          if (path.size() > length_cap)
            throw CapError("simple cycle of length " + std::to_string(path.size()) +
                           " exceeds the cap " + std::to_string(length_cap));
          cycles.push_back(cyc(path));
          if (cycles.size() > max_cycles)
            throw CapError("more than " + std::to_string(max_cycles) + " simple cycles");
          path.pop_back();
          continue;
        }
        if (a->tgt < start || on_path.count(a->tgt)) continue;
        on_path.insert(a->tgt);
        path.push_back(a->id);
        dfs(a->tgt);
        path.pop_back();
        on_path.erase(a->tgt);
      }
    };
    on_path = {start};
    dfs(start);
  }
  std::sort(cycles.begin(), cycles.end(), [](const Path& a, const Path& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return cycles;
}

namespace {

class Certifier {
 public:
  Certifier(const Quiver& quiver, const CylinderLayout* layout, const std::vector<Face>& faces,
            const Potential& s, const RigidityOptions& options)
      : quiver_(quiver), layout_(layout), faces_(faces), s_(s), options_(options), d_(s) {}

  void certify_faces() {
    std::vector<std::size_t> order;
    if (layout_) {
      std::set<int> boundary;
      for (const SheetEmbedding& emb : embed_sheets(quiver_, *layout_))
        boundary.insert(emb.boundary_arrows.begin(), emb.boundary_arrows.end());
      std::vector<int> dist;
      try {
        dist = face_distances(faces_, boundary);
      } catch (const std::logic_error&) {
        dist.assign(faces_.size(), 0);
      }
      for (std::size_t i = 0; i < faces_.size(); ++i) order.push_back(i);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    }
    face_certs_ = face_certificates(quiver_, s_, faces_, order);
    for (const auto& [i, cert] : face_certs_) memo_.emplace(cyc(faces_[i].arrows), cert);
  }

  const std::map<std::size_t, Certificate>& face_certs() const { return face_certs_; }

  struct Outcome {
    std::optional<Certificate> certificate;
    bool oracle_only = false;
    Membership oracle = Membership::member;
  };

  Outcome certify(const Path& cycle) {
    Outcome out;
    if (auto c = structural(cycle, 0)) {
      out.certificate = std::move(c);
      return out;
    }
    const MembershipResult r = oracle(cycle);
    out.oracle = r.verdict;
    out.oracle_only = true;
    if (r.verdict == Membership::member) out.certificate = oracle_certificate(cycle, r);
    return out;
  }

  bool multi_sheet(const Path& cycle) const {
    return layout_ && cycle_sheet(quiver_, *layout_, cycle) < 0;
  }

 private:
  MembershipResult oracle(const Path& cycle) {
    return brute_force_membership(quiver_, s_, cycle, cycle.size() + options_.oracle_slack,
                                  options_.oracle_max_dimension);
  }

  Certificate oracle_certificate(const Path& cycle, const MembershipResult& r) {
    Certificate cert;
    cert.cycle = cycle;
    cert.expansion = r.witness;
    CertificateStep step;
    step.kind = StepKind::oracle;
    step.witness = r.witness;
    cert.steps.push_back(std::move(step));
    cert.verified = replay(quiver_, s_, cert.expansion, PathElement(cycle));
    return cert;
  }

  std::optional<Certificate> structural(const Path& cycle, int depth) {
    const Path key = cyc(cycle);
    if (auto it = memo_.find(key); it != memo_.end()) {
      Certificate cert = it->second;
      cert.cycle = cycle;
      return cert;
    }
    if (!layout_ || depth > 64) return std::nullopt;
    const auto edge = find_differentiable_edge(quiver_, *layout_, faces_, cycle);
    if (!edge) return std::nullopt;
    const std::size_t enclosed = enclosed_faces(quiver_, *layout_, faces_, cycle).size();

    // C = p1 p2 with F = e p1.
    const Face& face = faces_[edge->face];
    const Path f_rot = rotate_to(face.arrows, edge->edge);
    const Path p1(f_rot.begin() + 1, f_rot.end());
    const Path c_rot = rotate_to(cycle, p1.front());
    const Path p2(c_rot.begin() + static_cast<std::ptrdiff_t>(p1.size()), c_rot.end());
    const PathElement& de = d_(edge->edge);
    const Rational own = de.coefficient(p1);
    if (own == 0) return std::nullopt;

    Certificate cert;
    cert.cycle = cycle;
    cert.expansion.emplace(JTerm{{}, edge->edge, p2}, 1 / own);
    CertificateStep step;
    step.kind = StepKind::split;
    step.edge = edge->edge;
    step.face = face.arrows;
    std::vector<Certificate> residual_certs;
    for (const auto& [q, c] : de.terms()) {
      if (q == p1) continue;
      const Path residual = concat(q, p2);
      std::optional<Certificate> sub;
      const bool smaller = is_simple_cycle(quiver_, residual) &&
                           cycle_sheet(quiver_, *layout_, residual) >= 0 &&
                           enclosed_faces(quiver_, *layout_, faces_, residual).size() < enclosed;
      if (smaller) sub = structural(residual, depth + 1);
      if (!sub) {
        const MembershipResult r = oracle(residual);
        if (r.verdict != Membership::member) return std::nullopt;
        sub = oracle_certificate(residual, r);
      }
      accumulate(cert.expansion, sub->expansion, -c / own);
      step.others.push_back(residual);
      residual_certs.push_back(std::move(*sub));
    }
    cert.steps.push_back(std::move(step));
    for (const Certificate& sub : residual_certs)
      cert.steps.insert(cert.steps.end(), sub.steps.begin(), sub.steps.end());
    cert.verified = replay(quiver_, s_, cert.expansion, PathElement(cycle));
    if (!cert.verified) throw std::logic_error("split certificate failed to replay");
    memo_.emplace(key, cert);
    return cert;
  }

  const Quiver& quiver_;
  const CylinderLayout* layout_;
  const std::vector<Face>& faces_;
  const Potential& s_;
  RigidityOptions options_;
  DerivativeCache d_;
  std::map<std::size_t, Certificate> face_certs_;
  std::map<Path, Certificate> memo_;
};

}  // namespace

RigidityReport rigidity_check(const Quiver& quiver, const CylinderLayout* layout,
                              const std::vector<Face>& faces, const Potential& s,
                              const RigidityOptions& options) {
  const std::size_t cap = options.length_cap ? options.length_cap : quiver.vertices().size();
  const std::vector<Path> cycles = simple_cycles(quiver, cap);
  Certifier certifier(quiver, layout, faces, s, options);
  certifier.certify_faces();

  RigidityReport report;
  report.face_certificates = certifier.face_certs();
  report.rigid = true;
  for (const Path& c : cycles) {
    CycleResult result;
    result.cycle = c;
    result.multi_sheet = certifier.multi_sheet(c);
    if (result.multi_sheet) spdlog::debug("cycle through several sheets routed to the oracle");
    auto outcome = certifier.certify(c);
    result.oracle = outcome.oracle;
    result.oracle_only = outcome.oracle_only;
    if (outcome.certificate && outcome.certificate->verified) {
      result.certified = true;
      result.certificate = std::move(*outcome.certificate);
      ++report.certified;
      if (result.oracle_only) ++report.oracle_only;
    } else {
      report.rigid = false;
      result.certificate.cycle = c;
    }
    report.cycles.push_back(std::move(result));
  }
  return report;
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::boundary: return "boundary";
    case StepKind::adjacent: return "adjacent";
    case StepKind::split: return "split";
    case StepKind::oracle: return "oracle";
  }
  return "oracle";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::not_member_exact: return "not_member_exact";
    case Membership::not_certified_within_cap: return "not_certified_within_cap";
  }
  return "not_certified_within_cap";
}

}  // namespace dimerbfz
