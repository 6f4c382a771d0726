#include "dimerbfz/quiver.hpp"

#include <algorithm>
#include <set>

namespace dimerbfz {

namespace {

// Removes opposite pairs, dropping the later-listed arrows of each pair.
std::vector<Arrow> cancel_two_cycles(std::vector<Arrow> arrows) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_pair;
  for (std::size_t i = 0; i < arrows.size(); ++i)
    by_pair[{arrows[i].src, arrows[i].tgt}].push_back(i);
  std::vector<bool> dropped(arrows.size(), false);
  for (auto& [key, forward] : by_pair) {
    if (key.first > key.second) continue;
    auto it = by_pair.find({key.second, key.first});
    if (it == by_pair.end()) continue;
    auto& backward = it->second;
    const std::size_t n = std::min(forward.size(), backward.size());
    for (std::size_t i = 0; i < n; ++i) {
      dropped[forward[forward.size() - 1 - i]] = true;
      dropped[backward[backward.size() - 1 - i]] = true;
    }
  }
  std::vector<Arrow> kept;
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (!dropped[i]) kept.push_back(arrows[i]);
  return kept;
}

}  // namespace

Quiver::Quiver(std::vector<Vertex> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i].id, i).second)
      throw ValidationError("duplicate vertex id " + std::to_string(vertices_[i].id));
  }
  std::set<int> arrow_ids;
  for (const Arrow& a : arrows) {
    if (!arrow_ids.insert(a.id).second)
      throw ValidationError("duplicate arrow id " + std::to_string(a.id));
    if (!has_vertex(a.src) || !has_vertex(a.tgt))
      throw ValidationError("arrow " + std::to_string(a.id) + " references an unknown vertex");
    if (a.src == a.tgt)
      throw ValidationError("arrow " + std::to_string(a.id) + " is a loop at vertex " +
                            std::to_string(a.src));
  }
  arrows_ = cancel_two_cycles(std::move(arrows));
}

const Vertex& Quiver::vertex(int id) const { return vertices_.at(index_of(id)); }

std::size_t Quiver::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("no vertex with id " + std::to_string(id));
  return it->second;
}

const Arrow& Quiver::arrow(int id) const {
  for (const Arrow& a : arrows_)
    if (a.id == id) return a;
  throw ValidationError("no arrow with id " + std::to_string(id));
}

bool Quiver::has_arrow(int id) const {
  return std::any_of(arrows_.begin(), arrows_.end(), [id](const Arrow& a) { return a.id == id; });
}

int Quiver::next_arrow_id() const {
  int next = 0;
  for (const Arrow& a : arrows_) next = std::max(next, a.id + 1);
  return next;
}

int Quiver::multiplicity(int src, int tgt) const {
  return static_cast<int>(std::count_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) {
    return a.src == src && a.tgt == tgt;
  }));
}

bool Quiver::same_structure(const Quiver& other) const {
  if (vertices_ != other.vertices_) return false;
  auto pairs = [](const Quiver& q) {
    std::vector<std::pair<int, int>> p;
    for (const Arrow& a : q.arrows_) p.emplace_back(a.src, a.tgt);
    std::sort(p.begin(), p.end());
    return p;
  };
  return pairs(*this) == pairs(other);
}

Quiver mutate_quiver(const Quiver& quiver, int k) {
  const Vertex& pivot = quiver.vertex(k);
  if (pivot.frozen) throw ValidationError("vertex " + std::to_string(k) + " is frozen");

  std::vector<Arrow> arrows;
  std::vector<Arrow> into_k;
  std::vector<Arrow> out_of_k;
  for (Arrow a : quiver.arrows()) {
    if (a.src == k || a.tgt == k) {
      std::swap(a.src, a.tgt);
      (a.tgt == k ? into_k : out_of_k).push_back(a);
    }
    arrows.push_back(a);
  }
  int next_id = quiver.next_arrow_id();
  for (const Arrow& in : into_k) {
    for (const Arrow& out : out_of_k) {
      const int i = in.src;
      const int j = out.tgt;
      if (i == j) continue;
      if (quiver.vertex(i).frozen && quiver.vertex(j).frozen) continue;
      arrows.push_back(Arrow{next_id++, j, i});
    }
  }
  return Quiver(quiver.vertices(), std::move(arrows));
}

std::string default_variable_name(int vertex_id) {
  return vertex_id < 0 ? "xm" + std::to_string(-vertex_id) : "x" + std::to_string(vertex_id);
}

Seed::Seed(Quiver quiver) : quiver_(std::move(quiver)) {
  const std::size_t n = quiver_.vertices().size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& v = quiver_.vertices()[i];
    variables_.push_back(RationalFunction::variable(i, n));
    names_.push_back(v.label.value_or(default_variable_name(v.id)));
  }
}

Seed::Seed(Quiver quiver, std::vector<RationalFunction> variables, std::vector<std::string> names)
    : quiver_(std::move(quiver)), variables_(std::move(variables)), names_(std::move(names)) {
  if (variables_.size() != quiver_.vertices().size() || names_.size() != variables_.size())
    throw ValidationError("seed needs one variable and one name per vertex");
}

const RationalFunction& Seed::variable(int vertex_id) const {
  return variables_.at(quiver_.index_of(vertex_id));
}

std::string Seed::variable_string(int vertex_id) const {
  return variable(vertex_id).to_string(names_);
}

bool Seed::operator==(const Seed& other) const {
  return quiver_.same_structure(other.quiver_) && variables_ == other.variables_;
}

Seed mutate_seed(const Seed& seed, int k) {
  const Quiver& q = seed.quiver();
  Quiver mutated = mutate_quiver(q, k);
  const std::size_t n = q.vertices().size();
  RationalFunction outgoing = RationalFunction::constant(1, n);
  RationalFunction incoming = RationalFunction::constant(1, n);
  for (const Arrow& a : q.arrows()) {
    if (a.src == k) outgoing = outgoing * seed.variable(a.tgt);
    if (a.tgt == k) incoming = incoming * seed.variable(a.src);
  }
  std::vector<RationalFunction> vars = seed.variables();
  vars[q.index_of(k)] = (outgoing + incoming) / seed.variable(k);
  return Seed(std::move(mutated), std::move(vars), seed.names());
}

std::vector<RationalFunction> explore_cluster_variables(const Seed& seed, int depth,
                                                        std::size_t max_seeds) {
  std::vector<RationalFunction> found = seed.variables();
  auto remember = [&](const RationalFunction& f) {
    if (std::none_of(found.begin(), found.end(), [&](const RationalFunction& g) { return g == f; }))
      found.push_back(f);
  };
  struct Item {
    Seed seed;
    int last;
  };
  std::vector<Item> frontier{{seed, 0}};
  bool have_last = false;
  std::size_t visited = 0;
  for (int d = 0; d < depth; ++d) {
    std::vector<Item> next;
    for (const Item& item : frontier) {
      for (const Vertex& v : item.seed.quiver().vertices()) {
        if (v.frozen || (have_last && v.id == item.last)) continue;
        Seed mutated = mutate_seed(item.seed, v.id);
        remember(mutated.variable(v.id));
        next.push_back({std::move(mutated), v.id});
        if (++visited > max_seeds)
          throw CapError("cluster exploration exceeded " + std::to_string(max_seeds) + " seeds");
      }
    }
    frontier = std::move(next);
    have_last = true;
  }
  return found;
}

std::vector<std::vector<int>> exchange_matrix(const Quiver& quiver) {
  const std::size_t n = quiver.vertices().size();
  std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
  for (const Arrow& a : quiver.arrows()) {
    const std::size_t i = quiver.index_of(a.src);
    const std::size_t j = quiver.index_of(a.tgt);
    ++b[i][j];
    --b[j][i];
  }
  return b;
}

}  // namespace dimerbfz
