#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimerbfz/cartan.hpp"
#include "dimerbfz/polynomial.hpp"

namespace dimerbfz {

struct Vertex {
  int id = 0;
  bool frozen = false;
  std::optional<std::string> label;

  bool operator==(const Vertex&) const = default;
};

struct Arrow {
  int id = 0;
  int src = 0;
  int tgt = 0;

  bool operator==(const Arrow&) const = default;
};

/// Finite directed multigraph with frozen flags. Loops are rejected and
/// opposite arrow pairs are cancelled on construction, so every Quiver is
/// loop-free and 2-acyclic. Arrows between two frozen vertices are kept
/// as given but never created by mutation.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<Vertex> vertices, std::vector<Arrow> arrows);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  bool has_vertex(int id) const { return index_.count(id) != 0; }
  const Vertex& vertex(int id) const;
  /// Position of the vertex in vertices().
  std::size_t index_of(int id) const;
  const Arrow& arrow(int id) const;
  bool has_arrow(int id) const;
  int next_arrow_id() const;

  /// Number of arrows src -> tgt.
  int multiplicity(int src, int tgt) const;

  /// Same vertices and the same multiset of (src, tgt) pairs; arrow ids are
  /// ignored.
  bool same_structure(const Quiver& other) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Arrow> arrows_;
  std::map<int, std::size_t> index_;
};

/// Mutation at a mutable vertex k: reverse arrows at k, add j -> i for each
/// path i -> k -> j of the reversed quiver (unless i and j are both frozen),
/// then cancel 2-cycles. Surviving arrows keep their ids; added arrows get
/// fresh ids.
Quiver mutate_quiver(const Quiver& quiver, int k);

/// Quiver plus one exact cluster variable per vertex. Variable i of the
/// underlying polynomial ring belongs to the i-th vertex of the initial
/// quiver.
class Seed {
 public:
  Seed() = default;
  /// Initial seed: x_v is the ring variable of vertex v.
  explicit Seed(Quiver quiver);
  Seed(Quiver quiver, std::vector<RationalFunction> variables, std::vector<std::string> names);

  const Quiver& quiver() const { return quiver_; }
  const std::vector<RationalFunction>& variables() const { return variables_; }
  const RationalFunction& variable(int vertex_id) const;
  /// Ring variable names, one per vertex ("x<id>", "xm<id>" for negative
  /// ids, or the vertex label).
  const std::vector<std::string>& names() const { return names_; }
  std::string variable_string(int vertex_id) const;

  bool operator==(const Seed& other) const;

 private:
  Quiver quiver_;
  std::vector<RationalFunction> variables_;
  std::vector<std::string> names_;
};

/// Seed mutation: x'_k = (prod_{k->l} x_l + prod_{l->k} x_l) / x_k over the
/// arrows before mutation.
Seed mutate_seed(const Seed& seed, int k);

/// Distinct cluster variables reachable by mutation sequences of length at
/// most depth (bounded exploration; the full cluster algebra is usually
/// infinite). Includes the initial variables.
std::vector<RationalFunction> explore_cluster_variables(const Seed& seed, int depth,
                                                        std::size_t max_seeds = 200'000);

/// Signed adjacency b_ij = #(i->j) - #(j->i), indexed by vertex position.
std::vector<std::vector<int>> exchange_matrix(const Quiver& quiver);

std::string default_variable_name(int vertex_id);

}  // namespace dimerbfz
