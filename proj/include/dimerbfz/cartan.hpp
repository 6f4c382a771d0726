#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dimerbfz {

/// Raised for malformed user input (matrices, words, quivers, JSON).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a bounded search would exceed its resource cap.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Integer = mpz_class;
/// Coordinates of a root-lattice element in the simple-root basis.
using RootVector = std::vector<Integer>;
/// Letters of a Weyl word, each in 1..rank.
using WeylWord = std::vector<int>;

/// Symmetric generalized Cartan matrix. Letters and Dynkin vertices are
/// 1-based throughout the public interface.
class CartanMatrix {
 public:
  /// Accepts "A<n>" (n >= 1), "D<n>" (n >= 4), "E6", "E7", "E8".
  static CartanMatrix named(std::string_view type);
  static CartanMatrix from_entries(std::vector<std::vector<int>> entries);

  int rank() const { return static_cast<int>(entries_.size()); }
  int entry(int i, int j) const;
  bool adjacent(int i, int j) const { return i != j && entry(i, j) < 0; }
  const std::vector<std::vector<int>>& entries() const { return entries_; }
  /// The named type, or empty for explicit matrices.
  const std::string& name() const { return name_; }

  /// s_i(v): coordinate i becomes v_i - sum_j a_ij v_j.
  RootVector reflect(int i, const RootVector& v) const;
  RootVector simple_root(int i) const;

  bool operator==(const CartanMatrix& other) const { return entries_ == other.entries_; }

 private:
  CartanMatrix(std::vector<std::vector<int>> entries, std::string name);
  void check_letter(int i) const;

  std::vector<std::vector<int>> entries_;
  std::string name_;
};

struct DynkinGraph {
  int rank = 0;
  /// Unordered pairs {i, j} with i < j.
  std::vector<std::pair<int, int>> edges;
  /// neighbours[i] for i in 1..rank; index 0 unused.
  std::vector<std::vector<int>> neighbours;

  int degree(int i) const { return static_cast<int>(neighbours.at(i).size()); }
};

DynkinGraph dynkin_graph(const CartanMatrix& cartan);

/// Root-lattice prefix test: the word is reduced iff no prefix w_k sends
/// the next simple root to a vector with a negative coordinate.
bool is_reduced(const CartanMatrix& cartan, std::span<const int> word);

/// Applies s_{w_1} ... s_{w_k} to v (rightmost letter first).
RootVector apply_word(const CartanMatrix& cartan, std::span<const int> word, RootVector v);

/// One lexicographically least reduced word per group element of length
/// at most max_len, ordered by (length, word). Throws CapError once more
/// than max_elements elements have been found.
std::vector<WeylWord> enumerate_weyl(const CartanMatrix& cartan, int max_len,
                                     std::size_t max_elements = 2'000'000);

std::string to_string(const WeylWord& word);

}  // namespace dimerbfz
