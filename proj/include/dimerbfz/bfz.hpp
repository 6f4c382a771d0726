#pragma once

#include <map>
#include <vector>

#include "dimerbfz/cartan.hpp"
#include "dimerbfz/quiver.hpp"

namespace dimerbfz {

/// The signed word (-r, ..., -1, i_1, ..., i_m): positions -r..-1 carry the
/// letters -r..-1, positions 1..m carry the shuffle of u (negated letters)
/// and v (positive letters).
class ShuffledWord {
 public:
  ShuffledWord(int rank, std::vector<int> shuffled);

  int rank() const { return rank_; }
  /// m = l(u) + l(v).
  int length() const { return static_cast<int>(shuffled_.size()); }
  int sentinel() const { return length() + 1; }
  bool valid_position(int k) const;
  /// Positions in increasing order: -r..-1, 1..m.
  std::vector<int> positions() const;
  /// Signed letter i_k.
  int letter(int k) const;
  int abs_letter(int k) const { return letter(k) < 0 ? -letter(k) : letter(k); }
  int sign(int k) const { return letter(k) < 0 ? -1 : 1; }
  /// Ordinal of a position in positions(), starting at 0.
  int ordinal(int k) const;
  /// i_1..i_m.
  const std::vector<int>& shuffled() const { return shuffled_; }
  /// The full signed word including the r leading negative letters.
  std::vector<int> full() const;

  bool operator==(const ShuffledWord&) const = default;

 private:
  int rank_;
  std::vector<int> shuffled_;
};

/// interleaving[p] == 0 takes the next letter of u (negated), 1 the next of v.
/// An empty interleaving means all of u followed by all of v.
ShuffledWord build_shuffle(const CartanMatrix& cartan, const WeylWord& u, const WeylWord& v,
                           const std::vector<int>& interleaving = {});

/// Smallest later position with the same absolute letter, else the sentinel.
int k_plus(const ShuffledWord& word, int k);
/// Both k and k_plus(k) are real positions.
bool is_exchangeable(const ShuffledWord& word, int k);

enum class ArrowKind { horizontal, inclined };

/// How arrows between two frozen vertices are treated.
///   omit:  only pairs with an exchangeable endpoint are joined.
///   close: additionally join the topmost (frozen) vertices of Dynkin-adjacent
///          strings, oriented like inclined arrows. This is the convention
///          used by the book-style drawings of these quivers.
enum class FrozenArrows { omit, close };

struct BfzQuiver {
  Quiver quiver;
  ShuffledWord word;
  std::map<int, ArrowKind> kinds;

  int letter(int vertex) const { return word.abs_letter(vertex); }
  ArrowKind kind(int arrow_id) const { return kinds.at(arrow_id); }
};

/// Vertices are the positions of the word; vertex k is frozen iff it is not
/// exchangeable. For k < l: a horizontal arrow when l = k+ (k -> l iff
/// sign(i_l) = +1); an inclined arrow between Dynkin-adjacent letters when
/// l < k+ < l+ with sign(i_l) = sign(i_{k+}), or l < l+ < k+ with
/// sign(i_l) = -sign(i_{l+}) (k -> l iff sign(i_l) = -1).
BfzQuiver build_bfz_quiver(const CartanMatrix& cartan, const ShuffledWord& word,
                           FrozenArrows frozen = FrozenArrows::omit);

}  // namespace dimerbfz
