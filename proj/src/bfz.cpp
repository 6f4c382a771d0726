#include "dimerbfz/bfz.hpp"

namespace dimerbfz {

ShuffledWord::ShuffledWord(int rank, std::vector<int> shuffled)
    : rank_(rank), shuffled_(std::move(shuffled)) {
  if (rank_ < 1) throw ValidationError("rank must be positive");
  for (int letter : shuffled_) {
    if (letter == 0 || letter > rank_ || letter < -rank_)
      throw ValidationError("letter " + std::to_string(letter) + " out of range for rank " +
                            std::to_string(rank_));
  }
}

bool ShuffledWord::valid_position(int k) const {
  return (k >= -rank_ && k <= -1) || (k >= 1 && k <= length());
}

std::vector<int> ShuffledWord::positions() const {
  std::vector<int> out;
  for (int k = -rank_; k <= -1; ++k) out.push_back(k);
  for (int k = 1; k <= length(); ++k) out.push_back(k);
  return out;
}

int ShuffledWord::letter(int k) const {
  if (!valid_position(k)) throw ValidationError("invalid position " + std::to_string(k));
  return k < 0 ? k : shuffled_[k - 1];
}

int ShuffledWord::ordinal(int k) const {
  if (!valid_position(k)) throw ValidationError("invalid position " + std::to_string(k));
  return k < 0 ? k + rank_ : rank_ + k - 1;
}

std::vector<int> ShuffledWord::full() const {
  std::vector<int> out;
  for (int k : positions()) out.push_back(letter(k));
  return out;
}

ShuffledWord build_shuffle(const CartanMatrix& cartan, const WeylWord& u, const WeylWord& v,
                           const std::vector<int>& interleaving) {
  if (!is_reduced(cartan, u)) throw ValidationError("u = (" + to_string(u) + ") is not reduced");
  if (!is_reduced(cartan, v)) throw ValidationError("v = (" + to_string(v) + ") is not reduced");
  std::vector<int> pattern = interleaving;
  if (pattern.empty()) {
    pattern.assign(u.size(), 0);
    pattern.resize(u.size() + v.size(), 1);
  }
  if (pattern.size() != u.size() + v.size())
    throw ValidationError("interleaving has length " + std::to_string(pattern.size()) +
                          ", expected l(u) + l(v) = " + std::to_string(u.size() + v.size()));
  std::size_t zeros = 0;
  for (int bit : pattern) {
    if (bit != 0 && bit != 1) throw ValidationError("interleaving entries must be 0 or 1");
    zeros += bit == 0;
  }
  if (zeros != u.size())
    throw ValidationError("interleaving has " + std::to_string(zeros) + " zeros, expected l(u) = " +
                          std::to_string(u.size()));
  std::vector<int> shuffled;
  std::size_t iu = 0, iv = 0;
  for (int bit : pattern) shuffled.push_back(bit == 0 ? -u[iu++] : v[iv++]);
  return ShuffledWord(cartan.rank(), std::move(shuffled));
}

int k_plus(const ShuffledWord& word, int k) {
  const int a = word.abs_letter(k);
  for (int l = k < 0 ? k + 1 : k + 1; l <= word.length(); ++l) {
    if (l == 0) continue;
    if (word.abs_letter(l) == a) return l;
  }
  return word.sentinel();
}

bool is_exchangeable(const ShuffledWord& word, int k) {
  return word.valid_position(k) && word.valid_position(k_plus(word, k));
}

BfzQuiver build_bfz_quiver(const CartanMatrix& cartan, const ShuffledWord& word,
                           FrozenArrows frozen) {
  if (word.rank() != cartan.rank())
    throw ValidationError("word rank " + std::to_string(word.rank()) +
                          " does not match Cartan rank " + std::to_string(cartan.rank()));
  const std::vector<int> positions = word.positions();
  std::map<int, int> plus;
  std::vector<Vertex> vertices;
  for (int k : positions) {
    plus[k] = k_plus(word, k);
    vertices.push_back(Vertex{k, !word.valid_position(plus[k]), std::nullopt});
  }
  const int sentinel = word.sentinel();

  std::vector<Arrow> arrows;
  std::map<int, ArrowKind> kinds;
  auto add = [&](int from, int to, ArrowKind kind) {
    const int id = static_cast<int>(arrows.size());
    arrows.push_back(Arrow{id, from, to});
    kinds.emplace(id, kind);
  };

  for (std::size_t a = 0; a < positions.size(); ++a) {
    const int k = positions[a];
    const int kp = plus[k];
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      const int l = positions[b];
      const int lp = plus[l];
      const bool k_exch = kp != sentinel;
      const bool l_exch = lp != sentinel;
      if (!k_exch && !l_exch) {
        if (frozen == FrozenArrows::close && cartan.adjacent(word.abs_letter(k), word.abs_letter(l))) {
          if (word.sign(l) == -1)
            add(k, l, ArrowKind::inclined);
          else
            add(l, k, ArrowKind::inclined);
        }
        continue;
      }
      if (l == kp) {
        if (word.sign(l) == +1)
          add(k, l, ArrowKind::horizontal);
        else
          add(l, k, ArrowKind::horizontal);
        continue;
      }
      if (!cartan.adjacent(word.abs_letter(k), word.abs_letter(l))) continue;
      const bool first = l < kp && kp < lp && word.sign(l) == word.sign(kp);
      const bool second = l < lp && lp < kp && word.sign(l) == -word.sign(lp);
      if (!first && !second) continue;
      if (word.sign(l) == -1)
        add(k, l, ArrowKind::inclined);
      else
        add(l, k, ArrowKind::inclined);
    }
  }
  return BfzQuiver{Quiver(std::move(vertices), std::move(arrows)), word, std::move(kinds)};
}

}  // namespace dimerbfz
