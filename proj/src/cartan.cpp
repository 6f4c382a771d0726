#include "dimerbfz/cartan.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace dimerbfz {

namespace {

std::vector<std::vector<int>> from_edges(int rank, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> a(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) a[i][i] = 2;
  for (auto [i, j] : edges) {
    a[i - 1][j - 1] = -1;
    a[j - 1][i - 1] = -1;
  }
  return a;
}

int parse_rank(std::string_view digits, std::string_view type) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw ValidationError("unknown Cartan type '" + std::string(type) + "'");
  return n;
}

}  // namespace

CartanMatrix::CartanMatrix(std::vector<std::vector<int>> entries, std::string name)
    : entries_(std::move(entries)), name_(std::move(name)) {}

CartanMatrix CartanMatrix::named(std::string_view type) {
  if (type.empty()) throw ValidationError("empty Cartan type");
  const char family = type.front();
  const int n = parse_rank(type.substr(1), type);
  std::vector<std::pair<int, int>> edges;
  switch (family) {
    case 'A':
      if (n < 1) throw ValidationError("type A needs rank >= 1");
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case 'D':
      if (n < 4) throw ValidationError("type D needs rank >= 4");
      for (int i = 1; i < n - 2; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 2, n - 1);
      edges.emplace_back(n - 2, n);
      break;
    case 'E':
      if (n < 6 || n > 8) throw ValidationError("type E needs rank 6, 7 or 8");
      // Bourbaki labelling: 1-3-4-5-6(-7(-8)) with 2 attached to 4.
      edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
      for (int i = 6; i < n; ++i) edges.emplace_back(i, i + 1);
      break;
    default:
      throw ValidationError("unknown Cartan type '" + std::string(type) + "'");
  }
  return CartanMatrix(from_edges(n, edges), std::string(type));
}

CartanMatrix CartanMatrix::from_entries(std::vector<std::vector<int>> entries) {
  const std::size_t r = entries.size();
  if (r == 0) throw ValidationError("Cartan matrix must have rank >= 1");
  for (std::size_t i = 0; i < r; ++i) {
    if (entries[i].size() != r)
      throw ValidationError("Cartan matrix row " + std::to_string(i + 1) + " has length " +
                            std::to_string(entries[i].size()) + ", expected " +
                            std::to_string(r));
  }
  auto where = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  for (std::size_t i = 0; i < r; ++i) {
    if (entries[i][i] != 2)
      throw ValidationError("diagonal entry " + where(i, i) + " is " +
                            std::to_string(entries[i][i]) + ", expected 2");
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      if (entries[i][j] > 0)
        throw ValidationError("off-diagonal entry " + where(i, j) + " is positive (" +
                              std::to_string(entries[i][j]) + ")");
      if (entries[i][j] != entries[j][i])
        throw ValidationError("entry " + where(i, j) + " = " + std::to_string(entries[i][j]) +
                              " differs from " + where(j, i) + " = " +
                              std::to_string(entries[j][i]) + ": matrix is not symmetric");
    }
  }
  return CartanMatrix(std::move(entries), "");
}

void CartanMatrix::check_letter(int i) const {
  if (i < 1 || i > rank())
    throw ValidationError("letter " + std::to_string(i) + " out of range 1.." +
                          std::to_string(rank()));
}

int CartanMatrix::entry(int i, int j) const {
  check_letter(i);
  check_letter(j);
  return entries_[i - 1][j - 1];
}

RootVector CartanMatrix::reflect(int i, const RootVector& v) const {
  check_letter(i);
  if (static_cast<int>(v.size()) != rank())
    throw ValidationError("root vector has length " + std::to_string(v.size()) + ", expected " +
                          std::to_string(rank()));
  RootVector out = v;
  Integer pairing = 0;
  const auto& row = entries_[i - 1];
  for (int j = 0; j < rank(); ++j) pairing += row[j] * v[j];
  out[i - 1] -= pairing;
  return out;
}

RootVector CartanMatrix::simple_root(int i) const {
  check_letter(i);
  RootVector v(rank(), 0);
  v[i - 1] = 1;
  return v;
}

DynkinGraph dynkin_graph(const CartanMatrix& cartan) {
  DynkinGraph g;
  g.rank = cartan.rank();
  g.neighbours.assign(g.rank + 1, {});
  for (int i = 1; i <= g.rank; ++i) {
    for (int j = i + 1; j <= g.rank; ++j) {
      if (cartan.entry(i, j) < 0) {
        g.edges.emplace_back(i, j);
        g.neighbours[i].push_back(j);
        g.neighbours[j].push_back(i);
      }
    }
  }
  return g;
}

RootVector apply_word(const CartanMatrix& cartan, std::span<const int> word, RootVector v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = cartan.reflect(*it, v);
  return v;
}

bool is_reduced(const CartanMatrix& cartan, std::span<const int> word) {
  for (std::size_t k = 0; k < word.size(); ++k) {
    const RootVector image = apply_word(cartan, word.first(k), cartan.simple_root(word[k]));
    if (std::any_of(image.begin(), image.end(), [](const Integer& c) { return c < 0; }))
      return false;
  }
  return true;
}

std::vector<WeylWord> enumerate_weyl(const CartanMatrix& cartan, int max_len,
                                     std::size_t max_elements) {
  if (max_len < 0) throw ValidationError("max_len must be non-negative");
  const int r = cartan.rank();
  // An element is keyed by the images of all simple roots, column-major.
  using Key = std::vector<Integer>;
  auto identity = [&] {
    Key k(static_cast<std::size_t>(r) * r, 0);
    for (int j = 0; j < r; ++j) k[j * r + j] = 1;
    return k;
  }();

  std::map<Key, WeylWord> seen;
  seen.emplace(identity, WeylWord{});
  std::vector<WeylWord> result{WeylWord{}};
  std::vector<std::pair<Key, WeylWord>> layer{{identity, {}}};

  for (int len = 1; len <= max_len && !layer.empty(); ++len) {
    std::map<Key, WeylWord> next;
    for (const auto& [key, word] : layer) {
      for (int s = 1; s <= r; ++s) {
        // w s is longer than w iff w(alpha_s) is a positive root.
        bool positive = true;
        for (int i = 0; i < r; ++i) {
          if (key[(s - 1) * r + i] < 0) {
            positive = false;
            break;
          }
        }
        if (!positive) continue;
        // (w s)(alpha_j) = w(alpha_j) - a_{sj} w(alpha_s)
        Key image = key;
        for (int j = 0; j < r; ++j) {
          const int a = cartan.entry(s, j + 1);
          if (a == 0) continue;
          for (int i = 0; i < r; ++i) image[j * r + i] -= a * key[(s - 1) * r + i];
        }
        if (seen.count(image)) continue;
        WeylWord extended = word;
        extended.push_back(s);
        auto [it, inserted] = next.emplace(image, extended);
        if (!inserted && extended < it->second) it->second = extended;
      }
    }
    std::vector<std::pair<Key, WeylWord>> ordered(next.begin(), next.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [key, word] : ordered) {
      seen.emplace(key, word);
      result.push_back(word);
      if (result.size() > max_elements)
        throw CapError("Weyl group enumeration exceeded " + std::to_string(max_elements) +
                       " elements at length " + std::to_string(len));
    }
    layer = std::move(ordered);
  }
  return result;
}

std::string to_string(const WeylWord& word) {
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) out << (i ? " " : "") << word[i];
  return out.str();
}

}  // namespace dimerbfz
