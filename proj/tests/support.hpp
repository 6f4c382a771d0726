#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "dimerbfz/bfz.hpp"
#include "dimerbfz/cartan.hpp"
#include "dimerbfz/cylinder.hpp"
#include "dimerbfz/potential.hpp"
#include "dimerbfz/quiver.hpp"

namespace testing {

using namespace dimerbfz;

// Fixtures ------------------------------------------------------------------

/// 1 -> 2, 2 -> 3, 3 -> 1 (twice).
Quiver triangle_quiver();
/// a:1->2 (0), b:2->4 (1), c:4->1 (2), d:1->3 (3), e:3->4 (4).
Quiver two_triangle_quiver();
enum TwoTriangleArrow { a = 0, b = 1, c = 2, d = 3, e = 4 };

struct Instance {
  CartanMatrix cartan;
  BfzQuiver bfz;
  BranchDecomposition branches;
  CylinderLayout layout;
};

Instance make_instance(const std::string& type, const WeylWord& u, const WeylWord& v = {},
                       const std::vector<int>& interleave = {},
                       FrozenArrows frozen = FrozenArrows::omit);

/// (src, tgt) pairs, sorted.
std::vector<std::pair<int, int>> arrow_pairs(const Quiver& q);

/// The book-style drawing of the A3 quiver for u = s3 s2 s1 s2 s3, v = e.
std::vector<std::pair<int, int>> a3_drawn_arrows();

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);

// Oracles -------------------------------------------------------------------

/// Type A_n via permutations of 1..n+1: reduced iff length equals the
/// inversion count of the product of adjacent transpositions.
bool permutation_is_reduced(int n, const WeylWord& word);
std::vector<int> permutation_of(int n, const WeylWord& word);

/// Classical matrix mutation of b at index k.
std::vector<std::vector<int>> matrix_mutation(const std::vector<std::vector<int>>& b, std::size_t k,
                                              const std::vector<bool>& frozen);

/// Bounded regions of a sheet by brute force: simple undirected cycles of
/// the sheet subquiver whose polygon contains no vertex and no arrow
/// midpoint in its interior. Each face as a sorted arrow list.
std::set<std::vector<int>> polygon_faces(const Quiver& q, const CylinderLayout& layout, int sheet);

/// Random 2-acyclic quiver on n vertices with up to max_mult parallel arrows.
Quiver random_quiver(std::mt19937& rng, int n, int max_mult, bool with_frozen);

/// Random reduced word of length at most max_len.
WeylWord random_reduced_word(std::mt19937& rng, const CartanMatrix& cartan, int max_len);

}  // namespace testing
