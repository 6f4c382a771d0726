#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dimerbfz/bfz.hpp"
#include "dimerbfz/cartan.hpp"
#include "dimerbfz/cylinder.hpp"
#include "dimerbfz/potential.hpp"
#include "dimerbfz/quiver.hpp"

namespace dimerbfz {

using Json = nlohmann::ordered_json;

/// Parses a word of space-separated letters, e.g. "3 2 1 2 3".
WeylWord parse_word(const std::string& text);
/// Parses "0010" style interleavings; spaces are ignored.
std::vector<int> parse_interleave(const std::string& text);
/// A named type or a JSON array of integer rows.
CartanMatrix parse_cartan(const std::string& text);

// Quiver ----------------------------------------------------------------------

/// {"vertices":[{"id","frozen","label"?}],"arrows":[{"id","src","tgt"}]}
Json to_json(const Quiver& quiver);
/// Throws ValidationError on malformed input.
Quiver quiver_from_json(const Json& j);

/// Quiver JSON plus per-vertex letter (signed), position and exchangeable
/// and per-arrow kind.
Json to_json(const BfzQuiver& bfz);

/// {"sheets":[{"sheet","strings"}],"placement":[{"vertex","string","height"}]}
Json to_json(const CylinderLayout& layout);
/// Placement only; the branches come from the given Cartan matrix.
CylinderLayout layout_from_json(const Json& j, const CartanMatrix& cartan);

Json to_json(const Seed& seed);

// Instances -------------------------------------------------------------------

/// A quiver with whatever structure its source provides.
struct Instance {
  std::optional<CartanMatrix> cartan;
  std::optional<ShuffledWord> word;
  Quiver quiver;
  /// Arrow kinds of a BFZ quiver.
  std::map<int, ArrowKind> kinds;
  std::optional<CylinderLayout> layout;
};

/// BFZ quiver of (cartan, u, v, interleave) with its cylinder layout.
Instance build_instance(const CartanMatrix& cartan, const WeylWord& u, const WeylWord& v,
                        const std::vector<int>& interleave, FrozenArrows frozen);

/// {"cartan"?, "word"?, "quiver", "layout"?}; "quiver" carries the BFZ
/// extensions when the instance has a word. A bare quiver stays bare.
Json to_json(const Instance& instance);
/// Accepts an instance document or a bare quiver. A layout needs "cartan".
Instance instance_from_json(const Json& j);

/// Faces of the layout when there is one, otherwise of the potential.
std::vector<Face> instance_faces(const Instance& instance, const Potential* potential);

// Potentials ------------------------------------------------------------------

/// {"terms":[{"coef":"p/q","path":[arrow ids]}]}; coef may be an integer.
Json to_json(const Potential& s);
Potential potential_from_json(const Json& j, const Quiver& quiver);

// Reports ---------------------------------------------------------------------

std::string to_string(Orientation o);
Json to_json(const Face& face);
Json to_json(const std::vector<Face>& faces);
Json to_json(const DimerReport& report);
Json to_json(const Expansion& expansion);
Json to_json(const Certificate& certificate);
/// {"rigid","cycles_total","certified","oracle_only","failures"}
Json verdict_json(const RigidityReport& report);

// Drawings --------------------------------------------------------------------

/// Graphviz digraph; frozen vertices are boxes.
std::string to_dot(const Quiver& quiver);
/// Sheets side by side, strings as vertical lines. Without a layout the
/// vertices are placed on a circle.
std::string to_tikz(const Instance& instance);

}  // namespace dimerbfz
