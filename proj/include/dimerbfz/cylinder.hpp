#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dimerbfz/bfz.hpp"
#include "dimerbfz/cartan.hpp"
#include "dimerbfz/quiver.hpp"

namespace dimerbfz {

/// Branches of a forest-shaped Dynkin graph. A branch is a path between two
/// special vertices (endpoints of degree 1, branching points of degree >= 3)
/// whose interior vertices have degree 2; an isolated vertex is a branch of
/// length 0. Each branch spans one sheet of the cylinder.
struct BranchDecomposition {
  DynkinGraph graph;
  std::vector<int> special;
  /// Dynkin vertices along each branch, oriented from the smaller endpoint.
  std::vector<std::vector<int>> branches;

  std::size_t sheet_count() const { return branches.size(); }
  int length(std::size_t sheet) const { return static_cast<int>(branches.at(sheet).size()) - 1; }
  /// Sheets whose branch contains the string.
  std::vector<int> sheets_of_string(int string) const;
  /// Sheet containing the Dynkin edge {i, j}, or -1.
  int sheet_of_edge(int i, int j) const;
  /// Position of the string along the sheet's branch, or -1.
  int x_in_sheet(std::size_t sheet, int string) const;
};

/// Throws ValidationError when the graph has a cycle.
BranchDecomposition branch_decompose(const DynkinGraph& graph);

struct Placement {
  int string = 0;
  int height = 0;

  bool operator==(const Placement&) const = default;
};

/// Vertex -> (string, height) on the grid of the cylinder. Within a sheet a
/// vertex sits at (x, y) = (index of its string along the branch, height).
class CylinderLayout {
 public:
  CylinderLayout(BranchDecomposition branches, std::map<int, Placement> placement);

  const BranchDecomposition& branches() const { return branches_; }
  const std::map<int, Placement>& placement() const { return placement_; }
  const Placement& at(int vertex) const;
  bool covers(const Quiver& quiver) const;
  /// Vertices on the string, by increasing height.
  std::vector<int> string_vertices(int string) const;

 private:
  BranchDecomposition branches_;
  std::map<int, Placement> placement_;
};

/// Vertex k goes to string |i_k| at height = ordinal of k in the word.
CylinderLayout layout(const BfzQuiver& quiver, const BranchDecomposition& branches);

struct ProjectionReport {
  bool pass = true;
  std::vector<int> violations;
};

/// Every arrow joins vertices on one string or on Dynkin-adjacent strings.
ProjectionReport check_arrow_projection(const Quiver& quiver, const CylinderLayout& layout);

struct PlanarityReport {
  bool pass = true;
  /// Pairs of arrow ids whose segments meet at an interior point.
  std::vector<std::pair<int, int>> crossings;
  /// Arrows along a string that pass over another vertex of that string.
  std::vector<int> through_vertex;
};

/// Inclined arrows between the same pair of strings must not cross; arrows
/// along one string must not overlap.
PlanarityReport check_planarity_per_sheet(const Quiver& quiver, const CylinderLayout& layout);

enum class Orientation { clockwise, anticlockwise, none };

struct Face {
  /// Boundary arrows, consecutively composable for oriented faces.
  std::vector<int> arrows;
  /// vertices[i] is where arrows[i] is entered along the boundary walk.
  std::vector<int> vertices;
  int sheet = -1;
  /// Projected Dynkin edge {i, j} with i < j; {0, 0} when the face does not
  /// lie on exactly two adjacent strings.
  std::pair<int, int> edge{0, 0};
  Orientation orientation = Orientation::none;

  bool oriented() const { return orientation != Orientation::none; }
  bool operator==(const Face&) const = default;
};

/// The planar straight-line embedding of one sheet.
struct SheetEmbedding {
  int sheet = -1;
  std::vector<int> vertices;
  std::vector<int> arrows;
  std::vector<Face> faces;
  /// Arrows on the unbounded face.
  std::set<int> boundary_arrows;
};

/// Rotation-system face tracing per sheet. Throws ValidationError when a
/// sheet is not planar (see check_planarity_per_sheet).
std::vector<SheetEmbedding> embed_sheets(const Quiver& quiver, const CylinderLayout& layout);

/// Bounded faces of all sheets, sorted by (sheet, lowest height, arrows).
std::vector<Face> enumerate_faces(const Quiver& quiver, const CylinderLayout& layout);

struct DimerReport {
  ProjectionReport arrow_projection;
  /// Violations are indices into faces.
  ProjectionReport face_projection;
  ProjectionReport face_orientation;
  PlanarityReport planarity;
  std::vector<Face> faces;

  bool pass() const {
    return arrow_projection.pass && face_projection.pass && face_orientation.pass && planarity.pass;
  }
};

DimerReport check_dimer(const Quiver& quiver, const CylinderLayout& layout);

/// Arrow ids of the sheet's subquiver: arrows along its strings and inclined
/// arrows across consecutive strings of its branch.
std::vector<int> sheet_arrows(const Quiver& quiver, const CylinderLayout& layout, int sheet);

/// Sheet coordinates of a vertex.
std::pair<int, int> sheet_point(const CylinderLayout& layout, int sheet, int vertex);

/// Twice the signed area of the closed polygon through the vertices.
long long doubled_signed_area(const CylinderLayout& layout, int sheet,
                              const std::vector<int>& cycle_vertices);

}  // namespace dimerbfz
