#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dimerbfz/cylinder.hpp"
#include "dimerbfz/quiver.hpp"

namespace dimerbfz {

using Rational = mpq_class;

/// Arrow ids, composed left to right: the target of each arrow is the
/// source of the next.
using Path = std::vector<int>;

bool composable(const Quiver& quiver, const Path& path);
bool is_cycle(const Quiver& quiver, const Path& path);
/// A cycle visiting no vertex twice.
bool is_simple_cycle(const Quiver& quiver, const Path& path);
/// Source vertex of each arrow of the path.
std::vector<int> path_vertices(const Quiver& quiver, const Path& path);

/// Lexicographically least rotation.
Path cyc(const Path& cycle);
/// Rotation starting at the first occurrence of the arrow; empty if absent.
Path rotate_to(const Path& cycle, int arrow);

/// Finite rational combination of paths.
class PathElement {
 public:
  PathElement() = default;
  explicit PathElement(const Path& path, const Rational& coef = 1);

  const std::map<Path, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Path& path) const;
  void add(const Path& path, const Rational& coef);
  std::size_t max_length() const;

  PathElement& operator+=(const PathElement& other);
  PathElement& operator-=(const PathElement& other);
  PathElement operator+(const PathElement& other) const;
  PathElement operator-(const PathElement& other) const;
  PathElement scaled(const Rational& c) const;
  bool operator==(const PathElement& other) const = default;

 private:
  std::map<Path, Rational> terms_;
};

/// Product in the path algebra; non-composable pairs of terms vanish. An
/// empty path acts as the identity on both sides.
PathElement multiply(const Quiver& quiver, const PathElement& a, const PathElement& b);
PathElement multiply(const Quiver& quiver, const Path& left, const PathElement& x,
                     const Path& right);

/// Image in the quotient by cyclic equivalence: every term is a cycle
/// replaced by its least rotation. Non-cycles are kept unchanged.
PathElement cyc(const Quiver& quiver, const PathElement& x);

/// A PathElement all of whose terms are cycles.
class Potential {
 public:
  Potential() = default;
  /// Throws ValidationError when a term is not a cycle of the quiver.
  Potential(const Quiver& quiver, PathElement element);

  const PathElement& element() const { return element_; }
  bool is_zero() const { return element_.is_zero(); }

 private:
  PathElement element_;
};

enum class Anchor { min_vertex, max_vertex };

/// S = sum of clockwise face cycles minus anticlockwise ones, each cycle
/// starting at its minimal (or maximal) vertex. Throws ValidationError on a
/// face that is not an oriented cycle.
Potential superpotential(const Quiver& quiver, const std::vector<Face>& faces,
                         Anchor anchor = Anchor::min_vertex);
/// Per-sheet parts S_r; sheet -1 collects faces without a sheet.
std::map<int, Potential> sheet_potentials(const Quiver& quiver, const std::vector<Face>& faces,
                                          Anchor anchor = Anchor::min_vertex);

/// Sum over occurrences of a of the rotation following a.
PathElement cyclic_derivative(const PathElement& s, int arrow);
PathElement cyclic_derivative(const Potential& s, int arrow);

struct JacobianGenerator {
  int arrow;
  PathElement element;
};

/// One generator per arrow with nonzero derivative, by arrow id.
std::vector<JacobianGenerator> jacobian_generators(const Quiver& quiver, const Potential& s);

/// One face per term of S, for quivers without a layout. Orientation follows
/// the sign of the coefficient.
std::vector<Face> faces_from_potential(const Quiver& quiver, const Potential& s);

// ---------------------------------------------------------------------------
// Certificates

/// left * d_arrow(S) * right.
struct JTerm {
  Path left;
  int arrow = 0;
  Path right;

  auto operator<=>(const JTerm&) const = default;
};

/// Combination of Jacobian-ideal elements.
using Expansion = std::map<JTerm, Rational>;

void accumulate(Expansion& into, const Expansion& from, const Rational& scale);
PathElement expand(const Quiver& quiver, const Potential& s, const Expansion& expansion);
std::size_t max_term_length(const Quiver& quiver, const Potential& s, const Expansion& expansion);
/// cyc(expand(expansion)) == cyc(target).
bool replay(const Quiver& quiver, const Potential& s, const Expansion& expansion,
            const PathElement& target);

enum class StepKind { boundary, adjacent, split, oracle };

struct CertificateStep {
  StepKind kind = StepKind::oracle;
  std::optional<int> edge;
  /// The face used by the step, as arrows.
  std::vector<int> face;
  /// boundary/adjacent: the other faces through the edge; split: the
  /// residual cycles.
  std::vector<Path> others;
  /// oracle: the solved combination.
  Expansion witness;
};

struct Certificate {
  Path cycle;
  std::vector<CertificateStep> steps;
  Expansion expansion;
  bool verified = false;
};

/// 0 for faces with an arrow in boundary_arrows, else 1 + the least
/// distance of a face sharing an arrow. Throws std::logic_error for faces
/// not reachable from the boundary.
std::vector<int> face_distances(const std::vector<Face>& faces, const std::set<int>& boundary_arrows);
int face_distance(std::size_t face, const std::vector<Face>& faces,
                  const std::set<int>& boundary_arrows);

/// Certifies faces by peeling: face F is certified through an arrow a once
/// every other face whose cycle is a term of d_a(S) is certified, using
/// F = (a d_a(S) - sum c_G G) / c_F. Faces are tried in the given order,
/// repeating until no progress. Every certificate is replayed; a failed
/// replay throws std::logic_error naming the face. Faces that cannot be
/// peeled are absent from the result.
std::map<std::size_t, Certificate> face_certificates(const Quiver& quiver, const Potential& s,
                                                     const std::vector<Face>& faces,
                                                     const std::vector<std::size_t>& order = {});

struct DifferentiableEdge {
  int edge = 0;
  std::size_t face = 0;
};

/// Faces of the layout enclosed by a simple single-sheet cycle.
std::vector<std::size_t> enclosed_faces(const Quiver& quiver, const CylinderLayout& layout,
                                        const std::vector<Face>& faces, const Path& cycle);
/// Sheet containing every arrow of the cycle, or -1.
int cycle_sheet(const Quiver& quiver, const CylinderLayout& layout, const Path& cycle);

/// An interior arrow e of C and an enclosed oriented face F = e p1 with p1 a subpath
/// of C. Tries the right-most string run of C first, then the left-most,
/// then every enclosed face.
std::optional<DifferentiableEdge> find_differentiable_edge(const Quiver& quiver,
                                                           const CylinderLayout& layout,
                                                           const std::vector<Face>& faces,
                                                           const Path& cycle);

// ---------------------------------------------------------------------------
// Oracle

enum class Membership { member, not_member_exact, not_certified_within_cap };

struct MembershipResult {
  Membership verdict = Membership::not_certified_within_cap;
  /// For members: terms with empty left side.
  Expansion witness;
  std::size_t dimension = 0;
};

/// Decides whether the cycle lies in J(S) + [A, A] using elements of term
/// length at most max_length: cyc(c) in span{cyc(d_a(S) w)}. When every
/// generator is a single scaled path the answer is exact. Throws CapError
/// when the linear system would exceed max_dimension unknowns.
MembershipResult brute_force_membership(const Quiver& quiver, const Potential& s,
                                        const Path& cycle, std::size_t max_length,
                                        std::size_t max_dimension = 20'000);

// ---------------------------------------------------------------------------
// Rigidity

/// Simple cycles of the quiver, each as its least rotation, sorted by
/// (length, arrows). Throws CapError for a cycle longer than length_cap or
/// more than max_cycles cycles.
std::vector<Path> simple_cycles(const Quiver& quiver, std::size_t length_cap,
                                std::size_t max_cycles = 200'000);

struct CycleResult {
  Path cycle;
  bool certified = false;
  bool oracle_only = false;
  bool multi_sheet = false;
  Membership oracle = Membership::member;
  Certificate certificate;
};

struct RigidityReport {
  bool rigid = false;
  std::vector<CycleResult> cycles;
  std::size_t certified = 0;
  std::size_t oracle_only = 0;
  std::map<std::size_t, Certificate> face_certificates;
};

struct RigidityOptions {
  std::size_t length_cap = 0;  // 0: number of vertices
  /// Extra length over the cycle for oracle fallbacks.
  std::size_t oracle_slack = 4;
  std::size_t oracle_max_dimension = 20'000;
};

/// Certifies every simple cycle: faces by peeling, other single-sheet
/// cycles by repeated face splitting, everything else by the oracle.
/// layout may be null, in which case only faces and the oracle are used.
RigidityReport rigidity_check(const Quiver& quiver, const CylinderLayout* layout,
                              const std::vector<Face>& faces, const Potential& s,
                              const RigidityOptions& options = {});

std::string to_string(StepKind kind);
std::string to_string(Membership m);

}  // namespace dimerbfz
