#pragma once

#include "graspeq/cycle_basis.hpp"
#include "graspeq/grasp_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace graspeq {

/// Geometric tolerances for classifying cells of the motion-space arrangement.
struct GeometryTolerances {
  /// Minimum margin by which a realizing motion must satisfy strict signs.
  double feasibility_margin = 1e-9;
  /// Two unit plane normals with |p_a . p_b| > 1 - coincidence are merged.
  double coincidence = 1e-9;
};

/// Which analysis variant is active. Detachment adds a separation plane for
/// every contact without normal preload; strict mode keeps every contact
/// attached to its normal spring.
struct AnalysisOptions {
  bool detachment = true;
  bool strict_eq4 = false;
  GeometryTolerances geometry{};

  bool detachment_active() const { return detachment && !strict_eq4; }
};

enum class PlaneRole : std::uint8_t { Tangent, Separation };

struct PlaneMember {
  std::size_t contact = 0;
  PlaneRole role = PlaneRole::Tangent;
  int orientation = 1;  ///< member constraint = orientation * (plane . d)
};

struct OrientedPlane {
  Vec3 normal = Vec3::UnitX();
  std::vector<PlaneMember> members;
};

struct PlaneRef {
  std::size_t plane = 0;
  int orientation = 1;
};

/// Central planes in motion space (x, y, rot). Every contact has exactly one
/// tangent membership and at most one separation membership.
class PlaneArrangement {
 public:
  PlaneArrangement() = default;
  explicit PlaneArrangement(std::size_t contact_count) : tangent_(contact_count), separation_(contact_count) {}

  /// Adds a constraint normal, merging it into an existing plane when the two
  /// coincide up to sign. Returns where it landed.
  PlaneRef add(const Vec3& raw_normal, std::size_t contact, PlaneRole role, double coincidence);

  std::size_t size() const { return planes_.size(); }
  const std::vector<OrientedPlane>& planes() const { return planes_; }
  const OrientedPlane& operator[](std::size_t i) const { return planes_[i]; }
  std::size_t contact_count() const { return tangent_.size(); }
  const PlaneRef& tangent(std::size_t contact) const { return *tangent_[contact]; }
  const std::optional<PlaneRef>& separation(std::size_t contact) const { return separation_[contact]; }

  /// Rank of the stacked plane normals (1, 2 or 3).
  int rank() const;

 private:
  std::vector<OrientedPlane> planes_;
  std::vector<std::optional<PlaneRef>> tangent_;
  std::vector<std::optional<PlaneRef>> separation_;
};

PlaneArrangement tangent_planes(const GraspMaps& maps, const GeometryTolerances& tol = {});

/// Adds the normal-separation plane of every contact with zero normal preload.
void separation_planes(const GraspModel& model, const GraspMaps& maps, PlaneArrangement& arrangement,
                       const GeometryTolerances& tol = {});

/// Full arrangement for a model under the given analysis options.
PlaneArrangement build_arrangement(const GraspModel& model, const AnalysisOptions& options = {});

using SignVector = std::vector<std::int8_t>;

enum class CellKind : std::uint8_t { Region, Facet, Line, Origin };
const char* to_string(CellKind kind);

struct CellState {
  SignVector signs;
  CellKind kind = CellKind::Region;
  /// A motion realizing the signs (|d|_inf <= 1).
  Vec3 witness = Vec3::Zero();
};

/// Realizes a (possibly partial) sign vector: the first signs.size() planes are
/// constrained, nonzero entries strictly with the configured margin, zero
/// entries exactly. Solved as a max-margin linear program over |d|_inf <= 1.
std::optional<Vec3> realize_signs(const SignVector& signs, const PlaneArrangement& arrangement,
                                  const GeometryTolerances& tol = {});

bool region_feasible(const SignVector& signs, const PlaneArrangement& arrangement, const GeometryTolerances& tol = {});

/// Full-dimensional cells, built by inserting one plane at a time and keeping
/// each side of the new plane that remains realizable. Sorted lexicographically.
std::vector<CellState> enumerate_regions(const PlaneArrangement& arrangement, const GeometryTolerances& tol = {});

/// Regions as vertices, shared facets as edges (labelled by the plane crossed).
struct DualGraph {
  std::vector<CellState> regions;
  UndirectedGraph graph;
  std::vector<std::size_t> edge_plane;
  std::vector<CellState> facets;  ///< one per edge, same order
};

DualGraph build_dual_graph(std::vector<CellState> regions, const PlaneArrangement& arrangement,
                           const GeometryTolerances& tol = {});

/// Ray cells of the arrangement (faces of the dual polyhedron). For rank-3
/// arrangements these come from the facial cycles of the minimum cycle basis
/// plus the symmetric sum of its cycles; rays missed by a non-facial basis
/// cycle are recovered from facet pairs. When all planes
/// share one line the two rays are built directly. Throws std::logic_error if
/// the ray count disagrees with Euler's formula.
std::vector<CellState> line_states(const DualGraph& dual, const std::vector<EdgeCycle>& basis,
                                   const PlaneArrangement& arrangement, const GeometryTolerances& tol = {});

struct ArrangementCells {
  DualGraph dual;
  std::vector<EdgeCycle> cycle_basis;
  std::vector<CellState> lines;

  std::size_t vertices() const { return dual.regions.size(); }
  std::size_t edges() const { return dual.facets.size(); }
  std::size_t faces() const { return lines.size(); }
};

ArrangementCells enumerate_cells(const PlaneArrangement& arrangement, const GeometryTolerances& tol = {});

enum class ContactLabel : std::int8_t { Detached = -2, SlipNegative = -1, Stick = 0, SlipPositive = 1 };
char label_char(ContactLabel label);
const char* label_name(ContactLabel label);

struct SlipState {
  std::vector<ContactLabel> labels;
  CellKind provenance = CellKind::Region;
  std::size_t index = 0;

  std::size_t count(ContactLabel l) const;
  std::string code() const;  ///< one character per contact: D - 0 +
};

struct CellCensus {
  std::size_t planes = 0;
  std::size_t regions = 0;
  std::size_t facets = 0;
  std::size_t lines = 0;
  std::size_t total() const { return regions + facets + lines; }
};

/// Distinct slip states in canonical order: the all-stick state first, then
/// lexicographic (detached < slip- < stick < slip+ per contact).
struct SlipStateSet {
  std::vector<SlipState> states;
  CellCensus census;
  AnalysisOptions options;

  std::size_t size() const { return states.size(); }
  /// Distinct states other than the all-stick one.
  std::size_t count_excluding_origin() const { return states.empty() ? 0 : states.size() - 1; }
  bool contains(const std::vector<ContactLabel>& labels) const;
};

/// Slip labels of an arrangement cell.
std::vector<ContactLabel> labels_of(const SignVector& signs, const PlaneArrangement& arrangement,
                                    bool detachment_active);

SlipStateSet enumerate_slip_states(const GraspModel& model, const AnalysisOptions& options = {});

/// Zaslavsky upper bound on the number of k-faces of n hyperplanes in R^d.
/// Throws std::invalid_argument for negative arguments or k > d.
long long zaslavsky_bound(int n, int d, int k);

}  // namespace graspeq
