#include "graspeq/arrangement.hpp"

#include "graspeq/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace graspeq {

PlaneRef PlaneArrangement::add(const Vec3& raw_normal, std::size_t contact, PlaneRole role, double coincidence) {
  const Vec3 n = raw_normal.normalized();
  PlaneRef ref{planes_.size(), 1};
  for (std::size_t j = 0; j < planes_.size(); ++j) {
    const double dot = planes_[j].normal.dot(n);
    if (std::abs(dot) > 1.0 - coincidence) {
      ref = {j, dot > 0.0 ? 1 : -1};
      break;
    }
  }
  if (ref.plane == planes_.size()) planes_.push_back({n, {}});
  planes_[ref.plane].members.push_back({contact, role, ref.orientation});
  auto& slot = (role == PlaneRole::Tangent) ? tangent_ : separation_;
  if (contact >= slot.size()) {
    tangent_.resize(contact + 1);
    separation_.resize(contact + 1);
  }
  slot[contact] = ref;
  return ref;
}

int PlaneArrangement::rank() const {
  if (planes_.empty()) return 0;
  Eigen::MatrixXd N(static_cast<Eigen::Index>(planes_.size()), 3);
  for (std::size_t j = 0; j < planes_.size(); ++j) N.row(static_cast<Eigen::Index>(j)) = planes_[j].normal.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(N);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += (s(i) > 1e-9 * s(0)) ? 1 : 0;
  return r;
}

PlaneArrangement tangent_planes(const GraspMaps& maps, const GeometryTolerances& tol) {
  PlaneArrangement arr(maps.contact_count());
  for (std::size_t i = 0; i < maps.contact_count(); ++i) {
    arr.add(maps.tangent_column(i), i, PlaneRole::Tangent, tol.coincidence);
  }
  return arr;
}

void separation_planes(const GraspModel& model, const GraspMaps& maps, PlaneArrangement& arrangement,
                       const GeometryTolerances& tol) {
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model.preload_at(i).normal != 0.0) continue;
    arrangement.add(maps.normal_column(i), i, PlaneRole::Separation, tol.coincidence);
  }
}

PlaneArrangement build_arrangement(const GraspModel& model, const AnalysisOptions& options) {
  const GraspMaps maps(model);
  PlaneArrangement arr = tangent_planes(maps, options.geometry);
  if (options.detachment_active()) separation_planes(model, maps, arr, options.geometry);
  return arr;
}

const char* to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Region: return "region";
    case CellKind::Facet: return "facet";
    case CellKind::Line: return "line";
    case CellKind::Origin: return "origin";
  }
  return "?";
}

namespace {

constexpr double kRankTolerance = 1e-9;

// Right singular vectors of the stacked rows in order of increasing singular
// value, so the leading columns span the numerical null space.
Eigen::Matrix3d null_space_basis(const std::vector<Vec3>& rows) {
  if (rows.empty()) return Eigen::Matrix3d::Identity();
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t j = 0; j < rows.size(); ++j) A.row(static_cast<Eigen::Index>(j)) = rows[j].transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const Eigen::Matrix3d V = svd.matrixV();
  return V.rowwise().reverse();
}

int row_rank(const std::vector<Vec3>& rows) {
  if (rows.empty()) return 0;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t j = 0; j < rows.size(); ++j) A.row(static_cast<Eigen::Index>(j)) = rows[j].transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > kRankTolerance * sv(0) ? 1 : 0;
  return r;
}

int null_space_dimension(const std::vector<Vec3>& rows) { return 3 - row_rank(rows); }

}  // namespace

std::optional<Vec3> realize_signs(const SignVector& signs, const PlaneArrangement& arrangement,
                                  const GeometryTolerances& tol) {
  if (signs.size() > arrangement.size()) throw std::invalid_argument("realize_signs: more signs than planes");
  // Zero signs confine d to the numerical null space of their normals, so
  // planes that meet in a line only up to round-off still share it.
  std::vector<Vec3> zero_rows;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] == 0) zero_rows.push_back(arrangement[j].normal);
  }
  const Eigen::Matrix3d basis = null_space_basis(zero_rows);
  const Eigen::Index free = null_space_dimension(zero_rows);
  const bool strict = std::any_of(signs.begin(), signs.end(), [](std::int8_t v) { return v != 0; });
  if (free == 0) return strict ? std::nullopt : std::optional<Vec3>(Vec3::Zero());
  const Eigen::MatrixXd N = basis.leftCols(free);

  // Variables (y, margin) with d = N y; maximize margin subject to |d|_inf <= 1.
  lp::Problem p(free + 1);
  p.upper(free) = 1.0;
  p.objective(free) = 1.0;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] == 0) continue;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(free + 1);
    row.head(free) = static_cast<double>(signs[j]) * arrangement[j].normal.transpose() * N;
    row(free) = -1.0;
    p.add_inequality(row, 0.0);
  }
  for (int k = 0; k < 3; ++k) {
    for (double side : {1.0, -1.0}) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(free + 1);
      row.head(free) = -side * N.row(k);
      p.add_inequality(row, -1.0);
    }
  }
  const lp::Solution sol = lp::maximize(p);
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  if (strict && sol.x(free) <= tol.feasibility_margin) return std::nullopt;
  return Vec3(N * sol.x.head(free));
}

bool region_feasible(const SignVector& signs, const PlaneArrangement& arrangement, const GeometryTolerances& tol) {
  return realize_signs(signs, arrangement, tol).has_value();
}

std::vector<CellState> enumerate_regions(const PlaneArrangement& arrangement, const GeometryTolerances& tol) {
  std::vector<CellState> current{CellState{}};
  for (std::size_t i = 0; i < arrangement.size(); ++i) {
    std::vector<CellState> next;
    next.reserve(current.size() * 2);
    for (const CellState& cell : current) {
      for (std::int8_t side : {std::int8_t{1}, std::int8_t{-1}}) {
        SignVector signs = cell.signs;
        signs.push_back(side);
        if (auto w = realize_signs(signs, arrangement, tol)) next.push_back({std::move(signs), CellKind::Region, *w});
      }
    }
    current = std::move(next);
  }
  if (arrangement.size() == 0) return {};
  std::sort(current.begin(), current.end(), [](const CellState& a, const CellState& b) { return a.signs < b.signs; });
  return current;
}

DualGraph build_dual_graph(std::vector<CellState> regions, const PlaneArrangement& arrangement,
                           const GeometryTolerances& tol) {
  DualGraph dual;
  dual.regions = std::move(regions);
  dual.graph.vertex_count = dual.regions.size();
  std::map<SignVector, std::size_t> index;
  for (std::size_t k = 0; k < dual.regions.size(); ++k) index.emplace(dual.regions[k].signs, k);

  for (std::size_t k = 0; k < dual.regions.size(); ++k) {
    const SignVector& signs = dual.regions[k].signs;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] != 1) continue;
      SignVector flipped = signs;
      flipped[i] = -1;
      auto it = index.find(flipped);
      if (it == index.end()) continue;
      SignVector facet = signs;
      facet[i] = 0;
      auto w = realize_signs(facet, arrangement, tol);
      if (!w) continue;
      dual.graph.edges.emplace_back(k, it->second);
      dual.edge_plane.push_back(i);
      dual.facets.push_back({std::move(facet), CellKind::Facet, *w});
    }
  }
  return dual;
}

namespace {

int zero_rank(const SignVector& signs, const PlaneArrangement& arrangement) {
  std::vector<Vec3> rows;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] == 0) rows.push_back(arrangement[j].normal);
  }
  return row_rank(rows);
}

// Sign vector of the ray a cycle surrounds, or nullopt when the cycle is not
// a face of the dual graph (its vertices disagree off the crossed planes).
std::optional<SignVector> facial_signs(const DualGraph& dual, const EdgeCycle& cycle, std::size_t planes) {
  std::vector<std::size_t> vertices;
  try {
    vertices = cycle_vertices(dual.graph, cycle);
  } catch (const std::logic_error&) {
    return std::nullopt;
  }
  std::vector<bool> traversed(planes, false);
  for (std::size_t e : cycle) traversed[dual.edge_plane[e]] = true;
  SignVector signs = dual.regions[vertices.front()].signs;
  for (std::size_t j = 0; j < planes; ++j) {
    if (traversed[j]) signs[j] = 0;
  }
  for (std::size_t v : vertices) {
    const SignVector& other = dual.regions[v].signs;
    for (std::size_t j = 0; j < planes; ++j) {
      if (!traversed[j] && other[j] != signs[j]) return std::nullopt;
    }
  }
  return signs;
}

}  // namespace

std::vector<CellState> line_states(const DualGraph& dual, const std::vector<EdgeCycle>& basis,
                                   const PlaneArrangement& arrangement, const GeometryTolerances& tol) {
  const int rank = arrangement.rank();
  std::vector<CellState> lines;
  if (rank <= 1) return lines;

  if (rank == 2) {
    // Every plane contains the same line; its two rays carry all-zero signs.
    Vec3 axis = Vec3::Zero();
    for (std::size_t j = 1; j < arrangement.size() && axis.norm() < 0.5; ++j) {
      const Vec3 c = arrangement[0].normal.cross(arrangement[j].normal);
      if (c.norm() > 1e-6) axis = c.normalized();
    }
    const SignVector zeros(arrangement.size(), 0);
    for (double side : {1.0, -1.0}) {
      const Vec3 ray = side * axis / axis.cwiseAbs().maxCoeff();
      lines.push_back({zeros, CellKind::Line, ray});
    }
    return lines;
  }

  std::set<SignVector> seen;
  auto accept = [&](SignVector signs) {
    if (zero_rank(signs, arrangement) != 2 || seen.count(signs)) return;
    if (auto w = realize_signs(signs, arrangement, tol)) {
      seen.insert(signs);
      lines.push_back({std::move(signs), CellKind::Line, *w});
    }
  };

  std::vector<EdgeCycle> cycles = basis;
  if (!basis.empty()) cycles.push_back(symmetric_sum(dual.graph.edges.size(), basis));
  for (const EdgeCycle& cycle : cycles) {
    if (auto signs = facial_signs(dual, cycle, arrangement.size())) accept(std::move(*signs));
  }

  // A minimum basis is not guaranteed to consist of faces. Any ray it misses
  // is recovered from a pair of facets on a common plane: adjacent facets
  // differ exactly on the other planes through their shared ray.
  const std::size_t expected = dual.facets.size() + 2 - dual.regions.size();
  if (lines.size() < expected) {
    for (std::size_t a = 0; a < dual.facets.size(); ++a) {
      for (std::size_t b = a + 1; b < dual.facets.size(); ++b) {
        if (dual.edge_plane[a] != dual.edge_plane[b]) continue;
        SignVector signs = dual.facets[a].signs;
        const SignVector& other = dual.facets[b].signs;
        for (std::size_t j = 0; j < signs.size(); ++j) {
          if (signs[j] != other[j]) signs[j] = 0;
        }
        accept(std::move(signs));
      }
    }
  }
  if (lines.size() != expected) {
    throw std::logic_error("line_states: found " + std::to_string(lines.size()) + " rays, Euler count is " +
                           std::to_string(expected));
  }
  return lines;
}

ArrangementCells enumerate_cells(const PlaneArrangement& arrangement, const GeometryTolerances& tol) {
  ArrangementCells cells;
  cells.dual = build_dual_graph(enumerate_regions(arrangement, tol), arrangement, tol);
  if (arrangement.rank() == 3) cells.cycle_basis = minimum_cycle_basis(cells.dual.graph);
  cells.lines = line_states(cells.dual, cells.cycle_basis, arrangement, tol);
  return cells;
}

char label_char(ContactLabel label) {
  switch (label) {
    case ContactLabel::Detached: return 'D';
    case ContactLabel::SlipNegative: return '-';
    case ContactLabel::Stick: return '0';
    case ContactLabel::SlipPositive: return '+';
  }
  return '?';
}

const char* label_name(ContactLabel label) {
  switch (label) {
    case ContactLabel::Detached: return "detached";
    case ContactLabel::SlipNegative: return "slip-";
    case ContactLabel::Stick: return "stick";
    case ContactLabel::SlipPositive: return "slip+";
  }
  return "?";
}

std::size_t SlipState::count(ContactLabel l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

std::string SlipState::code() const {
  std::string s;
  for (ContactLabel l : labels) s.push_back(label_char(l));
  return s;
}

bool SlipStateSet::contains(const std::vector<ContactLabel>& labels) const {
  return std::any_of(states.begin(), states.end(), [&](const SlipState& s) { return s.labels == labels; });
}

std::vector<ContactLabel> labels_of(const SignVector& signs, const PlaneArrangement& arrangement,
                                    bool detachment_active) {
  std::vector<ContactLabel> out(arrangement.contact_count(), ContactLabel::Stick);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (detachment_active) {
      if (const auto& sep = arrangement.separation(i); sep && sep->orientation * signs[sep->plane] < 0) {
        out[i] = ContactLabel::Detached;
        continue;
      }
    }
    const PlaneRef& t = arrangement.tangent(i);
    out[i] = static_cast<ContactLabel>(t.orientation * signs[t.plane]);
  }
  return out;
}

SlipStateSet enumerate_slip_states(const GraspModel& model, const AnalysisOptions& options) {
  require_valid(model);
  const PlaneArrangement arrangement = build_arrangement(model, options);
  const ArrangementCells cells = enumerate_cells(arrangement, options.geometry);
  const bool detach = options.detachment_active();

  SlipStateSet set;
  set.options = options;
  set.census = {arrangement.size(), cells.vertices(), cells.edges(), cells.faces()};

  std::map<std::vector<ContactLabel>, CellKind> distinct;
  const std::vector<ContactLabel> all_stick(model.size(), ContactLabel::Stick);
  distinct.emplace(all_stick, CellKind::Origin);
  auto collect = [&](const std::vector<CellState>& group) {
    for (const CellState& c : group) distinct.emplace(labels_of(c.signs, arrangement, detach), c.kind);
  };
  collect(cells.dual.regions);
  collect(cells.dual.facets);
  collect(cells.lines);

  set.states.push_back({all_stick, CellKind::Origin, 0});
  for (const auto& [labels, kind] : distinct) {
    if (labels == all_stick) continue;
    set.states.push_back({labels, kind, set.states.size()});
  }
  return set;
}

namespace {

long long binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<long long>(r);
}

}  // namespace

long long zaslavsky_bound(int n, int d, int k) {
  if (n < 0 || d < 0 || k < 0 || k > d) {
    throw std::invalid_argument("zaslavsky_bound: need n >= 0 and 0 <= k <= d");
  }
  long long sum = 0;
  for (int i = 0; i <= k; ++i) sum += binomial(n - d + k, i);
  return binomial(n, d - k) * sum;
}

}  // namespace graspeq
