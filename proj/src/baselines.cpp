#include "graspeq/baselines.hpp"

#include "graspeq/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace graspeq {

Verdict brute_force_verdict(const GraspModel& model, const Wrench& w, const AnalysisOptions& options) {
  require_valid(model);
  const std::size_t m = model.size();
  if (m > kBruteForceMaxContacts) throw std::length_error("brute_force_verdict: too many contacts");

  std::vector<std::vector<ContactLabel>> choices(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (options.detachment_active() && model.preload_at(i).normal == 0.0) choices[i].push_back(ContactLabel::Detached);
    choices[i].insert(choices[i].end(), {ContactLabel::SlipNegative, ContactLabel::Stick, ContactLabel::SlipPositive});
  }

  Verdict v;
  v.mode = options;
  std::vector<std::size_t> digit(m, 0);
  SlipState state;
  state.labels.resize(m);
  for (std::size_t index = 0;; ++index) {
    for (std::size_t i = 0; i < m; ++i) state.labels[i] = choices[i][digit[i]];
    state.index = index;
    ++v.states_tried;
    if (auto sol = solve_state(model, w, state, options)) {
      v.stable = true;
      v.witness = std::move(sol);
      return v;
    }
    // Odometer with the last contact varying fastest.
    std::size_t i = m;
    while (i > 0 && ++digit[i - 1] == choices[i - 1].size()) digit[--i] = 0;
    if (i == 0) return v;
  }
}

ConvexHull3 gws_l1(const GraspModel& model) {
  std::vector<Vec3> points{Vec3::Zero()};
  for (const Contact& c : model.contacts) {
    points.push_back(world_force(c, {1.0, c.mu}));
    points.push_back(world_force(c, {1.0, -c.mu}));
  }
  return convex_hull(points);
}

WrenchSlice gws_slice(const ConvexHull3& hull, double torque) {
  constexpr double eps = 1e-12;
  const auto& vs = hull.vertices;
  std::vector<Vec2> cut;
  for (const Vec3& v : vs) {
    if (std::abs(v.z() - torque) <= eps) cut.emplace_back(v.x(), v.y());
  }
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      const double za = vs[a].z() - torque;
      const double zb = vs[b].z() - torque;
      if ((za < -eps && zb > eps) || (za > eps && zb < -eps)) {
        const Vec3 p = vs[a] + (za / (za - zb)) * (vs[b] - vs[a]);
        cut.emplace_back(p.x(), p.y());
      }
    }
  }
  if (cut.empty()) throw std::domain_error("gws_slice: torque outside the wrench hull");

  WrenchSlice slice;
  slice.torque = torque;
  slice.polygon = convex_hull_2d(cut);
  double area = 0.0;
  for (std::size_t i = 0; i < slice.polygon.size(); ++i) {
    area += cross2(slice.polygon[i], slice.polygon[(i + 1) % slice.polygon.size()]);
  }
  slice.degenerate = slice.polygon.size() < 3 || std::abs(area) < 1e-12;
  return slice;
}

double origin_clearance(const std::vector<Vec2>& polygon) {
  if (polygon.size() < 3) return -std::numeric_limits<double>::infinity();
  double clearance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % polygon.size()];
    const Vec2 edge = b - a;
    // Counter-clockwise order: interior lies to the left of each edge.
    clearance = std::min(clearance, cross2(edge, -a) / edge.norm());
  }
  return clearance;
}

bool wrench_achievable(const GraspModel& model, const Vec3& wrench, double max_normal) {
  const std::size_t m = model.size();
  lp::Problem p(static_cast<Eigen::Index>(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto n = static_cast<Eigen::Index>(2 * i);
    p.lower(n) = 0.0;
    p.upper(n) = max_normal;
    p.lower(n + 1) = -lp::kInf;
    p.upper(n + 1) = lp::kInf;
    for (double side : {1.0, -1.0}) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(p.lower.size());
      r(n) = model.contacts[i].mu;
      r(n + 1) = -side;
      p.add_inequality(r, 0.0);
    }
  }
  for (int k = 0; k < 3; ++k) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(p.lower.size());
    for (std::size_t i = 0; i < m; ++i) {
      r(static_cast<Eigen::Index>(2 * i)) = world_force(model.contacts[i], {1.0, 0.0})(k);
      r(static_cast<Eigen::Index>(2 * i + 1)) = world_force(model.contacts[i], {0.0, 1.0})(k);
    }
    p.add_equality(r, wrench(k));
  }
  return lp::maximize(p).status == lp::Status::Optimal;
}

Verdict linear_compliance_verdict(const GraspModel& model, const Wrench& w, const std::vector<double>& kt) {
  require_valid(model);
  const std::size_t m = model.size();
  if (kt.size() != m) throw std::invalid_argument("linear_compliance_verdict: one tangent stiffness per contact");
  for (double k : kt) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("linear_compliance_verdict: tangent stiffness must be positive");
  }

  // Force on the object is -nu c_n + tau c_t; substituting the spring laws
  // gives preload_net - K d + w = 0 with K = sum k ncol ncol' + k_t tcol tcol'.
  const GraspMaps maps(model);
  Eigen::Matrix3d K = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3 n = maps.normal_column(i);
    const Vec3 t = maps.tangent_column(i);
    K += model.stiffness[i] * n * n.transpose() + kt[i] * t * t.transpose();
  }
  std::vector<ContactForce> preload(m);
  for (std::size_t i = 0; i < m; ++i) preload[i] = model.preload_at(i);
  const Vec3 rhs = w.vec() + net_contact_wrench(model, preload);

  Verdict v;
  v.states_tried = 1;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(K);
  if (!lu.isInvertible()) return v;
  const Vec3 d = lu.solve(rhs);
  if ((K * d - rhs).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff())) return v;

  EquilibriumSolution sol;
  sol.motion = d;
  sol.forces.resize(m);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double dn = maps.normal_column(i).dot(d);
    const double dt = maps.tangent_column(i).dot(d);
    ContactForce& f = sol.forces[i];
    f.normal = preload[i].normal + model.stiffness[i] * dn;
    f.tangential = preload[i].tangential - kt[i] * dt;
    worst = std::min({worst, f.normal, model.contacts[i].mu * f.normal - std::abs(f.tangential)});
  }
  sol.min_inequality_slack = worst;
  v.stable = worst >= -1e-9;
  if (v.stable) v.witness = std::move(sol);
  return v;
}

Verdict linear_compliance_verdict(const GraspModel& model, const Wrench& w, double tangent_stiffness) {
  return linear_compliance_verdict(model, w, std::vector<double>(model.size(), tangent_stiffness));
}

}  // namespace graspeq
