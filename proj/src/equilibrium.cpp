#include "graspeq/equilibrium.hpp"

#include "graspeq/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace graspeq {

const char* to_string(RowFamily family) {
  switch (family) {
    case RowFamily::Equilibrium: return "equilibrium";
    case RowFamily::Constitutive: return "constitutive";
    case RowFamily::SlipFriction: return "slip-friction";
    case RowFamily::StickMotion: return "stick-motion";
    case RowFamily::DetachedForce: return "detached-force";
    case RowFamily::NormalNonNegative: return "normal-nonnegative";
    case RowFamily::StickCone: return "stick-cone";
    case RowFamily::SlipDirection: return "slip-direction";
    case RowFamily::Separating: return "separating";
  }
  return "?";
}

std::size_t StateSystem::count(RowFamily family) const {
  return static_cast<std::size_t>(std::count(eq_family.begin(), eq_family.end(), family) +
                                  std::count(ge_family.begin(), ge_family.end(), family));
}

namespace {

class SystemBuilder {
 public:
  explicit SystemBuilder(Eigen::Index unknowns) : n_(unknowns) {}

  Eigen::RowVectorXd row() const { return Eigen::RowVectorXd::Zero(n_); }

  void equality(const Eigen::RowVectorXd& r, double rhs, RowFamily f, std::size_t contact) {
    eq_.push_back(r);
    eq_rhs_.push_back(rhs);
    sys_.eq_family.push_back(f);
    sys_.eq_contact.push_back(contact);
  }
  void inequality(const Eigen::RowVectorXd& r, double rhs, RowFamily f, std::size_t contact) {
    ge_.push_back(r);
    ge_rhs_.push_back(rhs);
    sys_.ge_family.push_back(f);
    sys_.ge_contact.push_back(contact);
  }

  StateSystem finish() {
    sys_.eq.resize(static_cast<Eigen::Index>(eq_.size()), n_);
    sys_.eq_rhs.resize(static_cast<Eigen::Index>(eq_.size()));
    for (std::size_t k = 0; k < eq_.size(); ++k) {
      sys_.eq.row(static_cast<Eigen::Index>(k)) = eq_[k];
      sys_.eq_rhs(static_cast<Eigen::Index>(k)) = eq_rhs_[k];
    }
    sys_.ge.resize(static_cast<Eigen::Index>(ge_.size()), n_);
    sys_.ge_rhs.resize(static_cast<Eigen::Index>(ge_.size()));
    for (std::size_t k = 0; k < ge_.size(); ++k) {
      sys_.ge.row(static_cast<Eigen::Index>(k)) = ge_[k];
      sys_.ge_rhs(static_cast<Eigen::Index>(k)) = ge_rhs_[k];
    }
    return std::move(sys_);
  }

  StateSystem& system() { return sys_; }

 private:
  Eigen::Index n_;
  std::vector<Eigen::RowVectorXd> eq_, ge_;
  std::vector<double> eq_rhs_, ge_rhs_;
  StateSystem sys_;
};

}  // namespace

StateSystem assemble_state_system(const GraspModel& model, const Wrench& w, const SlipState& state,
                                  const AnalysisOptions& options) {
  const std::size_t m = model.size();
  if (state.labels.size() != m) throw std::invalid_argument("assemble_state_system: state length differs from model");
  const GraspMaps maps(model);
  SystemBuilder b(static_cast<Eigen::Index>(3 + 2 * m));

  // Sum of contact forces balances the external wrench.
  const Vec3 wv = w.vec();
  for (int k = 0; k < 3; ++k) {
    Eigen::RowVectorXd r = b.row();
    for (std::size_t i = 0; i < m; ++i) {
      r(normal_var(i)) = -maps.normal_column(i)(k);
      r(tangent_var(i)) = maps.tangent_column(i)(k);
    }
    b.equality(r, -wv(k), RowFamily::Equilibrium, kNoContact);
  }

  for (std::size_t i = 0; i < m; ++i) {
    const ContactLabel label = state.labels[i];
    const Vec3 ncol = maps.normal_column(i);
    const Vec3 tcol = maps.tangent_column(i);
    const double mu = model.contacts[i].mu;

    if (label == ContactLabel::Detached) {
      if (!options.detachment_active() || model.preload_at(i).normal != 0.0) {
        throw std::invalid_argument("assemble_state_system: contact " + std::to_string(i + 1) + " cannot detach");
      }
      Eigen::RowVectorXd r = b.row();
      r(normal_var(i)) = 1.0;
      b.equality(r, 0.0, RowFamily::DetachedForce, i);
      r = b.row();
      r(tangent_var(i)) = 1.0;
      b.equality(r, 0.0, RowFamily::DetachedForce, i);
      r = b.row();
      r.head(3) = -ncol.transpose();
      b.inequality(r, 0.0, RowFamily::Separating, i);
      continue;
    }

    // c_n = c0_n + k * delta_n
    Eigen::RowVectorXd r = b.row();
    r(normal_var(i)) = 1.0;
    r.head(3) = -model.stiffness[i] * ncol.transpose();
    b.equality(r, model.preload_at(i).normal, RowFamily::Constitutive, i);

    r = b.row();
    r(normal_var(i)) = 1.0;
    b.inequality(r, 0.0, RowFamily::NormalNonNegative, i);

    if (label == ContactLabel::Stick) {
      r = b.row();
      r.head(3) = tcol.transpose();
      b.equality(r, 0.0, RowFamily::StickMotion, i);
      for (double side : {1.0, -1.0}) {
        r = b.row();
        r(normal_var(i)) = mu;
        r(tangent_var(i)) = -side;
        b.inequality(r, 0.0, RowFamily::StickCone, i);
      }
    } else {
      // Friction sits on the cone edge opposing the slip: c_t = -s mu c_n.
      const double s = static_cast<double>(static_cast<int>(label));
      r = b.row();
      r(tangent_var(i)) = 1.0;
      r(normal_var(i)) = s * mu;
      b.equality(r, 0.0, RowFamily::SlipFriction, i);
      r = b.row();
      r.head(3) = s * tcol.transpose();
      b.inequality(r, 0.0, RowFamily::SlipDirection, i);
      ++b.system().slipping;
    }
  }
  return b.finish();
}

namespace {

double max_equality_residual(const StateSystem& sys, const Eigen::VectorXd& x) {
  if (sys.eq.rows() == 0) return 0.0;
  return (sys.eq * x - sys.eq_rhs).cwiseAbs().maxCoeff();
}

double min_inequality_slack(const StateSystem& sys, const Eigen::VectorXd& x) {
  if (sys.ge.rows() == 0) return lp::kInf;
  return (sys.ge * x - sys.ge_rhs).minCoeff();
}

EquilibriumSolution unpack(const StateSystem& sys, const Eigen::VectorXd& x, const SlipState& state) {
  EquilibriumSolution sol;
  sol.motion = x.head(3);
  const std::size_t m = state.labels.size();
  sol.forces.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.forces[i] = {x(normal_var(i)), x(tangent_var(i))};
  sol.labels = state.labels;
  sol.state_index = state.index;
  sol.max_equality_residual = max_equality_residual(sys, x);
  sol.min_inequality_slack = min_inequality_slack(sys, x);
  return sol;
}

}  // namespace

std::optional<Eigen::VectorXd> linear_feasibility(const StateSystem& sys, const SolverTolerances& tol) {
  const Eigen::Index n = sys.unknowns();
  lp::Problem p(n + 1);
  p.lower.head(n).setConstant(-tol.box);
  p.upper.head(n).setConstant(tol.box);
  p.upper(n) = 1.0;
  p.objective(n) = 1.0;
  for (Eigen::Index r = 0; r < sys.eq.rows(); ++r) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n + 1);
    row.head(n) = sys.eq.row(r);
    p.add_equality(row, sys.eq_rhs(r));
  }
  for (Eigen::Index r = 0; r < sys.ge.rows(); ++r) {
    const double norm = sys.ge.row(r).norm();
    if (norm == 0.0) continue;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n + 1);
    row.head(n) = sys.ge.row(r) / norm;
    row(n) = -1.0;
    p.add_inequality(row, sys.ge_rhs(r) / norm);
  }
  const lp::Solution sol = lp::maximize(p);
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  if (sol.x(n) < -tol.inequality) return std::nullopt;
  Eigen::VectorXd x = sol.x.head(n);
  // Redundant equality rows are satisfied only to elimination accuracy;
  // a minimum-norm correction restores them without spending the slack.
  if (sys.eq.rows() > 0) x -= sys.eq.completeOrthogonalDecomposition().solve(sys.eq * x - sys.eq_rhs);
  if (max_equality_residual(sys, x) > tol.equality * std::max(1.0, x.cwiseAbs().maxCoeff())) return std::nullopt;
  if (min_inequality_slack(sys, x) < -tol.inequality) return std::nullopt;
  return x;
}

std::optional<EquilibriumSolution> solve_state(const GraspModel& model, const Wrench& w, const SlipState& state,
                                               const AnalysisOptions& options, const SolverTolerances& tol) {
  const StateSystem sys = assemble_state_system(model, w, state, options);

  if (sys.eq.rows() == sys.eq.cols()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.eq, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > tol.singular * sv(0)) {
      const Eigen::VectorXd x = svd.solve(sys.eq_rhs);
      if (min_inequality_slack(sys, x) < -tol.inequality) return std::nullopt;
      return unpack(sys, x, state);
    }
  }

  auto x = linear_feasibility(sys, tol);
  if (!x) return std::nullopt;
  EquilibriumSolution sol = unpack(sys, *x, state);
  sol.used_linear_program = true;
  return sol;
}

double ResidualReport::worst() const {
  return std::max({equilibrium, unilateral, cone, constitutive, dissipation, stick_motion, detachment});
}

ResidualReport check_solution(const GraspModel& model, const Wrench& w, const EquilibriumSolution& sol) {
  ResidualReport rep;
  const std::size_t m = model.size();
  Vec3 net = w.vec();
  for (std::size_t i = 0; i < m; ++i) net += world_force(model.contacts[i], sol.forces[i]);
  rep.equilibrium = net.cwiseAbs().maxCoeff();

  for (std::size_t i = 0; i < m; ++i) {
    const Contact& c = model.contacts[i];
    const ContactForce& f = sol.forces[i];
    const Vec2 v = surface_velocity(c.position, sol.motion);
    const double dn = c.outward_normal.dot(v);
    const double dt = tangent_of(c.outward_normal).dot(v);
    const ContactLabel label = i < sol.labels.size() ? sol.labels[i] : ContactLabel::Stick;

    if (label == ContactLabel::Detached) {
      rep.detachment = std::max({rep.detachment, std::abs(f.normal), std::abs(f.tangential), dn});
      continue;
    }
    rep.unilateral = std::max(rep.unilateral, -f.normal);
    rep.cone = std::max(rep.cone, std::abs(f.tangential) - c.mu * f.normal);
    rep.constitutive =
        std::max(rep.constitutive, std::abs(f.normal - model.preload_at(i).normal - model.stiffness[i] * dn));
    if (label == ContactLabel::Stick) {
      rep.stick_motion = std::max(rep.stick_motion, std::abs(dt));
    } else {
      const double s = static_cast<double>(static_cast<int>(label));
      rep.dissipation = std::max({rep.dissipation, -s * dt, std::abs(f.tangential + s * c.mu * f.normal)});
    }
  }
  return rep;
}

}  // namespace graspeq
