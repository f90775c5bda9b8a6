#include "graspeq/random_grasp.hpp"

#include "graspeq/simplex.hpp"

#include <cmath>
#include <numbers>

namespace graspeq {

bool tangent_planes_in_general_position(const GraspModel& model, double threshold) {
  const GraspMaps maps(model);
  const std::size_t m = model.size();
  std::vector<Vec3> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = maps.tangent_column(i).normalized();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (t[a].cross(t[b]).norm() < threshold) return false;
      for (std::size_t c = b + 1; c < m; ++c) {
        if (std::abs(t[a].cross(t[b]).dot(t[c])) < threshold) return false;
      }
    }
  }
  return true;
}

std::vector<ContactForce> random_balanced_preload(std::mt19937_64& rng, const GraspModel& model) {
  const std::size_t m = model.size();
  const auto n = static_cast<Eigen::Index>(2 * m);
  std::normal_distribution<double> gauss;

  lp::Problem p(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = static_cast<Eigen::Index>(2 * i);
    p.lower(k) = 0.0;
    p.upper(k) = 1.0;
    for (double side : {1.0, -1.0}) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
      r(k) = model.contacts[i].mu;
      r(k + 1) = -side;
      p.add_inequality(r, 0.0);
    }
  }
  for (int row = 0; row < 3; ++row) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
    for (std::size_t i = 0; i < m; ++i) {
      r(static_cast<Eigen::Index>(2 * i)) = world_force(model.contacts[i], {1.0, 0.0})(row);
      r(static_cast<Eigen::Index>(2 * i + 1)) = world_force(model.contacts[i], {0.0, 1.0})(row);
    }
    p.add_equality(r, 0.0);
  }

  Eigen::VectorXd mix = Eigen::VectorXd::Zero(n);
  const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (double weight : {lambda, 1.0 - lambda}) {
    for (Eigen::Index k = 0; k < n; ++k) p.objective(k) = gauss(rng);
    const lp::Solution s = lp::maximize(p);
    if (s.status == lp::Status::Optimal) mix += weight * s.x;
  }

  std::vector<ContactForce> preload(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double cn = mix(static_cast<Eigen::Index>(2 * i));
    const double ct = mix(static_cast<Eigen::Index>(2 * i + 1));
    // Basic-solution zeros are exact; tiny values are round-off from the mix.
    preload[i] = cn > 1e-12 ? ContactForce{cn, ct} : ContactForce{};
  }
  return preload;
}

GraspModel random_grasp(std::mt19937_64& rng, const RandomGraspOptions& options) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> friction(options.mu_min, options.mu_max);
  std::uniform_real_distribution<double> spring(options.stiffness_min, options.stiffness_max);

  GraspModel model;
  for (int attempt = 0;; ++attempt) {
    model = GraspModel{};
    model.name = "random-" + std::to_string(options.contacts);
    for (std::size_t i = 0; i < options.contacts; ++i) {
      const double a = angle(rng);
      model.contacts.push_back({Vec2(coord(rng), coord(rng)), Vec2(std::cos(a), std::sin(a)), friction(rng)});
      model.stiffness.push_back(options.stiffness_min == options.stiffness_max ? options.stiffness_min : spring(rng));
    }
    if (options.general_position <= 0.0 || tangent_planes_in_general_position(model, options.general_position)) break;
    if (attempt > 10000) throw std::runtime_error("random_grasp: could not reach general position");
  }
  if (options.preload) model.preload = random_balanced_preload(rng, model);
  return model;
}

GraspModel random_grasp(std::uint64_t seed, const RandomGraspOptions& options) {
  std::mt19937_64 rng(seed);
  return random_grasp(rng, options);
}

}  // namespace graspeq
