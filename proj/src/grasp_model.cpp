#include "graspeq/grasp_model.hpp"

#include <cmath>
#include <sstream>

namespace graspeq {

namespace {

bool finite2(const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); }

}  // namespace

std::vector<Violation> validate_model(const GraspModel& model) {
  std::vector<Violation> out;
  const std::size_t m = model.contacts.size();
  if (m == 0) {
    out.push_back({-1, "grasp has no contacts"});
    return out;
  }
  if (model.stiffness.size() != m) {
    out.push_back({-1, "stiffness list has " + std::to_string(model.stiffness.size()) + " entries for " +
                           std::to_string(m) + " contacts"});
  }
  if (!model.preload.empty() && model.preload.size() != m) {
    out.push_back({-1, "preload list has " + std::to_string(model.preload.size()) + " entries for " +
                           std::to_string(m) + " contacts"});
  }

  for (std::size_t i = 0; i < m; ++i) {
    const Contact& c = model.contacts[i];
    const int idx = static_cast<int>(i);
    if (!finite2(c.position)) out.push_back({idx, "position is not finite"});
    if (!finite2(c.outward_normal) || std::abs(c.outward_normal.norm() - 1.0) > kUnitNormalTolerance) {
      std::ostringstream s;
      s << "normal is not unit length (|n| = " << c.outward_normal.norm() << ")";
      out.push_back({idx, s.str()});
    }
    if (!(c.mu >= 0.0) || !std::isfinite(c.mu)) out.push_back({idx, "friction coefficient must be >= 0"});
    if (i < model.stiffness.size() && !(model.stiffness[i] > 0.0 && std::isfinite(model.stiffness[i]))) {
      out.push_back({idx, "stiffness must be > 0"});
    }
    if (i < model.preload.size()) {
      const ContactForce& p = model.preload[i];
      if (!std::isfinite(p.normal) || !std::isfinite(p.tangential)) {
        out.push_back({idx, "preload is not finite"});
      } else {
        if (p.normal < 0.0) out.push_back({idx, "preload normal force is negative"});
        if (std::abs(p.tangential) > c.mu * p.normal + kPreloadTolerance) {
          std::ostringstream s;
          s << "preload violates friction cone (|c_t| = " << std::abs(p.tangential) << " > mu c_n = " << c.mu * p.normal
            << ")";
          out.push_back({idx, s.str()});
        }
      }
    }
  }

  // Self-balance is only meaningful once every contact is well formed.
  if (out.empty() && model.has_preload()) {
    const Vec3 net = net_contact_wrench(model, model.preload);
    if (net.cwiseAbs().maxCoeff() > kPreloadTolerance) {
      std::ostringstream s;
      s << "preload is not self-balancing (net wrench " << net.x() << ", " << net.y() << ", " << net.z() << ")";
      out.push_back({-1, s.str()});
    }
  }
  return out;
}

void require_valid(const GraspModel& model) {
  auto violations = validate_model(model);
  if (violations.empty()) return;
  std::ostringstream s;
  s << "invalid grasp model";
  for (const auto& v : violations) {
    s << "; ";
    if (v.contact >= 0) s << "contact " << v.contact + 1 << ": ";
    s << v.what;
  }
  throw ModelError(s.str(), std::move(violations));
}

Vec3 world_force(const Contact& contact, const ContactForce& force) {
  const Vec2 f = -contact.outward_normal * force.normal + tangent_of(contact.outward_normal) * force.tangential;
  return {f.x(), f.y(), cross2(contact.position, f)};
}

Vec3 net_contact_wrench(const GraspModel& model, const std::vector<ContactForce>& forces) {
  Vec3 sum = Vec3::Zero();
  for (std::size_t i = 0; i < model.contacts.size() && i < forces.size(); ++i) {
    sum += world_force(model.contacts[i], forces[i]);
  }
  return sum;
}

GraspMaps::GraspMaps(const GraspModel& model) : motion_(3, static_cast<Eigen::Index>(2 * model.size())) {
  tangents_.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    const Contact& c = model.contacts[i];
    const Vec2 tau = tangent_of(c.outward_normal);
    tangents_.push_back(tau);
    motion_.col(normal_index(i)) << c.outward_normal, cross2(c.position, c.outward_normal);
    motion_.col(tangent_index(i)) << tau, cross2(c.position, tau);
  }
}

GraspMaps build_maps(const GraspModel& model) { return GraspMaps(model); }

std::vector<ContactMotion> contact_motion(const GraspMaps& maps, const Vec3& d) {
  const Eigen::VectorXd projected = maps.motion_map().transpose() * d;
  std::vector<ContactMotion> out(maps.contact_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {projected(GraspMaps::normal_index(i)), projected(GraspMaps::tangent_index(i))};
  }
  return out;
}

}  // namespace graspeq
