#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace graspeq {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Planar cross product r x u = r_x u_y - r_y u_x.
inline double cross2(const Vec2& r, const Vec2& u) { return r.x() * u.y() - r.y() * u.x(); }

/// Tangent direction of a contact: the outward normal rotated by -90 degrees.
inline Vec2 tangent_of(const Vec2& outward_normal) { return {outward_normal.y(), -outward_normal.x()}; }

/// External wrench (f_x, f_y, torque) applied to the object.
struct Wrench {
  double fx = 0.0;
  double fy = 0.0;
  double torque = 0.0;

  Vec3 vec() const { return {fx, fy, torque}; }
  static Wrench from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

/// Contact force in the contact frame: normal magnitude and tangential component.
struct ContactForce {
  double normal = 0.0;
  double tangential = 0.0;
};

struct Contact {
  Vec2 position = Vec2::Zero();
  /// Unit normal pointing from the object surface toward the hand.
  Vec2 outward_normal = Vec2(0.0, -1.0);
  double mu = 0.0;
};

/// A planar grasp: contact geometry, normal spring stiffness per contact and the
/// (optional) self-balancing preload expressed in contact frames.
struct GraspModel {
  std::string name;
  std::vector<Contact> contacts;
  std::vector<double> stiffness;
  /// Empty means no preload; otherwise one entry per contact.
  std::vector<ContactForce> preload;

  std::size_t size() const { return contacts.size(); }
  bool has_preload() const { return !preload.empty(); }
  ContactForce preload_at(std::size_t i) const { return preload.empty() ? ContactForce{} : preload[i]; }
};

struct Violation {
  /// Index of the offending contact, or -1 for model-level problems.
  int contact = -1;
  std::string what;
};

/// Thrown when an operation receives a model that fails validate_model().
class ModelError : public std::runtime_error {
 public:
  ModelError(const std::string& msg, std::vector<Violation> violations)
      : std::runtime_error(msg), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

inline constexpr double kUnitNormalTolerance = 1e-12;
inline constexpr double kPreloadTolerance = 1e-9;

std::vector<Violation> validate_model(const GraspModel& model);

/// Throws ModelError listing every violation.
void require_valid(const GraspModel& model);

/// World-frame force and torque a contact exerts on the object:
/// F = -nu c_n + tau c_t, torque = r x F.
Vec3 world_force(const Contact& contact, const ContactForce& force);

/// Motion map M (3 x 2m). Contact i owns column 2i ([nu; r x nu]) and column
/// 2i+1 ([tau; r x tau]). Positive normal motion compresses the contact spring.
class GraspMaps {
 public:
  explicit GraspMaps(const GraspModel& model);

  std::size_t contact_count() const { return static_cast<std::size_t>(motion_.cols() / 2); }
  const Eigen::MatrixXd& motion_map() const { return motion_; }
  Vec3 normal_column(std::size_t i) const { return motion_.col(normal_index(i)); }
  Vec3 tangent_column(std::size_t i) const { return motion_.col(tangent_index(i)); }
  const Vec2& tangent(std::size_t i) const { return tangents_[i]; }

  static Eigen::Index normal_index(std::size_t i) { return static_cast<Eigen::Index>(2 * i); }
  static Eigen::Index tangent_index(std::size_t i) { return static_cast<Eigen::Index>(2 * i + 1); }

 private:
  Eigen::MatrixXd motion_;
  std::vector<Vec2> tangents_;
};

GraspMaps build_maps(const GraspModel& model);

struct ContactMotion {
  double normal = 0.0;      ///< > 0 compresses the contact
  double tangential = 0.0;
};

std::vector<ContactMotion> contact_motion(const GraspMaps& maps, const Vec3& d);

/// Velocity of the object surface point at r under virtual motion d = (x, y, rot).
inline Vec2 surface_velocity(const Vec2& r, const Vec3& d) {
  return Vec2(d.x() - d.z() * r.y(), d.y() + d.z() * r.x());
}

/// Sum of world_force() over all contacts (zero for a self-balanced force set).
Vec3 net_contact_wrench(const GraspModel& model, const std::vector<ContactForce>& forces);

}  // namespace graspeq
