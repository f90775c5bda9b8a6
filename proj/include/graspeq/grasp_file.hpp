#pragma once

#include "graspeq/arrangement.hpp"
#include "graspeq/grasp_model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graspeq {

/// A grasp definition as stored on disk:
///
///   name: three-contact
///   contacts:
///     - {position: [-1, 0], normal: [-1, 0], mu: 0.5}
///   stiffness: 1            # scalar or one value per contact
///   preload: none           # or one [c_n, c_t] per contact
///   options: {detachment: true}
struct GraspFile {
  GraspModel model;
  bool detachment = true;

  AnalysisOptions analysis_options() const {
    AnalysisOptions o;
    o.detachment = detachment;
    return o;
  }
};

class GraspFileError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Validation };
  GraspFileError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Throws GraspFileError: Syntax for malformed documents, unknown fields and
/// wrong shapes (with line context); Validation when the model fails
/// validate_model().
GraspFile parse_grasp_file(std::string_view text);
GraspFile load_grasp_file(const std::filesystem::path& path);

/// Emits a document that parse_grasp_file() reads back to the same model.
std::string write_grasp_file(const GraspFile& file);

}  // namespace graspeq
