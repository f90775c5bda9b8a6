#include "graspeq/grasp_file.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace graspeq {

namespace {

using Kind = GraspFileError::Kind;

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << node.Mark().line + 1 << ": " << field << ": " << what;
  throw GraspFileError(Kind::Syntax, msg.str());
}

void allow_only(const YAML::Node& map, const std::string& where, const std::set<std::string>& keys) {
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!keys.count(key)) fail(kv.first, where.empty() ? key : where + "." + key, "unknown field");
  }
}

double number(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected a number");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected a number, got '" + node.Scalar() + "'");
  }
}

Vec2 pair(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() != 2) fail(node, field, "expected a list of two numbers");
  return {number(node[0], field + "[0]"), number(node[1], field + "[1]")};
}

YAML::Node required(const YAML::Node& map, const std::string& key, const std::string& where) {
  const YAML::Node node = map[key];
  if (!node) fail(map, where.empty() ? key : where + "." + key, "missing field");
  return node;
}

}  // namespace

GraspFile parse_grasp_file(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw GraspFileError(Kind::Syntax, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw GraspFileError(Kind::Syntax, "line 1: document must be a mapping");
  allow_only(root, "", {"name", "contacts", "stiffness", "preload", "options"});

  GraspFile file;
  GraspModel& model = file.model;
  if (const YAML::Node name = root["name"]) {
    if (!name.IsScalar()) fail(name, "name", "expected a string");
    model.name = name.Scalar();
  }

  const YAML::Node contacts = required(root, "contacts", "");
  if (!contacts.IsSequence()) fail(contacts, "contacts", "expected a list");
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const YAML::Node c = contacts[i];
    const std::string where = "contacts[" + std::to_string(i + 1) + "]";
    if (!c.IsMap()) fail(c, where, "expected a mapping");
    allow_only(c, where, {"position", "normal", "mu"});
    Contact contact;
    contact.position = pair(required(c, "position", where), where + ".position");
    contact.outward_normal = pair(required(c, "normal", where), where + ".normal");
    contact.mu = number(required(c, "mu", where), where + ".mu");
    model.contacts.push_back(contact);
  }
  const std::size_t m = model.contacts.size();

  const YAML::Node stiffness = root["stiffness"];
  if (!stiffness) {
    model.stiffness.assign(m, 1.0);
  } else if (stiffness.IsScalar()) {
    model.stiffness.assign(m, number(stiffness, "stiffness"));
  } else if (stiffness.IsSequence()) {
    if (stiffness.size() != m) fail(stiffness, "stiffness", "expected one value per contact");
    for (std::size_t i = 0; i < m; ++i) model.stiffness.push_back(number(stiffness[i], "stiffness[" + std::to_string(i + 1) + "]"));
  } else {
    fail(stiffness, "stiffness", "expected a number or a list");
  }

  if (const YAML::Node preload = root["preload"]) {
    if (preload.IsScalar()) {
      if (preload.Scalar() != "none") fail(preload, "preload", "expected 'none' or a list of [c_n, c_t]");
    } else if (preload.IsSequence()) {
      if (preload.size() != m) fail(preload, "preload", "expected one [c_n, c_t] per contact");
      for (std::size_t i = 0; i < m; ++i) {
        const Vec2 f = pair(preload[i], "preload[" + std::to_string(i + 1) + "]");
        model.preload.push_back({f.x(), f.y()});
      }
    } else {
      fail(preload, "preload", "expected 'none' or a list of [c_n, c_t]");
    }
  }

  if (const YAML::Node options = root["options"]) {
    if (!options.IsMap()) fail(options, "options", "expected a mapping");
    allow_only(options, "options", {"detachment"});
    if (const YAML::Node d = options["detachment"]) {
      try {
        file.detachment = d.as<bool>();
      } catch (const YAML::Exception&) {
        fail(d, "options.detachment", "expected true or false");
      }
    }
  }

  const auto violations = validate_model(model);
  if (!violations.empty()) {
    std::ostringstream msg;
    for (std::size_t k = 0; k < violations.size(); ++k) {
      if (k) msg << "; ";
      if (violations[k].contact >= 0) msg << "contact " << violations[k].contact + 1 << ": ";
      msg << violations[k].what;
    }
    throw GraspFileError(Kind::Validation, msg.str());
  }
  return file;
}

GraspFile load_grasp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraspFileError(Kind::Syntax, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grasp_file(buf.str());
}

std::string write_grasp_file(const GraspFile& file) {
  const GraspModel& model = file.model;
  std::ostringstream out;
  out << std::setprecision(17);
  auto list = [&](double a, double b) { out << '[' << a << ", " << b << ']'; };

  out << "name: \"" << model.name << "\"\n";
  out << "contacts:\n";
  for (const Contact& c : model.contacts) {
    out << "  - {position: ";
    list(c.position.x(), c.position.y());
    out << ", normal: ";
    list(c.outward_normal.x(), c.outward_normal.y());
    out << ", mu: " << c.mu << "}\n";
  }
  out << "stiffness: [";
  for (std::size_t i = 0; i < model.stiffness.size(); ++i) out << (i ? ", " : "") << model.stiffness[i];
  out << "]\n";
  if (!model.has_preload()) {
    out << "preload: none\n";
  } else {
    out << "preload:\n";
    for (const ContactForce& f : model.preload) {
      out << "  - ";
      list(f.normal, f.tangential);
      out << '\n';
    }
  }
  out << "options: {detachment: " << (file.detachment ? "true" : "false") << "}\n";
  return out.str();
}

}  // namespace graspeq
