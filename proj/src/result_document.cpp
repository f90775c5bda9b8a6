#include "graspeq/result_document.hpp"

#include "json.hpp"

#include <stdexcept>

namespace graspeq {

using nlohmann::json;

namespace {

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

ContactLabel label_from(const std::string& name) {
  for (ContactLabel l : {ContactLabel::Detached, ContactLabel::SlipNegative, ContactLabel::Stick, ContactLabel::SlipPositive}) {
    if (name == label_name(l)) return l;
  }
  throw std::invalid_argument("unknown contact label '" + name + "'");
}

}  // namespace

ResultDocument make_result_document(std::string command, std::string method, const GraspModel& model, const Wrench& w,
                                    const Verdict& verdict, std::size_t slip_states) {
  ResultDocument doc;
  doc.command = std::move(command);
  doc.method = std::move(method);
  doc.grasp = model.name;
  doc.wrench = w;
  doc.detachment = verdict.mode.detachment;
  doc.strict_eq4 = verdict.mode.strict_eq4;
  doc.stable = verdict.stable;
  doc.slip_states = slip_states;
  doc.states_tried = verdict.states_tried;
  if (const auto& sol = verdict.witness) {
    doc.state = sol->labels;
    doc.forces = sol->forces;
    for (std::size_t i = 0; i < model.size(); ++i) doc.world_forces.push_back(world_force(model.contacts[i], sol->forces[i]));
    doc.motion = sol->motion;
    doc.residuals = check_solution(model, w, *sol);
  }
  return doc;
}

std::string serialize(const ResultDocument& doc) {
  json j;
  j["command"] = doc.command;
  j["method"] = doc.method;
  j["grasp"] = doc.grasp;
  j["wrench"] = vec_json(doc.wrench.vec());
  j["mode"] = {{"detachment", doc.detachment}, {"strict_eq4", doc.strict_eq4}};
  j["stable"] = doc.stable;

  json state = json::array();
  for (ContactLabel l : doc.state) state.push_back(label_name(l));
  j["state"] = doc.stable ? state : json(nullptr);

  json forces = json::array();
  for (std::size_t i = 0; i < doc.forces.size(); ++i) {
    json f = {{"local", {doc.forces[i].normal, doc.forces[i].tangential}}};
    if (i < doc.world_forces.size()) f["world"] = vec_json(doc.world_forces[i]);
    forces.push_back(f);
  }
  j["forces"] = forces;
  j["motion"] = doc.motion ? vec_json(*doc.motion) : json(nullptr);
  if (doc.residuals) {
    const ResidualReport& r = *doc.residuals;
    j["residuals"] = {{"equilibrium", r.equilibrium},   {"unilateral", r.unilateral},   {"cone", r.cone},
                      {"constitutive", r.constitutive}, {"dissipation", r.dissipation}, {"stick_motion", r.stick_motion},
                      {"detachment", r.detachment}};
  } else {
    j["residuals"] = nullptr;
  }
  j["counts"] = {{"slip_states", doc.slip_states}, {"states_tried", doc.states_tried}};
  j["timing_ms"] = doc.timing_ms;
  return j.dump(2) + "\n";
}

ResultDocument parse_result_document(std::string_view text) {
  try {
    const json j = json::parse(text);
    ResultDocument doc;
    doc.command = j.at("command").get<std::string>();
    doc.method = j.at("method").get<std::string>();
    doc.grasp = j.at("grasp").get<std::string>();
    doc.wrench = Wrench::from(vec_from(j.at("wrench")));
    doc.detachment = j.at("mode").at("detachment").get<bool>();
    doc.strict_eq4 = j.at("mode").at("strict_eq4").get<bool>();
    doc.stable = j.at("stable").get<bool>();
    if (!j.at("state").is_null()) {
      for (const auto& s : j.at("state")) doc.state.push_back(label_from(s.get<std::string>()));
    }
    for (const auto& f : j.at("forces")) {
      doc.forces.push_back({f.at("local").at(0).get<double>(), f.at("local").at(1).get<double>()});
      if (f.contains("world")) doc.world_forces.push_back(vec_from(f.at("world")));
    }
    if (!j.at("motion").is_null()) doc.motion = vec_from(j.at("motion"));
    if (!j.at("residuals").is_null()) {
      const json& r = j.at("residuals");
      doc.residuals = ResidualReport{r.at("equilibrium").get<double>(),  r.at("unilateral").get<double>(),
                                     r.at("cone").get<double>(),         r.at("constitutive").get<double>(),
                                     r.at("dissipation").get<double>(),  r.at("stick_motion").get<double>(),
                                     r.at("detachment").get<double>()};
    }
    doc.slip_states = j.at("counts").at("slip_states").get<std::size_t>();
    doc.states_tried = j.at("counts").at("states_tried").get<std::size_t>();
    doc.timing_ms = j.at("timing_ms").get<double>();
    return doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("result document: ") + e.what());
  }
}

}  // namespace graspeq
