// graspeq: passive stability analysis of planar grasps.
//
// Exit codes: 0 analysis completed (either verdict), 1 usage error,
// 2 grasp file syntax error, 3 grasp file validation error.

#include "graspeq/baselines.hpp"
#include "graspeq/grasp_file.hpp"
#include "graspeq/random_grasp.hpp"
#include "graspeq/result_document.hpp"
#include "graspeq/stability.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using namespace graspeq;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Wrench parse_wrench(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    v.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument(item);
  }
  if (v.size() != 3) throw std::invalid_argument(text);
  return {v[0], v[1], v[2]};
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct QueryArgs {
  std::string file;
  std::string wrench;
  bool strict_eq4 = false;
  bool no_detach = false;
  double tangent_stiffness = 1.0;
  unsigned threads = 1;
};

AnalysisOptions query_options(const GraspFile& gf, const QueryArgs& q) {
  AnalysisOptions o = gf.analysis_options();
  if (q.no_detach) o.detachment = false;
  o.strict_eq4 = q.strict_eq4;
  return o;
}

int run_query(const std::string& command, const QueryArgs& q) {
  const GraspFile gf = load_grasp_file(q.file);
  const Wrench w = parse_wrench(q.wrench);
  const AnalysisOptions opts = query_options(gf, q);
  const auto start = Clock::now();
  ResultDocument doc;
  if (command == "check") {
    const StabilityAnalyzer analyzer(gf.model, opts);
    doc = make_result_document(command, "arrangement", gf.model, w, analyzer.check(w, q.threads),
                               analyzer.slip_states().size());
  } else if (command == "oracle") {
    doc = make_result_document(command, "brute-force", gf.model, w, brute_force_verdict(gf.model, w, opts), 0);
  } else {
    Verdict v = linear_compliance_verdict(gf.model, w, q.tangent_stiffness);
    v.mode = opts;
    doc = make_result_document(command, "linear-compliance", gf.model, w, v, 0);
  }
  doc.timing_ms = elapsed_ms(start);
  std::cout << serialize(doc);
  return 0;
}

int run_region(const std::string& file, std::size_t directions, double tol, double cap, bool no_detach, unsigned threads) {
  const GraspFile gf = load_grasp_file(file);
  AnalysisOptions opts = gf.analysis_options();
  if (no_detach) opts.detachment = false;
  const StabilityAnalyzer analyzer(gf.model, opts);
  const RegionSweep sweep = resistible_region(analyzer, directions, tol, cap, threads);
  std::cout << "dir_x,dir_y,max_force\n";
  for (const DirectionResult& r : sweep.results) {
    std::cout << format_number(r.direction.x()) << ',' << format_number(r.direction.y()) << ','
              << (r.force.at_least_cap ? std::string("inf") : format_number(r.force.magnitude)) << '\n';
    if (r.force.non_monotone) {
      std::cerr << "warning: stability not monotone along (" << r.direction.x() << ", " << r.direction.y() << ")\n";
    }
  }
  return 0;
}

int run_enumerate(const std::string& file, bool no_detach) {
  const GraspFile gf = load_grasp_file(file);
  AnalysisOptions opts = gf.analysis_options();
  if (no_detach) opts.detachment = false;
  const auto start = Clock::now();
  const SlipStateSet set = enumerate_slip_states(gf.model, opts);
  const double ms = elapsed_ms(start);

  nlohmann::json j;
  j["command"] = "enumerate";
  j["grasp"] = gf.model.name;
  j["mode"] = {{"detachment", opts.detachment_active()}};
  j["planes"] = set.census.planes;
  j["state_count"] = set.census.total();
  j["cells"] = {{"regions", set.census.regions}, {"facets", set.census.facets}, {"lines", set.census.lines}};
  j["dual_graph"] = {{"V", set.census.regions}, {"E", set.census.facets}, {"F", set.census.lines}};
  j["distinct_slip_states"] = set.count_excluding_origin();
  nlohmann::json states = nlohmann::json::array();
  for (const SlipState& s : set.states) states.push_back(s.code());
  j["states"] = states;
  j["timing_ms"] = ms;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_gws(const std::string& file, std::optional<double> slice) {
  const GraspFile gf = load_grasp_file(file);
  const ConvexHull3 hull = gws_l1(gf.model);
  nlohmann::json j;
  j["command"] = "gws";
  j["grasp"] = gf.model.name;
  j["dimension"] = hull.dimension;
  nlohmann::json verts = nlohmann::json::array();
  for (const Vec3& v : hull.vertices) verts.push_back({v.x(), v.y(), v.z()});
  j["vertices"] = verts;
  j["facets"] = hull.facets.size();
  if (slice) {
    const WrenchSlice s = gws_slice(hull, *slice);
    nlohmann::json poly = nlohmann::json::array();
    for (const Vec2& p : s.polygon) poly.push_back({p.x(), p.y()});
    j["slice"] = {{"torque", s.torque},
                  {"polygon", poly},
                  {"degenerate", s.degenerate},
                  {"origin_clearance", s.degenerate ? 0.0 : origin_clearance(s.polygon)}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_gen(std::size_t contacts, std::uint64_t seed, bool preload) {
  RandomGraspOptions o;
  o.contacts = contacts;
  o.preload = preload;
  GraspFile gf;
  gf.model = random_grasp(seed, o);
  gf.model.name = "random-m" + std::to_string(contacts) + "-s" + std::to_string(seed);
  std::cout << write_grasp_file(gf);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Passive stability analysis of planar grasps"};
  app.require_subcommand(1);

  QueryArgs q;
  auto add_query = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", q.file, "grasp file")->required();
    sub->add_option("--wrench", q.wrench, "external wrench wx,wy,tau")->required();
    sub->add_flag("--strict-eq4", q.strict_eq4, "keep the constitutive law on every contact (no detachment)");
    sub->add_flag("--no-detach", q.no_detach, "disable contact detachment");
    return sub;
  };
  CLI::App* check = add_query("check", "stability verdict via slip-state enumeration");
  check->add_option("--threads", q.threads, "worker threads")->check(CLI::PositiveNumber);
  CLI::App* oracle = add_query("oracle", "stability verdict via exhaustive label search");
  CLI::App* linear = add_query("linear", "verdict of the linear-compliance model");
  linear->add_option("--kt", q.tangent_stiffness, "tangential stiffness")->check(CLI::PositiveNumber);

  std::string file;
  std::size_t directions = 36;
  double tol = 1e-3;
  double cap = 1e3;
  bool no_detach = false;
  unsigned threads = 1;
  CLI::App* region = app.add_subcommand("region", "maximum resistible force per planar direction (CSV)");
  region->add_option("file", file, "grasp file")->required();
  region->add_option("--directions", directions, "number of directions (>= 4)");
  region->add_option("--tol", tol, "bisection tolerance");
  region->add_option("--cap", cap, "largest magnitude probed");
  region->add_flag("--no-detach", no_detach, "disable contact detachment");
  region->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* enumerate = app.add_subcommand("enumerate", "slip-state census");
  enumerate->add_option("file", file, "grasp file")->required();
  enumerate->add_flag("--no-detach", no_detach, "disable contact detachment");

  std::optional<double> slice;
  CLI::App* gws = app.add_subcommand("gws", "L1 grasp wrench space");
  gws->add_option("file", file, "grasp file")->required();
  gws->add_option("--slice", slice, "torque of the planar cross-section");

  std::size_t contacts = 3;
  std::uint64_t seed = 1;
  bool preload = false;
  CLI::App* gen = app.add_subcommand("gen", "write a random grasp file");
  gen->add_option("--contacts", contacts, "number of contacts")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "random seed");
  gen->add_flag("--preload", preload, "add a random self-balanced preload");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return run_query("check", q);
    if (oracle->parsed()) return run_query("oracle", q);
    if (linear->parsed()) return run_query("linear", q);
    if (region->parsed()) return run_region(file, directions, tol, cap, no_detach, threads);
    if (enumerate->parsed()) return run_enumerate(file, no_detach);
    if (gws->parsed()) return run_gws(file, slice);
    if (gen->parsed()) return run_gen(contacts, seed, preload);
  } catch (const GraspFileError& e) {
    std::cerr << "error: " << file << q.file << ": " << e.what() << '\n';
    return e.kind() == GraspFileError::Kind::Syntax ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
