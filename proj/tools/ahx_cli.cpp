// Command-line front end for scenarios and the example catalog.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ahx/scenario.hpp"

namespace sc = ahx::scenario;
using sc::Json;

namespace {

struct Common {
  std::string scenario;
  std::string example;
  std::string out;
  std::string format = "json";
  std::string tol_profile;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool scenario_input) {
  if (scenario_input) {
    cmd->add_option("--scenario", c.scenario, "scenario JSON file");
    cmd->add_option("--example", c.example, "use a bundled example instead of a file");
  }
  cmd->add_option("--out", c.out, "write the output here instead of stdout");
  cmd->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--tol-profile", c.tol_profile, "JSON file with tolerance overrides");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
}

Json load(const Common& c) {
  if (!c.scenario.empty() && !c.example.empty()) {
    throw ahx::Error(ahx::ErrorKind::ValidationError, "give --scenario or --example, not both");
  }
  if (!c.example.empty()) return sc::generate_example(c.example);
  if (c.scenario.empty()) throw ahx::Error(ahx::ErrorKind::ValidationError, "--scenario is required");
  return sc::read_json_file(c.scenario);
}

// Default operations when the scenario does not ask for `op` itself.
Json synthesize(const Json& s, const std::string& op) {
  Json ops = Json::array();
  std::vector<std::string> polys;
  if (s.contains("polynomials") && s["polynomials"].is_array()) {
    for (const auto& p : s["polynomials"]) {
      if (p.contains("name") && p["name"].is_string()) polys.push_back(p["name"]);
    }
  }
  if (op == "silov") {
    ops.push_back(Json{{"op", "silov"}});
  } else if (op == "characters") {
    ops.push_back(Json{{"op", "characters"}});
    for (const auto& p : polys) ops.push_back(Json{{"op", op}, {"poly", p}});
  } else if (op == "cole" || op == "tower") {
    if (!polys.empty()) ops.push_back(Json{{"op", op}, {"polys", polys}});
  } else {
    for (const auto& p : polys) ops.push_back(Json{{"op", op}, {"poly", p}});
  }
  return ops;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ahx::Error(ahx::ErrorKind::InvalidArgument, "cannot write " + c.out);
  f << text;
}

std::string render(const Common& c, const Json& report) {
  if (c.format == "table") return sc::render_table(report);
  return sc::canonical_dump(report, 2) + "\n";
}

int run_ops(const Common& c, const std::vector<std::string>& ops) {
  Json s = load(c);
  sc::RunOptions opt;
  if (!c.tol_profile.empty()) opt.tolerances = sc::tolerances_from_json(sc::read_json_file(c.tol_profile));
  opt.seed = c.seed;
  opt.only = ops;
  if (!ops.empty() && s.contains("operations") && s["operations"].is_array()) {
    bool present = false;
    for (const auto& o : s["operations"]) {
      for (const auto& name : ops) present = present || (o.contains("op") && o["op"] == name);
    }
    if (!present) s["operations"] = synthesize(s, ops.front());
  }
  emit(c, render(c, sc::run(s, opt)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arens-Hoffman and Cole extensions on finite models"};
  app.require_subcommand(1);

  const std::map<std::string, std::pair<std::string, std::vector<std::string>>> simple = {
      {"extend", {"build extensions and report parameters", {"extend", "norm"}}},
      {"characters", {"enumerate characters", {"characters"}}},
      {"discriminant", {"discriminants and zero-divisor tests", {"discriminant"}}},
      {"tractable", {"forecast and compute tractability", {"tractable"}}},
      {"quotient", {"quotient by the radical", {"quotient"}}},
      {"cole", {"Cole extensions and rho*", {"cole", "cole_tower"}}},
      {"silov", {"minimal boundary of the ground function space", {"silov"}}},
      {"compare", {"compare the two extensions", {"compare"}}},
      {"tower", {"finite towers of extensions", {"tower"}}},
  };
  std::map<std::string, Common> opts;
  std::map<std::string, CLI::App*> cmds;
  for (const auto& [name, info] : simple) {
    cmds[name] = app.add_subcommand(name, info.first);
    add_common(cmds[name], opts[name], true);
  }
  Common run_opts;
  auto* run = app.add_subcommand("run", "run every operation of a scenario");
  add_common(run, run_opts, true);

  Common ex_opts;
  std::string ex_name;
  bool ex_run = false;
  bool ex_list = false;
  auto* example = app.add_subcommand("example", "print (or run) a bundled example scenario");
  example->add_option("name", ex_name, "catalog name");
  example->add_flag("--run", ex_run, "run it and print the report");
  example->add_flag("--list", ex_list, "list the catalog");
  add_common(example, ex_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [name, info] : simple) {
      if (cmds[name]->parsed()) return run_ops(opts[name], info.second);
    }
    if (run->parsed()) return run_ops(run_opts, {});
    if (example->parsed()) {
      if (ex_list) {
        std::string text;
        for (const auto& n : sc::example_names()) text += n + "\n";
        emit(ex_opts, text);
        return 0;
      }
      if (ex_name.empty()) throw ahx::Error(ahx::ErrorKind::ValidationError, "example name required (see --list)");
      if (!ex_run) {
        emit(ex_opts, sc::canonical_dump(sc::generate_example(ex_name), 2) + "\n");
        return 0;
      }
      ex_opts.example = ex_name;
      return run_ops(ex_opts, {});
    }
  } catch (const ahx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sc::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
