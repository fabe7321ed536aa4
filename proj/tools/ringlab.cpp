// ringlab command line: run, list, validate and show scenarios.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ringlab/ringlab.h"

namespace {

int report_error(const char* what, ringlab_status st) {
  std::cerr << "ringlab: " << what << ": " << ringlab_status_string(st);
  const std::string detail = ringlab_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return 1;
}

// A scenario file, or the name of a bundled scenario.
ringlab_status open_scenario(const std::string& ref, ringlab_scenario** out) {
  if (!std::filesystem::exists(ref)) {
    for (size_t i = 0; i < ringlab_catalog_size(); ++i)
      if (ref == ringlab_catalog_name(i)) return ringlab_scenario_from_catalog(ref.c_str(), out);
  }
  return ringlab_scenario_from_file(ref.c_str(), out);
}

int cmd_run(const std::string& ref, const std::optional<std::string>& out_dir, const std::optional<std::uint64_t>& seed,
            bool quiet) {
  ringlab_scenario* s = nullptr;
  if (auto st = open_scenario(ref, &s); st != RINGLAB_OK) return report_error("cannot load scenario", st);
  if (seed) {
    if (auto st = ringlab_scenario_set_seed(s, *seed); st != RINGLAB_OK) {
      ringlab_scenario_free(s);
      return report_error("cannot set seed", st);
    }
  }
  ringlab_report* r = nullptr;
  const auto st = ringlab_run(s, out_dir ? out_dir->c_str() : nullptr, &r);
  ringlab_scenario_free(s);
  if (st != RINGLAB_OK) return report_error("run failed", st);
  if (!quiet) std::cout << ringlab_report_json(r);
  const int code = ringlab_report_exit_code(r);
  std::cerr << "ringlab: outcome " << ringlab_report_outcome(r) << ", exit code " << code;
  if (out_dir) std::cerr << ", report written to " << (std::filesystem::path(*out_dir) / "report.json").string();
  std::cerr << "\n";
  ringlab_report_free(r);
  return code;
}

int cmd_list() {
  for (size_t i = 0; i < ringlab_catalog_size(); ++i)
    std::printf("%-18s %s\n", ringlab_catalog_name(i), ringlab_catalog_description(i));
  return 0;
}

int cmd_show(const std::string& name) {
  for (size_t i = 0; i < ringlab_catalog_size(); ++i) {
    if (name != ringlab_catalog_name(i)) continue;
    char* json = nullptr;
    if (auto st = ringlab_catalog_json(i, &json); st != RINGLAB_OK) return report_error("cannot show scenario", st);
    std::cout << json;
    ringlab_string_free(json);
    return 0;
  }
  std::cerr << "ringlab: no catalog scenario named '" << name << "'\n";
  return 1;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "ringlab: cannot open '" << path << "'\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  char* issues = nullptr;
  const auto st = ringlab_validate_json(buf.str().c_str(), &issues);
  if (st == RINGLAB_OK) {
    std::cout << path << ": valid\n";
    return 0;
  }
  if (st != RINGLAB_ERR_SCHEMA) return report_error("validation failed", st);
  std::cout << path << ": invalid\n" << (issues ? issues : "");
  ringlab_string_free(issues);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringlab: exact-arithmetic experiments on dch rings"};
  app.set_version_flag("--version", std::string(ringlab_version()));
  app.require_subcommand(1);

  std::string run_ref;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run a scenario file or a bundled scenario by name");
  run->add_option("scenario", run_ref, "scenario JSON file or catalog name")->required();
  run->add_option("--out", out_dir, "directory for report.json and trace CSV files");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_flag("-q,--quiet", quiet, "do not print the report on stdout");

  auto* list = app.add_subcommand("list", "list the bundled scenarios");

  std::string show_name;
  auto* show = app.add_subcommand("show", "print a bundled scenario as JSON");
  show->add_option("name", show_name, "catalog name")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a scenario file against the schema");
  validate->add_option("scenario", validate_path, "scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_ref, out_dir, seed, quiet);
    if (*list) return cmd_list();
    if (*show) return cmd_show(show_name);
    if (*validate) return cmd_validate(validate_path);
  } catch (const std::exception& e) {
    std::cerr << "ringlab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
