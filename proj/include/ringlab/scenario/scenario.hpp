#pragma once

// JSON scenarios, their validation, the runner and the bundled catalog.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ringlab::scenario {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

enum class Outcome { Pass, Falsified, Undecided };
std::string to_string(Outcome o);
Outcome parse_outcome(const std::string& s);  // also accepts converged / diverged
int outcome_exit_code(Outcome o);              // 0, 2, 3

// Exit code for an outcome under an optional expectation: 0 when they
// agree, otherwise the outcome's own code, or 4 for a pass that was
// expected to falsify or stay undecided.
int exit_code_for(Outcome o, const std::optional<Outcome>& expect);

struct Issue {
  std::string path;  // JSON pointer, "" for the document itself
  std::string message;
};
std::string format_issues(const std::vector<Issue>& issues);

std::vector<Issue> validate(const Json& doc);

// A validated scenario with every default filled in.
class Scenario {
 public:
  // Throws Error(Schema) listing every issue.
  static Scenario from_json(const Json& doc);
  static Scenario parse(std::string_view text);
  static Scenario load(const std::filesystem::path& file);

  const Json& doc() const { return doc_; }
  const std::string& kind() const;
  std::uint64_t seed() const;
  void set_seed(std::uint64_t seed);
  std::optional<Outcome> expect() const;
  std::string name() const;

 private:
  Json doc_;
};

struct TraceFile {
  std::string name;     // file name relative to the output directory
  std::string content;  // CSV
};

struct RunResult {
  Json report;
  Outcome outcome = Outcome::Undecided;
  int exit_code = 1;
  std::vector<TraceFile> traces;
};

// Runs the scenario. Nothing is written; see write_outputs.
RunResult run(const Scenario& s);

// Writes report.json and the trace files into dir (created if needed).
void write_outputs(const RunResult& r, const std::filesystem::path& dir);

// Serialized report, two-space indent, trailing newline.
std::string dump(const Json& report);

// Structural check of an emitted report.
std::vector<Issue> validate_report(const Json& report);

struct CatalogEntry {
  std::string name;
  std::string description;
  Json scenario;
};
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_in_catalog(std::string_view name);

}  // namespace ringlab::scenario
