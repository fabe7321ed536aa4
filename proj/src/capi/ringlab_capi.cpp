#include "ringlab/ringlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/rational.hpp"
#include "ringlab/scenario/scenario.hpp"

using ringlab::Error;
using ringlab::ErrorKind;
namespace sc = ringlab::scenario;

struct ringlab_scenario {
  sc::Scenario scenario;
  std::string kind;
  std::string name;
  std::string json;

  explicit ringlab_scenario(sc::Scenario s) : scenario(std::move(s)) { refresh(); }
  void refresh() {
    kind = scenario.kind();
    name = scenario.name();
    json = scenario.doc().dump();
  }
};

struct ringlab_report {
  sc::RunResult result;
  std::string json;
  std::string outcome;
};

namespace {

thread_local std::string last_error;

ringlab_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return RINGLAB_ERR_INVALID_ARGUMENT;
    case ErrorKind::Precondition: return RINGLAB_ERR_PRECONDITION;
    case ErrorKind::Undecided: return RINGLAB_ERR_UNDECIDED;
    case ErrorKind::Schema: return RINGLAB_ERR_SCHEMA;
    case ErrorKind::Io: return RINGLAB_ERR_IO;
    case ErrorKind::Internal: return RINGLAB_ERR_INTERNAL;
  }
  return RINGLAB_ERR_INTERNAL;
}

template <class Fn>
ringlab_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return RINGLAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RINGLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RINGLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RINGLAB_ERR_INTERNAL;
  }
}

ringlab_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return RINGLAB_ERR_NULL_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* ringlab_version(void) { return "1.0.0"; }

const char* ringlab_report_schema_version(void) { return sc::kSchemaVersion; }

const char* ringlab_status_string(ringlab_status status) {
  switch (status) {
    case RINGLAB_OK: return "ok";
    case RINGLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RINGLAB_ERR_PRECONDITION: return "precondition violated";
    case RINGLAB_ERR_UNDECIDED: return "undecided";
    case RINGLAB_ERR_SCHEMA: return "schema violation";
    case RINGLAB_ERR_IO: return "i/o error";
    case RINGLAB_ERR_INTERNAL: return "internal error";
    case RINGLAB_ERR_NULL_ARGUMENT: return "null argument";
  }
  return "unknown status";
}

const char* ringlab_last_error(void) { return last_error.c_str(); }

unsigned ringlab_thread_cap(void) { return ringlab::thread_cap(); }

void ringlab_string_free(char* s) { std::free(s); }

ringlab_status ringlab_scenario_from_json(const char* json, ringlab_scenario** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new ringlab_scenario(sc::Scenario::parse(json)); });
}

ringlab_status ringlab_scenario_from_file(const char* path, ringlab_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new ringlab_scenario(sc::Scenario::load(path)); });
}

ringlab_status ringlab_scenario_from_catalog(const char* name, ringlab_scenario** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const auto* e = sc::find_in_catalog(name);
    ringlab::require(e != nullptr, ErrorKind::InvalidArgument, std::string("no catalog scenario named '") + name + "'");
    *out = new ringlab_scenario(sc::Scenario::from_json(e->scenario));
  });
}

ringlab_status ringlab_scenario_set_seed(ringlab_scenario* s, uint64_t seed) {
  if (!s) return null_argument("scenario");
  return guarded([&] {
    s->scenario.set_seed(seed);
    s->refresh();
  });
}

const char* ringlab_scenario_kind(const ringlab_scenario* s) { return s ? s->kind.c_str() : ""; }

const char* ringlab_scenario_name(const ringlab_scenario* s) { return s ? s->name.c_str() : ""; }

const char* ringlab_scenario_json(const ringlab_scenario* s) { return s ? s->json.c_str() : ""; }

void ringlab_scenario_free(ringlab_scenario* s) { delete s; }

ringlab_status ringlab_validate_json(const char* json, char** issues) {
  if (!json) return null_argument("json");
  if (issues) *issues = nullptr;
  std::string lines;
  const auto st = guarded([&] {
    sc::Json doc;
    try {
      doc = sc::Json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      lines = std::string("/: malformed JSON: ") + e.what() + "\n";
      return;
    }
    for (const auto& i : sc::validate(doc)) lines += (i.path.empty() ? "/" : i.path) + ": " + i.message + "\n";
  });
  if (st != RINGLAB_OK) return st;
  if (lines.empty()) return RINGLAB_OK;
  if (issues) {
    const auto copied = guarded([&] { *issues = copy_string(lines); });
    if (copied != RINGLAB_OK) return copied;
  }
  last_error = "invalid scenario";
  return RINGLAB_ERR_SCHEMA;
}

ringlab_status ringlab_run(const ringlab_scenario* s, const char* out_dir, ringlab_report** out) {
  if (!s) return null_argument("scenario");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* r = new ringlab_report{sc::run(s->scenario), {}, {}};
    try {
      r->json = sc::dump(r->result.report);
      r->outcome = sc::to_string(r->result.outcome);
      if (out_dir) sc::write_outputs(r->result, out_dir);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

const char* ringlab_report_json(const ringlab_report* r) { return r ? r->json.c_str() : ""; }

const char* ringlab_report_outcome(const ringlab_report* r) { return r ? r->outcome.c_str() : ""; }

int ringlab_report_exit_code(const ringlab_report* r) { return r ? r->result.exit_code : 1; }

void ringlab_report_free(ringlab_report* r) { delete r; }

size_t ringlab_catalog_size(void) { return sc::catalog().size(); }

const char* ringlab_catalog_name(size_t i) { return i < sc::catalog().size() ? sc::catalog()[i].name.c_str() : ""; }

const char* ringlab_catalog_description(size_t i) {
  return i < sc::catalog().size() ? sc::catalog()[i].description.c_str() : "";
}

ringlab_status ringlab_catalog_json(size_t i, char** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ringlab::require(i < sc::catalog().size(), ErrorKind::InvalidArgument, "catalog index out of range");
    *out = copy_string(sc::catalog()[i].scenario.dump(2) + "\n");
  });
}

ringlab_status ringlab_counterexample_json(const char* epsilon, int p, char** out) {
  if (!epsilon) return null_argument("epsilon");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ringlab::require(p == 0 || p == 1 || p == 2, ErrorKind::InvalidArgument, "p must be 1, 2 or 0 (infinity)");
    sc::Json doc{{"kind", "counterexample"}, {"epsilon", epsilon}};
    doc["p"] = p == 0 ? sc::Json("inf") : sc::Json(p);
    const auto r = sc::run(sc::Scenario::from_json(doc));
    *out = copy_string(r.report["results"].dump(2) + "\n");
  });
}

ringlab_status ringlab_harmonic_threshold(const char* threshold, uint64_t* n) {
  if (!threshold) return null_argument("threshold");
  if (!n) return null_argument("n");
  return guarded([&] { *n = ringlab::first_harmonic_exceeding(ringlab::parse_rational(threshold)); });
}

}  // extern "C"
