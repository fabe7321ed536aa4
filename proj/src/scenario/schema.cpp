#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ringlab/error.hpp"
#include "ringlab/nonarch/padic.hpp"
#include "ringlab/rational.hpp"
#include "ringlab/scenario/scenario.hpp"

namespace ringlab::scenario {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Falsified: return "falsified";
    case Outcome::Undecided: return "undecided";
  }
  return "undecided";
}

Outcome parse_outcome(const std::string& s) {
  if (s == "pass" || s == "converged") return Outcome::Pass;
  if (s == "falsified" || s == "diverged") return Outcome::Falsified;
  if (s == "undecided") return Outcome::Undecided;
  fail(ErrorKind::Schema, "unknown outcome '" + s + "'");
}

int outcome_exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Falsified: return 2;
    case Outcome::Undecided: return 3;
  }
  return 3;
}

int exit_code_for(Outcome o, const std::optional<Outcome>& expect) {
  if (!expect) return outcome_exit_code(o);
  if (o == *expect) return 0;
  return o == Outcome::Pass ? 4 : outcome_exit_code(o);
}

std::string format_issues(const std::vector<Issue>& issues) {
  std::ostringstream os;
  for (std::size_t k = 0; k < issues.size(); ++k)
    os << (k ? "; " : "") << (issues[k].path.empty() ? "/" : issues[k].path) << ": " << issues[k].message;
  return os.str();
}

namespace {

enum class Type {
  Text,
  Choice,
  Outcome,
  Rational,        // "a/b" string or integer
  PositiveRational,
  UnitRational,    // in (0, 1]
  Number,          // JSON number
  PositiveNumber,
  UInt,
  PositiveUInt,
  Prime,
  Lp,              // 1, 2, "inf"
  NumberArray,
  RationalArray,
  PositiveUIntArray,
};

struct Field {
  std::string name;
  Type type;
  bool required = false;
  Json fallback = nullptr;  // null: no default
  std::vector<std::string> choices = {};
  std::uint64_t max = 0;    // 0: unbounded (UInt types)
};

const std::vector<std::string> kKinds{"probe", "padic", "counterexample", "linf", "lcprobe", "rearrange"};
const std::vector<std::string> kOperations{"unconditional", "grouped_sum", "absolute_report", "dr_witness",
                                           "series_a_tail"};

const std::vector<Field>& common_fields() {
  static const std::vector<Field> f{
      {"kind", Type::Choice, true, nullptr, kKinds},
      {"name", Type::Text},
      {"description", Type::Text},
      {"expect", Type::Outcome},
      {"seed", Type::UInt, false, 1},
  };
  return f;
}

// Keyed by kind, or "probe/<operation>".
const std::map<std::string, std::vector<Field>>& kind_fields() {
  static const std::map<std::string, std::vector<Field>> table{
      {"counterexample",
       {
           {"epsilon", Type::UnitRational, true},
           {"p", Type::Lp, true},
           {"word_order", Type::Choice, false, "f-then-a", {"f-then-a", "a-then-f"}},
           {"budget", Type::PositiveUInt, false, 64, {}, 512},
       }},
      {"padic",
       {
           {"p", Type::Prime, true},
           {"precision", Type::PositiveUInt, false, 20, {}, 4096},
           {"k", Type::UInt, true},
           {"n", Type::PositiveUInt, false, 100, {}, 1000000},
           {"seeds", Type::PositiveUInt, false, 10, {}, 1000000},
       }},
      {"linf",
       {
           {"epsilon", Type::PositiveRational, false, "1/2"},
           {"instances", Type::PositiveUInt, false, 500, {}, 1000000},
           {"ground", Type::PositiveUInt, false, 16, {}, 4096},
           {"n", Type::PositiveUInt, false, 24, {}, 100000},
       }},
      {"lcprobe",
       {
           {"epsilon", Type::PositiveRational, false, "1/2"},
           {"norms", Type::RationalArray, false, Json::array({"1/2", "1/4", "1/8", "1/8"})},
           {"instances", Type::PositiveUInt, false, 200, {}, 1000000},
           {"n", Type::PositiveUInt, false, 24, {}, 100000},
           {"doubling_cases", Type::UInt, false, 10000, {}, 100000000},
       }},
      {"rearrange",
       {
           {"series", Type::Choice, false, "alternating_harmonic", {"alternating_harmonic"}},
           {"targets", Type::NumberArray, false, Json::array({0, 1, -2})},
           {"budget", Type::PositiveUInt, false, 10000000, {}, 1000000000},
           {"tol", Type::PositiveNumber, false, 1e-6},
           {"trace_points", Type::PositiveUInt, false, 2000, {}, 10000000},
       }},
      {"probe/unconditional",
       {
           {"operation", Type::Choice, true, nullptr, kOperations},
           {"series", Type::Choice, false, "geometric", {"alternating_harmonic", "geometric", "inverse_square"}},
           {"n", Type::PositiveUInt, false, 20000, {}, 100000000},
           {"tol", Type::PositiveNumber, false, 0.1},
           {"plans", Type::UInt, false, 6, {}, 1024},
           {"rearrange_target", Type::Number},
       }},
      {"probe/grouped_sum",
       {
           {"operation", Type::Choice, true, nullptr, kOperations},
           {"ring", Type::Choice, false, "rational", {"rational", "padic"}},
           {"instances", Type::PositiveUInt, false, 50, {}, 1000000},
           {"n", Type::PositiveUInt, false, 1000, {}, 10000000},
           {"tags", Type::PositiveUInt, false, 8, {}, 1024},
           {"prime", Type::Prime, false, 5},
           {"precision", Type::PositiveUInt, false, 20, {}, 4096},
       }},
      {"probe/absolute_report",
       {
           {"operation", Type::Choice, true, nullptr, kOperations},
           {"n", Type::PositiveUInt, false, 12367, {}, 10000000},
           {"tol", Type::PositiveNumber, false, 1e-2},
       }},
      {"probe/dr_witness",
       {
           {"operation", Type::Choice, true, nullptr, kOperations},
           {"threshold", Type::PositiveRational, false, "10"},
       }},
      {"probe/series_a_tail",
       {
           {"operation", Type::Choice, true, nullptr, kOperations},
           {"n", Type::PositiveUIntArray, false, Json::array({1, 10, 100, 10000})},
           {"plans", Type::UInt, false, 8, {}, 1024},
       }},
  };
  return table;
}

bool parse_rational_value(const Json& v, Rational& out) {
  try {
    if (v.is_string()) {
      out = parse_rational(v.get<std::string>());
      return true;
    }
    if (v.is_number_integer()) {
      out = Rational(BigInt(v.dump()));
      return true;
    }
  } catch (const std::exception&) {
  }
  return false;
}

void check_value(const Field& f, const Json& v, const std::string& path, std::vector<Issue>& out) {
  auto bad = [&](const std::string& msg) { out.push_back({path, msg}); };
  auto check_uint = [&](const Json& x, const std::string& at, bool positive) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
      out.push_back({at, "expected a non-negative integer"});
      return false;
    }
    const auto u = x.get<std::uint64_t>();
    if (positive && u == 0) {
      out.push_back({at, "must be positive"});
      return false;
    }
    if (f.max && u > f.max) {
      out.push_back({at, "must be at most " + std::to_string(f.max)});
      return false;
    }
    return true;
  };
  switch (f.type) {
    case Type::Text:
      if (!v.is_string()) bad("expected a string");
      break;
    case Type::Choice:
      if (!v.is_string()) {
        bad("expected a string");
      } else if (std::find(f.choices.begin(), f.choices.end(), v.get<std::string>()) == f.choices.end()) {
        std::string all;
        for (const auto& c : f.choices) all += (all.empty() ? "" : ", ") + c;
        bad("unknown value '" + v.get<std::string>() + "' (expected one of: " + all + ")");
      }
      break;
    case Type::Outcome:
      if (!v.is_string()) {
        bad("expected a string");
      } else {
        const auto s = v.get<std::string>();
        if (s != "pass" && s != "falsified" && s != "undecided" && s != "converged" && s != "diverged")
          bad("unknown outcome '" + s + "' (expected pass, falsified, undecided, converged or diverged)");
      }
      break;
    case Type::Rational:
    case Type::PositiveRational:
    case Type::UnitRational: {
      Rational q;
      if (!parse_rational_value(v, q))
        bad("expected a rational as \"a/b\" or an integer");
      else if (f.type != Type::Rational && q <= 0)
        bad("must be positive");
      else if (f.type == Type::UnitRational && q > 1)
        bad("must be at most 1");
      break;
    }
    case Type::Number:
    case Type::PositiveNumber:
      if (!v.is_number())
        bad("expected a number");
      else if (f.type == Type::PositiveNumber && !(v.get<double>() > 0))
        bad("must be positive");
      break;
    case Type::UInt: check_uint(v, path, false); break;
    case Type::PositiveUInt: check_uint(v, path, true); break;
    case Type::Prime:
      if (check_uint(v, path, true)) {
        const auto u = v.get<std::uint64_t>();
        if (u > 0xffffffffULL || !nonarch::is_prime(u)) bad(std::to_string(u) + " is not a (32-bit) prime");
      }
      break;
    case Type::Lp:
      if (v.is_number_integer()) {
        const auto k = v.get<std::int64_t>();
        if (k != 1 && k != 2) bad("p must be 1, 2 or \"inf\"");
      } else if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s != "1" && s != "2" && s != "inf" && s != "infinity") bad("p must be 1, 2 or \"inf\"");
      } else {
        bad("p must be 1, 2 or \"inf\"");
      }
      break;
    case Type::NumberArray:
    case Type::RationalArray:
    case Type::PositiveUIntArray:
      if (!v.is_array() || v.empty()) {
        bad("expected a non-empty array");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string at = path + "/" + std::to_string(k);
        if (f.type == Type::NumberArray && !v[k].is_number()) out.push_back({at, "expected a number"});
        if (f.type == Type::RationalArray) {
          Rational q;
          if (!parse_rational_value(v[k], q))
            out.push_back({at, "expected a rational as \"a/b\" or an integer"});
          else if (q < 0)
            out.push_back({at, "must be non-negative"});
        }
        if (f.type == Type::PositiveUIntArray) check_uint(v[k], at, true);
      }
      break;
  }
}

std::string pointer(const std::string& key) {
  std::string s = "/";
  for (char c : key) {
    if (c == '~')
      s += "~0";
    else if (c == '/')
      s += "~1";
    else
      s += c;
  }
  return s;
}

// Field list for a document whose kind (and operation) are valid, else null.
const std::vector<Field>* fields_for(const Json& doc, std::vector<Issue>& issues) {
  if (!doc.contains("kind")) {
    issues.push_back({"/kind", "missing required field"});
    return nullptr;
  }
  const Json& k = doc["kind"];
  if (!k.is_string()) {
    issues.push_back({"/kind", "expected a string"});
    return nullptr;
  }
  std::string key = k.get<std::string>();
  if (std::find(kKinds.begin(), kKinds.end(), key) == kKinds.end()) {
    issues.push_back({"/kind", "unknown kind '" + key + "'"});
    return nullptr;
  }
  if (key == "probe") {
    if (!doc.contains("operation")) {
      issues.push_back({"/operation", "missing required field"});
      return nullptr;
    }
    const Json& op = doc["operation"];
    if (!op.is_string() ||
        std::find(kOperations.begin(), kOperations.end(), op.get<std::string>()) == kOperations.end()) {
      check_value({"operation", Type::Choice, true, nullptr, kOperations}, op, "/operation", issues);
      return nullptr;
    }
    key += "/" + op.get<std::string>();
  }
  return &kind_fields().at(key);
}

}  // namespace

std::vector<Issue> validate(const Json& doc) {
  std::vector<Issue> issues;
  if (!doc.is_object()) {
    issues.push_back({"", "scenario must be a JSON object"});
    return issues;
  }
  const auto* specific = fields_for(doc, issues);
  if (!specific) return issues;
  std::map<std::string, const Field*> known;
  for (const auto& f : common_fields()) known[f.name] = &f;
  for (const auto& f : *specific) known[f.name] = &f;
  for (const auto& [key, value] : doc.items()) {
    auto it = known.find(key);
    if (it == known.end()) {
      issues.push_back({pointer(key), "unknown field"});
      continue;
    }
    check_value(*it->second, value, pointer(key), issues);
  }
  for (const auto& [name, f] : known)
    if (f->required && !doc.contains(name)) issues.push_back({pointer(name), "missing required field"});
  return issues;
}

Scenario Scenario::from_json(const Json& doc) {
  const auto issues = validate(doc);
  if (!issues.empty()) fail(ErrorKind::Schema, "invalid scenario: " + format_issues(issues));
  std::vector<Issue> ignored;
  const auto* specific = fields_for(doc, ignored);

  Scenario s;
  s.doc_ = Json::object();
  for (const auto* list : {&common_fields(), specific})
    for (const auto& f : *list) {
      if (doc.contains(f.name))
        s.doc_[f.name] = doc[f.name];
      else if (!f.fallback.is_null())
        s.doc_[f.name] = f.fallback;
    }
  // normalize p for l_p scenarios
  if (s.kind() == "counterexample") {
    const Json& p = s.doc_["p"];
    std::string text = p.is_string() ? p.get<std::string>() : std::to_string(p.get<int>());
    s.doc_["p"] = text == "infinity" ? "inf" : text;
  }
  return s;
}

Scenario Scenario::parse(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Schema, std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

Scenario Scenario::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open scenario file '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const std::string& Scenario::kind() const { return doc_.at("kind").get_ref<const std::string&>(); }

std::uint64_t Scenario::seed() const { return doc_.at("seed").get<std::uint64_t>(); }

void Scenario::set_seed(std::uint64_t seed) { doc_["seed"] = seed; }

std::optional<Outcome> Scenario::expect() const {
  if (!doc_.contains("expect")) return std::nullopt;
  return parse_outcome(doc_["expect"].get<std::string>());
}

std::string Scenario::name() const {
  if (doc_.contains("name")) return doc_["name"].get<std::string>();
  std::string n = kind();
  if (doc_.contains("operation")) n += "_" + doc_["operation"].get<std::string>();
  return n;
}

}  // namespace ringlab::scenario
