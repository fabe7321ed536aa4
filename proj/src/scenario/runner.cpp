#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include "ringlab/error.hpp"
#include "ringlab/lcprobe/lcprobe.hpp"
#include "ringlab/nonarch/batch.hpp"
#include "ringlab/oplab/counterexample.hpp"
#include "ringlab/oplab/sup_ring.hpp"
#include "ringlab/rational.hpp"
#include "ringlab/scenario/scenario.hpp"
#include "ringlab/series/series.hpp"

namespace ringlab::scenario {

namespace {

using series::LpExponent;

Json frac(const Rational& q) { return to_fraction_string(q); }

// A floating-point claim with its tolerance.
Json approx(double value, double tol) { return Json{{"value", value}, {"tol", tol}}; }

Rational rational_param(const Json& doc, const char* key) {
  const Json& v = doc.at(key);
  return v.is_string() ? parse_rational(v.get<std::string>()) : Rational(BigInt(v.dump()));
}

std::uint64_t uint_param(const Json& doc, const char* key) { return doc.at(key).get<std::uint64_t>(); }

// Independent stream of seeds for the parts of one scenario.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t part) {
  series::SeededRng rng(seed ^ (0x9e3779b97f4a7c15ULL * (part + 1)));
  return rng.next();
}

struct Body {
  Json results = Json::object();
  Outcome outcome = Outcome::Undecided;
  std::vector<TraceFile> traces;
};

Outcome all_or_falsified(bool ok) { return ok ? Outcome::Pass : Outcome::Falsified; }

Json norm_json(const oplab::NormMeasure& m) {
  Json j = Json::object();
  j[m.squared() ? "squared" : "exact"] = frac(m.value);
  return j;
}

// --- counterexample ---------------------------------------------------------

Body run_counterexample(const Json& doc) {
  const Rational eps = rational_param(doc, "epsilon");
  const LpExponent p = series::parse_lp_exponent(doc["p"].get<std::string>());
  const auto order = oplab::parse_word_order(doc["word_order"].get<std::string>());
  const auto r = oplab::build_counterexample(eps, p, order, uint_param(doc, "budget"));

  Body b;
  auto& j = b.results;
  j["epsilon"] = frac(eps);
  j["p"] = series::to_string(p);
  j["word_order"] = oplab::to_string(order);
  j["N"] = r.N;
  j["H_N"] = frac(r.harmonic_N);
  j["window"] = r.window;
  j["max_multiplier_norm"] = frac(r.max_multiplier_norm);
  j["multipliers_in_ball"] = r.multipliers_in_ball;
  j["distinct_multipliers"] = r.distinct_multipliers;
  j[r.output_norm.squared() ? "output_norm_squared" : "output_norm"] = frac(r.output_norm.value);
  j["exceeds_one"] = r.exceeds_one;
  if (p != LpExponent::One) {
    j["verbatim_gap"] = r.verbatim_gap;
    const auto& w = *r.witness;
    Json wj;
    wj["found"] = w.found;
    wj["budget"] = w.budget;
    wj["candidates"] = w.candidates;
    wj["word_order"] = oplab::to_string(w.order);
    wj["pattern"] = oplab::to_string(w.pattern);
    wj["vector_family"] = w.vector_family;
    wj["N"] = w.N;
    wj["test_vector_norm"] = norm_json(w.test_norm);
    wj["output_norm"] = norm_json(w.output_norm);
    wj["output_norm_approx"] = approx(w.output_norm.approx(), 1e-12);
    wj["max_multiplier_norm"] = frac(w.max_multiplier_norm);
    if (w.l2_supremum_bound_squared) wj["l2_supremum_bound_squared"] = frac(*w.l2_supremum_bound_squared);
    j["witness"] = wj;
  }
  b.outcome = r.falsified() ? Outcome::Falsified : Outcome::Undecided;
  return b;
}

// --- padic -----------------------------------------------------------------

Body run_padic(const Json& doc, std::uint64_t seed) {
  const auto p = static_cast<std::uint32_t>(uint_param(doc, "p"));
  const auto m = static_cast<std::uint32_t>(uint_param(doc, "precision"));
  const auto k = static_cast<std::uint32_t>(uint_param(doc, "k"));
  require(k <= m, ErrorKind::Precondition, "ideal level k exceeds the precision");
  const auto n = uint_param(doc, "n");
  const auto s = nonarch::dch_batch_padic(p, m, k, n, uint_param(doc, "seeds"), derive_seed(seed, 0));
  Body b;
  auto& j = b.results;
  j["p"] = p;
  j["precision"] = m;
  j["k"] = k;
  j["n"] = n;
  j["instances"] = s.instances;
  j["contained"] = s.contained;
  j["first_failure"] = s.first_failure ? Json(*s.first_failure) : Json(nullptr);
  j["worst_cauchy_index_by_level"] = s.worst_cauchy_level;
  b.outcome = all_or_falsified(s.contained == s.instances);
  return b;
}

// --- linf ------------------------------------------------------------------

Body run_linf(const Json& doc, std::uint64_t seed) {
  const Rational eps = rational_param(doc, "epsilon");
  const auto s = oplab::sup_ring_batch(uint_param(doc, "instances"), derive_seed(seed, 0), uint_param(doc, "ground"),
                                       uint_param(doc, "n"), eps);
  Body b;
  auto& j = b.results;
  j["epsilon"] = frac(eps);
  j["instances"] = s.instances;
  j["contained"] = s.contained;
  j["first_failure"] = s.first_failure ? Json(*s.first_failure) : Json(nullptr);
  j["worst_partial_over_epsilon"] = frac(s.worst_ratio);
  b.outcome = all_or_falsified(s.contained == s.instances);
  return b;
}

// --- lcprobe ---------------------------------------------------------------

Body run_lcprobe(const Json& doc, std::uint64_t seed) {
  const Rational eps = rational_param(doc, "epsilon");
  std::vector<Rational> norms;
  for (const auto& v : doc["norms"]) norms.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                                                   : Rational(BigInt(v.dump())));
  const Rational M = lcprobe::compute_M(norms, eps);
  const Rational delta = lcprobe::pick_delta(eps, M);
  const auto chain = lcprobe::lc_batch(uint_param(doc, "instances"), derive_seed(seed, 0), uint_param(doc, "n"),
                                       eps.get_d());

  const auto cases = uint_param(doc, "doubling_cases");
  series::SeededRng rng(derive_seed(seed, 1));
  std::uint64_t checked = 0, held = 0, skipped = 0;
  while (checked < cases) {
    const auto den = static_cast<std::int64_t>(1 + rng.below(720));
    const lcprobe::ExactTorusPoint g(fraction(rng.between(-den, den), den));
    if (auto r = lcprobe::doubling_check(g)) {
      ++checked;
      held += *r;
    } else {
      ++skipped;
    }
  }

  Body b;
  auto& j = b.results;
  j["epsilon"] = frac(eps);
  Json nj = Json::array();
  for (const auto& q : norms) nj.push_back(frac(q));
  j["norms"] = nj;
  j["M"] = frac(M);
  j["delta"] = frac(delta);
  j["chain"] = {{"instances", chain.instances},
                {"passed", chain.passed},
                {"first_failure", chain.first_failure ? Json(*chain.first_failure) : Json(nullptr)},
                {"nonzero_torus_factors", chain.nonzero_torus_factors},
                {"min_slack", approx(chain.min_slack, 1e-12)}};
  j["doubling"] = {{"checked", checked}, {"held", held}, {"skipped_out_of_domain", skipped}};
  b.outcome = all_or_falsified(chain.passed == chain.instances && held == checked);
  return b;
}

// --- rearrange -------------------------------------------------------------

series::TermStream<double> alternating_harmonic() {
  return series::TermStream<double>([](std::size_t i) { return (i % 2 ? 1.0 : -1.0) / static_cast<double>(i); },
                                    series::SeriesClass::ConditionallyConvergent, "alternating harmonic");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Body run_rearrange(const Json& doc) {
  const auto s = alternating_harmonic();
  const double tol = doc["tol"].get<double>();
  const auto budget = uint_param(doc, "budget");
  const auto points = uint_param(doc, "trace_points");
  Body b;
  bool ok = true;
  Json runs = Json::array();
  std::size_t idx = 0;
  for (const auto& t : doc["targets"]) {
    const double target = t.get<double>();
    const auto r = series::riemann_rearrange(s, target, budget, tol);
    const bool band = series::band_property_holds(s, r, target);
    ok = ok && r.reached && band;

    const std::string file = "rearrange_" + std::to_string(idx++) + ".csv";
    std::ostringstream csv;
    csv << "step,index,partial_sum\n";
    const std::size_t len = r.trace.size();
    const std::size_t stride = std::max<std::size_t>(1, (len + points - 1) / points);
    for (std::size_t k = 0; k < len; ++k)
      if (k % stride == 0 || k + 1 == len) csv << k + 1 << ',' << r.prefix[k] << ',' << format_double(r.trace[k]) << '\n';
    b.traces.push_back({file, csv.str()});

    runs.push_back({{"target", approx(target, 0)},
                    {"reached", r.reached},
                    {"steps", r.prefix.size()},
                    {"scanned", r.scanned},
                    {"first_crossing", r.first_crossing},
                    {"final_sum", approx(r.final_sum, tol)},
                    {"final_gap", approx(std::fabs(r.final_sum - target), 1e-12)},
                    {"band_property", band},
                    {"band_violations", r.band_violations},
                    {"trace", file},
                    {"trace_stride", stride}});
  }
  b.results["series"] = doc["series"];
  b.results["runs"] = runs;
  b.outcome = all_or_falsified(ok);
  return b;
}

// --- probe -----------------------------------------------------------------

Outcome from_status(series::Status s) {
  switch (s) {
    case series::Status::Converged: return Outcome::Pass;
    case series::Status::Diverged: return Outcome::Falsified;
    case series::Status::Undecided: return Outcome::Undecided;
  }
  return Outcome::Undecided;
}

Body run_unconditional(const Json& doc, std::uint64_t seed) {
  const std::string name = doc["series"].get<std::string>();
  series::TermStream<double> s;
  if (name == "alternating_harmonic")
    s = alternating_harmonic();
  else if (name == "geometric")
    s = series::TermStream<double>([](std::size_t i) { return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(i, 1100))); },
                                   series::SeriesClass::AbsolutelyConvergent, "geometric 2^-i");
  else
    s = series::TermStream<double>([](std::size_t i) { return 1.0 / (static_cast<double>(i) * static_cast<double>(i)); },
                                   series::SeriesClass::AbsolutelyConvergent, "inverse squares");

  const auto n = uint_param(doc, "n");
  const double tol = doc["tol"].get<double>();
  std::vector<series::PermutationPlan> plans{series::PermutationPlan::identity(),
                                             series::PermutationPlan::block_swap(1)};
  for (auto& p : series::default_plans(uint_param(doc, "plans"), derive_seed(seed, 0))) plans.push_back(p);
  std::optional<std::size_t> rearranged_steps;
  if (doc.contains("rearrange_target")) {
    const auto r = series::greedy_rearrangement(s, doc["rearrange_target"].get<double>(), n);
    rearranged_steps = r.prefix.size();
    plans.push_back(r.plan());
  }

  series::ProbeOptions<double> opts;
  opts.tol = tol;
  opts.record_norms = true;
  const auto res = series::unconditional_probe(series::RealGroup{}, s, std::span<const series::PermutationPlan>(plans), n, opts);

  Body b;
  auto& j = b.results;
  const auto& v = res.verdict;
  j["series"] = name;
  j["n"] = n;
  j["tol"] = tol;
  j["status"] = series::to_string(v.status);
  j["note"] = v.note;
  if (v.limit) j["limit"] = approx(*v.limit, v.tail_bound);
  if (v.witness)
    j["witness"] = {{"description", v.witness->description},
                    {"plan_a", v.witness->plan_a},
                    {"plan_b", v.witness->plan_b},
                    {"separation", approx(v.witness->separation, 1e-9)}};
  if (rearranged_steps) j["rearranged_prefix_length"] = *rearranged_steps;
  Json pj = Json::array();
  for (const auto& p : res.plans)
    pj.push_back({{"plan", p.plan},
                  {"cauchy_ok", p.cauchy_ok},
                  {"tail_diameter", approx(p.diameter, 1e-12)},
                  {"final_norm", approx(p.final_norm, 1e-12)}});
  j["plans"] = pj;

  std::ostringstream csv;
  std::vector<std::vector<double>> others(res.norm_traces.begin() + 1, res.norm_traces.end());
  series::write_trace_csv(csv, res.norm_traces.front(), others);
  b.traces.push_back({"unconditional.csv", csv.str()});
  j["trace"] = "unconditional.csv";
  b.outcome = from_status(v.status);
  return b;
}

template <class G, class MakeTerm, class MakeTag>
std::pair<std::size_t, std::size_t> grouped_instances(const G& g, std::size_t instances, std::size_t max_n,
                                                      std::size_t max_tags, std::uint64_t seed, MakeTerm make_term,
                                                      MakeTag make_tag) {
  using V = typename G::value_type;
  series::SeededRng seeds(seed);
  std::size_t equal = 0, largest = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    series::SeededRng rng(seeds.next());
    const std::size_t n = 1 + rng.below(max_n);
    largest = std::max(largest, n);
    const std::size_t F = 1 + rng.below(max_tags);
    std::vector<series::Endomorphism<V>> tags;
    for (std::size_t t = 0; t < F; ++t) tags.push_back(make_tag(rng));
    auto terms = std::make_shared<std::vector<V>>();
    std::vector<std::size_t> labels;
    for (std::size_t i = 1; i <= n; ++i) {
      terms->push_back(make_term(rng, i));
      labels.push_back(rng.below(F));
    }
    series::TermStream<V> s([terms](std::size_t i) { return (*terms)[i - 1]; });
    const auto r = series::grouped_sum(g, s, std::span<const series::Endomorphism<V>>(tags),
                                       std::span<const std::size_t>(labels), n);
    equal += r.equal;
  }
  return {equal, largest};
}

Body run_grouped(const Json& doc, std::uint64_t seed) {
  const std::string ring = doc["ring"].get<std::string>();
  const auto instances = uint_param(doc, "instances");
  const auto n = uint_param(doc, "n");
  const auto tags = uint_param(doc, "tags");
  std::pair<std::size_t, std::size_t> r;
  if (ring == "rational") {
    r = grouped_instances(
        series::RationalGroup{}, instances, n, tags, derive_seed(seed, 0),
        [](series::SeededRng& rng, std::size_t) {
          return fraction(rng.between(-99, 99), static_cast<std::int64_t>(1 + rng.below(12)));
        },
        [](series::SeededRng& rng) {
          const Rational c = fraction(rng.between(-20, 20), static_cast<std::int64_t>(1 + rng.below(9)));
          return series::Endomorphism<Rational>{"x*" + to_fraction_string(c),
                                                [c](const Rational& x) { return Rational(c * x); }};
        });
  } else {
    const auto p = static_cast<std::uint32_t>(uint_param(doc, "prime"));
    const auto m = static_cast<std::uint32_t>(uint_param(doc, "precision"));
    const BigInt modulus = nonarch::PadicRing::get(p, m)->modulus();
    r = grouped_instances(
        nonarch::PadicGroup{p, m}, instances, n, tags, derive_seed(seed, 0),
        [p, m, modulus](series::SeededRng& rng, std::size_t i) {
          return nonarch::PadicInt(p, m, nonarch::random_below(rng, modulus)) *
                 nonarch::PadicInt::prime_power(p, m, static_cast<std::uint32_t>(std::min<std::size_t>(i, m)));
        },
        [p, m, modulus](series::SeededRng& rng) {
          const nonarch::PadicInt c(p, m, nonarch::random_below(rng, modulus));
          return series::Endomorphism<nonarch::PadicInt>{"x*" + c.to_string(),
                                                         [c](const nonarch::PadicInt& x) { return c * x; }};
        });
  }
  Body b;
  b.results["ring"] = ring;
  b.results["instances"] = instances;
  b.results["equal"] = r.first;
  b.results["largest_n"] = r.second;
  b.outcome = all_or_falsified(r.first == instances);
  return b;
}

Body run_absolute_report(const Json& doc) {
  const auto n = uint_param(doc, "n");
  const double tol = doc["tol"].get<double>();
  series::SparseRealVecGroup g{LpExponent::Two};
  series::TermStream<series::SparseRealVecGroup::value_type> s(
      [](std::size_t i) { return series::SparseRealVecGroup::value_type{{i, 1.0 / static_cast<double>(i)}}; },
      series::SeriesClass::UnconditionallyConvergent, "e_i / i in l_2");
  series::ProbeOptions<double> opts;
  opts.tol = tol;
  const auto r = series::absolute_vs_unconditional_report(g, s, n, opts);
  Body b;
  auto& j = b.results;
  j["n"] = n;
  j["tol"] = tol;
  j["absolute_partial"] = approx(r.absolute_partial, 1e-9);
  j["absolute_half_gap"] = approx(r.absolute_half_gap, 1e-9);
  j["absolute_settled"] = r.absolute_settled;
  j["status"] = series::to_string(r.verdict.status);
  j["tail_bound"] = approx(r.verdict.tail_bound, 1e-12);
  j["combination"] = series::to_string(r.combination);
  b.outcome = from_status(r.verdict.status);
  return b;
}

Body run_dr_witness(const Json& doc) {
  const Rational threshold = rational_param(doc, "threshold");
  const auto n = first_harmonic_exceeding(threshold);
  const auto w = oplab::dr_witness(n);
  Body b;
  auto& j = b.results;
  j["threshold"] = frac(threshold);
  j["n"] = n;
  j["H_n"] = approx(w.absolute_partial.get_d(), 1e-12);
  j["H_n_exceeds_threshold"] = w.absolute_partial > threshold;
  j["H_n_minus_1_at_most_threshold"] = harmonic(n - 1) <= threshold;
  j["l2_tail_bound_squared"] = frac(w.l2_tail_bound_squared);
  const bool ok = w.absolute_partial > threshold && harmonic(n - 1) <= threshold &&
                  w.l2_tail_bound_squared <= Rational(1, n);
  b.outcome = all_or_falsified(ok);
  return b;
}

Body run_series_a_tail(const Json& doc, std::uint64_t seed) {
  const auto count = uint_param(doc, "plans");
  Body b;
  bool ok = true;
  Json runs = Json::array();
  for (const auto& nv : doc["n"]) {
    const auto n = nv.get<std::size_t>();
    std::vector<series::PermutationPlan> plans{series::PermutationPlan::identity()};
    for (std::uint64_t k = 0; k < count; ++k)
      plans.push_back(series::PermutationPlan::seeded_random(derive_seed(seed, k), n));
    const auto d = oplab::series_a_unconditional_check(n, plans);
    Json pj = Json::array();
    bool all = true;
    for (const auto& t : d) {
      all = all && t.distance == Rational(1, n + 1) && t.verified_on_unit_vector;
      pj.push_back({{"plan", t.plan},
                    {"distance", frac(t.distance)},
                    {"least_excluded", t.least_excluded},
                    {"initial_segment", t.initial_segment}});
    }
    ok = ok && all;
    runs.push_back({{"n", n}, {"expected", frac(Rational(1, n + 1))}, {"all_equal", all}, {"plans", pj}});
  }
  b.results["runs"] = runs;
  b.outcome = all_or_falsified(ok);
  return b;
}

Body dispatch(const Scenario& s) {
  const Json& doc = s.doc();
  const std::string& kind = s.kind();
  if (kind == "counterexample") return run_counterexample(doc);
  if (kind == "padic") return run_padic(doc, s.seed());
  if (kind == "linf") return run_linf(doc, s.seed());
  if (kind == "lcprobe") return run_lcprobe(doc, s.seed());
  if (kind == "rearrange") return run_rearrange(doc);
  if (kind == "probe") {
    const auto op = doc["operation"].get<std::string>();
    if (op == "unconditional") return run_unconditional(doc, s.seed());
    if (op == "grouped_sum") return run_grouped(doc, s.seed());
    if (op == "absolute_report") return run_absolute_report(doc);
    if (op == "dr_witness") return run_dr_witness(doc);
    if (op == "series_a_tail") return run_series_a_tail(doc, s.seed());
  }
  fail(ErrorKind::Schema, "unknown kind '" + kind + "'");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunResult run(const Scenario& s) {
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  Body body = dispatch(s);
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  RunResult r;
  r.outcome = body.outcome;
  r.exit_code = exit_code_for(body.outcome, s.expect());
  r.traces = std::move(body.traces);
  Json& j = r.report;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name();
  j["kind"] = s.kind();
  j["scenario"] = s.doc();
  j["outcome"] = to_string(r.outcome);
  j["expect"] = s.expect() ? Json(to_string(*s.expect())) : Json(nullptr);
  j["exit_code"] = r.exit_code;
  j["results"] = std::move(body.results);
  Json files = Json::array();
  for (const auto& t : r.traces) files.push_back(t.name);
  j["traces"] = files;
  j["timestamp"] = {{"started_utc", started}, {"wall_clock_ms", approx(ms, 1.0)}};
  return r;
}

void write_outputs(const RunResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::Io, "cannot write '" + (dir / name).string() + "'");
    out << content;
    require(static_cast<bool>(out), ErrorKind::Io, "short write to '" + (dir / name).string() + "'");
  };
  for (const auto& t : r.traces) write(t.name, t.content);
  write("report.json", dump(r.report));
}

std::string dump(const Json& report) { return report.dump(2) + "\n"; }

namespace {

// Non-integer numbers appear only as the value of a {value, tol} pair or as a tol.
void check_numbers(const Json& v, const std::string& path, std::vector<Issue>& out) {
  if (v.is_number_float()) {
    out.push_back({path, "inexact number without a tolerance"});
  } else if (v.is_object()) {
    if (v.size() == 2 && v.contains("value") && v.contains("tol")) {
      if (!v["value"].is_number() || !v["tol"].is_number() || !(v["tol"].get<double>() >= 0))
        out.push_back({path, "expected numeric value and non-negative tol"});
      return;
    }
    for (const auto& [key, item] : v.items())
      if (!(key == "tol" && item.is_number())) check_numbers(item, path + "/" + key, out);
  } else if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) check_numbers(v[k], path + "/" + std::to_string(k), out);
  }
}

}  // namespace

std::vector<Issue> validate_report(const Json& report) {
  std::vector<Issue> issues;
  if (!report.is_object()) return {{"", "report must be a JSON object"}};
  auto need = [&](const char* key, auto pred, const char* what) {
    if (!report.contains(key))
      issues.push_back({std::string("/") + key, "missing"});
    else if (!pred(report[key]))
      issues.push_back({std::string("/") + key, what});
  };
  need("schema_version", [](const Json& v) { return v.is_string() && v.get<std::string>() == kSchemaVersion; },
       "expected \"1\"");
  need("name", [](const Json& v) { return v.is_string(); }, "expected a string");
  need("kind", [](const Json& v) { return v.is_string(); }, "expected a string");
  need("scenario", [](const Json& v) { return v.is_object() && validate(v).empty(); }, "invalid scenario echo");
  need("outcome", [](const Json& v) {
    return v.is_string() && (v == "pass" || v == "falsified" || v == "undecided");
  }, "expected pass, falsified or undecided");
  need("expect", [](const Json& v) { return v.is_null() || v.is_string(); }, "expected a string or null");
  need("exit_code", [](const Json& v) { return v.is_number_integer(); }, "expected an integer");
  need("results", [](const Json& v) { return v.is_object(); }, "expected an object");
  need("traces", [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& t : v)
      if (!t.is_string()) return false;
    return true;
  }, "expected an array of file names");
  need("timestamp", [](const Json& v) {
    return v.is_object() && v.contains("started_utc") && v.contains("wall_clock_ms");
  }, "expected started_utc and wall_clock_ms");
  for (const char* key : {"results", "timestamp"})
    if (report.contains(key)) check_numbers(report[key], std::string("/") + key, issues);
  if (issues.empty() && report["scenario"]["kind"] != report["kind"])
    issues.push_back({"/kind", "differs from the scenario echo"});
  return issues;
}

}  // namespace ringlab::scenario
