#include "ringlab/scenario/scenario.hpp"

namespace ringlab::scenario {

namespace {

CatalogEntry entry(const char* name, const char* description, const char* body) {
  Json doc = Json::parse(body);
  doc["name"] = name;
  doc["description"] = description;
  return {name, description, std::move(doc)};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      entry("prop1", "l_1 operator ring is not dch: eps = 1/2 gives N = 4 and output norm 25/24",
            R"({"kind": "counterexample", "epsilon": "1/2", "p": 1, "expect": "falsified"})"),
      entry("prop1_linf", "l_inf operator ring: witness search at eps = 1/2",
            R"({"kind": "counterexample", "epsilon": "1/2", "p": "inf", "expect": "falsified"})"),
      entry("prop1_l2", "l_2 operator ring: witness search at eps = 1",
            R"({"kind": "counterexample", "epsilon": "1", "p": 2, "expect": "falsified"})"),
      entry("prop4", "open-ideal dch check in Z_3, ideal 9 Z_3, 10 seeded instances",
            R"({"kind": "padic", "p": 3, "precision": 20, "k": 2, "n": 100, "seeds": 10, "seed": 4})"),
      entry("prop5", "l_inf(X) bound with delta = eps / A on 500 seeded instances, |X| <= 16",
            R"({"kind": "linf", "epsilon": "1/2", "instances": 500, "ground": 16, "n": 24, "seed": 5})"),
      entry("lemma_conv", "grouped summation identity over Q and Z_5",
            R"({"kind": "probe", "operation": "grouped_sum", "ring": "padic", "prime": 5, "precision": 20,
                "instances": 50, "n": 2000, "tags": 8, "seed": 7})"),
      entry("lemma3", "seminorm chain on T^p x R^q: M = 3, delta = 1/12, 200 instances, doubling sweep",
            R"({"kind": "lcprobe", "epsilon": "1/2", "instances": 200, "n": 24, "doubling_cases": 10000, "seed": 3})"),
      entry("riemann", "alternating harmonic series rearranged to 0, 1 and -2",
            R"({"kind": "rearrange", "targets": [0, 1, -2], "budget": 10000000, "tol": 1e-6})"),
      entry("dr_witness", "first n with H_n > 10 is 12367; the l_2 tail of e_i / i is at most 1/n",
            R"({"kind": "probe", "operation": "dr_witness", "threshold": "10"})"),
      entry("series_a", "diag(1/i) partial sums: operator-norm distance 1/(n+1) under permutations",
            R"({"kind": "probe", "operation": "series_a_tail", "n": [1, 10, 100, 10000], "plans": 8, "seed": 6})"),
      entry("absolute_l2", "e_i / i in l_2: probes agree while the norm series keeps growing",
            R"({"kind": "probe", "operation": "absolute_report", "n": 12367, "tol": 0.01})"),
      entry("geometric_probe", "sum 2^-i is stable under every probe plan",
            R"({"kind": "probe", "operation": "unconditional", "series": "geometric", "n": 2000, "tol": 1e-9,
                "seed": 2})"),
      entry("alternating_probe", "a greedy rearrangement of the alternating harmonic series settles near 2",
            R"({"kind": "probe", "operation": "unconditional", "series": "alternating_harmonic", "n": 20000,
                "tol": 0.1, "plans": 0, "rearrange_target": 2, "expect": "diverged"})"),
  };
  return entries;
}

const CatalogEntry* find_in_catalog(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace ringlab::scenario
