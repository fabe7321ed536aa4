#include "ringlab/oplab/structured_op.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

#include "ringlab/error.hpp"

namespace ringlab::oplab {

void StructuredOp::add_entry(std::size_t i, std::size_t j, const Rational& v) {
  require(i >= 1 && j >= 1, ErrorKind::InvalidArgument, "operator indices start at 1");
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace({i, j}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

StructuredOp StructuredOp::scaled_identity(const Rational& lambda) {
  StructuredOp op;
  op.scalar_ = lambda;
  return op;
}

StructuredOp StructuredOp::diagonal(const std::map<std::size_t, Rational>& d) {
  StructuredOp op;
  for (const auto& [i, v] : d) op.add_entry(i, i, v);
  return op;
}

StructuredOp StructuredOp::diagonal_entry(std::size_t i, const Rational& d) {
  StructuredOp op;
  op.add_entry(i, i, d);
  return op;
}

StructuredOp StructuredOp::coordinate_map(std::size_t source, std::size_t target, const Rational& s) {
  StructuredOp op;
  op.add_entry(target, source, s);
  return op;
}

std::map<std::size_t, Rational> StructuredOp::diagonal_part() const {
  std::map<std::size_t, Rational> d;
  for (const auto& [ij, v] : entries_)
    if (ij.first == ij.second) d[ij.first] = v;
  return d;
}

std::vector<CoordinateMap> StructuredOp::coordinate_maps() const {
  std::vector<CoordinateMap> maps;
  for (const auto& [ij, v] : entries_)
    if (ij.first != ij.second) maps.push_back({ij.second, ij.first, v});
  return maps;
}

std::size_t StructuredOp::max_index() const {
  std::size_t m = 0;
  for (const auto& [ij, v] : entries_) m = std::max({m, ij.first, ij.second});
  return m;
}

StructuredOp& StructuredOp::operator+=(const StructuredOp& b) {
  scalar_ += b.scalar_;
  for (const auto& [ij, v] : b.entries_) add_entry(ij.first, ij.second, v);
  return *this;
}

StructuredOp operator+(const StructuredOp& a, const StructuredOp& b) {
  StructuredOp r = a;
  r += b;
  return r;
}

StructuredOp operator*(const Rational& s, const StructuredOp& a) {
  StructuredOp r;
  if (s == 0) return r;
  r.scalar_ = s * a.scalar_;
  for (const auto& [ij, v] : a.entries_) r.entries_.emplace(ij, s * v);
  return r;
}

StructuredOp operator-(const StructuredOp& a, const StructuredOp& b) { return a + Rational(-1) * b; }

LpVec apply(const StructuredOp& op, const LpVec& v) {
  LpVec out(v.exponent(), v.window());
  std::map<std::size_t, Rational> acc;
  if (op.scalar_part() != 0)
    for (const auto& [i, x] : v.coords()) acc[i] += op.scalar_part() * x;
  for (const auto& [ij, s] : op.entries()) {
    const auto& [i, j] = ij;
    auto it = v.coords().find(j);
    if (it == v.coords().end()) continue;
    require(i <= v.window(), ErrorKind::InvalidArgument,
            "output coordinate " + std::to_string(i) + " outside window [1, " + std::to_string(v.window()) + "]");
    acc[i] += s * it->second;
  }
  for (const auto& [i, x] : acc) out.set(i, x);
  return out;
}

StructuredOp op_mul(const StructuredOp& a, const StructuredOp& b) {
  // x -> b(a(x)) = (lb + B)(la + A) x = la*lb x + lb A x + la B x + B A x
  StructuredOp r;
  r.scalar_ = a.scalar_ * b.scalar_;
  for (const auto& [ij, v] : a.entries_) r.add_entry(ij.first, ij.second, b.scalar_ * v);
  for (const auto& [ij, v] : b.entries_) r.add_entry(ij.first, ij.second, a.scalar_ * v);
  std::map<std::size_t, std::vector<std::pair<std::size_t, const Rational*>>> a_rows;
  for (const auto& [ij, v] : a.entries_) a_rows[ij.first].emplace_back(ij.second, &v);
  for (const auto& [ik, bv] : b.entries_) {
    auto it = a_rows.find(ik.second);
    if (it == a_rows.end()) continue;
    for (const auto& [j, av] : it->second) r.add_entry(ik.first, j, bv * *av);
  }
  return r;
}

namespace {

using Entry = std::pair<std::pair<std::size_t, std::size_t>, Rational>;

struct Block {
  std::vector<std::size_t> indices;
  std::vector<Entry> entries;  // lambda already folded onto the diagonal
};

std::size_t find_root(std::map<std::size_t, std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::vector<Block> blocks_of(const StructuredOp& op) {
  std::map<std::size_t, std::size_t> parent;
  for (const auto& [ij, v] : op.entries()) {
    parent.try_emplace(ij.first, ij.first);
    parent.try_emplace(ij.second, ij.second);
  }
  for (const auto& [ij, v] : op.entries()) {
    auto a = find_root(parent, ij.first), b = find_root(parent, ij.second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, Block> by_root;
  for (auto& [i, p] : parent) by_root[find_root(parent, i)].indices.push_back(i);
  std::map<std::pair<std::size_t, std::size_t>, Rational> full = op.entries();
  if (op.scalar_part() != 0)
    for (const auto& [i, p] : parent) {
      auto& slot = full[{i, i}];
      slot += op.scalar_part();
    }
  for (auto& [ij, v] : full)
    if (v != 0) by_root[find_root(parent, ij.first)].entries.emplace_back(ij, v);
  std::vector<Block> out;
  for (auto& [r, b] : by_root) out.push_back(std::move(b));
  return out;
}

Rational max_group_square_sum(const std::vector<Entry>& entries, bool by_column) {
  std::map<std::size_t, Rational> sums;
  for (const auto& [ij, v] : entries) sums[by_column ? ij.second : ij.first] += v * v;
  Rational best(0);
  for (const auto& [k, s] : sums) best = std::max(best, s);
  return best;
}

bool at_most_one_per(const std::vector<Entry>& entries, bool per_row) {
  std::set<std::size_t> seen;
  for (const auto& [ij, v] : entries)
    if (!seen.insert(per_row ? ij.first : ij.second).second) return false;
  return true;
}

// ||u v^T||^2 = |u|^2 |v|^2 when every nonzero row is a multiple of the first.
std::optional<Rational> rank_one_square(const std::vector<Entry>& entries) {
  std::map<std::size_t, std::map<std::size_t, Rational>> rows;
  for (const auto& [ij, v] : entries) rows[ij.first][ij.second] = v;
  if (rows.empty()) return Rational(0);
  const auto& first = rows.begin()->second;
  const auto& [pivot_col, pivot] = *first.begin();
  Rational u2(0), v2(0);
  for (const auto& [c, x] : first) v2 += x * x;
  for (const auto& [r, row] : rows) {
    auto it = row.find(pivot_col);
    if (it == row.end() || row.size() != first.size()) return std::nullopt;
    const Rational ratio = it->second / pivot;
    for (const auto& [c, x] : first) {
      auto jt = row.find(c);
      if (jt == row.end() || jt->second != ratio * x) return std::nullopt;
    }
    u2 += ratio * ratio;
  }
  return u2 * v2;
}

OpNorm certified_interval(const Block& b, std::size_t budget, double rel_gap) {
  const std::size_t n = b.indices.size();
  require(n <= 400, ErrorKind::Undecided, "op_norm: block of size " + std::to_string(n) + " exceeds the search budget");
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < n; ++k) pos[b.indices[k]] = k;
  std::vector<double> dense(n * n, 0.0);
  std::vector<Rational> exact(n * n, Rational(0));
  for (const auto& [ij, v] : b.entries) {
    dense[pos[ij.first] * n + pos[ij.second]] = v.get_d();
    exact[pos[ij.first] * n + pos[ij.second]] = v;
  }
  // power iteration on A^T A
  std::vector<double> x(n, 1.0), y(n), z(n);
  for (std::size_t it = 0; it < budget; ++it) {
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < n; ++c) s += dense[r * n + c] * x[c];
      y[r] = s;
    }
    double norm = 0;
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0;
      for (std::size_t r = 0; r < n; ++r) s += dense[r * n + c] * y[r];
      z[c] = s;
      norm = std::max(norm, std::fabs(s));
    }
    if (norm == 0) break;
    for (std::size_t c = 0; c < n; ++c) x[c] = z[c] / norm;
  }
  // exact Rayleigh quotient |Ax|^2 / |x|^2
  std::vector<Rational> xq(n);
  Rational xx(0);
  for (std::size_t c = 0; c < n; ++c) {
    xq[c] = Rational(x[c]);
    xx += xq[c] * xq[c];
  }
  Rational lower(0);
  if (xx != 0) {
    Rational ax(0);
    for (std::size_t r = 0; r < n; ++r) {
      Rational s(0);
      for (std::size_t c = 0; c < n; ++c)
        if (exact[r * n + c] != 0) s += exact[r * n + c] * xq[c];
      ax += s * s;
    }
    lower = ax / xx;
  }
  // Collatz-Wielandt: rho(|A^T A|) <= max_c (|A^T A| v)_c / v_c for v > 0
  std::vector<Rational> gram(n * n, Rational(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c1 = 0; c1 < n; ++c1) {
      if (exact[r * n + c1] == 0) continue;
      for (std::size_t c2 = 0; c2 < n; ++c2)
        if (exact[r * n + c2] != 0) gram[c1 * n + c2] += exact[r * n + c1] * exact[r * n + c2];
    }
  Rational upper(-1);
  for (std::size_t c = 0; c < n; ++c) {
    Rational vc = ringlab::abs(xq[c]) + Rational(1, 1000000000);
    Rational s(0);
    for (std::size_t d = 0; d < n; ++d) s += ringlab::abs(gram[c * n + d]) * (ringlab::abs(xq[d]) + Rational(1, 1000000000));
    upper = std::max(upper, Rational(s / vc));
  }
  if (upper < lower) upper = lower;
  if (Rational(upper - lower).get_d() > rel_gap * upper.get_d())
    fail(ErrorKind::Undecided, "op_norm: certified interval [" + std::to_string(lower.get_d()) + ", " +
                                   std::to_string(upper.get_d()) + "] wider than the requested gap");
  return {LpExponent::Two, lower, upper, "certified-interval"};
}

}  // namespace

OpNorm op_norm(const StructuredOp& op, LpExponent p, std::size_t budget, double rel_gap) {
  const Rational lambda_abs = ringlab::abs(op.scalar_part());
  if (p == LpExponent::One || p == LpExponent::Infinity) {
    // columns (p = 1) or rows (p = inf) of lambda*I + A; untouched ones give |lambda|
    const bool by_column = p == LpExponent::One;
    std::map<std::size_t, Rational> sums;
    std::set<std::size_t> diag_seen;
    for (const auto& [ij, v] : op.entries()) {
      const std::size_t key = by_column ? ij.second : ij.first;
      if (ij.first == ij.second) {
        sums[key] += ringlab::abs(v + op.scalar_part());
        diag_seen.insert(key);
      } else {
        sums[key] += ringlab::abs(v);
      }
    }
    Rational best = lambda_abs;
    for (auto& [k, s] : sums) {
      if (!diag_seen.count(k)) s += lambda_abs;
      best = std::max(best, s);
    }
    return {p, best, best, by_column ? "max-column-sum" : "max-row-sum"};
  }

  OpNorm out{LpExponent::Two, lambda_abs * lambda_abs, lambda_abs * lambda_abs, "scalar"};
  std::set<std::string> methods;
  for (const auto& b : blocks_of(op)) {
    Rational sq;
    if (at_most_one_per(b.entries, true) && at_most_one_per(b.entries, false)) {
      sq = max_group_square_sum(b.entries, true);
      methods.insert("monomial");
    } else if (at_most_one_per(b.entries, true)) {
      sq = max_group_square_sum(b.entries, true);
      methods.insert("one-entry-per-row");
    } else if (at_most_one_per(b.entries, false)) {
      sq = max_group_square_sum(b.entries, false);
      methods.insert("one-entry-per-column");
    } else if (auto r1 = rank_one_square(b.entries)) {
      sq = *r1;
      methods.insert("rank-one");
    } else {
      auto iv = certified_interval(b, budget, rel_gap);
      out.lower = std::max(out.lower, iv.lower);
      out.upper = std::max(out.upper, iv.upper);
      methods.insert(iv.method);
      continue;
    }
    out.lower = std::max(out.lower, sq);
    out.upper = std::max(out.upper, sq);
  }
  if (!methods.empty()) {
    out.method.clear();
    for (const auto& m : methods) out.method += (out.method.empty() ? "" : "+") + m;
  }
  return out;
}

}  // namespace ringlab::oplab
