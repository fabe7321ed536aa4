#include "ringlab/lcprobe/lcprobe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/series/permutation.hpp"

namespace ringlab::lcprobe {

TorusPoint::TorusPoint(double angle) {
  require(std::isfinite(angle), ErrorKind::InvalidArgument, "torus angle must be finite");
  double r = std::remainder(angle, 2 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2 * kPi;
  angle_ = r;
}

TorusPoint TorusPoint::times(std::int64_t k) const { return TorusPoint(angle_ * static_cast<double>(k)); }

ExactTorusPoint::ExactTorusPoint(Rational u) {
  u.canonicalize();
  // u - 2 * floor((u + 1) / 2) lies in [-1, 1)
  Rational shifted = (u + 1) / 2;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  units_ = u - 2 * Rational(fl);
  if (units_ == -1) units_ = 1;
  units_.canonicalize();
}

ExactTorusPoint ExactTorusPoint::times(std::int64_t k) const { return ExactTorusPoint(units_ * Rational(k)); }

double torus_norm(const TorusPoint& g) { return g.norm(); }
Rational torus_norm(const ExactTorusPoint& g) { return g.norm(); }

std::optional<bool> doubling_check(const TorusPoint& g, double tol) {
  if (g.norm() > kPi / 2) return std::nullopt;
  return std::abs((g + g).norm() - 2 * g.norm()) <= tol;
}

std::optional<bool> doubling_check(const ExactTorusPoint& g) {
  if (g.norm() > Rational(1, 2)) return std::nullopt;
  return (g + g).norm() == 2 * g.norm();
}

ProductPoint ProductPoint::zero(std::size_t p, std::size_t q) {
  return {std::vector<TorusPoint>(p), std::vector<double>(q, 0.0)};
}

ProductPoint operator+(const ProductPoint& a, const ProductPoint& b) {
  require(a.p() == b.p() && a.q() == b.q(), ErrorKind::InvalidArgument, "product points of different shape");
  ProductPoint r = a;
  for (std::size_t k = 0; k < a.p(); ++k) r.torus[k] = a.torus[k] + b.torus[k];
  for (std::size_t k = 0; k < a.q(); ++k) r.reals[k] += b.reals[k];
  return r;
}

ProductPoint operator-(const ProductPoint& a) {
  ProductPoint r = a;
  for (auto& t : r.torus) t = -t;
  for (auto& x : r.reals) x = -x;
  return r;
}

GammaSeminorm GammaSeminorm::all_coordinates(std::size_t p, std::size_t q) {
  std::vector<Character> g;
  for (std::size_t k = 0; k < p; ++k) g.push_back({Character::Kind::Torus, k});
  for (std::size_t k = 0; k < q; ++k) g.push_back({Character::Kind::Real, k});
  return GammaSeminorm(std::move(g));
}

double GammaSeminorm::operator()(const ProductPoint& x) const {
  double m = 0;
  for (const auto& c : gamma_) {
    if (c.kind == Character::Kind::Torus) {
      require(c.index < x.p(), ErrorKind::InvalidArgument, "character index beyond the torus coordinates");
      m = std::max(m, x.torus[c.index].norm());
    } else {
      require(c.index < x.q(), ErrorKind::InvalidArgument, "character index beyond the real coordinates");
      m = std::max(m, std::abs(x.reals[c.index]));
    }
  }
  return m;
}

DiagonalEndo DiagonalEndo::zero(std::size_t p, std::size_t q) { return scalar(p, q, 0, Rational(0)); }

DiagonalEndo DiagonalEndo::scalar(std::size_t p, std::size_t q, std::int64_t k, const Rational& s) {
  return {std::vector<std::int64_t>(p, k), std::vector<Rational>(q, s)};
}

ProductPoint DiagonalEndo::operator()(const ProductPoint& x) const {
  require(torus_factors.size() == x.p() && real_factors.size() == x.q(), ErrorKind::InvalidArgument,
          "endomorphism shape differs from the point");
  ProductPoint r = x;
  for (std::size_t k = 0; k < x.p(); ++k) r.torus[k] = x.torus[k].times(torus_factors[k]);
  for (std::size_t k = 0; k < x.q(); ++k) r.reals[k] = real_factors[k].get_d() * x.reals[k];
  return r;
}

std::string DiagonalEndo::describe() const {
  std::ostringstream os;
  os << "torus[";
  for (std::size_t k = 0; k < torus_factors.size(); ++k) os << (k ? "," : "") << torus_factors[k];
  os << "] real[";
  for (std::size_t k = 0; k < real_factors.size(); ++k) os << (k ? "," : "") << to_fraction_string(real_factors[k]);
  os << "]";
  return os.str();
}

double compute_M(const series::TermStream<ProductPoint>& a, const GammaSeminorm& gamma, double eps, std::size_t n,
                 std::optional<double> tail) {
  require(eps > 0, ErrorKind::Precondition, "compute_M needs eps > 0");
  if (!tail) {
    const auto len = a.declared_length();
    require(len && *len <= n, ErrorKind::Precondition,
            "compute_M: stream '" + a.name() + "' has terms beyond n and no declared tail bound");
  }
  require(!tail || *tail >= 0, ErrorKind::InvalidArgument, "tail bound must be non-negative");
  double s = tail.value_or(0.0);
  for (std::size_t i = 1; i <= n; ++i) s += gamma(a.term(i));
  return 1 + s / eps;
}

Rational compute_M(std::span<const Rational> term_norms, const Rational& eps, const Rational& tail) {
  require(eps > 0, ErrorKind::Precondition, "compute_M needs eps > 0");
  require(tail >= 0, ErrorKind::InvalidArgument, "tail bound must be non-negative");
  Rational s = tail;
  for (const auto& v : term_norms) {
    require(v >= 0, ErrorKind::InvalidArgument, "term norms must be non-negative");
    s += v;
  }
  Rational M = 1 + s / eps;
  M.canonicalize();
  return M;
}

double pick_delta(double eps, double M) {
  require(eps > 0 && M >= 1, ErrorKind::Precondition, "pick_delta needs eps > 0 and M >= 1");
  return eps / (2 * M);
}

Rational pick_delta(const Rational& eps, const Rational& M) {
  require(eps > 0 && M >= 1, ErrorKind::Precondition, "pick_delta needs eps > 0 and M >= 1");
  Rational d = eps / (2 * M);
  d.canonicalize();
  return d;
}

ContainmentReport containment_check(const series::TermStream<ProductPoint>& a, const GammaSeminorm& gamma,
                                    std::span<const DiagonalEndo> f, double eps, std::size_t n, double M,
                                    double tol) {
  require(eps > 0 && M >= 1, ErrorKind::Precondition, "containment_check needs eps > 0 and M >= 1");
  require(f.size() >= n, ErrorKind::Precondition, "containment_check: fewer multipliers than terms");
  ContainmentReport r;
  r.M = M;
  r.eps = eps;
  r.n = n;
  std::optional<ProductPoint> x;
  double sum_f = 0, sum_a = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const ProductPoint ai = a.term(i);
    const ProductPoint bi = f[i - 1](ai);
    const double na = gamma(ai), nb = gamma(bi);
    const double ratio = nb == 0 ? 0 : (na == 0 ? std::numeric_limits<double>::infinity() : nb * M / na);
    if (nb > na / M + tol) {
      std::ostringstream os;
      os << "certificate violated at i = " << i << ": ||f_i(a_i)|| * M / ||a_i|| = " << ratio << " > 1";
      fail(ErrorKind::Precondition, os.str());
    }
    r.worst_certificate_ratio = std::max(r.worst_certificate_ratio, ratio);
    x = x ? *x + bi : bi;
    sum_f += nb;
    sum_a += na;
  }
  r.x_norm = x ? gamma(*x) : 0.0;
  r.triangle = {r.x_norm, sum_f};
  r.certificates = {sum_f, sum_a / M};
  r.budget = {sum_a / M, eps};
  r.pass = r.x_norm <= eps + tol;
  return r;
}

LcInstance make_lc_instance(std::uint64_t seed, std::size_t n, double eps) {
  series::SeededRng rng(seed);
  LcInstance inst;
  inst.p = 1 + rng.below(3);
  inst.q = 1 + rng.below(3);
  inst.eps = eps;

  std::vector<std::vector<ExactTorusPoint>> exact(n);
  for (std::size_t i = 1; i <= n; ++i) {
    ProductPoint pt = ProductPoint::zero(inst.p, inst.q);
    for (std::size_t k = 0; k < inst.p; ++k) {
      ExactTorusPoint t(fraction(rng.between(-63, 63), 1 + rng.below(64)));
      exact[i - 1].push_back(t);
      pt.torus[k] = t.to_float();
    }
    for (auto& v : pt.reals) v = std::ldexp(rng.unit() * 2 - 1, -static_cast<int>(std::min<std::size_t>(i, 60)));
    inst.terms.push_back(std::move(pt));
  }

  const GammaSeminorm gamma = GammaSeminorm::all_coordinates(inst.p, inst.q);
  double s = 0;
  for (const auto& t : inst.terms) s += gamma(t);
  const double M = 1 + s / eps;

  for (std::size_t i = 0; i < n; ++i) {
    const double bound = gamma(inst.terms[i]) / M;
    DiagonalEndo f = DiagonalEndo::zero(inst.p, inst.q);
    const auto cap = static_cast<std::int64_t>(std::floor(1000 / M));
    for (auto& r : f.real_factors) r = fraction(rng.between(-cap, cap), 1000);
    for (std::size_t k = 0; k < inst.p; ++k) {
      for (int attempt = 0; attempt < 16; ++attempt) {
        const std::int64_t c = rng.between(-64, 64);
        // decided on the exact angle, with a margin for the float image
        if (exact[i][k].times(c).norm().get_d() * kPi <= bound * (1 - 1e-9)) {
          f.torus_factors[k] = c;
          break;
        }
      }
    }
    inst.multipliers.push_back(std::move(f));
  }
  return inst;
}

LcBatch lc_batch(std::size_t instances, std::uint64_t seed, std::size_t n, double eps) {
  series::SeededRng seeds(seed);
  std::vector<std::uint64_t> s(instances);
  for (auto& v : s) v = seeds.next();
  struct One {
    ContainmentReport report;
    std::size_t nonzero = 0;
  };
  auto results = parallel_map(instances, [&](std::size_t k) {
    auto inst = std::make_shared<LcInstance>(make_lc_instance(s[k], n, eps));
    series::TermStream<ProductPoint> stream([inst](std::size_t i) { return inst->terms.at(i - 1); },
                                            series::SeriesClass::AbsolutelyConvergent, "random T^p x R^q terms");
    stream.with_length(n);
    const GammaSeminorm gamma = GammaSeminorm::all_coordinates(inst->p, inst->q);
    One o;
    o.report = containment_check(stream, gamma, inst->multipliers, eps, n, compute_M(stream, gamma, eps, n));
    for (const auto& f : inst->multipliers)
      for (auto c : f.torus_factors) o.nonzero += c != 0;
    return o;
  });
  LcBatch b;
  b.instances = instances;
  b.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k].report;
    if (r.pass)
      ++b.passed;
    else if (!b.first_failure)
      b.first_failure = k;
    b.nonzero_torus_factors += results[k].nonzero;
    b.min_slack = std::min(b.min_slack, r.eps - r.x_norm);
  }
  return b;
}

}  // namespace ringlab::lcprobe
