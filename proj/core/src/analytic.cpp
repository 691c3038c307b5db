#include "cyclelab/analytic.hpp"

#include <cmath>
#include <limits>

namespace cyclelab {

namespace {

// generic bisection: f(lo) and f(hi) must straddle zero; the bracket is kept
// valid at every step and shrunk to machine width
template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && lo < hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double solve_x(double c) {
  if (!(c > 1.0)) throw std::invalid_argument("solve_x: requires c > 1");
  const double target = c * std::exp(-c);
  auto f = [target](double x) { return x * std::exp(-x) - target; };
  // x e^{-x} is increasing on (0,1) and f(0) < 0 < f(1) for c > 1
  return bisect(f, std::numeric_limits<double>::min(), 1.0 - 1e-16);
}

CoreParams core_fractions(double c) {
  CoreParams p;
  p.c = c;
  p.x = solve_x(c);
  p.vertex_fraction = (1.0 - p.x) * (1.0 - p.x / c);
  p.edge_fraction = (1.0 - p.x / c) * (1.0 - p.x / c) * c / 2.0;
  return p;
}

Corollary1 corollary1(double c) {
  if (!(c > 1.0)) throw std::invalid_argument("corollary1: requires c > 1");
  Corollary1 r;
  r.value = 1.0 - (c + 1.0) * std::exp(-c) - c * c * std::exp(-2.0 * c);
  r.band = std::pow(c, 6) * std::exp(-3.0 * c);
  return r;
}

double f_k(unsigned k, double x) {
  if (x < 0) throw std::invalid_argument("f_k: negative argument");
  if (x < 1.0) {
    // tail series sum_{i>=k} x^i/i!: every term positive, no cancellation
    double term = 1.0;
    for (unsigned i = 1; i <= k; ++i) term *= x / i;  // x^k/k!
    double sum = 0.0;
    for (unsigned i = k; term > 0 && i < k + 200; ++i) {
      sum += term;
      if (term < sum * 1e-18) break;
      term *= x / (i + 1);
    }
    return sum;
  }
  double head = 0.0, term = 1.0;
  for (unsigned i = 0; i < k; ++i) {
    head += term;
    term *= x / (i + 1);
  }
  return std::exp(x) - head;
}

double TruncPoisson::pmf(unsigned t) const {
  if (t < 2) return 0.0;
  // lambda^t / (t! f2), in logs to survive large t
  double lg = t * std::log(lambda) - std::lgamma(t + 1.0) - std::log(f2);
  return std::exp(lg);
}

double TruncPoisson::variance() const {
  double el = std::exp(lambda);
  return (lambda * (el - 1.0) * (el - 1.0) - lambda * lambda * lambda * el) / (f2 * f2);
}

TruncPoisson solve_lambda(double ratio) {
  if (!(ratio > 2.0)) throw std::invalid_argument("solve_lambda: requires ratio > 2");
  // mean(lambda) = lambda f1/f2 decreases to 2 as lambda -> 0 and grows
  // without bound, so bracket [tiny, ratio + 10] always straddles
  auto mean_of = [](double l) { return l * f_k(1, l) / f_k(2, l); };
  double lam = bisect([&](double l) { return mean_of(l) - ratio; }, 1e-15, ratio + 10.0);
  TruncPoisson out;
  out.lambda = lam;
  out.f1 = f_k(1, lam);
  out.f2 = f_k(2, lam);
  out.mean = lam * out.f1 / out.f2;
  return out;
}

DepthChoice k1_of(double eps, double c) {
  if (!(eps > 0)) throw std::invalid_argument("k1_of: eps must be positive");
  if (!(c > 0)) throw std::invalid_argument("k1_of: c must be positive");
  DepthChoice out;
  out.r = 8.0 * std::exp(3.0) * c * std::exp(-c / 4.0);
  out.asymptotic_bound = (2.0 / c) * std::log(1.0 / eps);
  if (out.r >= 1.0)
    throw std::domain_error("k1_of: geometric ratio r >= 1, no admissible depth");
  double tail = 1.0 / (1.0 - out.r);  // r^{k1-1}/(1-r) at k1 = 1
  unsigned k1 = 1;
  while (tail >= eps / 3.0 && k1 < 10000) {
    tail *= out.r;
    ++k1;
  }
  out.k1 = k1;
  return out;
}

namespace {

// log f2(x) without overflow: for large x, f2(x) = e^x (1 - (1+x)e^{-x})
double log_f2(double x) {
  if (x < 30.0) return std::log(f_k(2, x));
  return x + std::log1p(-(1.0 + x) * std::exp(-x));
}

}  // namespace

double rho_tree_log(std::uint64_t k, double aut, double N, double M, double lambda,
                    RhoVariant variant) {
  if (k == 0 || aut < 1 || N <= 0 || M <= 0 || lambda <= 0)
    throw std::invalid_argument("rho_tree: bad parameters");
  const double kd = static_cast<double>(k);
  double lg = -std::log(aut);
  lg += (kd - 1.0) * (std::log(N) - std::log(2.0 * M));
  lg += (2.0 * kd - 2.0) * std::log(lambda);
  lg += variant == RhoVariant::ExpKLambda ? kd * lambda : log_f2(kd * lambda);
  lg -= kd * log_f2(lambda);
  return lg;
}

double rho_tree(std::uint64_t k, double aut, double N, double M, double lambda,
                RhoVariant variant) {
  return std::exp(rho_tree_log(k, aut, N, M, lambda, variant));
}

}  // namespace cyclelab
