#pragma once

#include <cstdint>
#include <stdexcept>

namespace cyclelab {

// Smaller root x in (0,1) of x e^{-x} = c e^{-c}, c > 1. Bisection, residual
// below 1e-12 (the bracket is driven to machine width).
double solve_x(double c);

struct CoreParams {
  double c = 0;
  double x = 0;
  double vertex_fraction = 0;  // (1-x)(1-x/c), per input vertex
  double edge_fraction = 0;    // (1-x/c)^2 c/2, per input vertex
};
CoreParams core_fractions(double c);

struct Corollary1 {
  double value = 0;  // 1 - (c+1)e^{-c} - c^2 e^{-2c}
  double band = 0;   // c^6 e^{-3c}
};
Corollary1 corollary1(double c);

// e^x minus the first k Taylor terms; evaluated by tail series for small x so
// no cancellation occurs near 0
double f_k(unsigned k, double x);

// Poisson(lambda) conditioned on t >= 2
struct TruncPoisson {
  double lambda = 0;
  double f1 = 0;
  double f2 = 0;
  double mean = 0;  // lambda f1 / f2
  double pmf(unsigned t) const;
  double variance() const;
};

// Solve lambda f1(lambda)/f2(lambda) = ratio, ratio > 2. Residual <= 1e-10.
TruncPoisson solve_lambda(double ratio);

struct DepthChoice {
  unsigned k1 = 0;
  double r = 0;                 // 8 e^3 c e^{-c/4}
  double asymptotic_bound = 0;  // (2/c) log(1/eps), for comparison
};
// Smallest positive k1 with r^{k1-1}/(1-r) < eps/3. Throws std::domain_error
// when r >= 1 (the geometric tail never shrinks; c too small).
DepthChoice k1_of(double eps, double c);

// Which exponential factor goes in the numerator of the tree weight; both
// appear in print so both are computed everywhere.
enum class RhoVariant { ExpKLambda, F2KLambda };

// log of (1/aut) (N/2M)^{k-1} lambda^{2k-2} A / f2(lambda)^k, where A is
// e^{k lambda} or f2(k lambda) per the variant. k = tree vertex count.
double rho_tree_log(std::uint64_t k, double aut, double N, double M, double lambda,
                    RhoVariant variant);
double rho_tree(std::uint64_t k, double aut, double N, double M, double lambda,
                RhoVariant variant);

}  // namespace cyclelab
