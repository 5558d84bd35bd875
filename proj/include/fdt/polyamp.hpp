#pragma once

#include <functional>
#include <vector>

#include "fdt/rational.hpp"

namespace fdt {

// Univariate polynomial in the monomial basis, low degree first.
struct UnivariatePolynomial {
  std::vector<double> coefficients;

  int degree() const;
};

// Horner evaluation.
double eval_poly(const UnivariatePolynomial& p, double x);

// Clenshaw evaluation of a Chebyshev series (used wherever the monomial
// basis would lose precision at high degree).
double eval_chebyshev(const std::vector<double>& coefficients, double x);

// Jackson-damped Chebyshev approximation of a continuous target on [-1,1].
// The Chebyshev coefficients are the authoritative representation; the
// monomial export is exact only while the degree stays moderate.
struct JacksonPolynomial {
  UnivariatePolynomial poly;
  std::vector<double> chebyshev;
  int degree = 0;
  double grid_error = 0.0;   // sup |p - target| on the check grid
  double error_bound = 0.0;  // 6K/n

  double eval(double x) const { return eval_chebyshev(chebyshev, x); }
};

// Degree-<=n polynomial with sup error <= 6K/n for a K-Lipschitz target,
// verified on a 10^4-point grid; throws (reporting the achieved error) if
// the construction misses the bound.
JacksonPolynomial jackson_approx(const std::function<double(double)>& target, int n, double K);

// The clamp target of the small-bias amplification corollary: -2/3 on
// [-1,-gamma], 2x/(3 gamma) in between, 2/3 on [gamma,1].
double clamp_target(double gamma, double x);

// Odd polynomial mapping [-1,1]->[-1,1], [gamma,1]->[1/3,1] and
// [-1,-gamma]->[-1,-1/3]; degree at most 26/gamma (achieved degree
// reported; the first degree tried is ceil(12/gamma)).
JacksonPolynomial amp_small_to_const(double gamma);

// The majority polynomial p = 1 - 2q with
// q(x) = sum_{i<=k} C(2k+1,i) ((1+x)/2)^i ((1-x)/2)^{2k+1-i} and
// k = ceil(log(1/eps)/log(9/8)): odd, increasing, maps [1/3,1] into
// [1-eps,1], degree 2k+1 <= 17 log2(1/eps).
struct MajorityPolynomial {
  UnivariatePolynomial poly;           // monomial doubles of p
  std::vector<Rational> exact_coeffs;  // exact monomial coefficients of p
  int k = 0;
  int degree = 0;  // 2k+1

  // Exact binomial-form evaluation of q at a rational point.
  Rational q_at(const Rational& x) const;
  // Numerically stable evaluation of p (all-positive binomial terms).
  double p_stable(double x) const;
};

MajorityPolynomial amp_const_to_small(double eps);

// q_k(x), exactly, for the bound q(1/3) <= (1/3)(8/9)^k.
Rational majority_q_value(int k, const Rational& x);

}  // namespace fdt
