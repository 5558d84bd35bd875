#include "fdt/polyamp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fdt {

int UnivariatePolynomial::degree() const {
  for (std::size_t i = coefficients.size(); i-- > 0;)
    if (coefficients[i] != 0.0) return static_cast<int>(i);
  return 0;
}

double eval_poly(const UnivariatePolynomial& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.coefficients.size(); i-- > 0;) acc = acc * x + p.coefficients[i];
  return acc;
}

double eval_chebyshev(const std::vector<double>& coefficients, double x) {
  // Clenshaw recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 1;) {
    double b0 = 2.0 * x * b1 - b2 + coefficients[i];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (coefficients.empty() ? 0.0 : coefficients[0]);
}

namespace {

constexpr int kGridPoints = 10001;

std::vector<double> chebyshev_to_monomial(const std::vector<double>& cheb) {
  // T_{j+1} = 2x T_j - T_{j-1}, accumulated into monomial coefficients.
  std::size_t n = cheb.size();
  std::vector<double> acc(n, 0.0);
  std::vector<double> t_prev{1.0};      // T_0
  std::vector<double> t_cur{0.0, 1.0};  // T_1
  if (n > 0) acc[0] += cheb[0];
  if (n > 1) acc[1] += cheb[1];
  for (std::size_t j = 2; j < n; ++j) {
    std::vector<double> t_next(j + 1, 0.0);
    for (std::size_t i = 0; i < t_cur.size(); ++i) t_next[i + 1] += 2.0 * t_cur[i];
    for (std::size_t i = 0; i < t_prev.size(); ++i) t_next[i] -= t_prev[i];
    for (std::size_t i = 0; i < t_next.size(); ++i) acc[i] += cheb[j] * t_next[i];
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return acc;
}

// Jackson damping factors for a series truncated at degree n (N = n+1
// moments); the damped series is the convolution of the target with the
// nonnegative Jackson kernel.
std::vector<double> jackson_damping(int n) {
  const int N = n + 1;
  std::vector<double> g(static_cast<std::size_t>(N));
  const double pi_over = std::numbers::pi / (N + 1);
  const double cot = std::cos(pi_over) / std::sin(pi_over);
  for (int j = 0; j < N; ++j) {
    g[static_cast<std::size_t>(j)] =
        ((N - j + 1) * std::cos(pi_over * j) + std::sin(pi_over * j) * cot) / (N + 1);
  }
  return g;
}

std::vector<double> chebyshev_coefficients(const std::function<double(double)>& target, int n,
                                           int samples) {
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (int m = 0; m < samples; ++m) {
    double theta = std::numbers::pi * (m + 0.5) / samples;
    values[static_cast<std::size_t>(m)] = target(std::cos(theta));
  }
  std::vector<double> coeffs(static_cast<std::size_t>(n + 1), 0.0);
  for (int j = 0; j <= n; ++j) {
    double acc = 0.0;
    for (int m = 0; m < samples; ++m)
      acc += values[static_cast<std::size_t>(m)] *
             std::cos(j * std::numbers::pi * (m + 0.5) / samples);
    coeffs[static_cast<std::size_t>(j)] = acc * (j == 0 ? 1.0 : 2.0) / samples;
  }
  return coeffs;
}

JacksonPolynomial jackson_build(const std::function<double(double)>& target, int n, double K) {
  int samples = std::max(4096, 8 * n);
  std::vector<double> cheb = chebyshev_coefficients(target, n, samples);
  std::vector<double> damping = jackson_damping(n);
  for (std::size_t j = 0; j < cheb.size(); ++j) cheb[j] *= damping[j];

  JacksonPolynomial result;
  result.chebyshev = cheb;
  result.poly.coefficients = chebyshev_to_monomial(cheb);
  result.degree = result.poly.degree();
  result.error_bound = 6.0 * K / n;

  double worst = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    double x = -1.0 + 2.0 * i / (kGridPoints - 1);
    worst = std::max(worst, std::abs(eval_chebyshev(cheb, x) - target(x)));
  }
  result.grid_error = worst;
  return result;
}

}  // namespace

JacksonPolynomial jackson_approx(const std::function<double(double)>& target, int n, double K) {
  if (n < 1) throw std::invalid_argument("jackson_approx: n must be >= 1");
  JacksonPolynomial result = jackson_build(target, n, K);
  if (result.grid_error > result.error_bound)
    throw std::runtime_error("jackson_approx: grid error " + std::to_string(result.grid_error) +
                             " exceeds bound " + std::to_string(result.error_bound));
  return result;
}

double clamp_target(double gamma, double x) {
  if (x <= -gamma) return -2.0 / 3.0;
  if (x >= gamma) return 2.0 / 3.0;
  return 2.0 * x / (3.0 * gamma);
}

JacksonPolynomial amp_small_to_const(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("amp_small_to_const: gamma outside (0,1)");
  const double K = 2.0 / (3.0 * gamma);
  const int degree_cap = static_cast<int>(std::ceil(26.0 / gamma));
  int n = static_cast<int>(std::ceil(12.0 / gamma));

  auto target = [gamma](double x) { return clamp_target(gamma, x); };
  const double slack = 1e-9;

  while (true) {
    JacksonPolynomial candidate = jackson_build(target, n, K);
    // The target is odd; drop the (quadrature-noise) even coefficients so
    // the polynomial is exactly odd.
    for (std::size_t j = 0; j < candidate.chebyshev.size(); j += 2)
      candidate.chebyshev[j] = 0.0;
    candidate.poly.coefficients = chebyshev_to_monomial(candidate.chebyshev);
    candidate.degree = candidate.poly.degree();

    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < kGridPoints && ok; ++i) {
      double x = -1.0 + 2.0 * i / (kGridPoints - 1);
      double v = candidate.eval(x);
      worst = std::max(worst, std::abs(v - target(x)));
      if (v < -1.0 - slack || v > 1.0 + slack) ok = false;
      if (x >= gamma && (v < 1.0 / 3.0 - slack || v > 1.0 + slack)) ok = false;
      if (x <= -gamma && (v > -1.0 / 3.0 + slack || v < -1.0 - slack)) ok = false;
    }
    candidate.grid_error = worst;
    if (ok) return candidate;
    n += std::max(1, static_cast<int>(std::ceil(1.0 / gamma)));
    if (n > degree_cap)
      throw std::runtime_error("amp_small_to_const: no construction within degree 26/gamma");
  }
}

namespace {

Integer binomial(int n, int k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

Rational rational_pow(const Rational& base, int exponent) {
  Rational acc(1);
  for (int i = 0; i < exponent; ++i) acc *= base;
  return acc;
}

// Exact monomial coefficients of ((1+x)/2)^i ((1-x)/2)^{m-i}, m = 2k+1.
std::vector<Rational> bernstein_term(int i, int m) {
  std::vector<Rational> plus{Rational(1, 2), Rational(1, 2)};   // (1+x)/2
  std::vector<Rational> minus{Rational(1, 2), Rational(-1, 2)}; // (1-x)/2
  std::vector<Rational> acc{Rational(1)};
  auto multiply = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t p = 0; p < a.size(); ++p)
      for (std::size_t q = 0; q < b.size(); ++q) out[p + q] += a[p] * b[q];
    return out;
  };
  for (int j = 0; j < i; ++j) acc = multiply(acc, plus);
  for (int j = 0; j < m - i; ++j) acc = multiply(acc, minus);
  return acc;
}

}  // namespace

Rational majority_q_value(int k, const Rational& x) {
  if (k < 1) throw std::invalid_argument("majority_q_value: k must be >= 1");
  const int m = 2 * k + 1;
  Rational head = (1 + x) / 2;
  Rational tail = (1 - x) / 2;
  Rational acc(0);
  for (int i = 0; i <= k; ++i)
    acc += Rational(binomial(m, i)) * rational_pow(head, i) * rational_pow(tail, m - i);
  return acc;
}

Rational MajorityPolynomial::q_at(const Rational& x) const { return majority_q_value(k, x); }

double MajorityPolynomial::p_stable(double x) const {
  // All binomial terms are nonnegative on [-1,1]; no cancellation.
  const int m = 2 * k + 1;
  double head = (1.0 + x) / 2.0;
  double tail = (1.0 - x) / 2.0;
  double q = 0.0;
  for (int i = 0; i <= k; ++i)
    q += to_double(Rational(binomial(m, i))) * std::pow(head, i) * std::pow(tail, m - i);
  return 1.0 - 2.0 * q;
}

MajorityPolynomial amp_const_to_small(double eps) {
  if (!(eps > 0.0 && eps < 2.0 / 3.0))
    throw std::invalid_argument("amp_const_to_small: eps outside (0, 2/3)");

  // Smallest k with (8/9)^k <= eps, decided in exact arithmetic.
  Rational eps_rational = rational_from_double(eps);
  Rational ratio(8, 9);
  int k = 1;
  Rational power = ratio;
  while (power > eps_rational) {
    power *= ratio;
    ++k;
  }

  MajorityPolynomial result;
  result.k = k;
  const int m = 2 * k + 1;
  result.degree = m;

  // q in exact monomial coefficients, then p = 1 - 2q.
  std::vector<Rational> q_coeffs(static_cast<std::size_t>(m + 1), Rational(0));
  for (int i = 0; i <= k; ++i) {
    Rational scale(binomial(m, i));
    std::vector<Rational> term = bernstein_term(i, m);
    for (std::size_t j = 0; j < term.size(); ++j) q_coeffs[j] += scale * term[j];
  }
  result.exact_coeffs.assign(static_cast<std::size_t>(m + 1), Rational(0));
  result.exact_coeffs[0] = 1 - 2 * q_coeffs[0];
  for (std::size_t j = 1; j < q_coeffs.size(); ++j) result.exact_coeffs[j] = -2 * q_coeffs[j];

  result.poly.coefficients.resize(result.exact_coeffs.size());
  for (std::size_t j = 0; j < result.exact_coeffs.size(); ++j)
    result.poly.coefficients[j] = to_double(result.exact_coeffs[j]);
  return result;
}

}  // namespace fdt
