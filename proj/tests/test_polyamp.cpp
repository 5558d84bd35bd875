#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdt/polyamp.hpp"

using namespace fdt;

TEST_CASE("eval_poly: Horner on small polynomials") {
  CHECK(eval_poly({{0.0, 1.0}}, 0.3) == doctest::Approx(0.3));
  CHECK(eval_poly({{1.0}}, -0.7) == doctest::Approx(1.0));
  CHECK(eval_poly({{1.0, -2.0, 3.0}}, 2.0) == doctest::Approx(1.0 - 4.0 + 12.0));
  UnivariatePolynomial p{{0.0, 1.0, 0.0}};
  CHECK(p.degree() == 1);
}

TEST_CASE("jackson approximation of trivial targets") {
  auto constant = jackson_approx([](double) { return 0.25; }, 4, 0.0);
  CHECK(constant.grid_error <= 1e-12);

  // alpha(x) = x is in the range of the damped degree-1 operator only
  // approximately; allow its Lipschitz bound instead.
  auto linear = jackson_approx([](double x) { return x; }, 8, 1.0);
  CHECK(linear.grid_error <= 6.0 / 8.0);
}

TEST_CASE("jackson bound on the clamp targets") {
  for (double gamma : {0.5, 0.2, 0.1}) {
    double K = 2.0 / (3.0 * gamma);
    int n = static_cast<int>(std::ceil(12.0 / gamma));
    auto p = jackson_approx([gamma](double x) { return clamp_target(gamma, x); }, n, K);
    CHECK(p.grid_error <= 6.0 * K / n);
    CHECK(p.degree <= n);
  }
  // gamma = 0.2, n = 60: the corollary's arithmetic gives bound exactly 1/3.
  double K = 2.0 / (3.0 * 0.2);
  auto p = jackson_approx([](double x) { return clamp_target(0.2, x); }, 60, K);
  CHECK(p.error_bound == doctest::Approx(1.0 / 3.0));
  CHECK(p.grid_error <= 1.0 / 3.0);
}

TEST_CASE("amp_small_to_const interval mapping") {
  for (double gamma : {0.9, 0.5, 0.2}) {
    auto p = amp_small_to_const(gamma);
    CHECK(p.degree <= static_cast<int>(std::ceil(26.0 / gamma)));
    const int grid = 10001;
    for (int i = 0; i < grid; ++i) {
      double x = -1.0 + 2.0 * i / (grid - 1);
      double v = p.eval(x);
      CHECK(v >= -1.0 - 1e-9);
      CHECK(v <= 1.0 + 1e-9);
      if (x >= gamma) CHECK(v >= 1.0 / 3.0 - 1e-9);
      if (x <= -gamma) CHECK(v <= -1.0 / 3.0 + 1e-9);
      // Odd construction.
      CHECK(p.eval(x) == doctest::Approx(-p.eval(-x)).epsilon(1e-12));
    }
  }
  CHECK_THROWS(amp_small_to_const(0.0));
  CHECK_THROWS(amp_small_to_const(1.0));
}

TEST_CASE("majority polynomial: exact q(1/3) bound and the k = 1 values") {
  // k = 1: q(1/3) = 7/27 <= 8/27.
  CHECK(majority_q_value(1, Rational(1, 3)) == Rational(7, 27));
  Rational bound = Rational(1, 3) * Rational(8, 9);
  CHECK(majority_q_value(1, Rational(1, 3)) <= bound);

  for (int k = 1; k <= 40; ++k) {
    Rational power(1, 3);
    for (int i = 0; i < k; ++i) power *= Rational(8, 9);
    CHECK(majority_q_value(k, Rational(1, 3)) <= power);
  }
}

TEST_CASE("amp_const_to_small: degree accounting and selected k") {
  // eps = 0.01 -> k = 40, degree 81 <= 17 log2(100).
  auto p = amp_const_to_small(0.01);
  CHECK(p.k == 40);
  CHECK(p.degree == 81);
  CHECK(static_cast<double>(p.degree) <= 17.0 * std::log2(100.0));
  CHECK(p.poly.degree() == 81);

  for (double eps : {0.3, 0.1, 0.01}) {
    auto poly = amp_const_to_small(eps);
    CHECK(static_cast<double>(poly.degree) <= 17.0 * std::log2(1.0 / eps));
    CHECK(poly.degree == 2 * poly.k + 1);
    // (8/9)^k <= eps by choice of k, and k is minimal.
    CHECK(std::pow(8.0 / 9.0, poly.k) <= eps * (1 + 1e-12));
    CHECK(std::pow(8.0 / 9.0, poly.k - 1) > eps);
  }
  CHECK_THROWS(amp_const_to_small(0.0));
  CHECK_THROWS(amp_const_to_small(0.7));
}

TEST_CASE("majority polynomial: endpoints, oddness, interval mapping") {
  for (double eps : {0.3, 0.1, 0.01}) {
    auto p = amp_const_to_small(eps);

    // p(1) = 1 and p(-1) = -1 exactly (all/none heads).
    CHECK(p.q_at(Rational(1)) == 0);
    CHECK(p.q_at(Rational(-1)) == 1);

    const int grid = 2001;
    for (int i = 0; i < grid; ++i) {
      double x = -1.0 + 2.0 * i / (grid - 1);
      double v = p.p_stable(x);
      CHECK(v >= -1.0 - 1e-9);
      CHECK(v <= 1.0 + 1e-9);
      // q(x) + q(-x) = 1, i.e. p odd.
      CHECK(p.p_stable(-x) == doctest::Approx(-v).epsilon(1e-10));
      if (x >= 1.0 / 3.0) CHECK(v >= 1.0 - eps - 1e-9);
    }

    // p maps [1/3, 1] into [1-eps, 1]: check the left endpoint exactly.
    Rational q_third = p.q_at(Rational(1, 3));
    Rational p_third = 1 - 2 * q_third;
    CHECK(p_third >= 1 - rational_from_double(eps));
  }
}

TEST_CASE("amp_const_to_small at 1/3: value at least 2/3") {
  auto p = amp_const_to_small(1.0 / 3.0);
  CHECK(p.p_stable(1.0 / 3.0) >= 2.0 / 3.0);
}

TEST_CASE("monomial export matches the stable evaluation at low degree") {
  auto p = amp_const_to_small(0.3);  // degree 23, still fine for Horner
  for (int i = 0; i <= 100; ++i) {
    double x = -1.0 + 2.0 * i / 100.0;
    CHECK(eval_poly(p.poly, x) == doctest::Approx(p.p_stable(x)).epsilon(1e-6));
  }
}
