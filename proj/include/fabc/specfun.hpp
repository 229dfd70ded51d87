// SPDX-License-Identifier: Apache-2.0
//
// Scalar special functions: J0, K0, K1 and the small-argument form of K1.
//
// All functions are pure and reentrant. Accuracy targets are expressed by
// AccuracyBudget and enforced in the test suite against independent
// long-double quadrature oracles.

#ifndef FABC_SPECFUN_HPP
#define FABC_SPECFUN_HPP

namespace fabc::specfun {

/// Mixed relative/absolute error bound. A value v passes against a
/// reference r when |v - r| <= rel_tol * |r| + abs_tol; the absolute part
/// only matters near zeros of the function.
class AccuracyBudget {
 public:
  AccuracyBudget() = default;
  AccuracyBudget(double rel_tol, double abs_tol);

  double rel_tol() const noexcept { return rel_tol_; }
  double abs_tol() const noexcept { return abs_tol_; }

  bool accepts(double value, double reference) const noexcept;

 private:
  double rel_tol_ = 1e-12;
  double abs_tol_ = 1e-14;
};

/// Euler-Mascheroni constant.
constexpr double euler_mascheroni() noexcept { return 0.57721566490153286061; }

/// Bessel function of the first kind, order zero. Even in x.
/// Throws DomainError for non-finite x.
double bessel_j0(double x);

struct BesselK01 {
  double k0;
  double k1;
};

/// Modified Bessel functions of the second kind, orders 0 and 1, computed
/// together (they share the series / continued-fraction work).
/// Requires x > 0. Returns {+inf, +inf} when 1/x overflows and {0, 0} for
/// x > 700.
BesselK01 bessel_k01(double x);

double bessel_k0(double x);
double bessel_k1(double x);

/// Three-term small-argument expansion
///   K1(r) ~ 1/r + (r/4)(2*zeta - 1) + (r/2) log(r/2).
/// Requires r > 0.
double k1_small_arg(double r);

}  // namespace fabc::specfun

#endif  // FABC_SPECFUN_HPP
