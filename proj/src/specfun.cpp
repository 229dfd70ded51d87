// SPDX-License-Identifier: Apache-2.0

#include "fabc/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fabc/errors.hpp"

namespace fabc::specfun {

AccuracyBudget::AccuracyBudget(double rel_tol, double abs_tol) : rel_tol_(rel_tol), abs_tol_(abs_tol) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("AccuracyBudget: tolerances must be positive");
  }
}

bool AccuracyBudget::accepts(double value, double reference) const noexcept {
  return std::fabs(value - reference) <= rel_tol_ * std::fabs(reference) + abs_tol_;
}

namespace {

using ld = long double;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;

// Power series, |x| <= 12. Largest term is ~4e3, so the long double
// accumulator keeps the absolute error near 1e-16.
double j0_series(double x) {
  const ld y = -static_cast<ld>(x) * x / 4.0L;
  ld term = 1.0L;
  ld sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= y / (static_cast<ld>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

// Miller's backward recurrence normalised by J0 + 2 sum J_2k = 1.
double j0_miller(double x) {
  const ld xl = x;
  const int start = 2 * static_cast<int>((1.5 * x + 60.0) / 2.0);
  ld next = 0.0L;
  ld cur = 1e-30L;
  ld norm = 0.0L;
  for (int k = start; k >= 1; --k) {
    const ld prev = (2.0L * k / xl) * cur - next;
    next = cur;
    cur = prev;
    // cur now holds the order k-1 value.
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * cur;
  }
  norm += cur;
  return static_cast<double>(cur / norm);
}

// Hankel asymptotic expansion; truncation error ~exp(-2x), negligible for x >= 30.
double j0_hankel(double x) {
  const ld xl = x;
  ld p = 1.0L;
  ld q = 0.0L;
  ld term = 1.0L;
  for (int k = 1; k < 60; ++k) {
    const ld next = term * (2.0L * k - 1) * (2.0L * k - 1) / (8.0L * k * xl);
    if (next > term) break;
    term = next;
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      default: p += term; break;
    }
    if (term < 1e-22L) break;
  }
  // cos(x - pi/4) and sin(x - pi/4) without rounding pi/4 into x.
  const ld c = std::cos(xl);
  const ld s = std::sin(xl);
  const ld cos_chi = (c + s) / std::sqrt(2.0L);
  const ld sin_chi = (s - c) / std::sqrt(2.0L);
  const ld amp = std::sqrt(2.0L / (kPiL * xl));
  return static_cast<double>(amp * (p * cos_chi - q * sin_chi));
}

// Ascending series, used for x <= 1 (A&S 9.6.11 and 9.6.13).
BesselK01 k01_series(double x) {
  const double y = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  constexpr double gamma = euler_mascheroni();

  double c = 1.0;           // y^k / (k!)^2
  double harmonic = 0.0;    // H_k
  double i0 = 0.0;
  double i1_sum = 0.0;      // I1 = (x/2) * i1_sum
  double k0_sum = 0.0;      // sum_{k>=1} H_k c_k
  double k1_sum = 0.0;      // sum_k [psi(k+1) + psi(k+2)] c_k / (k+1)
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      c *= y / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
    }
    const double d = c / (k + 1);
    i0 += c;
    i1_sum += d;
    k0_sum += harmonic * c;
    const double psi_sum = 2.0 * harmonic + 1.0 / (k + 1) - 2.0 * gamma;
    k1_sum += psi_sum * d;
    if (c < 1e-18 * i0) break;
  }
  BesselK01 out;
  out.k0 = -(log_half + gamma) * i0 + k0_sum;
  out.k1 = 1.0 / x + log_half * (0.5 * x * i1_sum) - 0.25 * x * k1_sum;
  return out;
}

// Steed's continued fraction (Temme's CF2) for order 0, x >= 1; returns the
// exponentially scaled pair e^x K0, e^x K1.
BesselK01 k01_scaled_cf2(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < 1e-17) break;
  }
  h *= a1;
  BesselK01 out;
  out.k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  out.k1 = out.k0 * (x + 0.5 - h) / x;
  return out;
}

// Piecewise Chebyshev interpolants of e^x sqrt(x) K0(x) and e^x sqrt(x) K1(x)
// for x > kSeriesCut, in the variable z = 1/x split into octaves
// [1/2,1], [1/4,1/2], ..., [0, 1/64]. Both functions are smooth in z; the
// tables are built once from CF2 and replace its 50-150 iterations per call.
constexpr double kSeriesCut = 1.0;
constexpr int kChebDegree = 20;
constexpr int kOctaves = 7;

struct ChebyshevK01 {
  struct Piece {
    double z_lo = 0.0;
    double z_hi = 0.0;
    std::array<double, kChebDegree> c0{};
    std::array<double, kChebDegree> c1{};
  };
  std::array<Piece, kOctaves> pieces{};

  ChebyshevK01() {
    constexpr int n = kChebDegree;
    for (int p = 0; p < kOctaves; ++p) {
      Piece& piece = pieces[p];
      piece.z_hi = std::ldexp(1.0, -p);
      piece.z_lo = p + 1 == kOctaves ? 0.0 : std::ldexp(1.0, -p - 1);
      std::array<double, n> f0{};
      std::array<double, n> f1{};
      for (int j = 0; j < n; ++j) {
        const double t = std::cos(std::numbers::pi * (j + 0.5) / n);
        const double z = piece.z_lo + 0.5 * (t + 1.0) * (piece.z_hi - piece.z_lo);
        const double x = 1.0 / z;
        const BesselK01 v = k01_scaled_cf2(x);
        f0[j] = v.k0 * std::sqrt(x);
        f1[j] = v.k1 * std::sqrt(x);
      }
      for (int k = 0; k < n; ++k) {
        double s0 = 0.0;
        double s1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double w = std::cos(std::numbers::pi * k * (j + 0.5) / n);
          s0 += f0[j] * w;
          s1 += f1[j] * w;
        }
        piece.c0[k] = 2.0 * s0 / n;
        piece.c1[k] = 2.0 * s1 / n;
      }
    }
  }

  BesselK01 scaled(double x) const {
    const double z = 1.0 / x;
    const int p = std::min(kOctaves - 1, std::max(0, -std::ilogb(z) - 1));
    const Piece& piece = pieces[p];
    const double t = 2.0 * (z - piece.z_lo) / (piece.z_hi - piece.z_lo) - 1.0;
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
    for (int k = kChebDegree - 1; k >= 1; --k) {
      const double a0 = 2.0 * t * a1 - a2 + piece.c0[k];
      const double b0 = 2.0 * t * b1 - b2 + piece.c1[k];
      a2 = a1;
      a1 = a0;
      b2 = b1;
      b1 = b0;
    }
    const double inv_sqrt = std::sqrt(z);
    return {(t * a1 - a2 + 0.5 * piece.c0[0]) * inv_sqrt, (t * b1 - b2 + 0.5 * piece.c1[0]) * inv_sqrt};
  }
};

const ChebyshevK01& chebyshev_k01() {
  static const ChebyshevK01 table;
  return table;
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || std::isnan(x)) {
    throw DomainError(std::string(name) + ": argument must be > 0, got " + std::to_string(x));
  }
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite argument");
  x = std::fabs(x);
  if (x <= 12.0) return j0_series(x);
  if (x < 30.0) return j0_miller(x);
  return j0_hankel(x);
}

BesselK01 bessel_k01(double x) {
  require_positive(x, "bessel_k01");
  if (std::isinf(x) || x > 700.0) return {0.0, 0.0};
  if (std::isinf(1.0 / x)) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  if (x <= kSeriesCut) return k01_series(x);
  const BesselK01 scaled = chebyshev_k01().scaled(x);
  const double e = std::exp(-x);
  return {scaled.k0 * e, scaled.k1 * e};
}

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  return bessel_k01(x).k0;
}

double bessel_k1(double x) {
  require_positive(x, "bessel_k1");
  return bessel_k01(x).k1;
}

double k1_small_arg(double r) {
  require_positive(r, "k1_small_arg");
  return 1.0 / r + 0.25 * r * (2.0 * euler_mascheroni() - 1.0) + 0.5 * r * std::log(0.5 * r);
}

}  // namespace fabc::specfun
