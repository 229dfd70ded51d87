// SPDX-License-Identifier: Apache-2.0

#include "fabc/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fabc/errors.hpp"
#include "fabc/specfun.hpp"

namespace fabc {

namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw UsageError(std::string("invalid config field '") + field + "': " + why);
}

}  // namespace

void SystemConfig::validate() const {
  require(num_ports >= 1, "num_ports", "must be >= 1");
  require(std::isfinite(fa_size) && fa_size > 0.0, "fa_size", "must be finite and > 0");
  require(large_scale > 0.0 && large_scale <= 1.0, "large_scale", "must lie in (0, 1]");
  require(std::isfinite(avg_snr_db), "avg_snr_db", "must be finite");
  require(!std::isnan(snr_threshold_db) && snr_threshold_db < std::numeric_limits<double>::infinity(),
          "snr_threshold_db", "must be finite or -inf");
  require(std::isfinite(payload_bits) && payload_bits > 0.0, "payload_bits", "must be finite and > 0");
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth_hz", "must be finite and > 0");
  require(delay_threshold_s > 0.0, "delay_threshold_s", "must be > 0");
}

double db_to_linear(double x_db) {
  if (std::isnan(x_db)) throw DomainError("db_to_linear: NaN");
  return std::pow(10.0, x_db / 10.0);
}

double jake_correlation(int k, const SystemConfig& config) {
  const int ports = config.num_ports;
  if (k < 1 || k > ports) {
    throw DomainError("jake_correlation: port index " + std::to_string(k) + " outside 1.." +
                      std::to_string(ports));
  }
  if (ports == 1) return config.large_scale;
  const double arg = 2.0 * std::numbers::pi * (k - 1) * config.fa_size / (ports - 1);
  return config.large_scale * specfun::bessel_j0(arg);
}

DependenceParameter theta_from_mu(double mu, double clamp_floor) {
  if (!std::isfinite(mu)) throw DomainError("theta_from_mu: non-finite correlation");
  if (mu >= 1.5) throw DomainError("theta_from_mu: correlation " + std::to_string(mu) + " at or beyond the pole 1.5");
  if (mu < clamp_floor || mu <= 0.0) return {0.0, mu != 0.0};
  if (mu > 1.0) return {4.0, true};
  return {4.0 * mu / (3.0 - 2.0 * mu), false};
}

double spearman_rho_approx(double theta) {
  if (!(theta >= 0.0)) throw DomainError("spearman_rho_approx: theta must be >= 0");
  if (std::isinf(theta)) return 1.5;
  return 3.0 * theta / (2.0 * (theta + 2.0));
}

PortCorrelationProfile PortCorrelationProfile::from_config(const SystemConfig& config, double clamp_floor) {
  config.validate();
  PortCorrelationProfile p;
  const int ports = config.num_ports;
  p.clamp_floor_ = clamp_floor;
  p.mu_.resize(ports);
  p.theta_.resize(ports);
  for (int k = 1; k <= ports; ++k) {
    const double mu = jake_correlation(k, config);
    const DependenceParameter dep = theta_from_mu(mu, clamp_floor);
    p.mu_(k - 1) = mu;
    p.theta_(k - 1) = dep.theta;
    if (dep.clamped) p.clamped_ports_.push_back(k);
  }
  p.theta_scalar_ = p.theta_(ports - 1);
  return p;
}

ProductChannelLaw product_channel_law(double r) {
  if (!(r >= 0.0)) throw DomainError("product_channel_cdf: r must be >= 0");
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (r == 0.0) return {0.0, 1.0, inf};
  if (std::isinf(r)) return {1.0, 0.0, 0.0};

  if (r < 0.25) {
    // With c_k = r^k / (k!)^2:
    //   F(r)  = sum_k r c_k / (k+1) * [psi(k+1) + psi(k+2) - ln r]
    //   K0(x) = -(ln(r)/2 + gamma) sum_k c_k + sum_{k>=1} H_k c_k,  x = 2 sqrt(r)
    constexpr double gamma = specfun::euler_mascheroni();
    const double log_r = std::log(r);
    double c = 1.0;
    double harmonic = 0.0;
    double cdf = 0.0;
    double i0 = 0.0;
    double k0_sum = 0.0;
    for (int k = 0; k < 40; ++k) {
      if (k > 0) {
        c *= r / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
      }
      const double psi_sum = 2.0 * harmonic + 1.0 / (k + 1) - 2.0 * gamma;
      cdf += r * c / (k + 1) * (psi_sum - log_r);
      i0 += c;
      k0_sum += harmonic * c;
      if (c < 1e-18) break;
    }
    const double k0 = -(0.5 * log_r + gamma) * i0 + k0_sum;
    return {cdf, 1.0 - cdf, 2.0 * k0};
  }

  const double x = 2.0 * std::sqrt(r);
  const specfun::BesselK01 k = specfun::bessel_k01(x);
  const double sf = x * k.k1;
  return {1.0 - sf, sf, 2.0 * k.k0};
}

double product_channel_cdf(double r) { return product_channel_law(r).cdf; }

double product_channel_quantile(double u, double tol) {
  if (!(u >= 0.0) || !(u < 1.0)) {
    throw DomainError("product_channel_quantile: u must lie in [0, 1), got " + std::to_string(u));
  }
  if (!(tol > 0.0)) throw DomainError("product_channel_quantile: tol must be > 0");
  if (u == 0.0) return 0.0;

  // F(r) - u, evaluated through the survival function above the median so
  // the upper tail keeps its relative precision.
  const double tail = 1.0 - u;
  auto residual = [u, tail](const ProductChannelLaw& law) {
    return u < 0.5 ? law.cdf - u : tail - law.sf;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (residual(product_channel_law(hi)) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }

  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 4000; ++it) {
    r = 0.5 * (lo + hi);
    const double res = residual(product_channel_law(r));
    if (std::fabs(res) <= tol) break;
    if (res < 0.0) {
      lo = r;
    } else {
      hi = r;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }

  for (int step = 0; step < 2; ++step) {
    const ProductChannelLaw law = product_channel_law(r);
    const double res = residual(law);
    if (res == 0.0 || !(law.pdf > 0.0) || std::isinf(law.pdf)) break;
    const double candidate = r - res / law.pdf;
    if (!(candidate >= lo && candidate <= hi)) break;
    if (std::fabs(residual(product_channel_law(candidate))) > std::fabs(res)) break;
    r = candidate;
  }
  return r;
}

}  // namespace fabc
