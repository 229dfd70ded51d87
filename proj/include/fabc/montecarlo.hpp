// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo oracle for the closed forms: draws correlated port uniforms
// from the copula, maps them to product-channel gains and counts outage and
// delay-outage events. Blocks of draws use fixed sub-seeds, so estimates are
// identical for any number of workers.

#ifndef FABC_MONTECARLO_HPP
#define FABC_MONTECARLO_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "fabc/channel.hpp"
#include "fabc/copula.hpp"
#include "fabc/metrics.hpp"

namespace fabc {

inline constexpr std::int64_t kMinMcSamples = 10000;
inline constexpr std::int64_t kDefaultMcSamples = 1000000;

struct McEstimate {
  double estimate = 0.0;
  /// sqrt(p (1 - p) / n) at the estimate.
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t hits = 0;
  /// 95% interval: normal approximation, Wilson below 1e-3; clipped to [0, 1].
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  double elapsed_s = 0.0;
};

McEstimate make_estimate(std::int64_t hits, std::int64_t n, std::uint64_t seed, double elapsed_s = 0.0);

/// Product-channel quantile from a table of log Q on a grid uniform in
/// logit(u) over [-40, 30], followed by two Newton steps. Arguments off the
/// grid fall back to exact inversion.
class QuantileCache {
 public:
  static constexpr int kGridPoints = 10000;
  static constexpr double kLogitLow = -40.0;
  static constexpr double kLogitHigh = 30.0;

  static const QuantileCache& shared();

  /// u in (0, 1]; u == 1 gives +inf.
  double operator()(double u) const;

  /// Largest relative deviation from exact inversion over `probes`
  /// logit-uniform points drawn from `seed`.
  double max_relative_error(std::uint64_t seed, int probes = 100) const;

 private:
  QuantileCache();

  std::vector<double> log_q_;
};

/// Quantile by exact inversion, tight enough for relative accuracy in both tails.
double exact_gain_quantile(double u);

/// g_FA = max_k Q(U_k) = Q(max_k U_k) for `count` copula draws. The cached
/// quantile is used only if it passes the 100-probe check at 1e-8.
Eigen::VectorXd sample_equivalent_gain(const PortCorrelationProfile& profile, const CopulaSpec& spec,
                                       std::int64_t count, std::uint64_t seed, unsigned workers = 0);

/// Fraction of draws with g_FA <= gamma_th / avg_snr. n >= 1e4.
McEstimate estimate_outage(const SystemConfig& config, const CopulaSpec& spec, std::int64_t n, std::uint64_t seed,
                           unsigned workers = 0);

/// Fraction of draws whose delivery time R / (B log2(1 + avg_snr g_FA))
/// exceeds T_th. The event is simulated from its definition, so `mode` only
/// selects which closed form the caller intends to compare against.
McEstimate estimate_dor(const SystemConfig& config, const CopulaSpec& spec, DorThresholdMode mode, std::int64_t n,
                        std::uint64_t seed, unsigned workers = 0);

}  // namespace fabc

#endif  // FABC_MONTECARLO_HPP
