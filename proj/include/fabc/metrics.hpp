// SPDX-License-Identifier: Apache-2.0
//
// Closed-form link metrics: the CDF of the best-port gain
//   g_FA = max_k g_f g_b,k,
// the outage probability, the delay outage rate and their high-SNR asymptotes.

#ifndef FABC_METRICS_HPP
#define FABC_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fabc/channel.hpp"
#include "fabc/copula.hpp"

namespace fabc {

/// How a copula is derived from a port correlation profile.
enum class CopulaMode { homogeneous, paper_literal, independence };

struct CopulaOptions {
  CopulaMode mode = CopulaMode::homogeneous;
  OuterIndexRule outer_rule = OuterIndexRule::last_port;
  /// Replaces the profile's homogeneous theta when set (must be >= 0).
  std::optional<double> theta_override{};
  double clamp_floor = kDefaultClampFloor;
};

const char* to_string(CopulaMode mode);

/// Default: homogeneous Clayton with theta from the last port's correlation.
/// A single port always yields the one-dimensional independence copula.
CopulaSpec make_copula(const PortCorrelationProfile& profile, const CopulaOptions& options = {});

enum class MetricMode { exact, asymptotic, paper_literal };

const char* to_string(MetricMode mode);

struct MetricResult {
  double value = 0.0;
  MetricMode mode = MetricMode::exact;
  SystemConfig config;
  CopulaKind copula = CopulaKind::clayton_homogeneous;
  std::vector<std::string> warnings;
};

/// paper: T = 2^(R / (B T_th)); corrected: T = 2^(R / (B T_th)) - 1.
enum class DorThresholdMode { paper, corrected };

const char* to_string(DorThresholdMode mode);

/// Normalised delay threshold T such that DOR = F_gFA(T / avg_snr).
double dor_threshold(const SystemConfig& config, DorThresholdMode mode);

/// F_gFA(r) = C(F(r), ..., F(r)).
double equivalent_channel_cdf(double r, const PortCorrelationProfile& profile, const CopulaSpec& spec);

/// Small-r approximation of the product-channel CDF, r [1 - 2 zeta - 2 log sqrt(r)].
double product_channel_cdf_asymptotic(double r);

MetricResult outage_probability(const SystemConfig& config, const CopulaSpec& spec);
MetricResult outage_probability(const SystemConfig& config, const CopulaOptions& options = {});

MetricResult delay_outage_rate(const SystemConfig& config, const CopulaSpec& spec,
                               DorThresholdMode mode = DorThresholdMode::paper);
MetricResult delay_outage_rate(const SystemConfig& config, const CopulaOptions& options = {},
                               DorThresholdMode mode = DorThresholdMode::paper);

/// High-SNR outage asymptote: the approximate marginal pushed through the
/// same copula expression as the exact value. Warns, rather than throws,
/// outside its regime.
MetricResult outage_probability_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile,
                                           const CopulaSpec& spec);
MetricResult outage_probability_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile);

MetricResult delay_outage_rate_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile,
                                          const CopulaSpec& spec, DorThresholdMode mode = DorThresholdMode::paper);
MetricResult delay_outage_rate_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile,
                                          DorThresholdMode mode = DorThresholdMode::paper);

}  // namespace fabc

#endif  // FABC_METRICS_HPP
