// SPDX-License-Identifier: Apache-2.0

#include "fabc/metrics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fabc/errors.hpp"
#include "fabc/specfun.hpp"

namespace fabc {

const char* to_string(CopulaMode mode) {
  switch (mode) {
    case CopulaMode::homogeneous: return "homogeneous";
    case CopulaMode::paper_literal: return "paper-literal";
    case CopulaMode::independence: return "independence";
  }
  return "?";
}

const char* to_string(MetricMode mode) {
  switch (mode) {
    case MetricMode::exact: return "exact";
    case MetricMode::asymptotic: return "asymptotic";
    case MetricMode::paper_literal: return "paper-literal";
  }
  return "?";
}

const char* to_string(DorThresholdMode mode) {
  return mode == DorThresholdMode::paper ? "paper" : "corrected";
}

CopulaSpec make_copula(const PortCorrelationProfile& profile, const CopulaOptions& options) {
  const int ports = profile.num_ports();
  if (ports == 1) return CopulaSpec::independence(1);
  switch (options.mode) {
    case CopulaMode::independence:
      return CopulaSpec::independence(ports);
    case CopulaMode::paper_literal:
      return CopulaSpec::paper_literal(profile.theta(), options.outer_rule);
    case CopulaMode::homogeneous:
      break;
  }
  const double theta = options.theta_override.value_or(profile.theta_scalar());
  if (!(theta >= 0.0)) throw UsageError("copula theta must be >= 0, got " + std::to_string(theta));
  return CopulaSpec::clayton(ports, theta);
}

double dor_threshold(const SystemConfig& config, DorThresholdMode mode) {
  const double exponent = config.payload_bits * std::numbers::ln2 / (config.bandwidth_hz * config.delay_threshold_s);
  return mode == DorThresholdMode::paper ? std::exp(exponent) : std::expm1(exponent);
}

double equivalent_channel_cdf(double r, const PortCorrelationProfile& profile, const CopulaSpec& spec) {
  const int ports = profile.num_ports();
  if (spec.dimension() != ports) {
    throw DomainError("copula dimension " + std::to_string(spec.dimension()) + " does not match " +
                      std::to_string(ports) + " ports");
  }
  const double marginal = product_channel_cdf(r);
  if (ports == 1) return marginal;
  if (spec.kind() == CopulaKind::independence) return std::pow(marginal, ports);
  return copula_cdf(Eigen::VectorXd::Constant(ports, marginal), spec);
}

double product_channel_cdf_asymptotic(double r) {
  if (!(r >= 0.0)) throw DomainError("product_channel_cdf_asymptotic: r must be >= 0");
  if (r == 0.0) return 0.0;
  return r * (1.0 - 2.0 * specfun::euler_mascheroni() - 2.0 * std::log(std::sqrt(r)));
}

namespace {

void add_profile_warnings(const PortCorrelationProfile& profile, const CopulaSpec& spec,
                          std::vector<std::string>& warnings) {
  if (!profile.clamped_ports().empty()) {
    std::ostringstream os;
    os << "port correlation clamped into the Clayton domain at ports";
    for (int k : profile.clamped_ports()) os << ' ' << k << " (mu=" << profile.mu()(k - 1) << ')';
    warnings.push_back(os.str());
  }
  if (spec.kind() == CopulaKind::clayton_paper_literal) {
    warnings.emplace_back("paper-literal copula is a diagnostic form and not a valid copula in general");
    if (spec.theta() <= kIndependenceTheta) {
      warnings.emplace_back("paper-literal outer theta is in the independence range; evaluated as a product");
    }
  }
}

MetricResult exact_at(double r, const SystemConfig& config, const CopulaSpec& spec) {
  const auto profile = PortCorrelationProfile::from_config(config);
  MetricResult out;
  out.value = equivalent_channel_cdf(r, profile, spec);
  out.mode = spec.kind() == CopulaKind::clayton_paper_literal ? MetricMode::paper_literal : MetricMode::exact;
  out.config = config;
  out.copula = spec.kind();
  add_profile_warnings(profile, spec, out.warnings);
  return out;
}

MetricResult asymptote_at(double r, const SystemConfig& config, const PortCorrelationProfile& profile,
                          const CopulaSpec& spec) {
  if (spec.dimension() != profile.num_ports()) {
    throw DomainError("copula dimension does not match the port profile");
  }
  MetricResult out;
  out.mode = MetricMode::asymptotic;
  out.config = config;
  out.copula = spec.kind();
  add_profile_warnings(profile, spec, out.warnings);

  const double marginal = product_channel_cdf_asymptotic(r);
  const int ports = profile.num_ports();
  out.value = ports == 1 ? marginal : copula_formula(Eigen::VectorXd::Constant(ports, marginal), spec);

  if (r >= 1.0) {
    std::ostringstream os;
    os << "outside the high-SNR regime: normalised threshold " << r << " >= 1";
    out.warnings.push_back(os.str());
  }
  if (!(marginal >= 0.0 && marginal <= 1.0)) {
    std::ostringstream os;
    os << "asymptotic marginal " << marginal << " outside [0, 1]";
    out.warnings.push_back(os.str());
  }
  if (!(out.value >= 0.0 && out.value <= 1.0)) {
    std::ostringstream os;
    os << "asymptotic value " << out.value << " outside [0, 1]";
    out.warnings.push_back(os.str());
  }
  return out;
}

double outage_ratio(const SystemConfig& config) {
  return db_to_linear(config.snr_threshold_db) / db_to_linear(config.avg_snr_db);
}

}  // namespace

MetricResult outage_probability(const SystemConfig& config, const CopulaSpec& spec) {
  config.validate();
  return exact_at(outage_ratio(config), config, spec);
}

MetricResult outage_probability(const SystemConfig& config, const CopulaOptions& options) {
  const auto profile = PortCorrelationProfile::from_config(config, options.clamp_floor);
  return outage_probability(config, make_copula(profile, options));
}

MetricResult delay_outage_rate(const SystemConfig& config, const CopulaSpec& spec, DorThresholdMode mode) {
  config.validate();
  return exact_at(dor_threshold(config, mode) / db_to_linear(config.avg_snr_db), config, spec);
}

MetricResult delay_outage_rate(const SystemConfig& config, const CopulaOptions& options, DorThresholdMode mode) {
  const auto profile = PortCorrelationProfile::from_config(config, options.clamp_floor);
  return delay_outage_rate(config, make_copula(profile, options), mode);
}

MetricResult outage_probability_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile,
                                           const CopulaSpec& spec) {
  config.validate();
  return asymptote_at(outage_ratio(config), config, profile, spec);
}

MetricResult outage_probability_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile) {
  return outage_probability_asymptotic(config, profile, make_copula(profile));
}

MetricResult delay_outage_rate_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile,
                                          const CopulaSpec& spec, DorThresholdMode mode) {
  config.validate();
  return asymptote_at(dor_threshold(config, mode) / db_to_linear(config.avg_snr_db), config, profile, spec);
}

MetricResult delay_outage_rate_asymptotic(const SystemConfig& config, const PortCorrelationProfile& profile,
                                          DorThresholdMode mode) {
  return delay_outage_rate_asymptotic(config, profile, make_copula(profile), mode);
}

}  // namespace fabc
