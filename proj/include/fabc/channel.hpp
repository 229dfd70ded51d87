// SPDX-License-Identifier: Apache-2.0
//
// Physical-layer configuration, the spatial correlation between fluid
// antenna ports, the forward x backscatter product-channel law, and the
// mapping from port correlation to Clayton dependence.

#ifndef FABC_CHANNEL_HPP
#define FABC_CHANNEL_HPP

#include <Eigen/Core>
#include <vector>

namespace fabc {

/// Physical and link-level parameters of one fluid-antenna backscatter link.
/// Defaults reproduce the reference operating point (K = 4, W = 1).
struct SystemConfig {
  int num_ports = 4;                 // K
  double fa_size = 1.0;              // W, in wavelengths
  double large_scale = 1.0;          // omega, in (0, 1]
  double avg_snr_db = 20.0;          // average SNR
  double snr_threshold_db = 0.0;     // outage threshold
  double payload_bits = 5000.0;      // R
  double bandwidth_hz = 2e9;         // B
  double delay_threshold_s = 3e-3;   // T_th

  /// Throws UsageError naming the first offending field.
  void validate() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// 10^(x/10). -inf maps to 0.
double db_to_linear(double x_db);

/// mu_k = omega * J0(2 pi (k-1) W / (K-1)) for the 1-based port k. A single
/// port returns omega.
double jake_correlation(int k, const SystemConfig& config);

/// theta obtained from a port correlation, plus whether the value had to be
/// clamped into the Clayton domain.
struct DependenceParameter {
  double theta = 0.0;
  bool clamped = false;
};

inline constexpr double kDefaultClampFloor = 1e-6;

/// theta = 4 mu / (3 - 2 mu). Correlations below clamp_floor map to the
/// independence limit theta = 0; correlations above 1 are capped at
/// theta(1) = 4. Both cases set `clamped`. mu >= 1.5 (the pole) throws.
DependenceParameter theta_from_mu(double mu, double clamp_floor = kDefaultClampFloor);

/// Spearman's rho of the Clayton copula, closed-form approximation
/// 3 theta / (2 (theta + 2)).
double spearman_rho_approx(double theta);

/// Per-port correlations and dependence parameters for one configuration.
/// Immutable once built.
class PortCorrelationProfile {
 public:
  static PortCorrelationProfile from_config(const SystemConfig& config,
                                            double clamp_floor = kDefaultClampFloor);

  int num_ports() const noexcept { return static_cast<int>(mu_.size()); }
  const Eigen::VectorXd& mu() const noexcept { return mu_; }
  const Eigen::VectorXd& theta() const noexcept { return theta_; }
  /// theta of the last port, used by the homogeneous copula.
  double theta_scalar() const noexcept { return theta_scalar_; }
  /// 1-based indices of ports whose correlation was clamped.
  const std::vector<int>& clamped_ports() const noexcept { return clamped_ports_; }
  double clamp_floor() const noexcept { return clamp_floor_; }

 private:
  PortCorrelationProfile() = default;

  Eigen::VectorXd mu_;
  Eigen::VectorXd theta_;
  double theta_scalar_ = 0.0;
  std::vector<int> clamped_ports_;
  double clamp_floor_ = kDefaultClampFloor;
};

/// CDF, survival function and density of the product of two independent
/// unit-mean exponentials, evaluated together.
struct ProductChannelLaw {
  double cdf;
  double sf;
  double pdf;
};

/// F(r) = 1 - 2 sqrt(r) K1(2 sqrt(r)) along with 1 - F and f(r) = 2 K0(2 sqrt(r)).
/// Small r uses a cancellation-free series so F keeps full relative precision.
ProductChannelLaw product_channel_law(double r);

double product_channel_cdf(double r);

/// r with |F(r) - u| <= tol, by bracket doubling from [0, 1],
/// bisection, and two Newton polish steps.
double product_channel_quantile(double u, double tol = 1e-12);

}  // namespace fabc

#endif  // FABC_CHANNEL_HPP
