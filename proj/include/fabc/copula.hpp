// SPDX-License-Identifier: Apache-2.0
//
// Clayton copula evaluation and sampling.
//
//   C(u) = [ sum_k (u_k^-theta - 1) + 1 ]^(-1/theta)
//
// Three kinds are supported: the exchangeable Clayton copula with a single
// theta, the independence limit theta -> 0, and a "paper-literal" form where
// every port carries its own theta inside the sum and the outer exponent uses
// one port's theta. The paper-literal form is not a copula in general (its
// margins are u_k^(theta_k / theta_out)); it exists for diagnostics and is
// never sampled.

#ifndef FABC_COPULA_HPP
#define FABC_COPULA_HPP

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <span>

#include "fabc/random.hpp"

namespace fabc {

enum class CopulaKind { clayton_homogeneous, clayton_paper_literal, independence };

/// Which port's theta the paper-literal form uses in its outer exponent.
enum class OuterIndexRule { last_port, mean_theta, max_theta };

/// theta at or below this value is treated as independence.
inline constexpr double kIndependenceTheta = 1e-9;

class CopulaSpec {
 public:
  static CopulaSpec independence(int dimension);
  /// theta <= kIndependenceTheta routes to independence; negative theta throws.
  static CopulaSpec clayton(int dimension, double theta);
  static CopulaSpec paper_literal(Eigen::VectorXd thetas, OuterIndexRule rule = OuterIndexRule::last_port);

  CopulaKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  /// Homogeneous theta; 0 for independence; outer theta for paper-literal.
  double theta() const noexcept { return theta_; }
  /// Per-port thetas (paper-literal only; empty otherwise).
  const Eigen::VectorXd& thetas() const noexcept { return thetas_; }
  OuterIndexRule outer_rule() const noexcept { return rule_; }

 private:
  CopulaSpec() = default;

  CopulaKind kind_ = CopulaKind::independence;
  int dimension_ = 1;
  double theta_ = 0.0;
  Eigen::VectorXd thetas_;
  OuterIndexRule rule_ = OuterIndexRule::last_port;
};

const char* to_string(CopulaKind kind);
const char* to_string(OuterIndexRule rule);

/// Copula CDF. Every u_k must lie in [0, 1] and u.size() must equal the spec
/// dimension. A paper-literal spec whose outer theta is in the independence
/// range evaluates as the product of the u_k.
double copula_cdf(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec);

/// The same expression as copula_cdf without the [0, 1] domain check. Used by
/// the high-SNR asymptotes, whose approximate marginals can leave [0, 1];
/// returns NaN where the expression is undefined.
double copula_formula(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec);

/// Frechet-Hoeffding bounds:
///   max(0, sum u - (K-1)) - 1e-12 <= C(u) <= min u + 1e-12.
bool copula_upper_bound_check(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec);

/// Spearman's rho of the bivariate Clayton copula,
///   rho = 12 int int C(u, v) du dv - 3,
/// by composite Simpson on a grid_n x grid_n mesh.
double spearman_rho_numeric(double theta, int grid_n = 2000);

/// Draws rows of the Clayton copula by the gamma-frailty (Marshall-Olkin)
/// construction: V ~ Gamma(1/theta, 1), E_k ~ Exp(1),
/// U_k = (1 + E_k / V)^(-1/theta), i.e. the Gamma(1/theta) Laplace transform
/// at E_k / V. Computed in the log domain so large theta does not underflow V.
/// Holds distribution state; use one per stream.
class ClaytonRowSampler {
 public:
  ClaytonRowSampler(int dimension, double theta);

  void draw(rng::Engine& engine, std::span<double> row);

  int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
  double inv_theta_;
  double inv_shape_;
  bool boosted_;
  std::gamma_distribution<double> gamma_;
};

/// count x K matrix of Clayton draws; row block b uses sub-stream (seed, b).
Eigen::MatrixXd sample_clayton(int dimension, double theta, std::int64_t count, std::uint64_t seed,
                               unsigned workers = 0);

}  // namespace fabc

#endif  // FABC_COPULA_HPP
