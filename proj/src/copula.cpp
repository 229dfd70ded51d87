// SPDX-License-Identifier: Apache-2.0

#include "fabc/copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fabc/errors.hpp"

namespace fabc {

CopulaSpec CopulaSpec::independence(int dimension) {
  if (dimension < 1) throw DomainError("copula dimension must be >= 1");
  CopulaSpec spec;
  spec.kind_ = CopulaKind::independence;
  spec.dimension_ = dimension;
  return spec;
}

CopulaSpec CopulaSpec::clayton(int dimension, double theta) {
  if (!(theta >= 0.0) || std::isinf(theta)) {
    throw DomainError("Clayton theta must be finite and >= 0, got " + std::to_string(theta));
  }
  if (theta <= kIndependenceTheta) return independence(dimension);
  CopulaSpec spec = independence(dimension);
  spec.kind_ = CopulaKind::clayton_homogeneous;
  spec.theta_ = theta;
  return spec;
}

CopulaSpec CopulaSpec::paper_literal(Eigen::VectorXd thetas, OuterIndexRule rule) {
  if (thetas.size() < 1) throw DomainError("paper-literal copula needs at least one theta");
  for (Eigen::Index k = 0; k < thetas.size(); ++k) {
    if (!(thetas(k) >= 0.0) || std::isinf(thetas(k))) {
      throw DomainError("paper-literal theta must be finite and >= 0");
    }
  }
  CopulaSpec spec = independence(static_cast<int>(thetas.size()));
  spec.kind_ = CopulaKind::clayton_paper_literal;
  spec.rule_ = rule;
  switch (rule) {
    case OuterIndexRule::last_port: spec.theta_ = thetas(thetas.size() - 1); break;
    case OuterIndexRule::mean_theta: spec.theta_ = thetas.mean(); break;
    case OuterIndexRule::max_theta: spec.theta_ = thetas.maxCoeff(); break;
  }
  spec.thetas_ = std::move(thetas);
  return spec;
}

const char* to_string(CopulaKind kind) {
  switch (kind) {
    case CopulaKind::clayton_homogeneous: return "homogeneous";
    case CopulaKind::clayton_paper_literal: return "paper-literal";
    case CopulaKind::independence: return "independence";
  }
  return "?";
}

const char* to_string(OuterIndexRule rule) {
  switch (rule) {
    case OuterIndexRule::last_port: return "last";
    case OuterIndexRule::mean_theta: return "mean";
    case OuterIndexRule::max_theta: return "max";
  }
  return "?";
}

namespace {

// C = exp(-log(1 + sum_k expm1(a_k)) / theta_out) with a_k = -theta_k log u_k.
// Switches to a log-sum-exp form once any a_k is large enough to overflow.
double clayton_generic(const Eigen::Ref<const Eigen::VectorXd>& u, const Eigen::VectorXd* thetas,
                       double theta, double theta_out) {
  const Eigen::Index n = u.size();
  double max_a = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = thetas ? (*thetas)(k) : theta;
    max_a = std::max(max_a, -t * std::log(u(k)));
  }
  double log_base;
  if (max_a <= 30.0) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = thetas ? (*thetas)(k) : theta;
      s += std::expm1(-t * std::log(u(k)));
    }
    log_base = std::log1p(s);
  } else {
    if (std::isinf(max_a)) return 0.0;
    double s = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = thetas ? (*thetas)(k) : theta;
      s += std::exp(-t * std::log(u(k)) - max_a);
    }
    s -= static_cast<double>(n - 1) * std::exp(-max_a);
    log_base = max_a + std::log(s);
  }
  return std::exp(-log_base / theta_out);
}

void check_dimension(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec) {
  if (u.size() != spec.dimension()) {
    throw DomainError("copula argument has " + std::to_string(u.size()) + " coordinates, spec has dimension " +
                      std::to_string(spec.dimension()));
  }
}

}  // namespace

double copula_formula(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec) {
  check_dimension(u, spec);
  switch (spec.kind()) {
    case CopulaKind::independence:
      return u.prod();
    case CopulaKind::clayton_homogeneous:
      return clayton_generic(u, nullptr, spec.theta(), spec.theta());
    case CopulaKind::clayton_paper_literal:
      if (spec.theta() <= kIndependenceTheta) return u.prod();
      return clayton_generic(u, &spec.thetas(), 0.0, spec.theta());
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double copula_cdf(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec) {
  check_dimension(u, spec);
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (!(u(k) >= 0.0 && u(k) <= 1.0)) {
      throw DomainError("copula_cdf: coordinate " + std::to_string(k) + " = " + std::to_string(u(k)) +
                        " outside [0, 1]");
    }
  }
  if (u.minCoeff() == 0.0) return 0.0;
  return copula_formula(u, spec);
}

bool copula_upper_bound_check(const Eigen::Ref<const Eigen::VectorXd>& u, const CopulaSpec& spec) {
  const double c = copula_cdf(u, spec);
  const double upper = u.minCoeff();
  const double lower = std::max(0.0, u.sum() - static_cast<double>(u.size() - 1));
  return c <= upper + 1e-12 && c >= lower - 1e-12;
}

double spearman_rho_numeric(double theta, int grid_n) {
  if (!(theta > 0.0)) throw DomainError("spearman_rho_numeric: theta must be > 0");
  if (grid_n < 2) throw DomainError("spearman_rho_numeric: grid_n must be >= 2");
  if (grid_n % 2) ++grid_n;

  const double h = 1.0 / grid_n;
  // a_i = u_i^-theta - 1, so C(u_i, u_j) = (1 + a_i + a_j)^(-1/theta).
  std::vector<double> a(grid_n + 1);
  std::vector<double> w(grid_n + 1);
  for (int i = 0; i <= grid_n; ++i) {
    const double ui = i * h;
    a[i] = i == 0 ? std::numeric_limits<double>::infinity() : std::expm1(-theta * std::log(ui));
    w[i] = (i == 0 || i == grid_n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  }
  double total = 0.0;
  for (int i = 1; i <= grid_n; ++i) {
    double row = 0.0;
    for (int j = 1; j <= grid_n; ++j) {
      row += w[j] * std::exp(-std::log1p(a[i] + a[j]) / theta);
    }
    total += w[i] * row;
  }
  const double integral = total * h * h / 9.0;
  return 12.0 * integral - 3.0;
}

namespace {

double checked_sampler_theta(int dimension, double theta) {
  if (!(theta > 0.0) || std::isinf(theta)) throw DomainError("Clayton sampler needs finite theta > 0");
  if (dimension < 1) throw DomainError("Clayton sampler dimension must be >= 1");
  return theta;
}

}  // namespace

ClaytonRowSampler::ClaytonRowSampler(int dimension, double theta)
    : dimension_(dimension),
      inv_theta_(1.0 / checked_sampler_theta(dimension, theta)),
      inv_shape_(theta),
      boosted_(1.0 / theta < 1.0),
      gamma_(boosted_ ? 1.0 / theta + 1.0 : 1.0 / theta, 1.0) {}

void ClaytonRowSampler::draw(rng::Engine& engine, std::span<double> row) {
  // Shape < 1: Gamma(a) = Gamma(a + 1) * U^(1/a), kept in logs.
  double log_v = std::log(gamma_(engine));
  if (boosted_) log_v += std::log(rng::open_uniform(engine)) * inv_shape_;
  for (int k = 0; k < dimension_; ++k) {
    const double e = rng::standard_exponential(engine);
    // log1p(e / v) computed as softplus(log(e / v)).
    const double l = std::log(e) - log_v;
    const double softplus = l > 35.0 ? l + std::exp(-l) : std::log1p(std::exp(l));
    row[k] = std::exp(-softplus * inv_theta_);
  }
}

Eigen::MatrixXd sample_clayton(int dimension, double theta, std::int64_t count, std::uint64_t seed,
                               unsigned workers) {
  if (!(theta > 0.0)) throw DomainError("sample_clayton: theta must be > 0 (use independent uniforms for theta = 0)");
  if (count < 1) throw DomainError("sample_clayton: count must be >= 1");
  if (dimension < 1) throw DomainError("sample_clayton: dimension must be >= 1");
  Eigen::MatrixXd out(count, dimension);
  rng::for_each_block(count, workers, [&](std::int64_t block, std::int64_t begin, std::int64_t end) {
    rng::Engine engine = rng::substream(seed, static_cast<std::uint64_t>(block));
    ClaytonRowSampler sampler(dimension, theta);
    std::vector<double> row(dimension);
    for (std::int64_t i = begin; i < end; ++i) {
      sampler.draw(engine, row);
      for (int k = 0; k < dimension; ++k) out(i, k) = row[k];
    }
  });
  return out;
}

}  // namespace fabc
