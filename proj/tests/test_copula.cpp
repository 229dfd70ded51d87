// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fabc/copula.hpp"
#include "fabc/errors.hpp"
#include "oracles.hpp"

using namespace fabc;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(v.size());
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

std::vector<CopulaSpec> valid_specs(int dim) {
  return {CopulaSpec::independence(dim), CopulaSpec::clayton(dim, 0.1), CopulaSpec::clayton(dim, 1.0),
          CopulaSpec::clayton(dim, 5.0), CopulaSpec::clayton(dim, 200.0)};
}

// Pearson correlation of ranks.
double rank_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  auto ranks = [](const Eigen::VectorXd& v) {
    std::vector<Eigen::Index> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v(i) < v(j); });
    Eigen::VectorXd r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r(idx[i]) = static_cast<double>(i);
    return r;
  };
  const Eigen::VectorXd ra = ranks(a);
  const Eigen::VectorXd rb = ranks(b);
  const Eigen::VectorXd ca = ra.array() - ra.mean();
  const Eigen::VectorXd cb = rb.array() - rb.mean();
  return ca.dot(cb) / std::sqrt(ca.squaredNorm() * cb.squaredNorm());
}

}  // namespace

TEST(CopulaSpec, Construction) {
  EXPECT_EQ(CopulaSpec::clayton(3, 2.0).kind(), CopulaKind::clayton_homogeneous);
  EXPECT_EQ(CopulaSpec::clayton(3, 1e-9).kind(), CopulaKind::independence);
  EXPECT_EQ(CopulaSpec::clayton(3, 0.0).kind(), CopulaKind::independence);
  EXPECT_THROW(CopulaSpec::clayton(3, -0.1), DomainError);
  EXPECT_THROW(CopulaSpec::independence(0), DomainError);
  const auto lit = CopulaSpec::paper_literal(vec({4.0, 1.0, 0.5}));
  EXPECT_EQ(lit.theta(), 0.5);
  EXPECT_EQ(CopulaSpec::paper_literal(vec({4.0, 1.0, 0.5}), OuterIndexRule::max_theta).theta(), 4.0);
  EXPECT_NEAR(CopulaSpec::paper_literal(vec({4.0, 1.0, 1.0}), OuterIndexRule::mean_theta).theta(), 2.0, 1e-15);
  EXPECT_THROW(CopulaSpec::paper_literal(vec({1.0, -1.0})), DomainError);
}

TEST(CopulaCdf, Values) {
  for (const auto& s : valid_specs(3)) EXPECT_NEAR(copula_cdf(vec({1, 1, 1}), s), 1.0, 1e-15);
  EXPECT_NEAR(copula_cdf(vec({0.5, 0.5}), CopulaSpec::clayton(2, 2.0)), 1.0 / std::sqrt(7.0), 1e-15);
  EXPECT_NEAR(copula_cdf(vec({0.3, 0.8}), CopulaSpec::independence(2)), 0.24, 1e-16);
  EXPECT_EQ(copula_cdf(vec({0.0, 0.8}), CopulaSpec::clayton(2, 2.0)), 0.0);
  EXPECT_THROW(copula_cdf(vec({1.2, 0.8}), CopulaSpec::clayton(2, 2.0)), DomainError);
  EXPECT_THROW(copula_cdf(vec({0.2, -0.1}), CopulaSpec::independence(2)), DomainError);
  EXPECT_THROW(copula_cdf(vec({0.2, 0.1, 0.3}), CopulaSpec::independence(2)), DomainError);
}

TEST(CopulaCdf, PaperLiteralForm) {
  const auto s = CopulaSpec::paper_literal(vec({2.0, 1.0}));
  const double expect = std::pow(std::pow(0.4, -2.0) - 1 + std::pow(0.6, -1.0) - 1 + 1, -1.0);
  EXPECT_NEAR(copula_cdf(vec({0.4, 0.6}), s), expect, 1e-15);
  // Outer theta in the independence range reduces to the product.
  const auto zero_outer = CopulaSpec::paper_literal(vec({2.0, 0.0}));
  EXPECT_NEAR(copula_cdf(vec({0.4, 0.6}), zero_outer), 0.24, 1e-16);
}

TEST(CopulaCdf, Margins) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int dim : {2, 3, 5}) {
    for (const auto& s : valid_specs(dim)) {
      for (int trial = 0; trial < 200; ++trial) {
        const double u = unif(gen);
        for (int k = 0; k < dim; ++k) {
          VectorXd v = VectorXd::Ones(dim);
          v(k) = u;
          EXPECT_NEAR(copula_cdf(v, s), u, 1e-12);
        }
      }
    }
  }
}

TEST(CopulaCdf, FrechetBoundsOnRandomProbes) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double theta : {0.1, 1.0, 5.0}) {
    for (int dim : {2, 4}) {
      const auto s = CopulaSpec::clayton(dim, theta);
      for (int i = 0; i < 10000; ++i) {
        VectorXd u(dim);
        for (int k = 0; k < dim; ++k) u(k) = unif(gen);
        EXPECT_TRUE(copula_upper_bound_check(u, s));
      }
    }
  }
  EXPECT_TRUE(copula_upper_bound_check(vec({0.5, 0.5}), CopulaSpec::clayton(2, 2.0)));
  EXPECT_NEAR(copula_cdf(vec({1.0, 0.3}), CopulaSpec::clayton(2, 1.0)), 0.3, 1e-15);
}

TEST(CopulaCdf, MonotoneInEachCoordinate) {
  const auto s = CopulaSpec::clayton(3, 2.0);
  for (int k = 0; k < 3; ++k) {
    VectorXd u = vec({0.4, 0.6, 0.8});
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      u(k) = i / 200.0;
      const double c = copula_cdf(u, s);
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(CopulaCdf, IndependenceLimit) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double eps = 2e-9;
  for (int i = 0; i < 1000; ++i) {
    VectorXd u(3);
    for (int k = 0; k < 3; ++k) u(k) = unif(gen);
    EXPECT_NEAR(copula_cdf(u, CopulaSpec::clayton(3, eps)), copula_cdf(u, CopulaSpec::independence(3)), 1e-6);
    EXPECT_NEAR(copula_cdf(u, CopulaSpec::clayton(3, 1e-9)), u.prod(), 1e-15);
  }
}

TEST(CopulaCdf, LargeThetaStaysFinite) {
  const auto s = CopulaSpec::clayton(4, 500.0);
  const double c = copula_cdf(vec({1e-12, 0.5, 0.9, 0.99}), s);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_NEAR(c, 1e-12, 1e-14);
  // Large theta approaches the comonotone bound min(u).
  EXPECT_NEAR(copula_cdf(vec({0.2, 0.5, 0.9}), CopulaSpec::clayton(3, 1e4)), 0.2, 1e-4);
}

TEST(SpearmanRhoNumeric, AgainstIndependentQuadrature) {
  for (double theta : {0.5, 2.0}) {
    const long double integral = oracle::simpson_2d(
        [theta](long double a, long double b) -> long double {
          if (a == 0 || b == 0) return 0.0L;
          return std::pow(std::pow(a, -theta) + std::pow(b, -theta) - 1.0L, -1.0L / theta);
        },
        1000);
    EXPECT_NEAR(spearman_rho_numeric(theta), static_cast<double>(12 * integral - 3), 1e-4) << theta;
  }
}

TEST(SpearmanRhoNumeric, Values) {
  EXPECT_NEAR(spearman_rho_numeric(1e-4), 0.0, 1e-3);
  const double rho2 = spearman_rho_numeric(2.0);
  EXPECT_GT(rho2, 0.68);
  EXPECT_LT(rho2, 0.76);
  EXPECT_NEAR(spearman_rho_numeric(0.5), 0.3, 0.05);
  // Frozen reference values from adaptive quadrature at 1e-10.
  EXPECT_NEAR(spearman_rho_numeric(1.0), 0.4784176, 1e-4);
  EXPECT_NEAR(rho2, 0.6822338, 1e-4);
  EXPECT_THROW(spearman_rho_numeric(0.0), DomainError);
}

TEST(ClaytonSampler, RejectsBadArguments) {
  EXPECT_THROW(sample_clayton(2, 0.0, 10, 1), DomainError);
  EXPECT_THROW(sample_clayton(2, -1.0, 10, 1), DomainError);
  EXPECT_THROW(sample_clayton(2, 1.0, 0, 1), DomainError);
  EXPECT_THROW(ClaytonRowSampler(2, 0.0), DomainError);
}

TEST(ClaytonSampler, DeterministicAndWorkerIndependent) {
  const Eigen::MatrixXd a = sample_clayton(3, 1.5, 200000, 42, 1);
  const Eigen::MatrixXd b = sample_clayton(3, 1.5, 200000, 42, 4);
  EXPECT_TRUE((a.array() == b.array()).all());
  const Eigen::MatrixXd c = sample_clayton(3, 1.5, 200000, 43, 1);
  EXPECT_FALSE((a.array() == c.array()).all());
  EXPECT_GT(a.minCoeff(), 0.0);
  EXPECT_LE(a.maxCoeff(), 1.0);
}

TEST(ClaytonSampler, UniformMargins) {
  const std::int64_t n = 1000000;
  const Eigen::MatrixXd u = sample_clayton(3, 2.0, n, 7);
  for (int k = 0; k < 3; ++k) {
    for (double p : {0.25, 0.5, 0.75}) {
      const double frac = (u.col(k).array() <= p).count() / double(n);
      EXPECT_LE(std::fabs(frac - p), 3.0 * std::sqrt(p * (1 - p) / n)) << "col " << k << " p " << p;
    }
  }
}

TEST(ClaytonSampler, JointCdfMatchesClosedForm) {
  const std::int64_t n = 1000000;
  for (const auto& [dim, theta] : {std::pair{2, 0.5}, std::pair{2, 2.0}, std::pair{5, 0.5}, std::pair{5, 2.0}}) {
    const Eigen::MatrixXd u = sample_clayton(dim, theta, n, 17);
    const Eigen::VectorXd m = u.rowwise().maxCoeff();
    for (double probe : {0.3, 0.7}) {
      const double p = copula_cdf(VectorXd::Constant(dim, probe), CopulaSpec::clayton(dim, theta));
      const double frac = (m.array() <= probe).count() / double(n);
      EXPECT_LE(std::fabs(frac - p), 3.0 * std::sqrt(p * (1 - p) / n))
          << "K=" << dim << " theta=" << theta << " probe=" << probe;
    }
  }
}

TEST(ClaytonSampler, RankCorrelationMatchesIntegral) {
  const Eigen::MatrixXd u = sample_clayton(2, 1.0, 1000000, 23);
  EXPECT_NEAR(rank_correlation(u.col(0), u.col(1)), spearman_rho_numeric(1.0), 0.01);
}

TEST(ClaytonSampler, ComonotoneLimit) {
  const Eigen::MatrixXd u = sample_clayton(2, 1000.0, 100000, 29);
  EXPECT_GT(rank_correlation(u.col(0), u.col(1)), 0.99);
}
