#pragma once

#include <span>
#include <string>
#include <vector>

#include "conbias/engine.hpp"
#include "conbias/linalg.hpp"

namespace conbias::stats {

double normal_pdf(double x);
double normal_cdf(double x);

// Survival function of the chi-square distribution with df degrees of
// freedom, via the regularized upper incomplete gamma function.
double chi2_sf(double x, int df);

// Pooled chi-square statistic for H0: all group proportions equal.
// df = k - 1 when the pooled estimate replaces the unknown proportion.
double pooled_chi2(std::span<const long> successes, std::span<const long> trials);

struct ProportionTest {
  double p1 = 0.0, p2 = 0.0;
  double diff = 0.0;              // p1 - p2
  double ci_low = 0.0, ci_high = 0.0;  // 95%, unpooled normal approximation
  double chi2 = 0.0;
  int df = 1;
  double p_value = 0.0;
};
ProportionTest two_proportion_test(long x1, long n1, long x2, long n2);

// Design matrix in row-major storage with named columns.
struct Design {
  long rows = 0;
  int cols = 0;
  std::vector<double> x;  // rows x cols
  std::vector<int> y;
  std::vector<std::string> names;
  std::vector<std::string> dropped;  // "name (reason)" for excluded columns

  double at(long r, int c) const { return x[static_cast<std::size_t>(r) * cols + c]; }
};

struct ProbitFit {
  std::vector<double> coef;
  std::vector<double> se;
  std::vector<std::string> names;
  double log_likelihood = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Probit maximum likelihood via damped Newton steps on the score and
// observed information. Probabilities are clipped to [1e-10, 1-1e-10]
// inside the likelihood; convergence at ||score||_inf <= 1e-6.
ProbitFit probit_fit(const Design& design);

// Two-sided p-value for coef/se under the standard normal.
double wald_p(double coef, double se);
std::string stars(double p);  // *, **, *** at 0.05 / 0.01 / 0.001

// Columns of the benchmark regression for one network, in table order:
// pca, om, fi, pca_x_fi, pca_x_om, om_x_fi, tau dummies (tau=0 omitted as
// baseline), the theta dummy, and the intercept. Constant columns and
// columns duplicating an earlier one are excluded and reported in
// `dropped`, which is what blanks out pca/om on regular or complete
// networks. y = 1{less-biased consensus}.
Design build_design(const SweepTable& table, const std::string& net);
Design build_design(const SweepTable& table, const std::string& net,
                    const std::vector<std::string>& covariates);

}  // namespace conbias::stats
