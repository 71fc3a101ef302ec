#include "conbias/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace conbias::stats {

namespace {

constexpr double kProbClip = 1e-10;
constexpr double kZ95 = 1.959963984540054;  // Phi^-1(0.975)

std::string fmt_theta(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series expansion below a+1 and Lentz continued fraction above.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

}  // namespace

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * 0.3989422804014327;  // 1/sqrt(2 pi)
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double chi2_sf(double x, int df) {
  if (df < 1) throw std::invalid_argument("chi2_sf needs df >= 1");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

double pooled_chi2(std::span<const long> successes, std::span<const long> trials) {
  if (successes.size() != trials.size() || successes.size() < 2)
    throw std::invalid_argument("pooled_chi2 needs k >= 2 matched groups");
  long total_x = 0, total_n = 0;
  for (std::size_t i = 0; i < successes.size(); ++i) {
    if (trials[i] < 1 || successes[i] < 0 || successes[i] > trials[i])
      throw std::invalid_argument("pooled_chi2: need 0 <= x_i <= n_i, n_i >= 1");
    total_x += successes[i];
    total_n += trials[i];
  }
  const double pooled = double(total_x) / double(total_n);
  if (pooled == 0.0 || pooled == 1.0)
    throw std::invalid_argument("pooled proportion is degenerate (0 or 1)");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < successes.size(); ++i) {
    const double expect = trials[i] * pooled;
    const double dev = successes[i] - expect;
    chi2 += dev * dev / (trials[i] * pooled * (1.0 - pooled));
  }
  return chi2;
}

ProportionTest two_proportion_test(long x1, long n1, long x2, long n2) {
  const long xs[2] = {x1, x2};
  const long ns[2] = {n1, n2};
  ProportionTest t;
  t.chi2 = pooled_chi2(xs, ns);
  t.df = 1;
  t.p_value = chi2_sf(t.chi2, 1);
  t.p1 = double(x1) / double(n1);
  t.p2 = double(x2) / double(n2);
  t.diff = t.p1 - t.p2;
  const double var = t.p1 * (1.0 - t.p1) / n1 + t.p2 * (1.0 - t.p2) / n2;
  const double half = kZ95 * std::sqrt(var);
  t.ci_low = t.diff - half;
  t.ci_high = t.diff + half;
  return t;
}

namespace {

double probit_loglik(const Design& d, const std::vector<double>& beta) {
  double ll = 0.0;
  for (long r = 0; r < d.rows; ++r) {
    double eta = 0.0;
    for (int c = 0; c < d.cols; ++c) eta += d.at(r, c) * beta[c];
    double p = normal_cdf(eta);
    p = std::clamp(p, kProbClip, 1.0 - kProbClip);
    ll += d.y[r] ? std::log(p) : std::log1p(-p);
  }
  return ll;
}

}  // namespace

ProbitFit probit_fit(const Design& d) {
  if (d.rows < 1 || d.cols < 1) throw std::invalid_argument("empty design");
  const long ones = std::count(d.y.begin(), d.y.end(), 1);
  if (ones == 0 || ones == d.rows)
    throw std::invalid_argument("outcome is constant; probit likelihood unbounded");

  const int k = d.cols;
  ProbitFit fit;
  fit.names = d.names;
  std::vector<double> beta(k, 0.0);
  double ll = probit_loglik(d, beta);

  std::vector<double> score(k);
  la::Matrix info(k);

  for (fit.iterations = 0; fit.iterations < 100; ++fit.iterations) {
    std::fill(score.begin(), score.end(), 0.0);
    std::fill(info.a.begin(), info.a.end(), 0.0);
    for (long r = 0; r < d.rows; ++r) {
      double eta = 0.0;
      for (int c = 0; c < k; ++c) eta += d.at(r, c) * beta[c];
      double p = std::clamp(normal_cdf(eta), kProbClip, 1.0 - kProbClip);
      const double pdf = normal_pdf(eta);
      const double g = d.y[r] ? pdf / p : -pdf / (1.0 - p);
      const double w = g * (g + eta);  // -d2l/deta2, nonnegative for probit
      for (int c = 0; c < k; ++c) {
        const double xc = d.at(r, c);
        score[c] += g * xc;
        for (int c2 = c; c2 < k; ++c2) info(c, c2) += w * xc * d.at(r, c2);
      }
    }
    for (int c = 0; c < k; ++c)
      for (int c2 = 0; c2 < c; ++c2) info(c, c2) = info(c2, c);

    double score_norm = 0.0;
    for (double s : score) score_norm = std::max(score_norm, std::fabs(s));
    if (score_norm <= 1e-6) {
      fit.converged = true;
      break;
    }

    std::vector<double> dir;
    int bad_col = -1;
    if (!la::solve(info, score, dir, 1e-12, &bad_col))
      throw std::runtime_error("singular information matrix at column '" +
                               d.names[bad_col] + "'");

    // Newton decrement: predicted likelihood gain of the full step. Once it
    // falls below the rounding noise of evaluating ll itself, the improvement
    // test is blind; Newton is locally convergent there, so take the step
    // and let the score criterion terminate.
    double decrement = 0.0;
    for (int c = 0; c < k; ++c) decrement += 0.5 * score[c] * dir[c];
    if (decrement <= 1e-12 * (1.0 + std::fabs(ll))) {
      for (int c = 0; c < k; ++c) beta[c] += dir[c];
      ll = probit_loglik(d, beta);
      continue;
    }

    // Damped step: halve until the likelihood improves.
    double lam = 1.0;
    double ll_new = ll;
    std::vector<double> trial(k);
    bool improved = false;
    for (int h = 0; h <= 50; ++h) {
      for (int c = 0; c < k; ++c) trial[c] = beta[c] + lam * dir[c];
      ll_new = probit_loglik(d, trial);
      if (ll_new >= ll) {
        improved = true;
        break;
      }
      lam *= 0.5;
    }
    if (!improved) break;  // stalled; report unconverged
    beta = trial;
    ll = ll_new;
  }

  fit.coef = beta;
  fit.log_likelihood = ll;
  fit.se.assign(k, 0.0);
  la::Matrix cov;
  int bad_col = -1;
  if (!la::invert(info, cov, 1e-12, &bad_col))
    throw std::runtime_error("singular information matrix at column '" +
                             d.names[bad_col] + "'");
  for (int c = 0; c < k; ++c) fit.se[c] = std::sqrt(std::max(cov(c, c), 0.0));
  return fit;
}

double wald_p(double coef, double se) {
  if (se <= 0.0) return 1.0;
  return 2.0 * normal_cdf(-std::fabs(coef / se));
}

std::string stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

Design build_design(const SweepTable& table, const std::string& net) {
  static const std::vector<std::string> all = {"pca", "om",       "fi",
                                               "pca_x_fi", "pca_x_om", "om_x_fi",
                                               "tau",      "theta"};
  return build_design(table, net, all);
}

Design build_design(const SweepTable& table, const std::string& net,
                    const std::vector<std::string>& covariates) {
  std::vector<const SweepRow*> rows;
  for (const SweepRow& r : table.rows)
    if (r.net == net) rows.push_back(&r);
  if (rows.empty())
    throw std::invalid_argument("no rows for network '" + net + "'");

  auto wants = [&](const std::string& name) {
    return std::find(covariates.begin(), covariates.end(), name) != covariates.end();
  };
  auto need_om = [&] {
    for (const SweepRow* r : rows)
      if (r->om < 0)
        throw std::invalid_argument("covariate 'om' missing for network '" + net + "'");
  };
  auto need_pca = [&] {
    for (const SweepRow* r : rows)
      if (r->pca < 0)
        throw std::invalid_argument("covariate 'pca' missing for network '" + net + "'");
  };

  const long n = static_cast<long>(rows.size());
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  auto add = [&](const std::string& name, auto&& value_of) {
    std::vector<double> v(n);
    for (long i = 0; i < n; ++i) v[i] = value_of(*rows[i]);
    cols.emplace_back(name, std::move(v));
  };

  if (wants("pca")) {
    need_pca();
    add("pca", [](const SweepRow& r) { return double(r.pca); });
  }
  if (wants("om")) {
    need_om();
    add("om", [](const SweepRow& r) { return double(r.om); });
  }
  if (wants("fi")) add("fi", [](const SweepRow& r) { return double(r.fi); });
  if (wants("pca_x_fi")) {
    need_pca();
    add("pca_x_fi", [](const SweepRow& r) { return double(r.pca * r.fi); });
  }
  if (wants("pca_x_om")) {
    need_pca();
    need_om();
    add("pca_x_om", [](const SweepRow& r) { return double(r.pca * r.om); });
  }
  if (wants("om_x_fi")) {
    need_om();
    add("om_x_fi", [](const SweepRow& r) { return double(r.om * r.fi); });
  }
  if (wants("tau")) {
    std::set<int> levels;
    for (const SweepRow* r : rows) levels.insert(r->tau);
    bool first = true;  // lowest level is the omitted baseline
    for (int level : levels) {
      if (first) {
        first = false;
        continue;
      }
      add("tau_" + std::to_string(level),
          [level](const SweepRow& r) { return r.tau == level ? 1.0 : 0.0; });
    }
  }
  if (wants("theta")) {
    std::set<double> levels;
    for (const SweepRow* r : rows) levels.insert(r->theta);
    if (levels.size() > 1) {
      const double top = *levels.rbegin();
      add("theta_" + fmt_theta(top),
          [top](const SweepRow& r) { return r.theta == top ? 1.0 : 0.0; });
    }
  }
  add("const", [](const SweepRow&) { return 1.0; });

  // Exclusion pass: constants (e.g. om on complete networks, pca on regular
  // ones) and exact duplicates of an earlier kept column (e.g. pca_x_om on
  // the star, where any central partisan is adjacent to everyone).
  Design d;
  d.rows = n;
  std::vector<const std::vector<double>*> kept;
  for (auto& [name, v] : cols) {
    const bool constant = std::all_of(v.begin(), v.end(),
                                      [&](double x) { return x == v.front(); });
    if (constant && name != "const") {
      d.dropped.push_back(name + " (constant)");
      continue;
    }
    bool dup = false;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (*kept[k] == v) {
        d.dropped.push_back(name + " (duplicates " + d.names[k] + ")");
        dup = true;
        break;
      }
    }
    if (dup) continue;
    d.names.push_back(name);
    kept.push_back(&v);
  }
  d.cols = static_cast<int>(kept.size());
  d.x.resize(static_cast<std::size_t>(n) * d.cols);
  for (long i = 0; i < n; ++i)
    for (int c = 0; c < d.cols; ++c)
      d.x[static_cast<std::size_t>(i) * d.cols + c] = (*kept[c])[i];
  d.y.resize(n);
  for (long i = 0; i < n; ++i) d.y[i] = rows[i]->less_biased;
  return d;
}

}  // namespace conbias::stats
