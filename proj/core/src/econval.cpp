#include "stancetree/econval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>

#include "json.hpp"

namespace stancetree::econ {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<double> DesignMatrix::column(std::size_t c) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

void DesignMatrix::check() const {
  std::set<std::string> names(columns.begin(), columns.end());
  if (names.size() != columns.size()) throw std::invalid_argument("design matrix has duplicate column names");
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw std::invalid_argument("design matrix rows are ragged");
    for (double v : r) {
      if (!std::isfinite(v)) throw std::invalid_argument("design matrix contains a non-finite value");
    }
  }
}

namespace {

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_density(double z) {
  const double f = logistic(z);
  return f * (1.0 - f);
}

/// log(logistic(z)), stable for large |z|.
double log_logistic(double z) {
  return z >= 0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
}

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

MatrixXd to_eigen(const DesignMatrix& x) {
  MatrixXd m(static_cast<Eigen::Index>(x.n_rows()), static_cast<Eigen::Index>(x.n_cols()));
  for (std::size_t r = 0; r < x.n_rows(); ++r) {
    for (std::size_t c = 0; c < x.n_cols(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x.rows[r][c];
    }
  }
  return m;
}

/// Per-observation pieces of the proportional-odds likelihood.
struct ObsTerms {
  double log_p;
  double p;
  double fa, fb;    // densities at the upper/lower cut (0 when infinite)
  double dfa, dfb;  // density derivatives
};

ObsTerms obs_terms(int y, int levels, double eta, const std::vector<double>& cut) {
  ObsTerms t{};
  const bool has_upper = y < levels;
  const bool has_lower = y > 1;
  const double a = has_upper ? cut[static_cast<std::size_t>(y - 1)] - eta : 0.0;
  const double b = has_lower ? cut[static_cast<std::size_t>(y - 2)] - eta : 0.0;
  if (has_upper && has_lower) {
    // Difference of CDFs, taken on whichever tail keeps precision.
    t.p = b > 0 ? logistic(-b) - logistic(-a) : logistic(a) - logistic(b);
    t.log_p = std::log(t.p);
  } else if (has_upper) {
    t.log_p = log_logistic(a);
    t.p = std::exp(t.log_p);
  } else {
    t.log_p = log_logistic(-b);
    t.p = std::exp(t.log_p);
  }
  if (has_upper) {
    t.fa = logistic_density(a);
    t.dfa = t.fa * (1.0 - 2.0 * logistic(a));
  }
  if (has_lower) {
    t.fb = logistic_density(b);
    t.dfb = t.fb * (1.0 - 2.0 * logistic(b));
  }
  return t;
}

}  // namespace

OrderedLogitObjective::OrderedLogitObjective(const DesignMatrix& x, std::vector<int> y, int levels)
    : x_(x), y_(std::move(y)), levels_(levels), p_(x.n_cols()) {
  if (levels_ < 2) throw std::invalid_argument("ordered logit needs at least 2 outcome levels");
  if (y_.size() != x_.n_rows()) throw std::invalid_argument("outcome length differs from design rows");
  for (int v : y_) {
    if (v < 1 || v > levels_) throw std::invalid_argument("outcome outside 1..K");
  }
}

std::vector<double> OrderedLogitObjective::natural(const std::vector<double>& theta) const {
  std::vector<double> out(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(p_));
  double c = theta[p_];
  out.push_back(c);
  for (std::size_t k = 1; k + 1 < static_cast<std::size_t>(levels_); ++k) {
    c += std::exp(theta[p_ + k]);
    out.push_back(c);
  }
  return out;
}

std::vector<double> OrderedLogitObjective::unconstrained(const std::vector<double>& nat) const {
  std::vector<double> out(nat.begin(), nat.begin() + static_cast<std::ptrdiff_t>(p_));
  out.push_back(nat[p_]);
  for (std::size_t k = 1; k + 1 < static_cast<std::size_t>(levels_); ++k) {
    const double gap = nat[p_ + k] - nat[p_ + k - 1];
    if (!(gap > 0)) throw std::invalid_argument("cutpoints must be strictly increasing");
    out.push_back(std::log(gap));
  }
  return out;
}

double OrderedLogitObjective::loglik(const std::vector<double>& theta) const {
  const auto nat = natural(theta);
  const std::vector<double> cut(nat.begin() + static_cast<std::ptrdiff_t>(p_), nat.end());
  double ll = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    double eta = 0.0;
    for (std::size_t j = 0; j < p_; ++j) eta += x_.rows[i][j] * nat[j];
    ll += obs_terms(y_[i], levels_, eta, cut).log_p;
  }
  return ll;
}

/// Gradient and Hessian in both parameterisations.
class OrderedLogitSolver {
 public:
  explicit OrderedLogitSolver(const OrderedLogitObjective& obj) : obj_(obj) {}

  struct Eval {
    double loglik = 0.0;
    VectorXd grad_nat, grad_theta;
    MatrixXd hess_nat, hess_theta;
  };

  Eval evaluate(const std::vector<double>& theta, bool want_hessian) const {
    const std::size_t p = obj_.p_;
    const int levels = obj_.levels_;
    const auto m = static_cast<Eigen::Index>(obj_.n_params());
    const auto nat = obj_.natural(theta);
    const std::vector<double> cut(nat.begin() + static_cast<std::ptrdiff_t>(p), nat.end());

    Eval e;
    e.grad_nat = VectorXd::Zero(m);
    if (want_hessian) e.hess_nat = MatrixXd::Zero(m, m);
    VectorXd u(m), v(m), gi(m);
    for (std::size_t i = 0; i < obj_.y_.size(); ++i) {
      const auto& row = obj_.x_.rows[i];
      const int y = obj_.y_[i];
      double eta = 0.0;
      for (std::size_t j = 0; j < p; ++j) eta += row[j] * nat[j];
      const ObsTerms t = obs_terms(y, levels, eta, cut);
      e.loglik += t.log_p;

      u.setZero();
      v.setZero();
      for (std::size_t j = 0; j < p; ++j) {
        u(static_cast<Eigen::Index>(j)) = -row[j];
        v(static_cast<Eigen::Index>(j)) = -row[j];
      }
      if (y < levels) u(static_cast<Eigen::Index>(p) + y - 1) += 1.0; else u.setZero();
      if (y > 1) v(static_cast<Eigen::Index>(p) + y - 2) += 1.0; else v.setZero();

      gi = (t.fa * u - t.fb * v) / t.p;
      e.grad_nat += gi;
      if (want_hessian) {
        e.hess_nat.noalias() += (t.dfa / t.p) * (u * u.transpose()) - (t.dfb / t.p) * (v * v.transpose()) -
                                gi * gi.transpose();
      }
    }

    // Chain rule to theta.
    MatrixXd jac = MatrixXd::Zero(m, m);
    for (std::size_t j = 0; j < p; ++j) jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
    const auto K1 = static_cast<Eigen::Index>(levels - 1);
    const auto P = static_cast<Eigen::Index>(p);
    for (Eigen::Index k = 0; k < K1; ++k) {
      jac(P + k, P) = 1.0;
      for (Eigen::Index mm = 1; mm <= k; ++mm) jac(P + k, P + mm) = std::exp(theta[static_cast<std::size_t>(P + mm)]);
    }
    e.grad_theta = jac.transpose() * e.grad_nat;
    if (want_hessian) {
      e.hess_theta = jac.transpose() * e.hess_nat * jac;
      for (Eigen::Index mm = 1; mm < K1; ++mm) {
        double tail = 0.0;
        for (Eigen::Index k = mm; k < K1; ++k) tail += e.grad_nat(P + k);
        e.hess_theta(P + mm, P + mm) += std::exp(theta[static_cast<std::size_t>(P + mm)]) * tail;
      }
    }
    return e;
  }

 private:
  const OrderedLogitObjective& obj_;
};

std::vector<double> OrderedLogitObjective::gradient(const std::vector<double>& theta) const {
  OrderedLogitSolver solver(*this);
  auto e = solver.evaluate(theta, false);
  return {e.grad_theta.data(), e.grad_theta.data() + e.grad_theta.size()};
}

double OrdinalFit::coefficient(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return coefficients[i];
  }
  throw std::out_of_range("no coefficient named '" + column + "'");
}

std::vector<double> OrdinalFit::predict_proba(const std::vector<double>& x) const {
  double eta = 0.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) eta += x.at(j) * coefficients[j];
  std::vector<double> out;
  double prev = 0.0;
  for (double c : cutpoints) {
    const double cum = logistic(c - eta);
    out.push_back(cum - prev);
    prev = cum;
  }
  out.push_back(1.0 - prev);
  return out;
}

namespace {

double max_abs(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

/// Newton direction for maximisation, damped until -H is positive definite.
VectorXd newton_direction(const MatrixXd& hess, const VectorXd& grad) {
  MatrixXd info = -hess;
  double lambda = 0.0;
  const double scale = std::max(1.0, info.diagonal().cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 60; ++attempt) {
    MatrixXd damped = info;
    damped.diagonal().array() += lambda;
    Eigen::LLT<MatrixXd> llt(damped);
    if (llt.info() == Eigen::Success) return llt.solve(grad);
    lambda = lambda == 0.0 ? 1e-8 * scale : lambda * 10.0;
  }
  return grad / scale;
}

std::vector<double> column_sd(const DesignMatrix& x) {
  std::vector<double> sd(x.n_cols(), 0.0);
  const double n = static_cast<double>(x.n_rows());
  for (std::size_t j = 0; j < x.n_cols(); ++j) {
    double mean = 0.0;
    for (const auto& r : x.rows) mean += r[j];
    mean /= n;
    double ss = 0.0;
    for (const auto& r : x.rows) ss += (r[j] - mean) * (r[j] - mean);
    sd[j] = std::sqrt(ss / n);
  }
  return sd;
}

void check_separation(const std::vector<double>& nat, const std::vector<double>& sd, double loglik,
                      std::size_t n, const std::vector<std::string>& columns) {
  for (std::size_t j = 0; j < sd.size(); ++j) {
    if (std::fabs(nat[j]) * sd[j] > 50.0) {
      throw SeparationError("separation detected: coefficient on '" + columns[j] +
                            "' diverges (likelihood is unbounded)");
    }
  }
  if (loglik > -1e-9 * static_cast<double>(n)) {
    throw SeparationError("separation detected: the outcome is perfectly predicted");
  }
}

}  // namespace

OrdinalFit fit_ordered_logit(const DesignMatrix& x, const std::vector<int>& y, const OrderedLogitOptions& options) {
  x.check();
  if (y.size() != x.n_rows()) throw std::invalid_argument("outcome length differs from design rows");
  const int levels = y.empty() ? 0 : *std::max_element(y.begin(), y.end());
  if (levels < 2) throw std::invalid_argument("ordered logit needs at least 2 outcome levels");
  std::vector<std::size_t> counts(static_cast<std::size_t>(levels), 0);
  for (int v : y) {
    if (v < 1) throw std::invalid_argument("outcomes must be coded 1..K");
    ++counts[static_cast<std::size_t>(v - 1)];
  }
  for (int k = 0; k < levels; ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) {
      throw std::invalid_argument("outcome level " + std::to_string(k + 1) + " is never observed");
    }
  }
  const std::size_t p = x.n_cols();
  const std::size_t n = x.n_rows();
  const std::size_t n_params = p + static_cast<std::size_t>(levels - 1);
  if (n <= n_params) throw InsufficientDataError("ordered logit needs more observations than parameters");

  if (p > 0) {
    MatrixXd centered = to_eigen(x);
    centered.rowwise() -= centered.colwise().mean();
    Eigen::ColPivHouseholderQR<MatrixXd> qr(centered);
    if (static_cast<std::size_t>(qr.rank()) < p) {
      throw RankDeficientError("regressors are collinear with each other or with the cutpoints");
    }
  }

  OrderedLogitObjective obj(x, y, levels);
  OrderedLogitSolver solver(obj);
  const auto sd = column_sd(x);

  // Start from beta = 0 with cutpoints at the marginal cumulative logits.
  std::vector<double> nat(p, 0.0);
  std::size_t cum = 0;
  for (int k = 0; k + 1 < levels; ++k) {
    cum += counts[static_cast<std::size_t>(k)];
    const double q = static_cast<double>(cum) / static_cast<double>(n);
    nat.push_back(std::log(q / (1.0 - q)));
  }
  std::vector<double> theta = obj.unconstrained(nat);

  OrdinalFit fit;
  auto eval = solver.evaluate(theta, true);
  fit.loglik_trace.push_back(eval.loglik);
  bool converged = false;
  int iter = 0;
  // The log-likelihood is a sum over observations, so the tolerance applies
  // to the mean gradient.
  const double scale = static_cast<double>(n);
  for (; iter < options.max_iterations; ++iter) {
    if (max_abs(eval.grad_theta) < options.gradient_tolerance * scale) {
      converged = true;
      break;
    }
    const VectorXd dir = newton_direction(eval.hess_theta, eval.grad_theta);
    double step = 1.0;
    bool accepted = false;
    std::vector<double> trial(theta.size());
    for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
      for (std::size_t i = 0; i < theta.size(); ++i) trial[i] = theta[i] + step * dir(static_cast<Eigen::Index>(i));
      const double ll = obj.loglik(trial);
      if (std::isfinite(ll) && ll >= eval.loglik) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No representable ascent left; accept only if already at the optimum
      // up to rounding.
      if (max_abs(eval.grad_theta) < 1e-6 * scale) {
        converged = true;
        break;
      }
      throw NonConvergenceError("ordered logit line search failed at iteration " + std::to_string(iter + 1));
    }
    theta = trial;
    eval = solver.evaluate(theta, true);
    fit.loglik_trace.push_back(eval.loglik);
    check_separation(obj.natural(theta), sd, eval.loglik, n, x.columns);
  }
  if (!converged) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "ordered logit did not converge in %d iterations (max |gradient| = %g)",
                  options.max_iterations, max_abs(eval.grad_theta));
    throw NonConvergenceError(buf);
  }
  nat = obj.natural(theta);
  check_separation(nat, sd, eval.loglik, n, x.columns);

  Eigen::LDLT<MatrixXd> info(-eval.hess_nat);
  if (info.info() != Eigen::Success || !info.isPositive()) {
    throw EconError("observed information matrix is not positive definite");
  }
  const MatrixXd cov = info.solve(MatrixXd::Identity(static_cast<Eigen::Index>(n_params), static_cast<Eigen::Index>(n_params)));

  fit.columns = x.columns;
  fit.n = n;
  fit.iterations = iter;
  fit.log_likelihood = eval.loglik;
  fit.aic = 2.0 * static_cast<double>(n_params) - 2.0 * eval.loglik;
  for (std::size_t j = 0; j < p; ++j) {
    const double b = nat[j];
    const double se = std::sqrt(cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)));
    fit.coefficients.push_back(b);
    fit.std_errors.push_back(se);
    fit.z_values.push_back(b / se);
    fit.p_values.push_back(normal_two_sided_p(b / se));
    fit.odds_ratios.push_back(std::exp(b));
  }
  for (std::size_t k = p; k < n_params; ++k) {
    fit.cutpoints.push_back(nat[k]);
    fit.cutpoint_std_errors.push_back(std::sqrt(cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))));
  }
  for (int k = 1; k <= levels; ++k) fit.level_labels.push_back(std::to_string(k));

  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto prob = fit.predict_proba(x.rows[i]);
    const auto pred = static_cast<int>(std::max_element(prob.begin(), prob.end()) - prob.begin()) + 1;
    if (pred == y[i]) ++hits;
  }
  fit.accuracy = static_cast<double>(hits) / static_cast<double>(n);
  fit.baseline_accuracy =
      static_cast<double>(*std::max_element(counts.begin(), counts.end())) / static_cast<double>(n);
  return fit;
}

std::vector<int> code_ordinal_outcomes(const std::vector<std::string>& labels,
                                       std::vector<std::string>* level_labels) {
  auto word_rank = [](std::string s) -> int {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "loosening" || s == "easing" || s == "ease" || s == "cut") return 0;
    if (s == "no change" || s == "hold" || s == "unchanged" || s == "none") return 1;
    if (s == "tightening" || s == "tighten" || s == "hike") return 2;
    return -1;
  };
  bool all_words = !labels.empty();
  for (const auto& l : labels) all_words = all_words && word_rank(l) >= 0;

  std::vector<double> keys;
  keys.reserve(labels.size());
  for (const auto& l : labels) {
    if (all_words) {
      keys.push_back(word_rank(l));
      continue;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(l.data(), l.data() + l.size(), v);
    if (ec != std::errc{} || ptr != l.data() + l.size()) {
      throw std::invalid_argument("outcome '" + l + "' is neither a policy-stance word nor a number");
    }
    keys.push_back(v);
  }
  std::vector<double> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> out;
  out.reserve(keys.size());
  for (double k : keys) {
    out.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), k) - distinct.begin()) + 1);
  }
  if (level_labels) {
    level_labels->assign(distinct.size(), {});
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto& slot = (*level_labels)[static_cast<std::size_t>(out[i] - 1)];
      if (slot.empty()) slot = labels[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// OLS
// ---------------------------------------------------------------------------

double OlsFit::coefficient(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return coefficients[i];
  }
  throw std::out_of_range("no coefficient named '" + column + "'");
}

OlsFit fit_ols_hc1(const DesignMatrix& x, const std::vector<double>& y) {
  x.check();
  if (y.size() != x.n_rows()) throw std::invalid_argument("response length differs from design rows");
  const auto n = static_cast<Eigen::Index>(x.n_rows());
  const auto k = static_cast<Eigen::Index>(x.n_cols() + 1);
  if (n <= k) throw InsufficientDataError("OLS needs more observations than coefficients");

  MatrixXd X(n, k);
  X.col(0).setOnes();
  X.rightCols(k - 1) = to_eigen(x);
  const VectorXd Y = Eigen::Map<const VectorXd>(y.data(), n);

  Eigen::ColPivHouseholderQR<MatrixXd> qr(X);
  if (qr.rank() < k) throw RankDeficientError("design matrix (with intercept) is rank deficient");
  const VectorXd beta = qr.solve(Y);
  const VectorXd resid = Y - X * beta;

  const MatrixXd xtx = X.transpose() * X;
  const MatrixXd xtx_inv = xtx.ldlt().solve(MatrixXd::Identity(k, k));
  const MatrixXd meat = X.transpose() * resid.array().square().matrix().asDiagonal() * X;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const MatrixXd hc1 = (nd / (nd - kd)) * xtx_inv * meat * xtx_inv;

  OlsFit fit;
  fit.n = x.n_rows();
  fit.columns.push_back("const");
  fit.columns.insert(fit.columns.end(), x.columns.begin(), x.columns.end());
  fit.rss = resid.squaredNorm();
  const double sigma2 = fit.rss / (nd - kd);
  for (Eigen::Index j = 0; j < k; ++j) {
    fit.coefficients.push_back(beta(j));
    const double se = std::sqrt(std::max(0.0, hc1(j, j)));
    fit.std_errors.push_back(se);
    fit.classical_std_errors.push_back(std::sqrt(sigma2 * xtx_inv(j, j)));
    const double t = se > 0 ? beta(j) / se : 0.0;
    fit.t_values.push_back(t);
    fit.p_values.push_back(se > 0 ? normal_two_sided_p(t) : 1.0);
  }
  fit.residuals.assign(resid.data(), resid.data() + n);
  const double tss = (Y.array() - Y.mean()).square().sum();
  fit.r_squared = tss > 0 ? 1.0 - fit.rss / tss : 1.0;
  const double s2 = fit.rss / nd;
  fit.log_likelihood = s2 > 0 ? -0.5 * nd * (std::log(2.0 * M_PI * s2) + 1.0)
                              : std::numeric_limits<double>::infinity();
  fit.aic = 2.0 * kd - 2.0 * fit.log_likelihood;
  return fit;
}

// ---------------------------------------------------------------------------
// Granger
// ---------------------------------------------------------------------------

namespace {

double least_squares_rss(const MatrixXd& X, const VectorXd& y) {
  Eigen::ColPivHouseholderQR<MatrixXd> qr(X);
  const VectorXd beta = qr.solve(y);
  return (y - X * beta).squaredNorm();
}

}  // namespace

GrangerResult granger_test(const std::vector<double>& x, const std::vector<double>& y, int lags) {
  if (x.size() != y.size()) throw std::invalid_argument("granger_test needs equal-length series");
  if (lags < 1) throw std::invalid_argument("granger_test needs lags >= 1");
  const auto L = static_cast<std::size_t>(lags);
  const std::size_t n = x.size();
  if (n < 3 * L + 2) {
    throw InsufficientDataError("granger_test with " + std::to_string(lags) + " lags needs at least " +
                                std::to_string(3 * L + 2) + " observations, got " + std::to_string(n));
  }
  const std::size_t n_eff = n - L;
  const auto rows = static_cast<Eigen::Index>(n_eff);
  const auto Li = static_cast<Eigen::Index>(L);
  MatrixXd restricted(rows, 1 + Li);
  MatrixXd unrestricted(rows, 1 + 2 * Li);
  VectorXd target(rows);
  for (std::size_t t = L; t < n; ++t) {
    const auto r = static_cast<Eigen::Index>(t - L);
    target(r) = y[t];
    restricted(r, 0) = 1.0;
    unrestricted(r, 0) = 1.0;
    for (std::size_t l = 1; l <= L; ++l) {
      const auto c = static_cast<Eigen::Index>(l);
      restricted(r, c) = y[t - l];
      unrestricted(r, c) = y[t - l];
      unrestricted(r, Li + c) = x[t - l];
    }
  }
  const double rss_r = least_squares_rss(restricted, target);
  const double rss_u = least_squares_rss(unrestricted, target);

  GrangerResult g;
  g.lags = lags;
  g.n_effective = n_eff;
  g.df_num = static_cast<double>(L);
  g.df_den = static_cast<double>(n_eff - 2 * L - 1);
  const double gain = std::max(0.0, rss_r - rss_u);
  if (rss_u <= 0.0) {
    g.f_stat = gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    g.f_stat = (gain / g.df_num) / (rss_u / g.df_den);
  }
  if (std::isinf(g.f_stat)) {
    g.p_value = 0.0;
  } else {
    boost::math::fisher_f dist(g.df_num, g.df_den);
    g.p_value = std::clamp(boost::math::cdf(boost::math::complement(dist, g.f_stat)), 0.0, 1.0);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Calendar alignment
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_simple_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

}  // namespace

OutcomeTable read_outcomes_csv(std::istream& in) {
  OutcomeTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("outcomes CSV is empty");
  auto header = split_simple_csv(line);
  if (header.size() < 2 || header[0] != "date" || header[1] != "outcome") {
    throw std::invalid_argument("outcomes CSV header must start with 'date,outcome'");
  }
  t.forecast_columns.assign(header.begin() + 2, header.end());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto f = split_simple_csv(line);
    if (f.size() != header.size()) {
      throw std::invalid_argument("outcomes CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    }
    auto date = parse_iso_date(f[0]);
    if (!date) throw std::invalid_argument("outcomes CSV line " + std::to_string(line_no) + ": bad date '" + f[0] + "'");
    OutcomeTable::Row row{*date, f[1], {}};
    for (std::size_t c = 2; c < f.size(); ++c) {
      if (f[c].empty()) {
        row.forecasts.emplace_back();
        continue;
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f[c].data(), f[c].data() + f[c].size(), v);
      if (ec != std::errc{} || ptr != f[c].data() + f[c].size()) {
        throw std::invalid_argument("outcomes CSV line " + std::to_string(line_no) + ": bad number '" + f[c] + "'");
      }
      row.forecasts.emplace_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

DesignMatrix build_design(const std::map<std::string, ScoreSeries>& series, const OutcomeTable& outcomes,
                          int lags) {
  if (lags < 1) throw std::invalid_argument("build_design needs lags >= 1");
  DesignMatrix d;
  d.columns = outcomes.forecast_columns;
  for (const auto& [name, s] : series) {
    for (int l = 1; l <= lags; ++l) d.columns.push_back("hds_" + name + "_lag" + std::to_string(l));
  }
  for (const auto& row : outcomes.rows) {
    std::vector<double> values;
    bool complete = true;
    for (const auto& f : row.forecasts) {
      if (!f) complete = false;
      values.push_back(f.value_or(0.0));
    }
    for (const auto& [name, s] : series) {
      std::vector<double> prior;
      for (const auto& p : s.points) {
        if (p.date < row.date) prior.push_back(p.score);
      }
      for (int l = 1; l <= lags; ++l) {
        const auto need = static_cast<std::size_t>(l);
        if (prior.size() < need) {
          complete = false;
          values.push_back(0.0);
        } else {
          values.push_back(prior[prior.size() - need]);
        }
      }
    }
    if (!complete) {
      ++d.dropped_rows;
      continue;
    }
    d.rows.push_back(std::move(values));
    d.row_dates.push_back(row.date);
    d.response.push_back(row.outcome);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string to_json(const OrdinalFit& fit) {
  ojson j = ojson::object();
  j["model"] = "ordered_logit";
  j["n"] = fit.n;
  ojson coefs = ojson::array();
  for (std::size_t i = 0; i < fit.columns.size(); ++i) {
    ojson c = ojson::object();
    c["column"] = fit.columns[i];
    c["estimate"] = fit.coefficients[i];
    c["std_error"] = fit.std_errors[i];
    c["odds_ratio"] = fit.odds_ratios[i];
    c["z"] = fit.z_values[i];
    c["p_value"] = fit.p_values[i];
    coefs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(coefs);
  j["cutpoints"] = fit.cutpoints;
  j["cutpoint_std_errors"] = fit.cutpoint_std_errors;
  j["levels"] = fit.level_labels;
  j["log_likelihood"] = fit.log_likelihood;
  j["aic"] = fit.aic;
  j["accuracy"] = fit.accuracy;
  j["baseline_accuracy"] = fit.baseline_accuracy;
  j["iterations"] = fit.iterations;
  return j.dump(2) + "\n";
}

std::string to_json(const OlsFit& fit) {
  ojson j = ojson::object();
  j["model"] = "ols_hc1";
  j["n"] = fit.n;
  ojson coefs = ojson::array();
  for (std::size_t i = 0; i < fit.columns.size(); ++i) {
    ojson c = ojson::object();
    c["column"] = fit.columns[i];
    c["estimate"] = fit.coefficients[i];
    c["std_error_hc1"] = fit.std_errors[i];
    c["std_error_classical"] = fit.classical_std_errors[i];
    c["t"] = fit.t_values[i];
    c["p_value"] = fit.p_values[i];
    coefs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(coefs);
  j["r_squared"] = fit.r_squared;
  j["log_likelihood"] = fit.log_likelihood;
  j["aic"] = fit.aic;
  return j.dump(2) + "\n";
}

std::string to_json(const GrangerResult& g) {
  ojson j = ojson::object();
  j["test"] = "granger";
  j["lags"] = g.lags;
  j["f_stat"] = g.f_stat;
  j["p_value"] = g.p_value;
  j["n_effective"] = g.n_effective;
  j["df_num"] = g.df_num;
  j["df_den"] = g.df_den;
  return j.dump(2) + "\n";
}

std::string format_table(const OrdinalFit& fit) {
  std::size_t w = 10;
  for (const auto& c : fit.columns) w = std::max(w, c.size() + 2);
  std::ostringstream os;
  os << "Ordered logit (n = " << fit.n << ")\n";
  os << pad("", w) << lpad("Estimate", 11) << lpad("Std.Err", 11) << lpad("OR", 11) << lpad("p", 9) << "\n";
  for (std::size_t i = 0; i < fit.columns.size(); ++i) {
    os << pad(fit.columns[i], w) << lpad(num(fit.coefficients[i]), 11) << lpad(num(fit.std_errors[i]), 11)
       << lpad(num(fit.odds_ratios[i], 3), 11) << lpad(num(fit.p_values[i], 3), 9) << "\n";
  }
  for (std::size_t k = 0; k < fit.cutpoints.size(); ++k) {
    os << pad("cut" + std::to_string(k + 1), w) << lpad(num(fit.cutpoints[k]), 11)
       << lpad(num(fit.cutpoint_std_errors[k]), 11) << "\n";
  }
  os << "Accuracy (baseline): " << num(100 * fit.accuracy, 1) << "% (" << num(100 * fit.baseline_accuracy, 1)
     << "%)\n";
  os << "Log-likelihood: " << num(fit.log_likelihood, 3) << "   AIC: " << num(fit.aic, 2) << "\n";
  return os.str();
}

std::string format_table(const OlsFit& fit) {
  std::size_t w = 10;
  for (const auto& c : fit.columns) w = std::max(w, c.size() + 2);
  std::ostringstream os;
  os << "OLS with HC1 standard errors (n = " << fit.n << ")\n";
  os << pad("", w) << lpad("Estimate", 11) << lpad("HC1 SE", 11) << lpad("t", 9) << lpad("p", 9) << "\n";
  for (std::size_t i = 0; i < fit.columns.size(); ++i) {
    os << pad(fit.columns[i], w) << lpad(num(fit.coefficients[i]), 11) << lpad(num(fit.std_errors[i]), 11)
       << lpad(num(fit.t_values[i], 2), 9) << lpad(num(fit.p_values[i], 3), 9) << "\n";
  }
  os << "R-squared: " << num(fit.r_squared, 3) << "   AIC: " << num(fit.aic, 2) << "\n";
  return os.str();
}

}  // namespace stancetree::econ
