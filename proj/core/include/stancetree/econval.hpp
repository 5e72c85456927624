#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stancetree/date.hpp"
#include "stancetree/scoring.hpp"

namespace stancetree::econ {

/// Row-major regressor table with named columns.
struct DesignMatrix {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Date> row_dates;        // parallel to rows when built from a calendar
  std::vector<std::string> response;  // outcome label per row, when aligned
  std::size_t dropped_rows = 0;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return columns.size(); }
  double at(std::size_t r, std::size_t c) const { return rows[r][c]; }
  std::vector<double> column(std::size_t c) const;

  /// Throws std::invalid_argument on ragged rows or duplicate column names.
  void check() const;
};

class EconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonConvergenceError : public EconError {
 public:
  using EconError::EconError;
};
class SeparationError : public EconError {
 public:
  using EconError::EconError;
};
class RankDeficientError : public EconError {
 public:
  using EconError::EconError;
};
class InsufficientDataError : public EconError {
 public:
  using EconError::EconError;
};

// ---------------------------------------------------------------------------
// Ordered logit
// ---------------------------------------------------------------------------

/// Proportional-odds log-likelihood, P(y <= k | x) = logistic(c_k - x'beta),
/// over the unconstrained vector theta = (beta, c_1, log(c_2 - c_1), ...,
/// log(c_{K-1} - c_{K-2})). Outcomes are coded 1..K.
class OrderedLogitObjective {
 public:
  OrderedLogitObjective(const DesignMatrix& x, std::vector<int> y, int levels);

  std::size_t n_params() const { return p_ + static_cast<std::size_t>(levels_ - 1); }
  std::size_t n_coefficients() const { return p_; }
  int levels() const { return levels_; }

  double loglik(const std::vector<double>& theta) const;
  std::vector<double> gradient(const std::vector<double>& theta) const;

  /// (beta, c_1..c_{K-1}) from theta.
  std::vector<double> natural(const std::vector<double>& theta) const;
  /// theta from (beta, strictly increasing cutpoints).
  std::vector<double> unconstrained(const std::vector<double>& natural) const;

 private:
  friend class OrderedLogitSolver;
  const DesignMatrix& x_;
  std::vector<int> y_;
  int levels_;
  std::size_t p_;
};

struct OrderedLogitOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-8;
};

struct OrdinalFit {
  std::vector<std::string> columns;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> z_values;
  std::vector<double> p_values;
  std::vector<double> odds_ratios;  // exp(coefficient)
  std::vector<double> cutpoints;    // strictly increasing, K-1 of them
  std::vector<double> cutpoint_std_errors;
  std::vector<std::string> level_labels;  // outcome label per level 1..K
  double log_likelihood = 0.0;
  double aic = 0.0;  // 2 * (#coefficients + #cutpoints) - 2 * log_likelihood
  std::size_t n = 0;
  int iterations = 0;
  std::vector<double> loglik_trace;  // one entry per accepted iterate, starting point first
  double accuracy = 0.0;             // modal-category prediction
  double baseline_accuracy = 0.0;    // always predicting the most frequent level

  double coefficient(const std::string& column) const;
  /// Predicted probability of each level 1..K for one regressor row.
  std::vector<double> predict_proba(const std::vector<double>& x) const;
};

/// Newton-Raphson with step halving. Converges when the max-norm of the
/// gradient in theta, divided by n, is below the tolerance; otherwise throws
/// NonConvergenceError. Throws SeparationError when a coefficient diverges
/// (|beta_j| * sd(x_j) > 50) or the fit becomes perfect.
OrdinalFit fit_ordered_logit(const DesignMatrix& x, const std::vector<int>& y,
                             const OrderedLogitOptions& options = {});

/// Maps outcome labels onto levels 1..K. The words loosening / no change /
/// tightening (also easing, hold, unchanged) order themselves; otherwise
/// labels must be numeric and are ordered by value. Only levels present in
/// the data are used.
std::vector<int> code_ordinal_outcomes(const std::vector<std::string>& labels,
                                       std::vector<std::string>* level_labels = nullptr);

// ---------------------------------------------------------------------------
// OLS with HC1 errors
// ---------------------------------------------------------------------------

struct OlsFit {
  std::vector<std::string> columns;  // "const" first
  std::vector<double> coefficients;
  std::vector<double> std_errors;            // HC1
  std::vector<double> classical_std_errors;  // homoskedastic
  std::vector<double> t_values;              // HC1-based
  std::vector<double> p_values;              // normal approximation
  std::vector<double> residuals;
  double rss = 0.0;
  double r_squared = 0.0;
  double log_likelihood = 0.0;  // Gaussian, sigma^2 = rss / n
  double aic = 0.0;             // 2k - 2 log_likelihood, k = #coefficients
  std::size_t n = 0;

  double coefficient(const std::string& column) const;
};

/// Least squares with an automatic intercept. HC1 covariance is
/// n/(n-k) (X'X)^-1 X' diag(e^2) X (X'X)^-1. Throws RankDeficientError.
OlsFit fit_ols_hc1(const DesignMatrix& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Granger causality
// ---------------------------------------------------------------------------

struct GrangerResult {
  int lags = 0;
  double f_stat = 0.0;
  double p_value = 1.0;
  std::size_t n_effective = 0;
  double df_num = 0.0;
  double df_den = 0.0;
};

/// F-test of y on its own lags 1..L (plus intercept) against the same
/// regression with lags 1..L of x added. Throws InsufficientDataError unless
/// n - 3L - 1 > 0.
GrangerResult granger_test(const std::vector<double>& x, const std::vector<double>& y, int lags);

// ---------------------------------------------------------------------------
// Calendar alignment
// ---------------------------------------------------------------------------

struct OutcomeTable {
  struct Row {
    Date date;
    std::string outcome;
    std::vector<std::optional<double>> forecasts;
  };
  std::vector<std::string> forecast_columns;
  std::vector<Row> rows;
};

/// CSV `date,outcome[,forecast...]`; empty cells are missing values.
OutcomeTable read_outcomes_csv(std::istream& in);

/// For each decision date attaches, per named score series, the scores of
/// the most recent (lag 1) and second most recent (lag 2) documents dated
/// strictly before the decision, as columns hds_<name>_lag1..lagN, after the
/// forecast columns. Rows with any missing value are dropped and counted.
DesignMatrix build_design(const std::map<std::string, ScoreSeries>& series, const OutcomeTable& outcomes,
                          int lags = 2);

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string to_json(const OrdinalFit& fit);
std::string to_json(const OlsFit& fit);
std::string to_json(const GrangerResult& g);
std::string format_table(const OrdinalFit& fit);
std::string format_table(const OlsFit& fit);

}  // namespace stancetree::econ
