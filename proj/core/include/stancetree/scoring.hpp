#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "stancetree/date.hpp"
#include "stancetree/reasoner.hpp"
#include "stancetree/stance.hpp"

namespace stancetree {

enum class SchemeMode { ThreeClass, FiveClass };

/// Stance -> points. Five-class maps dovish..hawkish to 1..5; three-class
/// collapses the leaning classes first and maps dovish/neutral/hawkish to
/// -1/0/1.
struct ScoreScheme {
  SchemeMode mode = SchemeMode::FiveClass;

  double points(Stance s) const;

  static ScoreScheme three_class() { return {SchemeMode::ThreeClass}; }
  static ScoreScheme five_class() { return {SchemeMode::FiveClass}; }
};

Stance collapse_to_three(Stance c);

class ScoringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mean sentence points. Throws ScoringError for a document with no sentences.
double document_score(const DocumentResult& r, const ScoreScheme& s);

struct ScorePoint {
  Date date;
  std::string doc_id;
  std::string doc_type;
  double score = 0.0;

  friend bool operator==(const ScorePoint&, const ScorePoint&) = default;
};

struct ScoreSeries {
  std::vector<ScorePoint> points;  // dates non-decreasing

  std::size_t size() const { return points.size(); }
  std::vector<double> values() const;
  /// Only the points with this doc_type, order kept.
  ScoreSeries filter(const std::string& doc_type) const;
};

/// Scores each document and orders by date (stable for equal dates).
/// Documents without sentences are skipped.
ScoreSeries build_series(const std::vector<DocumentResult>& results, const ScoreScheme& s);

/// Full-series z-scores with the population standard deviation. Throws
/// ScoringError for fewer than two points or zero variance.
ScoreSeries normalize_series(const ScoreSeries& s);

/// Trailing mean over the last `window` points; the first window-1 outputs
/// average all points so far.
ScoreSeries moving_average(const ScoreSeries& s, std::size_t window);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double mean_error = 0.0;  // mean of points(pred) - points(gold); positive = hawkish skew
};

/// Exact-match accuracy and signed mean error. Under the three-class scheme
/// both lists are collapsed before comparing.
ClassificationMetrics classification_metrics(const std::vector<Stance>& pred,
                                             const std::vector<Stance>& gold, const ScoreScheme& s);

/// CSV with header `date,doc_id,doc_type,score`.
void write_series_csv(std::ostream& out, const ScoreSeries& s);
ScoreSeries read_series_csv(std::istream& in);

}  // namespace stancetree
