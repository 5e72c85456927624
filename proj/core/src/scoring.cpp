#include "stancetree/scoring.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace stancetree {

Stance collapse_to_three(Stance c) {
  switch (c) {
    case Stance::LeaningDovish: return Stance::Dovish;
    case Stance::LeaningHawkish: return Stance::Hawkish;
    default: return c;
  }
}

double ScoreScheme::points(Stance s) const {
  if (mode == SchemeMode::FiveClass) return static_cast<double>(static_cast<int>(s) + 1);
  switch (collapse_to_three(s)) {
    case Stance::Dovish: return -1.0;
    case Stance::Hawkish: return 1.0;
    default: return 0.0;
  }
}

double document_score(const DocumentResult& r, const ScoreScheme& s) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : r.paragraphs) {
    for (const auto& sent : p.sentences) {
      sum += s.points(sent.stance);
      ++n;
    }
  }
  if (n == 0) throw ScoringError("document '" + r.doc_id + "' has no sentences; score undefined");
  return sum / static_cast<double>(n);
}

std::vector<double> ScoreSeries::values() const {
  std::vector<double> v;
  v.reserve(points.size());
  for (const auto& p : points) v.push_back(p.score);
  return v;
}

ScoreSeries ScoreSeries::filter(const std::string& doc_type) const {
  ScoreSeries out;
  for (const auto& p : points) {
    if (p.doc_type == doc_type) out.points.push_back(p);
  }
  return out;
}

ScoreSeries build_series(const std::vector<DocumentResult>& results, const ScoreScheme& s) {
  ScoreSeries out;
  for (const auto& r : results) {
    if (r.sentence_count() == 0) continue;
    out.points.push_back({r.date, r.doc_id, r.doc_type, document_score(r, s)});
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const ScorePoint& a, const ScorePoint& b) { return a.date < b.date; });
  return out;
}

ScoreSeries normalize_series(const ScoreSeries& s) {
  if (s.size() < 2) throw ScoringError("normalisation needs at least two points");
  const auto v = s.values();
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) throw ScoringError("normalisation of a zero-variance series");
  ScoreSeries out = s;
  for (auto& p : out.points) p.score = (p.score - mean) / sd;
  return out;
}

ScoreSeries moving_average(const ScoreSeries& s, std::size_t window) {
  if (window < 1) throw std::invalid_argument("moving_average requires window >= 1");
  ScoreSeries out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t count = std::min(window, i + 1);
    double sum = 0.0;
    for (std::size_t j = i + 1 - count; j <= i; ++j) sum += s.points[j].score;
    out.points[i].score = sum / static_cast<double>(count);
  }
  return out;
}

ClassificationMetrics classification_metrics(const std::vector<Stance>& pred,
                                             const std::vector<Stance>& gold, const ScoreScheme& s) {
  if (pred.size() != gold.size()) {
    throw std::invalid_argument("classification_metrics: " + std::to_string(pred.size()) +
                                " predictions vs " + std::to_string(gold.size()) + " labels");
  }
  if (pred.empty()) throw std::invalid_argument("classification_metrics: empty input");
  const bool three = s.mode == SchemeMode::ThreeClass;
  std::size_t hits = 0;
  double err = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const Stance p = three ? collapse_to_three(pred[i]) : pred[i];
    const Stance g = three ? collapse_to_three(gold[i]) : gold[i];
    if (p == g) ++hits;
    err += s.points(p) - s.points(g);
  }
  const double n = static_cast<double>(pred.size());
  return {static_cast<double>(hits) / n, err / n};
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_series_csv(std::ostream& out, const ScoreSeries& s) {
  out << "date,doc_id,doc_type,score\n";
  for (const auto& p : s.points) {
    out << format_iso_date(p.date) << ',' << csv_field(p.doc_id) << ',' << csv_field(p.doc_type)
        << ',' << format_double(p.score) << '\n';
  }
}

ScoreSeries read_series_csv(std::istream& in) {
  ScoreSeries out;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ScoringError("series CSV is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "date,doc_id,doc_type,score") {
    throw ScoringError("series CSV header must be 'date,doc_id,doc_type,score'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto f = split_csv_line(line);
    if (f.size() != 4) throw ScoringError("series CSV line " + std::to_string(line_no) + ": expected 4 fields");
    auto date = parse_iso_date(f[0]);
    if (!date) throw ScoringError("series CSV line " + std::to_string(line_no) + ": bad date '" + f[0] + "'");
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), score);
    if (ec != std::errc{} || ptr != f[3].data() + f[3].size()) {
      throw ScoringError("series CSV line " + std::to_string(line_no) + ": bad score '" + f[3] + "'");
    }
    if (!out.points.empty() && *date < out.points.back().date) {
      throw ScoringError("series CSV line " + std::to_string(line_no) + ": dates must be non-decreasing");
    }
    out.points.push_back({*date, f[1], f[2], score});
  }
  return out;
}

}  // namespace stancetree
