#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "stancetree/scoring.hpp"
#include "support/results.hpp"

using namespace stancetree;
using testutil::make_doc;

namespace {

ScoreSeries series_of(const std::vector<double>& v) {
  ScoreSeries s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto d = std::chrono::sys_days{std::chrono::year{2020} / 1 / 1} + std::chrono::days{static_cast<int>(i)};
    s.points.push_back({std::chrono::year_month_day{d}, "d" + std::to_string(i), "statement", v[i]});
  }
  return s;
}

Stance mirror(Stance s) { return static_cast<Stance>(4 - static_cast<int>(s)); }

}  // namespace

TEST_CASE("points span both scales") {
  const auto five = ScoreScheme::five_class();
  const auto three = ScoreScheme::three_class();
  std::vector<double> p5, p3;
  for (Stance s : kAllStances) {
    p5.push_back(five.points(s));
    p3.push_back(three.points(s));
  }
  CHECK(p5 == std::vector<double>{1, 2, 3, 4, 5});
  CHECK(p3 == std::vector<double>{-1, -1, 0, 1, 1});
  CHECK(*std::min_element(p3.begin(), p3.end()) == -1.0);
  CHECK(*std::max_element(p3.begin(), p3.end()) == 1.0);
  for (Stance s : kAllStances) CHECK(three.points(collapse_to_three(s)) == three.points(s));
}

TEST_CASE("document score") {
  CHECK(document_score(make_doc("a", "2024-01-01", {{"x", Stance::Neutral}, {"y", Stance::Neutral}}),
                       ScoreScheme::five_class()) == 3.0);
  CHECK(document_score(make_doc("a", "2024-01-01", {{"x", Stance::Hawkish}, {"y", Stance::Dovish}}),
                       ScoreScheme::three_class()) == 0.0);

  const auto doc = make_doc("a", "2024-01-01",
                            {{"1", Stance::Hawkish},
                             {"2", Stance::Neutral},
                             {"3", Stance::LeaningDovish},
                             {"4", Stance::Hawkish},
                             {"5", Stance::Neutral},
                             {"6", Stance::LeaningDovish},
                             {"7", Stance::Neutral}});
  CHECK(std::abs(document_score(doc, ScoreScheme::five_class()) - 23.0 / 7.0) < 1e-12);
  CHECK_THROWS_AS(document_score(make_doc("e", "2024-01-01", {}), ScoreScheme::five_class()), ScoringError);
}

TEST_CASE("document score properties") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, Stance>> sentences;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) sentences.push_back({"s" + std::to_string(i), static_cast<Stance>(rng() % 5)});
    auto shuffled = sentences;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto mirrored = sentences;
    for (auto& [t, s] : mirrored) s = mirror(s);
    for (auto scheme : {ScoreScheme::three_class(), ScoreScheme::five_class()}) {
      CHECK(document_score(make_doc("a", "2024-01-01", sentences), scheme) ==
            doctest::Approx(document_score(make_doc("a", "2024-01-01", shuffled), scheme)).epsilon(1e-12));
    }
    CHECK(document_score(make_doc("a", "2024-01-01", mirrored), ScoreScheme::three_class()) ==
          doctest::Approx(-document_score(make_doc("a", "2024-01-01", sentences), ScoreScheme::three_class()))
              .epsilon(1e-12));
  }
}

TEST_CASE("build_series orders by date and skips empty documents") {
  const std::vector<DocumentResult> docs = {
      make_doc("c", "2024-03-01", {{"x", Stance::Hawkish}}),
      make_doc("a", "2024-01-01", {{"x", Stance::Dovish}}, "minutes"),
      make_doc("e", "2024-02-01", {}),
      make_doc("b", "2024-01-01", {{"x", Stance::Neutral}}),
  };
  const ScoreSeries s = build_series(docs, ScoreScheme::five_class());
  REQUIRE(s.size() == 3);
  CHECK(s.points[0].doc_id == "a");
  CHECK(s.points[1].doc_id == "b");
  CHECK(s.points[2].doc_id == "c");
  CHECK(s.values() == std::vector<double>{1, 3, 5});
  CHECK(s.filter("minutes").size() == 1);
}

TEST_CASE("normalize_series") {
  CHECK(normalize_series(series_of({1, 3})).values() == std::vector<double>{-1, 1});
  CHECK_THROWS_AS(normalize_series(series_of({2, 2, 2})), ScoringError);
  CHECK_THROWS_AS(normalize_series(series_of({2})), ScoringError);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(2.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(2 + rng() % 30);
    for (auto& x : v) x = g(rng);
    const auto z = normalize_series(series_of(v)).values();
    double mean = 0.0, ss = 0.0;
    for (double x : z) mean += x;
    mean /= static_cast<double>(z.size());
    for (double x : z) ss += (x - mean) * (x - mean);
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(std::sqrt(ss / static_cast<double>(z.size())) - 1.0) < 1e-9);
  }
}

TEST_CASE("moving_average") {
  CHECK(moving_average(series_of({1, 2, 3, 4}), 3).values() == std::vector<double>{1, 1.5, 2, 3});
  CHECK(moving_average(series_of({4, 1, 7}), 1).values() == std::vector<double>{4, 1, 7});
  CHECK(moving_average(series_of({2.5, 2.5, 2.5, 2.5}), 2).values() == std::vector<double>(4, 2.5));
  CHECK(moving_average(series_of({}), 3).size() == 0);
  CHECK_THROWS_AS(moving_average(series_of({1}), 0), std::invalid_argument);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + rng() % 20);
    for (auto& x : v) x = u(rng);
    const auto m = moving_average(series_of(v), 1 + rng() % 5).values();
    REQUIRE(m.size() == v.size());
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    for (double x : m) {
      CHECK(x >= lo - 1e-12);
      CHECK(x <= hi + 1e-12);
    }
  }
}

TEST_CASE("classification metrics") {
  const std::vector<Stance> mixed = {Stance::Dovish, Stance::LeaningHawkish, Stance::Neutral};
  auto m = classification_metrics(mixed, mixed, ScoreScheme::five_class());
  CHECK(m.accuracy == 1.0);
  CHECK(m.mean_error == 0.0);

  m = classification_metrics(std::vector<Stance>(4, Stance::Hawkish), std::vector<Stance>(4, Stance::Dovish),
                             ScoreScheme::three_class());
  CHECK(m.accuracy == 0.0);
  CHECK(m.mean_error == 2.0);

  m = classification_metrics({Stance::Neutral, Stance::Hawkish}, {Stance::Hawkish, Stance::Hawkish},
                             ScoreScheme::three_class());
  CHECK(m.accuracy == 0.5);
  CHECK(m.mean_error == -0.5);

  m = classification_metrics({Stance::LeaningHawkish}, {Stance::Hawkish}, ScoreScheme::three_class());
  CHECK(m.accuracy == 1.0);
  m = classification_metrics({Stance::LeaningHawkish}, {Stance::Hawkish}, ScoreScheme::five_class());
  CHECK(m.accuracy == 0.0);
  CHECK(m.mean_error == -1.0);

  CHECK_THROWS_AS(classification_metrics({Stance::Neutral}, {}, ScoreScheme::five_class()), std::invalid_argument);
  CHECK_THROWS_AS(classification_metrics({}, {}, ScoreScheme::five_class()), std::invalid_argument);
}

TEST_CASE("series CSV round trip") {
  ScoreSeries s = series_of({1.0 / 3.0, -2.25, 4.0});
  s.points[1].doc_id = "odd,\"id\"";
  std::ostringstream out;
  write_series_csv(out, s);
  CHECK(out.str().rfind("date,doc_id,doc_type,score\n2020-01-01,d0,statement,", 0) == 0);
  std::istringstream in(out.str());
  const ScoreSeries back = read_series_csv(in);
  CHECK(back.points == s.points);

  std::istringstream bad("date,doc_id,doc_type,score\n2020-13-01,a,b,1\n");
  CHECK_THROWS(read_series_csv(bad));
  std::istringstream bad_header("when,id\n");
  CHECK_THROWS(read_series_csv(bad_header));
}
