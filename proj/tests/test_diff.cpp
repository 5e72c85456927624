#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "stancetree/diff.hpp"
#include "support/results.hpp"

using namespace stancetree;
using testutil::make_doc;

namespace {

const std::set<Stance> kHawkish = {Stance::Hawkish};
const std::set<Stance> kAll(kAllStances.begin(), kAllStances.end());

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string w;
  for (char c : s + " ") {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!w.empty()) {
      out.push_back(w);
      w.clear();
    }
  }
  return out;
}

/// Smoothed TF-IDF cosine computed from scratch over `corpus`.
double hand_cosine(const std::vector<std::string>& corpus, const std::string& a, const std::string& b) {
  if (a == b) return 1.0;
  std::map<std::string, int> df;
  for (const auto& d : corpus) {
    auto w = words(d);
    std::set<std::string> u(w.begin(), w.end());
    for (const auto& t : u) ++df[t];
  }
  const double n = static_cast<double>(corpus.size());
  auto vec = [&](const std::string& s) {
    std::map<std::string, double> v;
    for (const auto& t : words(s)) v[t] += 1.0;
    for (auto& [t, x] : v) x *= std::log((1.0 + n) / (1.0 + df[t])) + 1.0;
    return v;
  };
  auto va = vec(a), vb = vec(b);
  double dot = 0, na = 0, nb = 0;
  for (auto& [t, x] : va) {
    na += x * x;
    if (vb.count(t)) dot += x * vb[t];
  }
  for (auto& [t, x] : vb) nb += x * x;
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

struct FixedSimilarity final : SentenceSimilarity {
  std::map<std::pair<std::string, std::string>, double> table;
  double similarity(std::string_view a, std::string_view b) const override {
    auto it = table.find({std::string(a), std::string(b)});
    return it == table.end() ? 0.0 : it->second;
  }
};

const DocumentResult kNew = make_doc("new", "2024-02-01",
                                     {{"Inflation remains too high.", Stance::Hawkish},
                                      {"Labour market conditions are tight.", Stance::Hawkish},
                                      {"Housing prices rose sharply again.", Stance::Hawkish},
                                      {"Growth was subdued.", Stance::Dovish}});
const DocumentResult kOld = make_doc("old", "2024-01-01",
                                     {{"Inflation remains high.", Stance::Hawkish},
                                      {"Labour market conditions eased.", Stance::Hawkish},
                                      {"Wages growth picked up.", Stance::Hawkish},
                                      {"Inflation remains too high.", Stance::Neutral}});

}  // namespace

TEST_CASE("sentence similarity") {
  CHECK(sentence_similarity("Rates rose.", "Rates rose.") == 1.0);
  CHECK(sentence_similarity("Rates rose.", "Inflation fell.") == 0.0);
  CHECK(sentence_similarity("rates rose sharply", "rates fell") ==
        doctest::Approx(sentence_similarity("rates fell", "rates rose sharply")).epsilon(1e-15));
  const std::vector<std::string> corpus = {"Inflation remains high.", "Inflation remains too high.", "Growth fell."};
  TfidfSimilarity sim(corpus);
  CHECK(std::abs(sim.similarity(corpus[0], corpus[1]) - hand_cosine(corpus, corpus[0], corpus[1])) < 1e-9);
}

TEST_CASE("identical documents have no new points") {
  for (const auto& doc : {kNew, kOld}) {
    const DiffResult d = partition_points(doc, doc, kAll);
    CHECK(d.new_points.empty());
    CHECK(d.similar.size() == doc.sentence_count());
    for (const auto& p : d.similar) {
      CHECK(p.similarity == 1.0);
      CHECK(p.new_sentence == p.old_sentence);
    }
  }
}

TEST_CASE("nothing to match against") {
  const auto dovish_only = make_doc("o", "2024-01-01", {{"Inflation remains too high.", Stance::Dovish}});
  const DiffResult d = partition_points(kNew, dovish_only, kHawkish, 0.0);
  CHECK(d.similar.empty());
  CHECK(d.new_points == std::vector<std::string>{"Inflation remains too high.", "Labour market conditions are tight.",
                                                 "Housing prices rose sharply again."});
}

TEST_CASE("3-vs-3 fixture matches the pairwise oracle") {
  std::vector<std::string> corpus;
  for (const auto* doc : {&kNew, &kOld}) {
    for (const auto& s : doc->paragraphs[0].sentences) corpus.push_back(s.text);
  }
  std::vector<std::string> news, olds;
  for (const auto& s : kNew.paragraphs[0].sentences) {
    if (s.stance == Stance::Hawkish) news.push_back(s.text);
  }
  for (const auto& s : kOld.paragraphs[0].sentences) {
    if (s.stance == Stance::Hawkish) olds.push_back(s.text);
  }
  REQUIRE(news.size() == 3);
  REQUIRE(olds.size() == 3);

  const double tau = 0.7;
  std::vector<std::string> expect_new;
  std::vector<SimilarPoint> expect_similar;
  for (const auto& n : news) {
    double best = -1;
    std::string match;
    for (const auto& o : olds) {
      const double c = hand_cosine(corpus, n, o);
      if (c > best) {
        best = c;
        match = o;
      }
    }
    if (best >= tau) {
      expect_similar.push_back({n, match, best});
    } else {
      expect_new.push_back(n);
    }
  }
  const DiffResult d = partition_points(kNew, kOld, kHawkish, tau);
  CHECK(d.new_points == expect_new);
  REQUIRE(d.similar.size() == expect_similar.size());
  for (std::size_t i = 0; i < d.similar.size(); ++i) {
    CHECK(d.similar[i].new_sentence == expect_similar[i].new_sentence);
    CHECK(d.similar[i].old_sentence == expect_similar[i].old_sentence);
    CHECK(std::abs(d.similar[i].similarity - expect_similar[i].similarity) < 1e-9);
  }
  CHECK(expect_similar.size() == 1);
  CHECK(expect_new.size() == 2);
}

TEST_CASE("raising tau never adds similar points") {
  const DocumentResult a = make_doc("a", "2024-02-01",
                                    {{"Rates rose and inflation stayed high.", Stance::Hawkish},
                                     {"Inflation stayed high.", Stance::Hawkish},
                                     {"Wages rose.", Stance::Hawkish},
                                     {"Consumption fell sharply.", Stance::Hawkish},
                                     {"Rates fell.", Stance::Hawkish}});
  const DocumentResult b = make_doc("b", "2024-01-01",
                                    {{"Inflation stayed high and wages rose.", Stance::Hawkish},
                                     {"Rates rose.", Stance::Hawkish},
                                     {"Consumption fell.", Stance::Hawkish}});
  std::set<std::string> previous_new;
  bool first = true;
  for (int step = 0; step <= 20; ++step) {
    const double tau = step / 20.0;
    const DiffResult d = partition_points(a, b, kHawkish, tau);
    CHECK(d.similar.size() + d.new_points.size() == 5);
    for (const auto& p : d.similar) {
      CHECK(p.similarity >= tau);
      CHECK(p.similarity <= 1.0);
    }
    std::set<std::string> now(d.new_points.begin(), d.new_points.end());
    if (!first) {
      for (const auto& s : previous_new) CHECK(now.count(s) == 1);
    }
    if (step == 0) CHECK(d.new_points.empty());
    previous_new = now;
    first = false;
  }
  CHECK_THROWS_AS(partition_points(a, b, kHawkish, 1.01), std::invalid_argument);
  CHECK_THROWS_AS(partition_points(a, b, kHawkish, -0.1), std::invalid_argument);
}

TEST_CASE("ties go to the earlier old sentence") {
  FixedSimilarity sim;
  sim.table[{"n", "o1"}] = 0.8;
  sim.table[{"n", "o2"}] = 0.8;
  const auto nd = make_doc("n", "2024-02-01", {{"n", Stance::Hawkish}});
  const auto od = make_doc("o", "2024-01-01", {{"o1", Stance::Hawkish}, {"o2", Stance::Hawkish}});
  const DiffResult d = partition_points(nd, od, kHawkish, 0.5, &sim);
  REQUIRE(d.similar.size() == 1);
  CHECK(d.similar[0].old_sentence == "o1");
}

TEST_CASE("summaries") {
  MockScript script;
  script.completions.push_back({"Summarise", "Inflation pressures broadened."});
  script.fail_when_prompt_contains.push_back("NEVER-CALLED");
  MockBackend mock(script);
  ReasonerConfig config;
  config.retry.max_attempts = 1;
  CHECK(summarize_points({}, mock, config).empty());
  CHECK(summarize_points({"Rates rose.", "Wages rose."}, mock, config) == "Inflation pressures broadened.");
  const std::vector<std::string> points = {"Rates rose.", "Wages growth, at 4 per cent, picked up.", "Odd \"one\"."};
  const std::string prompt = summary_prompt(points, config);
  for (const auto& p : points) CHECK(prompt.find(p) != std::string::npos);
  CHECK_THROWS_AS(summarize_points({"NEVER-CALLED"}, mock, config), TransportError);
}

TEST_CASE("diff JSON") {
  const DiffResult d = partition_points(kNew, kOld, kHawkish, 0.7);
  const std::string j = diff_to_json(d);
  CHECK(j.find("\"stance\": [\n    \"hawkish\"\n  ]") != std::string::npos);
  CHECK(j.find("\"new_points\"") != std::string::npos);
  CHECK(j.back() == '\n');
}
