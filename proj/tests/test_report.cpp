#include "doctest.h"


#include "stancetree/report.hpp"
#include "support/fixtures.hpp"
#include "support/html.hpp"
#include "support/results.hpp"

using namespace stancetree;
using testutil::count_of;
using testutil::external_urls;
using testutil::sentence_bodies;
using testutil::spans;

namespace {

TopicTrace make_trace(const std::string& mnemonic, std::vector<std::pair<std::string, std::string>> steps,
                      Stance s, std::string rationale = {}) {
  TopicTrace t;
  t.mnemonic = mnemonic;
  for (std::size_t i = 0; i < steps.size(); ++i) t.path.steps.push_back({steps[i].first, steps[i].second, i % 2});
  t.assessment = Terminal{s, std::move(rationale)};
  t.path.terminal = t.assessment;
  return t;
}

DocumentResult rich_doc() {
  DocumentResult r = testutil::make_doc("rich <doc>", "2024-05-07",
                                        {{"Inflation is \"too\" high & sticky.", Stance::Hawkish},
                                         {"Rates rose.", Stance::LeaningHawkish},
                                         {"Rates rose. Again.", Stance::Neutral}},
                                        "minutes");
  auto& p = r.paragraphs[0];
  p.traces.push_back(make_trace("CORE-INFLATION",
                                {{"How is inflation <described>?", "inflation risk discussed"},
                                 {"Is it 'broad'?", "yes & more"}},
                                Stance::Hawkish, "broad-based pressure"));
  p.traces.push_back(make_trace("LABOUR-WAGES", {{"How did wages move?", "up"}}, Stance::LeaningHawkish));
  p.topics.entries = {{"CORE-INFLATION", 0.0325, 1}, {"LABOUR-WAGES", 0.0161, 2}};
  p.paragraph_class = Stance::Hawkish;
  ParagraphResult q;
  q.paragraph_index = 1;
  q.text = "Growth slowed.";
  q.sentences = {{"Growth slowed.", Stance::Dovish}};
  q.degraded = true;
  q.warnings = {"topic X-Y: mock backend: scripted failure"};
  q.paragraph_class = Stance::Dovish;
  r.paragraphs.push_back(q);
  r.warnings = {"paragraph 1: topic X-Y: mock backend: scripted failure"};
  return r;
}

}  // namespace

TEST_CASE("one neutral sentence") {
  const DocumentResult r = testutil::make_doc("d1", "2024-01-01", {{"Nothing changed.", Stance::Neutral}});
  const std::string html = render_document_report(r, "").html;
  CHECK(count_of(html, "class=\"sentence\"") == 1);
  CHECK(html.find("data-stance=\"neutral\" data-trace-ids=\"\"") != std::string::npos);
  CHECK(sentence_bodies(html) == std::vector<std::string>{"Nothing changed."});
  CHECK(html.find(std::string(kScriptMarker)) != std::string::npos);
  CHECK(html.find("<script") == std::string::npos);
}

TEST_CASE("trace blocks follow retrieval order") {
  const std::string html = render_document_report(rich_doc(), "").html;
  const auto a = html.find("id=\"p0-t0\" data-mnemonic=\"CORE-INFLATION\"");
  const auto b = html.find("id=\"p0-t1\" data-mnemonic=\"LABOUR-WAGES\"");
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  CHECK(a < b);
  CHECK(count_of(html, "class=\"trace\"") == 2);
  CHECK(html.find("data-trace-ids=\"p0-t0 p0-t1\"") != std::string::npos);
}

TEST_CASE("self-contained and complete") {
  std::vector<DocumentResult> docs = {rich_doc()};
  for (const char* id : {"mins-2023-02", "stmt-2023-03", "mins-2023-03", "stmt-2023-04"}) {
    docs.push_back(load_result_file(testutil::source_path(std::string("tests/fixtures/golden/") + id + ".result.json")));
  }
  for (const auto& r : docs) {
    for (const std::string script : {"", "document.title = 'x'; // </script> inert"}) {
      const std::string html = render_document_report(r, script).html;
      CHECK(external_urls(html).empty());
      CHECK(html.find("http://") == std::string::npos);
      CHECK(html.find("https://") == std::string::npos);

      std::vector<std::string> expected;
      for (const auto& p : r.paragraphs) {
        for (const auto& s : p.sentences) expected.push_back(s.text);
      }
      CHECK(sentence_bodies(html) == expected);
      for (const auto& s : expected) {
        std::size_t occurrences = 0;
        for (const auto& body : sentence_bodies(html)) occurrences += body == s;
        std::size_t copies = 0;
        for (const auto& e : expected) copies += e == s;
        CHECK(occurrences == copies);
      }

      std::vector<std::string> questions, answers;
      for (const auto& p : r.paragraphs) {
        for (const auto& t : p.traces) {
          for (const auto& step : t.path.steps) {
            questions.push_back(step.question);
            answers.push_back(step.answer);
          }
        }
      }
      CHECK(spans(html, "q") == questions);
      CHECK(spans(html, "a") == answers);
    }
  }
}

TEST_CASE("escaping and script embedding") {
  const std::string html = render_document_report(rich_doc(), "let a = 1 < 2; </script>").html;
  CHECK(html.find("Inflation is &quot;too&quot; high &amp; sticky.") != std::string::npos);
  CHECK(html.find("rich &lt;doc&gt;") != std::string::npos);
  CHECK(html.find("How is inflation &lt;described&gt;?") != std::string::npos);
  CHECK(html.find("<<") == std::string::npos);
  const auto marker = html.find(std::string(kScriptMarker));
  REQUIRE(marker != std::string::npos);
  CHECK(html.compare(marker + kScriptMarker.size(), 10, "\n<script>\n") == 0);
  CHECK(html.find("let a = 1 < 2; <\\/script>") != std::string::npos);
  CHECK(count_of(html, "</script>") == 1);
  CHECK(html.find("Degraded") != std::string::npos);
  CHECK(html.find("scripted failure") != std::string::npos);
}

TEST_CASE("palette overrides") {
  ReportOptions opt;
  opt.palette["hawkish"] = "#000000";
  const std::string html = render_document_report(rich_doc(), "", opt).html;
  CHECK(html.find("[data-stance=\"hawkish\"] { background: #000000; }") != std::string::npos);
  CHECK(html.find("[data-stance=\"dovish\"] { background: #2166ac; }") != std::string::npos);
  CHECK(default_palette().size() == 5);
}

TEST_CASE("rendering is deterministic") {
  CHECK(render_document_report(rich_doc(), "x").html == render_document_report(rich_doc(), "x").html);
  const auto bundle = render_document_report(rich_doc(), "");
  CHECK(bundle.result == rich_doc());
  CHECK(bundle.warnings == rich_doc().warnings);
}

TEST_CASE("result JSON round trip") {
  const DocumentResult r = rich_doc();
  const std::string once = export_result_json(r);
  CHECK(once.back() == '\n');
  const DocumentResult back = load_result_json(once);
  CHECK(back == r);
  CHECK(export_result_json(back) == once);
  CHECK_THROWS_AS(load_result_json("{}"), ResultFormatError);
  CHECK_THROWS_AS(load_result_json("not json"), ResultFormatError);
  CHECK_THROWS_AS(load_result_file("/nonexistent.result.json"), ResultFormatError);
}

TEST_CASE("golden reports") {
  for (const char* id : {"mins-2023-02", "stmt-2023-03", "mins-2023-03", "stmt-2023-04"}) {
    const std::string base = testutil::source_path(std::string("tests/fixtures/golden/") + id);
    const std::string json = testutil::read_text(base + ".result.json");
    const DocumentResult r = load_result_json(json);
    CHECK(export_result_json(r) == json);
    CHECK_MESSAGE(render_document_report(r, "").html == testutil::read_text(base + ".report.html"), id);
  }
}
