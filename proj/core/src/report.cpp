#include "stancetree/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stancetree {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

ojson trace_to_json(const TopicTrace& t) {
  ojson steps = ojson::array();
  for (const auto& s : t.path.steps) {
    ojson step = ojson::object();
    step["question"] = s.question;
    step["answer"] = s.answer;
    step["answer_index"] = s.answer_index;
    steps.push_back(std::move(step));
  }
  ojson assessment = ojson::object();
  assessment["stance"] = std::string(to_string(t.assessment.stance));
  assessment["rationale"] = t.assessment.rationale;
  ojson j = ojson::object();
  j["mnemonic"] = t.mnemonic;
  j["steps"] = std::move(steps);
  j["assessment"] = std::move(assessment);
  return j;
}

Stance stance_field(const ojson& j, const char* key) {
  const std::string label = j.at(key).get<std::string>();
  auto s = parse_stance(label);
  if (!s) throw ResultFormatError("unknown stance '" + label + "'");
  return *s;
}

}  // namespace

std::string export_result_json(const DocumentResult& r) {
  ojson doc = ojson::object();
  doc["doc_id"] = r.doc_id;
  doc["date"] = format_iso_date(r.date);
  doc["doc_type"] = r.doc_type;
  ojson paragraphs = ojson::array();
  for (const auto& p : r.paragraphs) {
    ojson pj = ojson::object();
    pj["index"] = p.paragraph_index;
    pj["text"] = p.text;
    pj["paragraph_class"] = std::string(to_string(p.paragraph_class));
    pj["degraded"] = p.degraded;
    ojson topics = ojson::array();
    for (const auto& e : p.topics.entries) {
      ojson tj = ojson::object();
      tj["mnemonic"] = e.mnemonic;
      tj["score"] = e.score;
      tj["rank"] = e.rank;
      topics.push_back(std::move(tj));
    }
    pj["topics"] = std::move(topics);
    ojson traces = ojson::array();
    for (const auto& t : p.traces) traces.push_back(trace_to_json(t));
    pj["traces"] = std::move(traces);
    ojson sentences = ojson::array();
    for (const auto& s : p.sentences) {
      ojson sj = ojson::object();
      sj["text"] = s.text;
      sj["stance"] = std::string(to_string(s.stance));
      sentences.push_back(std::move(sj));
    }
    pj["sentences"] = std::move(sentences);
    pj["warnings"] = p.warnings;
    paragraphs.push_back(std::move(pj));
  }
  doc["paragraphs"] = std::move(paragraphs);
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

DocumentResult load_result_json(std::string_view json_text) {
  ojson doc;
  try {
    doc = ojson::parse(json_text.begin(), json_text.end());
  } catch (const ojson::parse_error& e) {
    throw ResultFormatError(std::string("result file is not valid JSON: ") + e.what());
  }
  try {
    DocumentResult r;
    r.doc_id = doc.at("doc_id").get<std::string>();
    const std::string date = doc.at("date").get<std::string>();
    auto parsed = parse_iso_date(date);
    if (!parsed) throw ResultFormatError("bad date '" + date + "'");
    r.date = *parsed;
    r.doc_type = doc.at("doc_type").get<std::string>();
    for (const auto& pj : doc.at("paragraphs")) {
      ParagraphResult p;
      p.paragraph_index = pj.at("index").get<std::size_t>();
      p.text = pj.at("text").get<std::string>();
      p.paragraph_class = stance_field(pj, "paragraph_class");
      p.degraded = pj.at("degraded").get<bool>();
      for (const auto& tj : pj.at("topics")) {
        p.topics.entries.push_back({tj.at("mnemonic").get<std::string>(), tj.at("score").get<double>(),
                                    tj.at("rank").get<std::size_t>()});
      }
      for (const auto& tj : pj.at("traces")) {
        TopicTrace t;
        t.mnemonic = tj.at("mnemonic").get<std::string>();
        for (const auto& sj : tj.at("steps")) {
          t.path.steps.push_back({sj.at("question").get<std::string>(), sj.at("answer").get<std::string>(),
                                  sj.at("answer_index").get<std::size_t>()});
        }
        const auto& aj = tj.at("assessment");
        t.assessment = Terminal{stance_field(aj, "stance"), aj.at("rationale").get<std::string>()};
        t.path.terminal = t.assessment;
        p.traces.push_back(std::move(t));
      }
      for (const auto& sj : pj.at("sentences")) {
        p.sentences.push_back({sj.at("text").get<std::string>(), stance_field(sj, "stance")});
      }
      p.warnings = pj.at("warnings").get<std::vector<std::string>>();
      r.paragraphs.push_back(std::move(p));
    }
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < r.paragraphs.size(); ++i) {
      if (r.paragraphs[i].paragraph_index != i) {
        throw ResultFormatError("paragraph indices must be contiguous from 0");
      }
    }
    return r;
  } catch (const ojson::exception& e) {
    throw ResultFormatError(std::string("result file has an unexpected shape: ") + e.what());
  }
}

DocumentResult load_result_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResultFormatError("cannot open result file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_result_json(ss.str());
}

// ---------------------------------------------------------------------------
// HTML
// ---------------------------------------------------------------------------

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::map<std::string, std::string> default_palette() {
  return {{"dovish", "#2166ac"},
          {"leaning dovish", "#92c5de"},
          {"neutral", "#f7f7f7"},
          {"leaning hawkish", "#f4a582"},
          {"hawkish", "#b2182b"}};
}

namespace {

constexpr std::string_view kBaseCss = R"css(
body { font-family: system-ui, sans-serif; margin: 0; color: #1a1a1a; background: #fff; }
header { padding: 1rem 1.5rem; border-bottom: 1px solid #ddd; }
header h1 { margin: 0 0 .25rem 0; font-size: 1.3rem; }
header p { margin: 0; color: #555; }
.warnings { margin: .5rem 0 0 0; color: #8a4b00; }
section.paragraph { display: grid; grid-template-columns: 2fr 2fr 1fr; gap: 1rem;
  padding: 1rem 1.5rem; border-bottom: 1px solid #eee; }
.col h2 { font-size: .8rem; text-transform: uppercase; letter-spacing: .05em; color: #666; margin: 0 0 .5rem 0; }
.sentence { padding: .1rem .15rem; border-radius: 3px; cursor: pointer; line-height: 1.7; }
.trace { border: 1px solid #ddd; border-radius: 4px; padding: .5rem .75rem; margin-bottom: .5rem; }
.trace h3 { font-size: .95rem; margin: 0 0 .25rem 0; }
.trace ol { margin: 0; padding-left: 1.2rem; }
.trace .q { display: block; color: #333; }
.trace .a { display: block; font-weight: 600; }
.assessment, .class { font-weight: 600; }
.hidden { display: none; }
table.topics { border-collapse: collapse; font-size: .85rem; }
table.topics td, table.topics th { padding: .1rem .4rem; text-align: left; }
)css";

std::string fmt_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

ReportBundle render_document_report(const DocumentResult& r, std::string_view script_asset,
                                    const ReportOptions& options) {
  auto palette = default_palette();
  for (const auto& [k, v] : options.palette) palette[k] = v;

  std::ostringstream h;
  h << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
    << "<title>Stance report: " << html_escape(r.doc_id) << "</title>\n<style>" << kBaseCss;
  for (Stance s : kAllStances) {
    const std::string label(to_string(s));
    h << "[data-stance=\"" << label << "\"] { background: " << html_escape(palette[label]) << "; }\n";
  }
  h << "</style>\n</head>\n<body>\n";

  h << "<header>\n<h1>Stance report: " << html_escape(r.doc_id) << "</h1>\n<p>"
    << format_iso_date(r.date) << " &middot; " << html_escape(r.doc_type) << " &middot; "
    << r.paragraphs.size() << " paragraph(s), " << r.sentence_count() << " sentence(s)</p>\n";
  if (!r.warnings.empty()) {
    h << "<ul class=\"warnings\">\n";
    for (const auto& w : r.warnings) h << "<li>" << html_escape(w) << "</li>\n";
    h << "</ul>\n";
  }
  h << "</header>\n<main>\n";

  for (const auto& p : r.paragraphs) {
    const std::string pid = "p" + std::to_string(p.paragraph_index);
    std::string trace_ids;
    for (std::size_t t = 0; t < p.traces.size(); ++t) {
      if (t) trace_ids += ' ';
      trace_ids += pid + "-t" + std::to_string(t);
    }

    h << "<section class=\"paragraph\" id=\"" << pid << "\">\n";

    h << "<div class=\"col text\">\n<h2>Paragraph " << p.paragraph_index + 1 << "</h2>\n<p>";
    for (std::size_t s = 0; s < p.sentences.size(); ++s) {
      const auto& sent = p.sentences[s];
      const std::string label(to_string(sent.stance));
      if (s) h << ' ';
      h << "<span class=\"sentence\" id=\"" << pid << "-s" << s << "\" data-stance=\"" << label
        << "\" data-trace-ids=\"" << trace_ids << "\" title=\"" << label << "\">"
        << html_escape(sent.text) << "</span>";
    }
    h << "</p>\n</div>\n";

    h << "<div class=\"col reasoning\">\n<h2>Reasoning</h2>\n";
    for (std::size_t t = 0; t < p.traces.size(); ++t) {
      const auto& trace = p.traces[t];
      h << "<div class=\"trace\" id=\"" << pid << "-t" << t << "\" data-mnemonic=\""
        << html_escape(trace.mnemonic) << "\">\n<h3>" << html_escape(trace.mnemonic) << "</h3>\n<ol>\n";
      for (const auto& step : trace.path.steps) {
        h << "<li><span class=\"q\">" << html_escape(step.question) << "</span><span class=\"a\">"
          << html_escape(step.answer) << "</span></li>\n";
      }
      const std::string label(to_string(trace.assessment.stance));
      h << "</ol>\n<p class=\"assessment\" data-stance=\"" << label << "\">Assessment: " << label
        << "</p>\n";
      if (!trace.assessment.rationale.empty()) {
        h << "<p class=\"rationale\">" << html_escape(trace.assessment.rationale) << "</p>\n";
      }
      h << "</div>\n";
    }
    if (p.traces.empty()) h << "<p class=\"empty\">No decision trees were completed.</p>\n";
    h << "</div>\n";

    const std::string cls(to_string(p.paragraph_class));
    h << "<div class=\"col synthesis\">\n<h2>Synthesis</h2>\n<div class=\"synthesis-block\">\n"
      << "<p class=\"class\" data-stance=\"" << cls << "\">" << cls << "</p>\n";
    if (p.degraded) h << "<p class=\"degraded\">Degraded: deterministic fallback used.</p>\n";
    if (!p.topics.empty()) {
      h << "<table class=\"topics\">\n<tr><th>#</th><th>Topic</th><th>Score</th></tr>\n";
      for (const auto& e : p.topics.entries) {
        h << "<tr><td>" << e.rank << "</td><td>" << html_escape(e.mnemonic) << "</td><td>"
          << fmt_score(e.score) << "</td></tr>\n";
      }
      h << "</table>\n";
    }
    if (!p.warnings.empty()) {
      h << "<ul class=\"warnings\">\n";
      for (const auto& w : p.warnings) h << "<li>" << html_escape(w) << "</li>\n";
      h << "</ul>\n";
    }
    h << "</div>\n</div>\n</section>\n";
  }

  h << "</main>\n" << kScriptMarker << "\n";
  if (!script_asset.empty()) {
    std::string script(script_asset);
    for (std::size_t pos = 0; (pos = script.find("</script", pos)) != std::string::npos; pos += 9) {
      script.replace(pos, 8, "<\\/script");
    }
    h << "<script>\n" << script << "\n</script>\n";
  }
  h << "</body>\n</html>\n";

  return ReportBundle{r, h.str(), r.warnings};
}

}  // namespace stancetree
