#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "stancetree/corpus.hpp"
#include "stancetree/diff.hpp"
#include "stancetree/econval.hpp"
#include "stancetree/grammar.hpp"
#include "stancetree/llm.hpp"
#include "stancetree/reasoner.hpp"
#include "stancetree/report.hpp"
#include "stancetree/retrieval.hpp"
#include "stancetree/scoring.hpp"
#include "stancetree/taxonomy.hpp"

namespace stancetree::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

/// Failure that maps to exit code 1 with the message printed as is.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + what + " file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw UsageError("failed writing '" + path.string() + "'");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory '" + dir + "'");
}

std::string safe_name(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Taxonomy load_taxonomy_or_fail(const std::string& path) {
  if (path.empty()) throw UsageError("--taxonomy is required");
  const std::string text = read_file(path, "taxonomy");
  try {
    return load_taxonomy(std::string_view(text));
  } catch (const TaxonomyValidationError& e) {
    std::string msg = "taxonomy '" + path + "' is invalid: " + e.what();
    for (const auto& v : e.violations()) {
      msg += "\n  " + std::string(to_string(v.code)) + " at " + v.path + ": " + v.message;
    }
    throw UsageError(msg);
  } catch (const std::exception& e) {
    throw UsageError("taxonomy '" + path + "': " + e.what());
  }
}

/// Options shared by several subcommands.
struct Common {
  std::string config_path;
  std::string backend;
  std::string mock_script;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
};

struct LoadedConfig {
  ReasonerConfig config;
  std::string text;  // raw bytes, for hashing
  std::string mock_script_text;
};

LoadedConfig load_config(const Common& common) {
  LoadedConfig lc;
  if (!common.config_path.empty()) {
    lc.text = read_file(common.config_path, "config");
    try {
      lc.config = ReasonerConfig::from_json(lc.text);
    } catch (const std::exception& e) {
      throw UsageError("config '" + common.config_path + "': " + e.what());
    }
    if (!lc.config.mock_script.empty() && fs::path(lc.config.mock_script).is_relative()) {
      lc.config.mock_script = (fs::path(common.config_path).parent_path() / lc.config.mock_script).string();
    }
  }
  if (!common.backend.empty()) lc.config.backend = common.backend;
  if (!common.mock_script.empty()) lc.config.mock_script = common.mock_script;
  if (common.seed) lc.config.seed = *common.seed;
  if (common.jobs) lc.config.jobs = *common.jobs;
  if (lc.config.backend == "mock" && !lc.config.mock_script.empty()) {
    lc.mock_script_text = read_file(lc.config.mock_script, "mock script");
  }
  return lc;
}

std::unique_ptr<LlmBackend> make_backend(const LoadedConfig& lc) {
  if (lc.config.backend == "http") {
    HttpBackendConfig hc = HttpBackendConfig::from_env();
    if (hc.url.empty()) throw UsageError("http backend needs STANCETREE_LLM_URL to be set");
    return std::make_unique<HttpBackend>(hc);
  }
  MockScript script;
  if (!lc.mock_script_text.empty()) {
    try {
      script = MockScript::from_json(lc.mock_script_text);
    } catch (const std::exception& e) {
      throw UsageError("mock script '" + lc.config.mock_script + "': " + e.what());
    }
  }
  return std::make_unique<MockBackend>(std::move(script));
}

std::string config_hash(const LoadedConfig& lc) {
  std::string material = lc.text;
  material += "\nbackend=" + lc.config.backend;
  material += "\nseed=" + std::to_string(lc.config.seed);
  material += "\nmock_script=" + lc.mock_script_text;
  return fnv1a_hex(material);
}

ScoreScheme parse_scheme(const std::string& s) {
  return s == "three" ? ScoreScheme::three_class() : ScoreScheme::five_class();
}

// ---------------------------------------------------------------------------

int cmd_classify(const Common& common, const std::string& corpus_path, const std::string& taxonomy_path,
                 const std::string& out_dir, std::ostream& err) {
  const std::string started = utc_now();
  const Taxonomy taxonomy = load_taxonomy_or_fail(taxonomy_path);
  const LoadedConfig lc = load_config(common);
  const auto backend = make_backend(lc);
  if (corpus_path.empty()) throw UsageError("--corpus is required");
  std::vector<Document> docs;
  {
    std::ifstream in(corpus_path, std::ios::binary);
    if (!in) throw UsageError("cannot read corpus file '" + corpus_path + "'");
    try {
      docs = load_corpus(in);
    } catch (const std::exception& e) {
      throw UsageError("corpus '" + corpus_path + "': " + e.what());
    }
  }
  ensure_dir(out_dir);
  const HybridRetriever retriever(taxonomy, lc.config.retrieval);

  ojson statuses = ojson::array();
  bool hard_failure = false;
  for (const auto& doc : docs) {
    ojson st = ojson::object();
    st["doc_id"] = doc.doc_id;
    try {
      const DocumentResult result = classify_document(doc, taxonomy, retriever, *backend, lc.config);
      const std::string file = safe_name(doc.doc_id) + ".result.json";
      write_file(fs::path(out_dir) / file, export_result_json(result));
      const bool degraded = std::any_of(result.paragraphs.begin(), result.paragraphs.end(),
                                        [](const ParagraphResult& p) { return p.degraded; });
      st["status"] = degraded ? "degraded" : "ok";
      st["paragraphs"] = result.paragraphs.size();
      st["sentences"] = result.sentence_count();
      st["warnings"] = result.warnings.size();
      st["output"] = file;
      err << "classified " << doc.doc_id << " (" << result.paragraphs.size() << " paragraphs"
          << (degraded ? ", degraded" : "") << ")\n";
    } catch (const std::exception& e) {
      hard_failure = true;
      st["status"] = "failed";
      st["error"] = e.what();
      err << "failed " << doc.doc_id << ": " << e.what() << "\n";
    }
    statuses.push_back(std::move(st));
  }

  ojson manifest = ojson::object();
  manifest["config_hash"] = config_hash(lc);
  manifest["config_path"] = common.config_path;
  manifest["taxonomy_path"] = taxonomy_path;
  manifest["taxonomy_version"] = taxonomy.version;
  manifest["backend_id"] = backend->id();
  manifest["corpus_path"] = corpus_path;
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_now();
  manifest["documents"] = std::move(statuses);
  write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  return hard_failure ? 1 : 0;
}

int cmd_report(const Common& common, const std::vector<std::string>& inputs, const std::string& out_dir,
               const std::string& script_path, std::ostream& err) {
  if (inputs.empty()) throw UsageError("report needs at least one result file");
  const LoadedConfig lc = load_config(common);
  const std::string script = script_path.empty() ? std::string() : read_file(script_path, "script");
  ensure_dir(out_dir);
  ReportOptions options;
  options.palette = lc.config.palette;
  for (const auto& path : inputs) {
    DocumentResult r;
    try {
      r = load_result_file(path);
    } catch (const std::exception& e) {
      throw UsageError("result '" + path + "': " + e.what());
    }
    const ReportBundle bundle = render_document_report(r, script, options);
    const fs::path file = fs::path(out_dir) / (safe_name(r.doc_id) + ".report.html");
    write_file(file, bundle.html);
    for (const auto& w : bundle.warnings) err << r.doc_id << ": " << w << "\n";
    err << "wrote " << file.string() << "\n";
  }
  return 0;
}

int cmd_diff(const Common& common, const std::string& new_path, const std::string& old_path, double tau,
             const std::vector<std::string>& stance_names, bool summarize, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
  DocumentResult new_doc, old_doc;
  try {
    new_doc = load_result_file(new_path);
    old_doc = load_result_file(old_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::set<Stance> stances;
  for (const auto& name : stance_names) {
    auto s = parse_stance(name);
    if (!s) throw UsageError("unknown stance '" + name + "'");
    stances.insert(*s);
  }
  if (stances.empty()) stances.insert(kAllStances.begin(), kAllStances.end());
  if (!(tau >= 0.0 && tau <= 1.0)) throw UsageError("--tau must lie in [0, 1]");
  const DiffResult d = partition_points(new_doc, old_doc, stances, tau);
  std::string text = diff_to_json(d);
  if (summarize) {
    const LoadedConfig lc = load_config(common);
    const auto backend = make_backend(lc);
    auto j = ojson::parse(text);
    j["summary"] = summarize_points(d.new_points, *backend, lc.config);
    text = j.dump(2) + "\n";
  }
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  err << d.similar.size() << " similar, " << d.new_points.size() << " new\n";
  return 0;
}

void collect_results(const std::string& input, std::vector<DocumentResult>& results, ScoreSeries& csv_points) {
  const fs::path p(input);
  if (fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(p)) {
      const std::string name = e.path().filename().string();
      if (name.size() > 12 && name.compare(name.size() - 12, 12, ".result.json") == 0) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) results.push_back(load_result_file(f.string()));
  } else if (p.extension() == ".csv") {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read series file '" + input + "'");
    ScoreSeries s = read_series_csv(in);
    csv_points.points.insert(csv_points.points.end(), s.points.begin(), s.points.end());
  } else {
    results.push_back(load_result_file(input));
  }
}

int cmd_series(const std::vector<std::string>& inputs, const std::string& scheme, std::size_t window,
               bool normalize, const std::string& doc_type, const std::string& out_path, std::ostream& out) {
  if (inputs.empty()) throw UsageError("series needs result files, result directories, or series CSVs");
  if (window < 1) throw UsageError("--window must be at least 1");
  std::vector<DocumentResult> results;
  ScoreSeries series;
  for (const auto& in : inputs) {
    try {
      collect_results(in, results, series);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError("'" + in + "': " + e.what());
    }
  }
  if (!results.empty()) {
    ScoreSeries built = build_series(results, parse_scheme(scheme));
    series.points.insert(series.points.end(), built.points.begin(), built.points.end());
  }
  std::stable_sort(series.points.begin(), series.points.end(),
                   [](const ScorePoint& a, const ScorePoint& b) { return a.date < b.date; });
  if (!doc_type.empty()) series = series.filter(doc_type);
  if (normalize) series = normalize_series(series);
  series = moving_average(series, window);
  std::ostringstream os;
  write_series_csv(os, series);
  if (out_path.empty()) {
    out << os.str();
  } else {
    write_file(out_path, os.str());
  }
  return 0;
}

ojson ranking_json(const TopicRanking& r) {
  ojson a = ojson::array();
  for (const auto& e : r.entries) {
    ojson x = ojson::object();
    x["rank"] = e.rank;
    x["mnemonic"] = e.mnemonic;
    x["score"] = e.score;
    a.push_back(std::move(x));
  }
  return a;
}

int cmd_retrieve(const Common& common, const std::string& taxonomy_path, std::string text, std::ostream& out,
                 std::ostream& err) {
  const Taxonomy taxonomy = load_taxonomy_or_fail(taxonomy_path);
  const LoadedConfig lc = load_config(common);
  if (text == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  }
  const HybridRetriever retriever(taxonomy, lc.config.retrieval);
  const RetrievalOutcome r = retriever.retrieve(text);
  ojson j = ojson::object();
  j["keyword"] = ranking_json(r.keyword);
  j["dense"] = r.dense ? ranking_json(*r.dense) : ojson(nullptr);
  j["fused"] = ranking_json(r.fused);
  j["selected"] = r.selected;
  out << j.dump(2) << "\n";
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  return 0;
}

int cmd_compile_grammar(const std::string& taxonomy_path, const std::string& mnemonic, const std::string& out_path,
                        std::ostream& out) {
  const Taxonomy taxonomy = load_taxonomy_or_fail(taxonomy_path);
  const Topic* topic = taxonomy.find(mnemonic);
  if (!topic) throw UsageError("taxonomy '" + taxonomy_path + "' has no topic '" + mnemonic + "'");
  const CompiledGrammar g = compile_tree(*topic);
  if (out_path.empty()) {
    out << g.grammar_text;
  } else {
    write_file(out_path, g.grammar_text);
  }
  return 0;
}

/// Numeric table: header row of names, then rows of numbers.
std::map<std::string, std::vector<double>> read_numeric_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read data file '" + path + "'");
  auto split = [](const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    f.push_back(cur);
    return f;
  };
  std::string line;
  if (!std::getline(in, line)) throw UsageError("data file '" + path + "' is empty");
  const auto header = split(line);
  std::map<std::string, std::vector<double>> cols;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split(line);
    if (f.size() != header.size()) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      try {
        std::size_t used = 0;
        const double v = std::stod(f[i], &used);
        if (used != f[i].size()) throw std::invalid_argument("trailing text");
        cols[header[i]].push_back(v);
      } catch (const std::exception&) {
        cols[header[i]].push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
  return cols;
}

int cmd_econ(const std::string& model, const std::string& outcomes_path, const std::vector<std::string>& series_specs,
             int lags, const std::string& data_path, const std::string& x_name, const std::string& y_name,
             const std::string& format, const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::string text;
  if (model == "granger") {
    if (data_path.empty() || x_name.empty() || y_name.empty()) {
      throw UsageError("granger needs --data, --x and --y");
    }
    auto cols = read_numeric_csv(data_path);
    for (const auto& name : {x_name, y_name}) {
      if (!cols.count(name)) throw UsageError("data file '" + data_path + "' has no column '" + name + "'");
      for (double v : cols[name]) {
        if (!std::isfinite(v)) throw UsageError("column '" + name + "' has a missing or non-numeric value");
      }
    }
    const auto g = econ::granger_test(cols[x_name], cols[y_name], lags);
    text = econ::to_json(g);
    if (format == "table") {
      char buf[256];
      std::snprintf(buf, sizeof buf, "Granger test: %s -> %s, lags %d\nF(%g, %g) = %.4f, p = %.4g, n_eff = %zu\n",
                    x_name.c_str(), y_name.c_str(), g.lags, g.df_num, g.df_den, g.f_stat, g.p_value,
                    g.n_effective);
      text = buf;
    }
  } else {
    if (outcomes_path.empty()) throw UsageError(model + " needs --outcomes");
    econ::OutcomeTable outcomes;
    {
      std::ifstream in(outcomes_path, std::ios::binary);
      if (!in) throw UsageError("cannot read outcomes file '" + outcomes_path + "'");
      try {
        outcomes = econ::read_outcomes_csv(in);
      } catch (const std::exception& e) {
        throw UsageError("outcomes '" + outcomes_path + "': " + e.what());
      }
    }
    std::map<std::string, ScoreSeries> series;
    for (const auto& spec : series_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--series expects NAME=PATH, got '" + spec + "'");
      const std::string name = spec.substr(0, eq);
      const std::string path = spec.substr(eq + 1);
      std::ifstream in(path, std::ios::binary);
      if (!in) throw UsageError("cannot read series file '" + path + "'");
      series[name] = read_series_csv(in);
    }
    const econ::DesignMatrix design = econ::build_design(series, outcomes, lags);
    if (design.dropped_rows > 0) err << "dropped " << design.dropped_rows << " rows with missing values\n";
    if (model == "ologit") {
      std::vector<std::string> levels;
      const auto y = econ::code_ordinal_outcomes(design.response, &levels);
      auto fit = econ::fit_ordered_logit(design, y);
      fit.level_labels = levels;
      text = format == "table" ? econ::format_table(fit) : econ::to_json(fit);
    } else if (model == "ols") {
      std::vector<double> y;
      for (const auto& label : design.response) {
        try {
          std::size_t used = 0;
          y.push_back(std::stod(label, &used));
          if (used != label.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
          throw UsageError("ols needs numeric outcomes, got '" + label + "'");
        }
      }
      const auto fit = econ::fit_ols_hc1(design, y);
      text = format == "table" ? econ::format_table(fit) : econ::to_json(fit);
    } else {
      throw UsageError("unknown model '" + model + "'");
    }
  }
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Taxonomy-guided stance classification for central bank communication", "stancetree"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "Config JSON (prompts, retrieval, retry, decoding)");
  app.add_option("--backend", common.backend, "LLM backend")->check(CLI::IsMember({"http", "mock"}));
  app.add_option("--mock-script", common.mock_script, "Mock backend script JSON");
  app.add_option("--seed", common.seed, "Decoding seed");
  app.add_option("--jobs", common.jobs, "Paragraphs classified in parallel")->check(CLI::PositiveNumber);

  std::string taxonomy_path, corpus_path, out_dir, out_path, script_path, mnemonic, text, scheme = "five",
                                                                                         doc_type;
  std::vector<std::string> inputs, stances, series_specs;
  double tau = kDefaultTau;
  std::size_t window = 1;
  bool normalize = false, summarize = false;
  std::string model, outcomes_path, data_path, x_name, y_name, format = "json";
  int lags = 2;
  std::string new_path, old_path;

  auto* classify = app.add_subcommand("classify", "Classify every document in a JSONL corpus");
  classify->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  classify->add_option("--taxonomy", taxonomy_path, "Taxonomy JSON")->required();
  classify->add_option("--out", out_dir, "Output directory")->required();

  auto* report = app.add_subcommand("report", "Render HTML reports from result JSON files");
  report->add_option("results", inputs, "Result JSON files")->required();
  report->add_option("--out", out_dir, "Output directory")->required();
  report->add_option("--script", script_path, "Drill-down script to inline (optional)");

  auto* diff = app.add_subcommand("diff", "Split a document's points into similar and new against an older one");
  diff->add_option("new", new_path, "Newer result JSON")->required();
  diff->add_option("old", old_path, "Older result JSON")->required();
  diff->add_option("--tau", tau, "Similarity threshold")->capture_default_str();
  diff->add_option("--stance", stances, "Stance classes to compare (repeatable; default all)");
  diff->add_flag("--summarize", summarize, "Summarise the new points with the backend");
  diff->add_option("--out", out_path, "Output file (default stdout)");

  auto* series = app.add_subcommand("series", "Build a score series CSV");
  series->add_option("inputs", inputs, "Result files, result directories or series CSVs")->required();
  series->add_option("--scheme", scheme, "Point scheme")->capture_default_str()->check(CLI::IsMember({"three", "five"}));
  series->add_option("--window", window, "Trailing moving-average window")->capture_default_str();
  series->add_flag("--normalize", normalize, "z-score over the whole series before averaging");
  series->add_option("--doc-type", doc_type, "Keep one document type only");
  series->add_option("--out", out_path, "Output CSV (default stdout)");

  auto* retrieve = app.add_subcommand("retrieve", "Print the topic ranking for a paragraph");
  retrieve->add_option("--taxonomy", taxonomy_path, "Taxonomy JSON")->required();
  retrieve->add_option("text", text, "Paragraph text, or - for stdin")->required();

  auto* compile = app.add_subcommand("compile-grammar", "Print a topic's decision-tree grammar");
  compile->add_option("--taxonomy", taxonomy_path, "Taxonomy JSON")->required();
  compile->add_option("--topic", mnemonic, "Topic mnemonic")->required();
  compile->add_option("--out", out_path, "Output file (default stdout)");

  auto* econ_cmd = app.add_subcommand("econ", "Ordered logit, OLS (HC1) or Granger test on CSV inputs");
  econ_cmd->add_option("--model", model, "Model")->required()->check(CLI::IsMember({"ologit", "ols", "granger"}));
  econ_cmd->add_option("--outcomes", outcomes_path, "CSV date,outcome[,forecast...] (ologit, ols)");
  econ_cmd->add_option("--series", series_specs, "NAME=series.csv, lagged into hds_NAME_lagK (repeatable)");
  econ_cmd->add_option("--lags", lags, "Lags")->capture_default_str()->check(CLI::PositiveNumber);
  econ_cmd->add_option("--data", data_path, "Numeric CSV with named columns (granger)");
  econ_cmd->add_option("--x", x_name, "Candidate cause column (granger)");
  econ_cmd->add_option("--y", y_name, "Target column (granger)");
  econ_cmd->add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "table"}));
  econ_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*classify) return cmd_classify(common, corpus_path, taxonomy_path, out_dir, err);
    if (*report) return cmd_report(common, inputs, out_dir, script_path, err);
    if (*diff) return cmd_diff(common, new_path, old_path, tau, stances, summarize, out_path, out, err);
    if (*series) return cmd_series(inputs, scheme, window, normalize, doc_type, out_path, out);
    if (*retrieve) return cmd_retrieve(common, taxonomy_path, text, out, err);
    if (*compile) return cmd_compile_grammar(taxonomy_path, mnemonic, out_path, out);
    if (*econ_cmd) {
      return cmd_econ(model, outcomes_path, series_specs, lags, data_path, x_name, y_name, format, out_path, out,
                      err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace stancetree::cli
