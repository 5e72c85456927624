#include "stancetree/reasoner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace stancetree {

using json = nlohmann::json;

std::size_t DocumentResult::sentence_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.sentences.size();
  return n;
}

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates p;
  p.walk =
      "You are an economist assessing central bank communication for its monetary policy "
      "stance.\n"
      "Topic: {topic_name} ({mnemonic})\n"
      "Topic description: {topic_surface}\n\n"
      "Paragraph:\n{paragraph}\n\n"
      "Work through the decision tree for this topic. For each question, choose the permitted "
      "answer that best describes the paragraph.\n";
  p.synthesis =
      "You are an economist assessing central bank communication for its monetary policy "
      "stance.\n\n"
      "Paragraph:\n{paragraph}\n\n"
      "Topic assessments:\n{traces}\n"
      "Sentences:\n{sentences}\n"
      "Classify the paragraph, then each sentence, as dovish, leaning dovish, neutral, leaning "
      "hawkish or hawkish.\n";
  p.summary =
      "Summarise the main points made by the following sentences from central bank "
      "communication in a short paragraph.\n\n{points}\n";
  return p;
}

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace

ReasonerConfig ReasonerConfig::from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  ReasonerConfig c;
  try {
    if (auto it = doc.find("retrieval"); it != doc.end()) {
      const json& r = *it;
      read_if(r, "k1", c.retrieval.bm25.k1);
      read_if(r, "b", c.retrieval.bm25.b);
      read_if(r, "top_k_phrases", c.retrieval.top_k_phrases);
      read_if(r, "k_rrf", c.retrieval.k_rrf);
      read_if(r, "max_topics", c.retrieval.max_topics);
      read_if(r, "min_score", c.retrieval.min_score);
      read_if(r, "use_dense", c.retrieval.use_dense);
    }
    if (auto it = doc.find("prompts"); it != doc.end()) {
      read_if(*it, "walk", c.prompts.walk);
      read_if(*it, "synthesis", c.prompts.synthesis);
      read_if(*it, "summary", c.prompts.summary);
    }
    if (auto it = doc.find("retry"); it != doc.end()) {
      read_if(*it, "max_attempts", c.retry.max_attempts);
      long long ms = c.retry.initial_backoff.count();
      read_if(*it, "initial_backoff_ms", ms);
      c.retry.initial_backoff = std::chrono::milliseconds(ms);
      read_if(*it, "backoff_multiplier", c.retry.backoff_multiplier);
    }
    if (auto it = doc.find("decoding"); it != doc.end()) {
      read_if(*it, "max_tokens", c.max_tokens);
      read_if(*it, "temperature", c.temperature);
      read_if(*it, "seed", c.seed);
    }
    std::string mode = "llm";
    read_if(doc, "synthesis", mode);
    if (mode == "llm") {
      c.synthesis = SynthesisMode::Llm;
    } else if (mode == "deterministic") {
      c.synthesis = SynthesisMode::Deterministic;
    } else {
      throw std::invalid_argument("config: synthesis must be 'llm' or 'deterministic', got '" + mode + "'");
    }
    read_if(doc, "jobs", c.jobs);
    read_if(doc, "backend", c.backend);
    read_if(doc, "mock_script", c.mock_script);
    if (auto it = doc.find("palette"); it != doc.end()) {
      for (auto& [k, v] : it->items()) {
        if (!parse_stance(k)) throw std::invalid_argument("config: palette key '" + k + "' is not a stance");
        c.palette[k] = v.get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config has a field of the wrong type: ") + e.what());
  }
  if (c.backend != "mock" && c.backend != "http") {
    throw std::invalid_argument("config: backend must be 'mock' or 'http', got '" + c.backend + "'");
  }
  if (c.retrieval.max_topics < 1 || c.retrieval.top_k_phrases < 1 || !(c.retrieval.k_rrf > 0.0)) {
    throw std::invalid_argument("config: retrieval requires max_topics >= 1, top_k_phrases >= 1, k_rrf > 0");
  }
  if (c.jobs < 1) c.jobs = 1;
  return c;
}

ReasonerConfig ReasonerConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = values.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string walk_prompt(const ReasonerConfig& config, const Topic& topic, std::string_view paragraph) {
  return fill_template(config.prompts.walk, {{"paragraph", std::string(paragraph)},
                                             {"mnemonic", topic.mnemonic},
                                             {"topic_name", topic.name},
                                             {"topic_surface", topic.surface}});
}

TopicTrace walk_tree(const Topic& topic, std::string_view paragraph, const LlmBackend& backend,
                     const ReasonerConfig& config) {
  CompiledGrammar grammar = compile_tree(topic);
  CompletionRequest req;
  req.prompt = walk_prompt(config, topic, paragraph);
  req.grammar_text = grammar.grammar_text;
  req.max_tokens = config.max_tokens;
  req.temperature = config.temperature;
  req.seed = config.seed;
  CompletionResult result = complete(backend, req, config.retry);
  TreePath path = parse_transcript(topic, result.text);
  TopicTrace trace;
  trace.mnemonic = topic.mnemonic;
  trace.assessment = path.terminal;
  trace.path = std::move(path);
  return trace;
}

std::string synthesis_grammar(std::size_t sentence_count) {
  std::string g = "root ::= \"PARAGRAPH: \" stance \"\\n\"";
  for (std::size_t i = 1; i <= sentence_count; ++i) {
    g += " \"S" + std::to_string(i) + ": \" stance \"\\n\"";
  }
  g += "\nstance ::= (";
  for (std::size_t i = 0; i < kAllStances.size(); ++i) {
    g += (i == 0 ? " " : " | ") + quote_terminal(to_string(kAllStances[i]));
  }
  g += " )\n";
  return g;
}

Synthesis parse_synthesis(std::string_view text, std::size_t sentence_count) {
  Synthesis out;
  std::size_t pos = 0;
  auto read_line = [&](const std::string& prefix) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      throw GrammarViolationError("synthesis output truncated before '" + prefix + "'");
    }
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.substr(0, prefix.size()) != prefix) {
      throw GrammarViolationError("synthesis output: expected line starting '" + prefix + "'");
    }
    auto stance = parse_stance(line.substr(prefix.size()));
    if (!stance) throw GrammarViolationError("synthesis output: unknown class in '" + std::string(line) + "'");
    return *stance;
  };
  out.paragraph_class = read_line("PARAGRAPH: ");
  for (std::size_t i = 1; i <= sentence_count; ++i) {
    out.sentence_classes.push_back(read_line("S" + std::to_string(i) + ": "));
  }
  if (pos != text.size()) throw GrammarViolationError("synthesis output has trailing text");
  return out;
}

Synthesis deterministic_synthesis(const std::vector<TopicTrace>& traces, std::size_t sentence_count) {
  Stance cls = Stance::Neutral;
  if (!traces.empty()) {
    std::array<int, 5> votes{};
    int sum = 0;
    for (const auto& t : traces) {
      ++votes[static_cast<std::size_t>(t.assessment.stance)];
      sum += static_cast<int>(t.assessment.stance) + 1;
    }
    const int best = *std::max_element(votes.begin(), votes.end());
    const auto winners = std::count(votes.begin(), votes.end(), best);
    if (winners == 1) {
      cls = static_cast<Stance>(std::find(votes.begin(), votes.end(), best) - votes.begin());
    } else {
      // Rounded mean on the 1..5 scale; exact halves move toward 3.
      const double mean = static_cast<double>(sum) / static_cast<double>(traces.size());
      const double offset = mean - 3.0;
      const double rounded = 3.0 + std::copysign(std::ceil(std::fabs(offset) - 0.5), offset);
      cls = static_cast<Stance>(static_cast<int>(rounded) - 1);
    }
  }
  return Synthesis{cls, std::vector<Stance>(sentence_count, cls)};
}

Synthesis synthesize(std::string_view paragraph, const std::vector<std::string>& sentences,
                     const std::vector<TopicTrace>& traces, const LlmBackend& backend,
                     const ReasonerConfig& config) {
  if (config.synthesis == SynthesisMode::Deterministic) {
    return deterministic_synthesis(traces, sentences.size());
  }
  std::string trace_text;
  for (const auto& t : traces) {
    trace_text += "- " + t.mnemonic + ": " + std::string(to_string(t.assessment.stance));
    if (!t.assessment.rationale.empty()) trace_text += " (" + t.assessment.rationale + ")";
    trace_text += "\n";
  }
  if (trace_text.empty()) trace_text = "- none\n";
  std::string sentence_text;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    sentence_text += "S" + std::to_string(i + 1) + ": " + sentences[i] + "\n";
  }
  CompletionRequest req;
  req.prompt = fill_template(config.prompts.synthesis, {{"paragraph", std::string(paragraph)},
                                                        {"traces", trace_text},
                                                        {"sentences", sentence_text}});
  req.grammar_text = synthesis_grammar(sentences.size());
  req.max_tokens = config.max_tokens;
  req.temperature = config.temperature;
  req.seed = config.seed;
  CompletionResult result = complete(backend, req, config.retry);
  return parse_synthesis(result.text, sentences.size());
}

ParagraphResult classify_paragraph(std::size_t index, std::string_view paragraph,
                                   const Taxonomy& taxonomy, const HybridRetriever& retriever,
                                   const LlmBackend& backend, const ReasonerConfig& config) {
  ParagraphResult out;
  out.paragraph_index = index;
  out.text = std::string(paragraph);
  std::vector<std::string> sentences = split_sentences(paragraph);

  RetrievalOutcome retrieved = retriever.retrieve(paragraph);
  out.topics = std::move(retrieved.fused);
  out.warnings = std::move(retrieved.warnings);

  for (const auto& mnemonic : retrieved.selected) {
    const Topic* topic = taxonomy.find(mnemonic);
    if (!topic) continue;
    try {
      out.traces.push_back(walk_tree(*topic, paragraph, backend, config));
    } catch (const LlmError& e) {
      out.degraded = true;
      out.warnings.push_back("topic " + mnemonic + ": " + e.what());
    } catch (const TranscriptError& e) {
      out.degraded = true;
      out.warnings.push_back("topic " + mnemonic + ": " + e.what());
    }
  }

  Synthesis synthesis;
  if (out.degraded) {
    synthesis = deterministic_synthesis(out.traces, sentences.size());
    out.warnings.push_back("synthesis: deterministic fallback used");
  } else {
    try {
      synthesis = synthesize(paragraph, sentences, out.traces, backend, config);
    } catch (const LlmError& e) {
      out.degraded = true;
      out.warnings.push_back(std::string("synthesis: ") + e.what() + "; deterministic fallback used");
      synthesis = deterministic_synthesis(out.traces, sentences.size());
    }
  }
  out.paragraph_class = synthesis.paragraph_class;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    out.sentences.push_back({std::move(sentences[i]), synthesis.sentence_classes[i]});
  }
  return out;
}

DocumentResult classify_document(const Document& doc, const Taxonomy& taxonomy,
                                 const HybridRetriever& retriever, const LlmBackend& backend,
                                 const ReasonerConfig& config) {
  DocumentResult result;
  result.doc_id = doc.doc_id;
  result.date = doc.date;
  result.doc_type = doc.doc_type;

  const std::vector<std::string> paragraphs = split_paragraphs(doc.text);
  result.paragraphs.resize(paragraphs.size());
  std::vector<std::exception_ptr> errors(paragraphs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paragraphs.size(); i = next++) {
      try {
        result.paragraphs[i] = classify_paragraph(i, paragraphs[i], taxonomy, retriever, backend, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::min<std::size_t>(std::max<std::size_t>(config.jobs, 1), paragraphs.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& p : result.paragraphs) {
    for (const auto& w : p.warnings) {
      result.warnings.push_back("paragraph " + std::to_string(p.paragraph_index) + ": " + w);
    }
  }
  return result;
}

}  // namespace stancetree
