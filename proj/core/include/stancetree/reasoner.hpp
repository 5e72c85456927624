#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stancetree/corpus.hpp"
#include "stancetree/grammar.hpp"
#include "stancetree/llm.hpp"
#include "stancetree/retrieval.hpp"
#include "stancetree/taxonomy.hpp"

namespace stancetree {

struct TopicTrace {
  std::string mnemonic;
  TreePath path;
  Terminal assessment;

  friend bool operator==(const TopicTrace&, const TopicTrace&) = default;
};

struct SentenceClass {
  std::string text;
  Stance stance = Stance::Neutral;

  friend bool operator==(const SentenceClass&, const SentenceClass&) = default;
};

struct ParagraphResult {
  std::size_t paragraph_index = 0;
  std::string text;
  TopicRanking topics;  // fused ranking
  std::vector<TopicTrace> traces;
  Stance paragraph_class = Stance::Neutral;
  std::vector<SentenceClass> sentences;
  bool degraded = false;
  std::vector<std::string> warnings;

  friend bool operator==(const ParagraphResult&, const ParagraphResult&) = default;
};

struct DocumentResult {
  std::string doc_id;
  Date date;
  std::string doc_type;
  std::vector<ParagraphResult> paragraphs;
  std::vector<std::string> warnings;

  std::size_t sentence_count() const;

  friend bool operator==(const DocumentResult&, const DocumentResult&) = default;
};

enum class SynthesisMode { Llm, Deterministic };

/// Prompt templates. Placeholders: {paragraph}, {mnemonic}, {topic_name},
/// {topic_surface} (walk); {paragraph}, {sentences}, {traces} (synthesis);
/// {points} (summary).
struct PromptTemplates {
  std::string walk;
  std::string synthesis;
  std::string summary;

  static PromptTemplates defaults();
};

struct ReasonerConfig {
  RetrievalParams retrieval;
  PromptTemplates prompts = PromptTemplates::defaults();
  RetryPolicy retry;
  SynthesisMode synthesis = SynthesisMode::Llm;
  int max_tokens = 1024;
  double temperature = 0.0;
  std::uint64_t seed = 42;
  std::size_t jobs = 1;
  std::string backend = "mock";  // "mock" | "http"
  std::string mock_script;       // path, for the mock backend
  std::map<std::string, std::string> palette;  // stance label -> CSS colour overrides

  /// Parses a JSON config. Missing keys keep their defaults.
  static ReasonerConfig from_json(std::string_view json_text);
  static ReasonerConfig from_file(const std::string& path);
};

/// Replaces every `{key}` in `tmpl`; unknown placeholders are left as is.
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

std::string walk_prompt(const ReasonerConfig& config, const Topic& topic, std::string_view paragraph);

/// One constrained completion over the topic's compiled tree grammar, parsed
/// back into a path. Throws LlmError or TranscriptError.
TopicTrace walk_tree(const Topic& topic, std::string_view paragraph, const LlmBackend& backend,
                     const ReasonerConfig& config);

/// Grammar whose language is "PARAGRAPH: <class>\n" then "S<i>: <class>\n"
/// for i = 1..sentence_count.
std::string synthesis_grammar(std::size_t sentence_count);

struct Synthesis {
  Stance paragraph_class = Stance::Neutral;
  std::vector<Stance> sentence_classes;
};

/// Parses text in the synthesis grammar's language.
Synthesis parse_synthesis(std::string_view text, std::size_t sentence_count);

/// Plurality vote over trace stances. A tie for the most votes falls back to
/// the rounded mean on the 1..5 scale, halves rounding toward neutral. No
/// traces means neutral. Every sentence inherits the paragraph class.
Synthesis deterministic_synthesis(const std::vector<TopicTrace>& traces, std::size_t sentence_count);

/// LLM synthesis under the synthesis grammar, or the deterministic rule when
/// `config.synthesis` is Deterministic. Throws LlmError on backend failure.
Synthesis synthesize(std::string_view paragraph, const std::vector<std::string>& sentences,
                     const std::vector<TopicTrace>& traces, const LlmBackend& backend,
                     const ReasonerConfig& config);

/// Retrieval, tree walks and synthesis for one paragraph. Backend failures
/// mark the paragraph degraded and fall back to deterministic synthesis.
ParagraphResult classify_paragraph(std::size_t index, std::string_view paragraph,
                                   const Taxonomy& taxonomy, const HybridRetriever& retriever,
                                   const LlmBackend& backend, const ReasonerConfig& config);

/// Classifies every paragraph, `config.jobs` at a time. Results are in
/// paragraph order whatever the completion order.
DocumentResult classify_document(const Document& doc, const Taxonomy& taxonomy,
                                 const HybridRetriever& retriever, const LlmBackend& backend,
                                 const ReasonerConfig& config);

}  // namespace stancetree
