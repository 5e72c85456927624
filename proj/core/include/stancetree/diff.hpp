#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stancetree/llm.hpp"
#include "stancetree/reasoner.hpp"
#include "stancetree/retrieval.hpp"

namespace stancetree {

/// Symmetric similarity in [0,1]. Dense sentence embedders attach here.
class SentenceSimilarity {
 public:
  virtual ~SentenceSimilarity() = default;
  virtual double similarity(std::string_view a, std::string_view b) const = 0;
};

/// TF-IDF cosine over a fixed sentence corpus. Identical non-empty strings
/// always score 1.
class TfidfSimilarity final : public SentenceSimilarity {
 public:
  explicit TfidfSimilarity(const std::vector<std::string>& corpus) : model_(corpus) {}
  double similarity(std::string_view a, std::string_view b) const override;

 private:
  TfidfModel model_;
};

/// Default similarity with the pair itself as the corpus.
double sentence_similarity(std::string_view a, std::string_view b);

struct SimilarPoint {
  std::string new_sentence;
  std::string old_sentence;
  double similarity = 0.0;

  friend bool operator==(const SimilarPoint&, const SimilarPoint&) = default;
};

struct DiffResult {
  std::set<Stance> stance_filter;
  double tau = 0.7;
  std::vector<SimilarPoint> similar;
  std::vector<std::string> new_points;
};

inline constexpr double kDefaultTau = 0.7;

/// Each stance-matching sentence of `new_doc` is paired with its most similar
/// stance-matching sentence of `old_doc` (ties to the earlier one); pairs at
/// or above `tau` are similar points, the rest are new points. With no
/// `similarity`, TF-IDF cosine over all sentences of both documents is used.
DiffResult partition_points(const DocumentResult& new_doc, const DocumentResult& old_doc,
                            const std::set<Stance>& stances, double tau = kDefaultTau,
                            const SentenceSimilarity* similarity = nullptr);

/// LLM summary of `points`. Empty input returns "" without calling the
/// backend. Backend errors propagate.
std::string summarize_points(const std::vector<std::string>& points, const LlmBackend& backend,
                             const ReasonerConfig& config);

std::string summary_prompt(const std::vector<std::string>& points, const ReasonerConfig& config);

/// `{stance, tau, similar:[{new, old, sim}], new_points:[...]}`.
std::string diff_to_json(const DiffResult& d);

}  // namespace stancetree
