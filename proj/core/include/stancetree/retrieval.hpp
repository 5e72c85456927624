#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stancetree/taxonomy.hpp"

namespace stancetree {

/// Lowercases ASCII letters and splits on every non-alphanumeric byte.
std::vector<std::string> tokenize(std::string_view text);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct ScoredPhrase {
  std::size_t phrase_id;
  double score;

  friend bool operator==(const ScoredPhrase&, const ScoredPhrase&) = default;
};

/// Inverted index over short phrases, scored with Okapi BM25 where the
/// paragraph is the query and each phrase is a document.
class PhraseIndex {
 public:
  struct Posting {
    std::size_t phrase_id;
    std::size_t tf;
  };

  PhraseIndex() = default;
  explicit PhraseIndex(const std::vector<std::string>& phrases, Bm25Params params = {});

  std::size_t size() const { return doc_lengths_.size(); }
  double avgdl() const { return avgdl_; }
  const Bm25Params& params() const { return params_; }
  std::size_t doc_length(std::size_t id) const { return doc_lengths_.at(id); }
  std::size_t df(const std::string& token) const;
  const std::vector<Posting>* postings(const std::string& token) const;

  /// BM25 score of a single phrase for `query`. IDF is
  /// ln(1 + (N - df + 0.5) / (df + 0.5)); repeated query tokens count once
  /// per occurrence.
  double score(std::size_t phrase_id, std::string_view query) const;

  /// Top-k phrases with positive score, ties broken by lower phrase id.
  std::vector<ScoredPhrase> rank(std::string_view paragraph, std::size_t k) const;

 private:
  double idf(std::size_t df) const;
  double term_weight(std::size_t tf, std::size_t doc_len) const;

  Bm25Params params_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::size_t> doc_lengths_;
  double avgdl_ = 0.0;
};

std::vector<ScoredPhrase> rank_phrases(const PhraseIndex& index, std::string_view paragraph,
                                       std::size_t k);

/// Distinct phrases of a taxonomy, in first-appearance order, with the
/// indices of every topic that lists each phrase.
struct PhraseCatalog {
  std::vector<std::string> phrases;
  std::vector<std::vector<std::size_t>> topics_of;

  static PhraseCatalog from(const Taxonomy& t);
};

struct RankedTopic {
  std::string mnemonic;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const RankedTopic&, const RankedTopic&) = default;
};

struct TopicRanking {
  std::vector<RankedTopic> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  const RankedTopic* find(std::string_view mnemonic) const;

  friend bool operator==(const TopicRanking&, const TopicRanking&) = default;
};

/// Each topic scores the number of its phrases among `ranked`; ordered by
/// count descending, ties by mnemonic.
TopicRanking topics_from_phrases(const Taxonomy& t, const PhraseCatalog& catalog,
                                 const std::vector<ScoredPhrase>& ranked);
TopicRanking topics_from_phrases(const Taxonomy& t, const std::vector<ScoredPhrase>& ranked);

// ---------------------------------------------------------------------------
// Dense scoring
// ---------------------------------------------------------------------------

class RetrievalBackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plug-in contract for semantic relevance models: one score in [0,1] per
/// candidate text. Implementations report failure by throwing.
class DenseScorer {
 public:
  virtual ~DenseScorer() = default;
  virtual std::string id() const = 0;
  virtual std::vector<double> score(std::string_view text,
                                    const std::vector<std::string>& candidates) const = 0;
};

/// TF-IDF vector space over a fixed corpus. Weights are raw term count times
/// ln((1 + N) / (1 + df)) + 1; tokens unseen in the corpus use df = 0.
class TfidfModel {
 public:
  explicit TfidfModel(const std::vector<std::string>& corpus);

  using Vector = std::map<std::string, double>;
  Vector vectorize(std::string_view text) const;
  double idf(const std::string& token) const;
  static double cosine(const Vector& a, const Vector& b);
  double similarity(std::string_view a, std::string_view b) const;

 private:
  std::unordered_map<std::string, std::size_t> df_;
  std::size_t n_docs_ = 0;
};

/// Default dense scorer: TF-IDF cosine, with the candidates as the corpus.
class TfidfScorer final : public DenseScorer {
 public:
  std::string id() const override { return "tfidf-cosine"; }
  std::vector<double> score(std::string_view text,
                            const std::vector<std::string>& candidates) const override;
};

/// Scores every topic's surface against the paragraph. Ordered by score
/// descending; ties keep taxonomy order. Throws RetrievalBackendError when the
/// scorer fails or violates its contract.
TopicRanking dense_rank(std::string_view paragraph, const std::vector<Topic>& topics,
                        const DenseScorer& scorer);
TopicRanking dense_rank(std::string_view paragraph, const std::vector<Topic>& topics);

// ---------------------------------------------------------------------------
// Fusion and selection
// ---------------------------------------------------------------------------

inline constexpr double kDefaultRrfK = 60.0;

/// Reciprocal rank fusion: sum of 1 / (k_rrf + rank) over the rankings that
/// contain each topic. Ties are ordered by mnemonic.
TopicRanking fuse(const std::vector<TopicRanking>& rankings, double k_rrf = kDefaultRrfK);

/// At most `max_topics` leading entries with score >= min_score. Falls back to
/// the top entry when none qualifies.
std::vector<std::string> select_topics(const TopicRanking& r, std::size_t max_topics = 3,
                                       double min_score = 0.0);

struct RetrievalParams {
  Bm25Params bm25;
  std::size_t top_k_phrases = 10;
  double k_rrf = kDefaultRrfK;
  std::size_t max_topics = 3;
  double min_score = 0.0;
  bool use_dense = true;
};

struct RetrievalOutcome {
  TopicRanking keyword;
  std::optional<TopicRanking> dense;
  TopicRanking fused;
  std::vector<std::string> selected;
  std::vector<std::string> warnings;
};

/// Paragraph-level topic annotation: BM25 phrase matching and dense scoring
/// fused with RRF. A failing dense scorer degrades to keyword-only with a
/// warning.
class HybridRetriever {
 public:
  HybridRetriever(const Taxonomy& taxonomy, RetrievalParams params = {},
                  std::shared_ptr<const DenseScorer> scorer = std::make_shared<TfidfScorer>());

  RetrievalOutcome retrieve(std::string_view paragraph) const;

  const PhraseIndex& index() const { return index_; }
  const PhraseCatalog& catalog() const { return catalog_; }
  const RetrievalParams& params() const { return params_; }

 private:
  const Taxonomy& taxonomy_;
  RetrievalParams params_;
  std::shared_ptr<const DenseScorer> scorer_;
  PhraseCatalog catalog_;
  PhraseIndex index_;
};

}  // namespace stancetree
