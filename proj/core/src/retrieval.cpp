#include "stancetree/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace stancetree {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      current += static_cast<char>(c);
    } else if (c >= 'A' && c <= 'Z') {
      current += static_cast<char>(c - 'A' + 'a');
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// ---------------------------------------------------------------------------
// BM25
// ---------------------------------------------------------------------------

PhraseIndex::PhraseIndex(const std::vector<std::string>& phrases, Bm25Params params)
    : params_(params) {
  if (!(params.k1 >= 0.0) || !(params.b >= 0.0 && params.b <= 1.0)) {
    throw std::invalid_argument("BM25 parameters require k1 >= 0 and 0 <= b <= 1");
  }
  doc_lengths_.reserve(phrases.size());
  std::size_t total = 0;
  for (std::size_t id = 0; id < phrases.size(); ++id) {
    std::map<std::string, std::size_t> tf;
    auto tokens = tokenize(phrases[id]);
    for (auto& tok : tokens) ++tf[tok];
    for (auto& [tok, n] : tf) postings_[tok].push_back({id, n});
    doc_lengths_.push_back(tokens.size());
    total += tokens.size();
  }
  if (!phrases.empty()) avgdl_ = static_cast<double>(total) / static_cast<double>(phrases.size());
  // A corpus of empty phrases still needs a positive normaliser.
  if (!phrases.empty() && avgdl_ <= 0.0) avgdl_ = 1.0;
}

std::size_t PhraseIndex::df(const std::string& token) const {
  auto it = postings_.find(token);
  return it == postings_.end() ? 0 : it->second.size();
}

const std::vector<PhraseIndex::Posting>* PhraseIndex::postings(const std::string& token) const {
  auto it = postings_.find(token);
  return it == postings_.end() ? nullptr : &it->second;
}

double PhraseIndex::idf(std::size_t df) const {
  const double n = static_cast<double>(size());
  const double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double PhraseIndex::term_weight(std::size_t tf, std::size_t doc_len) const {
  const double f = static_cast<double>(tf);
  const double norm = 1.0 - params_.b + params_.b * static_cast<double>(doc_len) / avgdl_;
  return f * (params_.k1 + 1.0) / (f + params_.k1 * norm);
}

double PhraseIndex::score(std::size_t phrase_id, std::string_view query) const {
  std::map<std::string, std::size_t> qtf;
  for (auto& tok : tokenize(query)) ++qtf[tok];
  double total = 0.0;
  for (const auto& [tok, count] : qtf) {
    const auto* plist = postings(tok);
    if (!plist) continue;
    auto it = std::find_if(plist->begin(), plist->end(),
                           [&](const Posting& p) { return p.phrase_id == phrase_id; });
    if (it == plist->end()) continue;
    total += static_cast<double>(count) * idf(plist->size()) *
             term_weight(it->tf, doc_lengths_[phrase_id]);
  }
  return total;
}

std::vector<ScoredPhrase> PhraseIndex::rank(std::string_view paragraph, std::size_t k) const {
  if (k < 1) throw std::invalid_argument("rank_phrases requires k >= 1");
  std::map<std::string, std::size_t> qtf;
  for (auto& tok : tokenize(paragraph)) ++qtf[tok];
  std::vector<double> acc(size(), 0.0);
  for (const auto& [tok, count] : qtf) {
    const auto* plist = postings(tok);
    if (!plist) continue;
    const double w = static_cast<double>(count) * idf(plist->size());
    for (const Posting& p : *plist) acc[p.phrase_id] += w * term_weight(p.tf, doc_lengths_[p.phrase_id]);
  }
  std::vector<ScoredPhrase> hits;
  for (std::size_t id = 0; id < acc.size(); ++id) {
    if (acc[id] > 0.0) hits.push_back({id, acc[id]});
  }
  auto better = [](const ScoredPhrase& a, const ScoredPhrase& b) {
    return a.score != b.score ? a.score > b.score : a.phrase_id < b.phrase_id;
  };
  const std::size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(), better);
  hits.resize(keep);
  return hits;
}

std::vector<ScoredPhrase> rank_phrases(const PhraseIndex& index, std::string_view paragraph,
                                       std::size_t k) {
  return index.rank(paragraph, k);
}

PhraseCatalog PhraseCatalog::from(const Taxonomy& t) {
  PhraseCatalog c;
  std::map<std::string, std::size_t, std::less<>> ids;
  for (std::size_t ti = 0; ti < t.topics.size(); ++ti) {
    for (const std::string& phrase : t.topics[ti].phrases) {
      auto [it, inserted] = ids.emplace(phrase, c.phrases.size());
      if (inserted) {
        c.phrases.push_back(phrase);
        c.topics_of.emplace_back();
      }
      auto& owners = c.topics_of[it->second];
      if (std::find(owners.begin(), owners.end(), ti) == owners.end()) owners.push_back(ti);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rankings
// ---------------------------------------------------------------------------

const RankedTopic* TopicRanking::find(std::string_view mnemonic) const {
  for (const auto& e : entries) {
    if (e.mnemonic == mnemonic) return &e;
  }
  return nullptr;
}

namespace {

TopicRanking ranking_from_scores(std::map<std::string, double> scores) {
  TopicRanking r;
  for (auto& [m, s] : scores) r.entries.push_back({m, s, 0});
  // std::map iteration already gives mnemonic order; stable sort keeps it for ties.
  std::stable_sort(r.entries.begin(), r.entries.end(),
                   [](const RankedTopic& a, const RankedTopic& b) { return a.score > b.score; });
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i].rank = i + 1;
  return r;
}

}  // namespace

TopicRanking topics_from_phrases(const Taxonomy& t, const PhraseCatalog& catalog,
                                 const std::vector<ScoredPhrase>& ranked) {
  std::map<std::string, double> counts;
  for (const ScoredPhrase& p : ranked) {
    if (p.phrase_id >= catalog.topics_of.size()) {
      throw std::out_of_range("phrase id " + std::to_string(p.phrase_id) + " not in catalog");
    }
    for (std::size_t ti : catalog.topics_of[p.phrase_id]) counts[t.topics[ti].mnemonic] += 1.0;
  }
  return ranking_from_scores(std::move(counts));
}

TopicRanking topics_from_phrases(const Taxonomy& t, const std::vector<ScoredPhrase>& ranked) {
  return topics_from_phrases(t, PhraseCatalog::from(t), ranked);
}

// ---------------------------------------------------------------------------
// TF-IDF
// ---------------------------------------------------------------------------

TfidfModel::TfidfModel(const std::vector<std::string>& corpus) : n_docs_(corpus.size()) {
  for (const auto& doc : corpus) {
    auto toks = tokenize(doc);
    std::set<std::string> uniq(toks.begin(), toks.end());
    for (const auto& t : uniq) ++df_[t];
  }
}

double TfidfModel::idf(const std::string& token) const {
  auto it = df_.find(token);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + df)) + 1.0;
}

TfidfModel::Vector TfidfModel::vectorize(std::string_view text) const {
  Vector v;
  for (auto& tok : tokenize(text)) v[tok] += 1.0;
  for (auto& [tok, w] : v) w *= idf(tok);
  return v;
}

double TfidfModel::cosine(const Vector& a, const Vector& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [t, w] : a) {
    na += w * w;
    auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double TfidfModel::similarity(std::string_view a, std::string_view b) const {
  return cosine(vectorize(a), vectorize(b));
}

std::vector<double> TfidfScorer::score(std::string_view text,
                                       const std::vector<std::string>& candidates) const {
  TfidfModel model(candidates);
  auto q = model.vectorize(text);
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(TfidfModel::cosine(q, model.vectorize(c)));
  return out;
}

TopicRanking dense_rank(std::string_view paragraph, const std::vector<Topic>& topics,
                        const DenseScorer& scorer) {
  std::vector<std::string> surfaces;
  surfaces.reserve(topics.size());
  for (const auto& t : topics) surfaces.push_back(t.surface);
  std::vector<double> scores;
  try {
    scores = scorer.score(paragraph, surfaces);
  } catch (const std::exception& e) {
    throw RetrievalBackendError("dense scorer '" + scorer.id() + "' failed: " + e.what());
  }
  if (scores.size() != topics.size()) {
    throw RetrievalBackendError("dense scorer '" + scorer.id() + "' returned " +
                                std::to_string(scores.size()) + " scores for " +
                                std::to_string(topics.size()) + " topics");
  }
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw RetrievalBackendError("dense scorer '" + scorer.id() + "' returned a score outside [0,1]");
    }
  }
  std::vector<std::size_t> order(topics.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  TopicRanking r;
  for (std::size_t i = 0; i < order.size(); ++i) {
    r.entries.push_back({topics[order[i]].mnemonic, scores[order[i]], i + 1});
  }
  return r;
}

TopicRanking dense_rank(std::string_view paragraph, const std::vector<Topic>& topics) {
  return dense_rank(paragraph, topics, TfidfScorer{});
}

TopicRanking fuse(const std::vector<TopicRanking>& rankings, double k_rrf) {
  if (!(k_rrf > 0.0)) throw std::invalid_argument("fuse requires k_rrf > 0");
  if (rankings.empty()) throw std::invalid_argument("fuse requires at least one ranking");
  std::map<std::string, double> scores;
  for (const auto& r : rankings) {
    for (const auto& e : r.entries) scores[e.mnemonic] += 1.0 / (k_rrf + static_cast<double>(e.rank));
  }
  return ranking_from_scores(std::move(scores));
}

std::vector<std::string> select_topics(const TopicRanking& r, std::size_t max_topics,
                                       double min_score) {
  if (max_topics < 1) throw std::invalid_argument("select_topics requires max_topics >= 1");
  std::vector<std::string> out;
  for (const auto& e : r.entries) {
    if (out.size() >= max_topics) break;
    if (e.score >= min_score) out.push_back(e.mnemonic);
  }
  if (out.empty() && !r.entries.empty()) out.push_back(r.entries.front().mnemonic);
  return out;
}

// ---------------------------------------------------------------------------
// Hybrid pipeline
// ---------------------------------------------------------------------------

HybridRetriever::HybridRetriever(const Taxonomy& taxonomy, RetrievalParams params,
                                 std::shared_ptr<const DenseScorer> scorer)
    : taxonomy_(taxonomy),
      params_(params),
      scorer_(std::move(scorer)),
      catalog_(PhraseCatalog::from(taxonomy)),
      index_(catalog_.phrases, params.bm25) {}

RetrievalOutcome HybridRetriever::retrieve(std::string_view paragraph) const {
  RetrievalOutcome out;
  out.keyword = topics_from_phrases(taxonomy_, catalog_, index_.rank(paragraph, params_.top_k_phrases));
  std::vector<TopicRanking> inputs{out.keyword};
  if (params_.use_dense && scorer_) {
    try {
      TopicRanking dense = dense_rank(paragraph, taxonomy_.topics, *scorer_);
      // Only topics with some evidence take part in fusion.
      TopicRanking positive;
      for (const auto& e : dense.entries) {
        if (e.score > 0.0) positive.entries.push_back(e);
      }
      out.dense = std::move(dense);
      inputs.push_back(std::move(positive));
    } catch (const RetrievalBackendError& e) {
      out.warnings.push_back(std::string("dense retrieval disabled for paragraph: ") + e.what());
    }
  }
  out.fused = fuse(inputs, params_.k_rrf);
  out.selected = select_topics(out.fused, params_.max_topics, params_.min_score);
  return out;
}

}  // namespace stancetree
