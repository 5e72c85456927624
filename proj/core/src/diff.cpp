#include "stancetree/diff.hpp"

#include "json.hpp"

namespace stancetree {

double TfidfSimilarity::similarity(std::string_view a, std::string_view b) const {
  if (a == b && !a.empty()) return 1.0;
  return model_.similarity(a, b);
}

double sentence_similarity(std::string_view a, std::string_view b) {
  return TfidfSimilarity({std::string(a), std::string(b)}).similarity(a, b);
}

namespace {

std::vector<std::string> matching_sentences(const DocumentResult& doc, const std::set<Stance>& stances) {
  std::vector<std::string> out;
  for (const auto& p : doc.paragraphs) {
    for (const auto& s : p.sentences) {
      if (stances.count(s.stance)) out.push_back(s.text);
    }
  }
  return out;
}

std::vector<std::string> all_sentences(const DocumentResult& a, const DocumentResult& b) {
  std::vector<std::string> out;
  for (const auto* doc : {&a, &b}) {
    for (const auto& p : doc->paragraphs) {
      for (const auto& s : p.sentences) out.push_back(s.text);
    }
  }
  return out;
}

}  // namespace

DiffResult partition_points(const DocumentResult& new_doc, const DocumentResult& old_doc,
                            const std::set<Stance>& stances, double tau,
                            const SentenceSimilarity* similarity) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("partition_points requires 0 <= tau <= 1");
  std::unique_ptr<TfidfSimilarity> fallback;
  if (!similarity) {
    fallback = std::make_unique<TfidfSimilarity>(all_sentences(new_doc, old_doc));
    similarity = fallback.get();
  }
  DiffResult out;
  out.stance_filter = stances;
  out.tau = tau;
  const auto olds = matching_sentences(old_doc, stances);
  for (const auto& sentence : matching_sentences(new_doc, stances)) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < olds.size(); ++i) {
      const double sim = similarity->similarity(sentence, olds[i]);
      if (sim > best) {
        best = sim;
        best_i = i;
      }
    }
    if (!olds.empty() && best >= tau) {
      out.similar.push_back({sentence, olds[best_i], best});
    } else {
      out.new_points.push_back(sentence);
    }
  }
  return out;
}

std::string summary_prompt(const std::vector<std::string>& points, const ReasonerConfig& config) {
  std::string list;
  for (const auto& p : points) list += "- " + p + "\n";
  return fill_template(config.prompts.summary, {{"points", list}});
}

std::string summarize_points(const std::vector<std::string>& points, const LlmBackend& backend,
                             const ReasonerConfig& config) {
  if (points.empty()) return {};
  CompletionRequest req;
  req.prompt = summary_prompt(points, config);
  req.max_tokens = config.max_tokens;
  req.temperature = config.temperature;
  req.seed = config.seed;
  return complete(backend, req, config.retry).text;
}

std::string diff_to_json(const DiffResult& d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  nlohmann::ordered_json stances = nlohmann::ordered_json::array();
  for (Stance s : d.stance_filter) stances.push_back(std::string(to_string(s)));
  j["stance"] = std::move(stances);
  j["tau"] = d.tau;
  nlohmann::ordered_json similar = nlohmann::ordered_json::array();
  for (const auto& p : d.similar) {
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    e["new"] = p.new_sentence;
    e["old"] = p.old_sentence;
    e["sim"] = p.similarity;
    similar.push_back(std::move(e));
  }
  j["similar"] = std::move(similar);
  j["new_points"] = d.new_points;
  return j.dump(2) + "\n";
}

}  // namespace stancetree
