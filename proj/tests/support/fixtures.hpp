#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "stancetree/taxonomy.hpp"

namespace testutil {

inline std::string source_path(const std::string& rel) { return std::string(STANCETREE_SOURCE_DIR) + "/" + rel; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string random_word(std::mt19937_64& rng) {
  static const char* syllables[] = {"ka", "ri", "to", "mu", "se", "la", "po", "ne", "vi", "du", "ga", "xe"};
  std::uniform_int_distribution<int> len(1, 3), pick(0, 11);
  std::string w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w += syllables[pick(rng)];
  return w;
}

inline std::string random_text(std::mt19937_64& rng, int min_words, int max_words) {
  std::uniform_int_distribution<int> n(min_words, max_words);
  std::string out;
  const int k = n(rng);
  for (int i = 0; i < k; ++i) {
    if (i) out += ' ';
    out += random_word(rng);
  }
  return out;
}

/// Random valid tree: questions have 2..max_branch distinct labels; depth
/// counts question levels. Labels and questions occasionally carry quote
/// and backslash characters to exercise escaping.
inline stancetree::TreeNode random_tree(std::mt19937_64& rng, int depth, int max_branch) {
  using namespace stancetree;
  std::bernoulli_distribution stop(0.3);
  std::uniform_int_distribution<int> stance(0, 4);
  if (depth == 0 || stop(rng)) {
    return TreeNode{Terminal{static_cast<Stance>(stance(rng)), random_text(rng, 0, 4)}};
  }
  Question q;
  q.text = random_text(rng, 2, 6) + "?";
  if (std::bernoulli_distribution(0.2)(rng)) q.text += " \"quoted\" a\\b";
  std::uniform_int_distribution<int> branches(2, max_branch);
  const int n = branches(rng);
  for (int i = 0; i < n; ++i) {
    std::string label;
    do {
      label = random_text(rng, 1, 3);
      if (std::bernoulli_distribution(0.1)(rng)) label += " \"x\"";
    } while (std::any_of(q.answers.begin(), q.answers.end(), [&](const Answer& a) { return a.label == label; }));
    q.answers.push_back(Answer{label, random_tree(rng, depth - 1, max_branch)});
  }
  return TreeNode{std::move(q)};
}

/// Independent leaf count.
inline std::size_t leaves(const stancetree::TreeNode& t) {
  if (t.is_terminal()) return 1;
  std::size_t n = 0;
  for (const auto& a : t.question().answers) n += leaves(a.next);
  return n;
}

}  // namespace testutil
