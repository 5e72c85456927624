#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stancetree/reasoner.hpp"

namespace testutil {

/// One-paragraph document with the given sentences.
inline stancetree::DocumentResult make_doc(const std::string& id, const std::string& date,
                                           const std::vector<std::pair<std::string, stancetree::Stance>>& sentences,
                                           const std::string& doc_type = "statement") {
  using namespace stancetree;
  DocumentResult r;
  r.doc_id = id;
  r.date = *parse_iso_date(date);
  r.doc_type = doc_type;
  ParagraphResult p;
  for (const auto& [text, stance] : sentences) {
    p.text += (p.text.empty() ? "" : " ") + text;
    p.sentences.push_back({text, stance});
  }
  if (!sentences.empty()) r.paragraphs.push_back(std::move(p));
  return r;
}

}  // namespace testutil
