#include "stancetree/stance.hpp"

namespace stancetree {

std::string_view to_string(Stance s) {
  switch (s) {
    case Stance::Dovish: return "dovish";
    case Stance::LeaningDovish: return "leaning dovish";
    case Stance::Neutral: return "neutral";
    case Stance::LeaningHawkish: return "leaning hawkish";
    case Stance::Hawkish: return "hawkish";
  }
  return "neutral";
}

std::optional<Stance> parse_stance(std::string_view text) {
  for (Stance s : kAllStances) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

}  // namespace stancetree
