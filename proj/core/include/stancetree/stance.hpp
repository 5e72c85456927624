#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace stancetree {

/// Five-class hawkish/dovish scale. The enumerator order is the total order
/// of the scale, so relational operators compare stances directly.
enum class Stance : int {
  Dovish = 0,
  LeaningDovish = 1,
  Neutral = 2,
  LeaningHawkish = 3,
  Hawkish = 4,
};

inline constexpr std::array<Stance, 5> kAllStances = {
    Stance::Dovish, Stance::LeaningDovish, Stance::Neutral,
    Stance::LeaningHawkish, Stance::Hawkish};

/// Canonical lowercase label, e.g. "leaning hawkish".
std::string_view to_string(Stance s);

std::optional<Stance> parse_stance(std::string_view text);

}  // namespace stancetree
