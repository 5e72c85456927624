#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace stancetree {

using Date = std::chrono::year_month_day;

/// Strict YYYY-MM-DD; nullopt for anything else or an invalid calendar date.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(const Date& d);

}  // namespace stancetree
