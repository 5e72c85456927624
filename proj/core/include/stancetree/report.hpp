#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stancetree/reasoner.hpp"

namespace stancetree {

class ResultFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stable field order, two-space indentation, trailing newline.
std::string export_result_json(const DocumentResult& r);
DocumentResult load_result_json(std::string_view json_text);
DocumentResult load_result_file(const std::string& path);

/// Marker comment that precedes the drill-down script element.
inline constexpr std::string_view kScriptMarker = "<!-- stancetree:drilldown-script -->";

/// Five-step diverging palette, dovish blue to hawkish red.
std::map<std::string, std::string> default_palette();

struct ReportOptions {
  std::map<std::string, std::string> palette;  // overrides on top of default_palette()
};

struct ReportBundle {
  DocumentResult result;
  std::string html;
  std::vector<std::string> warnings;
};

/// Self-contained three-column HTML: highlighted sentences, per-topic
/// reasoning traces, and the paragraph synthesis with auxiliary details.
/// Sentence spans carry `data-stance` and `data-trace-ids`; `script_asset`
/// is inlined after kScriptMarker (empty gives a static report).
ReportBundle render_document_report(const DocumentResult& r, std::string_view script_asset,
                                    const ReportOptions& options = {});

std::string html_escape(std::string_view text);

}  // namespace stancetree
