#include "stancetree/llm.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "stancetree/grammar.hpp"

namespace stancetree {

using json = nlohmann::ordered_json;

void validate_request(const CompletionRequest& req) {
  if (req.max_tokens < 1) throw std::invalid_argument("completion requires max_tokens >= 1");
  if (!(req.temperature >= 0.0)) throw std::invalid_argument("completion requires temperature >= 0");
  if (!req.grammar_text.empty()) {
    try {
      Grammar::parse(req.grammar_text);
    } catch (const GrammarError& e) {
      throw std::invalid_argument(std::string("completion grammar is malformed: ") + e.what());
    }
  }
}

CompletionResult complete(const LlmBackend& backend, const CompletionRequest& req,
                          const RetryPolicy& policy) {
  validate_request(req);
  std::optional<Grammar> grammar;
  if (!req.grammar_text.empty()) grammar = Grammar::parse(req.grammar_text);

  auto backoff = policy.initial_backoff;
  const int attempts = std::max(1, policy.max_attempts);
  for (int attempt = 1;; ++attempt) {
    try {
      CompletionResult result = backend.complete(req);
      if (grammar && !grammar->accepts(result.text)) {
        throw GrammarViolationError("backend '" + backend.id() +
                                    "' returned text outside the request grammar");
      }
      return result;
    } catch (const TransportError& e) {
      if (attempt >= attempts) {
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(attempts) +
                             " attempt(s))");
      }
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(backoff.count()) * policy.backoff_multiplier));
    }
  }
}

// ---------------------------------------------------------------------------
// Mock backend
// ---------------------------------------------------------------------------

namespace {

std::string optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw std::invalid_argument(std::string("mock script: '") + key + "' must be a string");
  return it->get<std::string>();
}

/// The line a choice point is answering.
std::string_view context_line(std::string_view generated) {
  std::size_t last_nl = generated.rfind('\n');
  std::string_view partial =
      last_nl == std::string_view::npos ? generated : generated.substr(last_nl + 1);
  if (!partial.empty() || last_nl == std::string_view::npos) return partial;
  std::string_view before = generated.substr(0, last_nl);
  std::size_t prev_nl = before.rfind('\n');
  return prev_nl == std::string_view::npos ? before : before.substr(prev_nl + 1);
}

/// "A: label\n" -> "label"; other previews are returned without a trailing newline.
std::string_view choice_label(std::string_view preview) {
  if (preview.substr(0, 3) == "A: ") preview.remove_prefix(3);
  if (!preview.empty() && preview.back() == '\n') preview.remove_suffix(1);
  return preview;
}

}  // namespace

MockScript MockScript::from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("mock script is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("mock script must be a JSON object");
  MockScript s;
  if (auto it = doc.find("rules"); it != doc.end()) {
    for (const auto& r : *it) {
      s.rules.push_back({optional_string(r, "question"), optional_string(r, "answer"),
                         optional_string(r, "prompt_contains")});
    }
  }
  if (auto it = doc.find("completions"); it != doc.end()) {
    for (const auto& c : *it) {
      s.completions.push_back({optional_string(c, "prompt_contains"), optional_string(c, "text")});
    }
  }
  s.default_completion = optional_string(doc, "default_completion");
  if (auto it = doc.find("fail_when_prompt_contains"); it != doc.end()) {
    for (const auto& f : *it) s.fail_when_prompt_contains.push_back(f.get<std::string>());
  }
  return s;
}

MockScript MockScript::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open mock script '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

MockBackend::MockBackend(MockScript script) : script_(std::move(script)) {}

CompletionResult MockBackend::complete(const CompletionRequest& req) const {
  for (const auto& needle : script_.fail_when_prompt_contains) {
    if (req.prompt.find(needle) != std::string::npos) {
      throw TransportError("mock backend: scripted failure");
    }
  }
  CompletionResult result;
  result.backend_id = id();
  if (req.grammar_text.empty()) {
    result.text = script_.default_completion;
    for (const auto& c : script_.completions) {
      if (req.prompt.find(c.prompt_contains) != std::string::npos) {
        result.text = c.text;
        break;
      }
    }
    return result;
  }
  Grammar grammar = Grammar::parse(req.grammar_text);
  std::mt19937_64 rng(req.seed);
  result.text = grammar.generate([&](std::string_view generated, const std::vector<std::string>& previews) {
    const std::string_view context = context_line(generated);
    for (const auto& rule : script_.rules) {
      if (context.find(rule.question) == std::string_view::npos) continue;
      if (!rule.prompt_contains.empty() && req.prompt.find(rule.prompt_contains) == std::string::npos) {
        continue;
      }
      for (std::size_t i = 0; i < previews.size(); ++i) {
        if (choice_label(previews[i]) == rule.answer) return i;
      }
    }
    if (req.temperature > 0.0) {
      return static_cast<std::size_t>(rng() % previews.size());
    }
    return std::size_t{0};
  });
  return result;
}

// ---------------------------------------------------------------------------
// HTTP backend
// ---------------------------------------------------------------------------

HttpBackendConfig HttpBackendConfig::from_env() {
  HttpBackendConfig c;
  if (const char* v = std::getenv("STANCETREE_LLM_URL")) c.url = v;
  if (const char* v = std::getenv("STANCETREE_LLM_AUTH_HEADER")) c.auth_header = v;
  if (const char* v = std::getenv("STANCETREE_LLM_AUTH_TOKEN")) c.auth_value = v;
  if (const char* v = std::getenv("STANCETREE_LLM_TIMEOUT")) c.timeout = std::chrono::seconds(std::atoi(v));
  return c;
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const std::string& url = config_.url;
  const std::size_t scheme_end = url.find("://");
  if (url.empty() || scheme_end == std::string::npos) {
    throw std::invalid_argument("backend URL must look like http://host:port/path, got '" + url + "'");
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  base_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/completion" : url.substr(path_start);
}

std::string HttpBackend::request_body(const CompletionRequest& req) {
  json body = json::object();
  body["prompt"] = req.prompt;
  body["grammar"] = req.grammar_text;
  body["n_predict"] = req.max_tokens;
  body["temperature"] = req.temperature;
  body["seed"] = req.seed;
  return body.dump();
}

CompletionResult HttpBackend::complete(const CompletionRequest& req) const {
  const auto start = std::chrono::steady_clock::now();
  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.auth_value.empty()) headers.emplace(config_.auth_header, config_.auth_value);

  auto res = client.Post(path_, headers, request_body(req), "application/json");
  if (!res) {
    throw TransportError("POST " + config_.url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status >= 500 || res->status == 429) {
    throw TransportError("POST " + config_.url + " returned HTTP " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw BackendRefusal("POST " + config_.url + " returned HTTP " + std::to_string(res->status) +
                         ": " + res->body.substr(0, 200));
  }
  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::parse_error&) {
    throw BackendRefusal("backend reply is not JSON");
  }
  auto it = reply.find("content");
  if (it == reply.end() || !it->is_string()) {
    throw BackendRefusal("backend reply lacks a string 'content' field");
  }
  CompletionResult result;
  result.text = it->get<std::string>();
  result.backend_id = id();
  result.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace stancetree
