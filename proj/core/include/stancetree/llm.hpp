#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stancetree {

struct CompletionRequest {
  std::string prompt;
  std::string grammar_text;  // empty = unconstrained
  int max_tokens = 1024;
  double temperature = 0.0;
  std::uint64_t seed = 42;
};

struct CompletionResult {
  std::string text;
  std::string backend_id;
  std::chrono::milliseconds latency{0};
};

class LlmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Connection failures, timeouts, server errors. Retryable.
class TransportError : public LlmError {
 public:
  using LlmError::LlmError;
};

/// The backend answered but declined the request (4xx, malformed reply).
class BackendRefusal : public LlmError {
 public:
  using LlmError::LlmError;
};

/// Constrained output that the request grammar does not accept.
class GrammarViolationError : public LlmError {
 public:
  using LlmError::LlmError;
};

/// A single completion endpoint. Implementations must be callable from
/// several threads at once.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string id() const = 0;
  virtual CompletionResult complete(const CompletionRequest& req) const = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double backoff_multiplier = 2.0;
};

/// Runs `req` against `backend`, retrying transport failures with exponential
/// backoff, then re-validates constrained output against the request grammar
/// locally. Throws TransportError once attempts are exhausted,
/// BackendRefusal, or GrammarViolationError.
CompletionResult complete(const LlmBackend& backend, const CompletionRequest& req,
                          const RetryPolicy& policy = {});

/// Throws std::invalid_argument for max_tokens < 1, negative temperature or
/// grammar text that does not parse.
void validate_request(const CompletionRequest& req);

// ---------------------------------------------------------------------------
// Scripted mock
// ---------------------------------------------------------------------------

/// Offline backend driven by a script. At each grammar choice point the
/// context line is the current partial output line, or the previous line if
/// the current one is empty. The first rule whose `question` occurs in the
/// context (and whose `prompt_contains`, if set, occurs in the prompt) and
/// whose `answer` names an available alternative decides the choice. With no
/// matching rule the first alternative is taken, or a seeded random one when
/// temperature > 0.
struct MockScript {
  struct Rule {
    std::string question;
    std::string answer;
    std::string prompt_contains;
  };
  struct Completion {
    std::string prompt_contains;
    std::string text;
  };

  std::vector<Rule> rules;
  std::vector<Completion> completions;  // unconstrained requests
  std::string default_completion;
  std::vector<std::string> fail_when_prompt_contains;  // simulated transport failures

  static MockScript from_json(std::string_view json_text);
  static MockScript from_file(const std::string& path);
};

class MockBackend final : public LlmBackend {
 public:
  explicit MockBackend(MockScript script = {});

  std::string id() const override { return "mock"; }
  CompletionResult complete(const CompletionRequest& req) const override;

  const MockScript& script() const { return script_; }

 private:
  MockScript script_;
};

// ---------------------------------------------------------------------------
// HTTP adapter
// ---------------------------------------------------------------------------

struct HttpBackendConfig {
  std::string url;  // e.g. http://127.0.0.1:8080/completion
  std::string auth_header = "Authorization";
  std::string auth_value;  // sent only when non-empty
  std::chrono::seconds timeout{120};

  /// Reads STANCETREE_LLM_URL, STANCETREE_LLM_AUTH_HEADER,
  /// STANCETREE_LLM_AUTH_TOKEN and STANCETREE_LLM_TIMEOUT (seconds).
  static HttpBackendConfig from_env();
};

/// Grammar-capable completion server: POSTs
/// {prompt, grammar, n_predict, temperature, seed} and reads `content` from
/// the JSON reply.
class HttpBackend final : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string id() const override { return "http:" + config_.url; }
  CompletionResult complete(const CompletionRequest& req) const override;

  /// The JSON body sent for `req`.
  static std::string request_body(const CompletionRequest& req);

 private:
  HttpBackendConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

}  // namespace stancetree
