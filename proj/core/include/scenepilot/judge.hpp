#pragma once

#include "scenepilot/types.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace scenepilot {

// Companion signals handed to the judge for description and risk samples.
struct JudgeExtras {
  double spice = 0.0;
  double risk_class_acc = 0.0;
  int gt_risk_level = 1;
};

// One alignment query: the question asked of the model, its reference
// answer, and the model's answer. Extras ride along exactly for the
// scene-description and risk tasks.
struct JudgeRequest {
  std::string clip_id;
  Task task = Task::free_qa;
  std::string question;
  std::string ground_truth;
  std::string prediction;
  std::optional<JudgeExtras> extras;

  void validate() const;  // extras present iff task is scene_desc or risk
};

// Single-capability transport; implementations may block and may throw on
// failure. Retries live above the transport.
class JudgeTransport {
 public:
  virtual ~JudgeTransport() = default;
  virtual std::string send(const std::string& request_text) = 0;
};

// Deterministic in-process transport for tests: a pure function of the
// request text, so batch order can never affect results.
class MockJudgeTransport : public JudgeTransport {
 public:
  explicit MockJudgeTransport(
      std::function<std::string(const std::string&)> responder)
      : responder_(std::move(responder)) {}
  std::string send(const std::string& request_text) override {
    return responder_(request_text);
  }

 private:
  std::function<std::string(const std::string&)> responder_;
};

struct HttpJudgeConfig {
  std::string base_url;           // e.g. http://judge.internal:8080
  std::string path = "/v1/score";
  std::string credential_env = "SPBENCH_JUDGE_TOKEN";
  int timeout_s = 30;
};

// POSTs {"prompt": <text>} to the configured endpoint and returns the
// response body; bearer token read from the environment, never from config
// files.
class HttpJudgeTransport : public JudgeTransport {
 public:
  explicit HttpJudgeTransport(HttpJudgeConfig config);
  std::string send(const std::string& request_text) override;

 private:
  HttpJudgeConfig config_;
};

// Deterministic prompt: core fields, the extras block when present, and the
// instruction to answer with one decimal in [0,1].
std::string build_judge_prompt(const JudgeRequest& req);

// First decimal number in the text (sign included); accepted only inside
// [0,1]. Throws no_number_found / judge_range.
double parse_judge_response(const std::string& text);

struct BatchOptions {
  int max_retries = 2;           // attempts beyond the first
  int parallelism = 1;
  int initial_backoff_ms = 50;   // doubles per retry
};

struct JudgeFailure {
  std::size_t index = 0;
  std::string clip_id;
  std::string message;
};

struct BatchResult {
  std::vector<std::optional<double>> scores;  // aligned with the requests
  std::vector<JudgeFailure> failures;
  double mean_score = 0.0;  // over successes only
  std::size_t success_count = 0;
};

// Scores every request, retrying with exponential backoff; failed samples
// are excluded from the mean. Throws all_samples_failed when nothing
// succeeds.
BatchResult gpt_score_batch(const std::vector<JudgeRequest>& requests,
                            JudgeTransport& transport,
                            const BatchOptions& options = {});

}  // namespace scenepilot
