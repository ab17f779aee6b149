#include "scenepilot/judge.hpp"

#include "scenepilot/error.hpp"

#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <mutex>
#include <thread>

namespace scenepilot {

void JudgeRequest::validate() const {
  const bool wants_extras = task == Task::scene_desc || task == Task::risk;
  if (wants_extras != extras.has_value()) {
    throw BenchError(Errc::invariant_violation,
                     wants_extras
                         ? "scene/risk judge samples need the extras block"
                         : "extras are only valid for scene/risk samples",
                     0, "extras");
  }
}

HttpJudgeTransport::HttpJudgeTransport(HttpJudgeConfig config)
    : config_(std::move(config)) {}

std::string HttpJudgeTransport::send(const std::string& request_text) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_s);
  client.set_read_timeout(config_.timeout_s);
  httplib::Headers headers;
  if (const char* token = std::getenv(config_.credential_env.c_str())) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }
  nlohmann::ordered_json body;
  body["prompt"] = request_text;
  const auto res = client.Post(config_.path, headers, body.dump(),
                               "application/json");
  if (!res) {
    throw BenchError(Errc::io_error,
                     "judge endpoint unreachable: " + config_.base_url);
  }
  if (res->status < 200 || res->status >= 300) {
    throw BenchError(Errc::io_error, "judge endpoint returned status " +
                                         std::to_string(res->status));
  }
  return res->body;
}

std::string build_judge_prompt(const JudgeRequest& req) {
  req.validate();
  std::string out;
  out += "You grade how well a model answer matches a reference answer for a "
         "driving-scene question.\n";
  out += "Task: ";
  out += to_string(req.task);
  out += "\nQuestion:\n";
  out += req.question;
  out += "\nReference answer:\n";
  out += req.ground_truth;
  out += "\nModel answer:\n";
  out += req.prediction;
  out += "\n";
  if (req.extras) {
    char block[160];
    std::snprintf(block, sizeof(block),
                  "Auxiliary signals: tuple_f1=%.6f risk_class_acc=%.6f "
                  "reference_risk_level=%d\n",
                  req.extras->spice, req.extras->risk_class_acc,
                  req.extras->gt_risk_level);
    out += block;
  }
  out += "Respond with a single decimal number in [0,1] and nothing else.\n";
  return out;
}

double parse_judge_response(const std::string& text) {
  const auto digit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool starts_number =
        digit(c) ||
        ((c == '-' || c == '+' || c == '.') && i + 1 < text.size() &&
         (digit(text[i + 1]) ||
          ((c == '-' || c == '+') && text[i + 1] == '.' &&
           i + 2 < text.size() && digit(text[i + 2]))));
    if (!starts_number) continue;
    char* end = nullptr;
    const double value = std::strtod(text.c_str() + i, &end);
    if (end == text.c_str() + i) continue;
    if (value < 0.0 || value > 1.0) {
      throw BenchError(Errc::judge_range,
                       "judge answered outside [0,1]: " +
                           std::to_string(value));
    }
    return value;
  }
  throw BenchError(Errc::no_number_found, "judge answer contains no number");
}

BatchResult gpt_score_batch(const std::vector<JudgeRequest>& requests,
                            JudgeTransport& transport,
                            const BatchOptions& options) {
  BatchResult result;
  result.scores.resize(requests.size());
  std::vector<std::string> errors(requests.size());

  const auto score_one = [&](std::size_t i) {
    const std::string prompt = build_judge_prompt(requests[i]);
    int backoff_ms = options.initial_backoff_ms;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
      try {
        result.scores[i] = parse_judge_response(transport.send(prompt));
        return;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      if (attempt < options.max_retries && backoff_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms *= 2;
      }
    }
  };

  const int workers =
      std::max(1, std::min<int>(options.parallelism,
                                static_cast<int>(requests.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < requests.size(); ++i) score_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < requests.size();
             i = next.fetch_add(1)) {
          score_one(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (result.scores[i]) {
      sum += *result.scores[i];
      ++result.success_count;
    } else {
      result.failures.push_back({i, requests[i].clip_id, errors[i]});
    }
  }
  if (result.success_count == 0) {
    throw BenchError(Errc::all_samples_failed,
                     "every judge sample exhausted its retries");
  }
  result.mean_score = sum / static_cast<double>(result.success_count);
  return result;
}

}  // namespace scenepilot
