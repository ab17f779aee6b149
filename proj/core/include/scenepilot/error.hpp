#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scenepilot {

// Every failure the kit can raise, so callers can dispatch on the code
// instead of matching message text.
enum class Errc {
  // record parsing
  malformed_line,
  invariant_violation,
  duplicate_clip_id,
  task_payload_mismatch,
  unknown_task,
  // binary grids
  bad_magic,
  truncated_payload,
  dimension_overflow,
  // clip planning
  video_too_short,
  // geometry
  non_orthonormal_rotation,
  non_positive_depth,
  empty_grid,
  degenerate_box,
  empty_foreground,
  // scene semantics
  score_out_of_range,
  // metric computation
  empty_input,
  non_positive_gt_distance,
  no_samples,
  non_monotone_timestamps,
  too_few_points,
  zero_gt_acceleration,
  length_mismatch,
  // normalization / scoring
  out_of_range,
  negative_error,
  insufficient_samples,
  degenerate_distribution,
  missing_metric,
  unmapped_country,
  // judge
  no_number_found,
  judge_range,
  all_samples_failed,
  // evaluation wiring
  unknown_clip_id,
  unknown_object_id,
  io_error,
  config_error,
};

const char* errc_name(Errc code);

class BenchError : public std::runtime_error {
 public:
  BenchError(Errc code, const std::string& message, std::size_t line = 0,
             std::string field = {})
      : std::runtime_error(message), code_(code), line_(line),
        field_(std::move(field)) {}

  Errc code() const { return code_; }
  // 1-based input line for stream parsers; 0 when not applicable.
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  Errc code_;
  std::size_t line_;
  std::string field_;
};

}  // namespace scenepilot
