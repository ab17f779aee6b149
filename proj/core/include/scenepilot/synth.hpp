#pragma once

#include "scenepilot/records.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scenepilot {

// Controls for the synthetic fixture. Everything downstream of the seed is
// deterministic: the same options always produce the same bytes.
struct SynthOptions {
  std::uint64_t seed = 7;
  int clip_count = 100;
  bool with_geometry = true;
};

struct SynthResult {
  std::vector<std::string> files_written;
};

// Writes a self-consistent desk-scale fixture into out_dir:
//   ground_truth.jsonl            clip records
//   predictions_perfect.jsonl     echo of the ground truth (scores 100)
//   predictions_perturbed.jsonl   controlled, known-size errors
//   expected_scorecard.json       scores of the perturbed set, computed here
//                                 with standalone arithmetic (not by calling
//                                 the evaluator)
//   config.json / config_perfect.json   run configs for the score command
//   geometry/…                    planar-ground clip: frames, depth, masks,
//                                 detections, analytic expectations
SynthResult write_synth_fixture(const std::string& out_dir,
                                const SynthOptions& options);

}  // namespace scenepilot
