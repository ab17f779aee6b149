#pragma once

#include "scenepilot/records.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace scenepilot {

// Record streams are UTF-8 JSON Lines: one self-contained object per line,
// canonical field order on write, any order accepted on read. Whitespace-only
// lines are ignored. All parse failures throw BenchError with the 1-based
// line number; arbitrary bytes never crash the parsers.

std::vector<ClipRecord> parse_ground_truth(std::istream& in);
std::vector<PredictionRecord> parse_predictions(std::istream& in);
std::vector<DetectionRecord> parse_detections(std::istream& in);

// Canonical single-line serializations (no trailing newline).
// serialize(parse(x)) == x byte-for-byte when x is in canonical form.
std::string to_jsonl(const ClipRecord& rec);
std::string to_jsonl(const PredictionRecord& rec);
std::string to_jsonl(const DetectionRecord& rec);

void write_ground_truth(std::ostream& out, const std::vector<ClipRecord>& recs);
void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& recs);
void write_detections(std::ostream& out, const std::vector<DetectionRecord>& recs);

}  // namespace scenepilot
