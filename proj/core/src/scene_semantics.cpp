#include "scenepilot/scene_semantics.hpp"

#include "scenepilot/error.hpp"

#include <algorithm>

namespace scenepilot {

std::size_t TupleSet::intersection_size(const TupleSet& other) const {
  std::size_t n = 0;
  for (const std::string& o : objects) n += other.objects.count(o);
  for (const auto& a : attributes) n += other.attributes.count(a);
  return n;
}

TupleSet parse_scene(const std::string& text, const Lexicon& lexicon) {
  const std::vector<std::string> raw = tokenize(text);
  std::vector<std::string> tokens;
  tokens.reserve(raw.size());
  for (const std::string& t : raw) tokens.push_back(lexicon.canonicalize(t));

  TupleSet out;
  const auto attach = [&out](const std::string& object,
                             const std::string& attribute) {
    out.objects.insert(object);
    out.attributes.emplace(object, attribute);
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (lexicon.is_weather(tok)) {
      attach("weather", tok);
    } else if (lexicon.is_time(tok)) {
      attach("time", tok);
    } else if (lexicon.is_road_type(tok)) {
      attach("road", tok);
    } else if (tok == "intersection") {
      attach("road", "intersection");
    } else if (lexicon.is_participant(tok)) {
      out.objects.insert(tok);
    } else if (lexicon.is_number(tok) && i + 1 < tokens.size() &&
               tokens[i + 1] == "lane") {
      attach("road", tok + "-lane");
    }
  }
  return out;
}

SpiceScore spice(const std::string& candidate, const std::string& reference,
                 const Lexicon& lexicon) {
  const TupleSet tc = parse_scene(candidate, lexicon);
  const TupleSet ts = parse_scene(reference, lexicon);
  const double matched = static_cast<double>(tc.intersection_size(ts));

  SpiceScore s;
  s.precision = tc.size() ? matched / static_cast<double>(tc.size()) : 0.0;
  s.recall = ts.size() ? matched / static_cast<double>(ts.size()) : 0.0;
  s.f1 = (s.precision + s.recall > 0.0)
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

void RiskMapping::validate() const {
  for (std::size_t i = 1; i < classes.size(); ++i) {
    if (static_cast<int>(classes[i]) < static_cast<int>(classes[i - 1])) {
      throw BenchError(Errc::config_error,
                       "risk mapping must be monotone in the score");
    }
  }
}

RiskClass risk_class(int score, const RiskMapping& mapping) {
  if (score < 1 || score > 5) {
    throw BenchError(Errc::score_out_of_range,
                     "risk score must lie in 1..5, got " +
                         std::to_string(score));
  }
  return mapping.classes[static_cast<std::size_t>(score - 1)];
}

double risk_class_acc(std::span<const std::pair<RiskClass, RiskClass>> pairs) {
  if (pairs.empty()) {
    throw BenchError(Errc::empty_input, "risk accuracy needs at least one pair");
  }
  std::size_t hits = 0;
  for (const auto& [pred, gt] : pairs) hits += pred == gt;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

}  // namespace scenepilot
