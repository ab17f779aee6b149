#pragma once

#include "scenepilot/lexicon.hpp"
#include "scenepilot/types.hpp"

#include <array>
#include <set>
#include <span>
#include <string>
#include <utility>

namespace scenepilot {

// Canonical semantic tuples extracted from a scene description: unary object
// mentions plus (object, attribute) pairs. Every attribute's object token is
// also present as a unary tuple.
struct TupleSet {
  std::set<std::string> objects;
  std::set<std::pair<std::string, std::string>> attributes;

  std::size_t size() const { return objects.size() + attributes.size(); }
  std::size_t intersection_size(const TupleSet& other) const;
  bool operator==(const TupleSet&) const = default;
};

// Rule-based parse: weather/time/road-type words emit their slot's unary
// tuple plus an attribute, "<number> lane(s)" and "intersection" attach to
// road, participant words emit unary tuples only. Unparseable text yields an
// empty set.
TupleSet parse_scene(const std::string& text, const Lexicon& lexicon);

struct SpiceScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Tuple-level precision/recall/F1 between two descriptions; empty tuple sets
// score zero on their side, and F1 is zero when both P and R vanish.
SpiceScore spice(const std::string& candidate, const std::string& reference,
                 const Lexicon& lexicon);

// Risk score (1..5) to class table; defaults to {1,2}->low, {3}->medium,
// {4,5}->high and must stay monotone under validation.
struct RiskMapping {
  std::array<RiskClass, 5> classes = {RiskClass::low, RiskClass::low,
                                      RiskClass::medium, RiskClass::high,
                                      RiskClass::high};

  static RiskMapping defaults() { return {}; }
  void validate() const;
};

// Table lookup; throws BenchError(score_out_of_range) outside 1..5.
RiskClass risk_class(int score, const RiskMapping& mapping);

// Fraction of exact (predicted, ground-truth) class matches.
double risk_class_acc(std::span<const std::pair<RiskClass, RiskClass>> pairs);

}  // namespace scenepilot
