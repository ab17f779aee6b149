#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scenepilot {

// Vocabulary driving the rule-based scene parser. Tokens are lowercase;
// canonicalization strips a plural/gerund suffix when the stem is known and
// then applies the synonym map, which must already point at fixpoints.
class Lexicon {
 public:
  static Lexicon builtin();
  // Plain-text sectioned format: "[weather]" etc. headers followed by one
  // entry per line; "[numbers]" lines are "word digit", "[synonyms]" lines
  // are "alias canonical". '#' starts a comment.
  static Lexicon load(std::istream& in);
  static Lexicon load_file(const std::string& path);

  void validate() const;

  // Lowercased token -> canonical form (suffix strip + synonym lookup).
  std::string canonicalize(const std::string& token) const;

  bool is_weather(const std::string& canonical) const;
  bool is_time(const std::string& canonical) const;
  bool is_road_type(const std::string& canonical) const;
  bool is_participant(const std::string& canonical) const;
  bool is_number(const std::string& canonical) const;

  std::set<std::string> weather;
  std::set<std::string> time;
  std::set<std::string> road_types;
  std::set<std::string> participants;
  std::set<std::string> numbers;  // canonical word forms
  std::set<std::string> keywords;  // structural tokens: lane, intersection
  std::map<std::string, std::string> synonyms;

 private:
  bool known(const std::string& token) const;
};

// Lowercases and splits on non-alphanumeric characters; empty pieces are
// dropped.
std::vector<std::string> tokenize(const std::string& text);

}  // namespace scenepilot
