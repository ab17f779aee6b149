#include "scenepilot/lexicon.hpp"

#include "scenepilot/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace scenepilot {

namespace {

const char* const kNumberWords[10] = {"one", "two",   "three", "four", "five",
                                      "six", "seven", "eight", "nine", "ten"};

}  // namespace

Lexicon Lexicon::builtin() {
  Lexicon lex;
  lex.weather = {"sunny", "rainy", "cloudy", "overcast", "snowy", "foggy"};
  lex.time = {"daytime", "night", "dusk", "dawn"};
  lex.road_types = {"urban", "highway", "rural", "residential", "mountain"};
  lex.participants = {"vehicle", "truck", "bicycle", "motorcycle", "pedestrian"};
  lex.keywords = {"lane", "intersection"};
  for (int i = 0; i < 10; ++i) {
    lex.numbers.insert(kNumberWords[i]);
    lex.synonyms[std::to_string(i + 1)] = kNumberWords[i];
  }
  lex.synonyms["car"] = "vehicle";
  lex.synonyms["automobile"] = "vehicle";
  lex.synonyms["person"] = "pedestrian";
  lex.synonyms["people"] = "pedestrian";
  lex.synonyms["bike"] = "bicycle";
  lex.synonyms["motorbike"] = "motorcycle";
  lex.validate();
  return lex;
}

Lexicon Lexicon::load(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first.front() == '[' && first.back() == ']') {
      section = first.substr(1, first.size() - 2);
      continue;
    }
    std::string second;
    fields >> second;
    if (section == "weather") {
      lex.weather.insert(first);
    } else if (section == "time") {
      lex.time.insert(first);
    } else if (section == "road") {
      lex.road_types.insert(first);
    } else if (section == "participants") {
      lex.participants.insert(first);
    } else if (section == "keywords") {
      lex.keywords.insert(first);
    } else if (section == "numbers") {
      lex.numbers.insert(first);
      if (!second.empty()) lex.synonyms[second] = first;
    } else if (section == "synonyms") {
      if (second.empty()) {
        throw BenchError(Errc::config_error,
                         "synonym line needs alias and canonical form",
                         line_no);
      }
      lex.synonyms[first] = second;
    } else {
      throw BenchError(Errc::config_error,
                       "entry outside a known lexicon section", line_no);
    }
  }
  lex.validate();
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw BenchError(Errc::io_error, "cannot open lexicon file: " + path);
  }
  return load(in);
}

void Lexicon::validate() const {
  for (const auto& [alias, canonical] : synonyms) {
    const auto it = synonyms.find(canonical);
    if (it != synonyms.end() && it->second != canonical) {
      throw BenchError(Errc::config_error,
                       "synonym target '" + canonical +
                           "' is itself an alias; map must be idempotent");
    }
  }
}

bool Lexicon::known(const std::string& token) const {
  return weather.count(token) || time.count(token) || road_types.count(token) ||
         participants.count(token) || numbers.count(token) ||
         keywords.count(token) || synonyms.count(token);
}

std::string Lexicon::canonicalize(const std::string& token) const {
  std::string t = token;
  if (!known(t)) {
    for (const char* suffix : {"ing", "es", "s"}) {
      const std::size_t n = std::char_traits<char>::length(suffix);
      if (t.size() > n && t.compare(t.size() - n, n, suffix) == 0) {
        std::string stem = t.substr(0, t.size() - n);
        if (known(stem)) {
          t = std::move(stem);
          break;
        }
      }
    }
  }
  const auto it = synonyms.find(t);
  return it == synonyms.end() ? t : it->second;
}

bool Lexicon::is_weather(const std::string& c) const { return weather.count(c) > 0; }
bool Lexicon::is_time(const std::string& c) const { return time.count(c) > 0; }
bool Lexicon::is_road_type(const std::string& c) const { return road_types.count(c) > 0; }
bool Lexicon::is_participant(const std::string& c) const { return participants.count(c) > 0; }
bool Lexicon::is_number(const std::string& c) const { return numbers.count(c) > 0; }

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char ch : text) {
    if (std::isalnum(ch)) {
      current.push_back(static_cast<char>(std::tolower(ch)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace scenepilot
