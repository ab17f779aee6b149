#include "scenepilot/error.hpp"
#include "scenepilot/scene_semantics.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace scenepilot;

namespace {

const char* const kTemplate =
    "The weather is sunny, and it is daytime. The road type is urban and the "
    "road has four lanes. It is an intersection, and the risk level score is "
    "4.";

}  // namespace

TEST_CASE("tokenize lowercases and splits on punctuation") {
  const auto toks = tokenize("Two cars, ONE person; bike!");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0] == "two");
  CHECK(toks[1] == "cars");
  CHECK(toks[3] == "person");
  CHECK(toks[4] == "bike");
  CHECK(tokenize("   ").empty());
}

TEST_CASE("canonicalization strips suffixes and applies synonyms") {
  const Lexicon lex = Lexicon::builtin();
  CHECK(lex.canonicalize("cars") == "vehicle");
  CHECK(lex.canonicalize("car") == "vehicle");
  CHECK(lex.canonicalize("automobile") == "vehicle");
  CHECK(lex.canonicalize("people") == "pedestrian");
  CHECK(lex.canonicalize("person") == "pedestrian");
  CHECK(lex.canonicalize("bikes") == "bicycle");
  CHECK(lex.canonicalize("motorbike") == "motorcycle");
  CHECK(lex.canonicalize("lanes") == "lane");
  CHECK(lex.canonicalize("4") == "four");
  CHECK(lex.canonicalize("intersections") == "intersection");
  // Suffixes are only stripped when the stem is known.
  CHECK(lex.canonicalize("raining") == "raining");
  CHECK(lex.canonicalize("zeppelin") == "zeppelin");
}

TEST_CASE("the template parses into the expected slots") {
  const Lexicon lex = Lexicon::builtin();
  const TupleSet t = parse_scene(kTemplate, lex);
  CHECK(t.objects == std::set<std::string>{"weather", "time", "road"});
  const std::set<std::pair<std::string, std::string>> expected_attrs = {
      {"weather", "sunny"}, {"time", "daytime"},       {"road", "urban"},
      {"road", "four-lane"}, {"road", "intersection"},
  };
  CHECK(t.attributes == expected_attrs);
  CHECK(t.size() == 8);
}

TEST_CASE("participants contribute unary tuples through synonyms") {
  const Lexicon lex = Lexicon::builtin();
  const TupleSet t = parse_scene("Two cars and a person", lex);
  CHECK(t.objects == std::set<std::string>{"vehicle", "pedestrian"});
  CHECK(t.attributes.empty());
}

TEST_CASE("lane counts need an adjacent number word") {
  const Lexicon lex = Lexicon::builtin();
  const TupleSet t = parse_scene("the road has 2 lanes", lex);
  CHECK(t.attributes.count({"road", "two-lane"}) == 1);
  // "lanes" without a preceding number adds nothing.
  const TupleSet u = parse_scene("the lanes are wide", lex);
  CHECK(u.attributes.empty());
}

TEST_CASE("empty and unparseable text yield an empty tuple set") {
  const Lexicon lex = Lexicon::builtin();
  CHECK(parse_scene("", lex).size() == 0);
  CHECK(parse_scene("qwerty asdf zxcv", lex).size() == 0);
}

TEST_CASE("identical descriptions score a perfect F1") {
  const Lexicon lex = Lexicon::builtin();
  const SpiceScore s = spice(kTemplate, kTemplate, lex);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(s.f1 == 1.0);
}

TEST_CASE("a correct but partial candidate trades recall for precision") {
  const Lexicon lex = Lexicon::builtin();
  const SpiceScore s =
      spice("The weather is sunny. The road type is urban.", kTemplate, lex);
  // Candidate tuples: weather, road, (weather,sunny), (road,urban) - all in
  // the reference's 8.
  CHECK(s.precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.recall == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("empty sides score zero by convention") {
  const Lexicon lex = Lexicon::builtin();
  const SpiceScore s = spice("", kTemplate, lex);
  CHECK(s.precision == 0.0);
  CHECK(s.recall == 0.0);
  CHECK(s.f1 == 0.0);
  const SpiceScore t = spice(kTemplate, "", lex);
  CHECK(t.f1 == 0.0);
  CHECK(spice("", "", lex).f1 == 0.0);
}

TEST_CASE("swapping candidate and reference exchanges P and R") {
  const Lexicon lex = Lexicon::builtin();
  const std::string a = "The weather is rainy and the road type is highway.";
  const std::string b = kTemplate;
  const SpiceScore ab = spice(a, b, lex);
  const SpiceScore ba = spice(b, a, lex);
  CHECK(ab.precision == doctest::Approx(ba.recall).epsilon(1e-15));
  CHECK(ab.recall == doctest::Approx(ba.precision).epsilon(1e-15));
  CHECK(ab.f1 == doctest::Approx(ba.f1).epsilon(1e-15));
}

TEST_CASE("scores are invariant to case, punctuation and clause order") {
  const Lexicon lex = Lexicon::builtin();
  const std::string ref = kTemplate;
  const std::string shuffled =
      "it is an INTERSECTION; the road has FOUR lanes!! the road type is "
      "urban... it is daytime, the weather is sunny";
  const SpiceScore a = spice(kTemplate, ref, lex);
  const SpiceScore b = spice(shuffled, ref, lex);
  CHECK(a.precision == b.precision);
  CHECK(a.recall == b.recall);
  CHECK(a.f1 == b.f1);
}

TEST_CASE("fuzzed descriptions keep scores in range and well-defined") {
  const Lexicon lex = Lexicon::builtin();
  std::mt19937_64 gen(23);
  const char* weather[] = {"sunny", "rainy", "cloudy", "foggy"};
  const char* times[] = {"daytime", "night", "dusk"};
  const char* roads[] = {"urban", "highway", "rural"};
  const char* parts[] = {"car", "truck", "person", "bike"};
  const auto build = [&] {
    std::ostringstream s;
    s << "The weather is " << weather[gen() % 4] << ". It is "
      << times[gen() % 3] << ". The road type is " << roads[gen() % 3] << ". ";
    if (gen() % 2) s << "It is an intersection. ";
    s << "There is a " << parts[gen() % 4] << ".";
    return s.str();
  };
  for (int i = 0; i < 50; ++i) {
    const std::string cand = build(), ref = build();
    const SpiceScore s = spice(cand, ref, lex);
    CHECK(s.precision >= 0.0);
    CHECK(s.precision <= 1.0);
    CHECK(s.recall >= 0.0);
    CHECK(s.recall <= 1.0);
    CHECK(s.f1 >= 0.0);
    CHECK(s.f1 <= 1.0);
    // F1 is the harmonic mean whenever either side matched anything.
    if (s.precision + s.recall > 0.0) {
      CHECK(s.f1 == doctest::Approx(2.0 * s.precision * s.recall /
                                    (s.precision + s.recall))
                        .epsilon(1e-12));
    }
    CHECK(spice(cand, cand, lex).f1 == 1.0);
  }
}

TEST_CASE("risk scores map to classes through the table") {
  const RiskMapping m = RiskMapping::defaults();
  CHECK(risk_class(1, m) == RiskClass::low);
  CHECK(risk_class(2, m) == RiskClass::low);
  CHECK(risk_class(3, m) == RiskClass::medium);
  CHECK(risk_class(4, m) == RiskClass::high);
  CHECK(risk_class(5, m) == RiskClass::high);
  CHECK_THROWS_AS(risk_class(0, m), BenchError);
  CHECK_THROWS_AS(risk_class(6, m), BenchError);
}

TEST_CASE("non-monotone risk mappings are rejected") {
  RiskMapping m;
  m.classes = {RiskClass::high, RiskClass::low, RiskClass::medium,
               RiskClass::high, RiskClass::high};
  CHECK_THROWS_AS(m.validate(), BenchError);
  CHECK_NOTHROW(RiskMapping::defaults().validate());
}

TEST_CASE("risk class accuracy counts exact matches") {
  const std::vector<std::pair<RiskClass, RiskClass>> pairs = {
      {RiskClass::low, RiskClass::low},
      {RiskClass::medium, RiskClass::high},
      {RiskClass::high, RiskClass::high},
      {RiskClass::low, RiskClass::medium},
  };
  CHECK(risk_class_acc(pairs) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(
      risk_class_acc(std::vector<std::pair<RiskClass, RiskClass>>{}),
      BenchError);
}

TEST_CASE("a custom lexicon can be loaded from the sectioned text format") {
  std::istringstream in(R"(# toy lexicon
[weather]
sunny
stormy
[time]
daytime
[road]
urban
[participants]
vehicle
pedestrian
[numbers]
two 2
[keywords]
lane
intersection
[synonyms]
car vehicle
)");
  const Lexicon lex = Lexicon::load(in);
  CHECK(lex.is_weather("stormy"));
  CHECK(lex.canonicalize("car") == "vehicle");
  CHECK(lex.canonicalize("2") == "two");
  const TupleSet t = parse_scene("A stormy day with a car", lex);
  CHECK(t.objects.count("vehicle") == 1);
  CHECK(t.attributes.count({"weather", "stormy"}) == 1);
}

TEST_CASE("lexicon loading rejects entries outside known sections") {
  std::istringstream in("[weather]\nsunny\n[banana]\nyellow\n");
  try {
    Lexicon::load(in);
    FAIL("expected config_error");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::config_error);
    CHECK(e.line() == 4);  // the first entry under the unknown header
  }
}

TEST_CASE("synonym targets must be canonical fixpoints") {
  Lexicon lex = Lexicon::builtin();
  lex.synonyms["suv"] = "automobile";  // itself an alias, not canonical
  CHECK_THROWS_AS(lex.validate(), BenchError);
}
