#include "doctest.h"

#include "sgwp/export.hpp"
#include "sgwp/oracles.hpp"
#include "sgwp/spec_doc.hpp"

using namespace sgwp;

namespace {

const char* kBicyclicRewriting = R"json({
  "version": 1,
  "definitions": [
    {"name": "rules", "kind": "rewriting_system", "alphabet": ["b", "c"],
     "rules": [{"rhs": null, "lhs_words": [["b", "c"]]}], "confluent": true},
    {"name": "bicyclic", "kind": "rewriting_word_problem", "system": "rules"}
  ],
  "target": "bicyclic"
})json";

const char* kFreeMonoid = R"json({
  "version": 1,
  "definitions": [
    {"name": "fm", "kind": "free_monoid", "letters": ["a", "b"], "monoid": true}
  ],
  "target": "fm"
})json";

}  // namespace

TEST_CASE("a rewriting spec document builds its oracle") {
  SpecDocument doc = parse_spec(kBicyclicRewriting);
  const WordProblemObject& w = doc.word_problem("bicyclic");
  CHECK_FALSE(w.has_recognizer());
  CHECK(w.oracle({"b", "c"}, {}));
}

TEST_CASE("document validation failures") {
  SUBCASE("non-associative tables are named") {
    const char* text = R"json({
      "version": 1,
      "definitions": [
        {"name": "bad", "kind": "finite_semigroup", "elements": ["x", "y"],
         "table": [["x","x","x"], ["x","y","y"], ["y","x","x"], ["y","y","x"]]}
      ],
      "target": "bad"
    })json";
    CHECK_THROWS_WITH_AS(parse_spec(text), doctest::Contains("associative"),
                         InputError);
  }
  SUBCASE("dangling references") {
    const char* text = R"json({
      "version": 1,
      "definitions": [
        {"name": "w", "kind": "rewriting_word_problem", "system": "nowhere"}
      ],
      "target": "w"
    })json";
    CHECK_THROWS_AS(parse_spec(text), InputError);
  }
  SUBCASE("duplicate names") {
    const char* text = R"json({
      "version": 1,
      "definitions": [
        {"name": "fm", "kind": "free_monoid", "rank": 1},
        {"name": "fm", "kind": "free_monoid", "rank": 2}
      ],
      "target": "fm"
    })json";
    CHECK_THROWS_AS(parse_spec(text), InputError);
  }
  SUBCASE("missing target") {
    const char* text = R"json({
      "version": 1,
      "definitions": [{"name": "fm", "kind": "free_monoid", "rank": 1}],
      "target": "zz"
    })json";
    CHECK_THROWS_AS(parse_spec(text), InputError);
  }
  SUBCASE("hypothesis violations surface from constructions") {
    const char* text = R"json({
      "version": 1,
      "definitions": [
        {"name": "fm", "kind": "free_monoid", "letters": ["a"], "monoid": true},
        {"name": "null2", "kind": "finite_semigroup", "elements": ["0", "n"],
         "table": [["0","0","0"], ["0","n","0"], ["n","0","0"], ["n","n","0"]]},
        {"name": "dp", "kind": "direct_product_finite", "base": "fm",
         "factor": "null2"}
      ],
      "target": "dp"
    })json";
    CHECK_THROWS_AS(parse_spec(text), HypothesisViolation);
  }
}

TEST_CASE("machine JSON export re-parses to the same language") {
  SpecDocument doc = parse_spec(kFreeMonoid);
  const WordProblemObject& fm = doc.word_problem("fm");
  nlohmann::json j = machine_to_json(fm.recognizer->pda());
  j["name"] = "m";
  nlohmann::json wrapper{{"version", 1},
                         {"definitions", nlohmann::json::array({j})},
                         {"target", "m"}};
  SpecDocument doc2 = parse_spec(wrapper.dump());
  const Npda& back = doc2.machines.at("m");
  const Npda& orig = fm.recognizer->pda();
  CHECK(back.size() == orig.size());
  CHECK(back.stackNames.size() == orig.stackNames.size());
  CHECK(machine_to_json(back) == machine_to_json(orig));  // identity round trip
  for (const Word& w : enumerate_words({"a", "b", kSeparator}, 5))
    CHECK(pda::accepts(back, w) == fm.recognizer->member(w));
}

TEST_CASE("grammar export of the bicyclic word problem re-parses") {
  const char* text = R"json({
    "version": 1,
    "definitions": [
      {"name": "one", "kind": "finite_semigroup", "elements": ["1"],
       "identity": "1", "table": [["1","1","1"]]},
      {"name": "onewp", "kind": "finite_word_problem", "semigroup": "one",
       "generators": [], "monoid": true},
      {"name": "bic", "kind": "bruck_reilly", "base": "onewp"}
    ],
    "target": "bic"
  })json";
  SpecDocument doc = parse_spec(text);
  const WordProblemObject& bic = doc.word_problem("bic");
  Cfg g = bic.recognizer->cfg();
  Cfg back = parse_grammar_text(export_grammar_text(g));
  CykMatcher m(back);
  for (const Word& w : enumerate_words({"b", "c", kSeparator}, 5))
    CHECK(m.member(w) == bic.recognizer->member(w));
}

TEST_CASE("dot export names every state once") {
  SpecDocument doc = parse_spec(kFreeMonoid);
  const Npda& p = doc.word_problem("fm").recognizer->pda();
  std::string dot = export_dot(p);
  size_t nodes = 0;
  for (size_t at = dot.find("[label="); at != std::string::npos;
       at = dot.find("[label=", at + 1))
    ++nodes;
  CHECK(nodes >= p.size());  // one node line per state plus edge labels
  CHECK(dot.find("digraph") == 0);
}

TEST_CASE("document-built constructions answer queries") {
  const char* text = R"json({
    "version": 1,
    "definitions": [
      {"name": "one", "kind": "finite_semigroup", "elements": ["1"],
       "identity": "1", "table": [["1","1","1"]]},
      {"name": "onewp", "kind": "finite_word_problem", "semigroup": "one",
       "generators": [], "monoid": true},
      {"name": "bic", "kind": "bruck_reilly", "base": "onewp"}
    ],
    "target": "bic"
  })json";
  SpecDocument doc = parse_spec(text);
  const WordProblemObject& bic = doc.word_problem("bic");
  CHECK(bic.accepts_pair({"b", "c"}, {}));
  CHECK(cross_check(bic, 3, 3).clean());
}
