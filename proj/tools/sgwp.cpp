// Command-line front end: builds declarative spec documents, runs word
// problem queries, cross-checks recognizers against their oracles, and
// exports machines and grammars.
//
// Exit codes: 0 accept/success, 1 reject/mismatch, 2 input error,
// 3 hypothesis violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sgwp/export.hpp"
#include "sgwp/oracles.hpp"
#include "sgwp/sgwp.hpp"
#include "sgwp/spec_doc.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sgwp::InputError("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(int argc, char** argv) {
  CLI::App app{"recognizers for semigroup and monoid word problems"};
  app.require_subcommand(1);

  std::string specPath, leftText, rightText, what = "pda";
  size_t maxLeft = 0, maxRight = 0;
  unsigned jobs = 1;
  uint64_t seed = 1;

  CLI::App* build = app.add_subcommand("build", "parse and build a spec document");
  build->add_option("spec", specPath, "spec document path")->required();

  CLI::App* query = app.add_subcommand("query", "decide u = v in the target");
  query->add_option("spec", specPath)->required();
  query->add_option("--left", leftText, "word u, letters space-separated")
      ->required();
  query->add_option("--right", rightText, "word v, letters space-separated")
      ->required();

  CLI::App* cross =
      app.add_subcommand("crosscheck", "recognizer vs oracle, exhaustively");
  cross->add_option("spec", specPath)->required();
  cross->add_option("--max-left", maxLeft)->required();
  cross->add_option("--max-right", maxRight)->required();
  cross->add_option("--jobs", jobs, "worker threads");
  cross->add_option("--seed", seed, "seed accepted for interface stability");

  CLI::App* exp = app.add_subcommand("export", "export the target artifact");
  exp->add_option("spec", specPath)->required();
  exp->add_option("--what", what, "pda | cfg | dot")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sgwp::SpecDocument doc = sgwp::parse_spec(read_file(specPath));

  if (build->parsed()) {
    std::cout << "built " << doc.definitionOrder.size()
              << " definitions; target: " << doc.target << "\n";
    return 0;
  }

  if (query->parsed()) {
    const sgwp::WordProblemObject& w = doc.word_problem(doc.target);
    sgwp::Word u = sgwp::parse_word(leftText);
    sgwp::Word v = sgwp::parse_word(rightText);
    w.check_sides(u, v);
    bool verdict = w.has_recognizer() ? w.accepts_pair(u, v) : w.oracle(u, v);
    std::cout << (verdict ? "accept" : "reject") << "\n";
    return verdict ? 0 : 1;
  }

  if (cross->parsed()) {
    const sgwp::WordProblemObject& w = doc.word_problem(doc.target);
    sgwp::CrossCheckReport rep = sgwp::cross_check(w, maxLeft, maxRight, jobs);
    std::cout << rep.to_string();
    return rep.clean() ? 0 : 1;
  }

  if (exp->parsed()) {
    // conversions applied on demand; exit 2 when no representation exists
    auto machineOf = [&]() -> sgwp::Npda {
      if (doc.machines.count(doc.target)) return doc.machines.at(doc.target);
      if (doc.languages.count(doc.target))
        return doc.languages.at(doc.target).pda();
      if (doc.wordProblems.count(doc.target)) {
        const auto& w = doc.wordProblems.at(doc.target);
        w.require_recognizer("export");
        return w.recognizer->pda();
      }
      throw sgwp::InputError("target has no machine representation");
    };
    if (what == "pda") {
      std::cout << sgwp::export_machine_text(machineOf());
    } else if (what == "cfg") {
      if (doc.grammars.count(doc.target)) {
        std::cout << sgwp::export_grammar_text(doc.grammars.at(doc.target));
      } else if (doc.languages.count(doc.target)) {
        std::cout << sgwp::export_grammar_text(doc.languages.at(doc.target).cfg());
      } else if (doc.wordProblems.count(doc.target)) {
        const auto& w = doc.wordProblems.at(doc.target);
        w.require_recognizer("export");
        std::cout << sgwp::export_grammar_text(w.recognizer->cfg());
      } else {
        throw sgwp::InputError("target has no grammar representation");
      }
    } else if (what == "dot") {
      if (doc.automata.count(doc.target))
        std::cout << sgwp::export_dot(doc.automata.at(doc.target));
      else
        std::cout << sgwp::export_dot(machineOf());
    } else {
      throw sgwp::InputError("unknown export format: " + what);
    }
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sgwp::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const sgwp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
