#ifndef SGWP_SPEC_DOC_HPP
#define SGWP_SPEC_DOC_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sgwp/bruck_reilly.hpp"
#include "sgwp/builders.hpp"
#include "sgwp/constructions.hpp"
#include "sgwp/core.hpp"
#include "sgwp/export.hpp"
#include "sgwp/free_products.hpp"
#include "sgwp/word_problem.hpp"

#include "json.hpp"

namespace sgwp {

// A declarative build document: named definitions of automata, grammars,
// rewriting systems, finite semigroups, base builders and constructions,
// each referencing names defined before it, plus a designated target.
// Definitions are processed in order, which keeps the reference graph
// acyclic by construction; every invariant is checked eagerly when its
// object is built.
struct SpecDocument {
  std::map<std::string, Nfa> automata;
  std::map<std::string, Cfg> grammars;
  std::map<std::string, Npda> machines;
  std::map<std::string, FiniteSemigroup> semigroups;
  std::map<std::string, MonadicRewritingSystem> rewritingSystems;
  std::map<std::string, WordProblemObject> wordProblems;
  std::map<std::string, LanguageRep> languages;
  std::vector<std::string> definitionOrder;
  std::string target;

  bool has(const std::string& n) const {
    return automata.count(n) || grammars.count(n) || machines.count(n) ||
           semigroups.count(n) || rewritingSystems.count(n) ||
           wordProblems.count(n) || languages.count(n);
  }

  const WordProblemObject& word_problem(const std::string& n) const {
    auto it = wordProblems.find(n);
    if (it == wordProblems.end())
      throw InputError("'" + n + "' is not a word-problem object");
    return it->second;
  }
  const FiniteSemigroup& semigroup(const std::string& n) const {
    auto it = semigroups.find(n);
    if (it == semigroups.end())
      throw InputError("'" + n + "' is not a finite semigroup");
    return it->second;
  }
};

namespace spec_doc_detail {

using nlohmann::json;

inline Word to_word(const json& j, const std::string& where) {
  if (!j.is_array())
    throw InputError(where + ": words are arrays of letter names");
  Word w;
  for (const auto& e : j) w.push_back(e.get<std::string>());
  return w;
}

inline std::vector<std::string> to_strings(const json& j,
                                           const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

template <typename T>
T field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(where + ": bad value for field '" + key + "'");
  }
}

inline Nfa parse_nfa(const json& j, const std::string& where) {
  Nfa n;
  n.alphabet = Alphabet(to_strings(j.at("alphabet"), where));
  std::map<std::string, int> idx;
  for (const std::string& s : to_strings(j.at("states"), where))
    idx[s] = n.add_state(s);
  auto st = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw InputError(where + ": unknown state " + s);
    return it->second;
  };
  for (const std::string& s : to_strings(j.at("initial"), where))
    n.initial.insert(st(s));
  for (const std::string& s : to_strings(j.at("finals"), where))
    n.finals.insert(st(s));
  if (j.contains("transitions"))
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3)
        throw InputError(where + ": transitions are [from, letter, to]");
      n.add_transition(st(t[0].get<std::string>()), t[1].get<std::string>(),
                       st(t[2].get<std::string>()));
    }
  if (j.contains("epsilon"))
    for (const auto& t : j.at("epsilon"))
      n.add_epsilon(st(t[0].get<std::string>()), st(t[1].get<std::string>()));
  return n;
}

inline Cfg parse_cfg(const json& j, const std::string& where) {
  Cfg g;
  std::map<std::string, int> nt;
  for (const std::string& s : to_strings(j.at("nonterminals"), where))
    nt[s] = g.add_nonterminal(s);
  g.terminals = Alphabet(to_strings(j.at("terminals"), where));
  std::string start = field<std::string>(j, "start", where);
  if (!nt.count(start)) throw InputError(where + ": unknown start " + start);
  g.start = nt.at(start);
  for (const auto& p : j.at("productions")) {
    if (!p.is_array() || p.size() != 2)
      throw InputError(where + ": productions are [lhs, [symbols...]]");
    std::string lhs = p[0].get<std::string>();
    if (!nt.count(lhs)) throw InputError(where + ": unknown nonterminal " + lhs);
    Cfg::Body body;
    for (const auto& sym : p[1]) {
      std::string s = sym.get<std::string>();
      if (nt.count(s))
        body.push_back(Cfg::nt(nt.at(s)));
      else if (g.terminals.contains(s))
        body.push_back(g.t(s));
      else
        throw InputError(where + ": undeclared symbol " + s);
    }
    g.add_production(nt.at(lhs), std::move(body));
  }
  return g;
}

inline Npda parse_npda(const json& j, const std::string& where) {
  Npda p;
  p.input = Alphabet(to_strings(j.at("alphabet"), where));
  std::map<std::string, int> idx;
  for (const std::string& s : to_strings(j.at("states"), where))
    idx[s] = p.add_state(s);
  auto st = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw InputError(where + ": unknown state " + s);
    return it->second;
  };
  for (const std::string& s : to_strings(j.at("stack"), where))
    p.add_stack_symbol(s);
  p.bottom = p.stack_symbol(field<std::string>(j, "bottom", where));
  p.initial = st(field<std::string>(j, "initial", where));
  for (const std::string& s : to_strings(j.at("finals"), where))
    p.finals.insert(st(s));
  std::string mode = j.contains("mode")
                         ? field<std::string>(j, "mode", where)
                         : "finalStateAndBareBottom";
  if (mode == "finalState")
    p.mode = Npda::AcceptMode::finalState;
  else if (mode == "emptyStack")
    p.mode = Npda::AcceptMode::emptyStack;
  else if (mode == "finalStateAndBareBottom")
    p.mode = Npda::AcceptMode::finalStateAndBareBottom;
  else
    throw InputError(where + ": unknown acceptance mode " + mode);
  for (const auto& t : j.at("transitions")) {
    std::optional<Letter> in;
    if (t.contains("input") && !t.at("input").is_null())
      in = t.at("input").get<std::string>();
    std::vector<std::string> push;
    for (const auto& s : t.at("push")) push.push_back(s.get<std::string>());
    p.add_move(st(t.at("from").get<std::string>()), in,
               t.at("top").get<std::string>(),
               st(t.at("to").get<std::string>()), push);
  }
  p.deterministicFlag = pda::is_deterministic(p);
  return p;
}

inline MonadicRewritingSystem parse_rewriting(const SpecDocument& doc,
                                              const json& j,
                                              const std::string& where) {
  MonadicRewritingSystem rs;
  rs.alphabet = to_strings(j.at("alphabet"), where);
  rs.confluentAsserted = j.value("confluent", false);
  for (const auto& r : j.at("rules")) {
    Letter rhs;
    if (r.contains("rhs") && !r.at("rhs").is_null() &&
        !(r.at("rhs").is_array() && r.at("rhs").empty()))
      rhs = r.at("rhs").get<std::string>();
    LhsDescriptor lhs;
    if (r.contains("lhs_words")) {
      std::set<Word> words;
      for (const auto& w : r.at("lhs_words")) words.insert(to_word(w, where));
      lhs = LhsDescriptor(std::move(words));
    } else if (r.contains("lhs_nfa")) {
      std::string ref = r.at("lhs_nfa").get<std::string>();
      auto it = doc.automata.find(ref);
      if (it == doc.automata.end())
        throw InputError(where + ": lhs automaton '" + ref + "' not defined");
      lhs = LhsDescriptor(it->second);
    } else if (r.contains("lhs_cfg")) {
      std::string ref = r.at("lhs_cfg").get<std::string>();
      auto it = doc.grammars.find(ref);
      if (it == doc.grammars.end())
        throw InputError(where + ": lhs grammar '" + ref + "' not defined");
      lhs = LhsDescriptor(it->second);
    } else {
      throw InputError(where + ": rule needs lhs_words, lhs_nfa or lhs_cfg");
    }
    if (!rs.lhsLanguages.emplace(rhs, std::move(lhs)).second)
      throw InputError(where + ": duplicate right-hand side '" + rhs + "'");
  }
  rs.validate();
  return rs;
}

inline FiniteSemigroup parse_semigroup(const json& j, const std::string& where) {
  FiniteSemigroup s;
  s.elements = to_strings(j.at("elements"), where);
  if (j.contains("identity") && !j.at("identity").is_null())
    s.identity = j.at("identity").get<std::string>();
  for (const auto& t : j.at("table")) {
    if (!t.is_array() || t.size() != 3)
      throw InputError(where + ": table entries are [a, b, ab]");
    s.table[{t[0].get<std::string>(), t[1].get<std::string>()}] =
        t[2].get<std::string>();
  }
  s.validate();
  return s;
}

}  // namespace spec_doc_detail

inline SpecDocument parse_spec(const std::string& text) {
  using nlohmann::json;
  using namespace spec_doc_detail;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("spec document is not valid JSON: ") + e.what());
  }
  if (!j.contains("version") || j.at("version").get<int>() != 1)
    throw InputError("spec document needs \"version\": 1");

  SpecDocument doc;
  if (!j.contains("definitions") || !j.at("definitions").is_array())
    throw InputError("spec document needs a definitions array");
  for (const auto& def : j.at("definitions")) {
    std::string name = field<std::string>(def, "name", "definition");
    std::string where = "definition '" + name + "'";
    if (doc.has(name)) throw InputError(where + ": duplicate name");
    std::string kind = field<std::string>(def, "kind", where);
    doc.definitionOrder.push_back(name);

    if (kind == "nfa") {
      doc.automata.emplace(name, parse_nfa(def, where));
    } else if (kind == "cfg") {
      doc.grammars.emplace(name, parse_cfg(def, where));
    } else if (kind == "npda") {
      doc.machines.emplace(name, parse_npda(def, where));
    } else if (kind == "finite_semigroup") {
      doc.semigroups.emplace(name, parse_semigroup(def, where));
    } else if (kind == "rewriting_system") {
      doc.rewritingSystems.emplace(name, parse_rewriting(doc, def, where));
    } else if (kind == "free_monoid" || kind == "free_semigroup") {
      std::vector<Letter> letters;
      if (def.contains("letters"))
        letters = to_strings(def.at("letters"), where);
      else
        letters = builders::default_letters(field<size_t>(def, "rank", where));
      bool monoid = def.value("monoid", kind == "free_monoid");
      doc.wordProblems.emplace(
          name, builders::free_monoid_word_problem(letters, monoid));
    } else if (kind == "free_group") {
      if (def.contains("generators")) {
        doc.wordProblems.emplace(
            name, builders::free_group_word_problem(
                      to_strings(def.at("generators"), where),
                      to_strings(def.at("inverses"), where)));
      } else {
        doc.wordProblems.emplace(name, builders::free_group_word_problem(
                                           field<size_t>(def, "rank", where)));
      }
    } else if (kind == "finite_word_problem") {
      const FiniteSemigroup& s =
          doc.semigroup(field<std::string>(def, "semigroup", where));
      std::set<Letter> gens;
      for (const auto& g : to_strings(def.at("generators"), where))
        gens.insert(g);
      doc.wordProblems.emplace(
          name, builders::finite_word_problem(s, gens, def.value("monoid", false)));
    } else if (kind == "rewriting_word_problem") {
      std::string ref = field<std::string>(def, "system", where);
      auto it = doc.rewritingSystems.find(ref);
      if (it == doc.rewritingSystems.end())
        throw InputError(where + ": rewriting system '" + ref + "' not defined");
      doc.wordProblems.emplace(name, builders::rewriting_word_problem(it->second));
    } else if (kind == "change_generators") {
      const WordProblemObject& base =
          doc.word_problem(field<std::string>(def, "base", where));
      std::map<Letter, Word> images;
      for (const auto& [l, w] : def.at("images").items())
        images[l] = to_word(w, where);
      doc.wordProblems.emplace(name, builders::change_generators(base, images));
    } else if (kind == "direct_product_finite") {
      doc.wordProblems.emplace(
          name, constructions::direct_product_finite(
                    doc.word_problem(field<std::string>(def, "base", where)),
                    doc.semigroup(field<std::string>(def, "factor", where))));
    } else if (kind == "direct_factor") {
      doc.wordProblems.emplace(
          name, constructions::direct_factor(
                    doc.word_problem(field<std::string>(def, "base", where)),
                    doc.semigroup(field<std::string>(def, "factor", where)),
                    to_strings(def.at("generators"), where)));
    } else if (kind == "free_product_semigroups" ||
               kind == "free_product_monoids") {
      const WordProblemObject& left =
          doc.word_problem(field<std::string>(def, "left", where));
      const WordProblemObject& right =
          doc.word_problem(field<std::string>(def, "right", where));
      doc.wordProblems.emplace(
          name, kind == "free_product_semigroups"
                    ? constructions::free_product_semigroups(left, right)
                    : constructions::free_product_monoids(left, right));
    } else if (kind == "strong_semilattice") {
      SemilatticeSpec spec;
      spec.order.elements = to_strings(def.at("elements"), where);
      for (const auto& t : def.at("meet"))
        spec.order.meetTable[{t[0].get<std::string>(),
                              t[1].get<std::string>()}] =
            t[2].get<std::string>();
      for (const auto& [vertex, ref] : def.at("components").items())
        spec.components.emplace(vertex,
                                doc.word_problem(ref.get<std::string>()));
      for (const auto& h : def.at("homs")) {
        std::map<Letter, Word> images;
        for (const auto& [l, w] : h.at("images").items())
          images[l] = to_word(w, where);
        spec.homs[{field<std::string>(h, "from", where),
                   field<std::string>(h, "to", where)}] = std::move(images);
      }
      doc.wordProblems.emplace(name, constructions::strong_semilattice(spec));
    } else if (kind == "rees_matrix") {
      ReesMatrixSpec spec;
      spec.base = doc.word_problem(field<std::string>(def, "base", where));
      spec.rows = to_strings(def.at("rows"), where);
      spec.columns = to_strings(def.at("columns"), where);
      for (const auto& s : def.at("sandwich"))
        spec.sandwich[{field<std::string>(s, "column", where),
                       field<std::string>(s, "row", where)}] =
            to_word(s.at("word"), where);
      for (const auto& g : def.at("generators"))
        spec.generators.push_back({field<std::string>(g, "row", where),
                                   field<std::string>(g, "middle", where),
                                   field<std::string>(g, "column", where)});
      doc.wordProblems.emplace(name, constructions::rees_matrix(spec));
    } else if (kind == "bruck_reilly") {
      BruckReillySpec spec;
      spec.base = doc.word_problem(field<std::string>(def, "base", where));
      if (def.contains("phi"))
        for (const auto& [l, w] : def.at("phi").items())
          spec.phi[l] = to_word(w, where);
      else
        for (const Letter& l : spec.base.alphabet) spec.phi[l] = {l};
      spec.imageBound = def.value("image_bound", size_t{16});
      doc.wordProblems.emplace(name, constructions::bruck_reilly(spec));
    } else if (kind == "word_hyperbolic_structure") {
      doc.languages.emplace(
          name, constructions::word_hyperbolic_structure(doc.word_problem(
                    field<std::string>(def, "base", where))));
    } else {
      throw InputError(where + ": unknown kind '" + kind + "'");
    }
  }

  doc.target = j.value("target", doc.definitionOrder.empty()
                                     ? std::string{}
                                     : doc.definitionOrder.back());
  if (!doc.has(doc.target))
    throw InputError("target '" + doc.target + "' is not defined");
  return doc;
}

}  // namespace sgwp

#endif  // SGWP_SPEC_DOC_HPP
