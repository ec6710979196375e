#ifndef SGWP_EXPORT_HPP
#define SGWP_EXPORT_HPP

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sgwp/cfg.hpp"
#include "sgwp/core.hpp"
#include "sgwp/nfa.hpp"
#include "sgwp/pda.hpp"

#include "json.hpp"

namespace sgwp {

// Grammar text: one production per line, "LHS ::= sym sym ...", tokens
// space-separated; a token is a nonterminal iff it occurs as some LHS.
// The first LHS is the start symbol.
inline std::string export_grammar_text(const Cfg& g) {
  std::ostringstream os;
  // start symbol first
  std::vector<int> order{g.start};
  for (int i = 0; i < static_cast<int>(g.nonterminalNames.size()); ++i)
    if (i != g.start) order.push_back(i);
  for (int nt : order)
    for (const Cfg::Body& b : g.productions[static_cast<size_t>(nt)]) {
      os << g.nonterminalNames[static_cast<size_t>(nt)] << " ::=";
      for (const Cfg::Symbol& s : b)
        os << " "
           << (s.terminal ? g.terminals.name(s.id)
                          : g.nonterminalNames[static_cast<size_t>(s.id)]);
      os << "\n";
    }
  return os.str();
}

inline Cfg parse_grammar_text(const std::string& text) {
  struct Line {
    std::string lhs;
    std::vector<std::string> body;
  };
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::istringstream ls(raw);
    std::string lhs, sep;
    if (!(ls >> lhs)) continue;
    if (!(ls >> sep) || sep != "::=")
      throw InputError("grammar line missing '::=': " + raw);
    Line l;
    l.lhs = lhs;
    std::string tok;
    while (ls >> tok) l.body.push_back(tok);
    lines.push_back(std::move(l));
  }
  if (lines.empty()) throw InputError("empty grammar text");
  Cfg g;
  std::map<std::string, int> ntIndex;
  for (const Line& l : lines)
    if (!ntIndex.count(l.lhs)) ntIndex[l.lhs] = g.add_nonterminal(l.lhs);
  std::vector<Letter> terminals;
  for (const Line& l : lines)
    for (const std::string& tok : l.body)
      if (!ntIndex.count(tok) &&
          std::find(terminals.begin(), terminals.end(), tok) == terminals.end())
        terminals.push_back(tok);
  g.terminals = Alphabet(terminals);
  g.start = ntIndex.at(lines.front().lhs);
  for (const Line& l : lines) {
    Cfg::Body body;
    for (const std::string& tok : l.body) {
      auto it = ntIndex.find(tok);
      if (it != ntIndex.end())
        body.push_back(Cfg::nt(it->second));
      else
        body.push_back(g.t(tok));
    }
    g.add_production(ntIndex.at(l.lhs), std::move(body));
  }
  return g;
}

// Machine text: the same JSON shape the spec-document parser reads, so an
// exported machine can be dropped back into a document.
inline nlohmann::json machine_to_json(const Npda& p) {
  nlohmann::json j;
  j["kind"] = "npda";
  j["states"] = p.stateNames;
  j["alphabet"] = p.input.names();
  j["stack"] = p.stackNames;
  j["bottom"] = p.stackNames[static_cast<size_t>(p.bottom)];
  j["initial"] = p.stateNames[static_cast<size_t>(p.initial)];
  std::vector<std::string> finals;
  for (int f : p.finals) finals.push_back(p.stateNames[static_cast<size_t>(f)]);
  j["finals"] = finals;
  switch (p.mode) {
    case Npda::AcceptMode::finalState: j["mode"] = "finalState"; break;
    case Npda::AcceptMode::emptyStack: j["mode"] = "emptyStack"; break;
    case Npda::AcceptMode::finalStateAndBareBottom:
      j["mode"] = "finalStateAndBareBottom";
      break;
  }
  j["deterministic"] = p.deterministicFlag;
  nlohmann::json ts = nlohmann::json::array();
  for (size_t s = 0; s < p.size(); ++s)
    for (const auto& [k, moves] : p.delta[s])
      for (const Npda::Move& m : moves) {
        nlohmann::json t;
        t["from"] = p.stateNames[s];
        if (k.first < 0)
          t["input"] = nullptr;
        else
          t["input"] = p.input.name(k.first);
        t["top"] = p.stackNames[static_cast<size_t>(k.second)];
        t["to"] = p.stateNames[static_cast<size_t>(m.to)];
        std::vector<std::string> push;
        for (int sym : m.push) push.push_back(p.stackNames[static_cast<size_t>(sym)]);
        t["push"] = push;
        ts.push_back(std::move(t));
      }
  j["transitions"] = std::move(ts);
  return j;
}

inline std::string export_machine_text(const Npda& p) {
  return machine_to_json(p).dump(2) + "\n";
}

// dot-compatible labelled graph text, one node per state.
inline std::string export_dot(const Npda& p) {
  std::ostringstream os;
  os << "digraph pda {\n  rankdir=LR;\n";
  for (size_t s = 0; s < p.size(); ++s) {
    os << "  q" << s << " [label=\"" << p.stateNames[s] << "\""
       << (p.finals.count(static_cast<int>(s)) ? ", shape=doublecircle" : "")
       << "];\n";
  }
  os << "  start [shape=point];\n  start -> q" << p.initial << ";\n";
  for (size_t s = 0; s < p.size(); ++s)
    for (const auto& [k, moves] : p.delta[s])
      for (const Npda::Move& m : moves) {
        os << "  q" << s << " -> q" << m.to << " [label=\""
           << (k.first < 0 ? std::string("eps") : p.input.name(k.first)) << ", "
           << p.stackNames[static_cast<size_t>(k.second)] << "/";
        if (m.push.empty()) os << "eps";
        for (size_t i = 0; i < m.push.size(); ++i)
          os << (i ? " " : "") << p.stackNames[static_cast<size_t>(m.push[i])];
        os << "\"];\n";
      }
  os << "}\n";
  return os.str();
}

inline std::string export_dot(const Nfa& n) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n";
  for (size_t s = 0; s < n.size(); ++s)
    os << "  q" << s << " [label=\"" << n.stateNames[s] << "\""
       << (n.finals.count(static_cast<int>(s)) ? ", shape=doublecircle" : "")
       << "];\n";
  os << "  start [shape=point];\n";
  for (int s : n.initial) os << "  start -> q" << s << ";\n";
  for (size_t s = 0; s < n.size(); ++s) {
    for (const auto& [a, tos] : n.transitions[s])
      for (int t : tos)
        os << "  q" << s << " -> q" << t << " [label=\"" << n.alphabet.name(a)
           << "\"];\n";
    for (int t : n.epsilon[s])
      os << "  q" << s << " -> q" << t << " [label=\"eps\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace sgwp

#endif  // SGWP_EXPORT_HPP
