#ifndef SGWP_GSM_HPP
#define SGWP_GSM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgwp/core.hpp"

namespace sgwp {

// Deterministic sequential transducer with per-transition output and
// per-final-state terminal output. The transduction of a word is defined
// iff the run ends in a final state; its value is the concatenation of the
// transition outputs followed by the terminal output of the halting state.
struct Gsm {
  struct Edge {
    int to = -1;
    Word output;
  };

  std::vector<std::string> stateNames;
  Alphabet inputAlphabet;
  Alphabet outputAlphabet;
  std::vector<std::map<int, Edge>> transitions;  // by input letter id
  int initial = 0;
  std::set<int> finals;
  std::map<int, Word> terminalOutput;  // defaults to empty word

  int add_state(std::string name) {
    stateNames.push_back(std::move(name));
    transitions.emplace_back();
    return static_cast<int>(stateNames.size()) - 1;
  }

  void add_transition(int from, const Letter& in, int to, Word out) {
    for (const Letter& l : out) outputAlphabet.add(l);
    Edge e{to, std::move(out)};
    auto [it, fresh] = transitions[static_cast<size_t>(from)].emplace(
        inputAlphabet.id(in), std::move(e));
    if (!fresh)
      throw InputError("gsm is deterministic: duplicate transition on (" +
                       stateNames[static_cast<size_t>(from)] + ", " + in + ")");
  }

  const Edge* edge(int state, int letterId) const {
    const auto& row = transitions[static_cast<size_t>(state)];
    auto it = row.find(letterId);
    return it == row.end() ? nullptr : &it->second;
  }

  // The transduction value, or nullopt when undefined.
  std::optional<Word> apply(const Word& w) const {
    Word out;
    int cur = initial;
    for (const Letter& l : w) {
      if (!inputAlphabet.contains(l)) return std::nullopt;
      const Edge* e = edge(cur, inputAlphabet.id(l));
      if (e == nullptr) return std::nullopt;
      out.insert(out.end(), e->output.begin(), e->output.end());
      cur = e->to;
    }
    if (!finals.count(cur)) return std::nullopt;
    auto it = terminalOutput.find(cur);
    if (it != terminalOutput.end())
      out.insert(out.end(), it->second.begin(), it->second.end());
    return out;
  }
};

namespace gsm {

// The one-state gsm realizing a homomorphism: every state final, empty
// terminal output.
inline Gsm homomorphism(const std::vector<Letter>& domain,
                        const std::map<Letter, Word>& images) {
  Gsm g;
  g.inputAlphabet = Alphabet(domain);
  int q = g.add_state("h");
  g.initial = q;
  g.finals.insert(q);
  for (const Letter& l : domain) {
    auto it = images.find(l);
    if (it == images.end())
      throw InputError("homomorphism image missing for letter " + l);
    g.add_transition(q, l, q, it->second);
  }
  return g;
}

}  // namespace gsm
}  // namespace sgwp

#endif  // SGWP_GSM_HPP
