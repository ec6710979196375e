#ifndef SGWP_PDA_HPP
#define SGWP_PDA_HPP

#include <array>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sgwp/cfg.hpp"
#include "sgwp/core.hpp"
#include "sgwp/gsm.hpp"
#include "sgwp/nfa.hpp"

namespace sgwp {

// Nondeterministic pushdown automaton. A transition pops the stack top and
// pushes a word (written top-first); the initial stack holds only the bottom
// marker. The bottom marker is kept at the bottom for the machine's whole
// run: a transition reading it re-pushes it underneath, and no other
// transition pushes it. acceptMode emptyStack means "bare bottom marker in
// any state" under this convention.
struct Npda {
  enum class AcceptMode { finalState, emptyStack, finalStateAndBareBottom };

  struct Move {
    int to = -1;
    std::vector<int> push;  // top-first
  };

  std::vector<std::string> stateNames;
  Alphabet input;
  std::vector<std::string> stackNames;
  int bottom = 0;
  // per state: (input letter id or -1 for epsilon, stack top) -> moves
  std::vector<std::map<std::pair<int, int>, std::vector<Move>>> delta;
  int initial = 0;
  std::set<int> finals;
  AcceptMode mode = AcceptMode::finalStateAndBareBottom;
  bool deterministicFlag = false;

  int add_state(std::string name) {
    stateNames.push_back(std::move(name));
    delta.emplace_back();
    return static_cast<int>(stateNames.size()) - 1;
  }

  int add_stack_symbol(const std::string& name) {
    for (size_t i = 0; i < stackNames.size(); ++i)
      if (stackNames[i] == name) return static_cast<int>(i);
    stackNames.push_back(name);
    return static_cast<int>(stackNames.size()) - 1;
  }

  int stack_symbol(const std::string& name) const {
    for (size_t i = 0; i < stackNames.size(); ++i)
      if (stackNames[i] == name) return static_cast<int>(i);
    throw InputError("unknown stack symbol: " + name);
  }

  void add_move(int from, int inLetter, int top, int to, std::vector<int> push) {
    delta[static_cast<size_t>(from)][{inLetter, top}].push_back(
        Move{to, std::move(push)});
  }

  void add_move(int from, const std::optional<Letter>& in,
                const std::string& top, int to,
                const std::vector<std::string>& push) {
    std::vector<int> p;
    p.reserve(push.size());
    for (const auto& s : push) p.push_back(add_stack_symbol(s));
    add_move(from, in ? input.id(*in) : -1, add_stack_symbol(top), to,
             std::move(p));
  }

  size_t size() const { return stateNames.size(); }

  bool accepting_config(int state, const std::vector<int>& stack) const {
    bool bare = stack.size() == 1 && stack[0] == bottom;
    switch (mode) {
      case AcceptMode::finalState: return finals.count(state) > 0;
      case AcceptMode::emptyStack: return bare;
      case AcceptMode::finalStateAndBareBottom:
        return bare && finals.count(state) > 0;
    }
    return false;
  }
};

enum class Ternary { False, True, Unknown };

namespace pda {

// Explores configurations (state, position, stack) breadth-first. Sound for
// accepts; a reject is definite only when the exploration completed without
// hitting the stack-height bound or the node cap (epsilon-push cycles make
// the unbounded space infinite).
inline Ternary bounded_search(const Npda& p, const std::vector<int>& wordIds,
                              size_t heightBound, size_t nodeCap = 200000) {
  struct Config {
    int state;
    size_t pos;
    std::vector<int> stack;
  };
  auto key = [](const Config& c) {
    std::string k;
    k.reserve(8 + c.stack.size() * 2);
    k += std::to_string(c.state);
    k += ':';
    k += std::to_string(c.pos);
    k += ':';
    for (int s : c.stack) {
      k += static_cast<char>(s & 0xff);
      k += static_cast<char>((s >> 8) & 0xff);
    }
    return k;
  };
  std::unordered_set<std::string> visited;
  std::deque<Config> todo;
  bool capped = false;
  Config start{p.initial, 0, {p.bottom}};
  visited.insert(key(start));
  todo.push_back(std::move(start));
  size_t n = wordIds.size();
  while (!todo.empty()) {
    Config c = std::move(todo.front());
    todo.pop_front();
    if (c.pos == n && p.accepting_config(c.state, c.stack)) return Ternary::True;
    if (c.stack.empty()) continue;
    int top = c.stack.back();
    auto expand = [&](int in, size_t nextPos) {
      auto it = p.delta[static_cast<size_t>(c.state)].find({in, top});
      if (it == p.delta[static_cast<size_t>(c.state)].end()) return;
      for (const Npda::Move& m : it->second) {
        if (c.stack.size() - 1 + m.push.size() > heightBound) {
          capped = true;
          continue;
        }
        Config nc;
        nc.state = m.to;
        nc.pos = nextPos;
        nc.stack.assign(c.stack.begin(), c.stack.end() - 1);
        for (auto pi = m.push.rbegin(); pi != m.push.rend(); ++pi)
          nc.stack.push_back(*pi);
        std::string k = key(nc);
        if (visited.count(k)) continue;
        if (visited.size() >= nodeCap) {
          capped = true;
          continue;
        }
        visited.insert(std::move(k));
        todo.push_back(std::move(nc));
      }
    };
    expand(-1, c.pos);
    if (c.pos < n) expand(wordIds[c.pos], c.pos + 1);
  }
  return capped ? Ternary::Unknown : Ternary::False;
}

// Structural determinism: at most one successor per (state, input, top) and
// no stack top offering both an epsilon move and a letter move in one state.
inline bool is_deterministic(const Npda& p) {
  for (size_t s = 0; s < p.size(); ++s) {
    std::set<int> epsTops;
    std::set<int> letterTops;
    for (const auto& [k, moves] : p.delta[s]) {
      if (moves.size() > 1) return false;
      (k.first < 0 ? epsTops : letterTops).insert(k.second);
    }
    for (int t : epsTops)
      if (letterTops.count(t)) return false;
  }
  return true;
}

// Conservative test for epsilon-move cycles that can grow the stack; on
// such machines the configuration search keeps expanding until it hits its
// bounds, so membership goes straight to the CYK route.
inline bool has_growing_eps_cycle(const Npda& p) {
  size_t n = p.size();
  std::vector<std::vector<std::pair<int, bool>>> adj(n);  // (to, grows)
  for (size_t s = 0; s < n; ++s)
    for (const auto& [k, moves] : p.delta[s])
      if (k.first < 0)
        for (const Npda::Move& m : moves)
          adj[s].push_back({m.to, m.push.size() >= 2});
  // iterative Tarjan SCC
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onStack(n, false);
  std::vector<int> stack;
  int counter = 0, comps = 0;
  for (size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<int, size_t>> call{{static_cast<int>(root), 0}};
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = counter++;
        stack.push_back(v);
        onStack[static_cast<size_t>(v)] = true;
      }
      if (ei < adj[static_cast<size_t>(v)].size()) {
        int w = adj[static_cast<size_t>(v)][ei].first;
        ++ei;
        if (index[static_cast<size_t>(w)] == -1) {
          call.push_back({w, 0});
        } else if (onStack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(v)] =
              std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
      } else {
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            onStack[static_cast<size_t>(w)] = false;
            comp[static_cast<size_t>(w)] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        int child = v;
        call.pop_back();
        if (!call.empty())
          low[static_cast<size_t>(call.back().first)] =
              std::min(low[static_cast<size_t>(call.back().first)],
                       low[static_cast<size_t>(child)]);
      }
    }
  }
  for (size_t s = 0; s < n; ++s)
    for (const auto& [to, grows] : adj[s])
      if (grows && comp[s] == comp[static_cast<size_t>(to)]) return true;
  return false;
}

inline bool bottom_disciplined(const Npda& p) {
  for (size_t s = 0; s < p.size(); ++s)
    for (const auto& [k, moves] : p.delta[s])
      for (const Npda::Move& m : moves) {
        bool topIsBottom = k.second == p.bottom;
        if (topIsBottom) {
          if (m.push.empty() || m.push.back() != p.bottom) return false;
          for (size_t i = 0; i + 1 < m.push.size(); ++i)
            if (m.push[i] == p.bottom) return false;
        } else {
          for (int sym : m.push)
            if (sym == p.bottom) return false;
        }
      }
  return true;
}

inline bool is_normal(const Npda& p) {
  if (p.mode != Npda::AcceptMode::finalStateAndBareBottom) return false;
  if (!bottom_disciplined(p)) return false;
  for (size_t s = 0; s < p.size(); ++s)
    for (const auto& [k, moves] : p.delta[s])
      for (const Npda::Move& m : moves)
        if (m.push.size() > 2) return false;
  return true;
}

// Same language, normal shape: bottom discipline, every push of length at
// most two, acceptance by final state with bare bottom marker. Machines
// already in normal shape pass through unchanged.
inline Npda normalize(const Npda& p) {
  if (is_normal(p)) return p;
  Npda q;
  q.input = p.input;
  q.mode = Npda::AcceptMode::finalStateAndBareBottom;

  bool disciplined = bottom_disciplined(p);
  // State/symbol carry-over.
  for (const auto& n : p.stateNames) q.add_state(n);
  for (const auto& n : p.stackNames) q.add_stack_symbol(n);

  int bot;
  if (disciplined) {
    bot = p.bottom;
    q.bottom = bot;
    q.initial = p.initial;
  } else {
    bot = q.add_stack_symbol("_bot'");
    q.bottom = bot;
    q.initial = q.add_state("_init'");
    q.add_move(q.initial, -1, bot, p.initial, {p.bottom, bot});
  }

  int chain = 0;
  auto emit = [&](int from, int in, int top, int to, std::vector<int> push) {
    // Split pushes longer than two into a chain that installs the word from
    // the bottom up, two symbols per step.
    if (push.size() <= 2) {
      q.add_move(from, in, top, to, std::move(push));
      return;
    }
    size_t k = push.size();
    int cur = q.add_state("_push" + std::to_string(chain++));
    q.add_move(from, in, top, cur, {push[k - 2], push[k - 1]});
    for (size_t j = k - 2; j >= 1; --j) {
      int nxt = (j == 1) ? to : q.add_state("_push" + std::to_string(chain++));
      q.add_move(cur, -1, push[j], nxt, {push[j - 1], push[j]});
      cur = nxt;
    }
  };

  for (size_t s = 0; s < p.size(); ++s)
    for (const auto& [k, moves] : p.delta[s])
      for (const Npda::Move& m : moves)
        emit(static_cast<int>(s), k.first, k.second, m.to, m.push);

  // Acceptance conversion.
  int acc = q.add_state("_acc");
  q.finals = {acc};
  switch (p.mode) {
    case Npda::AcceptMode::finalStateAndBareBottom: {
      if (disciplined) {
        for (int f : p.finals) q.add_move(f, -1, bot, acc, {bot});
      } else {
        // bare bottom of the original machine: exactly [p.bottom] above bot'
        int chk = q.add_state("_chk");
        for (int f : p.finals) q.add_move(f, -1, p.bottom, chk, {});
        q.add_move(chk, -1, bot, acc, {bot});
      }
      break;
    }
    case Npda::AcceptMode::emptyStack: {
      if (disciplined) {
        for (size_t s = 0; s < p.size(); ++s)
          q.add_move(static_cast<int>(s), -1, bot, acc, {bot});
      } else {
        int chk = q.add_state("_chk");
        for (size_t s = 0; s < p.size(); ++s) {
          q.add_move(static_cast<int>(s), -1, p.bottom, chk, {});
          // the original machine may have popped its own bottom entirely
          q.add_move(static_cast<int>(s), -1, bot, acc, {bot});
        }
        q.add_move(chk, -1, bot, acc, {bot});
      }
      break;
    }
    case Npda::AcceptMode::finalState: {
      int drain = q.add_state("_drain");
      for (int f : p.finals) {
        for (size_t sym = 0; sym < q.stackNames.size(); ++sym) {
          if (static_cast<int>(sym) == bot) {
            q.add_move(f, -1, bot, acc, {bot});
          } else {
            q.add_move(f, -1, static_cast<int>(sym), drain, {});
          }
        }
      }
      for (size_t sym = 0; sym < q.stackNames.size(); ++sym) {
        if (static_cast<int>(sym) == bot)
          q.add_move(drain, -1, bot, acc, {bot});
        else
          q.add_move(drain, -1, static_cast<int>(sym), drain, {});
      }
      break;
    }
  }
  q.deterministicFlag = is_deterministic(q);
  return q;
}

// pop(q, A) -> { r : the machine can consume input from state q with A on
// top and eventually pop A (never touching below it), ending in state r }.
// Computed by saturation; drives the pruned triple construction.
class PopRelation {
 public:
  explicit PopRelation(const Npda& p) {
    struct Tr {
      int from, top, to;
      std::vector<int> push;
    };
    std::vector<Tr> pop0, pop1, pop2;
    for (size_t s = 0; s < p.size(); ++s)
      for (const auto& [k, moves] : p.delta[s])
        for (const Npda::Move& m : moves) {
          if (k.second == p.bottom) continue;  // bottom never pops
          Tr t{static_cast<int>(s), k.second, m.to, m.push};
          if (m.push.empty())
            pop0.push_back(t);
          else if (m.push.size() == 1)
            pop1.push_back(t);
          else
            pop2.push_back(t);
        }
    // Static dependency indexes.
    std::map<std::pair<int, int>, std::vector<size_t>> await1, await2;
    for (size_t i = 0; i < pop1.size(); ++i)
      await1[{pop1[i].to, pop1[i].push[0]}].push_back(i);
    for (size_t i = 0; i < pop2.size(); ++i)
      await2[{pop2[i].to, pop2[i].push[0]}].push_back(i);
    // Dynamic: (r, C) -> list of (q, A) whose pop-2 left part ended at r.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> awaitC;

    std::deque<std::array<int, 3>> queue;
    auto emit = [&](int qq, int A, int r) {
      if (rel_[{qq, A}].insert(r).second) queue.push_back({qq, A, r});
    };
    for (const Tr& t : pop0) emit(t.from, t.top, t.to);
    while (!queue.empty()) {
      auto [qq, A, r] = queue.front();
      queue.pop_front();
      auto i1 = await1.find({qq, A});
      if (i1 != await1.end())
        for (size_t ti : i1->second) emit(pop1[ti].from, pop1[ti].top, r);
      auto i2 = await2.find({qq, A});
      if (i2 != await2.end())
        for (size_t ti : i2->second) {
          const Tr& t = pop2[ti];
          awaitC[{r, t.push[1]}].push_back({t.from, t.top});
          auto done = rel_.find({r, t.push[1]});
          if (done != rel_.end())
            for (int r2 : done->second) emit(t.from, t.top, r2);
        }
      auto ic = awaitC.find({qq, A});
      if (ic != awaitC.end())
        for (const auto& [q2, A2] : ic->second) emit(q2, A2, r);
    }
  }

  const std::set<int>& targets(int state, int sym) const {
    static const std::set<int> none;
    auto it = rel_.find({state, sym});
    return it == rel_.end() ? none : it->second;
  }

 private:
  std::map<std::pair<int, int>, std::set<int>> rel_;
};

// Triple construction on the normalized machine, restricted to pop-feasible
// and reachable nonterminals.
inline Cfg to_cfg(const Npda& raw) {
  Npda p = normalize(raw);
  PopRelation pop(p);

  Cfg g;
  g.terminals = p.input;
  std::map<std::string, int> index;
  auto ntFor = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    int id = g.add_nonterminal(name);
    index.emplace(name, id);
    return id;
  };
  auto surfaceName = [&](int s) { return "T<" + std::to_string(s) + ">"; };
  auto tripleName = [&](int q1, int A, int q2) {
    // no whitespace: these names must survive the token-based grammar text
    return "[" + std::to_string(q1) + "|" +
           p.stackNames[static_cast<size_t>(A)] + "|" + std::to_string(q2) +
           "]";
  };

  std::set<std::string> built;
  std::deque<std::pair<std::array<int, 3>, bool>> todo;  // {q,A,r} / surface {q,-,-}
  auto needSurface = [&](int s) {
    std::string n = surfaceName(s);
    int id = ntFor(n);
    if (built.insert(n).second) todo.push_back({{s, -1, -1}, true});
    return id;
  };
  auto needTriple = [&](int q1, int A, int q2) {
    std::string n = tripleName(q1, A, q2);
    int id = ntFor(n);
    if (built.insert(n).second) todo.push_back({{q1, A, q2}, false});
    return id;
  };

  g.start = needSurface(p.initial);
  while (!todo.empty()) {
    auto [item, surface] = todo.front();
    todo.pop_front();
    if (surface) {
      int s = item[0];
      int lhs = ntFor(surfaceName(s));
      if (p.finals.count(s)) g.add_production(lhs, {});
      for (const auto& [k, moves] : p.delta[static_cast<size_t>(s)]) {
        if (k.second != p.bottom) continue;
        for (const Npda::Move& m : moves) {
          Cfg::Body head;
          if (k.first >= 0) head.push_back(Cfg::Symbol{true, k.first});
          if (m.push.size() == 1) {  // [bottom]
            Cfg::Body b = head;
            b.push_back(Cfg::nt(needSurface(m.to)));
            g.add_production(lhs, std::move(b));
          } else {  // [A, bottom]
            int A = m.push[0];
            for (int r : pop.targets(m.to, A)) {
              Cfg::Body b = head;
              b.push_back(Cfg::nt(needTriple(m.to, A, r)));
              b.push_back(Cfg::nt(needSurface(r)));
              g.add_production(lhs, std::move(b));
            }
          }
        }
      }
    } else {
      auto [q1, A, q2] = item;
      int lhs = ntFor(tripleName(q1, A, q2));
      for (const auto& [k, moves] : p.delta[static_cast<size_t>(q1)]) {
        if (k.second != A) continue;
        for (const Npda::Move& m : moves) {
          Cfg::Body head;
          if (k.first >= 0) head.push_back(Cfg::Symbol{true, k.first});
          if (m.push.empty()) {
            if (m.to == q2) g.add_production(lhs, head);
          } else if (m.push.size() == 1) {
            if (pop.targets(m.to, m.push[0]).count(q2)) {
              Cfg::Body b = head;
              b.push_back(Cfg::nt(needTriple(m.to, m.push[0], q2)));
              g.add_production(lhs, std::move(b));
            }
          } else {
            for (int r : pop.targets(m.to, m.push[0])) {
              if (!pop.targets(r, m.push[1]).count(q2)) continue;
              Cfg::Body b = head;
              b.push_back(Cfg::nt(needTriple(m.to, m.push[0], r)));
              b.push_back(Cfg::nt(needTriple(r, m.push[1], q2)));
              g.add_production(lhs, std::move(b));
            }
          }
        }
      }
    }
  }
  return g;
}

// Standard top-down predictive machine for a grammar.
inline Npda cfg_to_pda(const Cfg& g) {
  Npda p;
  p.input = g.terminals;
  p.bottom = p.add_stack_symbol("_bot");
  int q0 = p.add_state("start");
  int q = p.add_state("run");
  p.initial = q0;
  p.finals = {q};
  p.mode = Npda::AcceptMode::finalStateAndBareBottom;

  std::vector<int> ntSym(g.nonterminalNames.size());
  for (size_t i = 0; i < g.nonterminalNames.size(); ++i)
    ntSym[i] = p.add_stack_symbol("N<" + g.nonterminalNames[i] + ">");
  std::vector<int> tSym(g.terminals.size());
  for (size_t i = 0; i < g.terminals.size(); ++i)
    tSym[i] = p.add_stack_symbol("t<" + g.terminals.name(static_cast<int>(i)) + ">");

  p.add_move(q0, -1, p.bottom, q, {ntSym[static_cast<size_t>(g.start)], p.bottom});
  for (size_t a = 0; a < g.productions.size(); ++a)
    for (const Cfg::Body& b : g.productions[a]) {
      std::vector<int> push;
      for (const Cfg::Symbol& s : b)
        push.push_back(s.terminal ? tSym[static_cast<size_t>(s.id)]
                                  : ntSym[static_cast<size_t>(s.id)]);
      p.add_move(q, -1, ntSym[a], q, std::move(push));
    }
  for (size_t i = 0; i < g.terminals.size(); ++i)
    p.add_move(q, static_cast<int>(i), tSym[i], q, {});
  p.deterministicFlag = is_deterministic(p);
  return p;
}

// Membership; the bounded configuration search answers fast when it can,
// otherwise the CYK route on the triple construction decides.
inline bool accepts(const Npda& p, const Word& w) {
  std::vector<int> ids = p.input.encode(w);
  if (!has_growing_eps_cycle(p)) {
    Ternary t = bounded_search(p, ids, 2 * (w.size() + 2));
    if (t != Ternary::Unknown) return t == Ternary::True;
  }
  return CykMatcher(to_cfg(p)).member(w);
}

// L(p) restricted to L(r). Every letter of r must be known to p.
inline Npda intersect_regular(const Npda& rawP, const Nfa& r) {
  for (const Letter& l : r.alphabet.names())
    if (!rawP.input.contains(l))
      throw InputError("alphabet mismatch: regular language uses letter " + l +
                       " unknown to the pushdown automaton");
  // Normalizing first makes acceptance a finals check, so the product
  // finals can require the DFA component to accept as well.
  Npda p = normalize(rawP);
  Nfa d = nfa::determinize(r);
  Npda out;
  out.input = p.input;
  out.stackNames = p.stackNames;
  out.bottom = p.bottom;
  out.mode = p.mode;

  std::map<std::pair<int, int>, int> index;
  std::deque<std::pair<int, int>> todo;
  auto state = [&](int ps, int ds) {
    auto it = index.find({ps, ds});
    if (it != index.end()) return it->second;
    int s = out.add_state("(" + p.stateNames[static_cast<size_t>(ps)] + "|" +
                          std::to_string(ds) + ")");
    index.emplace(std::make_pair(ps, ds), s);
    todo.push_back({ps, ds});
    return s;
  };
  int dInit = *d.initial.begin();
  out.initial = state(p.initial, dInit);
  while (!todo.empty()) {
    auto [ps, ds] = todo.front();
    todo.pop_front();
    int from = index.at({ps, ds});
    if (p.finals.count(ps) && d.finals.count(ds)) out.finals.insert(from);
    for (const auto& [k, moves] : p.delta[static_cast<size_t>(ps)]) {
      if (k.first < 0) {
        for (const Npda::Move& m : moves)
          out.add_move(from, -1, k.second, state(m.to, ds), m.push);
      } else {
        const Letter& name = p.input.name(k.first);
        if (!d.alphabet.contains(name)) continue;
        auto it = d.transitions[static_cast<size_t>(ds)].find(d.alphabet.id(name));
        if (it == d.transitions[static_cast<size_t>(ds)].end()) continue;
        int dNext = *it->second.begin();  // deterministic
        for (const Npda::Move& m : moves)
          out.add_move(from, k.first, k.second, state(m.to, dNext), m.push);
      }
    }
  }
  out.deterministicFlag = is_deterministic(out);
  return out;
}

// { w : g(w) defined and g(w) in L(p) }. Realized by running p over each
// transition's output word through chained internal states, and over the
// terminal output before the acceptance check.
inline Npda inverse_gsm(const Npda& rawP, const Gsm& g) {
  for (const Letter& l : g.outputAlphabet.names())
    if (!rawP.input.contains(l))
      throw InputError("alphabet mismatch: gsm emits letter " + l +
                       " unknown to the machine");
  // Acceptance must be gated on the gsm ending in a final state, so the
  // machine's acceptance has to be a finals check: normalize first.
  Npda p = normalize(rawP);
  Npda out;
  out.input = g.inputAlphabet;
  out.stackNames = p.stackNames;
  out.bottom = p.bottom;
  out.mode = p.mode;

  // Core states (gsm state, p state); chain states additionally carry the
  // virtual word still to be fed to p.
  std::map<std::tuple<int, int, const Word*, size_t, int>, int> chainIndex;
  std::map<std::pair<int, int>, int> coreIndex;
  std::deque<std::tuple<int, int, const Word*, size_t, int>> todo;
  // kind: 0 = core, 1 = mid-transduction chain, 2 = terminal chain

  auto coreState = [&](int gs, int ps) {
    auto it = coreIndex.find({gs, ps});
    if (it != coreIndex.end()) return it->second;
    int s = out.add_state("(" + std::to_string(gs) + "|" +
                          p.stateNames[static_cast<size_t>(ps)] + ")");
    coreIndex.emplace(std::make_pair(gs, ps), s);
    todo.push_back({gs, ps, nullptr, 0, 0});
    return s;
  };
  auto chainState = [&](int gs, int ps, const Word* w, size_t i, int kind) {
    if (i == w->size() && kind == 1) return coreState(gs, ps);
    auto k = std::make_tuple(gs, ps, w, i, kind);
    auto it = chainIndex.find(k);
    if (it != chainIndex.end()) return it->second;
    int s = out.add_state("(" + std::to_string(gs) + "|" +
                          p.stateNames[static_cast<size_t>(ps)] + "|+" +
                          std::to_string(i) + (kind == 2 ? "$" : "") + ")");
    chainIndex.emplace(k, s);
    todo.push_back(k);
    return s;
  };

  out.initial = coreState(g.initial, p.initial);
  while (!todo.empty()) {
    auto [gs, ps, w, i, kind] = todo.front();
    todo.pop_front();
    if (kind == 0) {
      int from = coreIndex.at({gs, ps});
      // p epsilon moves
      for (const auto& [k, moves] : p.delta[static_cast<size_t>(ps)])
        if (k.first < 0)
          for (const Npda::Move& m : moves)
            out.add_move(from, -1, k.second, coreState(gs, m.to), m.push);
      // real input letters through the gsm
      for (const auto& [letterId, edge] : g.transitions[static_cast<size_t>(gs)]) {
        int target = edge.output.empty()
                         ? coreState(edge.to, ps)
                         : chainState(edge.to, ps, &edge.output, 0, 1);
        for (size_t sym = 0; sym < out.stackNames.size(); ++sym)
          out.add_move(from, letterId, static_cast<int>(sym), target,
                       {static_cast<int>(sym)});
      }
      // acceptance: terminal output then p's acceptance condition
      if (g.finals.count(gs)) {
        auto t = g.terminalOutput.find(gs);
        if (t == g.terminalOutput.end() || t->second.empty()) {
          if (p.finals.count(ps)) out.finals.insert(from);
        } else {
          int target = chainState(gs, ps, &t->second, 0, 2);
          for (size_t sym = 0; sym < out.stackNames.size(); ++sym)
            out.add_move(from, -1, static_cast<int>(sym), target,
                         {static_cast<int>(sym)});
        }
      }
    } else {
      int from = chainIndex.at({gs, ps, w, i, kind});
      if (i == w->size()) {
        // terminal chain fully fed
        if (kind == 2 && p.finals.count(ps)) out.finals.insert(from);
        // p epsilon moves may still be needed to reach acceptance
        for (const auto& [k, moves] : p.delta[static_cast<size_t>(ps)])
          if (k.first < 0)
            for (const Npda::Move& m : moves)
              out.add_move(from, -1, k.second,
                           chainState(gs, m.to, w, i, kind), m.push);
        continue;
      }
      int virt = p.input.id((*w)[i]);
      for (const auto& [k, moves] : p.delta[static_cast<size_t>(ps)]) {
        if (k.first < 0) {
          for (const Npda::Move& m : moves)
            out.add_move(from, -1, k.second, chainState(gs, m.to, w, i, kind),
                         m.push);
        } else if (k.first == virt) {
          for (const Npda::Move& m : moves)
            out.add_move(from, -1, k.second,
                         chainState(gs, m.to, w, i + 1, kind), m.push);
        }
      }
    }
  }
  out.deterministicFlag = is_deterministic(out);
  return out;
}

// Special case of inverse_gsm with the one-state gsm.
inline Npda inverse_homomorphism(const Npda& p, const std::map<Letter, Word>& h) {
  std::vector<Letter> domain;
  domain.reserve(h.size());
  for (const auto& [l, img] : h) domain.push_back(l);
  return inverse_gsm(p, gsm::homomorphism(domain, h));
}

// Finite union; fresh initial state with epsilon branches into normalized
// components stacked above a fresh bottom.
inline Npda union_lang(const std::vector<Npda>& ps) {
  if (ps.empty()) throw InputError("union of an empty machine list");
  Npda out;
  std::vector<Letter> letters;
  for (const Npda& p : ps)
    for (const Letter& l : p.input.names())
      if (std::find(letters.begin(), letters.end(), l) == letters.end())
        letters.push_back(l);
  out.input = Alphabet(letters);
  out.bottom = out.add_stack_symbol("_ubot");
  out.initial = out.add_state("u0");
  int acc = out.add_state("uacc");
  out.finals = {acc};
  out.mode = Npda::AcceptMode::finalStateAndBareBottom;
  for (size_t pi = 0; pi < ps.size(); ++pi) {
    Npda n = normalize(ps[pi]);
    int stateOff = static_cast<int>(out.size());
    std::vector<int> symMap(n.stackNames.size());
    for (size_t i = 0; i < n.stackNames.size(); ++i)
      symMap[i] = out.add_stack_symbol("u" + std::to_string(pi) + "." +
                                       n.stackNames[i]);
    for (const auto& nm : n.stateNames)
      out.add_state("u" + std::to_string(pi) + "." + nm);
    for (size_t s = 0; s < n.size(); ++s)
      for (const auto& [k, moves] : n.delta[s]) {
        int in = k.first < 0 ? -1 : out.input.id(n.input.name(k.first));
        for (const Npda::Move& m : moves) {
          std::vector<int> push;
          for (int sym : m.push) push.push_back(symMap[static_cast<size_t>(sym)]);
          out.add_move(static_cast<int>(s) + stateOff, in,
                       symMap[static_cast<size_t>(k.second)], m.to + stateOff,
                       std::move(push));
        }
      }
    out.add_move(out.initial, -1, out.bottom, n.initial + stateOff,
                 {symMap[static_cast<size_t>(n.bottom)], out.bottom});
    for (int f : n.finals)
      out.add_move(f + stateOff, -1, symMap[static_cast<size_t>(n.bottom)], acc,
                   {});
  }
  out.deterministicFlag = is_deterministic(out);
  return out;
}

}  // namespace pda
}  // namespace sgwp

#endif  // SGWP_PDA_HPP
