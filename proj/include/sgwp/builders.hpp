#ifndef SGWP_BUILDERS_HPP
#define SGWP_BUILDERS_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sgwp/core.hpp"
#include "sgwp/finite_semigroup.hpp"
#include "sgwp/gsm.hpp"
#include "sgwp/pda.hpp"
#include "sgwp/rewriting.hpp"
#include "sgwp/word_problem.hpp"

namespace sgwp {
namespace builders {

inline std::vector<Letter> default_letters(size_t rank) {
  static const char* pool = "abcdefghijklmnopqrstuvwxyz";
  std::vector<Letter> ls;
  for (size_t i = 0; i < rank; ++i) {
    if (i < 26)
      ls.push_back(std::string(1, pool[i]));
    else
      ls.push_back("a" + std::to_string(i));
  }
  return ls;
}

// WP = { u # u^rev } over the given letters; pushdown pushes u, switches on
// the separator, then pop-matches.
inline WordProblemObject free_monoid_word_problem(std::vector<Letter> letters,
                                                  bool monoidFlag) {
  if (letters.empty()) throw InputError("free monoid needs rank >= 1");
  Npda p;
  std::vector<Letter> full = letters;
  full.push_back(kSeparator);
  p.input = Alphabet(full);
  p.bottom = p.add_stack_symbol("_bot");
  std::vector<int> sym(letters.size());
  for (size_t i = 0; i < letters.size(); ++i)
    sym[i] = p.add_stack_symbol(letters[i]);

  int sepId = p.input.id(kSeparator);
  p.mode = Npda::AcceptMode::finalStateAndBareBottom;

  if (monoidFlag) {
    int s0 = p.add_state("push");
    int s1 = p.add_state("pop");
    p.initial = s0;
    p.finals = {s1};
    for (size_t i = 0; i < letters.size(); ++i)
      for (size_t t = 0; t < p.stackNames.size(); ++t) {
        p.add_move(s0, static_cast<int>(i), static_cast<int>(t), s0,
                   {sym[i], static_cast<int>(t)});
        if (static_cast<int>(t) == sym[i])
          p.add_move(s1, static_cast<int>(i), static_cast<int>(t), s1, {});
      }
    for (size_t t = 0; t < p.stackNames.size(); ++t)
      p.add_move(s0, sepId, static_cast<int>(t), s1, {static_cast<int>(t)});
  } else {
    // A separate first-letter state on each side enforces nonempty u and v.
    int s0v = p.add_state("push0");
    int s0 = p.add_state("push");
    int s1v = p.add_state("pop0");
    int s1 = p.add_state("pop");
    p.initial = s0v;
    p.finals = {s1};
    for (size_t i = 0; i < letters.size(); ++i)
      for (size_t t = 0; t < p.stackNames.size(); ++t) {
        p.add_move(s0v, static_cast<int>(i), static_cast<int>(t), s0,
                   {sym[i], static_cast<int>(t)});
        p.add_move(s0, static_cast<int>(i), static_cast<int>(t), s0,
                   {sym[i], static_cast<int>(t)});
        if (static_cast<int>(t) == sym[i]) {
          p.add_move(s1v, static_cast<int>(i), static_cast<int>(t), s1, {});
          p.add_move(s1, static_cast<int>(i), static_cast<int>(t), s1, {});
        }
      }
    for (size_t t = 0; t < p.stackNames.size(); ++t)
      p.add_move(s0, sepId, static_cast<int>(t), s1v, {static_cast<int>(t)});
  }
  p.deterministicFlag = pda::is_deterministic(p);

  WordProblemObject w;
  w.alphabet = letters;
  w.monoidFlag = monoidFlag;
  w.recognizer = LanguageRep(std::move(p));
  w.deterministicHint = true;
  w.oracle = EqualityOracle{
      letters, [](const Word& u, const Word& v) { return u == v; },
      "free word equality"};
  return w;
}

inline WordProblemObject free_monoid_word_problem(size_t rank, bool monoidFlag) {
  return free_monoid_word_problem(default_letters(rank), monoidFlag);
}

// Free group: the alphabet holds formal inverses; the machine pushes u with
// top-cancellation, then pushes inverses of the post-separator letters with
// top-cancellation, accepting on a bare bottom.
inline WordProblemObject free_group_word_problem(std::vector<Letter> gens,
                                                 std::vector<Letter> inverses) {
  if (gens.empty() || gens.size() != inverses.size())
    throw InputError("free group needs matching generator and inverse letters");
  std::vector<Letter> letters = gens;
  letters.insert(letters.end(), inverses.begin(), inverses.end());

  std::map<Letter, Letter> inverse;
  for (size_t i = 0; i < gens.size(); ++i) {
    inverse[gens[i]] = inverses[i];
    inverse[inverses[i]] = gens[i];
  }

  Npda p;
  std::vector<Letter> full = letters;
  full.push_back(kSeparator);
  p.input = Alphabet(full);
  p.bottom = p.add_stack_symbol("_bot");
  std::map<Letter, int> sym;
  for (const Letter& l : letters) sym[l] = p.add_stack_symbol(l);

  int g0 = p.add_state("left");
  int g1 = p.add_state("right");
  p.initial = g0;
  p.finals = {g1};
  p.mode = Npda::AcceptMode::finalStateAndBareBottom;

  for (const Letter& l : letters) {
    int li = p.input.id(l);
    for (size_t t = 0; t < p.stackNames.size(); ++t) {
      int ti = static_cast<int>(t);
      if (ti == sym[inverse[l]])
        p.add_move(g0, li, ti, g0, {});
      else
        p.add_move(g0, li, ti, g0, {sym[l], ti});
      // after the separator, push the letter's inverse with cancellation
      if (ti == sym[l])
        p.add_move(g1, li, ti, g1, {});
      else
        p.add_move(g1, li, ti, g1, {sym[inverse[l]], ti});
    }
  }
  for (size_t t = 0; t < p.stackNames.size(); ++t)
    p.add_move(g0, p.input.id(kSeparator), static_cast<int>(t), g1,
               {static_cast<int>(t)});
  p.deterministicFlag = pda::is_deterministic(p);

  auto reduce = [inverse](const Word& w) {
    Word r;
    for (const Letter& l : w) {
      if (!r.empty() && inverse.count(l) && r.back() == inverse.at(l))
        r.pop_back();
      else
        r.push_back(l);
    }
    return r;
  };

  WordProblemObject w;
  w.alphabet = letters;
  w.monoidFlag = true;
  w.recognizer = LanguageRep(std::move(p));
  w.deterministicHint = true;
  w.oracle = EqualityOracle{
      letters,
      [reduce](const Word& u, const Word& v) { return reduce(u) == reduce(v); },
      "free reduction equality"};
  return w;
}

inline WordProblemObject free_group_word_problem(size_t rank) {
  static const char* pool = "xyzw";
  std::vector<Letter> gens, invs;
  for (size_t i = 0; i < rank; ++i) {
    if (i < 4) {
      gens.push_back(std::string(1, pool[i]));
      invs.push_back(std::string(1, static_cast<char>(pool[i] - 'a' + 'A')));
    } else {
      gens.push_back("x" + std::to_string(i));
      invs.push_back("X" + std::to_string(i));
    }
  }
  return free_group_word_problem(gens, invs);
}

// Finite semigroups have regular word problem; the recognizer is a DFA
// lifted to a pushdown machine. Before the separator the states fold the
// product of u; afterwards the suffix product of v read right to left.
inline WordProblemObject finite_word_problem(const FiniteSemigroup& t,
                                             const std::set<Letter>& gens,
                                             bool monoidFlag) {
  t.validate();
  for (const Letter& g : gens)
    if (!t.contains(g)) throw InputError("generator " + g + " is not an element");
  if (monoidFlag && !t.identity)
    throw InputError("monoid word problem needs an identity element");
  {
    std::set<std::string> cl = t.closure(gens);
    if (monoidFlag) cl.insert(*t.identity);  // the empty product
    if (cl.size() != t.elements.size())
      throw InputError("the chosen generators do not generate the semigroup");
  }

  std::vector<Letter> letters(gens.begin(), gens.end());
  Npda p;
  std::vector<Letter> full = letters;
  full.push_back(kSeparator);
  p.input = Alphabet(full);
  p.bottom = p.add_stack_symbol("_bot");
  p.mode = Npda::AcceptMode::finalStateAndBareBottom;

  // state ids: pre states keyed by product or virgin; post by (u product, v
  // suffix product or virgin)
  std::map<std::string, int> index;
  auto state = [&](const std::string& n) {
    auto it = index.find(n);
    if (it != index.end()) return it->second;
    int s = p.add_state(n);
    index.emplace(n, s);
    return s;
  };
  const std::string virgin = "_";
  int start = state("pre:" + virgin);
  p.initial = start;

  auto preName = [](const std::string& x) { return "pre:" + x; };
  auto postName = [&](const std::string& u, const std::string& v) {
    return "post:" + u + "|" + v;
  };

  int sep = p.input.id(kSeparator);
  for (const Letter& g : letters) {
    int gi = p.input.id(g);
    p.add_move(start, gi, p.bottom, state(preName(g)), {p.bottom});
  }
  for (const auto& x : t.elements) {
    int pre = state(preName(x));
    for (const Letter& g : letters)
      p.add_move(pre, p.input.id(g), p.bottom, state(preName(t.product(x, g))),
                 {p.bottom});
    p.add_move(pre, sep, p.bottom, state(postName(x, virgin)), {p.bottom});
    for (const Letter& g : letters)
      p.add_move(state(postName(x, virgin)), p.input.id(g), p.bottom,
                 state(postName(x, g)), {p.bottom});
    for (const auto& s : t.elements) {
      int post = state(postName(x, s));
      for (const Letter& g : letters)
        p.add_move(post, p.input.id(g), p.bottom,
                   state(postName(x, t.product(g, s))), {p.bottom});
      if (x == s) p.finals.insert(post);
    }
    if (monoidFlag && x == *t.identity) p.finals.insert(state(postName(x, virgin)));
  }
  if (monoidFlag)
    p.add_move(start, sep, p.bottom, state(postName(*t.identity, virgin)),
               {p.bottom});
  p.deterministicFlag = pda::is_deterministic(p);

  FiniteSemigroup table = t;
  bool monoid = monoidFlag;
  WordProblemObject w;
  w.alphabet = letters;
  w.monoidFlag = monoidFlag;
  w.recognizer = LanguageRep(std::move(p));
  w.deterministicHint = true;
  w.oracle = EqualityOracle{
      letters,
      [table, monoid](const Word& u, const Word& v) {
        if (!monoid && (u.empty() || v.empty())) return false;
        return table.product_of(u) == table.product_of(v);
      },
      "Cayley table product equality"};
  return w;
}

// Oracle-only object for a monoid presented by a confluent monadic
// rewriting system; recognizers are out of reach here, equality is decided
// by normal forms.
inline WordProblemObject rewriting_word_problem(MonadicRewritingSystem rs) {
  rs.validate();
  if (!rs.confluentAsserted)
    throw HypothesisViolation(
        "rewriting word problem requires an asserted-confluent system");
  auto shared = std::make_shared<MonadicRewritingSystem>(std::move(rs));
  WordProblemObject w;
  w.alphabet = shared->alphabet;
  w.monoidFlag = true;
  w.deterministicHint = false;
  w.oracle = EqualityOracle{
      shared->alphabet,
      [shared](const Word& u, const Word& v) { return word_equal(*shared, u, v); },
      "confluent rewriting normal form equality"};
  return w;
}

// Change of generators: the new recognizer is the inverse image of the old
// one under the gsm that fixes the separator, maps pre-separator letters to
// their image words and post-separator letters to the reversed image words.
inline WordProblemObject change_generators(const WordProblemObject& w,
                                           const std::map<Letter, Word>& newGens) {
  w.require_recognizer("change_generators");
  for (const auto& [nl, img] : newGens) {
    if (!w.monoidFlag && img.empty())
      throw InputError("empty image word for letter " + nl +
                       " in a semigroup-mode object");
    for (const Letter& l : img)
      if (std::find(w.alphabet.begin(), w.alphabet.end(), l) == w.alphabet.end())
        throw InputError("image of " + nl + " uses unknown letter " + l);
  }

  std::vector<Letter> newLetters;
  for (const auto& [nl, img] : newGens) newLetters.push_back(nl);
  std::vector<Letter> domain = newLetters;
  domain.push_back(kSeparator);

  Gsm g;
  g.inputAlphabet = Alphabet(domain);
  int q0 = g.add_state("pre");
  int q1 = g.add_state("post");
  g.initial = q0;
  g.finals = {q1};
  for (const auto& [nl, img] : newGens) {
    g.add_transition(q0, nl, q0, img);
    g.add_transition(q1, nl, q1, reversed(img));
  }
  g.add_transition(q0, kSeparator, q1, {kSeparator});

  Npda machine = pda::inverse_gsm(w.recognizer->pda(), g);
  bool det = machine.deterministicFlag;

  auto substitute = [newGens](const Word& u) {
    Word out;
    for (const Letter& l : u) {
      auto it = newGens.find(l);
      if (it == newGens.end()) throw InputError("letter " + l + " not a new generator");
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
  };
  EqualityOracle base = w.oracle;

  WordProblemObject out;
  out.alphabet = newLetters;
  out.monoidFlag = w.monoidFlag;
  out.recognizer = LanguageRep(std::move(machine));
  out.deterministicHint = det;
  out.oracle = EqualityOracle{
      newLetters,
      [substitute, base](const Word& u, const Word& v) {
        return base(substitute(u), substitute(v));
      },
      "substitution into: " + base.description};
  return out;
}

// Renames generator letters; recognizer structure is unchanged, the oracle
// translates back. Used to separate colliding alphabets in constructions.
inline WordProblemObject rename_letters(const WordProblemObject& w,
                                        const std::map<Letter, Letter>& to) {
  auto mapLetter = [&](const Letter& l) {
    auto it = to.find(l);
    return it == to.end() ? l : it->second;
  };
  WordProblemObject out;
  for (const Letter& l : w.alphabet) out.alphabet.push_back(mapLetter(l));
  {
    std::set<Letter> distinct(out.alphabet.begin(), out.alphabet.end());
    if (distinct.size() != out.alphabet.size())
      throw InputError("letter renaming must stay injective");
  }
  out.monoidFlag = w.monoidFlag;
  out.deterministicHint = w.deterministicHint;
  if (w.recognizer) {
    Npda m = w.recognizer->pda();
    std::vector<Letter> names;
    for (const Letter& l : m.input.names())
      names.push_back(l == kSeparator ? l : mapLetter(l));
    m.input = Alphabet(names);
    out.recognizer = LanguageRep(std::move(m));
  }
  std::map<Letter, Letter> back;
  for (const Letter& l : w.alphabet) back[mapLetter(l)] = l;
  EqualityOracle base = w.oracle;
  out.oracle = EqualityOracle{
      out.alphabet,
      [back, base](const Word& u, const Word& v) {
        Word u2, v2;
        for (const Letter& l : u) u2.push_back(back.at(l));
        for (const Letter& l : v) v2.push_back(back.at(l));
        return base(u2, v2);
      },
      base.description};
  return out;
}

}  // namespace builders
}  // namespace sgwp

#endif  // SGWP_BUILDERS_HPP
