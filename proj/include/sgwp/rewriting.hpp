#ifndef SGWP_REWRITING_HPP
#define SGWP_REWRITING_HPP

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sgwp/cfg.hpp"
#include "sgwp/core.hpp"
#include "sgwp/nfa.hpp"

namespace sgwp {

// Left-hand-side language of a monadic rule family: a finite word set, a
// finite automaton, or a grammar.
class LhsDescriptor {
 public:
  LhsDescriptor() = default;
  explicit LhsDescriptor(std::set<Word> words) : rep_(std::move(words)) {}
  explicit LhsDescriptor(Nfa n) : rep_(std::move(n)) {}
  explicit LhsDescriptor(Cfg g)
      : rep_(std::make_shared<CachedCfg>(std::move(g))) {}

  bool member(const Word& w) const {
    if (std::holds_alternative<std::set<Word>>(rep_))
      return std::get<std::set<Word>>(rep_).count(w) > 0;
    if (std::holds_alternative<Nfa>(rep_)) {
      const Nfa& n = std::get<Nfa>(rep_);
      for (const Letter& l : w)
        if (!n.alphabet.contains(l)) return false;
      return n.accepts(w);
    }
    const auto& c = std::get<std::shared_ptr<CachedCfg>>(rep_);
    for (const Letter& l : w)
      if (!c->grammar.terminals.contains(l)) return false;
    return c->matcher.member(w);
  }

 private:
  struct CachedCfg {
    explicit CachedCfg(Cfg g) : grammar(std::move(g)), matcher(grammar) {}
    Cfg grammar;
    CykMatcher matcher;
  };
  std::variant<std::set<Word>, Nfa, std::shared_ptr<CachedCfg>> rep_;
};

// Monadic rewriting system: strictly length-reducing rules whose right-hand
// sides are single letters or the empty word, with the left-hand sides of
// each right-hand side given as a language.
struct MonadicRewritingSystem {
  std::vector<Letter> alphabet;
  // Right-hand side -> left-hand-side language. The empty word target is
  // keyed by the empty string.
  std::map<Letter, LhsDescriptor> lhsLanguages;
  bool confluentAsserted = false;

  // Length reduction is testable on the short side: no lhs language may
  // contain the empty word, and an lhs for a letter target may not contain
  // any single letter.
  void validate() const {
    for (const auto& [rhs, lhs] : lhsLanguages) {
      if (!rhs.empty() &&
          std::find(alphabet.begin(), alphabet.end(), rhs) == alphabet.end())
        throw InputError("rule target " + rhs + " is not an alphabet letter");
      if (lhs.member(Word{}))
        throw InputError("rule system is not length-reducing: empty lhs");
      if (!rhs.empty())
        for (const Letter& a : alphabet)
          if (lhs.member(Word{a}))
            throw InputError(
                "rule system is not length-reducing: single-letter lhs " + a +
                " for target " + rhs);
    }
  }

  // Ordered rewrite targets: empty word first, then letters in alphabet
  // order. Fixed order makes the leftmost-shortest strategy deterministic.
  std::vector<Letter> ordered_targets() const {
    std::vector<Letter> ts;
    if (lhsLanguages.count("")) ts.push_back("");
    for (const Letter& a : alphabet)
      if (lhsLanguages.count(a)) ts.push_back(a);
    return ts;
  }
};

namespace rewriting {

struct Redex {
  size_t pos = 0;
  size_t len = 0;
  Letter target;  // "" for the empty word
};

// Leftmost position, shortest matching lhs; target order breaks ties among
// distinct right-hand sides matching the same factor.
inline std::optional<Redex> find_leftmost_shortest(
    const MonadicRewritingSystem& rs, const Word& w,
    const std::vector<Letter>& targets) {
  for (size_t pos = 0; pos < w.size(); ++pos)
    for (size_t len = 1; pos + len <= w.size(); ++len) {
      Word factor(w.begin() + static_cast<long>(pos),
                  w.begin() + static_cast<long>(pos + len));
      for (const Letter& t : targets)
        if (rs.lhsLanguages.at(t).member(factor))
          return Redex{pos, len, t};
    }
  return std::nullopt;
}

// The opposing strategy also reverses the target tie-break, so systems like
// { ab -> a, ab -> b } diverge on their overlapping factor.
inline std::optional<Redex> find_rightmost_longest(
    const MonadicRewritingSystem& rs, const Word& w,
    const std::vector<Letter>& targets) {
  for (size_t pos = w.size(); pos-- > 0;)
    for (size_t len = w.size() - pos; len >= 1; --len) {
      Word factor(w.begin() + static_cast<long>(pos),
                  w.begin() + static_cast<long>(pos + len));
      for (auto t = targets.rbegin(); t != targets.rend(); ++t)
        if (rs.lhsLanguages.at(*t).member(factor))
          return Redex{pos, len, *t};
    }
  return std::nullopt;
}

inline Word replace(const Word& w, const Redex& r) {
  Word out(w.begin(), w.begin() + static_cast<long>(r.pos));
  if (!r.target.empty()) out.push_back(r.target);
  out.insert(out.end(), w.begin() + static_cast<long>(r.pos + r.len), w.end());
  return out;
}

template <typename FindFn>
inline Word normal_form_by(const MonadicRewritingSystem& rs, Word w,
                           FindFn find) {
  std::vector<Letter> targets = rs.ordered_targets();
  for (;;) {
    auto r = find(rs, w, targets);
    if (!r) return w;
    w = replace(w, *r);  // every step shortens the word, so this terminates
  }
}

}  // namespace rewriting

// An irreducible word obtained by repeated replacement; the unique normal
// form when the system is confluent.
inline Word normal_form(const MonadicRewritingSystem& rs, const Word& w) {
  for (const Letter& l : w)
    if (std::find(rs.alphabet.begin(), rs.alphabet.end(), l) ==
        rs.alphabet.end())
      throw InputError("letter " + l + " not in the rewriting alphabet");
  return rewriting::normal_form_by(rs, w, rewriting::find_leftmost_shortest);
}

inline bool word_equal(const MonadicRewritingSystem& rs, const Word& u,
                       const Word& v) {
  if (!rs.confluentAsserted)
    throw HypothesisViolation(
        "word equality requires a confluence assertion on the rewriting system");
  return normal_form(rs, u) == normal_form(rs, v);
}

struct ConfluenceReport {
  size_t samples = 0;
  std::vector<Word> mismatches;  // words whose two normal forms differ
  bool clean() const { return mismatches.empty(); }
};

// Randomized sanity check: compares normal forms under the leftmost-shortest
// and rightmost-longest strategies on sampled words.
inline ConfluenceReport confluence_smoke_test(const MonadicRewritingSystem& rs,
                                              size_t sampleCount, size_t maxLen,
                                              uint64_t seed = 1) {
  ConfluenceReport rep;
  std::mt19937_64 rng(seed);
  if (rs.alphabet.empty()) return rep;
  std::uniform_int_distribution<size_t> lenDist(0, maxLen);
  std::uniform_int_distribution<size_t> letterDist(0, rs.alphabet.size() - 1);
  for (size_t i = 0; i < sampleCount; ++i) {
    Word w;
    size_t len = lenDist(rng);
    for (size_t j = 0; j < len; ++j) w.push_back(rs.alphabet[letterDist(rng)]);
    ++rep.samples;
    Word a = rewriting::normal_form_by(rs, w, rewriting::find_leftmost_shortest);
    Word b = rewriting::normal_form_by(rs, w, rewriting::find_rightmost_longest);
    if (a != b) rep.mismatches.push_back(w);
  }
  return rep;
}

}  // namespace sgwp

#endif  // SGWP_REWRITING_HPP
