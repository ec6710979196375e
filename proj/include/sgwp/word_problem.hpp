#ifndef SGWP_WORD_PROBLEM_HPP
#define SGWP_WORD_PROBLEM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgwp/core.hpp"
#include "sgwp/language.hpp"

namespace sgwp {

// Ground-truth equality decision for words over a fixed generating alphabet.
// Oracles never consult recognizers.
struct EqualityOracle {
  std::vector<Letter> alphabet;
  std::function<bool(const Word&, const Word&)> equal;
  std::string description;

  bool operator()(const Word& u, const Word& v) const { return equal(u, v); }
};

// The unit every construction consumes and produces: a generating alphabet,
// the monoid/semigroup flag, a recognizer for { u # v^rev : u = v } (absent
// for oracle-only objects), and the matching equality oracle.
struct WordProblemObject {
  std::vector<Letter> alphabet;
  bool monoidFlag = false;
  std::optional<LanguageRep> recognizer;  // over alphabet + "#"
  EqualityOracle oracle;
  bool deterministicHint = false;

  bool has_recognizer() const { return recognizer.has_value(); }

  void require_recognizer(const std::string& who) const {
    if (!recognizer)
      throw InputError(who + " requires a recognizer, but the object is oracle-only");
  }

  void check_sides(const Word& u, const Word& v) const {
    if (!monoidFlag && (u.empty() || v.empty()))
      throw InputError("semigroup word problem requires nonempty words");
    for (const Letter& l : u) check_letter(l);
    for (const Letter& l : v) check_letter(l);
  }

  // Recognizer verdict on the encoded query u # v^rev.
  bool accepts_pair(const Word& u, const Word& v) const {
    require_recognizer("accepts_pair");
    return recognizer->member(encode_pair(u, v));
  }

 private:
  void check_letter(const Letter& l) const {
    for (const Letter& a : alphabet)
      if (a == l) return;
    throw InputError("letter " + l + " is not a generator of this object");
  }
};

}  // namespace sgwp

#endif  // SGWP_WORD_PROBLEM_HPP
