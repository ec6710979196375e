#ifndef SGWP_CORE_HPP
#define SGWP_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgwp {

// A letter is a named symbol; multi-character names such as "(1,a,2)" are
// ordinary letters. A word is a sequence of letters.
using Letter = std::string;
using Word   = std::vector<Letter>;

inline const Letter kSeparator  = "#";
inline const Letter kSeparator1 = "#1";
inline const Letter kSeparator2 = "#2";

// Raised when a caller violates an operation's precondition on its input
// (unknown letter, dangling reference, malformed data). CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the mathematical hypothesis of a construction fails (base not
// decomposable, no finite image power, system not asserted confluent).
// CLI exit code 3.
struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Word reversed(const Word& w) {
  return Word(w.rbegin(), w.rend());
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Word word_of(std::initializer_list<Letter> ls) { return Word(ls); }

// Splits a space-separated string into a word; "" is the empty word.
inline Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) w.push_back(tok);
  return w;
}

inline std::string format_word(const Word& w) {
  if (w.empty()) return "(empty)";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i];
  }
  return s;
}

// u # v^rev, the encoded query for word-problem languages.
inline Word encode_pair(const Word& u, const Word& v) {
  Word r = u;
  r.push_back(kSeparator);
  Word vr = reversed(v);
  r.insert(r.end(), vr.begin(), vr.end());
  return r;
}

// Enumerates all words over `alphabet` with length in [minLen, maxLen],
// in length-lexicographic order (letter order as given).
inline std::vector<Word> enumerate_words(const std::vector<Letter>& alphabet,
                                         size_t maxLen, size_t minLen = 0) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  if (minLen == 0) out.push_back(Word{});
  for (size_t len = 1; len <= maxLen; ++len) {
    std::vector<Word> next;
    next.reserve(layer.size() * alphabet.size());
    for (const Word& w : layer)
      for (const Letter& a : alphabet) {
        Word x = w;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    layer = std::move(next);
    if (len >= minLen) out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Interning table from letter names to dense ids, used by the machines.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<Letter>& letters) {
    for (const Letter& l : letters) add(l);
  }

  int add(const Letter& l) {
    auto it = index_.find(l);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(l);
    index_.emplace(l, id);
    return id;
  }

  bool contains(const Letter& l) const { return index_.count(l) > 0; }

  int id(const Letter& l) const {
    auto it = index_.find(l);
    if (it == index_.end())
      throw InputError("unknown letter: " + l);
    return it->second;
  }

  const Letter& name(int id) const { return names_.at(static_cast<size_t>(id)); }
  size_t size() const { return names_.size(); }
  const std::vector<Letter>& names() const { return names_; }

  std::vector<int> encode(const Word& w) const {
    std::vector<int> ids;
    ids.reserve(w.size());
    for (const Letter& l : w) ids.push_back(id(l));
    return ids;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<Letter> names_;
  std::map<Letter, int> index_;
};

}  // namespace sgwp

#endif  // SGWP_CORE_HPP
