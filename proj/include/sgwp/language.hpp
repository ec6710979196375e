#ifndef SGWP_LANGUAGE_HPP
#define SGWP_LANGUAGE_HPP

#include <memory>
#include <mutex>
#include <optional>

#include "sgwp/cfg.hpp"
#include "sgwp/core.hpp"
#include "sgwp/pda.hpp"

namespace sgwp {

// A language held as a pushdown automaton or a grammar (or both after
// on-demand conversion), with a cached CYK matcher for repeated queries.
class LanguageRep {
 public:
  LanguageRep() = default;
  explicit LanguageRep(Npda p) : impl_(std::make_shared<Impl>()) {
    impl_->pda = std::move(p);
  }
  explicit LanguageRep(Cfg g) : impl_(std::make_shared<Impl>()) {
    impl_->cfg = std::move(g);
  }

  bool valid() const { return impl_ != nullptr; }
  bool has_pda() const { return valid() && impl_->pda.has_value(); }
  bool has_cfg() const { return valid() && impl_->cfg.has_value(); }

  const Npda& pda() const {
    ensure();
    std::call_once(impl_->pdaOnce, [&] {
      if (!impl_->pda) impl_->pda = pda::cfg_to_pda(*impl_->cfg);
    });
    return *impl_->pda;
  }

  const Cfg& cfg() const {
    ensure();
    std::call_once(impl_->cfgOnce, [&] {
      if (!impl_->cfg) impl_->cfg = pda::to_cfg(*impl_->pda);
    });
    return *impl_->cfg;
  }

  std::vector<Letter> letters() const {
    ensure();
    return impl_->pda ? impl_->pda->input.names() : impl_->cfg->terminals.names();
  }

  bool contains_letter(const Letter& l) const {
    ensure();
    return impl_->pda ? impl_->pda->input.contains(l)
                      : impl_->cfg->terminals.contains(l);
  }

  // Membership. With a machine present the bounded configuration search is
  // tried first, unless its epsilon structure makes it hopeless; the cached
  // CYK matcher decides whenever the search cannot.
  bool member(const Word& w) const {
    ensure();
    if (impl_->pda) {
      for (const Letter& l : w)
        if (!impl_->pda->input.contains(l)) return false;
      std::call_once(impl_->searchOnce, [&] {
        impl_->searchViable = !pda::has_growing_eps_cycle(*impl_->pda);
      });
      if (impl_->searchViable) {
        std::vector<int> ids = impl_->pda->input.encode(w);
        Ternary t = pda::bounded_search(*impl_->pda, ids, 2 * (w.size() + 2));
        if (t != Ternary::Unknown) return t == Ternary::True;
      }
    } else {
      for (const Letter& l : w)
        if (!impl_->cfg->terminals.contains(l)) return false;
    }
    return matcher().member(w);
  }

  const CykMatcher& matcher() const {
    ensure();
    std::call_once(impl_->matcherOnce,
                   [&] { impl_->matcher = std::make_unique<CykMatcher>(cfg()); });
    return *impl_->matcher;
  }

 private:
  struct Impl {
    mutable std::optional<Npda> pda;
    mutable std::optional<Cfg> cfg;
    mutable std::unique_ptr<CykMatcher> matcher;
    mutable bool searchViable = true;
    mutable std::once_flag pdaOnce, cfgOnce, matcherOnce, searchOnce;
  };

  void ensure() const {
    if (!impl_) throw InputError("empty language representation");
  }

  std::shared_ptr<Impl> impl_;
};

}  // namespace sgwp

#endif  // SGWP_LANGUAGE_HPP
