#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relnars/term.hpp"

namespace relnars {

/// Variable bindings keyed by variable text (`$1`, `#2`). Bound values are
/// always terms from the target side, so applying twice equals applying once.
class Substitution {
 public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Term* find(const Term& var) const;
  /// False when `var` is already bound to something else.
  bool bind(const Term& var, const Term& value);
  Term apply(const Term& t) const;
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

/// One-way matching: variables in `pattern` bind to subterms of `target`;
/// variables in `target` are treated as constants. Conjunctions match up to
/// item order. Returns the most general substitution, or nothing.
std::optional<Substitution> unify(const Term& pattern, const Term& target,
                                  const Substitution& seed = {});

/// Every substitution under which each pattern matches some candidate,
/// all patterns sharing one consistent binding. Results are in candidate
/// order, so the enumeration is deterministic.
std::vector<Substitution> match_all(const std::vector<Term>& patterns,
                                    const std::vector<Term>& candidates,
                                    const Substitution& seed = {});

}  // namespace relnars
