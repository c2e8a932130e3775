#include "relnars/unify.hpp"

#include <algorithm>

namespace relnars {

const Term* Substitution::find(const Term& var) const {
  auto it = bindings_.find(var.str());
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Substitution::bind(const Term& var, const Term& value) {
  auto [it, inserted] = bindings_.emplace(var.str(), value);
  return inserted || it->second == value;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_variable()) {
    const Term* v = find(t);
    return v ? *v : t;
  }
  if (t.is_ground() || t.children().empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.size());
  for (const auto& c : t.children()) kids.push_back(apply(c));
  return Term::make(t.kind(), std::move(kids), t.name(), t.index());
}

namespace {

bool unify_into(const Term& pattern, const Term& target, Substitution& s);

// Conjunction items are unordered; try every assignment of pattern items to
// target items. Conjunctions in this domain have two or three items.
bool unify_unordered(std::span<const Term> pats, std::vector<Term> targets, Substitution& s) {
  if (pats.empty()) return targets.empty();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    Substitution trial = s;
    if (!unify_into(pats.front(), targets[i], trial)) continue;
    std::vector<Term> rest = targets;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (unify_unordered(pats.subspan(1), std::move(rest), trial)) {
      s = std::move(trial);
      return true;
    }
  }
  return false;
}

bool unify_into(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_variable()) return s.bind(pattern, target);
  if (pattern.is_ground()) return pattern == target;
  if (pattern.kind() != target.kind() || pattern.name() != target.name() ||
      pattern.size() != target.size())
    return false;
  if (pattern.kind() == TermKind::Conjunction) {
    return unify_unordered(pattern.children(),
                           std::vector<Term>(target.children().begin(), target.children().end()),
                           s);
  }
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!unify_into(pattern[i], target[i], s)) return false;
  }
  return true;
}

void match_rec(const std::vector<Term>& patterns, std::size_t at,
               const std::vector<Term>& candidates, const Substitution& s,
               std::vector<Substitution>& out) {
  if (at == patterns.size()) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return;
  }
  for (const auto& cand : candidates) {
    if (auto next = unify(patterns[at], cand, s)) match_rec(patterns, at + 1, candidates, *next, out);
  }
}

}  // namespace

std::optional<Substitution> unify(const Term& pattern, const Term& target,
                                  const Substitution& seed) {
  Substitution s = seed;
  if (!unify_into(pattern, target, s)) return std::nullopt;
  return s;
}

std::vector<Substitution> match_all(const std::vector<Term>& patterns,
                                    const std::vector<Term>& candidates,
                                    const Substitution& seed) {
  std::vector<Substitution> out;
  match_rec(patterns, 0, candidates, seed, out);
  return out;
}

}  // namespace relnars
