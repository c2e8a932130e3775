#pragma once

// Brute-force relational closure over (frame, a, b) triples. An empty frame
// is the plain equivalence relation of the first task.

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "relnars/experiments.hpp"
#include "relnars/inference.hpp"

namespace oracle {

using Rel = std::tuple<std::string, std::string, std::string>;

inline std::string compose(const std::string& f, const std::string& g) {
  if (f.empty() && g.empty()) return "";
  if (f == "SAME") return g;
  if (g == "SAME") return f;
  if (f == "OPPOSITE" && g == "OPPOSITE") return "SAME";
  return "?";
}

inline std::set<Rel> closure(const std::set<Rel>& trained) {
  std::set<Rel> all = trained;
  for (bool grew = true; grew;) {
    grew = false;
    std::set<Rel> next = all;
    for (const auto& [f, a, b] : all) next.insert({f, b, a});
    for (const auto& [f, a, b] : all)
      for (const auto& [g, c, d] : all)
        if (b == c && a != d) {
          const std::string h = compose(f, g);
          if (h != "?") next.insert({h, a, d});
        }
    for (auto it = next.begin(); it != next.end();)
      it = std::get<1>(*it) == std::get<2>(*it) ? next.erase(it) : std::next(it);
    grew = next.size() != all.size();
    all = std::move(next);
  }
  std::set<Rel> derived;
  for (const auto& r : all)
    if (!trained.count(r)) derived.insert(r);
  return derived;
}

inline Rel to_rel(const relnars::Term& t) {
  auto v = relnars::as_relation(t);
  return {v->frame ? v->frame->name() : "", v->first.name(), v->second.name()};
}

/// Derived network relations a report found in memory: listed items that
/// were present and not trained, plus anything extraneous.
inline std::set<Rel> derived_in(const relnars::Report& r) {
  std::set<Rel> out;
  for (const auto& n : r.network)
    if (n.present && !n.trained && n.truth.confidence > 0.0) out.insert(to_rel(n.term));
  for (const auto& x : r.extraneous) out.insert(to_rel(relnars::parse_term(x)));
  return out;
}

inline std::set<Rel> task1_trained(int n) {
  const std::string i = std::to_string(n);
  return {{"", "A" + i, "B" + i}, {"", "A" + i, "C" + i}};
}

inline std::set<Rel> task2_trained() {
  return {{"SAME", "A1", "B1"}, {"SAME", "A1", "C1"}, {"OPPOSITE", "A1", "B2"}, {"OPPOSITE", "A1", "C2"}};
}

}  // namespace oracle
