#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace relnars {

enum class TermKind : std::uint8_t {
  Atom,
  IndependentVar,  // $n
  DependentVar,    // #n
  Product,         // (a * b)
  Inheritance,     // <s --> p>
  Implication,     // <a ==> c>
  Equivalence,     // <a <=> b>
  PredictiveImplication,  // <a =/> c>
  Sequence,        // (a &/ b &/ ...)
  Conjunction,     // (a && b && ...)
  Operation,       // <({SELF} * args) --> ^name>
};

/// Immutable Narsese term. Copies share structure; equality and ordering
/// follow the canonical text, which is computed once at construction.
class Term {
 public:
  Term();  // the atom "_"

  static Term atom(std::string name);
  static Term variable(TermKind kind, int index);
  static Term independent(int index) { return variable(TermKind::IndependentVar, index); }
  static Term dependent(int index) { return variable(TermKind::DependentVar, index); }
  static Term product(Term left, Term right);
  static Term inheritance(Term subject, Term predicate);
  static Term implication(Term antecedent, Term consequent);
  static Term equivalence(Term a, Term b);
  static Term predictive(Term antecedent, Term consequent);
  /// Nested sequences are flattened; a single item is returned unchanged.
  static Term sequence(std::vector<Term> items);
  /// Nested conjunctions are flattened and items put in canonical order.
  static Term conjunction(std::vector<Term> items);
  static Term operation(Term executor, Term args, std::string opname);
  /// Generic rebuild used by substitution and normalization.
  static Term make(TermKind kind, std::vector<Term> children, const std::string& name = {}, int index = 0);

  TermKind kind() const;
  /// Atom name, or operator name (with leading '^') for operations.
  const std::string& name() const;
  int index() const;
  std::span<const Term> children() const;
  const Term& operator[](std::size_t i) const { return children()[i]; }
  std::size_t size() const { return children().size(); }

  bool is_atom() const { return kind() == TermKind::Atom; }
  bool is_atom(std::string_view n) const { return is_atom() && name() == n; }
  bool is_variable() const {
    return kind() == TermKind::IndependentVar || kind() == TermKind::DependentVar;
  }
  bool is_ground() const;
  bool is_statement() const;
  /// Number of nodes in the tree.
  std::size_t complexity() const;

  const std::string& str() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend std::string shape_key(const Term& t);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term build(TermKind kind, std::vector<Term> children, std::string name, int index);

  std::shared_ptr<const Node> node_;
};

/// Canonical text of a term, e.g. `<(red * blue) --> (color * color)>`.
std::string format_term(const Term& t);

/// Renumber variables 1..n per kind in first-occurrence order.
Term normalize_variables(const Term& t);

/// Text of `t` with every variable printed as `_`; used as a
/// renaming-insensitive sort key.
std::string shape_key(const Term& t);

/// Collect distinct variables in first-occurrence order.
std::vector<Term> variables_of(const Term& t);

}  // namespace relnars
