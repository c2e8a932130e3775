#include "relnars/term.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace relnars {

struct Term::Node {
  TermKind kind;
  std::string name;
  int index = 0;
  std::vector<Term> children;
  std::string text;
  std::string shape;
  bool ground = true;
  std::size_t complexity = 1;
};

namespace {

std::string join(std::span<const Term> items, const char* sep, bool shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += shape ? shape_key(items[i]) : items[i].str();
  }
  out += ")";
  return out;
}

std::string render(TermKind kind, const std::string& name, int index,
                   std::span<const Term> c, bool shape) {
  auto sub = [&](std::size_t i) -> std::string { return shape ? shape_key(c[i]) : c[i].str(); };
  switch (kind) {
    case TermKind::Atom:
      return name;
    case TermKind::IndependentVar:
      return shape ? "_" : "$" + std::to_string(index);
    case TermKind::DependentVar:
      return shape ? "_" : "#" + std::to_string(index);
    case TermKind::Product:
      return "(" + sub(0) + " * " + sub(1) + ")";
    case TermKind::Inheritance:
      return "<" + sub(0) + " --> " + sub(1) + ">";
    case TermKind::Implication:
      return "<" + sub(0) + " ==> " + sub(1) + ">";
    case TermKind::Equivalence:
      return "<" + sub(0) + " <=> " + sub(1) + ">";
    case TermKind::PredictiveImplication:
      return "<" + sub(0) + " =/> " + sub(1) + ">";
    case TermKind::Sequence:
      return join(c, " &/ ", shape);
    case TermKind::Conjunction:
      return join(c, " && ", shape);
    case TermKind::Operation:
      return "<(" + sub(0) + " * " + sub(1) + ") --> " + name + ">";
  }
  return {};
}

bool conj_less(const Term& a, const Term& b) {
  auto ka = shape_key(a), kb = shape_key(b);
  if (ka != kb) return ka < kb;
  return a.str() < b.str();
}

}  // namespace

Term::Term() : Term(atom("_")) {}

Term Term::build(TermKind kind, std::vector<Term> children, std::string name, int index) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->index = index;
  node->children = std::move(children);
  node->ground = !(kind == TermKind::IndependentVar || kind == TermKind::DependentVar);
  for (const auto& ch : node->children) {
    node->ground = node->ground && ch.is_ground();
    node->complexity += ch.complexity();
  }
  node->text = render(kind, node->name, index, node->children, false);
  node->shape = render(kind, node->name, index, node->children, true);
  return Term(std::shared_ptr<const Node>(std::move(node)));
}

Term Term::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return build(TermKind::Atom, {}, std::move(name), 0);
}

Term Term::variable(TermKind kind, int index) {
  if (kind != TermKind::IndependentVar && kind != TermKind::DependentVar)
    throw std::invalid_argument("not a variable kind");
  return build(kind, {}, {}, index);
}

Term Term::product(Term left, Term right) {
  return build(TermKind::Product, {std::move(left), std::move(right)}, {}, 0);
}

Term Term::inheritance(Term subject, Term predicate) {
  return build(TermKind::Inheritance, {std::move(subject), std::move(predicate)}, {}, 0);
}

Term Term::implication(Term antecedent, Term consequent) {
  return build(TermKind::Implication, {std::move(antecedent), std::move(consequent)}, {}, 0);
}

Term Term::equivalence(Term a, Term b) {
  return build(TermKind::Equivalence, {std::move(a), std::move(b)}, {}, 0);
}

Term Term::predictive(Term antecedent, Term consequent) {
  return build(TermKind::PredictiveImplication, {std::move(antecedent), std::move(consequent)}, {},
               0);
}

Term Term::sequence(std::vector<Term> items) {
  std::vector<Term> flat;
  for (auto& it : items) {
    if (it.kind() == TermKind::Sequence) {
      for (const auto& inner : it.children()) flat.push_back(inner);
    } else {
      flat.push_back(std::move(it));
    }
  }
  if (flat.empty()) throw std::invalid_argument("empty sequence");
  if (flat.size() == 1) return flat.front();
  return build(TermKind::Sequence, std::move(flat), {}, 0);
}

Term Term::conjunction(std::vector<Term> items) {
  std::vector<Term> flat;
  for (auto& it : items) {
    if (it.kind() == TermKind::Conjunction) {
      for (const auto& inner : it.children()) flat.push_back(inner);
    } else {
      flat.push_back(std::move(it));
    }
  }
  if (flat.empty()) throw std::invalid_argument("empty conjunction");
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end(), conj_less);
  return build(TermKind::Conjunction, std::move(flat), {}, 0);
}

Term Term::operation(Term executor, Term args, std::string opname) {
  if (opname.empty() || opname.front() != '^') opname.insert(opname.begin(), '^');
  return build(TermKind::Operation, {std::move(executor), std::move(args)}, std::move(opname), 0);
}

Term Term::make(TermKind kind, std::vector<Term> children, const std::string& name, int index) {
  switch (kind) {
    case TermKind::Atom:
      return atom(name);
    case TermKind::IndependentVar:
    case TermKind::DependentVar:
      return variable(kind, index);
    case TermKind::Sequence:
      return sequence(std::move(children));
    case TermKind::Conjunction:
      return conjunction(std::move(children));
    case TermKind::Operation:
      return operation(std::move(children.at(0)), std::move(children.at(1)), name);
    default:
      if (children.size() != 2) throw std::invalid_argument("binary term needs two children");
      return build(kind, std::move(children), {}, 0);
  }
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
int Term::index() const { return node_->index; }
std::span<const Term> Term::children() const { return node_->children; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::complexity() const { return node_->complexity; }
const std::string& Term::str() const { return node_->text; }

bool Term::is_statement() const {
  switch (kind()) {
    case TermKind::Inheritance:
    case TermKind::Implication:
    case TermKind::Equivalence:
    case TermKind::PredictiveImplication:
    case TermKind::Operation:
    case TermKind::Atom:
      return true;
    default:
      return false;
  }
}

bool operator==(const Term& a, const Term& b) {
  return a.node_ == b.node_ || a.node_->text == b.node_->text;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  return a.node_->text <=> b.node_->text;
}

std::string format_term(const Term& t) { return t.str(); }

std::string shape_key(const Term& t) { return t.node_ ? t.node_->shape : std::string{}; }

namespace {

void collect_vars(const Term& t, std::vector<Term>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& c : t.children()) collect_vars(c, out);
}

Term renumber(const Term& t, std::map<std::string, Term>& mapping, int& next_indep,
              int& next_dep) {
  if (t.is_variable()) {
    auto it = mapping.find(t.str());
    if (it != mapping.end()) return it->second;
    int& counter = t.kind() == TermKind::IndependentVar ? next_indep : next_dep;
    Term fresh = Term::variable(t.kind(), ++counter);
    mapping.emplace(t.str(), fresh);
    return fresh;
  }
  if (t.is_ground() || t.children().empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.size());
  for (const auto& c : t.children()) kids.push_back(renumber(c, mapping, next_indep, next_dep));
  return Term::make(t.kind(), std::move(kids), t.name(), t.index());
}

}  // namespace

std::vector<Term> variables_of(const Term& t) {
  std::vector<Term> out;
  collect_vars(t, out);
  return out;
}

Term normalize_variables(const Term& t) {
  if (t.is_ground()) return t;
  // Conjunction order can depend on variable names when two items share a
  // shape, so renumber until the text stops changing.
  Term current = t;
  for (int round = 0; round < 8; ++round) {
    std::map<std::string, Term> mapping;
    int indep = 0, dep = 0;
    Term next = renumber(current, mapping, indep, dep);
    if (next == current) return next;
    current = std::move(next);
  }
  return current;
}

}  // namespace relnars
