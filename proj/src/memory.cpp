#include "relnars/memory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace relnars {

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::Input: return "input";
    case Origin::Induced: return "induced";
    case Origin::Acquired: return "acquired";
    case Origin::Derived: return "derived";
  }
  return "?";
}

Term concept_key(const Term& statement) {
  switch (statement.kind()) {
    case TermKind::Inheritance:
    case TermKind::Implication:
    case TermKind::Equivalence:
    case TermKind::PredictiveImplication: {
      const Term& first = statement[0];
      return first.kind() == TermKind::Sequence ? first[0] : first;
    }
    default:
      return statement;
  }
}

double Concept::priority_at(Cycle now, double decay) const {
  return priority_ * std::pow(decay, static_cast<double>(now - stamp_));
}

void Concept::touch(double priority, Cycle now, double decay) {
  priority_ = std::max(priority_at(now, decay), priority);
  stamp_ = now;
  ++use_count_;
}

Memory::Memory(MemoryConfig config, EvidenceParams evidence)
    : config_(config), evidence_(evidence) {}

std::vector<IngestOutcome> Memory::ingest(const Task& task, Cycle now, Origin origin, int depth) {
  std::vector<IngestOutcome> out;
  if (task.is_event()) {
    EventRecord rec{task, now, next_id()};
    rec.task.occurrence = now;
    events_.push_back(rec);
    out.push_back({IngestOutcome::Kind::Buffered, task.term, task.truth.value_or(TruthValue{}),
                   rec.id});
    while (events_.size() > config_.buffer_capacity) {
      const auto& old = events_.front();
      out.push_back({IngestOutcome::Kind::Evicted, old.task.term,
                     old.task.truth.value_or(TruthValue{}), old.id});
      events_.pop_front();
    }
    return out;
  }
  if (!task.is_judgment()) return out;
  if (!task.truth) throw std::invalid_argument("judgment without truth: " + task.term.str());

  const Term key = concept_key(task.term);
  auto [cit, created] = concepts_.try_emplace(key.str(), key);
  Concept& con = cit->second;
  con.touch(task.priority, now, config_.decay);

  auto& beliefs = con.beliefs();
  auto bit = beliefs.find(task.term.str());
  if (bit != beliefs.end()) {
    Belief& b = bit->second;
    b.truth = truth::revise(b.truth, *task.truth, evidence_);
    b.priority = std::max(priority_of(b), task.priority);
    b.stamp = now;
    b.depth = std::min(b.depth, depth);
    if (origin == Origin::Acquired || (origin == Origin::Input && b.origin == Origin::Derived))
      b.origin = origin;
    out.push_back({IngestOutcome::Kind::Revised, b.term, b.truth, b.id});
  } else {
    Belief b{task.term, *task.truth, task.priority, now, next_id(), depth, origin};
    out.push_back({IngestOutcome::Kind::Added, b.term, b.truth, b.id});
    beliefs.emplace(task.term.str(), std::move(b));
    while (beliefs.size() > config_.beliefs_per_concept) {
      auto victim = beliefs.begin();
      for (auto it = beliefs.begin(); it != beliefs.end(); ++it) {
        if (it->first == task.term.str()) continue;
        if (victim->first == task.term.str() || priority_of(it->second) < priority_of(victim->second))
          victim = it;
      }
      out.push_back({IngestOutcome::Kind::Evicted, victim->second.term, victim->second.truth,
                     victim->second.id});
      beliefs.erase(victim);
    }
  }
  auto evicted = enforce_concept_capacity(now, key.str());
  out.insert(out.end(), evicted.begin(), evicted.end());
  return out;
}

std::vector<IngestOutcome> Memory::enforce_concept_capacity(Cycle now, const std::string& keep) {
  std::vector<IngestOutcome> out;
  while (concepts_.size() > config_.concept_capacity) {
    auto victim = concepts_.end();
    for (auto it = concepts_.begin(); it != concepts_.end(); ++it) {
      if (it->first == keep) continue;
      if (victim == concepts_.end() ||
          it->second.priority_at(now, config_.decay) < victim->second.priority_at(now, config_.decay))
        victim = it;
    }
    if (victim == concepts_.end()) break;
    for (const auto& [_, b] : victim->second.beliefs())
      out.push_back({IngestOutcome::Kind::Evicted, b.term, b.truth, b.id});
    concepts_.erase(victim);
  }
  return out;
}

void Memory::enqueue(Task task) {
  const double p = task.priority;
  pending_.push_back({p, pending_seq_++, std::move(task)});
}

std::optional<Task> Memory::select_for_processing(Cycle) {
  if (pending_.empty()) return std::nullopt;
  auto best = std::min_element(pending_.begin(), pending_.end(), [](const auto& a, const auto& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.seq < b.seq;
  });
  Task t = std::move(best->task);
  pending_.erase(best);
  return t;
}

std::vector<IngestOutcome> Memory::decay(Cycle now) {
  now_ = std::max(now_, now);
  std::vector<IngestOutcome> out;
  if (config_.priority_floor <= 0.0) return out;
  for (auto it = concepts_.begin(); it != concepts_.end();) {
    if (it->second.priority_at(now_, config_.decay) < config_.priority_floor) {
      for (const auto& [_, b] : it->second.beliefs())
        out.push_back({IngestOutcome::Kind::Evicted, b.term, b.truth, b.id});
      it = concepts_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

const Belief* Memory::find(const Term& statement) const {
  auto cit = concepts_.find(concept_key(statement).str());
  if (cit == concepts_.end()) return nullptr;
  auto bit = cit->second.beliefs().find(statement.str());
  return bit == cit->second.beliefs().end() ? nullptr : &bit->second;
}

double Memory::priority_of(const Belief& b) const {
  return b.priority * std::pow(config_.decay, static_cast<double>(std::max(now_, b.stamp) - b.stamp));
}

const Concept* Memory::concept_for(const Term& key) const {
  auto it = concepts_.find(key.str());
  return it == concepts_.end() ? nullptr : &it->second;
}

std::vector<const Belief*> Memory::beliefs() const {
  std::vector<const Belief*> out;
  for (const auto& [_, c] : concepts_)
    for (const auto& [__, b] : c.beliefs()) out.push_back(&b);
  std::sort(out.begin(), out.end(), [](const Belief* a, const Belief* b) { return a->term < b->term; });
  return out;
}

std::string Memory::dump() const {
  std::string out;
  char buf[96];
  for (const Belief* b : beliefs()) {
    std::snprintf(buf, sizeof buf, " {%.6f %.6f} @%.6f", b->truth.frequency, b->truth.confidence,
                  priority_of(*b));
    out += b->term.str();
    out += buf;
    out += '\n';
  }
  return out;
}

void Memory::load(std::string_view text) {
  concepts_.clear();
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto brace = line.rfind(" {");
    if (brace == std::string_view::npos)
      throw std::invalid_argument("dump line " + std::to_string(line_no) + ": missing truth");
    Task t;
    t.term = parse_term(line.substr(0, brace));
    double f = 0, c = 0, p = 0.9;
    std::string rest(line.substr(brace));
    if (std::sscanf(rest.c_str(), " {%lf %lf} @%lf", &f, &c, &p) < 2)
      throw std::invalid_argument("dump line " + std::to_string(line_no) + ": bad truth");
    t.truth = TruthValue{f, c};
    t.priority = p;
    ingest(t, now_);
  }
}

void Memory::clear() {
  concepts_.clear();
  events_.clear();
  pending_.clear();
  now_ = 0;
}

}  // namespace relnars
