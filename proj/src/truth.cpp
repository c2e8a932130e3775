#include "relnars/truth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace relnars {

bool EvidenceParams::valid() const {
  return std::isfinite(horizon) && horizon > 0.0 && derivation_discount > 0.0 &&
         derivation_discount <= 1.0;
}

std::string to_string(const TruthValue& t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "{%.2f %.2f}", t.frequency, t.confidence);
  return buf;
}

namespace truth {

double to_weight(double confidence, const EvidenceParams& p) {
  return p.horizon * confidence / (1.0 - confidence);
}

double to_confidence(double weight, const EvidenceParams& p) {
  return weight / (weight + p.horizon);
}

TruthValue revise(const TruthValue& a, const TruthValue& b, const EvidenceParams& p) {
  const double wa = to_weight(a.confidence, p);
  const double wb = to_weight(b.confidence, p);
  const double w = wa + wb;
  if (w <= 0.0) return {a.frequency, 0.0};
  const double f = (wa * a.frequency + wb * b.frequency) / w;
  // Rounding in the weight round trip must not make confidence drop.
  const double c = std::max({to_confidence(w, p), a.confidence, b.confidence});
  return {std::clamp(f, 0.0, 1.0), c};
}

TruthValue deduce(const TruthValue& a, const TruthValue& b, const EvidenceParams& p) {
  const double f = a.frequency * b.frequency;
  return {f, f * a.confidence * b.confidence * p.derivation_discount};
}

TruthValue induce_single(int count, const EvidenceParams& p) {
  if (count <= 0) return {1.0, 0.0};
  const double n = count;
  return {1.0, p.derivation_discount * n / (n + p.horizon)};
}

TruthValue compare(const TruthValue& a, const TruthValue& b, const EvidenceParams& p) {
  const double either = a.frequency + b.frequency - a.frequency * b.frequency;
  const double f = either > 0.0 ? a.frequency * b.frequency / either : 0.0;
  const double c = to_confidence(either * a.confidence * b.confidence, p);
  return {f, std::min({c, a.confidence, b.confidence})};
}

TruthValue intersect(const TruthValue& a, const TruthValue& b) {
  return {a.frequency * b.frequency, a.confidence * b.confidence};
}

double expectation(const TruthValue& t) { return t.confidence * (t.frequency - 0.5) + 0.5; }

}  // namespace truth
}  // namespace relnars
