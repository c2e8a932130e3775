#pragma once

#include <string>

namespace relnars {

/// Frequency/confidence pair. Confidence stays strictly below one.
struct TruthValue {
  double frequency = 1.0;
  double confidence = 0.9;

  friend bool operator==(const TruthValue&, const TruthValue&) = default;
};

/// Evidential horizon `k` and the per-derivation discount applied to
/// deduced and induced confidences.
struct EvidenceParams {
  double horizon = 1.0;
  double derivation_discount = 1.0;

  bool valid() const;
};

/// `{f c}` with two decimals, as used in traces.
std::string to_string(const TruthValue& t);

namespace truth {

double to_weight(double confidence, const EvidenceParams& p);
double to_confidence(double weight, const EvidenceParams& p);

/// Pools independent evidence about one statement.
TruthValue revise(const TruthValue& a, const TruthValue& b, const EvidenceParams& p);

TruthValue deduce(const TruthValue& a, const TruthValue& b, const EvidenceParams& p);

/// Truth of a pattern seen `count` times without counter-evidence.
TruthValue induce_single(int count, const EvidenceParams& p);

/// Truth of an equivalence formed from two beliefs sharing structure.
TruthValue compare(const TruthValue& a, const TruthValue& b, const EvidenceParams& p);

/// Joint truth of two premises used together (conjunction antecedent).
TruthValue intersect(const TruthValue& a, const TruthValue& b);

double expectation(const TruthValue& t);

}  // namespace truth
}  // namespace relnars
