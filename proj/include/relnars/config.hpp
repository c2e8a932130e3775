#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relnars/engine.hpp"

namespace relnars {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads `key = value` lines (`#` starts a comment) over the defaults.
/// Keys: k, gamma, c1, lambda, concept_capacity, beliefs_per_concept,
/// buffer_capacity, precondition_horizon, outcome_horizon, threshold,
/// p_babble, depth_limit, negative_evidence, cue_location.
EngineConfig parse_config(std::string_view text, EngineConfig base = {});
EngineConfig load_config(const std::string& path, EngineConfig base = {});

/// Canonical `key=value` listing, one per line, in a fixed order.
std::string config_text(const EngineConfig& c);

/// FNV-1a (64 bit) of the canonical listing.
std::uint64_t config_hash(const EngineConfig& c);
std::string config_hash_hex(const EngineConfig& c);

/// Horizon 1 and derivation discount 0.34: a single observation induces
/// confidence 0.17.
EngineConfig calibrated_config();

}  // namespace relnars
