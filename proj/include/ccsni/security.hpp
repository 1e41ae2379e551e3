#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ccsni/equiv.hpp"
#include "ccsni/lts.hpp"

namespace ccsni {

struct AttackerNotHigh : std::runtime_error {
  explicit AttackerNotHigh(const std::string& channel)
      : std::runtime_error("attacker uses non-high channel " + channel),
        channel(channel) {}
  std::string channel;
};

enum class SecStatus { Secure, Insecure, NoCounterexampleUpToBound };

struct SecurityVerdict {
  SecStatus status = SecStatus::Secure;
  ProcPtr witness_attacker;        // Bndc: the refuting attacker
  std::optional<Verdict> witness;  // the failed equivalence check
  int k = 0, w = 0;                // Bndc bounds used
};

/// (vH)P up-to-high-bisimilar to P. Exact.
SecurityVerdict check_pbndc(const Program& prog,
                            std::size_t cap = kDefaultStateCap);

/// (vH)(P | Phi_A) refined-up-to-high-bisimilar to P, with A the free high
/// names of main. Exact.
SecurityVerdict check_wbndc(const Program& prog,
                            std::size_t cap = kDefaultStateCap);

/// Bounded refutation of BNDC: enumerates high attackers up to constructor
/// depth k and width w (sum/par arity), deduplicated up to canonical form,
/// and reports the enumeration-least one with (vH)(P|Pi) not weakly
/// bisimilar to (vH)P. Never returns Secure.
SecurityVerdict check_bndc(const Program& prog, int k, int w,
                           std::size_t cap = kDefaultStateCap);

/// Single-attacker BNDC instance. Throws AttackerNotHigh unless every prefix
/// of the attacker (and of any agent it calls) is at level h.
SecurityVerdict check_bndc_with(const Program& prog, const ProcPtr& attacker,
                                std::size_t cap = kDefaultStateCap);

/// The deterministic attacker enumeration used by check_bndc.
std::vector<ProcPtr> enumerate_attackers(const Program& prog, int k, int w);

}  // namespace ccsni
