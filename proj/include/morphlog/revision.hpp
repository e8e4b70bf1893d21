#pragma once

#include <optional>

#include "morphlog/morphology.hpp"

namespace morphlog {

struct RevisionOutcome {
    WorldSet result;
    /// Dilation depth reaching psi; nullopt when no depth works (limited).
    std::optional<int> depth;
    /// True when the dilation chain hit a fixed point without meeting psi;
    /// the prior belief is then returned unchanged.
    bool limited = false;
};

/// Dilate phi stepwise until consistent with psi; credibility-limited
/// fallback on a fixed point. Throws EmptyBelief when phi is inconsistent.
RevisionOutcome revise(const WorldSet& phi, const WorldSet& psi, const StructuringElement& se);

/// Faithful order induced by successive dilations of phi (Dalal's order for
/// the unit Hamming ball).
Stratification faithful_order(const WorldSet& phi, const StructuringElement& se);

/// min(psi, <=_phi); returns phi when psi misses the last dilation.
/// Always equals revise(...).result.
WorldSet revise_via_order(const WorldSet& phi, const WorldSet& psi,
                          const StructuringElement& se);

}  // namespace morphlog
