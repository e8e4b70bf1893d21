#pragma once

#include <string>
#include <utility>

#include "morphlog/morphology.hpp"

namespace morphlog {

/// Which explanatory relation a query uses.
///   Lneu: gamma equivalent (modulo Sigma) to the last erosion of Sigma&alpha
///   Lned: gamma entails (modulo Sigma) the last erosion of Sigma&alpha
///   Lc:   gamma entails (modulo Sigma) the last alpha-consistent erosion of
///         Sigma, conjoined with alpha
///   F:    gamma entails the central set C(alpha) of the unified framework
///   Ue:   Lned-style entailment into the ultimate erosion of Sigma&alpha
enum class Relation { Lneu, Lned, Lc, F, Ue };

std::string relation_name(Relation rel);
Relation parse_relation(const std::string& name);

/// Immutable background theory with its cached morphological ordering.
class TheoryContext {
public:
    TheoryContext(WorldSet sigma, StructuringElement se);

    const WorldSet& sigma() const { return sigma_; }
    const StructuringElement& se() const { return se_; }
    const Stratification& stratification() const { return strat_; }
    int atom_count() const { return sigma_.atom_count(); }

private:
    WorldSet sigma_;
    StructuringElement se_;
    Stratification strat_;
};

struct ExplanationResult {
    WorldSet core;
    Relation relation;
    int depth;
};

/// Erode Sigma as long as the result stays consistent with alpha (or until a
/// fixed point). Throws InconsistentObservation when Sigma&alpha is empty.
std::pair<WorldSet, int> last_consistent_erosion(const TheoryContext& ctx,
                                                 const WorldSet& alpha);

/// The defining entailment/equivalence of the chosen relation, evaluated
/// modulo Sigma (for F: plain entailment into C(alpha)).
bool explains(const TheoryContext& ctx, const WorldSet& gamma, const WorldSet& alpha,
              Relation rel);

/// Canonical explanation core; membership in PE/PPE is decided by explains().
ExplanationResult preferred_explanation(const TheoryContext& ctx, const WorldSet& alpha,
                                        Relation rel);

/// C(alpha): minimal-rank worlds of alpha under the morphological ordering,
/// or Sigma itself when alpha misses the last dilation of Sigma.
WorldSet central(const TheoryContext& ctx, const WorldSet& alpha);

bool explains_f(const TheoryContext& ctx, const WorldSet& gamma, const WorldSet& alpha);
WorldSet revise_f(const TheoryContext& ctx, const WorldSet& alpha);

}  // namespace morphlog
