#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphlog/morphology.hpp"

namespace morphlog {

/// Multiset of nonempty belief bases. Order is kept for reproducible audit
/// output; all operators are order-insensitive.
struct Profile {
    std::vector<WorldSet> members;
};

enum class Aggregation { Max, Sum, Gmax };

std::string aggregation_name(Aggregation agg);

struct MergeOutcome {
    WorldSet result;
    /// d(w, phi_i) for every world and profile member; nullopt = unreachable.
    std::vector<std::vector<std::optional<int>>> world_distances;
    Aggregation aggregation;
    /// Every world of mu has an unreachable coordinate; result is empty.
    bool unreachable = false;
};

/// Distance-minimization merging within the constraint mu.
/// Throws EmptyProfile / EmptyConstraint.
MergeOutcome merge(const Profile& profile, const WorldSet& mu, Aggregation agg,
                   const StructuringElement& se);

/// Literal enumeration of minimal dilation-depth tuples; oracle for merge()
/// on small instances.
WorldSet merge_via_dilation_tuples(const Profile& profile, const WorldSet& mu,
                                   Aggregation agg, const StructuringElement& se);

struct SymReport {
    bool pass = true;
    // violating instance: dilate^n(phi) meets phi2 but not symmetrically
    WorldSet phi, phi2;
    int depth = 0;
};

/// Exhaustive when atom_count <= 3 (all nonempty set pairs, n <= 2N);
/// otherwise `samples` seeded random pairs.
SymReport check_sym(const StructuringElement& se, int atom_count, int samples = 2000,
                    std::uint64_t seed = 1);

}  // namespace morphlog
