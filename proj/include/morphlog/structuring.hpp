#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphlog/worldset.hpp"

namespace morphlog {

struct ValidationReport {
    bool symmetric = true;
    bool reflexive = true;
    std::optional<std::pair<World, World>> symmetry_witness;
    std::optional<World> reflexivity_witness;
    bool ok() const { return symmetric && reflexive; }
};

/// A structuring element is a total neighborhood map w -> B_w on the worlds
/// of a fixed alphabet. All shipped kinds are symmetric and reflexive;
/// explicit relations are validated at construction.
class StructuringElement {
public:
    enum class Kind { HammingBall, Restricted, RestrictedExact2, Explicit };

    static StructuringElement hamming_ball(int atom_count, int radius);
    /// Hamming ball of `radius` restricted to worlds agreeing with the center
    /// outside the abducible atoms given by `ab_mask`.
    static StructuringElement restricted(int atom_count, std::uint32_t ab_mask, int radius);
    /// {w} plus the worlds at Hamming distance exactly 2 agreeing outside Ab.
    static StructuringElement restricted_exact2(int atom_count, std::uint32_t ab_mask);
    /// Dense relation, one row per world. Throws Error when the relation is
    /// not symmetric or not reflexive.
    static StructuringElement explicit_relation(std::vector<WorldSet> rows);
    /// Same as explicit_relation but skips validation; used to exercise
    /// validators and postulate checkers on deliberately bad relations.
    static StructuringElement explicit_unchecked(std::vector<WorldSet> rows);

    Kind kind() const { return kind_; }
    int atom_count() const { return n_; }
    int radius() const { return radius_; }
    std::uint32_t abducible_mask() const { return ab_mask_; }

    WorldSet neighborhood(World w) const;
    WorldSet dilate(const WorldSet& ws) const;
    WorldSet erode(const WorldSet& ws) const;

    /// Exhaustive symmetry/reflexivity check with witness world pairs.
    ValidationReport validate() const;

    /// Round-trippable spec string: hamming:<r>, restricted:<atoms>:<r>,
    /// restricted2:<atoms>, explicit:<rows>.
    std::string spec_string(const Alphabet& alphabet) const;

private:
    StructuringElement(Kind kind, int atom_count)
        : kind_(kind), n_(atom_count) {}

    Kind kind_;
    int n_;
    int radius_ = 0;
    std::uint32_t ab_mask_ = 0;
    std::vector<WorldSet> rows_;

    // flip masks defining the neighborhood for Restricted/RestrictedExact2
    std::vector<std::uint32_t> flips_;
};

/// Parses `hamming:<r>`, `restricted:<atoms-comma-list>:<r>`,
/// `restricted2:<atoms-comma-list>`, `explicit:<path>`.
StructuringElement parse_se(const std::string& spec, const Alphabet& alphabet);

/// Explicit relation file: one `world_bits: neighbor_bits,...` line per world,
/// bits in binary atom order. Missing worlds default to the reflexive row.
StructuringElement load_explicit_se(const std::string& path, const Alphabet& alphabet);

}  // namespace morphlog
