#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morphlog/alphabet.hpp"

namespace morphlog {

/// An interpretation over N atoms, encoded as an index in [0, 2^N).
/// Bit i of the index is the truth value of atom i.
using World = std::uint32_t;

/// Set of interpretations over a fixed number of atoms, as a 2^N-bit vector.
/// Immutable in spirit: operations return new sets; in-place operators are
/// provided for hot loops.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(int atom_count);

    static WorldSet none(int atom_count) { return WorldSet(atom_count); }
    static WorldSet all(int atom_count);
    static WorldSet single(int atom_count, World w);
    /// Low `2^atom_count` bits of `mask` give the membership vector.
    /// Only valid for atom_count <= 6; used by exhaustive sweeps.
    static WorldSet from_mask(int atom_count, std::uint64_t mask);

    int atom_count() const { return n_; }
    std::uint64_t universe_size() const { return std::uint64_t{1} << n_; }

    bool test(World w) const { return (w_[w >> 6] >> (w & 63)) & 1; }
    void set(World w) { w_[w >> 6] |= std::uint64_t{1} << (w & 63); }
    void reset(World w) { w_[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }

    bool empty() const;
    std::uint64_t count() const;
    /// Smallest member; -1 when empty.
    std::int64_t first() const;
    std::uint64_t mask() const;  // atom_count <= 6 only

    WorldSet& operator|=(const WorldSet& o);
    WorldSet& operator&=(const WorldSet& o);
    WorldSet& operator-=(const WorldSet& o);
    WorldSet complement() const;

    bool subset_of(const WorldSet& o) const;
    bool intersects(const WorldSet& o) const;
    bool operator==(const WorldSet& o) const = default;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t word = w_[i];
            while (word) {
                int bit = __builtin_ctzll(word);
                f(static_cast<World>((i << 6) + bit));
                word &= word - 1;
            }
        }
    }

    std::vector<World> members() const;

    /// OR `src` into this set with all world indices xor'ed by `flip_mask`.
    /// This is the hypercube translation used by Hamming dilations.
    void or_xor_shifted(const WorldSet& src, std::uint32_t flip_mask);

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;

    void trim_tail();
};

inline WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
inline WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
inline WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

inline int hamming(World a, World b) { return __builtin_popcount(a ^ b); }

/// Minimum Hamming distance from `w` to a member of `ws`; nullopt when empty.
std::optional<int> dist_to_formula(World w, const WorldSet& ws);

/// "011" with atom order (a,b,c) means a=0, b=1, c=1: leftmost char is atom 0.
std::string world_bits(World w, int atom_count);
World parse_world_bits(const std::string& bits, int atom_count);

}  // namespace morphlog
