#include "morphlog/worldset.hpp"

#include <bit>

#include "morphlog/errors.hpp"

namespace morphlog {

namespace {

std::size_t word_count(int n) {
    return n < 6 ? 1 : (std::size_t{1} << (n - 6));
}

// Bits whose world index has a 0 at position `bit`, for bit < 6.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

}  // namespace

WorldSet::WorldSet(int atom_count) : n_(atom_count), w_(word_count(atom_count), 0) {}

void WorldSet::trim_tail() {
    if (n_ < 6) w_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << n_)) - 1;
}

WorldSet WorldSet::all(int atom_count) {
    WorldSet s(atom_count);
    for (auto& w : s.w_) w = ~std::uint64_t{0};
    s.trim_tail();
    return s;
}

WorldSet WorldSet::single(int atom_count, World w) {
    WorldSet s(atom_count);
    s.set(w);
    return s;
}

WorldSet WorldSet::from_mask(int atom_count, std::uint64_t mask) {
    if (atom_count > 6) throw ScaleExceeded("from_mask needs atom_count <= 6");
    WorldSet s(atom_count);
    s.w_[0] = mask;
    s.trim_tail();
    return s;
}

std::uint64_t WorldSet::mask() const {
    if (n_ > 6) throw ScaleExceeded("mask() needs atom_count <= 6");
    return w_[0];
}

bool WorldSet::empty() const {
    for (auto w : w_)
        if (w) return false;
    return true;
}

std::uint64_t WorldSet::count() const {
    std::uint64_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

std::int64_t WorldSet::first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<std::int64_t>((i << 6) + __builtin_ctzll(w_[i]));
    return -1;
}

WorldSet& WorldSet::operator|=(const WorldSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

WorldSet& WorldSet::operator&=(const WorldSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

WorldSet& WorldSet::operator-=(const WorldSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
}

WorldSet WorldSet::complement() const {
    WorldSet s(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) s.w_[i] = ~w_[i];
    s.trim_tail();
    return s;
}

bool WorldSet::subset_of(const WorldSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

bool WorldSet::intersects(const WorldSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i]) return true;
    return false;
}

std::vector<World> WorldSet::members() const {
    std::vector<World> out;
    out.reserve(count());
    for_each([&](World w) { out.push_back(w); });
    return out;
}

void WorldSet::or_xor_shifted(const WorldSet& src, std::uint32_t flip_mask) {
    std::uint32_t low = flip_mask & 63u;
    std::uint32_t high = flip_mask >> 6;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t word = src.w_[i];
        if (!word) continue;
        // permute within the word, one index bit at a time
        for (int b = 0; b < 6 && (low >> b); ++b) {
            if (!((low >> b) & 1)) continue;
            int shift = 1 << b;
            word = ((word & kLowHalf[b]) << shift) | ((word & ~kLowHalf[b]) >> shift);
        }
        w_[i ^ high] |= word;
    }
}

std::optional<int> dist_to_formula(World w, const WorldSet& ws) {
    std::optional<int> best;
    ws.for_each([&](World v) {
        int d = hamming(w, v);
        if (!best || d < *best) best = d;
    });
    return best;
}

std::string world_bits(World w, int atom_count) {
    std::string s(atom_count, '0');
    for (int i = 0; i < atom_count; ++i)
        if ((w >> i) & 1) s[i] = '1';
    return s;
}

World parse_world_bits(const std::string& bits, int atom_count) {
    if (static_cast<int>(bits.size()) != atom_count)
        throw Error("world '" + bits + "' does not match atom count " +
                    std::to_string(atom_count));
    World w = 0;
    for (int i = 0; i < atom_count; ++i) {
        if (bits[i] == '1')
            w |= World{1} << i;
        else if (bits[i] != '0')
            throw Error("world '" + bits + "' contains a non-binary character");
    }
    return w;
}

}  // namespace morphlog
