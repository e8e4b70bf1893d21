#include "morphlog/merging.hpp"

#include <algorithm>
#include <limits>

#include "morphlog/errors.hpp"
#include "morphlog/rng.hpp"

namespace morphlog {

std::string aggregation_name(Aggregation agg) {
    switch (agg) {
        case Aggregation::Max: return "max";
        case Aggregation::Sum: return "sum";
        case Aggregation::Gmax: return "gmax";
    }
    return "?";
}

namespace {

// d(w, source) = min{k | w in dilate^k(source)} for every world, computed by
// walking the dilation chain to its fixed point.
std::vector<std::optional<int>> reach_depths(const WorldSet& source,
                                             const StructuringElement& se) {
    std::vector<std::optional<int>> depth(source.universe_size());
    WorldSet cur = source;
    int k = 0;
    while (true) {
        cur.for_each([&](World w) {
            if (!depth[w]) depth[w] = k;
        });
        WorldSet next = se.dilate(cur);
        if (next == cur) return depth;
        cur = next;
        ++k;
    }
}

// sorted-descending distance vector; unreachable coordinates sort first
std::vector<long long> gmax_key(const std::vector<std::optional<int>>& dists) {
    std::vector<long long> key;
    key.reserve(dists.size());
    for (const auto& d : dists)
        key.push_back(d ? static_cast<long long>(*d)
                        : std::numeric_limits<long long>::max());
    std::sort(key.rbegin(), key.rend());
    return key;
}

constexpr long long kUnreachable = std::numeric_limits<long long>::max();

}  // namespace

MergeOutcome merge(const Profile& profile, const WorldSet& mu, Aggregation agg,
                   const StructuringElement& se) {
    if (profile.members.empty()) throw EmptyProfile("merging an empty profile");
    for (const auto& member : profile.members)
        if (member.empty()) throw EmptyProfile("profile member is inconsistent");
    if (mu.empty()) throw EmptyConstraint("merging under an inconsistent constraint");

    int n = mu.atom_count();
    std::size_t m = profile.members.size();
    std::vector<std::vector<std::optional<int>>> per_source(m);
    for (std::size_t i = 0; i < m; ++i) per_source[i] = reach_depths(profile.members[i], se);

    MergeOutcome out{WorldSet(n), {}, agg, false};
    out.world_distances.resize(mu.universe_size());
    for (World w = 0; w < mu.universe_size(); ++w) {
        out.world_distances[w].resize(m);
        for (std::size_t i = 0; i < m; ++i) out.world_distances[w][i] = per_source[i][w];
    }

    if (agg == Aggregation::Gmax) {
        std::optional<std::vector<long long>> best;
        mu.for_each([&](World w) {
            auto key = gmax_key(out.world_distances[w]);
            if (!best || key < *best) best = std::move(key);
        });
        if (!best || best->front() == kUnreachable) {
            out.unreachable = true;
            return out;
        }
        mu.for_each([&](World w) {
            if (gmax_key(out.world_distances[w]) == *best) out.result.set(w);
        });
        return out;
    }

    auto score = [&](World w) -> long long {
        long long acc = 0;
        for (const auto& d : out.world_distances[w]) {
            if (!d) return kUnreachable;
            acc = agg == Aggregation::Max ? std::max(acc, static_cast<long long>(*d))
                                          : acc + *d;
        }
        return acc;
    };
    long long best = kUnreachable;
    mu.for_each([&](World w) { best = std::min(best, score(w)); });
    if (best == kUnreachable) {
        out.unreachable = true;
        return out;
    }
    mu.for_each([&](World w) {
        if (score(w) == best) out.result.set(w);
    });
    return out;
}

namespace {

// chain of dilations of `source` up to its fixed point
std::vector<WorldSet> dilation_chain(const WorldSet& source, const StructuringElement& se) {
    std::vector<WorldSet> chain{source};
    while (true) {
        WorldSet next = se.dilate(chain.back());
        if (next == chain.back()) return chain;
        chain.push_back(next);
    }
}

}  // namespace

WorldSet merge_via_dilation_tuples(const Profile& profile, const WorldSet& mu,
                                   Aggregation agg, const StructuringElement& se) {
    if (profile.members.empty()) throw EmptyProfile("merging an empty profile");
    for (const auto& member : profile.members)
        if (member.empty()) throw EmptyProfile("profile member is inconsistent");
    if (mu.empty()) throw EmptyConstraint("merging under an inconsistent constraint");

    int n = mu.atom_count();
    std::size_t m = profile.members.size();
    std::vector<std::vector<WorldSet>> chains(m);
    for (std::size_t i = 0; i < m; ++i) chains[i] = dilation_chain(profile.members[i], se);

    auto conjunction = [&](const std::vector<int>& tuple) {
        WorldSet conj = mu;
        for (std::size_t i = 0; i < m; ++i) {
            int k = std::min<int>(tuple[i], static_cast<int>(chains[i].size()) - 1);
            conj &= chains[i][k];
        }
        return conj;
    };

    if (agg == Aggregation::Max) {
        int cap = 0;
        for (const auto& chain : chains) cap = std::max<int>(cap, chain.size() - 1);
        for (int k = 0; k <= cap; ++k) {
            WorldSet conj = conjunction(std::vector<int>(m, k));
            if (!conj.empty()) return conj;
        }
        return WorldSet(n);
    }

    // enumerate all capped tuples
    std::vector<int> caps(m);
    long long tuple_count = 1;
    for (std::size_t i = 0; i < m; ++i) {
        caps[i] = static_cast<int>(chains[i].size()) - 1;
        tuple_count *= caps[i] + 1;
        if (tuple_count > 2'000'000) throw ScaleExceeded("dilation-tuple oracle too large");
    }
    std::vector<std::vector<int>> tuples;
    std::vector<int> tuple(m, 0);
    while (true) {
        tuples.push_back(tuple);
        std::size_t i = 0;
        while (i < m && tuple[i] == caps[i]) tuple[i++] = 0;
        if (i == m) break;
        ++tuple[i];
    }

    if (agg == Aggregation::Sum) {
        long long best = -1;
        WorldSet result(n);
        for (const auto& t : tuples) {
            long long s = 0;
            for (int v : t) s += v;
            if (best >= 0 && s > best) continue;
            WorldSet conj = conjunction(t);
            if (conj.empty()) continue;
            if (best < 0 || s < best) {
                best = s;
                result = conj;
            } else {
                result |= conj;
            }
        }
        return result;
    }

    // Gmax: leximax-minimal consistent tuples
    std::optional<std::vector<long long>> best;
    WorldSet result(n);
    for (const auto& t : tuples) {
        std::vector<long long> key(t.begin(), t.end());
        std::sort(key.rbegin(), key.rend());
        if (best && key > *best) continue;
        WorldSet conj = conjunction(t);
        if (conj.empty()) continue;
        if (!best || key < *best) {
            best = key;
            result = conj;
        } else {
            result |= conj;
        }
    }
    return result;
}

SymReport check_sym(const StructuringElement& se, int atom_count, int samples,
                    std::uint64_t seed) {
    SymReport report;
    int max_depth = 2 * atom_count;
    auto violates = [&](const WorldSet& phi, const WorldSet& phi2) -> std::optional<int> {
        WorldSet a = phi, b = phi2;
        for (int k = 0; k <= max_depth; ++k) {
            if (a.intersects(phi2) != b.intersects(phi)) return k;
            a = se.dilate(a);
            b = se.dilate(b);
        }
        return std::nullopt;
    };

    if (atom_count <= 3) {
        std::uint64_t universe = std::uint64_t{1} << (1 << atom_count);
        for (std::uint64_t ma = 1; ma < universe; ++ma) {
            for (std::uint64_t mb = 1; mb < universe; ++mb) {
                WorldSet phi = WorldSet::from_mask(atom_count, ma);
                WorldSet phi2 = WorldSet::from_mask(atom_count, mb);
                if (auto k = violates(phi, phi2)) {
                    report.pass = false;
                    report.phi = phi;
                    report.phi2 = phi2;
                    report.depth = *k;
                    return report;
                }
            }
        }
        return report;
    }

    Rng rng(seed);
    std::uint64_t worlds = std::uint64_t{1} << atom_count;
    for (int s = 0; s < samples; ++s) {
        WorldSet phi(atom_count), phi2(atom_count);
        int size = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < size; ++i) phi.set(static_cast<World>(rng.below(worlds)));
        for (int i = 0; i < size; ++i) phi2.set(static_cast<World>(rng.below(worlds)));
        if (auto k = violates(phi, phi2)) {
            report.pass = false;
            report.phi = phi;
            report.phi2 = phi2;
            report.depth = *k;
            return report;
        }
    }
    return report;
}

}  // namespace morphlog
