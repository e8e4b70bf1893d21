#include "morphlog/morphology.hpp"

#include "morphlog/errors.hpp"

namespace morphlog {

WorldSet dilate(const WorldSet& ws, const StructuringElement& se) {
    return se.dilate(ws);
}

WorldSet erode(const WorldSet& ws, const StructuringElement& se) {
    return se.erode(ws);
}

WorldSet iterate(const WorldSet& ws, const StructuringElement& se, int n, IterateMode mode) {
    if (n < 0) throw Error("negative iteration depth");
    WorldSet cur = ws;
    for (int i = 0; i < n; ++i)
        cur = mode == IterateMode::Dilate ? se.dilate(cur) : se.erode(cur);
    return cur;
}

WorldSet conditional_dilate(const WorldSet& ws, const WorldSet& cond,
                            const StructuringElement& se, int n) {
    WorldSet cur = ws & cond;
    for (int i = 0; i < n; ++i) cur = se.dilate(cur) & cond;
    return cur;
}

WorldSet conditional_erode(const WorldSet& ws, const WorldSet& cond,
                           const StructuringElement& se, int n) {
    WorldSet cur = ws | cond;
    for (int i = 0; i < n; ++i) cur = se.erode(cur) | cond;
    return cur;
}

WorldSet reconstruct(const WorldSet& marker, const WorldSet& mask,
                     const StructuringElement& se) {
    WorldSet cur = marker & mask;
    while (true) {
        WorldSet next = se.dilate(cur) & mask;
        if (next == cur) return cur;
        cur = next;
    }
}

WorldSet open(const WorldSet& ws, const StructuringElement& se) {
    return se.dilate(se.erode(ws));
}

WorldSet close(const WorldSet& ws, const StructuringElement& se) {
    return se.erode(se.dilate(ws));
}

std::pair<WorldSet, int> last_erosion(const WorldSet& ws, const StructuringElement& se) {
    if (ws.empty()) throw EmptyInput("last erosion of an inconsistent formula");
    WorldSet cur = ws;
    int depth = 0;
    while (true) {
        WorldSet next = se.erode(cur);
        if (next.empty() || next == cur) return {cur, depth};
        cur = next;
        ++depth;
    }
}

std::pair<WorldSet, int> last_dilation(const WorldSet& ws, const StructuringElement& se) {
    if (ws.empty()) throw EmptyInput("last dilation of an inconsistent formula");
    WorldSet cur = ws;
    int depth = 0;
    while (true) {
        WorldSet next = se.dilate(cur);
        if (next == cur) return {cur, depth};
        cur = next;
        ++depth;
    }
}

WorldSet ultimate_erosion(const WorldSet& ws, const StructuringElement& se) {
    WorldSet out(ws.atom_count());
    WorldSet cur = ws;
    while (!cur.empty()) {
        WorldSet next = se.erode(cur);
        out |= cur - reconstruct(next, cur, se);
        if (next == cur) break;  // fixed point: later residues are empty
        cur = next;
    }
    return out;
}

namespace {

// Components of the graph w ~ v iff v in B_w. Erosion distributes over
// these parts for any symmetric reflexive SE, which makes the recursive
// ultimate-erosion algorithm sound beyond the unit Hamming ball.
std::vector<WorldSet> adjacency_components(const WorldSet& ws, const StructuringElement& se) {
    std::vector<WorldSet> out;
    WorldSet remaining = ws;
    while (!remaining.empty()) {
        WorldSet cur = WorldSet::single(ws.atom_count(),
                                        static_cast<World>(remaining.first()));
        while (true) {
            WorldSet next = se.dilate(cur) & remaining;
            if (next == cur) break;
            cur = next;
        }
        out.push_back(cur);
        remaining -= cur;
    }
    return out;
}

}  // namespace

WorldSet ultimate_erosion_components(const WorldSet& ws, const StructuringElement& se) {
    WorldSet out(ws.atom_count());
    if (ws.empty()) return out;
    std::vector<WorldSet> parts = adjacency_components(ws, se);
    if (parts.size() == 1) {
        WorldSet eroded = se.erode(ws);
        if (eroded.empty()) return ws;
        if (eroded == ws) return out;  // fixed point: no component ever disappears
        return ultimate_erosion_components(eroded, se);
    }
    for (const auto& part : parts) out |= ultimate_erosion_components(part, se);
    return out;
}

WorldSet skeleton(const WorldSet& ws, const StructuringElement& se) {
    WorldSet sk = ws - open(ws, se);
    WorldSet cur = ws;
    while (!cur.empty()) {
        WorldSet eroded = se.erode(cur);
        if (eroded == cur) break;  // fixed point: no further centers appear
        sk |= eroded - open(eroded, se);
        cur = eroded;
    }
    return sk;
}

std::vector<WorldSet> connected_components(const WorldSet& ws, const StructuringElement& se) {
    // Components of Hamming-ball SEs are always read on the unit graph.
    if (se.kind() == StructuringElement::Kind::HammingBall && se.radius() != 1)
        return adjacency_components(ws, StructuringElement::hamming_ball(ws.atom_count(), 1));
    return adjacency_components(ws, se);
}

std::pair<WorldSet, WorldSet> boundaries(const WorldSet& ws, const StructuringElement& se) {
    WorldSet external = se.dilate(ws) - ws;
    WorldSet internal = ws - se.erode(ws);
    return {external, internal};
}

WorldSet Stratification::min_of(const WorldSet& ws) const {
    int best = kInfiniteRank;
    ws.for_each([&](World w) { best = std::min(best, ranks_[w]); });
    WorldSet out(ws.atom_count());
    if (best == kInfiniteRank) return out;
    ws.for_each([&](World w) {
        if (ranks_[w] == best) out.set(w);
    });
    return out;
}

Stratification stratify(const WorldSet& sigma, const StructuringElement& se) {
    if (sigma.empty()) throw EmptyInput("stratification of an inconsistent theory");

    // erosion chain sigma = e_0 ⊇ e_1 ⊇ ... up to the last erosion
    std::vector<WorldSet> erosions{sigma};
    while (true) {
        WorldSet next = se.erode(erosions.back());
        if (next.empty() || next == erosions.back()) break;
        erosions.push_back(next);
    }
    int m = static_cast<int>(erosions.size()) - 1;

    // dilation chain up to the last dilation
    std::vector<WorldSet> dilations{sigma};
    while (true) {
        WorldSet next = se.dilate(dilations.back());
        if (next == dilations.back()) break;
        dilations.push_back(next);
    }
    int n = static_cast<int>(dilations.size()) - 1;

    std::vector<int> ranks(sigma.universe_size(), kInfiniteRank);
    for (int i = m + n; i >= 0; --i) {
        const WorldSet& level = i <= m ? erosions[m - i] : dilations[i - m];
        level.for_each([&](World w) { ranks[w] = i; });
    }
    return Stratification(std::move(ranks), m, n);
}

Stratification dilation_order(const WorldSet& phi, const StructuringElement& se) {
    if (phi.empty()) throw EmptyInput("ordering of an inconsistent formula");
    std::vector<WorldSet> dilations{phi};
    while (true) {
        WorldSet next = se.dilate(dilations.back());
        if (next == dilations.back()) break;
        dilations.push_back(next);
    }
    int n = static_cast<int>(dilations.size()) - 1;
    std::vector<int> ranks(phi.universe_size(), kInfiniteRank);
    for (int i = n; i >= 0; --i)
        dilations[i].for_each([&](World w) { ranks[w] = i; });
    return Stratification(std::move(ranks), 0, n);
}

std::optional<int> min_distance(const WorldSet& ws1, const WorldSet& ws2,
                                const StructuringElement& se) {
    if (ws1.empty() || ws2.empty()) return std::nullopt;
    WorldSet cur = ws1;
    int n = 0;
    while (true) {
        if (cur.intersects(ws2)) return n;
        WorldSet next = se.dilate(cur);
        if (next == cur) return std::nullopt;
        cur = next;
        ++n;
    }
}

std::optional<int> hausdorff(const WorldSet& ws1, const WorldSet& ws2,
                             const StructuringElement& se) {
    if (ws1.empty() || ws2.empty()) return std::nullopt;
    WorldSet d1 = ws1, d2 = ws2;
    int n = 0;
    while (true) {
        if (ws1.subset_of(d2) && ws2.subset_of(d1)) return n;
        WorldSet n1 = se.dilate(d1);
        WorldSet n2 = se.dilate(d2);
        if (n1 == d1 && n2 == d2) return std::nullopt;
        d1 = n1;
        d2 = n2;
        ++n;
    }
}

}  // namespace morphlog
