#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "morphlog/structuring.hpp"
#include "morphlog/worldset.hpp"

namespace morphlog {

enum class IterateMode { Dilate, Erode };

/// dilate: worlds whose neighborhood meets `ws`.
/// erode: worlds whose neighborhood is contained in `ws`.
WorldSet dilate(const WorldSet& ws, const StructuringElement& se);
WorldSet erode(const WorldSet& ws, const StructuringElement& se);

/// n-fold application; n = 0 is the identity.
WorldSet iterate(const WorldSet& ws, const StructuringElement& se, int n, IterateMode mode);

/// Geodesic operators: start from ws&cond (dilate) / ws|cond (erode), then n
/// alternations of the unit step with the conditioning set.
WorldSet conditional_dilate(const WorldSet& ws, const WorldSet& cond,
                            const StructuringElement& se, int n);
WorldSet conditional_erode(const WorldSet& ws, const WorldSet& cond,
                           const StructuringElement& se, int n);

/// Conditional dilation of `marker` inside `mask`, iterated to the fixed
/// point: the union of the components of `mask` that meet `marker`.
WorldSet reconstruct(const WorldSet& marker, const WorldSet& mask,
                     const StructuringElement& se);

WorldSet open(const WorldSet& ws, const StructuringElement& se);
WorldSet close(const WorldSet& ws, const StructuringElement& se);

/// Deepest erosion that is still nonempty, or the first fixed point.
/// Returns the set and the smallest depth at which it is reached.
std::pair<WorldSet, int> last_erosion(const WorldSet& ws, const StructuringElement& se);

/// Dual: dilate until the first repeated set (the full set or a fixed point).
std::pair<WorldSet, int> last_dilation(const WorldSet& ws, const StructuringElement& se);

/// Union over n of erosion residues not reconstructible from the next
/// erosion. Computed from the definition.
WorldSet ultimate_erosion(const WorldSet& ws, const StructuringElement& se);
/// Same set, by the recursive connected-component algorithm.
WorldSet ultimate_erosion_components(const WorldSet& ws, const StructuringElement& se);

/// Loop Sk := (phi & !O(phi)) | ... over successive erosions. For Hamming
/// balls this is the set of centers of maximal balls contained in ws.
WorldSet skeleton(const WorldSet& ws, const StructuringElement& se);

/// Partition of ws under se-adjacency, ordered by smallest member index.
std::vector<WorldSet> connected_components(const WorldSet& ws, const StructuringElement& se);

/// (external, internal) boundary: dilate(ws)&!ws and ws&!erode(ws).
std::pair<WorldSet, WorldSet> boundaries(const WorldSet& ws, const StructuringElement& se);

constexpr int kInfiniteRank = std::numeric_limits<int>::max();

/// Total pre-order on worlds from the nested levels
/// e^m(S) = T_0 <= ... <= T_m = S <= ... <= T_{m+n} = d^n(S).
/// rank(w) is the least level containing w; worlds outside the last dilation
/// get kInfiniteRank.
class Stratification {
public:
    Stratification(std::vector<int> ranks, int erosion_depth, int dilation_depth)
        : ranks_(std::move(ranks)),
          erosion_depth_(erosion_depth),
          dilation_depth_(dilation_depth) {}

    int rank(World w) const { return ranks_[w]; }
    int erosion_depth() const { return erosion_depth_; }
    int dilation_depth() const { return dilation_depth_; }
    std::size_t world_count() const { return ranks_.size(); }

    bool leq(World a, World b) const { return ranks_[a] <= ranks_[b]; }

    /// Worlds of `ws` with minimal finite rank; empty when no member has a
    /// finite rank.
    WorldSet min_of(const WorldSet& ws) const;

private:
    std::vector<int> ranks_;
    int erosion_depth_;
    int dilation_depth_;
};

/// Morphological ordering of a nonempty theory: erosion side then dilation
/// side. Throws EmptyInput.
Stratification stratify(const WorldSet& sigma, const StructuringElement& se);

/// Dilation-side-only ordering: rank(w) = min{k | w in d^k(phi)}.
Stratification dilation_order(const WorldSet& phi, const StructuringElement& se);

/// Smallest n with d^n(ws1) meeting ws2 (minimum pairwise distance when the
/// SE is hamming:1); nullopt when never reached.
std::optional<int> min_distance(const WorldSet& ws1, const WorldSet& ws2,
                                const StructuringElement& se);
/// Smallest n with ws1 in d^n(ws2) and ws2 in d^n(ws1); nullopt when never.
std::optional<int> hausdorff(const WorldSet& ws1, const WorldSet& ws2,
                             const StructuringElement& se);

}  // namespace morphlog
