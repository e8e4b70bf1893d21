#include "morphlog/revision.hpp"

#include "morphlog/errors.hpp"

namespace morphlog {

RevisionOutcome revise(const WorldSet& phi, const WorldSet& psi, const StructuringElement& se) {
    if (phi.empty()) throw EmptyBelief("revision of an inconsistent belief");
    WorldSet cur = phi;
    int depth = 0;
    while (true) {
        if (cur.intersects(psi)) return {cur & psi, depth, false};
        WorldSet next = se.dilate(cur);
        if (next == cur) return {phi, std::nullopt, true};
        cur = next;
        ++depth;
    }
}

Stratification faithful_order(const WorldSet& phi, const StructuringElement& se) {
    if (phi.empty()) throw EmptyBelief("ordering of an inconsistent belief");
    return dilation_order(phi, se);
}

WorldSet revise_via_order(const WorldSet& phi, const WorldSet& psi,
                          const StructuringElement& se) {
    WorldSet minima = faithful_order(phi, se).min_of(psi);
    return minima.empty() ? phi : minima;
}

}  // namespace morphlog
