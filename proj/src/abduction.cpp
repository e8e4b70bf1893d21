#include "morphlog/abduction.hpp"

#include "morphlog/errors.hpp"

namespace morphlog {

std::string relation_name(Relation rel) {
    switch (rel) {
        case Relation::Lneu: return "lneu";
        case Relation::Lned: return "lned";
        case Relation::Lc: return "lc";
        case Relation::F: return "f";
        case Relation::Ue: return "ue";
    }
    return "?";
}

Relation parse_relation(const std::string& name) {
    if (name == "lneu") return Relation::Lneu;
    if (name == "lned") return Relation::Lned;
    if (name == "lc") return Relation::Lc;
    if (name == "f") return Relation::F;
    if (name == "ue") return Relation::Ue;
    throw Error("unknown explanatory relation '" + name + "'");
}

TheoryContext::TheoryContext(WorldSet sigma, StructuringElement se)
    : sigma_(std::move(sigma)), se_(std::move(se)), strat_(stratify(sigma_, se_)) {}

std::pair<WorldSet, int> last_consistent_erosion(const TheoryContext& ctx,
                                                 const WorldSet& alpha) {
    if (!ctx.sigma().intersects(alpha))
        throw InconsistentObservation("observation is inconsistent with the theory");
    WorldSet cur = ctx.sigma();
    int depth = 0;
    while (true) {
        WorldSet next = ctx.se().erode(cur);
        if (next == cur || !next.intersects(alpha)) return {cur, depth};
        cur = next;
        ++depth;
    }
}

namespace {

WorldSet trace(const TheoryContext& ctx, const WorldSet& gamma) {
    return ctx.sigma() & gamma;
}

}  // namespace

bool explains(const TheoryContext& ctx, const WorldSet& gamma, const WorldSet& alpha,
              Relation rel) {
    if (gamma.empty()) throw InconsistentExplanans("explanans is inconsistent");
    if (rel == Relation::F) return explains_f(ctx, gamma, alpha);
    WorldSet core = preferred_explanation(ctx, alpha, rel).core;
    WorldSet x = trace(ctx, gamma);
    return rel == Relation::Lneu ? x == core : x.subset_of(core);
}

ExplanationResult preferred_explanation(const TheoryContext& ctx, const WorldSet& alpha,
                                        Relation rel) {
    switch (rel) {
        case Relation::Lneu:
        case Relation::Lned: {
            WorldSet obs = ctx.sigma() & alpha;
            if (obs.empty())
                throw InconsistentObservation("observation is inconsistent with the theory");
            auto [core, depth] = last_erosion(obs, ctx.se());
            return {core, rel, depth};
        }
        case Relation::Lc: {
            auto [eroded, depth] = last_consistent_erosion(ctx, alpha);
            return {eroded & alpha, rel, depth};
        }
        case Relation::Ue: {
            WorldSet obs = ctx.sigma() & alpha;
            if (obs.empty())
                throw InconsistentObservation("observation is inconsistent with the theory");
            auto [last, depth] = last_erosion(obs, ctx.se());
            (void)last;
            return {ultimate_erosion(obs, ctx.se()), rel, depth};
        }
        case Relation::F: {
            if (alpha.empty()) throw EmptyObservation("empty observation");
            WorldSet core = central(ctx, alpha);
            int depth = kInfiniteRank;
            core.for_each([&](World w) {
                depth = std::min(depth, ctx.stratification().rank(w));
            });
            if (depth == kInfiniteRank) depth = 0;  // revision fallback returned Sigma
            return {core, rel, depth};
        }
    }
    throw Error("unreachable");
}

WorldSet central(const TheoryContext& ctx, const WorldSet& alpha) {
    if (alpha.empty()) throw EmptyObservation("empty observation");
    WorldSet minima = ctx.stratification().min_of(alpha);
    return minima.empty() ? ctx.sigma() : minima;
}

bool explains_f(const TheoryContext& ctx, const WorldSet& gamma, const WorldSet& alpha) {
    if (gamma.empty()) throw InconsistentExplanans("explanans is inconsistent");
    if (alpha.empty()) throw EmptyObservation("empty observation");
    return gamma.subset_of(central(ctx, alpha));
}

WorldSet revise_f(const TheoryContext& ctx, const WorldSet& alpha) {
    return central(ctx, alpha);
}

}  // namespace morphlog
