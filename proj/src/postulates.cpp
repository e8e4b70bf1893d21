#include "morphlog/postulates.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "morphlog/errors.hpp"
#include "morphlog/normal_forms.hpp"
#include "morphlog/rng.hpp"

namespace morphlog {

namespace {

std::string formula_string(const WorldSet& ws, const Alphabet& alphabet) {
    return render_dnf(minimize_dnf(ws, alphabet.size()), alphabet);
}

std::string formula_string(std::uint64_t mask, const Alphabet& alphabet) {
    return formula_string(WorldSet::from_mask(alphabet.size(), mask), alphabet);
}

std::string mode_string(const CheckConfig& cfg) {
    if (cfg.mode == CheckMode::Exhaustive) return "exhaustive";
    return "sampled(seed=" + std::to_string(cfg.seed) +
           ",count=" + std::to_string(cfg.samples) + ")";
}

// Deterministic sweep driver. `eval(i)` inspects instance i and returns a
// witness if it violates the postulate. Parallel chunks merge by instance
// index, so the report does not depend on the job count.
PostulateReport run_sweep(std::string postulate, std::string subject, std::string coverage,
                          const CheckConfig& cfg, long long total,
                          const std::function<std::optional<Witness>(long long)>& eval) {
    PostulateReport report{std::move(postulate), std::move(subject), mode_string(cfg),
                           std::move(coverage), true, {}};
    if (cfg.budget > 0 && total > cfg.budget) {
        total = cfg.budget;
        report.coverage += " (budget " + std::to_string(cfg.budget) + ")";
    }

    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || total < 4096) {
        for (long long i = 0; i < total; ++i) {
            if (auto w = eval(i)) {
                report.holds = false;
                report.witnesses.push_back(std::move(*w));
                if (static_cast<int>(report.witnesses.size()) >= cfg.max_witnesses) break;
            }
        }
        return report;
    }

    std::vector<std::vector<std::pair<long long, Witness>>> found(jobs);
    std::vector<std::thread> threads;
    long long chunk = (total + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t]() {
            long long lo = t * chunk, hi = std::min(total, lo + chunk);
            for (long long i = lo; i < hi; ++i)
                if (auto w = eval(i)) {
                    found[t].emplace_back(i, std::move(*w));
                    if (static_cast<int>(found[t].size()) >= cfg.max_witnesses) break;
                }
        });
    }
    for (auto& th : threads) th.join();
    std::vector<std::pair<long long, Witness>> merged;
    for (auto& part : found)
        for (auto& item : part) merged.push_back(std::move(item));
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& item : merged) {
        report.holds = false;
        report.witnesses.push_back(std::move(item.second));
        if (static_cast<int>(report.witnesses.size()) >= cfg.max_witnesses) break;
    }
    return report;
}

Rng instance_rng(const CheckConfig& cfg, long long index) {
    return Rng(cfg.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1));
}

std::uint64_t random_nonempty_mask(Rng& rng, std::uint64_t universe) {
    return 1 + rng.below(universe - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Revision
// ---------------------------------------------------------------------------

namespace {

struct RevisionInstance {
    WorldSet phi, psi, theta;
    bool has_theta = false;
};

Witness revision_witness(const RevisionInstance& inst, const RevisionOutcome& out,
                         const Alphabet& alphabet, const std::string& note) {
    Witness w;
    w.inputs.emplace_back("phi", formula_string(inst.phi, alphabet));
    w.inputs.emplace_back("psi", formula_string(inst.psi, alphabet));
    if (inst.has_theta) w.inputs.emplace_back("theta", formula_string(inst.theta, alphabet));
    w.outputs.emplace_back("result", formula_string(out.result, alphabet));
    w.outputs.emplace_back("limited", out.limited ? "true" : "false");
    w.outputs.emplace_back("note", note);
    return w;
}

}  // namespace

std::vector<PostulateReport> check_revision(const RevisionOp& op, const std::string& subject,
                                            const Alphabet& alphabet, const CheckConfig& cfg) {
    int n = cfg.atom_count;
    std::uint64_t universe = std::uint64_t{1} << (std::uint64_t{1} << n);
    long long nonempty = static_cast<long long>(universe - 1);
    bool exhaustive = cfg.mode == CheckMode::Exhaustive;
    if (n > 3) throw ScaleExceeded("revision checks supported up to 3 atoms");

    auto pair_instance = [&](long long i) {
        RevisionInstance inst;
        if (exhaustive) {
            inst.phi = WorldSet::from_mask(n, 1 + i / nonempty);
            inst.psi = WorldSet::from_mask(n, 1 + i % nonempty);
        } else {
            Rng rng = instance_rng(cfg, i);
            inst.phi = WorldSet::from_mask(n, random_nonempty_mask(rng, universe));
            inst.psi = WorldSet::from_mask(n, random_nonempty_mask(rng, universe));
        }
        return inst;
    };
    auto triple_instance = [&](long long i) {
        RevisionInstance inst;
        inst.has_theta = true;
        if (exhaustive) {
            long long pair = i / static_cast<long long>(universe);
            inst.phi = WorldSet::from_mask(n, 1 + pair / nonempty);
            inst.psi = WorldSet::from_mask(n, 1 + pair % nonempty);
            inst.theta = WorldSet::from_mask(n, i % static_cast<long long>(universe));
        } else {
            Rng rng = instance_rng(cfg, i);
            inst.phi = WorldSet::from_mask(n, random_nonempty_mask(rng, universe));
            inst.psi = WorldSet::from_mask(n, random_nonempty_mask(rng, universe));
            inst.theta = WorldSet::from_mask(n, rng.below(universe));
        }
        return inst;
    };

    long long pair_total = exhaustive ? nonempty * nonempty : cfg.samples;
    long long triple_total =
        exhaustive ? nonempty * nonempty * static_cast<long long>(universe) : cfg.samples;
    std::string pair_cov = "nonempty (phi,psi) pairs at N=" + std::to_string(n);
    std::string triple_cov = "nonempty (phi,psi), all theta at N=" + std::to_string(n);

    std::vector<PostulateReport> reports;

    reports.push_back(run_sweep("R1", subject, pair_cov, cfg, pair_total,
        [&](long long i) -> std::optional<Witness> {
            auto inst = pair_instance(i);
            auto out = op(inst.phi, inst.psi);
            if (out.result.subset_of(inst.psi)) return std::nullopt;
            return revision_witness(inst, out, alphabet, "result does not entail psi");
        }));

    reports.push_back(run_sweep("R2", subject, pair_cov, cfg, pair_total,
        [&](long long i) -> std::optional<Witness> {
            auto inst = pair_instance(i);
            WorldSet both = inst.phi & inst.psi;
            if (both.empty()) return std::nullopt;
            auto out = op(inst.phi, inst.psi);
            if (out.result == both) return std::nullopt;
            return revision_witness(inst, out, alphabet, "phi&psi consistent but not returned");
        }));

    reports.push_back(run_sweep("R3", subject, pair_cov, cfg, pair_total,
        [&](long long i) -> std::optional<Witness> {
            auto inst = pair_instance(i);
            auto out = op(inst.phi, inst.psi);
            if (!out.result.empty()) return std::nullopt;
            return revision_witness(inst, out, alphabet, "inconsistent result");
        }));

    {
        PostulateReport r4{"R4", subject, mode_string(cfg),
                           "structural: operator consumes model sets; equivalent formulas "
                           "have identical model sets",
                           true, {}};
        reports.push_back(std::move(r4));
    }

    reports.push_back(run_sweep("R5", subject, triple_cov, cfg, triple_total,
        [&](long long i) -> std::optional<Witness> {
            auto inst = triple_instance(i);
            WorldSet lhs = op(inst.phi, inst.psi).result & inst.theta;
            WorldSet rhs = op(inst.phi, inst.psi & inst.theta).result;
            if (lhs.subset_of(rhs)) return std::nullopt;
            return revision_witness(inst, op(inst.phi, inst.psi), alphabet,
                                    "(phi . psi) & theta does not entail phi . (psi & theta)");
        }));

    reports.push_back(run_sweep("R6", subject, triple_cov, cfg, triple_total,
        [&](long long i) -> std::optional<Witness> {
            auto inst = triple_instance(i);
            WorldSet lhs = op(inst.phi, inst.psi).result & inst.theta;
            if (lhs.empty()) return std::nullopt;
            WorldSet rhs = op(inst.phi, inst.psi & inst.theta).result;
            if (rhs.subset_of(lhs)) return std::nullopt;
            return revision_witness(inst, op(inst.phi, inst.psi & inst.theta), alphabet,
                                    "phi . (psi & theta) does not entail (phi . psi) & theta");
        }));

    reports.push_back(run_sweep("modified-success", subject, pair_cov, cfg, pair_total,
        [&](long long i) -> std::optional<Witness> {
            auto inst = pair_instance(i);
            auto out = op(inst.phi, inst.psi);
            if (out.result.subset_of(inst.psi) || out.result == inst.phi) return std::nullopt;
            return revision_witness(inst, out, alphabet,
                                    "result neither entails psi nor equals phi");
        }));

    return reports;
}

// ---------------------------------------------------------------------------
// Merging
// ---------------------------------------------------------------------------

namespace {

// Memoizes merge results on mask-encoded instances (N <= 2: a profile of at
// most four 4-bit member masks plus a 4-bit constraint packs into 24 bits).
class MergeCache {
public:
    MergeCache(Aggregation agg, const StructuringElement& se, int n)
        : agg_(agg), se_(se), n_(n) {}

    std::uint64_t merged(std::vector<std::uint64_t> members, std::uint64_t mu) {
        std::sort(members.begin(), members.end());
        std::uint64_t key = mu;
        for (auto m : members) key = (key << (std::uint64_t{1} << n_)) | m;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Profile profile;
        for (auto m : members) profile.members.push_back(WorldSet::from_mask(n_, m));
        std::uint64_t result =
            merge(profile, WorldSet::from_mask(n_, mu), agg_, se_).result.mask();
        cache_.emplace(key, result);
        return result;
    }

private:
    Aggregation agg_;
    const StructuringElement& se_;
    int n_;
    std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

struct MergeWitnessInput {
    std::vector<std::uint64_t> e1, e2;
    std::uint64_t mu1 = 0, mu2 = 0;
    bool has_e2 = false, has_mu2 = false;
};

std::string profile_string(const std::vector<std::uint64_t>& members,
                           const Alphabet& alphabet) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += "; ";
        out += formula_string(members[i], alphabet);
    }
    return out + "}";
}

Witness merge_witness(const MergeWitnessInput& in, const Alphabet& alphabet,
                      const std::vector<std::pair<std::string, std::uint64_t>>& outs,
                      const std::string& note) {
    Witness w;
    w.inputs.emplace_back("E1", profile_string(in.e1, alphabet));
    if (in.has_e2) w.inputs.emplace_back("E2", profile_string(in.e2, alphabet));
    w.inputs.emplace_back("mu", formula_string(in.mu1, alphabet));
    if (in.has_mu2) w.inputs.emplace_back("mu2", formula_string(in.mu2, alphabet));
    for (const auto& [key, mask] : outs)
        w.outputs.emplace_back(key, formula_string(mask, alphabet));
    w.outputs.emplace_back("note", note);
    return w;
}

}  // namespace

std::vector<PostulateReport> check_merging(Aggregation agg, const StructuringElement& se,
                                           const Alphabet& alphabet, const CheckConfig& cfg_in) {
    // the shared merge memo below is not synchronized
    CheckConfig cfg = cfg_in;
    cfg.jobs = 1;
    int n = cfg.atom_count;
    bool exhaustive = cfg.mode == CheckMode::Exhaustive;
    if (exhaustive && n > 2)
        throw ScaleExceeded("exhaustive merging checks supported up to 2 atoms");
    if (n > 3) throw ScaleExceeded("merging checks supported up to 3 atoms");
    std::uint64_t universe = std::uint64_t{1} << (std::uint64_t{1} << n);
    long long nonempty = static_cast<long long>(universe - 1);
    std::string subject = "merge:" + aggregation_name(agg) + ":" + se.spec_string(alphabet);

    MergeCache cache(agg, se, n);
    auto merged = [&](const std::vector<std::uint64_t>& members, std::uint64_t mu) {
        return cache.merged(members, mu);
    };

    // profiles of size 1 and 2 (multisets)
    std::vector<std::vector<std::uint64_t>> profiles;
    if (exhaustive) {
        for (std::uint64_t a = 1; a < universe; ++a) profiles.push_back({a});
        for (std::uint64_t a = 1; a < universe; ++a)
            for (std::uint64_t b = a; b < universe; ++b) profiles.push_back({a, b});
    }
    long long p_count = static_cast<long long>(profiles.size());

    auto sampled_profile = [&](Rng& rng, int min_size, int max_size) {
        std::vector<std::uint64_t> members;
        int size = min_size + static_cast<int>(rng.below(max_size - min_size + 1));
        for (int i = 0; i < size; ++i) members.push_back(random_nonempty_mask(rng, universe));
        return members;
    };

    std::vector<PostulateReport> reports;
    std::string base_cov =
        exhaustive ? "profiles of size <= 2 over all nonempty sets at N=" + std::to_string(n)
                   : "profiles of size 2-4 at N=" + std::to_string(n);

    // IC0: result entails mu; IC1: consistent when mu is; IC2: conjunction case
    auto simple_total = exhaustive ? p_count * nonempty : cfg.samples;
    auto simple_instance = [&](long long i, std::vector<std::uint64_t>& e, std::uint64_t& mu) {
        if (exhaustive) {
            e = profiles[i / nonempty];
            mu = 1 + static_cast<std::uint64_t>(i % nonempty);
        } else {
            Rng rng = instance_rng(cfg, i);
            e = sampled_profile(rng, 2, 4);
            mu = random_nonempty_mask(rng, universe);
        }
    };

    reports.push_back(run_sweep("IC0", subject, base_cov, cfg, simple_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e;
            std::uint64_t mu;
            simple_instance(i, e, mu);
            std::uint64_t r = merged(e, mu);
            if ((r & ~mu) == 0) return std::nullopt;
            return merge_witness({e, {}, mu}, alphabet, {{"result", r}},
                                 "result does not entail mu");
        }));

    reports.push_back(run_sweep("IC1", subject, base_cov, cfg, simple_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e;
            std::uint64_t mu;
            simple_instance(i, e, mu);
            std::uint64_t r = merged(e, mu);
            if (r != 0) return std::nullopt;
            return merge_witness({e, {}, mu}, alphabet, {{"result", r}},
                                 "inconsistent result under consistent mu");
        }));

    reports.push_back(run_sweep("IC2", subject, base_cov, cfg, simple_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e;
            std::uint64_t mu;
            simple_instance(i, e, mu);
            std::uint64_t conj = mu;
            for (auto m : e) conj &= m;
            if (conj == 0) return std::nullopt;
            std::uint64_t r = merged(e, mu);
            if (r == conj) return std::nullopt;
            return merge_witness({e, {}, mu}, alphabet, {{"result", r}, {"conjunction", conj}},
                                 "consistent conjunction not returned");
        }));

    reports.push_back(run_sweep("IC3", subject, base_cov + " (member permutations)", cfg,
        exhaustive ? static_cast<long long>(nonempty) * nonempty * nonempty : cfg.samples,
        [&](long long i) -> std::optional<Witness> {
            std::uint64_t a, b, mu;
            if (exhaustive) {
                a = 1 + static_cast<std::uint64_t>(i % nonempty);
                b = 1 + static_cast<std::uint64_t>((i / nonempty) % nonempty);
                mu = 1 + static_cast<std::uint64_t>(i / (nonempty * nonempty));
            } else {
                Rng rng = instance_rng(cfg, i);
                a = random_nonempty_mask(rng, universe);
                b = random_nonempty_mask(rng, universe);
                mu = random_nonempty_mask(rng, universe);
            }
            std::uint64_t r1 = merged({a, b}, mu);
            std::uint64_t r2 = merged({b, a}, mu);
            if (r1 == r2) return std::nullopt;
            return merge_witness({{a, b}, {}, mu}, alphabet, {{"result", r1}, {"permuted", r2}},
                                 "order sensitivity");
        }));

    reports.push_back(run_sweep("IC4", subject, base_cov + " with phi_i entailing mu", cfg,
        exhaustive ? static_cast<long long>(nonempty) * nonempty * nonempty : cfg.samples,
        [&](long long i) -> std::optional<Witness> {
            std::uint64_t a, b, mu;
            if (exhaustive) {
                a = 1 + static_cast<std::uint64_t>(i % nonempty);
                b = 1 + static_cast<std::uint64_t>((i / nonempty) % nonempty);
                mu = 1 + static_cast<std::uint64_t>(i / (nonempty * nonempty));
            } else {
                Rng rng = instance_rng(cfg, i);
                mu = random_nonempty_mask(rng, universe);
                a = random_nonempty_mask(rng, universe) & mu;
                b = random_nonempty_mask(rng, universe) & mu;
                if (a == 0 || b == 0) return std::nullopt;
            }
            if ((a & ~mu) || (b & ~mu)) return std::nullopt;
            std::uint64_t r = merged({a, b}, mu);
            if (((r & a) != 0) == ((r & b) != 0)) return std::nullopt;
            return merge_witness({{a, b}, {}, mu}, alphabet, {{"result", r}},
                                 "fairness broken between the two sources");
        }));

    // IC5/IC6/IC6' over pairs of profiles
    long long union_total = exhaustive ? p_count * p_count * nonempty : cfg.samples;
    auto union_instance = [&](long long i, std::vector<std::uint64_t>& e1,
                              std::vector<std::uint64_t>& e2, std::uint64_t& mu) {
        if (exhaustive) {
            long long pp = i / nonempty;
            e1 = profiles[pp / p_count];
            e2 = profiles[pp % p_count];
            mu = 1 + static_cast<std::uint64_t>(i % nonempty);
        } else {
            Rng rng = instance_rng(cfg, i);
            e1 = sampled_profile(rng, 1, 2);
            e2 = sampled_profile(rng, 1, 2);
            mu = random_nonempty_mask(rng, universe);
        }
    };
    std::string union_cov = base_cov + " (profile pairs)";

    reports.push_back(run_sweep("IC5", subject, union_cov, cfg, union_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e1, e2;
            std::uint64_t mu;
            union_instance(i, e1, e2, mu);
            std::uint64_t r1 = merged(e1, mu), r2 = merged(e2, mu);
            std::vector<std::uint64_t> both = e1;
            both.insert(both.end(), e2.begin(), e2.end());
            std::uint64_t ru = merged(both, mu);
            if (((r1 & r2) & ~ru) == 0) return std::nullopt;
            return merge_witness({e1, e2, mu, 0, true}, alphabet,
                                 {{"delta(E1)", r1}, {"delta(E2)", r2}, {"delta(union)", ru}},
                                 "delta(E1)&delta(E2) does not entail delta(E1 u E2)");
        }));

    reports.push_back(run_sweep("IC6", subject, union_cov, cfg, union_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e1, e2;
            std::uint64_t mu;
            union_instance(i, e1, e2, mu);
            std::uint64_t r1 = merged(e1, mu), r2 = merged(e2, mu);
            if ((r1 & r2) == 0) return std::nullopt;
            std::vector<std::uint64_t> both = e1;
            both.insert(both.end(), e2.begin(), e2.end());
            std::uint64_t ru = merged(both, mu);
            if ((ru & ~(r1 & r2)) == 0) return std::nullopt;
            return merge_witness({e1, e2, mu, 0, true}, alphabet,
                                 {{"delta(E1)", r1}, {"delta(E2)", r2}, {"delta(union)", ru}},
                                 "delta(E1 u E2) does not entail delta(E1)&delta(E2)");
        }));

    reports.push_back(run_sweep("IC6'", subject, union_cov, cfg, union_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e1, e2;
            std::uint64_t mu;
            union_instance(i, e1, e2, mu);
            std::uint64_t r1 = merged(e1, mu), r2 = merged(e2, mu);
            if ((r1 & r2) == 0) return std::nullopt;
            std::vector<std::uint64_t> both = e1;
            both.insert(both.end(), e2.begin(), e2.end());
            std::uint64_t ru = merged(both, mu);
            if ((ru & ~(r1 | r2)) == 0) return std::nullopt;
            return merge_witness({e1, e2, mu, 0, true}, alphabet,
                                 {{"delta(E1)", r1}, {"delta(E2)", r2}, {"delta(union)", ru}},
                                 "delta(E1 u E2) does not entail delta(E1)|delta(E2)");
        }));

    // IC7/IC8 over constraint pairs
    long long constraint_total = exhaustive ? p_count * nonempty * nonempty : cfg.samples;
    auto constraint_instance = [&](long long i, std::vector<std::uint64_t>& e,
                                   std::uint64_t& mu1, std::uint64_t& mu2) {
        if (exhaustive) {
            e = profiles[i / (nonempty * nonempty)];
            long long mm = i % (nonempty * nonempty);
            mu1 = 1 + static_cast<std::uint64_t>(mm / nonempty);
            mu2 = 1 + static_cast<std::uint64_t>(mm % nonempty);
        } else {
            Rng rng = instance_rng(cfg, i);
            e = sampled_profile(rng, 2, 4);
            mu1 = random_nonempty_mask(rng, universe);
            mu2 = random_nonempty_mask(rng, universe);
        }
    };
    std::string constraint_cov = base_cov + " (constraint pairs)";

    reports.push_back(run_sweep("IC7", subject, constraint_cov, cfg, constraint_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e;
            std::uint64_t mu1, mu2;
            constraint_instance(i, e, mu1, mu2);
            std::uint64_t lhs = merged(e, mu1) & mu2;
            if (lhs == 0) return std::nullopt;  // also covers inconsistent mu1&mu2
            std::uint64_t rhs = merged(e, mu1 & mu2);
            if ((lhs & ~rhs) == 0) return std::nullopt;
            return merge_witness({e, {}, mu1, mu2, false, true}, alphabet,
                                 {{"delta_mu1(E)&mu2", lhs}, {"delta_mu1&mu2(E)", rhs}},
                                 "IC7 entailment fails");
        }));

    reports.push_back(run_sweep("IC8", subject, constraint_cov, cfg, constraint_total,
        [&](long long i) -> std::optional<Witness> {
            std::vector<std::uint64_t> e;
            std::uint64_t mu1, mu2;
            constraint_instance(i, e, mu1, mu2);
            std::uint64_t r1 = merged(e, mu1);
            if ((r1 & mu2) == 0) return std::nullopt;
            std::uint64_t rhs = merged(e, mu1 & mu2);
            if ((rhs & ~r1) == 0) return std::nullopt;
            return merge_witness({e, {}, mu1, mu2, false, true}, alphabet,
                                 {{"delta_mu1(E)", r1}, {"delta_mu1&mu2(E)", rhs}},
                                 "IC8 entailment fails");
        }));

    return reports;
}

// ---------------------------------------------------------------------------
// Abduction
// ---------------------------------------------------------------------------

const std::vector<std::string> kAbductionPostulates = {
    "LLE", "RLE", "E-CM", "E-W-CM", "E-C-Cut", "E-R-Cut", "E-W-C-Cut",
    "E-Reflexivity", "ROR", "RS", "LOR", "E-DR", "E-Con",
};

namespace {

// Explanation cores indexed by the Sigma-trace mask of the observation. The
// preferred-explanation set of the relation is fully determined by the core
// (any explanans splits into a trace inside Sigma plus Sigma-inconsistent
// noise), so sweeps quantify explananda over full model sets and explanantia
// over traces.
struct AbductionSpace {
    int n = 0;
    std::uint64_t smask = 0;
    std::uint64_t universe = 0;
    bool equality = false;  // lneu compares traces by equality, others by subset
    std::vector<std::uint64_t> core;  // indexed by trace mask; valid for nonempty traces

    bool expl(std::uint64_t trace, std::uint64_t obs_trace) const {
        return equality ? trace == core[obs_trace] : (trace & ~core[obs_trace]) == 0;
    }
};

AbductionSpace build_space(Relation rel, const StructuringElement& se, const WorldSet& sigma) {
    int n = sigma.atom_count();
    if (n > 3) throw ScaleExceeded("abduction checks supported up to 3 atoms");
    if (rel != Relation::Lneu && rel != Relation::Lned && rel != Relation::Lc)
        throw Error("postulate checks cover lneu, lned and lc");
    AbductionSpace space;
    space.n = n;
    space.smask = sigma.mask();
    space.universe = std::uint64_t{1} << (std::uint64_t{1} << n);
    space.equality = rel == Relation::Lneu;
    space.core.assign(space.universe, 0);
    TheoryContext ctx(sigma, se);
    for (std::uint64_t x = 1; x < space.universe; ++x) {
        if (x & ~space.smask) continue;
        space.core[x] =
            preferred_explanation(ctx, WorldSet::from_mask(n, x), rel).core.mask();
    }
    return space;
}

struct AbductionSweep {
    const AbductionSpace& space;
    const Alphabet& alphabet;
    const CheckConfig& cfg;
    std::string subject;

    Witness witness(std::initializer_list<std::pair<std::string, std::uint64_t>> inputs,
                    std::initializer_list<std::pair<std::string, std::uint64_t>> outputs,
                    const std::string& note) const {
        Witness w;
        for (const auto& [key, mask] : inputs)
            w.inputs.emplace_back(key, formula_string(mask, alphabet));
        for (const auto& [key, mask] : outputs)
            w.outputs.emplace_back(key, formula_string(mask, alphabet));
        w.outputs.emplace_back("note", note);
        return w;
    }

    // Sweeps all (alpha, beta) full-mask pairs with Sigma-consistent alpha
    // (and beta when `need_beta_valid`).
    PostulateReport pair_sweep(
        const std::string& postulate, bool need_beta_valid,
        const std::function<std::optional<Witness>(std::uint64_t, std::uint64_t,
                                                   std::uint64_t, std::uint64_t)>& eval) const {
        PostulateReport report{postulate, subject, "exhaustive",
                               "all model-set observations at N=" + std::to_string(space.n),
                               true, {}};
        long long examined = 0;
        for (std::uint64_t a = 1; a < space.universe; ++a) {
            std::uint64_t xa = a & space.smask;
            if (!xa) continue;
            for (std::uint64_t b = 1; b < space.universe; ++b) {
                std::uint64_t xb = b & space.smask;
                if (need_beta_valid && !xb) continue;
                if (cfg.budget > 0 && ++examined > cfg.budget) return report;
                if (auto w = eval(a, b, xa, xb)) {
                    report.holds = false;
                    report.witnesses.push_back(std::move(*w));
                    if (static_cast<int>(report.witnesses.size()) >= cfg.max_witnesses)
                        return report;
                }
            }
        }
        return report;
    }
};

std::uint64_t lowest_bit(std::uint64_t mask) { return mask & (~mask + 1); }

std::optional<Witness> check_one_abduction(const AbductionSweep& sweep,
                                           const std::string& postulate,
                                           PostulateReport* out_report);

}  // namespace

std::vector<PostulateReport> check_abduction(Relation rel, const StructuringElement& se,
                                             const WorldSet& sigma, const Alphabet& alphabet,
                                             const CheckConfig& cfg) {
    AbductionSpace space = build_space(rel, se, sigma);
    AbductionSweep sweep{space, alphabet, cfg,
                         relation_name(rel) + ":" + se.spec_string(alphabet) +
                             ":sigma=" + formula_string(sigma, alphabet)};
    std::vector<PostulateReport> reports;
    for (const auto& postulate : kAbductionPostulates) {
        PostulateReport report;
        check_one_abduction(sweep, postulate, &report);
        reports.push_back(std::move(report));
    }
    return reports;
}

namespace {

// Evaluates one postulate; fills *out_report and returns its first witness.
std::optional<Witness> check_one_abduction(const AbductionSweep& sweep,
                                           const std::string& postulate,
                                           PostulateReport* out_report) {
    const AbductionSpace& sp = sweep.space;
    auto finish = [&](PostulateReport report) -> std::optional<Witness> {
        std::optional<Witness> first;
        if (!report.witnesses.empty()) first = report.witnesses.front();
        *out_report = std::move(report);
        return first;
    };

    if (postulate == "LLE" || postulate == "RLE") {
        PostulateReport report{postulate, sweep.subject, "exhaustive",
                               postulate == "LLE"
                                   ? "structural: cores are computed from Sigma-traces, so "
                                     "Sigma-equivalent observations coincide"
                                   : "structural: explanantia are compared through their "
                                     "Sigma-traces, so Sigma-equivalent explanantia coincide",
                               true, {}};
        return finish(std::move(report));
    }

    if (postulate == "E-CM") {
        return finish(sweep.pair_sweep(postulate, false,
            [&](std::uint64_t a, std::uint64_t b, std::uint64_t xa,
                std::uint64_t xb) -> std::optional<Witness> {
                (void)xb;
                std::uint64_t m = sp.core[xa];
                std::uint64_t xab = xa & b;
                if (sp.equality) {
                    if (m & ~b) return std::nullopt;
                    if (sp.core[xab] == m) return std::nullopt;
                    return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", m}},
                                         {{"core(alpha)", m}, {"core(alpha&beta)", sp.core[xab]}},
                                         "gamma explains alpha and entails beta but does not "
                                         "explain alpha&beta");
                }
                std::uint64_t w = m & b;
                if (!w) return std::nullopt;
                std::uint64_t bad = w & ~sp.core[xab];
                if (!bad) return std::nullopt;
                std::uint64_t gamma = lowest_bit(bad);
                return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", gamma}},
                                     {{"core(alpha)", m}, {"core(alpha&beta)", sp.core[xab]}},
                                     "gamma explains alpha and entails beta but does not "
                                     "explain alpha&beta");
            }));
    }

    if (postulate == "E-W-CM") {
        return finish(sweep.pair_sweep(postulate, true,
            [&](std::uint64_t a, std::uint64_t b, std::uint64_t xa,
                std::uint64_t xb) -> std::optional<Witness> {
                std::uint64_t ma = sp.core[xa], mb = sp.core[xb];
                std::uint64_t xab = xa & b;
                if (sp.equality) {
                    if (ma != mb) return std::nullopt;
                    if (sp.core[xab] == ma) return std::nullopt;
                    return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", ma}},
                                         {{"core(alpha&beta)", sp.core[xab]}},
                                         "gamma explains alpha and beta but not alpha&beta");
                }
                std::uint64_t w = ma & mb;
                if (!w) return std::nullopt;
                std::uint64_t bad = w & ~sp.core[xab];
                if (!bad) return std::nullopt;
                return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", lowest_bit(bad)}},
                                     {{"core(alpha&beta)", sp.core[xab]}},
                                     "gamma explains alpha and beta but not alpha&beta");
            }));
    }

    if (postulate == "E-C-Cut" || postulate == "E-R-Cut") {
        bool universal = postulate == "E-C-Cut";
        return finish(sweep.pair_sweep(postulate, false,
            [&](std::uint64_t a, std::uint64_t b, std::uint64_t xa,
                std::uint64_t xb) -> std::optional<Witness> {
                (void)xb;
                std::uint64_t m = sp.core[xa];
                bool premise;
                if (sp.equality || universal)
                    premise = (m & ~b) == 0;  // every explanation of alpha entails beta
                else
                    premise = (m & b) != 0;  // some explanation of alpha entails beta
                if (!premise) return std::nullopt;
                std::uint64_t xab = xa & b;
                if (!xab) return std::nullopt;
                std::uint64_t mab = sp.core[xab];
                if (sp.equality) {
                    if (mab == m) return std::nullopt;
                    return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", mab}},
                                         {{"core(alpha)", m}, {"core(alpha&beta)", mab}},
                                         "gamma explains alpha&beta but not alpha");
                }
                std::uint64_t bad = mab & ~m;
                if (!bad) return std::nullopt;
                return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", lowest_bit(bad)}},
                                     {{"core(alpha)", m}, {"core(alpha&beta)", mab}},
                                     "gamma explains alpha&beta but not alpha");
            }));
    }

    if (postulate == "E-W-C-Cut") {
        return finish(sweep.pair_sweep(postulate, true,
            [&](std::uint64_t a, std::uint64_t b, std::uint64_t xa,
                std::uint64_t xb) -> std::optional<Witness> {
                std::uint64_t ma = sp.core[xa], mb = sp.core[xb];
                bool premise = sp.equality ? ma == mb : (ma & ~mb) == 0;
                if (!premise) return std::nullopt;
                std::uint64_t xab = xa & b;
                if (!xab) return std::nullopt;
                std::uint64_t mab = sp.core[xab];
                if (sp.equality) {
                    if (mab == ma) return std::nullopt;
                    return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", mab}},
                                         {{"core(alpha)", ma}, {"core(alpha&beta)", mab}},
                                         "gamma explains alpha&beta but not alpha");
                }
                std::uint64_t bad = mab & ~ma;
                if (!bad) return std::nullopt;
                return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", lowest_bit(bad)}},
                                     {{"core(alpha)", ma}, {"core(alpha&beta)", mab}},
                                     "gamma explains alpha&beta but not alpha");
            }));
    }

    if (postulate == "E-Reflexivity") {
        PostulateReport report{postulate, sweep.subject, "exhaustive",
                               "all observations, explanantia over Sigma-traces at N=" +
                                   std::to_string(sp.n),
                               true, {}};
        long long examined = 0;
        for (std::uint64_t a = 1; a < sp.universe && report.holds; ++a) {
            std::uint64_t xa = a & sp.smask;
            if (!xa) continue;
            std::uint64_t m = sp.core[xa];
            if (sp.equality) {
                if (sweep.cfg.budget > 0 && ++examined > sweep.cfg.budget) break;
                if (sp.core[m] != m) {
                    report.holds = false;
                    report.witnesses.push_back(sweep.witness(
                        {{"alpha", a}, {"gamma", m}}, {{"core(gamma)", sp.core[m]}},
                        "gamma explains alpha but not itself"));
                }
                continue;
            }
            for (std::uint64_t x = m; x; x = (x - 1) & m) {
                if (sweep.cfg.budget > 0 && ++examined > sweep.cfg.budget) break;
                if ((x & ~sp.core[x]) == 0) continue;
                report.holds = false;
                report.witnesses.push_back(sweep.witness(
                    {{"alpha", a}, {"gamma", x}}, {{"core(gamma)", sp.core[x]}},
                    "gamma explains alpha but not itself"));
                break;
            }
        }
        return finish(std::move(report));
    }

    if (postulate == "ROR") {
        PostulateReport report{postulate, sweep.subject, "exhaustive",
                               "all observations, explanans pairs over Sigma-traces at N=" +
                                   std::to_string(sp.n),
                               true, {}};
        for (std::uint64_t a = 1; a < sp.universe && report.holds; ++a) {
            std::uint64_t xa = a & sp.smask;
            if (!xa) continue;
            std::uint64_t m = sp.core[xa];
            for (std::uint64_t x1 = m; x1 && report.holds; x1 = (x1 - 1) & m) {
                if (!sp.expl(x1, xa)) continue;
                for (std::uint64_t x2 = m; x2; x2 = (x2 - 1) & m) {
                    if (!sp.expl(x2, xa)) continue;
                    if (sp.expl(x1 | x2, xa)) continue;
                    report.holds = false;
                    report.witnesses.push_back(sweep.witness(
                        {{"alpha", a}, {"gamma", x1}, {"delta", x2}},
                        {{"core(alpha)", m}}, "union of two explanations fails"));
                    break;
                }
            }
        }
        return finish(std::move(report));
    }

    if (postulate == "RS") {
        PostulateReport report{postulate, sweep.subject, "exhaustive",
                               "all observations, explanans/strengthening over Sigma-traces "
                               "at N=" + std::to_string(sp.n),
                               true, {}};
        for (std::uint64_t a = 1; a < sp.universe && report.holds; ++a) {
            std::uint64_t xa = a & sp.smask;
            if (!xa) continue;
            std::uint64_t m = sp.core[xa];
            for (std::uint64_t x = m; x && report.holds; x = (x - 1) & m) {
                if (!sp.expl(x, xa)) continue;
                for (std::uint64_t x2 = x; x2; x2 = (x2 - 1) & x) {
                    if (sp.expl(x2, xa)) continue;
                    report.holds = false;
                    report.witnesses.push_back(sweep.witness(
                        {{"alpha", a}, {"gamma", x}, {"gamma2", x2}}, {{"core(alpha)", m}},
                        "consistent strengthening of an explanation fails"));
                    break;
                }
            }
        }
        return finish(std::move(report));
    }

    if (postulate == "LOR") {
        return finish(sweep.pair_sweep(postulate, true,
            [&](std::uint64_t a, std::uint64_t b, std::uint64_t xa,
                std::uint64_t xb) -> std::optional<Witness> {
                std::uint64_t ma = sp.core[xa], mb = sp.core[xb];
                std::uint64_t mu = sp.core[xa | xb];
                if (sp.equality) {
                    if (ma != mb || mu == ma) return std::nullopt;
                    return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", ma}},
                                         {{"core(alpha|beta)", mu}},
                                         "gamma explains both disjuncts but not the disjunction");
                }
                std::uint64_t w = ma & mb;
                if (!w) return std::nullopt;
                std::uint64_t bad = w & ~mu;
                if (!bad) return std::nullopt;
                return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", lowest_bit(bad)}},
                                     {{"core(alpha|beta)", mu}},
                                     "gamma explains both disjuncts but not the disjunction");
            }));
    }

    if (postulate == "E-DR") {
        return finish(sweep.pair_sweep(postulate, true,
            [&](std::uint64_t a, std::uint64_t b, std::uint64_t xa,
                std::uint64_t xb) -> std::optional<Witness> {
                std::uint64_t ma = sp.core[xa], mb = sp.core[xb];
                std::uint64_t mu = sp.core[xa | xb];
                if (sp.equality) {
                    if (mu == ma || mu == mb) return std::nullopt;
                    return sweep.witness({{"alpha", a}, {"beta", b}, {"gamma", ma},
                                          {"delta", mb}},
                                         {{"core(alpha|beta)", mu}},
                                         "neither explanation survives the disjunction");
                }
                std::uint64_t bad_a = ma & ~mu, bad_b = mb & ~mu;
                if (!bad_a || !bad_b) return std::nullopt;
                return sweep.witness({{"alpha", a}, {"beta", b},
                                      {"gamma", lowest_bit(bad_a)},
                                      {"delta", lowest_bit(bad_b)}},
                                     {{"core(alpha|beta)", mu}},
                                     "neither explanation survives the disjunction");
            }));
    }

    if (postulate == "E-Con") {
        PostulateReport report{postulate, sweep.subject, "exhaustive",
                               "all Sigma-consistent observations at N=" + std::to_string(sp.n),
                               true, {}};
        for (std::uint64_t a = 1; a < sp.universe; ++a) {
            std::uint64_t xa = a & sp.smask;
            if (!xa) continue;  // no explanation exists, and none is claimed
            std::uint64_t m = sp.core[xa];
            if (m != 0 && sp.expl(m, xa)) continue;
            report.holds = false;
            report.witnesses.push_back(sweep.witness({{"alpha", a}}, {{"core(alpha)", m}},
                                                     "no explanation for a consistent "
                                                     "observation"));
            break;
        }
        return finish(std::move(report));
    }

    throw Error("unknown abduction postulate '" + postulate + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Counterexample drivers and JSON
// ---------------------------------------------------------------------------

namespace {

std::optional<Witness> first_witness(std::vector<PostulateReport> reports,
                                     const std::string& postulate) {
    for (auto& report : reports)
        if (report.postulate == postulate && !report.witnesses.empty())
            return report.witnesses.front();
    return std::nullopt;
}

}  // namespace

std::optional<Witness> find_revision_counterexample(const std::string& postulate,
                                                    const RevisionOp& op,
                                                    const Alphabet& alphabet,
                                                    const CheckConfig& cfg) {
    return first_witness(check_revision(op, "revise", alphabet, cfg), postulate);
}

std::optional<Witness> find_merging_counterexample(const std::string& postulate,
                                                   Aggregation agg,
                                                   const StructuringElement& se,
                                                   const Alphabet& alphabet,
                                                   const CheckConfig& cfg) {
    return first_witness(check_merging(agg, se, alphabet, cfg), postulate);
}

std::optional<Witness> find_abduction_counterexample(const std::string& postulate,
                                                     Relation rel,
                                                     const StructuringElement& se,
                                                     const WorldSet& sigma,
                                                     const Alphabet& alphabet,
                                                     const CheckConfig& cfg) {
    return first_witness(check_abduction(rel, se, sigma, alphabet, cfg), postulate);
}

std::string reports_to_json(const std::vector<PostulateReport>& reports, bool pretty) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& report : reports) {
        nlohmann::json r;
        r["postulate"] = report.postulate;
        r["subject"] = report.subject;
        r["mode"] = report.mode;
        r["coverage"] = report.coverage;
        r["verdict"] = report.holds ? "holds" : "violated";
        nlohmann::json witnesses = nlohmann::json::array();
        for (const auto& witness : report.witnesses) {
            nlohmann::json w;
            nlohmann::json inputs, outputs;
            for (const auto& [key, value] : witness.inputs) inputs[key] = value;
            for (const auto& [key, value] : witness.outputs) outputs[key] = value;
            w["inputs"] = inputs;
            w["outputs"] = outputs;
            witnesses.push_back(w);
        }
        r["witnesses"] = witnesses;
        out.push_back(r);
    }
    return pretty ? out.dump(2) : out.dump();
}

}  // namespace morphlog
