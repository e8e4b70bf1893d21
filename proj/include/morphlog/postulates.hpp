#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphlog/abduction.hpp"
#include "morphlog/merging.hpp"
#include "morphlog/revision.hpp"

namespace morphlog {

enum class CheckMode { Exhaustive, Sampled };

struct CheckConfig {
    int atom_count = 2;
    CheckMode mode = CheckMode::Exhaustive;
    std::uint64_t seed = 1;
    long long samples = 10000;
    int jobs = 1;
    int max_witnesses = 1;
    /// Stop a sweep after this many instances (0 = no cap). Used by
    /// find_*_counterexample.
    long long budget = 0;
};

struct Witness {
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
};

struct PostulateReport {
    std::string postulate;
    std::string subject;
    std::string mode;      // "exhaustive" or "sampled(seed=..,count=..)"
    std::string coverage;  // instance space actually swept
    bool holds = true;
    std::vector<Witness> witnesses;
};

/// Stable JSON rendering of the report schema
/// {postulate, subject, mode, coverage, verdict, witnesses:[{inputs, outputs}]}.
std::string reports_to_json(const std::vector<PostulateReport>& reports, bool pretty = true);

using RevisionOp = std::function<RevisionOutcome(const WorldSet&, const WorldSet&)>;

inline RevisionOp revision_op(const StructuringElement& se) {
    return [&se](const WorldSet& phi, const WorldSet& psi) { return revise(phi, psi, se); };
}

/// R1-R6 plus the modified success of credibility-limited revision
/// (result entails psi or equals phi).
std::vector<PostulateReport> check_revision(const RevisionOp& op, const std::string& subject,
                                            const Alphabet& alphabet, const CheckConfig& cfg);

/// IC0-IC8 and IC6'. Exhaustive sweeps cover profiles of size <= 2 over all
/// nonempty model sets.
std::vector<PostulateReport> check_merging(Aggregation agg, const StructuringElement& se,
                                           const Alphabet& alphabet, const CheckConfig& cfg);

extern const std::vector<std::string> kAbductionPostulates;

/// The thirteen explanatory-relation postulates. Universally quantified
/// explanans premises are decided through the canonical explanation core,
/// which determines the whole preferred-explanation set.
std::vector<PostulateReport> check_abduction(Relation rel, const StructuringElement& se,
                                             const WorldSet& sigma, const Alphabet& alphabet,
                                             const CheckConfig& cfg);

std::optional<Witness> find_revision_counterexample(const std::string& postulate,
                                                    const RevisionOp& op,
                                                    const Alphabet& alphabet,
                                                    const CheckConfig& cfg);
std::optional<Witness> find_merging_counterexample(const std::string& postulate,
                                                   Aggregation agg,
                                                   const StructuringElement& se,
                                                   const Alphabet& alphabet,
                                                   const CheckConfig& cfg);
std::optional<Witness> find_abduction_counterexample(const std::string& postulate,
                                                     Relation rel,
                                                     const StructuringElement& se,
                                                     const WorldSet& sigma,
                                                     const Alphabet& alphabet,
                                                     const CheckConfig& cfg);

}  // namespace morphlog
