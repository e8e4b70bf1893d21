#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "morphlog/abduction.hpp"
#include "morphlog/errors.hpp"
#include "morphlog/formula.hpp"
#include "morphlog/merging.hpp"
#include "morphlog/morphology.hpp"
#include "morphlog/normal_forms.hpp"
#include "morphlog/postulates.hpp"
#include "morphlog/revision.hpp"
#include "morphlog/syntactic.hpp"

using namespace morphlog;

namespace {

enum class Output { Pretty, Minterms, Json };

struct Options {
    std::string atoms;
    std::string se_spec = "hamming:1";
    Output output = Output::Pretty;
};

void add_common(CLI::App* cmd, Options& opt, bool with_se = true) {
    cmd->add_option("--atoms", opt.atoms, "comma-separated atom order (inferred when absent)");
    if (with_se) cmd->add_option("--se", opt.se_spec, "structuring element spec");
    cmd->add_flag_callback("--minterms", [&opt] { opt.output = Output::Minterms; },
                           "print the model list only");
    cmd->add_flag_callback("--json", [&opt] { opt.output = Output::Json; },
                           "print a JSON object");
}

// Read formulas; a value naming a readable file is parsed as one formula per
// line (conjoined, # comments), anything else as formula text.
std::vector<Formula> read_formulas(const std::string& value) {
    std::ifstream in(value);
    if (!in.good()) return {parse_formula(value)};
    std::vector<Formula> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        out.push_back(parse_formula(line));
    }
    if (out.empty()) throw Error("no formulas in '" + value + "'");
    return out;
}

Formula conjoin(const std::vector<Formula>& fs) {
    Formula out = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
    return out;
}

Alphabet resolve_alphabet(const Options& opt, const std::vector<Formula>& formulas) {
    if (!opt.atoms.empty()) {
        Alphabet alphabet = Alphabet::from_spec(opt.atoms);
        for (const auto& f : formulas)
            for (const auto& atom : collect_atoms(f))
                if (!alphabet.index_of(atom)) throw UnknownAtom(atom);
        return alphabet;
    }
    return infer_alphabet(formulas);
}

std::string models_line(const WorldSet& ws) {
    std::string out;
    ws.for_each([&](World w) {
        if (!out.empty()) out += ' ';
        out += world_bits(w, ws.atom_count());
    });
    return out;
}

std::string formula_line(const WorldSet& ws, const Alphabet& alphabet) {
    return render_dnf(minimize_dnf(ws, alphabet.size()), alphabet);
}

void print_set(const WorldSet& ws, const Alphabet& alphabet, Output output,
               const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    switch (output) {
        case Output::Minterms:
            std::cout << models_line(ws) << "\n";
            return;
        case Output::Json: {
            nlohmann::json j;
            j["models"] = nlohmann::json::array();
            ws.for_each([&](World w) { j["models"].push_back(world_bits(w, ws.atom_count())); });
            j["formula"] = formula_line(ws, alphabet);
            for (const auto& [key, value] : extra) j[key] = value;
            std::cout << j.dump(2) << "\n";
            return;
        }
        case Output::Pretty:
            std::cout << "models: " << models_line(ws) << "\n";
            for (const auto& [key, value] : extra) std::cout << key << ": " << value << "\n";
            std::cout << formula_line(ws, alphabet) << "\n";
            return;
    }
}

struct SetCommand {
    std::string name;
    std::string help;
    std::function<WorldSet(const WorldSet&, const StructuringElement&, int,
                           std::vector<std::pair<std::string, std::string>>&)> run;
};

int run_check(const std::string& family, const Options& opt, const std::string& rel_name,
              const std::string& agg_name, const std::string& sigma_text,
              const std::string& mode_name, std::uint64_t seed, long long samples, int jobs) {
    Alphabet alphabet =
        opt.atoms.empty() ? Alphabet({"a", "b"}) : Alphabet::from_spec(opt.atoms);
    CheckConfig cfg;
    cfg.atom_count = alphabet.size();
    cfg.mode = mode_name == "sampled" ? CheckMode::Sampled : CheckMode::Exhaustive;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.jobs = jobs;
    StructuringElement se = parse_se(opt.se_spec, alphabet);

    std::vector<PostulateReport> reports;
    if (family == "revision") {
        reports = check_revision(revision_op(se), "revise:" + se.spec_string(alphabet),
                                 alphabet, cfg);
    } else if (family == "merging") {
        Aggregation agg = agg_name == "max"    ? Aggregation::Max
                          : agg_name == "gmax" ? Aggregation::Gmax
                                               : Aggregation::Sum;
        reports = check_merging(agg, se, alphabet, cfg);
    } else if (family == "abduction") {
        WorldSet sigma = sigma_text.empty()
                             ? WorldSet::all(alphabet.size())
                             : models(conjoin(read_formulas(sigma_text)), alphabet);
        reports = check_abduction(parse_relation(rel_name), se, sigma, alphabet, cfg);
    } else {
        throw Error("unknown check family '" + family + "'");
    }
    std::cout << reports_to_json(reports) << "\n";
    bool all_hold = true;
    for (const auto& r : reports) all_hold = all_hold && r.holds;
    (void)all_hold;  // violated postulates are a finding, not a failure
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphlog: mathematical morphology on propositional formulas"};
    app.require_subcommand(1);

    Options opt;
    std::string formula_text, second_text, sigma_text, gamma_text, mu_text = "T";
    std::string rel_name = "lc", agg_name = "sum", metric = "both";
    std::string family, mode_name = "exhaustive";
    int depth = 1;
    std::uint64_t seed = 1;
    long long samples = 10000;
    int jobs = 1;
    bool oracle = false;

    std::vector<SetCommand> set_commands = {
        {"dilate", "dilation of a formula",
         [&](const WorldSet& ws, const StructuringElement& se, int n, auto&) {
             return iterate(ws, se, n, IterateMode::Dilate);
         }},
        {"erode", "erosion of a formula",
         [&](const WorldSet& ws, const StructuringElement& se, int n, auto&) {
             return iterate(ws, se, n, IterateMode::Erode);
         }},
        {"open", "opening (erosion then dilation)",
         [&](const WorldSet& ws, const StructuringElement& se, int, auto&) {
             return open(ws, se);
         }},
        {"close", "closing (dilation then erosion)",
         [&](const WorldSet& ws, const StructuringElement& se, int, auto&) {
             return close(ws, se);
         }},
        {"skeleton", "centers of maximal balls",
         [&](const WorldSet& ws, const StructuringElement& se, int, auto&) {
             return skeleton(ws, se);
         }},
        {"ue", "ultimate erosion",
         [&](const WorldSet& ws, const StructuringElement& se, int, auto&) {
             return ultimate_erosion(ws, se);
         }},
        {"last-erosion", "deepest nonempty erosion",
         [&](const WorldSet& ws, const StructuringElement& se, int, auto& extra) {
             auto [result, d] = last_erosion(ws, se);
             extra.emplace_back("depth", std::to_string(d));
             return result;
         }},
        {"last-dilation", "dilation fixed point",
         [&](const WorldSet& ws, const StructuringElement& se, int, auto& extra) {
             auto [result, d] = last_dilation(ws, se);
             extra.emplace_back("depth", std::to_string(d));
             return result;
         }},
    };

    for (auto& sc : set_commands) {
        CLI::App* cmd = app.add_subcommand(sc.name, sc.help);
        cmd->add_option("formula", formula_text, "input formula")->required();
        cmd->add_option("--n", depth, "iteration depth");
        add_common(cmd, opt);
    }

    CLI::App* parse_cmd = app.add_subcommand("parse", "parse and normalize a formula");
    parse_cmd->add_option("formula", formula_text)->required();
    add_common(parse_cmd, opt, false);

    CLI::App* models_cmd = app.add_subcommand("models", "enumerate models");
    models_cmd->add_option("formula", formula_text)->required();
    add_common(models_cmd, opt, false);

    CLI::App* components_cmd = app.add_subcommand("components", "connected components");
    components_cmd->add_option("formula", formula_text)->required();
    add_common(components_cmd, opt);

    CLI::App* reconstruct_cmd =
        app.add_subcommand("reconstruct", "reconstruction of a marker inside a mask");
    reconstruct_cmd->add_option("marker", formula_text)->required();
    reconstruct_cmd->add_option("mask", second_text)->required();
    add_common(reconstruct_cmd, opt);

    CLI::App* stratify_cmd = app.add_subcommand("stratify", "morphological ordering of a theory");
    stratify_cmd->add_option("sigma", formula_text, "theory formula or file")->required();
    add_common(stratify_cmd, opt);

    CLI::App* revise_cmd = app.add_subcommand("revise", "dilation-based belief revision");
    revise_cmd->add_option("phi", formula_text)->required();
    revise_cmd->add_option("psi", second_text)->required();
    add_common(revise_cmd, opt);

    CLI::App* merge_cmd = app.add_subcommand("merge", "belief merging under a constraint");
    merge_cmd->add_option("profile", formula_text, "profile file (one formula per line)")
        ->required();
    merge_cmd->add_option("--mu", mu_text, "integrity constraint");
    merge_cmd->add_option("--agg", agg_name, "max|sum|gmax");
    merge_cmd->add_flag("--oracle", oracle, "use the dilation-tuple enumeration");
    add_common(merge_cmd, opt);

    CLI::App* explain_cmd = app.add_subcommand("explain", "preferred explanation of an observation");
    explain_cmd->add_option("alpha", formula_text)->required();
    explain_cmd->add_option("--sigma", sigma_text, "background theory formula or file")
        ->required();
    explain_cmd->add_option("--rel", rel_name, "lneu|lned|lc|f|ue");
    explain_cmd->add_option("--gamma", gamma_text, "candidate explanans to test");
    add_common(explain_cmd, opt);

    CLI::App* central_cmd = app.add_subcommand("central", "central worlds of an observation");
    central_cmd->add_option("alpha", formula_text)->required();
    central_cmd->add_option("--sigma", sigma_text)->required();
    add_common(central_cmd, opt);

    CLI::App* distance_cmd = app.add_subcommand("distance", "minimum and Hausdorff distances");
    distance_cmd->add_option("first", formula_text)->required();
    distance_cmd->add_option("second", second_text)->required();
    distance_cmd->add_option("--metric", metric, "min|hausdorff|both");
    add_common(distance_cmd, opt);

    CLI::App* check_cmd = app.add_subcommand("check", "postulate checks with JSON reports");
    check_cmd->add_option("family", family, "revision|merging|abduction")->required();
    check_cmd->add_option("--rel", rel_name, "abduction relation");
    check_cmd->add_option("--agg", agg_name, "merging aggregation");
    check_cmd->add_option("--sigma", sigma_text, "abduction background theory");
    check_cmd->add_option("--mode", mode_name, "exhaustive|sampled");
    check_cmd->add_option("--seed", seed, "sampling seed");
    check_cmd->add_option("--samples", samples, "sample count");
    check_cmd->add_option("--jobs", jobs, "parallel sweep threads");
    add_common(check_cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_cmd->parsed())
            return run_check(family, opt, rel_name, agg_name, sigma_text, mode_name, seed,
                             samples, jobs);

        for (auto& sc : set_commands) {
            CLI::App* cmd = app.get_subcommand(sc.name);
            if (!cmd->parsed()) continue;
            std::vector<Formula> fs = {parse_formula(formula_text)};
            Alphabet alphabet = resolve_alphabet(opt, fs);
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            std::vector<std::pair<std::string, std::string>> extra;
            WorldSet result =
                sc.run(models(fs[0], alphabet), se, depth, extra);
            print_set(result, alphabet, opt.output, extra);
            return 0;
        }

        if (parse_cmd->parsed()) {
            Formula f = parse_formula(formula_text);
            Alphabet alphabet = resolve_alphabet(opt, {f});
            if (opt.output == Output::Json) {
                nlohmann::json j;
                j["formula"] = render(f);
                j["atoms"] = alphabet.atoms();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << render(f) << "\n";
            }
            return 0;
        }

        if (models_cmd->parsed()) {
            Formula f = parse_formula(formula_text);
            Alphabet alphabet = resolve_alphabet(opt, {f});
            print_set(models(f, alphabet), alphabet, opt.output);
            return 0;
        }

        if (components_cmd->parsed()) {
            Formula f = parse_formula(formula_text);
            Alphabet alphabet = resolve_alphabet(opt, {f});
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            auto parts = connected_components(models(f, alphabet), se);
            if (opt.output == Output::Json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& part : parts) j.push_back(formula_line(part, alphabet));
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& part : parts)
                    std::cout << formula_line(part, alphabet) << "\n";
            }
            return 0;
        }

        if (reconstruct_cmd->parsed()) {
            Formula marker = parse_formula(formula_text);
            Formula mask = parse_formula(second_text);
            Alphabet alphabet = resolve_alphabet(opt, {marker, mask});
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            print_set(reconstruct(models(marker, alphabet), models(mask, alphabet), se),
                      alphabet, opt.output);
            return 0;
        }

        if (stratify_cmd->parsed()) {
            std::vector<Formula> fs = read_formulas(formula_text);
            Alphabet alphabet = resolve_alphabet(opt, fs);
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            Stratification order = stratify(models(conjoin(fs), alphabet), se);
            int max_rank = order.erosion_depth() + order.dilation_depth();
            nlohmann::json j;
            for (int level = 0; level <= max_rank; ++level) {
                WorldSet stratum(alphabet.size());
                for (World w = 0; w < stratum.universe_size(); ++w)
                    if (order.rank(w) == level) stratum.set(w);
                if (stratum.empty()) continue;
                if (opt.output == Output::Json)
                    j[std::to_string(level)] = models_line(stratum);
                else
                    std::cout << level << ": " << models_line(stratum) << "  ("
                              << formula_line(stratum, alphabet) << ")\n";
            }
            WorldSet unreachable(alphabet.size());
            for (World w = 0; w < unreachable.universe_size(); ++w)
                if (order.rank(w) == kInfiniteRank) unreachable.set(w);
            if (!unreachable.empty()) {
                if (opt.output == Output::Json)
                    j["inf"] = models_line(unreachable);
                else
                    std::cout << "inf: " << models_line(unreachable) << "\n";
            }
            if (opt.output == Output::Json) std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (revise_cmd->parsed()) {
            Formula phi = parse_formula(formula_text);
            Formula psi = parse_formula(second_text);
            Alphabet alphabet = resolve_alphabet(opt, {phi, psi});
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            RevisionOutcome out = revise(models(phi, alphabet), models(psi, alphabet), se);
            std::vector<std::pair<std::string, std::string>> extra;
            extra.emplace_back("depth", out.depth ? std::to_string(*out.depth) : "unreachable");
            extra.emplace_back("limited", out.limited ? "true" : "false");
            print_set(out.result, alphabet, opt.output, extra);
            return 0;
        }

        if (merge_cmd->parsed()) {
            std::vector<Formula> member_formulas = read_formulas(formula_text);
            Formula mu = parse_formula(mu_text);
            std::vector<Formula> all = member_formulas;
            all.push_back(mu);
            Alphabet alphabet = resolve_alphabet(opt, all);
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            Profile profile;
            for (const auto& f : member_formulas)
                profile.members.push_back(models(f, alphabet));
            Aggregation agg = agg_name == "max"    ? Aggregation::Max
                              : agg_name == "gmax" ? Aggregation::Gmax
                                                   : Aggregation::Sum;
            WorldSet mu_ws = models(mu, alphabet);
            if (oracle) {
                print_set(merge_via_dilation_tuples(profile, mu_ws, agg, se), alphabet,
                          opt.output);
            } else {
                MergeOutcome out = merge(profile, mu_ws, agg, se);
                std::vector<std::pair<std::string, std::string>> extra;
                if (out.unreachable) extra.emplace_back("unreachable", "true");
                print_set(out.result, alphabet, opt.output, extra);
            }
            return 0;
        }

        if (explain_cmd->parsed() || central_cmd->parsed()) {
            Formula alpha = parse_formula(formula_text);
            std::vector<Formula> sigma_fs = read_formulas(sigma_text);
            std::vector<Formula> all = sigma_fs;
            all.push_back(alpha);
            std::optional<Formula> gamma;
            if (!gamma_text.empty()) {
                gamma = parse_formula(gamma_text);
                all.push_back(*gamma);
            }
            Alphabet alphabet = resolve_alphabet(opt, all);
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            TheoryContext ctx(models(conjoin(sigma_fs), alphabet), se);
            WorldSet alpha_ws = models(alpha, alphabet);
            if (central_cmd->parsed()) {
                print_set(central(ctx, alpha_ws), alphabet, opt.output);
                return 0;
            }
            Relation rel = parse_relation(rel_name);
            if (gamma) {
                bool yes = explains(ctx, models(*gamma, alphabet), alpha_ws, rel);
                std::cout << (yes ? "explains" : "does-not-explain") << "\n";
                return 0;
            }
            ExplanationResult result = preferred_explanation(ctx, alpha_ws, rel);
            std::vector<std::pair<std::string, std::string>> extra;
            extra.emplace_back("depth", std::to_string(result.depth));
            print_set(result.core, alphabet, opt.output, extra);
            return 0;
        }

        if (distance_cmd->parsed()) {
            Formula f = parse_formula(formula_text);
            Formula g = parse_formula(second_text);
            Alphabet alphabet = resolve_alphabet(opt, {f, g});
            StructuringElement se = parse_se(opt.se_spec, alphabet);
            auto fmt = [](std::optional<int> d) {
                return d ? std::to_string(*d) : std::string("inf");
            };
            WorldSet fw = models(f, alphabet), gw = models(g, alphabet);
            if (metric == "min")
                std::cout << fmt(min_distance(fw, gw, se)) << "\n";
            else if (metric == "hausdorff")
                std::cout << fmt(hausdorff(fw, gw, se)) << "\n";
            else
                std::cout << "min: " << fmt(min_distance(fw, gw, se))
                          << "\nhausdorff: " << fmt(hausdorff(fw, gw, se)) << "\n";
            return 0;
        }

        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnknownAtom& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
