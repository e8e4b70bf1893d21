#include "morphlog/syntactic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "morphlog/errors.hpp"
#include "morphlog/morphology.hpp"

namespace morphlog {

int term_distance(const LiteralList& t1, const LiteralList& t2) {
    int disagreements = 0;
    auto it1 = t1.begin(), it2 = t2.begin();
    while (it1 != t1.end() && it2 != t2.end()) {
        if (it1->atom < it2->atom) {
            ++it1;
        } else if (it2->atom < it1->atom) {
            ++it2;
        } else {
            if (it1->positive != it2->positive) ++disagreements;
            ++it1;
            ++it2;
        }
    }
    return disagreements;
}

ComponentGraph build_component_graph(const DnfForm& dnf) {
    ComponentGraph graph;
    graph.term_count = static_cast<int>(dnf.terms.size());
    for (int i = 0; i < graph.term_count; ++i) {
        graph.edges.emplace_back(i, i);
        for (int j = i + 1; j < graph.term_count; ++j)
            if (term_distance(dnf.terms[i], dnf.terms[j]) <= 1) {
                graph.edges.emplace_back(i, j);
                graph.edges.emplace_back(j, i);
            }
    }
    return graph;
}

std::vector<DnfForm> components_dnf(const DnfForm& dnf) {
    int q = static_cast<int>(dnf.terms.size());
    std::vector<int> parent(q);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    ComponentGraph graph = build_component_graph(dnf);
    for (auto [i, j] : graph.edges) parent[find(i)] = find(j);

    std::vector<DnfForm> out;
    std::vector<int> component_of_root(q, -1);
    for (int i = 0; i < q; ++i) {
        int root = find(i);
        if (component_of_root[root] < 0) {
            component_of_root[root] = static_cast<int>(out.size());
            out.push_back(DnfForm{dnf.atom_count, {}});
        }
        out[component_of_root[root]].terms.push_back(dnf.terms[i]);
    }
    return out;
}

namespace {

// drop subsumed terms/clauses (a literal-subset covers its supersets)
void prune_subsumed(std::vector<LiteralList>& lists) {
    std::sort(lists.begin(), lists.end(),
              [](const LiteralList& a, const LiteralList& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    lists.erase(std::unique(lists.begin(), lists.end()), lists.end());
    std::vector<LiteralList> kept;
    for (const auto& list : lists) {
        bool subsumed = false;
        for (const auto& small : kept) {
            if (std::includes(list.begin(), list.end(), small.begin(), small.end())) {
                subsumed = true;
                break;
            }
        }
        if (!subsumed) kept.push_back(list);
    }
    std::sort(kept.begin(), kept.end());
    lists = std::move(kept);
}

std::vector<LiteralList> drop_one_each(const std::vector<LiteralList>& lists) {
    std::vector<LiteralList> out;
    for (const auto& list : lists) {
        if (list.empty()) {
            out.push_back(list);
            continue;
        }
        for (std::size_t j = 0; j < list.size(); ++j) {
            LiteralList dropped;
            dropped.reserve(list.size() - 1);
            for (std::size_t i = 0; i < list.size(); ++i)
                if (i != j) dropped.push_back(list[i]);
            out.push_back(std::move(dropped));
        }
    }
    return out;
}

}  // namespace

DnfForm dilate_dnf(const DnfForm& dnf, int k) {
    if (k < 0) throw Error("negative dilation size");
    DnfForm out = dnf;
    for (int step = 0; step < k; ++step) {
        if (out.terms.empty()) break;            // bottom stays bottom
        out.terms = drop_one_each(out.terms);
        prune_subsumed(out.terms);
        if (!out.terms.empty() && out.terms.front().empty()) {
            out.terms = {{}};  // reached top
            break;
        }
    }
    return out;
}

CnfForm erode_cnf(const CnfForm& cnf, int k) {
    if (k < 0) throw Error("negative erosion size");
    CnfForm out = cnf;
    for (int step = 0; step < k; ++step) {
        if (out.clauses.empty()) break;          // top stays top
        out.clauses = drop_one_each(out.clauses);
        prune_subsumed(out.clauses);
        if (!out.clauses.empty() && out.clauses.front().empty()) {
            out.clauses = {{}};  // reached bottom
            break;
        }
    }
    return out;
}

Formula dilate_vardisjoint(const std::vector<Formula>& parts, const Alphabet& alphabet) {
    std::vector<std::set<std::string>> vars;
    for (const auto& part : parts) {
        auto atoms = collect_atoms(part);
        vars.emplace_back(atoms.begin(), atoms.end());
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            for (const auto& atom : vars[i])
                if (vars[j].count(atom))
                    throw SharedVariables(static_cast<int>(i), static_cast<int>(j), atom);

    StructuringElement unit = StructuringElement::hamming_ball(alphabet.size(), 1);
    Formula out = Formula::bottom();
    for (std::size_t j = 0; j < parts.size(); ++j) {
        WorldSet dilated = unit.dilate(models(parts[j], alphabet));
        Formula choice = from_models(dilated, alphabet);
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (i != j) choice = Formula::conj(choice, parts[i]);
        out = j == 0 ? choice : Formula::disj(out, choice);
    }
    return out;
}

WorldSet erode_via_components(const DnfForm& dnf) {
    StructuringElement unit = StructuringElement::hamming_ball(dnf.atom_count, 1);
    WorldSet out(dnf.atom_count);
    for (const auto& part : components_dnf(dnf)) out |= unit.erode(models_of_dnf(part));
    return out;
}

std::vector<LiteralList> prime_implicates(const Formula& f, const Alphabet& alphabet) {
    int n = alphabet.size();
    if (n > 6) throw ScaleExceeded("prime implicate enumeration capped at 6 atoms");
    WorldSet fm = models(f, alphabet);
    if (fm.empty()) return {{}};

    // enumerate clauses by ternary code (absent/positive/negative per atom)
    std::vector<LiteralList> primes;
    std::vector<int> code(n, 0);
    while (true) {
        LiteralList clause;
        for (int i = 0; i < n; ++i)
            if (code[i]) clause.push_back({i, code[i] == 1});
        if (!clause.empty() && fm.subset_of(models_of_clause(clause, n))) {
            bool minimal = true;
            for (std::size_t j = 0; j < clause.size() && minimal; ++j) {
                LiteralList sub;
                for (std::size_t i = 0; i < clause.size(); ++i)
                    if (i != j) sub.push_back(clause[i]);
                if (fm.subset_of(models_of_clause(sub, n))) minimal = false;
            }
            if (minimal) primes.push_back(std::move(clause));
        }
        int i = 0;
        while (i < n && code[i] == 2) code[i++] = 0;
        if (i == n) break;
        ++code[i];
    }
    std::sort(primes.begin(), primes.end());
    return primes;
}

int last_erosion_depth(const WorldSet& ws) {
    StructuringElement unit = StructuringElement::hamming_ball(ws.atom_count(), 1);
    return last_erosion(ws, unit).second;
}

}  // namespace morphlog
