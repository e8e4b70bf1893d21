#include "morphlog/normal_forms.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "morphlog/errors.hpp"

namespace morphlog {

WorldSet models_of_term(const LiteralList& term, int atom_count) {
    WorldSet out = WorldSet::all(atom_count);
    for (const auto& lit : term) {
        WorldSet mask(atom_count);
        for (World w = 0; w < (World{1} << atom_count); ++w)
            if (((w >> lit.atom) & 1) == static_cast<unsigned>(lit.positive)) mask.set(w);
        out &= mask;
    }
    return out;
}

WorldSet models_of_clause(const LiteralList& clause, int atom_count) {
    WorldSet out(atom_count);
    for (const auto& lit : clause) {
        for (World w = 0; w < (World{1} << atom_count); ++w)
            if (((w >> lit.atom) & 1) == static_cast<unsigned>(lit.positive)) out.set(w);
    }
    return out;
}

WorldSet models_of_dnf(const DnfForm& dnf) {
    WorldSet out(dnf.atom_count);
    for (const auto& term : dnf.terms) out |= models_of_term(term, dnf.atom_count);
    return out;
}

WorldSet models_of_cnf(const CnfForm& cnf) {
    WorldSet out = WorldSet::all(cnf.atom_count);
    for (const auto& clause : cnf.clauses) out &= models_of_clause(clause, cnf.atom_count);
    return out;
}

namespace {

Formula literal_formula(const Literal& lit, const Alphabet& alphabet) {
    Formula a = Formula::atom(alphabet.name(lit.atom));
    return lit.positive ? a : Formula::negation(a);
}

}  // namespace

Formula dnf_to_formula(const DnfForm& dnf, const Alphabet& alphabet) {
    if (dnf.terms.empty()) return Formula::bottom();
    Formula out = Formula::bottom();
    for (std::size_t t = 0; t < dnf.terms.size(); ++t) {
        const auto& term = dnf.terms[t];
        Formula tf = Formula::top();
        for (std::size_t i = 0; i < term.size(); ++i) {
            Formula lit = literal_formula(term[i], alphabet);
            tf = i == 0 ? lit : Formula::conj(tf, lit);
        }
        out = t == 0 ? tf : Formula::disj(out, tf);
    }
    return out;
}

Formula cnf_to_formula(const CnfForm& cnf, const Alphabet& alphabet) {
    if (cnf.clauses.empty()) return Formula::top();
    Formula out = Formula::top();
    for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
        const auto& clause = cnf.clauses[c];
        Formula cf = Formula::bottom();
        for (std::size_t i = 0; i < clause.size(); ++i) {
            Formula lit = literal_formula(clause[i], alphabet);
            cf = i == 0 ? lit : Formula::disj(cf, lit);
        }
        out = c == 0 ? cf : Formula::conj(out, cf);
    }
    return out;
}

DnfForm dnf_from_models(const WorldSet& ws) {
    int n = ws.atom_count();
    DnfForm out{n, {}};
    if (ws == WorldSet::all(n)) {
        out.terms.push_back({});
        return out;
    }
    ws.for_each([&](World w) {
        LiteralList term;
        term.reserve(n);
        for (int i = 0; i < n; ++i) term.push_back({i, ((w >> i) & 1) != 0});
        out.terms.push_back(std::move(term));
    });
    return out;
}

namespace {

// Implicant (value, dash): covered worlds are those matching `value` outside
// the dashed atoms.
struct Implicant {
    std::uint32_t value;
    std::uint32_t dash;
    auto operator<=>(const Implicant&) const = default;
};

WorldSet implicant_worlds(const Implicant& imp, int n) {
    WorldSet out(n);
    std::uint32_t sub = imp.dash;
    while (true) {
        out.set((imp.value & ~imp.dash) | sub);
        if (sub == 0) break;
        sub = (sub - 1) & imp.dash;
    }
    return out;
}

LiteralList implicant_to_term(const Implicant& imp, int n) {
    LiteralList term;
    for (int i = 0; i < n; ++i) {
        if ((imp.dash >> i) & 1) continue;
        term.push_back({i, ((imp.value >> i) & 1) != 0});
    }
    return term;
}

}  // namespace

DnfForm minimize_dnf(const WorldSet& ws, int atom_count) {
    int n = atom_count;
    DnfForm out{n, {}};
    if (ws.empty()) return out;
    if (ws == WorldSet::all(n)) {
        out.terms.push_back({});
        return out;
    }

    // merge rounds over implicants grouped by popcount of the value
    std::set<Implicant> current;
    ws.for_each([&](World w) { current.insert({w, 0}); });
    std::vector<Implicant> primes;
    while (!current.empty()) {
        std::set<Implicant> next;
        std::set<Implicant> merged;
        for (const auto& a : current) {
            for (int i = 0; i < n; ++i) {
                if ((a.dash >> i) & 1) continue;
                Implicant b{a.value ^ (1u << i), a.dash};
                if (current.count(b)) {
                    next.insert({a.value & ~(1u << i), a.dash | (1u << i)});
                    merged.insert(a);
                    merged.insert(b);
                }
            }
        }
        for (const auto& a : current)
            if (!merged.count(a)) primes.push_back(a);
        current = std::move(next);
    }
    std::sort(primes.begin(), primes.end());

    // cover: essential primes, then greedy by coverage (ties by order)
    std::vector<WorldSet> cover_of;
    cover_of.reserve(primes.size());
    for (const auto& p : primes) cover_of.push_back(implicant_worlds(p, n));

    std::vector<bool> chosen(primes.size(), false);
    WorldSet uncovered = ws;
    ws.for_each([&](World w) {
        int owner = -1;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (!cover_of[i].test(w)) continue;
            if (owner >= 0) return;  // covered by more than one prime
            owner = static_cast<int>(i);
        }
        if (owner >= 0) chosen[owner] = true;
    });
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (chosen[i]) uncovered -= cover_of[i];
    while (!uncovered.empty()) {
        std::size_t best = primes.size();
        std::uint64_t best_gain = 0;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (chosen[i]) continue;
            std::uint64_t gain = (cover_of[i] & uncovered).count();
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        chosen[best] = true;
        uncovered -= cover_of[best];
    }

    for (std::size_t i = 0; i < primes.size(); ++i)
        if (chosen[i]) out.terms.push_back(implicant_to_term(primes[i], n));
    std::sort(out.terms.begin(), out.terms.end());
    return out;
}

DnfForm to_dnf(const Formula& f, const Alphabet& alphabet) {
    return minimize_dnf(models(f, alphabet), alphabet.size());
}

CnfForm to_cnf(const Formula& f, const Alphabet& alphabet) {
    DnfForm negated = minimize_dnf(models(f, alphabet).complement(), alphabet.size());
    CnfForm out{alphabet.size(), {}};
    if (negated.terms.empty()) return out;  // f is T
    for (const auto& term : negated.terms) {
        LiteralList clause;
        for (const auto& lit : term) clause.push_back({lit.atom, !lit.positive});
        out.clauses.push_back(std::move(clause));
    }
    std::sort(out.clauses.begin(), out.clauses.end());
    return out;
}

std::string render_dnf(const DnfForm& dnf, const Alphabet& alphabet) {
    if (dnf.terms.empty()) return "F";
    if (dnf.terms.size() == 1 && dnf.terms[0].empty()) return "T";
    std::string out;
    bool outer = dnf.terms.size() > 1;
    for (std::size_t t = 0; t < dnf.terms.size(); ++t) {
        if (t) out += " | ";
        const auto& term = dnf.terms[t];
        bool parens = outer && term.size() > 1;
        if (parens) out += '(';
        for (std::size_t i = 0; i < term.size(); ++i) {
            if (i) out += " & ";
            if (!term[i].positive) out += '!';
            out += alphabet.name(term[i].atom);
        }
        if (parens) out += ')';
    }
    return out;
}

}  // namespace morphlog
