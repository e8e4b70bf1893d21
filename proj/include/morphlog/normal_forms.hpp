#pragma once

#include <compare>
#include <vector>

#include "morphlog/formula.hpp"

namespace morphlog {

struct Literal {
    int atom;
    bool positive;
    auto operator<=>(const Literal&) const = default;
};

/// Sorted, duplicate-free literal list; never contains both polarities of an
/// atom. As a term it is a conjunction (empty = T); as a clause a disjunction
/// (empty = F).
using LiteralList = std::vector<Literal>;

/// Disjunction of terms; no terms = F, a single empty term = T.
struct DnfForm {
    int atom_count;
    std::vector<LiteralList> terms;
};

/// Conjunction of clauses; no clauses = T, a single empty clause = F.
struct CnfForm {
    int atom_count;
    std::vector<LiteralList> clauses;
};

WorldSet models_of_term(const LiteralList& term, int atom_count);
WorldSet models_of_clause(const LiteralList& clause, int atom_count);
WorldSet models_of_dnf(const DnfForm& dnf);
WorldSet models_of_cnf(const CnfForm& cnf);

Formula dnf_to_formula(const DnfForm& dnf, const Alphabet& alphabet);
Formula cnf_to_formula(const CnfForm& cnf, const Alphabet& alphabet);

/// Quine-McCluskey prime-implicant cover. Deterministic: essential primes
/// first, then greedy by coverage with lexicographic tie-break.
DnfForm minimize_dnf(const WorldSet& ws, int atom_count);

/// Semantics-preserving normal forms (minimized via minimize_dnf).
DnfForm to_dnf(const Formula& f, const Alphabet& alphabet);
CnfForm to_cnf(const Formula& f, const Alphabet& alphabet);

DnfForm dnf_from_models(const WorldSet& ws);  // full minterm DNF

std::string render_dnf(const DnfForm& dnf, const Alphabet& alphabet);

}  // namespace morphlog
