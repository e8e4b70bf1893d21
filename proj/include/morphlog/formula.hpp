#pragma once

#include <memory>
#include <string>
#include <vector>

#include "morphlog/alphabet.hpp"
#include "morphlog/worldset.hpp"

namespace morphlog {

/// Immutable propositional AST. Nodes are shared; copies are cheap.
class Formula {
public:
    enum class Kind { Top, Bottom, Atom, Not, And, Or, Implies, Iff };

    static Formula top();
    static Formula bottom();
    static Formula atom(std::string name);
    static Formula negation(Formula f);
    static Formula conj(Formula l, Formula r);
    static Formula disj(Formula l, Formula r);
    static Formula implies(Formula l, Formula r);
    static Formula iff(Formula l, Formula r);

    Kind kind() const { return node_->kind; }
    const std::string& atom_name() const { return node_->name; }
    Formula lhs() const { return Formula(node_->lhs); }
    Formula rhs() const { return Formula(node_->rhs); }

private:
    struct Node {
        Kind kind;
        std::string name;
        std::shared_ptr<const Node> lhs, rhs;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar: iff := imp ("<->" imp)* ; imp := or ("->" or)* ; or := and ("|" and)* ;
/// and := unary ("&" unary)* ; unary := "!" unary | "(" formula ")" | atom | "T" | "F".
/// "&", "|", "<->" associate left, "->" associates right.
/// Throws SyntaxError; with an alphabet, also UnknownAtom.
Formula parse_formula(const std::string& text, const Alphabet* alphabet = nullptr);

/// Minimal-parenthesis rendering; parse_formula(render(f)) reproduces f.
std::string render(const Formula& f);

/// Atom names in order of first occurrence (depth-first, left to right).
std::vector<std::string> collect_atoms(const Formula& f);

/// Alphabet inferred from the formulas' atoms in order of first occurrence.
Alphabet infer_alphabet(const std::vector<Formula>& formulas);

WorldSet models(const Formula& f, const Alphabet& alphabet);

/// Canonical full-minterm DNF; empty set -> F, full set -> T.
Formula from_models(const WorldSet& ws, const Alphabet& alphabet);

bool equivalent(const Formula& f, const Formula& g, const Alphabet& alphabet);
bool entails(const Formula& f, const Formula& g, const Alphabet& alphabet);

}  // namespace morphlog
