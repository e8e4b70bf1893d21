#pragma once

#include <utility>
#include <vector>

#include "morphlog/normal_forms.hpp"

namespace morphlog {

/// Term graph of a DNF: vertices are term indices, an edge (i,j) whenever the
/// terms disagree on at most one atom. Reflexive edges included.
struct ComponentGraph {
    int term_count = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Number of atoms carrying opposite polarities in the two terms.
int term_distance(const LiteralList& t1, const LiteralList& t2);

ComponentGraph build_component_graph(const DnfForm& dnf);

/// Groups terms into graph components; the model sets of the parts partition
/// the models of the input. Parts ordered by their smallest term index.
std::vector<DnfForm> components_dnf(const DnfForm& dnf);

/// k-fold unit-Hamming dilation by per-term literal dropping, distributed
/// over the disjunction. Subsumed terms are pruned.
DnfForm dilate_dnf(const DnfForm& dnf, int k);

/// Dual: k-fold unit-Hamming erosion by per-clause literal dropping.
CnfForm erode_cnf(const CnfForm& cnf, int k);

/// Unit-Hamming dilation of a conjunction of pairwise variable-disjoint
/// parts: one dilated part conjoined with the rest, disjoined over choices.
/// Throws SharedVariables.
Formula dilate_vardisjoint(const std::vector<Formula>& parts, const Alphabet& alphabet);

/// Per-component semantic erosion, disjoined.
WorldSet erode_via_components(const DnfForm& dnf);

/// All minimal implied clauses, by enumeration; test oracle, atom count <= 6.
/// An unsatisfiable input yields the single empty clause.
std::vector<LiteralList> prime_implicates(const Formula& f, const Alphabet& alphabet);

/// Iterations to reach the last nonempty unit-Hamming erosion.
int last_erosion_depth(const WorldSet& ws);

}  // namespace morphlog
