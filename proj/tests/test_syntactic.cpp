#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "morphlog/errors.hpp"
#include "morphlog/morphology.hpp"
#include "morphlog/rng.hpp"
#include "morphlog/syntactic.hpp"

using namespace morphlog;

namespace {

const Alphabet abc({"a", "b", "c"});
const Alphabet abcd({"a", "b", "c", "d"});

WorldSet ws_of(const std::string& text, const Alphabet& alphabet = abc) {
    return models(parse_formula(text, &alphabet), alphabet);
}

LiteralList term(std::initializer_list<std::pair<int, bool>> lits) {
    LiteralList out;
    for (auto [atom, pos] : lits) out.push_back({atom, pos});
    std::sort(out.begin(), out.end());
    return out;
}

// random DNF with duplicate-free non-contradictory terms
DnfForm random_dnf(Rng& rng, int n) {
    DnfForm dnf{n, {}};
    int terms = 1 + static_cast<int>(rng.below(4));
    for (int t = 0; t < terms; ++t) {
        LiteralList lits;
        for (int atom = 0; atom < n; ++atom) {
            switch (rng.below(3)) {
                case 0: lits.push_back({atom, true}); break;
                case 1: lits.push_back({atom, false}); break;
                default: break;
            }
        }
        dnf.terms.push_back(std::move(lits));
    }
    return dnf;
}

CnfForm random_cnf(Rng& rng, int n) {
    DnfForm dnf = random_dnf(rng, n);
    return CnfForm{n, dnf.terms};
}

std::vector<std::uint64_t> sorted_masks(const std::vector<WorldSet>& parts) {
    std::vector<std::uint64_t> masks;
    for (const auto& p : parts) masks.push_back(p.mask());
    std::sort(masks.begin(), masks.end());
    return masks;
}

}  // namespace

TEST_CASE("term distance") {
    CHECK(term_distance(term({{0, true}, {1, false}, {2, true}}),
                        term({{1, true}, {2, false}, {3, true}})) == 2);
    CHECK(term_distance(term({{0, true}, {1, false}, {2, true}}),
                        term({{1, true}, {2, true}, {3, true}})) == 1);
    CHECK(term_distance(term({{0, true}, {1, false}, {2, true}}),
                        term({{2, true}, {3, true}})) == 0);
}

TEST_CASE("dnf dilation basics") {
    DnfForm ab{2, {term({{0, true}, {1, true}})}};
    DnfForm dilated = dilate_dnf(ab, 1);
    REQUIRE(dilated.terms.size() == 2);
    CHECK(dilated.terms[0] == term({{0, true}}));
    CHECK(dilated.terms[1] == term({{1, true}}));

    // a single literal dilates to top
    DnfForm lit{2, {term({{0, true}})}};
    CHECK(models_of_dnf(dilate_dnf(lit, 1)) == WorldSet::all(2));

    // the dilation of figure 2
    DnfForm fig2{3, {term({{0, true}, {1, true}, {2, true}}),
                     term({{0, false}, {1, false}, {2, true}})}};
    CHECK(models_of_dnf(dilate_dnf(fig2, 1)) == ws_of("(!a | b | c) & (a | !b | c)"));

    CHECK(dilate_dnf(DnfForm{3, {}}, 2).terms.empty());
}

TEST_CASE("cnf erosion basics") {
    CnfForm phi{3, {term({{0, true}, {1, false}, {2, false}}),
                    term({{0, true}, {1, true}, {2, true}})}};
    CHECK(models_of_cnf(erode_cnf(phi, 1)) == ws_of("(a & !b & c) | (a & b & !c)"));

    // a biconditional collapses at the first erosion
    CnfForm iff2{2, {term({{0, true}, {1, false}}), term({{0, false}, {1, true}})}};
    CHECK(models_of_cnf(erode_cnf(iff2, 1)).empty());

    CnfForm clause{2, {term({{0, true}, {1, true}})}};
    CnfForm eroded = erode_cnf(clause, 1);
    REQUIRE(eroded.clauses.size() == 2);
    CHECK(models_of_cnf(eroded) == models_of_term(term({{0, true}, {1, true}}), 2));
}

TEST_CASE("syntactic operators match the semantic ones on random instances") {
    for (int n = 3; n <= 5; ++n) {
        StructuringElement u = StructuringElement::hamming_ball(n, 1);
        Rng rng(100 + n);
        for (int i = 0; i < 300; ++i) {
            DnfForm dnf = random_dnf(rng, n);
            WorldSet base = models_of_dnf(dnf);
            CnfForm cnf = random_cnf(rng, n);
            WorldSet cbase = models_of_cnf(cnf);
            for (int k = 0; k <= n; ++k) {
                CHECK(models_of_dnf(dilate_dnf(dnf, k)) ==
                      iterate(base, u, k, IterateMode::Dilate));
                CHECK(models_of_cnf(erode_cnf(cnf, k)) ==
                      iterate(cbase, u, k, IterateMode::Erode));
            }
        }
    }
}

TEST_CASE("component graph and dnf components") {
    DnfForm phi{4, {term({{0, true}, {1, true}}), term({{0, true}, {2, true}}),
                    term({{1, true}, {2, true}}),
                    term({{0, false}, {1, false}, {2, false}, {3, false}})}};
    ComponentGraph graph = build_component_graph(phi);
    CHECK(graph.term_count == 4);
    // three mutual edge pairs plus four reflexive loops
    CHECK(graph.edges.size() == 4 + 6);

    auto parts = components_dnf(phi);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].terms.size() == 3);
    CHECK(parts[1].terms.size() == 1);
    CHECK(models_of_dnf(parts[0]) == ws_of("(a & b) | (a & c) | (b & c)", abcd));

    DnfForm single{3, {term({{0, true}})}};
    CHECK(components_dnf(single).size() == 1);

    // complementary minterms at distance 3 split
    DnfForm far{3, {term({{0, true}, {1, true}, {2, true}}),
                    term({{0, false}, {1, false}, {2, false}})}};
    CHECK(components_dnf(far).size() == 2);
}

TEST_CASE("dnf components partition models exactly as the semantic components") {
    for (int n = 3; n <= 5; ++n) {
        StructuringElement u = StructuringElement::hamming_ball(n, 1);
        Rng rng(200 + n);
        for (int i = 0; i < 300; ++i) {
            DnfForm dnf = random_dnf(rng, n);
            WorldSet base = models_of_dnf(dnf);
            if (base.empty()) continue;
            std::vector<WorldSet> semantic = connected_components(base, u);
            std::vector<WorldSet> syntactic;
            for (const auto& part : components_dnf(dnf))
                syntactic.push_back(models_of_dnf(part));
            WorldSet all1(n), all2(n);
            for (const auto& p : semantic) all1 |= p;
            for (const auto& p : syntactic) all2 |= p;
            CHECK(all1 == all2);
            if (n <= 4) CHECK(sorted_masks(semantic) == sorted_masks(syntactic));
        }
    }
}

TEST_CASE("erosion via components") {
    DnfForm phi{4, {term({{0, true}, {1, true}}), term({{0, true}, {2, true}}),
                    term({{1, true}, {2, true}}),
                    term({{0, false}, {1, false}, {2, false}, {3, false}})}};
    CHECK(erode_via_components(phi) == ws_of("a & b & c", abcd));

    // connected input: same as plain erosion
    DnfForm conn{3, {term({{2, true}})}};
    CHECK(erode_via_components(conn) ==
          erode(ws_of("c"), StructuringElement::hamming_ball(3, 1)));

    // two far singletons erode away
    DnfForm far{3, {term({{0, true}, {1, true}, {2, true}}),
                    term({{0, false}, {1, false}, {2, false}})}};
    CHECK(erode_via_components(far).empty());

    Rng rng(42);
    StructuringElement u = StructuringElement::hamming_ball(4, 1);
    for (int i = 0; i < 300; ++i) {
        DnfForm dnf = random_dnf(rng, 4);
        CHECK(erode_via_components(dnf) == erode(models_of_dnf(dnf), u));
    }
}

TEST_CASE("variable-disjoint dilation") {
    // literals recover the conjunction-of-literals rule
    std::vector<Formula> lits = {parse_formula("a"), parse_formula("!b"), parse_formula("c")};
    Formula dilated = dilate_vardisjoint(lits, abc);
    WorldSet direct = dilate(ws_of("a & !b & c"), StructuringElement::hamming_ball(3, 1));
    CHECK(models(dilated, abc) == direct);

    // the two-block pattern
    std::vector<Formula> blocks = {parse_formula("a"), parse_formula("b <-> c")};
    CHECK(models(dilate_vardisjoint(blocks, abc), abc) ==
          dilate(ws_of("a & (b <-> c)"), StructuringElement::hamming_ball(3, 1)));

    std::vector<Formula> shared = {parse_formula("a & b"), parse_formula("b | c")};
    CHECK_THROWS_AS(dilate_vardisjoint(shared, abc), SharedVariables);

    // random variable partitions at N=4
    Rng rng(9);
    StructuringElement u = StructuringElement::hamming_ball(4, 1);
    const char* names[] = {"a", "b", "c", "d"};
    for (int i = 0; i < 200; ++i) {
        std::uint64_t split = 1 + rng.below(14);
        Formula left = Formula::top(), right = Formula::top();
        bool l0 = true, r0 = true;
        for (int atom = 0; atom < 4; ++atom) {
            Formula atom_lit = rng.below(2) ? Formula::atom(names[atom])
                                            : Formula::negation(Formula::atom(names[atom]));
            if (rng.below(3) == 0) continue;  // leave some atoms out entirely
            if ((split >> atom) & 1) {
                left = l0 ? atom_lit : Formula::disj(left, atom_lit);
                l0 = false;
            } else {
                right = r0 ? atom_lit : Formula::conj(right, atom_lit);
                r0 = false;
            }
        }
        WorldSet conj = models(Formula::conj(left, right), abcd);
        if (conj.empty()) continue;
        CHECK(models(dilate_vardisjoint({left, right}, abcd), abcd) == dilate(conj, u));
    }
}

TEST_CASE("prime implicates") {
    auto iff_pi = prime_implicates(parse_formula("a <-> b"), Alphabet({"a", "b"}));
    REQUIRE(iff_pi.size() == 2);
    CHECK(iff_pi[0] == term({{0, false}, {1, true}}));
    CHECK(iff_pi[1] == term({{0, true}, {1, false}}));

    auto conj_pi = prime_implicates(parse_formula("a & b"), Alphabet({"a", "b"}));
    REQUIRE(conj_pi.size() == 2);
    CHECK(conj_pi[0] == term({{0, true}}));
    CHECK(conj_pi[1] == term({{1, true}}));

    CHECK(prime_implicates(parse_formula("T"), abc).empty());
    CHECK(prime_implicates(parse_formula("a & !a"), abc) ==
          std::vector<LiteralList>{{}});
    CHECK_THROWS_AS(
        prime_implicates(parse_formula("a"), Alphabet({"a", "b", "c", "d", "e", "f", "g"})),
        ScaleExceeded);
}

TEST_CASE("prime implicates reconstruct the formula and bound the last erosion") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
        Alphabet alphabet(names);
        std::uint64_t universe = std::uint64_t{1} << (1 << n);
        Rng rng(300 + n);
        long long cases = n <= 3 ? static_cast<long long>(universe) : 4000;
        for (long long i = 0; i < cases; ++i) {
            std::uint64_t mask = n <= 3 ? static_cast<std::uint64_t>(i) : rng.below(universe);
            WorldSet ws = WorldSet::from_mask(n, mask);
            Formula f = from_models(ws, alphabet);
            auto pis = prime_implicates(f, alphabet);
            WorldSet conj = WorldSet::all(n);
            for (const auto& clause : pis) conj &= models_of_clause(clause, n);
            CHECK(conj == ws);
            if (!ws.empty() && ws != WorldSet::all(n)) {
                int depth = last_erosion_depth(ws);
                CHECK(depth <= n - 1);
                std::size_t shortest = 99;
                for (const auto& clause : pis) shortest = std::min(shortest, clause.size());
                CHECK(depth < static_cast<int>(shortest));
            }
        }
    }
}
