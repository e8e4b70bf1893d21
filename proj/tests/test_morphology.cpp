#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "morphlog/errors.hpp"
#include "morphlog/formula.hpp"
#include "morphlog/morphology.hpp"
#include "morphlog/rng.hpp"

using namespace morphlog;

namespace {

const Alphabet abc({"a", "b", "c"});
const Alphabet abcd({"a", "b", "c", "d"});

WorldSet ws_of(const std::string& text, const Alphabet& alphabet = abc) {
    return models(parse_formula(text, &alphabet), alphabet);
}

StructuringElement unit(int n) { return StructuringElement::hamming_ball(n, 1); }

// every structuring element the library ships, at three atoms
std::vector<StructuringElement> shipped_ses() {
    std::vector<WorldSet> rows;
    for (World w = 0; w < 8; ++w) {
        WorldSet row = WorldSet::single(3, w);
        row.set(w ^ 0b001);
        row.set(w ^ 0b011);
        rows.push_back(row);
    }
    return {
        unit(3),
        StructuringElement::hamming_ball(3, 2),
        StructuringElement::hamming_ball(3, 0),
        StructuringElement::restricted(3, 0b011, 1),
        StructuringElement::restricted(3, 0b001, 1),
        StructuringElement::restricted_exact2(3, 0b011),
        StructuringElement::restricted_exact2(3, 0b111),
        StructuringElement::explicit_relation(rows),
    };
}

// reference operators straight from the neighborhood definition
WorldSet erode_reference(const WorldSet& ws, const StructuringElement& se) {
    WorldSet out(ws.atom_count());
    for (World w = 0; w < ws.universe_size(); ++w)
        if (se.neighborhood(w).subset_of(ws)) out.set(w);
    return out;
}

WorldSet dilate_reference(const WorldSet& ws, const StructuringElement& se) {
    WorldSet out(ws.atom_count());
    for (World w = 0; w < ws.universe_size(); ++w)
        if (se.neighborhood(w).intersects(ws)) out.set(w);
    return out;
}

// centers of maximal Hamming balls contained in ws (strict-inclusion maximal)
WorldSet maximal_ball_centers(const WorldSet& ws) {
    int n = ws.atom_count();
    std::vector<std::pair<World, int>> balls;
    std::vector<WorldSet> ball_sets;
    for (World w = 0; w < ws.universe_size(); ++w) {
        for (int r = 0; r <= n; ++r) {
            WorldSet ball = StructuringElement::hamming_ball(n, r).neighborhood(w);
            if (!ball.subset_of(ws)) break;
            balls.push_back({w, r});
            ball_sets.push_back(ball);
        }
    }
    WorldSet centers(n);
    for (std::size_t i = 0; i < balls.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < balls.size() && maximal; ++j)
            if (i != j && ball_sets[i].subset_of(ball_sets[j]) && ball_sets[i] != ball_sets[j])
                maximal = false;
        if (maximal) centers.set(balls[i].first);
    }
    return centers;
}

}  // namespace

TEST_CASE("dilation and erosion against the reference definition") {
    for (const auto& se : shipped_ses())
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            WorldSet ws = WorldSet::from_mask(3, mask);
            CHECK(dilate(ws, se) == dilate_reference(ws, se));
            CHECK(erode(ws, se) == erode_reference(ws, se));
        }
}

TEST_CASE("golden dilation and erosion") {
    // size-1 dilation of (a&b&c)|(!a&!b&c)
    CHECK(dilate(ws_of("(a & b & c) | (!a & !b & c)"), unit(3)) ==
          ws_of("(!a | b | c) & (a | !b | c)"));
    CHECK(dilate(WorldSet::none(3), unit(3)).empty());
    CHECK(dilate(ws_of("a & b & c"), StructuringElement::restricted(3, 0b011, 1)) ==
          ws_of("(a & b & c) | (!a & b & c) | (a & !b & c)"));

    // size-1 erosion of c | (!a & !b)
    CHECK(erode(ws_of("c | (!a & !b)"), unit(3)) == ws_of("!a & !b & c"));
    CHECK(erode(WorldSet::all(3), unit(3)) == WorldSet::all(3));
    CHECK(erode(ws_of("(a | !b | !c) & (a | b | c)"), unit(3)) ==
          ws_of("(a & !b & c) | (a & b & !c)"));
}

TEST_CASE("iteration") {
    WorldSet sigma1 = ws_of("(a -> c) & (b -> c)");
    CHECK(iterate(sigma1, unit(3), 0, IterateMode::Erode) == sigma1);
    CHECK(iterate(sigma1, unit(3), 2, IterateMode::Erode).empty());
    CHECK(iterate(sigma1, unit(3), 1, IterateMode::Dilate) == WorldSet::all(3));

    // Hamming iteration law: composing unit steps equals the larger ball
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        WorldSet ws = WorldSet::from_mask(3, rng.below(256));
        for (int k = 0; k <= 3; ++k) {
            CHECK(iterate(ws, unit(3), k, IterateMode::Dilate) ==
                  dilate(ws, StructuringElement::hamming_ball(3, k)));
            CHECK(iterate(ws, unit(3), k, IterateMode::Erode) ==
                  erode(ws, StructuringElement::hamming_ball(3, k)));
        }
    }
}

TEST_CASE("conditional operators") {
    WorldSet phi = ws_of("a & b & c");
    WorldSet cond = ws_of("c");
    CHECK(conditional_dilate(phi, cond, unit(3), 0) == (phi & cond));
    CHECK(conditional_dilate(phi, cond, unit(3), 1) ==
          ws_of("(a & b & c) | (!a & b & c) | (a & !b & c)"));
    CHECK(conditional_erode(phi, cond, unit(3), 0) == (phi | cond));

    // brute-force one conditional erosion step
    WorldSet step = erode(phi | cond, unit(3)) | cond;
    CHECK(conditional_erode(phi, cond, unit(3), 1) == step);
}

TEST_CASE("reconstruction selects marked components") {
    WorldSet mask = ws_of("(a & b) | (a & c) | (b & c) | (!a & !b & !c)");
    WorldSet marker = ws_of("a & b & c");
    CHECK(reconstruct(marker, mask, unit(3)) == ws_of("(a & b) | (a & c) | (b & c)"));
    CHECK(reconstruct(WorldSet::none(3), mask, unit(3)).empty());
    CHECK(reconstruct(mask, mask, unit(3)) == mask);
}

TEST_CASE("opening and closing") {
    WorldSet phi = ws_of("(a & b) | (a & c) | (b & c) | (!a & !b & !c)");
    CHECK(open(phi, unit(3)) == ws_of("(a & b) | (a & c) | (b & c)"));
    CHECK(open(WorldSet::none(3), unit(3)).empty());

    for (const auto& se : shipped_ses())
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            WorldSet ws = WorldSet::from_mask(3, mask);
            WorldSet opened = open(ws, se);
            WorldSet closed = close(ws, se);
            CHECK(open(opened, se) == opened);
            CHECK(close(closed, se) == closed);
            CHECK(opened.subset_of(ws));
            CHECK(ws.subset_of(closed));
        }
}

TEST_CASE("last erosion") {
    auto [le, depth] = last_erosion(ws_of("(a | !b | !c) & (a | b | c)"), unit(3));
    CHECK(le == ws_of("(a & !b & c) | (a & b & !c)"));
    CHECK(depth == 1);

    auto full = last_erosion(WorldSet::all(3), unit(3));
    CHECK(full.first == WorldSet::all(3));
    CHECK(full.second == 0);

    // fixed point of the restricted element is found at first repetition
    auto fixed = last_erosion(ws_of("c"), StructuringElement::restricted(3, 0b011, 1));
    CHECK(fixed.first == ws_of("c"));
    CHECK(fixed.second == 0);

    CHECK_THROWS_AS(last_erosion(WorldSet::none(3), unit(3)), EmptyInput);
}

TEST_CASE("last dilation") {
    auto [ld, depth] =
        last_dilation(ws_of("a & b & c"), StructuringElement::restricted(3, 0b011, 1));
    CHECK(ld == ws_of("c"));
    CHECK(depth == 2);

    auto hamming_top = last_dilation(ws_of("a & b & c"), unit(3));
    CHECK(hamming_top.first == WorldSet::all(3));
    CHECK(hamming_top.second <= 3);

    auto top = last_dilation(WorldSet::all(3), unit(3));
    CHECK(top.second == 0);
    CHECK_THROWS_AS(last_dilation(WorldSet::none(3), unit(3)), EmptyInput);
}

TEST_CASE("ultimate erosion") {
    WorldSet phi = ws_of("(a & b) | (a & c) | (b & c) | (!a & !b & !c & !d)", abcd);
    WorldSet expected = ws_of("(a & b & c) | (!a & !b & !c & !d)", abcd);
    CHECK(ultimate_erosion(phi, unit(4)) == expected);
    CHECK(ultimate_erosion_components(phi, unit(4)) == expected);

    WorldSet single = WorldSet::single(3, 5);
    CHECK(ultimate_erosion(single, unit(3)) == single);
    CHECK(ultimate_erosion(WorldSet::none(3), unit(3)).empty());

    for (const auto& se : shipped_ses())
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            WorldSet ws = WorldSet::from_mask(3, mask);
            CHECK(ultimate_erosion(ws, se) == ultimate_erosion_components(ws, se));
        }
}

TEST_CASE("skeleton") {
    WorldSet phi = ws_of("(a & b) | (a & c) | (b & c) | (!a & !b & !c)");
    CHECK(skeleton(phi, unit(3)) == ws_of("(!a & !b & !c) | (a & b & c)"));

    WorldSet ball = StructuringElement::hamming_ball(3, 1).neighborhood(6);
    CHECK(skeleton(ball, unit(3)) == WorldSet::single(3, 6));
    CHECK(skeleton(WorldSet::none(3), unit(3)).empty());

    // maximal-ball-center oracle, exhaustive at N=3 over contingent sets
    for (std::uint64_t mask = 1; mask < 255; ++mask) {
        WorldSet ws = WorldSet::from_mask(3, mask);
        CHECK(skeleton(ws, unit(3)) == maximal_ball_centers(ws));
    }
}

TEST_CASE("connected components") {
    auto parts =
        connected_components(ws_of("(a & b) | (a & c) | (b & c) | (!a & !b & !c)"), unit(3));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == ws_of("!a & !b & !c"));  // contains the smallest world
    CHECK(parts[1] == ws_of("(a & b) | (a & c) | (b & c)"));

    auto whole = connected_components(ws_of("c"), unit(3));
    CHECK(whole.size() == 1);
    CHECK(connected_components(WorldSet::none(3), unit(3)).empty());

    // restricted adjacency splits along the frozen atom
    auto frozen =
        connected_components(WorldSet::all(3), StructuringElement::restricted(3, 0b011, 1));
    CHECK(frozen.size() == 2);
}

TEST_CASE("boundaries") {
    auto [ext, intr] = boundaries(ws_of("a & b & c"), unit(3));
    CHECK(ext == ws_of("(!a & b & c) | (a & !b & c) | (a & b & !c)"));
    CHECK(intr == ws_of("a & b & c"));  // erosion of a point is empty

    auto top = boundaries(WorldSet::all(3), unit(3));
    CHECK(top.second.empty());

    WorldSet fig3 = ws_of("c | (!a & !b)");
    auto fig = boundaries(fig3, unit(3));
    CHECK(fig.second == (fig3 - ws_of("!a & !b & c")));
}

TEST_CASE("stratification reproduces both tables") {
    WorldSet sigma1 = ws_of("(a -> c) & (b -> c)");

    Stratification order = stratify(sigma1, unit(3));
    CHECK(order.erosion_depth() == 1);
    CHECK(order.dilation_depth() == 1);
    auto rank_of = [&](const std::string& bits) {
        return order.rank(parse_world_bits(bits, 3));
    };
    CHECK(rank_of("001") == 0);
    for (const auto& bits : {"000", "101", "011", "111"}) CHECK(rank_of(bits) == 1);
    for (const auto& bits : {"100", "010", "110"}) CHECK(rank_of(bits) == 2);

    Stratification restricted = stratify(sigma1, StructuringElement::restricted(3, 0b011, 1));
    CHECK(restricted.erosion_depth() == 1);
    CHECK(restricted.dilation_depth() == 2);
    auto rrank = [&](const std::string& bits) {
        return restricted.rank(parse_world_bits(bits, 3));
    };
    for (const auto& bits : {"001", "101", "011", "111"}) CHECK(rrank(bits) == 0);
    CHECK(rrank("000") == 1);
    CHECK(rrank("100") == 2);
    CHECK(rrank("010") == 2);
    CHECK(rrank("110") == 3);

    Stratification top = stratify(WorldSet::all(3), unit(3));
    for (World w = 0; w < 8; ++w) CHECK(top.rank(w) == 0);

    CHECK_THROWS_AS(stratify(WorldSet::none(3), unit(3)), EmptyInput);
}

TEST_CASE("stratification levels are nested and the order is total") {
    for (const auto& se : shipped_ses())
        for (std::uint64_t mask = 1; mask < 256; ++mask) {
            WorldSet sigma = WorldSet::from_mask(3, mask);
            Stratification order = stratify(sigma, se);
            int max_rank = order.erosion_depth() + order.dilation_depth();
            WorldSet previous(3);
            for (int level = 0; level <= max_rank; ++level) {
                WorldSet stratum(3);
                for (World w = 0; w < 8; ++w)
                    if (order.rank(w) <= level) stratum.set(w);
                CHECK(previous.subset_of(stratum));
                previous = stratum;
            }
            // totality: every pair is comparable through integer ranks
            for (World w = 0; w < 8; ++w) CHECK((order.leq(w, 0) || order.leq(0, w)));
        }
}

TEST_CASE("distances from dilation match pairwise formulas") {
    // d(a&!b&c, b&c&d) computed on the four-atom alphabet
    WorldSet t1 = ws_of("a & !b & c", abcd);
    WorldSet t2 = ws_of("b & c & d", abcd);
    CHECK(min_distance(t1, t2, unit(4)) == 1);
    CHECK(min_distance(t1, t1, unit(4)) == 0);
    CHECK(hausdorff(WorldSet::single(3, 0), WorldSet::single(3, 7), unit(3)) == 3);

    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        WorldSet x = WorldSet::from_mask(3, 1 + rng.below(255));
        WorldSet y = WorldSet::from_mask(3, 1 + rng.below(255));
        int direct_min = 99, direct_haus = 0;
        x.for_each([&](World xw) {
            int best = 99;
            y.for_each([&](World yw) { best = std::min(best, hamming(xw, yw)); });
            direct_min = std::min(direct_min, best);
            direct_haus = std::max(direct_haus, best);
        });
        y.for_each([&](World yw) {
            int best = 99;
            x.for_each([&](World xw) { best = std::min(best, hamming(xw, yw)); });
            direct_haus = std::max(direct_haus, best);
        });
        CHECK(min_distance(x, y, unit(3)) == direct_min);
        CHECK(hausdorff(x, y, unit(3)) == direct_haus);
    }

    // restricted dilation never crosses the frozen atom
    CHECK_FALSE(min_distance(ws_of("a & b & c"), ws_of("!c"),
                             StructuringElement::restricted(3, 0b011, 1))
                    .has_value());
}

TEST_CASE("algebraic law suite at N=3 over all sets and shipped SEs") {
    auto ses = shipped_ses();
    for (const auto& se : ses) {
        for (std::uint64_t ma = 0; ma < 256; ++ma) {
            WorldSet x = WorldSet::from_mask(3, ma);
            WorldSet dx = dilate(x, se), ex = erode(x, se);
            // duality
            CHECK(ex == dilate(x.complement(), se).complement());
            // extensivity / anti-extensivity
            CHECK(x.subset_of(dx));
            CHECK(ex.subset_of(x));
            for (std::uint64_t mb = 0; mb < 256; ++mb) {
                WorldSet y = WorldSet::from_mask(3, mb);
                // adjunction
                CHECK(dilate(y, se).subset_of(x) == y.subset_of(erode(x, se)));
                // monotonicity
                if ((mb & ma) == mb) {
                    CHECK(dilate(y, se).subset_of(dx));
                    CHECK(erode(y, se).subset_of(ex));
                }
            }
        }
    }
    // union/intersection commutation on a seeded sample
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        WorldSet x = WorldSet::from_mask(3, rng.below(256));
        WorldSet y = WorldSet::from_mask(3, rng.below(256));
        for (const auto& se : ses) {
            CHECK(dilate(x | y, se) == (dilate(x, se) | dilate(y, se)));
            CHECK(erode(x & y, se) == (erode(x, se) & erode(y, se)));
        }
    }
}
