#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "morphlog/errors.hpp"
#include "morphlog/formula.hpp"
#include "morphlog/structuring.hpp"

using namespace morphlog;

namespace {

const Alphabet abc({"a", "b", "c"});

World w(const std::string& bits) { return parse_world_bits(bits, bits.size()); }

WorldSet set_of(std::initializer_list<std::string> worlds, int n = 3) {
    WorldSet ws(n);
    for (const auto& bits : worlds) ws.set(parse_world_bits(bits, n));
    return ws;
}

}  // namespace

TEST_CASE("hamming distance") {
    CHECK(hamming(w("111"), w("011")) == 1);  // d(a&b&c, !a&b&c)
    CHECK(hamming(w("101"), w("101")) == 0);
    CHECK(hamming(w("000"), w("111")) == 3);
}

TEST_CASE("distance to a set") {
    WorldSet abcs = set_of({"111"});
    CHECK(dist_to_formula(w("111"), abcs) == 0);
    CHECK(dist_to_formula(w("110"), abcs) == 1);
    CHECK_FALSE(dist_to_formula(w("110"), WorldSet::none(3)).has_value());
}

TEST_CASE("betweenness of the Hamming metric, exhaustive at N=3") {
    for (World x = 0; x < 8; ++x)
        for (World y = 0; y < 8; ++y) {
            int d = hamming(x, y);
            for (int k = 0; k <= d; ++k) {
                bool found = false;
                for (World z = 0; z < 8 && !found; ++z)
                    found = hamming(x, z) == k && hamming(z, y) == d - k;
                CHECK(found);
            }
        }
}

TEST_CASE("neighborhoods") {
    StructuringElement unit = StructuringElement::hamming_ball(3, 1);
    CHECK(unit.neighborhood(w("111")) == set_of({"111", "011", "101", "110"}));

    StructuringElement ab1 = StructuringElement::restricted(3, 0b011, 1);
    CHECK(ab1.neighborhood(w("111")) == set_of({"111", "011", "101"}));

    StructuringElement ab2 = StructuringElement::restricted_exact2(3, 0b011);
    CHECK(ab2.neighborhood(w("111")) == set_of({"111", "001"}));

    StructuringElement zero = StructuringElement::hamming_ball(3, 0);
    CHECK(zero.neighborhood(w("101")) == set_of({"101"}));
}

TEST_CASE("hamming ball of radius r composes unit balls") {
    for (int r = 0; r <= 3; ++r) {
        StructuringElement ball = StructuringElement::hamming_ball(3, r);
        for (World x = 0; x < 8; ++x) {
            WorldSet direct(3);
            for (World y = 0; y < 8; ++y)
                if (hamming(x, y) <= r) direct.set(y);
            CHECK(ball.neighborhood(x) == direct);
        }
    }
}

TEST_CASE("validation") {
    CHECK(StructuringElement::hamming_ball(3, 1).validate().ok());
    CHECK(StructuringElement::hamming_ball(3, 2).validate().ok());
    CHECK(StructuringElement::restricted(3, 0b011, 1).validate().ok());
    CHECK(StructuringElement::restricted_exact2(3, 0b011).validate().ok());

    // constructed asymmetry: B_w0 = {w0, w1} but B_w1 = {w1}
    std::vector<WorldSet> rows;
    for (World x = 0; x < 8; ++x) rows.push_back(WorldSet::single(3, x));
    rows[0].set(1);
    StructuringElement bad = StructuringElement::explicit_unchecked(rows);
    ValidationReport report = bad.validate();
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.symmetric);
    CHECK(report.reflexive);
    CHECK(report.symmetry_witness == std::pair<World, World>{0, 1});
    CHECK_THROWS_AS(StructuringElement::explicit_relation(rows), Error);

    // missing reflexive edge
    std::vector<WorldSet> norefl;
    for (World x = 0; x < 8; ++x) norefl.push_back(WorldSet::single(3, x));
    norefl[2] = WorldSet::none(3);
    CHECK_FALSE(StructuringElement::explicit_unchecked(norefl).validate().reflexive);
}

TEST_CASE("dilate and erode agree with row-wise definitions on an explicit SE") {
    StructuringElement unit = StructuringElement::hamming_ball(3, 1);
    std::vector<WorldSet> rows;
    for (World x = 0; x < 8; ++x) rows.push_back(unit.neighborhood(x));
    StructuringElement copy = StructuringElement::explicit_relation(rows);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        WorldSet ws = WorldSet::from_mask(3, mask);
        CHECK(copy.dilate(ws) == unit.dilate(ws));
        CHECK(copy.erode(ws) == unit.erode(ws));
    }
}

TEST_CASE("se spec strings") {
    CHECK(parse_se("hamming:1", abc).kind() == StructuringElement::Kind::HammingBall);
    StructuringElement ab = parse_se("restricted:a,b:1", abc);
    CHECK(ab.abducible_mask() == 0b011);
    CHECK(ab.radius() == 1);
    CHECK(ab.spec_string(abc) == "restricted:a,b:1");
    CHECK(parse_se("restricted2:a,b", abc).spec_string(abc) == "restricted2:a,b");
    CHECK_THROWS_AS(parse_se("restricted:q:1", abc), UnknownAtom);
    CHECK_THROWS_AS(parse_se("weird:1", abc), Error);
}

TEST_CASE("world bit strings") {
    CHECK(world_bits(w("011"), 3) == "011");
    CHECK(parse_world_bits("011", 3) == 6);  // a=0, b=1, c=1
    CHECK_THROWS_AS(parse_world_bits("01", 3), Error);
    CHECK_THROWS_AS(parse_world_bits("01x", 3), Error);
}

TEST_CASE("large-universe set operations stay consistent") {
    int n = 12;
    StructuringElement unit = StructuringElement::hamming_ball(n, 1);
    WorldSet ws(n);
    ws.set(0);
    ws.set((World{1} << n) - 1);
    WorldSet dilated = unit.dilate(ws);
    CHECK(dilated.count() == 2 * (1 + n));
    // closing is extensive
    CHECK(ws.subset_of(unit.erode(dilated)));
    // a dilation step grows by exactly the external boundary
    CHECK((dilated - ws).count() == 2 * n);
}
