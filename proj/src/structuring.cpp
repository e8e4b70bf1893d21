#include "morphlog/structuring.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "morphlog/errors.hpp"

namespace morphlog {

namespace {

constexpr int kMaxExplicitAtoms = 14;

std::vector<std::uint32_t> flips_within(std::uint32_t ab_mask, int min_pop, int max_pop) {
    std::vector<std::uint32_t> flips;
    std::uint32_t sub = ab_mask;
    while (true) {
        int pop = std::popcount(sub);
        if (pop >= min_pop && pop <= max_pop) flips.push_back(sub);
        if (sub == 0) break;
        sub = (sub - 1) & ab_mask;
    }
    // smallest flip first, for reproducible neighborhood enumeration
    std::sort(flips.begin(), flips.end());
    return flips;
}

std::string atoms_of_mask(std::uint32_t mask, const Alphabet& alphabet) {
    std::string out;
    for (int i = 0; i < alphabet.size(); ++i) {
        if (!((mask >> i) & 1)) continue;
        if (!out.empty()) out += ',';
        out += alphabet.name(i);
    }
    return out;
}

}  // namespace

StructuringElement StructuringElement::hamming_ball(int atom_count, int radius) {
    if (radius < 0) throw Error("negative radius");
    StructuringElement se(Kind::HammingBall, atom_count);
    se.radius_ = radius;
    return se;
}

StructuringElement StructuringElement::restricted(int atom_count, std::uint32_t ab_mask,
                                                  int radius) {
    if (radius < 0) throw Error("negative radius");
    if (ab_mask >> atom_count) throw Error("abducible mask outside alphabet");
    StructuringElement se(Kind::Restricted, atom_count);
    se.radius_ = radius;
    se.ab_mask_ = ab_mask;
    se.flips_ = flips_within(ab_mask, 0, radius);
    return se;
}

StructuringElement StructuringElement::restricted_exact2(int atom_count,
                                                          std::uint32_t ab_mask) {
    if (ab_mask >> atom_count) throw Error("abducible mask outside alphabet");
    StructuringElement se(Kind::RestrictedExact2, atom_count);
    se.ab_mask_ = ab_mask;
    se.flips_ = flips_within(ab_mask, 2, 2);
    se.flips_.insert(se.flips_.begin(), 0u);  // reflexive
    return se;
}

StructuringElement StructuringElement::explicit_unchecked(std::vector<WorldSet> rows) {
    if (rows.empty()) throw Error("explicit relation needs at least one row");
    int n = rows.front().atom_count();
    if (n > kMaxExplicitAtoms)
        throw ScaleExceeded("explicit relations supported up to " +
                            std::to_string(kMaxExplicitAtoms) + " atoms");
    if (rows.size() != (std::size_t{1} << n))
        throw Error("explicit relation needs one row per world");
    StructuringElement se(Kind::Explicit, n);
    se.rows_ = std::move(rows);
    return se;
}

StructuringElement StructuringElement::explicit_relation(std::vector<WorldSet> rows) {
    StructuringElement se = explicit_unchecked(std::move(rows));
    ValidationReport report = se.validate();
    if (!report.ok()) {
        std::string what = "invalid explicit relation:";
        if (!report.reflexive)
            what += " not reflexive at world " +
                    world_bits(*report.reflexivity_witness, se.n_);
        if (!report.symmetric)
            what += " not symmetric at (" +
                    world_bits(report.symmetry_witness->first, se.n_) + "," +
                    world_bits(report.symmetry_witness->second, se.n_) + ")";
        throw Error(what);
    }
    return se;
}

WorldSet StructuringElement::neighborhood(World w) const {
    switch (kind_) {
        case Kind::HammingBall:
            return dilate(WorldSet::single(n_, w));
        case Kind::Restricted:
        case Kind::RestrictedExact2: {
            WorldSet out(n_);
            for (auto flip : flips_) out.set(w ^ flip);
            return out;
        }
        case Kind::Explicit:
            return rows_[w];
    }
    throw Error("unreachable");
}

WorldSet StructuringElement::dilate(const WorldSet& ws) const {
    switch (kind_) {
        case Kind::HammingBall: {
            WorldSet cur = ws;
            for (int step = 0; step < radius_; ++step) {
                WorldSet next = cur;
                for (int i = 0; i < n_; ++i) next.or_xor_shifted(cur, 1u << i);
                cur = next;
            }
            return cur;
        }
        case Kind::Restricted:
        case Kind::RestrictedExact2: {
            WorldSet out(n_);
            for (auto flip : flips_) out.or_xor_shifted(ws, flip);
            return out;
        }
        case Kind::Explicit: {
            WorldSet out(n_);
            ws.for_each([&](World w) { out |= rows_[w]; });
            return out;
        }
    }
    throw Error("unreachable");
}

WorldSet StructuringElement::erode(const WorldSet& ws) const {
    if (kind_ == Kind::Explicit) {
        WorldSet out(n_);
        for (World w = 0; w < (World{1} << n_); ++w)
            if (rows_[w].subset_of(ws)) out.set(w);
        return out;
    }
    // B_w subset of ws <=> for every flip, w^flip in ws
    if (kind_ == Kind::Restricted || kind_ == Kind::RestrictedExact2) {
        WorldSet out = WorldSet::all(n_);
        for (auto flip : flips_) {
            WorldSet shifted(n_);
            shifted.or_xor_shifted(ws, flip);
            out &= shifted;
        }
        return out;
    }
    // Hamming: dual of dilation
    return dilate(ws.complement()).complement();
}

ValidationReport StructuringElement::validate() const {
    ValidationReport report;
    World n_worlds = World{1} << n_;
    for (World w = 0; w < n_worlds && (report.symmetric || report.reflexive); ++w) {
        WorldSet row = neighborhood(w);
        if (report.reflexive && !row.test(w)) {
            report.reflexive = false;
            report.reflexivity_witness = w;
        }
        if (report.symmetric) {
            bool done = false;
            row.for_each([&](World v) {
                if (done) return;
                if (!neighborhood(v).test(w)) {
                    report.symmetric = false;
                    report.symmetry_witness = {w, v};
                    done = true;
                }
            });
        }
    }
    return report;
}

std::string StructuringElement::spec_string(const Alphabet& alphabet) const {
    switch (kind_) {
        case Kind::HammingBall:
            return "hamming:" + std::to_string(radius_);
        case Kind::Restricted:
            return "restricted:" + atoms_of_mask(ab_mask_, alphabet) + ":" +
                   std::to_string(radius_);
        case Kind::RestrictedExact2:
            return "restricted2:" + atoms_of_mask(ab_mask_, alphabet);
        case Kind::Explicit:
            return "explicit:<" + std::to_string(rows_.size()) + " rows>";
    }
    throw Error("unreachable");
}

namespace {

std::uint32_t parse_atom_mask(const std::string& comma_list, const Alphabet& alphabet) {
    std::uint32_t mask = 0;
    std::stringstream ss(comma_list);
    std::string atom;
    while (std::getline(ss, atom, ',')) {
        auto idx = alphabet.index_of(atom);
        if (!idx) throw UnknownAtom(atom);
        mask |= 1u << *idx;
    }
    return mask;
}

}  // namespace

StructuringElement parse_se(const std::string& spec, const Alphabet& alphabet) {
    auto first = spec.find(':');
    std::string kind = spec.substr(0, first);
    std::string rest = first == std::string::npos ? "" : spec.substr(first + 1);
    if (kind == "hamming") {
        return StructuringElement::hamming_ball(alphabet.size(), std::stoi(rest));
    }
    if (kind == "restricted") {
        auto second = rest.rfind(':');
        if (second == std::string::npos)
            throw Error("restricted spec needs atoms and radius: " + spec);
        std::uint32_t mask = parse_atom_mask(rest.substr(0, second), alphabet);
        return StructuringElement::restricted(alphabet.size(), mask,
                                              std::stoi(rest.substr(second + 1)));
    }
    if (kind == "restricted2") {
        return StructuringElement::restricted_exact2(alphabet.size(),
                                                     parse_atom_mask(rest, alphabet));
    }
    if (kind == "explicit") {
        return load_explicit_se(rest, alphabet);
    }
    throw Error("unknown structuring element spec '" + spec + "'");
}

StructuringElement load_explicit_se(const std::string& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open structuring element file '" + path + "'");
    int n = alphabet.size();
    World n_worlds = World{1} << n;
    std::vector<WorldSet> rows(n_worlds, WorldSet(n));
    for (World w = 0; w < n_worlds; ++w) rows[w].set(w);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string trimmed;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) trimmed += c;
        if (trimmed.empty()) continue;
        auto colon = trimmed.find(':');
        if (colon == std::string::npos)
            throw Error("bad relation line '" + line + "'");
        World w = parse_world_bits(trimmed.substr(0, colon), n);
        std::stringstream ss(trimmed.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ','))
            rows[w].set(parse_world_bits(item, n));
    }
    return StructuringElement::explicit_relation(std::move(rows));
}

}  // namespace morphlog
