#include "doctest.h"

#include "oracles.hpp"
#include "stheta/fourier.hpp"

#include <sstream>

using namespace stheta;

namespace {

// Reference count: extends column by column through constrained_extend with
// no index reduction, no orbit sharing and no bit tricks.  Slow and obvious,
// which is the point.
long long reference_rep_count(const QuadraticForm& q, const FourierIndex& t) {
    if (t.genus == 0) return 1;
    long long total = 0;
    std::vector<std::vector<long long>> cols;
    auto rec = [&](auto&& self, int k) -> void {
        if (k == t.genus) {
            ++total;
            return;
        }
        std::vector<long long> inner(k, 0LL);
        for (int i = 0; i < k; ++i) inner[size_t(i)] = t.at(i, k);
        for (auto& w : constrained_extend(q, cols, t.at(k, k), inner)) {
            cols.push_back(std::move(w));
            self(self, k + 1);
            cols.pop_back();
        }
    };
    rec(rec, 0);
    return total;
}

FourierIndex idx2(long long a, long long b, long long d) {
    return FourierIndex(2, {a, b, d});
}

} // namespace

TEST_SUITE("fourier") {

TEST_CASE("index validation") {
    CHECK_NOTHROW(FourierIndex(1, {0}));
    CHECK_NOTHROW(FourierIndex(1, {6}));
    CHECK_NOTHROW(idx2(2, 1, 2));
    CHECK_NOTHROW(idx2(2, -2, 2)); // determinant zero is allowed

    CHECK_THROWS_AS(FourierIndex(1, {1}), std::invalid_argument);  // odd diagonal
    CHECK_THROWS_AS(FourierIndex(1, {-2}), std::invalid_argument); // negative
    CHECK_THROWS_AS(idx2(2, 3, 2), std::invalid_argument);         // bound violation
    CHECK_THROWS_AS(FourierIndex(2, {2, 0}), std::invalid_argument); // wrong length
    CHECK_THROWS_AS(FourierIndex(3, {2, 1, 1, 2, -2, 2}), std::invalid_argument); // not psd

    FourierIndex t = idx2(2, 1, 4);
    CHECK(t.at(0, 0) == 2);
    CHECK(t.at(0, 1) == 1);
    CHECK(t.at(1, 0) == 1);
    CHECK(t.at(1, 1) == 4);
    CHECK(t.trace() == 6);
    CHECK(FourierIndex::from_matrix(t.to_matrix()) == t);
}

TEST_CASE("index enumeration") {
    // genus zero: the single empty index
    auto g0 = enumerate_indices(0, 6);
    REQUIRE(g0.size() == 1);
    CHECK(g0[0].genus == 0);

    // genus one at bound 6: traces 0, 2, 4, 6
    auto g1 = enumerate_indices(1, 6);
    REQUIRE(g1.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(g1[i].at(0, 0) == 2 * (long long)i);

    // an odd bound holds nothing extra
    CHECK(enumerate_indices(1, 7).size() == 4);
    CHECK(enumerate_indices(1, 0).size() == 1);

    // genus two at bound 4, counted by hand: zero, two rank-one diagonals at
    // trace 2, two at trace 4, and diag (2,2) with off entry -2..2
    auto g2 = enumerate_indices(2, 4);
    CHECK(g2.size() == 10);

    // graded order, all valid, no duplicates
    GradedLess less;
    for (size_t i = 0; i + 1 < g2.size(); ++i) {
        CHECK(less(g2[i], g2[i + 1]));
        CHECK(g2[i].trace() <= g2[i + 1].trace());
    }
}

TEST_CASE("representation counts in genus one") {
    QuadraticForm e8 = make_e8();
    CHECK(representation_count(e8, FourierIndex(1, {2})) == 240);
    CHECK(representation_count(e8, FourierIndex(1, {4})) == 2160);
    CHECK(representation_count(e8, FourierIndex(1, {0})) == 1);
}

TEST_CASE("representation counts in genus two match the root-pair model") {
    QuadraticForm e8 = make_e8();
    auto hist = oracle::e8_root_pair_histogram();
    for (long long c = -2; c <= 2; ++c) {
        long long expected = hist.count(c) ? hist.at(c) : 0;
        CHECK(representation_count(e8, idx2(2, c, 2)) == expected);
    }
    // the two values pinned in the module contract
    CHECK(representation_count(e8, idx2(2, 1, 2)) == 13440);
    CHECK(representation_count(e8, idx2(2, 0, 2)) == 30240);
}

TEST_CASE("zero rows reduce the problem") {
    QuadraticForm e8 = make_e8();
    CHECK(representation_count(e8, idx2(2, 0, 0)) == 240);
    CHECK(representation_count(e8, FourierIndex(3, {0, 0, 0, 0, 0, 0})) == 1);
    CHECK(representation_count(e8, FourierIndex(3, {0, 0, 0, 4, 0, 0})) == 2160);
}

TEST_CASE("optimized engines agree with the column-by-column reference") {
    QuadraticForm e8 = make_e8();
    for (int genus = 2; genus <= 3; ++genus)
        for (const FourierIndex& t : enumerate_indices(genus, 4))
            CHECK(representation_count(e8, t) == reference_rep_count(e8, t));
}

TEST_CASE("budget propagates out of the counting engines") {
    clear_fourier_caches();
    clear_shell_cache();
    QuadraticForm e8 = make_e8();
    NodeBudget ten(10);
    CHECK_THROWS_AS(representation_count(e8, FourierIndex(1, {4}), &ten), BudgetExceeded);
    clear_fourier_caches();
    clear_shell_cache();
}

TEST_CASE("theta expansion tables") {
    QuadraticForm e8 = make_e8();
    Expansion t1 = theta_expansion(e8, 1, 8);
    CHECK(t1.genus == 1);
    CHECK(t1.weight == Weight(4, 1));
    CHECK(t1.form_label == "E8");
    REQUIRE(t1.coeffs.size() == 5);
    long long expect[] = {1, 240, 2160, 6720, 17520};
    size_t k = 0;
    for (const auto& [idx, c] : t1.coeffs) {
        CHECK(idx.at(0, 0) == 2 * (long long)k);
        CHECK(c == expect[k]);
        ++k;
    }

    Expansion t0 = theta_expansion(e8, 0, 6);
    REQUIRE(t0.coeffs.size() == 1);
    CHECK(t0.coeffs.begin()->second == 1);
}

TEST_CASE("expansion subtraction") {
    QuadraticForm e8 = make_e8();
    Expansion a = theta_expansion(e8, 1, 6);
    Expansion d = expansion_sub(a, a);
    for (const auto& [idx, c] : d.coeffs) CHECK(c == 0);
    CHECK(d.form_label == "E8-E8");

    Expansion b = theta_expansion(e8, 1, 4);
    CHECK_THROWS_AS(expansion_sub(a, b), std::invalid_argument); // bounds differ
}

TEST_CASE("singular index detection") {
    CHECK(is_singular(FourierIndex(1, {0})));
    CHECK_FALSE(is_singular(FourierIndex(1, {2})));
    CHECK(is_singular(idx2(2, 2, 2)));  // determinant zero
    CHECK(is_singular(idx2(2, 0, 0)));
    CHECK_FALSE(is_singular(idx2(2, 1, 2)));
}

TEST_CASE("unimodular index transport") {
    IMat u(2, 2);
    u.at(0, 0) = 1;
    u.at(0, 1) = 1;
    u.at(1, 1) = 1;
    FourierIndex t = unimodular_transform(idx2(2, 0, 2), u);
    CHECK(t == idx2(2, 2, 4));

    IMat bad(2, 2);
    bad.at(0, 0) = 2;
    bad.at(1, 1) = 1;
    CHECK_THROWS_AS(unimodular_transform(idx2(2, 0, 2), bad), std::invalid_argument);
}

TEST_CASE("zero padding embeds indices") {
    FourierIndex t = idx2(2, 1, 2);
    FourierIndex p = extend_by_zero(t, 1);
    CHECK(p.genus == 3);
    CHECK(p.at(0, 0) == 2);
    CHECK(p.at(0, 1) == 1);
    CHECK(p.at(1, 1) == 2);
    CHECK(p.at(0, 2) == 0);
    CHECK(p.at(2, 2) == 0);
    CHECK(p.trace() == t.trace());
}

TEST_CASE("cache file round trip and tamper rejection") {
    QuadraticForm e8 = make_e8();
    Expansion e = theta_expansion(e8, 2, 4);
    std::string text = expansion_to_string(e);

    Expansion back = expansion_from_string(text);
    CHECK(back.genus == e.genus);
    CHECK(back.trace_bound == e.trace_bound);
    CHECK(back.weight == e.weight);
    CHECK(back.form_label == e.form_label);
    CHECK(back.coeffs == e.coeffs);
    CHECK(expansion_to_string(back) == text); // byte-identical reserialization

    // flip one digit of a coefficient: checksum must catch it
    std::string tampered = text;
    size_t pos = tampered.find(": 240");
    REQUIRE(pos != std::string::npos);
    tampered[pos + 2] = '9';
    CHECK_THROWS(expansion_from_string(tampered));

    // checksum line missing entirely
    CHECK_THROWS(expansion_from_string(text.substr(0, text.rfind("checksum"))));

    // drop one body line and refresh the checksum: completeness check fires
    {
        Expansion partial = e;
        partial.coeffs.erase(std::prev(partial.coeffs.end()));
        CHECK_THROWS(expansion_from_string(expansion_to_string(partial)));
    }

    // an index past the bound, with a fresh checksum
    {
        Expansion bloated = e;
        bloated.coeffs.emplace(idx2(4, 0, 4), 7);
        CHECK_THROWS(expansion_from_string(expansion_to_string(bloated)));
    }
}

TEST_CASE("genus zero cache line") {
    QuadraticForm e8 = make_e8();
    Expansion t0 = theta_expansion(e8, 0, 2);
    Expansion back = expansion_from_string(expansion_to_string(t0));
    CHECK(back.coeffs == t0.coeffs);
}

} // TEST_SUITE
