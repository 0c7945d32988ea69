#include "doctest.h"

#include "stheta/siegel.hpp"

using namespace stheta;

namespace {

bool same_table(const Expansion& a, const Expansion& b) {
    return a.genus == b.genus && a.trace_bound == b.trace_bound && a.weight == b.weight &&
           a.coeffs == b.coeffs;
}

} // namespace

TEST_SUITE("siegel") {

TEST_CASE("boundary restriction drops one genus") {
    QuadraticForm e8 = make_e8();
    Expansion t2 = theta_expansion(e8, 2, 6);
    Expansion t1 = theta_expansion(e8, 1, 6);
    Expansion dropped = siegel_phi(t2);
    CHECK(dropped.genus == 1);
    CHECK(same_table(dropped, t1));

    // down to genus zero: the constant term survives
    Expansion t0 = siegel_phi(t1);
    CHECK(t0.genus == 0);
    REQUIRE(t0.coeffs.size() == 1);
    CHECK(t0.coeffs.begin()->second == 1);

    CHECK_THROWS_AS(siegel_phi(t0), std::invalid_argument);
}

TEST_CASE("restriction composes transitively") {
    QuadraticForm e8 = make_e8();
    Expansion t3 = theta_expansion(e8, 3, 4);
    Expansion two_steps = siegel_phi(siegel_phi(t3));
    CHECK(same_table(two_steps, theta_expansion(e8, 1, 4)));
}

TEST_CASE("theta family construction verifies coherence") {
    QuadraticForm e8 = make_e8();
    StableFamily fam = theta_stable_family(e8, 3, 4);
    CHECK(fam.max_genus == 3);
    REQUIRE(fam.members.size() == 4);
    for (int g = 0; g <= 3; ++g) CHECK(fam.members[size_t(g)].genus == g);
    CHECK(check_stability(fam).coherent);
}

TEST_CASE("stability check localizes an injected fault") {
    QuadraticForm e8 = make_e8();
    std::vector<Expansion> fam;
    for (int g = 0; g <= 3; ++g) fam.push_back(theta_expansion(e8, g, 4));

    // corrupt one genus-2 coefficient at an index with nonzero last row, so
    // only the pair (2,3) can see it
    FourierIndex target(2, {2, 1, 2});
    long long original = fam[2].coeffs.at(target);
    fam[2].coeffs[target] = original + 5;

    StabilityReport rep = check_stability(fam);
    CHECK_FALSE(rep.coherent);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].upper_genus == 3);
    CHECK(rep.failures[0].index == target);
    CHECK(rep.failures[0].expected == original + 5); // what the lower table stores
    CHECK(rep.failures[0].found == original);        // what the upper table projects

    // corrupting an embedded index instead is seen from both sides
    fam[2].coeffs[target] = original;
    FourierIndex embedded(2, {2, 0, 0});
    fam[2].coeffs[embedded] += 1;
    StabilityReport rep2 = check_stability(fam);
    CHECK_FALSE(rep2.coherent);
    CHECK(rep2.failures.size() == 2);

    // the family constructor refuses incoherent data outright
    CHECK_THROWS(check_stability(std::vector<Expansion>{fam[0], fam[2]})); // gap in genus
}

TEST_CASE("vacuous and single member families") {
    QuadraticForm e8 = make_e8();
    StabilityReport rep = check_stability(std::vector<Expansion>{theta_expansion(e8, 1, 4)});
    CHECK(rep.coherent);
    CHECK(rep.failures.empty());
    CHECK(check_stability(std::vector<Expansion>{}).coherent);
}

TEST_CASE("rank 16 difference vanishes in low genus") {
    Expansion d1 = igusa_form(1, 8);
    for (const auto& [idx, c] : d1.coeffs) CHECK(c == 0);

    Expansion d2 = igusa_form(2, 4);
    for (const auto& [idx, c] : d2.coeffs) CHECK(c == 0);

    Expansion d0 = igusa_form(0, 4);
    REQUIRE(d0.coeffs.size() == 1);
    CHECK(d0.coeffs.begin()->second == 0);
}

TEST_CASE("cusp surrogate check") {
    // the difference form in genus 1 is identically zero, hence clean
    Expansion d1 = igusa_form(1, 6);
    CuspReport clean = cusp_surrogate_check(d1);
    CHECK(clean.clean);
    CHECK(clean.singular_checked == 1); // only the zero index is singular
    CHECK(clean.violations.empty());

    // a theta series is not a cusp form: its constant term is one
    QuadraticForm e8 = make_e8();
    CuspReport dirty = cusp_surrogate_check(theta_expansion(e8, 1, 6));
    CHECK_FALSE(dirty.clean);
    REQUIRE(dirty.violations.size() == 1);
    CHECK(dirty.violations[0].value == 1);

    // genus 2 at bound 4 has singular indices beyond the zero index
    Expansion d2 = igusa_form(2, 4);
    CuspReport r2 = cusp_surrogate_check(d2);
    CHECK(r2.clean);
    CHECK(r2.singular_checked > 1);
}

TEST_CASE("witness search needs the trace-8 stratum") {
    SchottkyWitness none = schottky_witness(6);
    CHECK_FALSE(none.index.has_value());
    CHECK(none.scanned == 0);
}

} // TEST_SUITE
