#pragma once

#include "stheta/fourier.hpp"

#include <optional>
#include <vector>

namespace stheta {

/// Coherent sequence of expansions for genus 0..max_genus at one weight and
/// one trace bound.  Coherence under the boundary operator is verified when
/// the family is built.
struct StableFamily {
    int max_genus = 0;
    Weight weight;
    long long trace_bound = 0;
    std::vector<Expansion> members; // index = genus
};

/// Boundary restriction on coefficient tables: a'(T') = a(T' + zero block).
/// Truncation by trace makes this exact (trace is unchanged by the padding).
Expansion siegel_phi(const Expansion& a);

StableFamily theta_stable_family(const QuadraticForm& q, int max_genus, long long trace_bound,
                                 NodeBudget* budget = nullptr);

struct StabilityFailure {
    int upper_genus = 0;   // the pair checked is (upper_genus-1, upper_genus)
    FourierIndex index;    // genus upper_genus-1 index where coherence fails
    long long expected = 0; // coefficient stored at the lower genus
    long long found = 0;    // value pushed down from the upper genus
};

struct StabilityReport {
    bool coherent = true;
    std::vector<StabilityFailure> failures;
};

/// Checks adjacent-pair coherence of a list of expansions with consecutive
/// genera and equal weight/bound.  A single expansion is vacuously stable.
StabilityReport check_stability(const std::vector<Expansion>& members);
StabilityReport check_stability(const StableFamily& f);

/// Difference of the two rank-16 theta expansions in the given genus.  Zero
/// through genus 3; at genus 4 the first nonzero coefficients appear on the
/// trace-8 stratum with all diagonal entries 2.
Expansion igusa_form(int genus, long long trace_bound, NodeBudget* budget = nullptr);

struct CuspViolation {
    FourierIndex index;
    long long value = 0;
};

struct CuspReport {
    bool clean = true;
    long long singular_checked = 0;
    std::vector<CuspViolation> violations;
};

/// Scans every stored singular (determinant zero) index; a cusp form must
/// vanish on all of them within the truncation.
CuspReport cusp_surrogate_check(const Expansion& a);

struct SchottkyWitness {
    std::optional<FourierIndex> index;
    long long value = 0;
    long long scanned = 0;
};

/// Searches the genus-4 indices with diagonal (2,2,2,2) in graded order and
/// returns the first one where the two rank-16 forms disagree.  Requires
/// trace_bound >= 8 for the stratum to be visible at all.
SchottkyWitness schottky_witness(long long trace_bound, NodeBudget* budget = nullptr);

} // namespace stheta
