#pragma once

#include <complex>
#include <vector>

namespace stheta {

/// Outcome of evaluating a scaled limit along a finite schedule.  The caller
/// decides how to act on the flags: a schedule that does not span two decades
/// merits a warning, successive differences that fail to shrink mean the
/// limit cannot be trusted.
struct LimitReport {
    std::complex<double> value;               // value at the last schedule point
    std::vector<std::complex<double>> values; // one per schedule point
    std::vector<double> diffs;                // |values[j+1] - values[j]|
    bool decreasing = true;                   // successive differences non-increasing
    bool spans_two_decades = false;           // schedule covers a factor >= 100
    bool converged() const { return decreasing && spans_two_decades; }
};

} // namespace stheta
