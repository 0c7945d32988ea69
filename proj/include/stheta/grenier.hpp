#pragma once

#include "stheta/limit_report.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace stheta {

/// Point of the SL(n) symmetric space: symmetric positive definite with
/// determinant one.  Construction symmetrizes and rescales to determinant
/// one; `renormalized` records whether the input's determinant was off by
/// more than the tolerance (callers may want to report that).
struct SpecialPositiveMatrix {
    Eigen::MatrixXd y;
    bool renormalized = false;
    explicit SpecialPositiveMatrix(Eigen::MatrixXd m);
    int size() const { return int(y.rows()); }
    static SpecialPositiveMatrix identity(int n);
};

/// The unique corner decomposition of a determinant-one positive matrix:
/// Y is rebuilt from the corner value 1/v, the offset column x, and a
/// determinant-one block w of size n-1.
struct GrenierDecomposition {
    double v;
    Eigen::VectorXd x;
    SpecialPositiveMatrix w;
};

/// Exponent vector (s_1, ..., s_{n-1}) of a power function on size-n space.
struct PowerParameters {
    int n;
    std::vector<std::complex<double>> s;
    PowerParameters(int size, std::vector<std::complex<double>> exponents);
};

GrenierDecomposition decompose(const SpecialPositiveMatrix& y); // needs n >= 2
SpecialPositiveMatrix recompose(const GrenierDecomposition& d);

/// Product of (det Y_j)^{-s_j} over the leading j x j blocks, j = 1..n-1.
std::complex<double> power_function(const SpecialPositiveMatrix& y, const PowerParameters& p);

/// The scaling exponent (1/(n-1)) * sum_{k=2}^{n-1} (n-k) s_k; zero for n = 2.
std::complex<double> xi1(const PowerParameters& p);

/// Exact boundary shift on power functions: drops s_1, reduces n by one.
PowerParameters grenier_l_power(const PowerParameters& p);

using MatrixFunction = std::function<std::complex<double>(const SpecialPositiveMatrix&)>;

/// Numeric boundary limit: evaluates v^{-s_1 - xi1} f(recompose(v, x, w))
/// along the v schedule.  For f a power function with exponents p this
/// converges to power_function(w, shifted p) for any offset x, and is
/// constant in v when x = 0.
LimitReport grenier_l_numeric(const MatrixFunction& f, const PowerParameters& p,
                              const SpecialPositiveMatrix& w, const Eigen::VectorXd& x,
                              const std::vector<double>& v_schedule);

/// Y -> g Y g^t; g must have |det| = 1 so the result stays on the space.
SpecialPositiveMatrix gl_action(const Eigen::MatrixXd& g, const SpecialPositiveMatrix& y);

} // namespace stheta
