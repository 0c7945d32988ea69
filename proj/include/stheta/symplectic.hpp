#pragma once

#include "stheta/fourier.hpp"
#include "stheta/limit_report.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace stheta {

/// Point Z = X + iY of the genus-n upper half space: X, Y symmetric, Y
/// positive definite.  Construction validates (symmetry within 1e-12) and
/// then symmetrizes exactly to stop rounding drift from accumulating.
struct SiegelPoint {
    Eigen::MatrixXd x, y;
    SiegelPoint(Eigen::MatrixXd X, Eigen::MatrixXd Y);
    int genus() const { return int(x.rows()); }
    Eigen::MatrixXcd z() const;
    static SiegelPoint upper_identity(int n); // Z = iI
};

/// Real 2n x 2n matrix g with g^t J g = J within 1e-10.
struct SymplecticElement {
    Eigen::MatrixXd m;
    explicit SymplecticElement(Eigen::MatrixXd g);
    int genus() const { return int(m.rows()) / 2; }
    Eigen::MatrixXd a() const { return m.topLeftCorner(genus(), genus()); }
    Eigen::MatrixXd b() const { return m.topRightCorner(genus(), genus()); }
    Eigen::MatrixXd c() const { return m.bottomLeftCorner(genus(), genus()); }
    Eigen::MatrixXd d() const { return m.bottomRightCorner(genus(), genus()); }
};

SymplecticElement symplectic_identity(int n);
SymplecticElement symplectic_inversion(int n); // blocks (0, I; -I, 0)

/// One-dimensional weight: the representation det^k.
struct ScalarWeight {
    long long k = 0;
};

/// Moebius action (AZ+B)(CZ+D)^{-1}, symmetrized.  Throws when CZ+D is
/// numerically singular, reporting the condition number.
SiegelPoint act(const SymplecticElement& g, const SiegelPoint& z);

/// det(CZ+D)^k.
std::complex<double> automorphy_factor(const SymplecticElement& g, const SiegelPoint& z, ScalarWeight w);

struct EvalResult {
    std::complex<double> value;
    double tail_bound = 0; // max stored |coefficient| * exp(-pi*y0*(B+2))
};

/// Truncated Fourier sum at Z, with the standard tail estimate driven by the
/// smallest eigenvalue of Y.
EvalResult eval_expansion(const Expansion& a, const SiegelPoint& z);

/// The upper triangular section Z -> g(Z) = (Y^{1/2}, X Y^{-1/2}; 0, Y^{-1/2}),
/// which moves iI to Z.
SymplecticElement standard_section(const SiegelPoint& z);

/// Group-side lift (Q f)(g) = J(g, iI)^{-1} f(g.iI).  The expansion's weight
/// must agree with w for the lift to transform correctly.
std::complex<double> lift_q(const Expansion& f, const SymplecticElement& g, ScalarWeight w);

using GroupFunction = std::function<std::complex<double>(const SymplecticElement&)>;

/// Half-space side (P F)(Z) = J(g(Z), iI) F(g(Z)) along the standard section.
std::complex<double> descend_p(const GroupFunction& F, const SiegelPoint& z, ScalarWeight w);

/// Scaled boundary limit: evaluates J_m(g,iI)^{-1} J_n(g_t,iI) F(g_t) along
/// the t schedule, where g_t pads g with a sqrt(t) dilation block on the
/// extra coordinates.  F lives on genus upper_genus, g on a smaller genus.
LimitReport siegel_l(const GroupFunction& F, int upper_genus, const SymplecticElement& g,
                     ScalarWeight w, const std::vector<double>& t_schedule);

/// Z -> diag(Z, iI) into a larger genus.
SiegelPoint embed_point(const SiegelPoint& z, int target_genus);

/// Interleaved block embedding of the symplectic group compatible with
/// embed_point; preserves the symplectic relation exactly.
SymplecticElement embed_group(const SymplecticElement& g, int target_genus);

} // namespace stheta
