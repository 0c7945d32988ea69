#include "stheta/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stheta {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kSympTol = 1e-10;
constexpr double kCondLimit = 1e12;

double sym_defect(const Eigen::MatrixXd& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd standard_j(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return j;
}

std::complex<double> cpow_int(std::complex<double> base, long long k) {
    std::complex<double> out(1.0, 0.0);
    while (k > 0) {
        if (k & 1) out *= base;
        base *= base;
        k >>= 1;
    }
    return out;
}

// CZ+D together with a singularity check; shared by act and the automorphy
// factor so both fail in the same way on the same input.
Eigen::MatrixXcd denominator(const SymplecticElement& g, const SiegelPoint& z) {
    Eigen::MatrixXcd m = g.c() * z.z() + g.d();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    double smax = sv(0), smin = sv(sv.size() - 1);
    if (!(smin > 0) || !std::isfinite(smax / smin) || smax / smin > kCondLimit) {
        std::ostringstream msg;
        msg << "CZ+D is numerically singular (condition ";
        if (smin > 0)
            msg << smax / smin;
        else
            msg << "infinite";
        msg << ")";
        throw std::runtime_error(msg.str());
    }
    return m;
}

} // namespace

SiegelPoint::SiegelPoint(Eigen::MatrixXd X, Eigen::MatrixXd Y) : x(std::move(X)), y(std::move(Y)) {
    if (x.rows() == 0 || x.rows() != x.cols() || y.rows() != x.rows() || y.cols() != x.cols())
        throw std::invalid_argument("point needs square x, y of equal size");
    if (sym_defect(x) > kSymTol || sym_defect(y) > kSymTol)
        throw std::invalid_argument("point parts must be symmetric");
    x = ((x + x.transpose()) / 2).eval();
    y = ((y + y.transpose()) / 2).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0)
        throw std::invalid_argument("imaginary part must be positive definite");
}

Eigen::MatrixXcd SiegelPoint::z() const {
    return x.cast<std::complex<double>>() + std::complex<double>(0, 1) * y.cast<std::complex<double>>();
}

SiegelPoint SiegelPoint::upper_identity(int n) {
    return SiegelPoint(Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Identity(n, n));
}

SymplecticElement::SymplecticElement(Eigen::MatrixXd g) : m(std::move(g)) {
    if (m.rows() == 0 || m.rows() != m.cols() || m.rows() % 2 != 0)
        throw std::invalid_argument("group element must be square of even size");
    int n = int(m.rows()) / 2;
    Eigen::MatrixXd j = standard_j(n);
    double defect = (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
    if (!(defect <= kSympTol))
        throw std::invalid_argument("matrix is not symplectic (defect " + std::to_string(defect) + ")");
}

SymplecticElement symplectic_identity(int n) {
    return SymplecticElement(Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

SymplecticElement symplectic_inversion(int n) {
    return SymplecticElement(standard_j(n));
}

SiegelPoint act(const SymplecticElement& g, const SiegelPoint& z) {
    Eigen::MatrixXcd den = denominator(g, z);
    Eigen::MatrixXcd num = g.a() * z.z() + g.b();
    // num * den^{-1}, via the transposed system
    Eigen::MatrixXcd w = den.transpose().partialPivLu().solve(num.transpose()).transpose();
    w = ((w + w.transpose()) / 2).eval();
    return SiegelPoint(w.real(), w.imag());
}

std::complex<double> automorphy_factor(const SymplecticElement& g, const SiegelPoint& z, ScalarWeight w) {
    if (w.k < 0) throw std::invalid_argument("weight must be non-negative");
    std::complex<double> det = denominator(g, z).partialPivLu().determinant();
    return cpow_int(det, w.k);
}

EvalResult eval_expansion(const Expansion& a, const SiegelPoint& z) {
    if (a.genus != z.genus())
        throw std::invalid_argument("expansion and point genus differ");
    int n = a.genus;
    EvalResult out;
    double max_abs = 0;
    std::complex<double> sum(0, 0);
    for (const auto& [idx, coeff] : a.coeffs) {
        // tr(T Z) over symmetric T: diagonal once, off-diagonal twice
        std::complex<double> tr(0, 0);
        for (int i = 0; i < n; ++i) {
            tr += double(idx.at(i, i)) * std::complex<double>(z.x(i, i), z.y(i, i));
            for (int j = i + 1; j < n; ++j)
                tr += 2.0 * double(idx.at(i, j)) * std::complex<double>(z.x(i, j), z.y(i, j));
        }
        // e^{pi i tr}: the real part of i*tr is -pi*tr_im
        double mag = std::exp(-std::numbers::pi * tr.imag());
        double ph = std::numbers::pi * tr.real();
        sum += double(coeff) * mag * std::complex<double>(std::cos(ph), std::sin(ph));
        max_abs = std::max(max_abs, std::abs(double(coeff)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(z.y, Eigen::EigenvaluesOnly);
    double y0 = es.eigenvalues().minCoeff();
    out.value = sum;
    out.tail_bound = max_abs * std::exp(-std::numbers::pi * y0 * double(a.trace_bound + 2));
    return out;
}

SymplecticElement standard_section(const SiegelPoint& z) {
    int n = z.genus();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(z.y);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition of the imaginary part failed");
    Eigen::MatrixXd root = es.operatorSqrt();
    Eigen::MatrixXd inv_root = es.operatorInverseSqrt();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n) = root;
    g.topRightCorner(n, n) = z.x * inv_root;
    g.bottomRightCorner(n, n) = inv_root;
    return SymplecticElement(std::move(g));
}

std::complex<double> lift_q(const Expansion& f, const SymplecticElement& g, ScalarWeight w) {
    if (f.genus != g.genus())
        throw std::invalid_argument("expansion and group element genus differ");
    if (f.weight.den != 1 || f.weight.num != w.k)
        throw std::invalid_argument("expansion weight does not match the lift weight");
    SiegelPoint base = SiegelPoint::upper_identity(f.genus);
    SiegelPoint moved = act(g, base);
    std::complex<double> j = automorphy_factor(g, base, w);
    return eval_expansion(f, moved).value / j;
}

std::complex<double> descend_p(const GroupFunction& F, const SiegelPoint& z, ScalarWeight w) {
    SymplecticElement g = standard_section(z);
    SiegelPoint base = SiegelPoint::upper_identity(z.genus());
    return automorphy_factor(g, base, w) * F(g);
}

namespace {

// g_t in the larger group: g on the first m coordinates, a sqrt(t) dilation
// on the remaining ones, interleaved to respect the (A, B; C, D) block
// layout.
SymplecticElement pad_with_dilation(const SymplecticElement& g, int n, double t) {
    int m = g.genus();
    int r = n - m;
    double rt = std::sqrt(t);
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    big.block(0, 0, m, m) = g.a();
    big.block(0, n, m, m) = g.b();
    big.block(n, 0, m, m) = g.c();
    big.block(n, n, m, m) = g.d();
    big.block(m, m, r, r) = rt * Eigen::MatrixXd::Identity(r, r);
    big.block(n + m, n + m, r, r) = (1.0 / rt) * Eigen::MatrixXd::Identity(r, r);
    return SymplecticElement(std::move(big));
}

} // namespace

LimitReport siegel_l(const GroupFunction& F, int upper_genus, const SymplecticElement& g,
                     ScalarWeight w, const std::vector<double>& t_schedule) {
    int m = g.genus();
    if (m >= upper_genus)
        throw std::invalid_argument("group element genus must be smaller than the target genus");
    if (t_schedule.empty())
        throw std::invalid_argument("empty t schedule");
    for (size_t i = 0; i < t_schedule.size(); ++i) {
        if (!(t_schedule[i] > 0))
            throw std::invalid_argument("t schedule entries must be positive");
        if (i > 0 && !(t_schedule[i] > t_schedule[i - 1]))
            throw std::invalid_argument("t schedule must be strictly increasing");
    }

    SiegelPoint base_m = SiegelPoint::upper_identity(m);
    SiegelPoint base_n = SiegelPoint::upper_identity(upper_genus);
    std::complex<double> j_small = automorphy_factor(g, base_m, w);

    LimitReport rep;
    for (double t : t_schedule) {
        SymplecticElement gt = pad_with_dilation(g, upper_genus, t);
        std::complex<double> j_big = automorphy_factor(gt, base_n, w);
        rep.values.push_back(j_big * F(gt) / j_small);
    }
    rep.value = rep.values.back();
    for (size_t i = 0; i + 1 < rep.values.size(); ++i)
        rep.diffs.push_back(std::abs(rep.values[i + 1] - rep.values[i]));
    // allow rounding-level wiggle so an already-converged sequence is not
    // misreported as divergent
    double noise = 1e-9 * std::max(1.0, std::abs(rep.value));
    for (size_t i = 0; i + 1 < rep.diffs.size(); ++i)
        if (rep.diffs[i + 1] > rep.diffs[i] + noise) rep.decreasing = false;
    rep.spans_two_decades =
        t_schedule.size() >= 2 && t_schedule.back() >= 100.0 * t_schedule.front() * (1 - 1e-12);
    return rep;
}

SiegelPoint embed_point(const SiegelPoint& z, int target_genus) {
    int m = z.genus();
    if (target_genus <= m) throw std::invalid_argument("target genus must exceed the point's genus");
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(target_genus, target_genus);
    Eigen::MatrixXd y = Eigen::MatrixXd::Identity(target_genus, target_genus);
    x.topLeftCorner(m, m) = z.x;
    y.topLeftCorner(m, m) = z.y;
    return SiegelPoint(std::move(x), std::move(y));
}

SymplecticElement embed_group(const SymplecticElement& g, int target_genus) {
    int m = g.genus();
    if (target_genus <= m) throw std::invalid_argument("target genus must exceed the element's genus");
    return pad_with_dilation(g, target_genus, 1.0);
}

} // namespace stheta
