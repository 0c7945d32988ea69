#include "stheta/grenier.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace stheta {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kDetTol = 1e-10;

} // namespace

SpecialPositiveMatrix::SpecialPositiveMatrix(Eigen::MatrixXd m) : y(std::move(m)) {
    if (y.rows() == 0 || y.rows() != y.cols())
        throw std::invalid_argument("matrix must be square and non-empty");
    if ((y - y.transpose()).cwiseAbs().maxCoeff() > kSymTol)
        throw std::invalid_argument("matrix must be symmetric");
    y = ((y + y.transpose()) / 2).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0)
        throw std::invalid_argument("matrix must be positive definite");
    double det = y.determinant();
    renormalized = std::abs(det - 1.0) > kDetTol;
    if (std::abs(det - 1.0) > 1e-15)
        y /= std::pow(det, 1.0 / double(y.rows()));
}

SpecialPositiveMatrix SpecialPositiveMatrix::identity(int n) {
    return SpecialPositiveMatrix(Eigen::MatrixXd::Identity(n, n));
}

PowerParameters::PowerParameters(int size, std::vector<std::complex<double>> exponents)
    : n(size), s(std::move(exponents)) {
    if (n < 1 || int(s.size()) != n - 1)
        throw std::invalid_argument("need exactly n-1 exponents");
}

GrenierDecomposition decompose(const SpecialPositiveMatrix& y) {
    int n = y.size();
    if (n < 2) throw std::invalid_argument("no decomposition in size 1");
    double corner = y.y(0, 0);
    double v = 1.0 / corner;
    Eigen::VectorXd x = y.y.col(0).tail(n - 1) / corner;
    Eigen::MatrixXd schur =
        y.y.bottomRightCorner(n - 1, n - 1) -
        y.y.col(0).tail(n - 1) * y.y.row(0).tail(n - 1) / corner;
    Eigen::MatrixXd w = std::pow(v, -1.0 / double(n - 1)) * schur;
    return GrenierDecomposition{v, std::move(x), SpecialPositiveMatrix(std::move(w))};
}

SpecialPositiveMatrix recompose(const GrenierDecomposition& d) {
    if (!(d.v > 0)) throw std::invalid_argument("v must be positive");
    int n = d.w.size() + 1;
    if (d.x.size() != n - 1) throw std::invalid_argument("offset length must match block size");
    Eigen::MatrixXd y(n, n);
    y(0, 0) = 1.0 / d.v;
    y.col(0).tail(n - 1) = d.x / d.v;
    y.row(0).tail(n - 1) = d.x.transpose() / d.v;
    y.bottomRightCorner(n - 1, n - 1) =
        d.x * d.x.transpose() / d.v + std::pow(d.v, 1.0 / double(n - 1)) * d.w.y;
    return SpecialPositiveMatrix(std::move(y));
}

std::complex<double> power_function(const SpecialPositiveMatrix& y, const PowerParameters& p) {
    if (p.n != y.size()) throw std::invalid_argument("parameter size must match the matrix");
    std::complex<double> out(1.0, 0.0);
    for (int j = 1; j < p.n; ++j) {
        double minor_det = y.y.topLeftCorner(j, j).determinant();
        out *= std::pow(std::complex<double>(minor_det, 0.0), -p.s[j - 1]);
    }
    return out;
}

std::complex<double> xi1(const PowerParameters& p) {
    if (p.n < 2) throw std::invalid_argument("needs size at least 2");
    std::complex<double> sum(0.0, 0.0);
    for (int k = 2; k <= p.n - 1; ++k) sum += double(p.n - k) * p.s[k - 1];
    return sum / double(p.n - 1);
}

PowerParameters grenier_l_power(const PowerParameters& p) {
    if (p.n < 2) throw std::invalid_argument("needs size at least 2");
    return PowerParameters(p.n - 1, {p.s.begin() + 1, p.s.end()});
}

LimitReport grenier_l_numeric(const MatrixFunction& f, const PowerParameters& p,
                              const SpecialPositiveMatrix& w, const Eigen::VectorXd& x,
                              const std::vector<double>& v_schedule) {
    if (p.n < 2) throw std::invalid_argument("needs size at least 2");
    if (w.size() != p.n - 1 || x.size() != p.n - 1)
        throw std::invalid_argument("block and offset sizes must match the parameters");
    if (v_schedule.empty()) throw std::invalid_argument("empty v schedule");
    for (size_t i = 0; i < v_schedule.size(); ++i) {
        if (!(v_schedule[i] > 0))
            throw std::invalid_argument("v schedule entries must be positive");
        if (i > 0 && !(v_schedule[i] > v_schedule[i - 1]))
            throw std::invalid_argument("v schedule must be strictly increasing");
    }

    std::complex<double> exponent = -(p.s[0] + xi1(p));
    LimitReport rep;
    for (double v : v_schedule) {
        SpecialPositiveMatrix point = recompose(GrenierDecomposition{v, x, w});
        rep.values.push_back(std::pow(std::complex<double>(v, 0.0), exponent) * f(point));
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
        v_schedule.size() >= 2 && v_schedule.back() >= 100.0 * v_schedule.front() * (1 - 1e-12);
    return rep;
}

SpecialPositiveMatrix gl_action(const Eigen::MatrixXd& g, const SpecialPositiveMatrix& y) {
    if (g.rows() != y.size() || g.cols() != y.size())
        throw std::invalid_argument("acting matrix size must match");
    double det = g.determinant();
    if (std::abs(std::abs(det) - 1.0) > kDetTol)
        throw std::invalid_argument("acting matrix must have |det| = 1");
    Eigen::MatrixXd out = g * y.y * g.transpose();
    out = ((out + out.transpose()) / 2).eval();
    return SpecialPositiveMatrix(std::move(out));
}

} // namespace stheta
