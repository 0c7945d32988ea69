#include "stheta/intmatrix.hpp"

#include <stdexcept>

namespace stheta {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::transpose() const {
    IMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IMat IMat::mul(const IMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IMat::mul: shape mismatch");
    IMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

bool IMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

// Bareiss fraction-free elimination.  Every division below is exact, so the
// computation never leaves the integers.
Int bareiss_det(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: matrix not square");
    int n = m.rows();
    if (n == 0) return Int(1);
    IMat w = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (w.at(r, k) != 0) { p = r; break; }
            if (p < 0) return Int(0);
            for (int c = k; c < n; ++c) std::swap(w.at(k, c), w.at(p, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w.at(i, j) = t;
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

std::vector<Int> leading_principal_minors(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("leading_principal_minors: matrix not square");
    std::vector<Int> out;
    for (int k = 1; k <= m.rows(); ++k) {
        IMat sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(i, j);
        out.push_back(bareiss_det(sub));
    }
    return out;
}

bool is_positive_definite(const IMat& m) {
    for (const Int& d : leading_principal_minors(m))
        if (d <= 0) return false;
    return true;
}

bool is_positive_semidefinite(const IMat& m) {
    if (!m.is_symmetric()) return false;
    int n = m.rows();
    // All principal minors, not just the leading ones: a zero diagonal entry
    // would make every leading test degenerate while an off-diagonal entry
    // could still break semidefiniteness.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        IMat sub(int(idx.size()), int(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) sub.at(int(i), int(j)) = m.at(idx[i], idx[j]);
        if (bareiss_det(sub) < 0) return false;
    }
    return true;
}

} // namespace stheta
