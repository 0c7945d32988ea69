#pragma once

#include "stheta/exact.hpp"

#include <cstddef>
#include <vector>

namespace stheta {

/// Dense matrix over exact integers.  Small and unoptimized on purpose: rows
/// and columns stay below a few dozen everywhere in this project.
class IMat {
  public:
    IMat() : rows_(0), cols_(0) {}
    IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {}

    static IMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const IMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IMat transpose() const;
    IMat mul(const IMat& o) const;
    bool is_symmetric() const;

  private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// Fraction-free determinant (Bareiss).  Exact for any square integer matrix.
Int bareiss_det(const IMat& m);

/// Determinants of the k-by-k leading principal submatrices, k = 1..n.
std::vector<Int> leading_principal_minors(const IMat& m);

/// Positive definiteness via leading principal minors, all > 0.
bool is_positive_definite(const IMat& m);

/// Positive semidefiniteness for symmetric m: every principal minor >= 0.
/// Exponential in the dimension, fine for the small matrices it is used on.
bool is_positive_semidefinite(const IMat& m);

} // namespace stheta
