#pragma once

#include "stheta/intmatrix.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace stheta {

/// A positive definite integral quadratic form, given by its Gram matrix.
/// The forms this project cares about are even and unimodular, but the type
/// itself only insists on a symmetric integer matrix.
struct QuadraticForm {
    int rank = 0;
    IMat gram;
    std::string label;
};

/// Report produced by verify_even_unimodular.  Every field is checked
/// independently so a failure names the property that broke.
struct UnimodularReport {
    bool symmetric = false;
    bool even_diagonal = false;
    bool positive_definite = false;
    bool determinant_one = false;
    bool rank_multiple_of_eight = false;
    Int determinant;

    bool ok() const {
        return symmetric && even_diagonal && positive_definite && determinant_one &&
               rank_multiple_of_eight;
    }
    std::string summary() const;
};

UnimodularReport verify_even_unimodular(const QuadraticForm& q);

/// Rank 8, Gram matrix of the usual root basis.  Verified even unimodular at
/// construction time.
QuadraticForm make_e8();

/// Rank 16 form built from a chain of difference vectors, e15+e16 and the
/// all-halves glue vector.  The stated generator list is checked at build
/// time; if its Gram determinant is not 1 one chain generator is replaced by
/// the corresponding sum vector until verification passes.
QuadraticForm make_d16_plus();

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b, const std::string& label);

/// Lookup by the names used on the command line: E8, E8E8, D16PLUS.
QuadraticForm form_by_name(const std::string& name);

/// Bilinear evaluation x^t Q y in exact arithmetic.
Int evaluate(const QuadraticForm& q, std::span<const long long> x, std::span<const long long> y);

/// Plain text round trip: "form <label> rank <r>" followed by r rows.
std::string serialize(const QuadraticForm& q);
QuadraticForm parse_form(std::istream& in);
QuadraticForm parse_form(const std::string& text);

} // namespace stheta
