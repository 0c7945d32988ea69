#pragma once

#include "stheta/budget.hpp"
#include "stheta/enumeration.hpp"
#include "stheta/intmatrix.hpp"
#include "stheta/qforms.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace stheta {

/// Index of one Fourier coefficient in genus n: a symmetric positive
/// semidefinite integer matrix with even diagonal, stored as the upper
/// triangle read row by row.  Off-diagonal entries are bounded eagerly by
/// |t_ij| <= floor(sqrt(t_ii t_jj)); violating matrices are rejected at
/// construction, not discovered later.
struct FourierIndex {
    int genus = 0;
    std::vector<long long> ut;

    FourierIndex() = default;
    FourierIndex(int g, std::vector<long long> upper); // validates

    long long at(int i, int j) const;
    long long trace() const;
    IMat to_matrix() const;
    static FourierIndex from_matrix(const IMat& m);

    bool operator==(const FourierIndex& o) const { return genus == o.genus && ut == o.ut; }
};

/// Graded order: by trace first, then lexicographically on the upper
/// triangle.  This is the order coefficient tables are listed in everywhere.
struct GradedLess {
    bool operator()(const FourierIndex& a, const FourierIndex& b) const;
};

/// Reduced rational weight, printed as num/den.
struct Weight {
    long long num = 0;
    long long den = 1;
    Weight() = default;
    Weight(long long n, long long d);
    bool operator==(const Weight& o) const { return num == o.num && den == o.den; }
};

/// Truncated Fourier expansion: every valid index of trace up to trace_bound
/// appears exactly once.  A genus zero expansion is a single constant, keyed
/// by the empty index.
struct Expansion {
    int genus = 0;
    Weight weight;
    long long trace_bound = 0;
    std::string form_label;
    std::map<FourierIndex, long long, GradedLess> coeffs;
};

/// Every valid index with trace <= trace_bound, in graded order.
std::vector<FourierIndex> enumerate_indices(int genus, long long trace_bound);

/// Number of integer matrices G with G^t Q G = T.  Column-by-column
/// backtracking over norm shells, columns in descending diagonal order;
/// indices equivalent under signed permutations share one cached computation.
long long representation_count(const QuadraticForm& q, const FourierIndex& t,
                               NodeBudget* budget = nullptr);

/// Theta expansion of the form in the given genus: coefficient at T is the
/// representation count.  Weight is rank/2.
Expansion theta_expansion(const QuadraticForm& q, int genus, long long trace_bound,
                          NodeBudget* budget = nullptr);

/// Pointwise difference a - b.  Requires matching genus, weight and bound.
Expansion expansion_sub(const Expansion& a, const Expansion& b);

/// det T = 0, the boundary indices a cusp form must vanish on.
bool is_singular(const FourierIndex& t);

/// T |-> U^t T U for unimodular integer U.
FourierIndex unimodular_transform(const FourierIndex& t, const IMat& u);

/// T' |-> T' + zero block, the index embedding that drops a coefficient table
/// one genus down.
FourierIndex extend_by_zero(const FourierIndex& t, int extra);

/// Plain text cache format with a trailing checksum line.  read_expansion
/// rejects anything whose checksum, header or index order does not verify.
void write_expansion(std::ostream& os, const Expansion& e);
Expansion read_expansion(std::istream& is);
std::string expansion_to_string(const Expansion& e);
Expansion expansion_from_string(const std::string& text);

/// Drops memoized representation counts, pair histograms and adjacency
/// tables (the shell cache has its own clear).
void clear_fourier_caches();

} // namespace stheta
