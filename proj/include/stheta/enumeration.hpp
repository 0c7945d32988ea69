#pragma once

#include "stheta/budget.hpp"
#include "stheta/qforms.hpp"

#include <functional>
#include <span>
#include <vector>

namespace stheta {

/// All lattice vectors of one squared norm.  Closed under negation, free of
/// duplicates, sorted lexicographically.  Coordinates are stored flat in
/// int16, which covers every shell this project ever materializes; the
/// enumerator refuses to build a shell that would not fit.
struct NormShell {
    long long norm = 0;
    int rank = 0;
    std::vector<int16_t> flat;

    size_t size() const { return rank == 0 ? 0 : flat.size() / size_t(rank); }
    std::span<const int16_t> vec(size_t i) const {
        return {flat.data() + i * size_t(rank), size_t(rank)};
    }
};

/// Materialized shell, memoized per (form, norm).  The reference stays valid
/// until clear_shell_cache() is called.
const NormShell& vectors_of_norm(const QuadraticForm& q, long long m, NodeBudget* budget = nullptr);

/// Number of vectors of squared norm m, without materializing them (unless
/// the shell happens to be cached already).
long long count_by_norm(const QuadraticForm& q, long long m, NodeBudget* budget = nullptr);

/// Streaming enumeration; the callback sees each vector once.  Used for
/// shells too large to be worth storing.
void stream_vectors_of_norm(const QuadraticForm& q, long long m,
                            const std::function<void(std::span<const int16_t>)>& f,
                            NodeBudget* budget = nullptr);

/// All vectors w with w^t Q w = target_norm and v_i^t Q w = target_inner[i]
/// for the given fixed vectors v_i.  An impossible inner product (one that
/// already violates Cauchy-Schwarz against the norms) short-circuits to an
/// empty result before any enumeration runs.
std::vector<std::vector<long long>> constrained_extend(const QuadraticForm& q,
                                                       const std::vector<std::vector<long long>>& fixed,
                                                       long long target_norm,
                                                       const std::vector<long long>& target_inner,
                                                       NodeBudget* budget = nullptr);

void clear_shell_cache();

} // namespace stheta
