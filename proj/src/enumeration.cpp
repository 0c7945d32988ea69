#include "stheta/enumeration.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace stheta {

namespace {

// Squared-norm completion data for one form, precomputed once.  Writing
// Q(x) = sum_i (qn_i/qd_i) * (x_i + c_i)^2  with  c_i = sum_{j>i} l_ij x_j,
// the row denominators are cleared so that the backtracking loop only ever
// touches integers:
//   l_ij = Lnum[i][j] / R[i],      u_i = R[i]*x_i + sum_{j>i} Lnum[i][j]*x_j,
// and with a global scale D = lcm_i(qd_i * R[i]^2) the remaining budget
//   That = D * (m - partial norm)
// decreases by exactly M[i] * u_i^2 at level i, where M[i] = D*qn_i/(qd_i*R[i]^2).
// Everything is exact; the only nonobvious step, the integer range for x_i,
// follows from u_i^2 <= floor(That / M[i]).
struct CholeskyProfile {
    int rank = 0;
    std::vector<long long> Lnum; // rank*rank, row-scaled numerators, j > i
    std::vector<long long> R;    // per-row denominator
    std::vector<Int> M;          // per-level budget factor
    Int D;
};

long long rat_to_ll(const Rat& r, const char* what) {
    if (r.get_den() != 1 || !r.get_num().fits_slong_p())
        throw std::runtime_error(std::string("enumeration profile overflow in ") + what);
    return r.get_num().get_si();
}

CholeskyProfile build_profile(const QuadraticForm& q) {
    const int n = q.rank;
    if (!q.gram.is_symmetric()) throw std::invalid_argument("enumeration: Gram matrix not symmetric");
    std::vector<Rat> c(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[size_t(i) * n + j] = Rat(q.gram.at(i, j));

    std::vector<Rat> qdiag(n), l(size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        Rat piv = c[size_t(i) * n + i];
        if (piv <= 0) throw std::invalid_argument("enumeration: form not positive definite");
        qdiag[i] = piv;
        for (int j = i + 1; j < n; ++j) l[size_t(i) * n + j] = c[size_t(i) * n + j] / piv;
        for (int r = i + 1; r < n; ++r)
            for (int s = r; s < n; ++s) {
                Rat upd = c[size_t(r) * n + s] - c[size_t(i) * n + r] * c[size_t(i) * n + s] / piv;
                c[size_t(r) * n + s] = upd;
                c[size_t(s) * n + r] = upd;
            }
    }

    CholeskyProfile p;
    p.rank = n;
    p.Lnum.assign(size_t(n) * n, 0);
    p.R.assign(n, 1);
    p.M.resize(n);
    for (int i = 0; i < n; ++i) {
        Int den = 1;
        for (int j = i + 1; j < n; ++j) {
            Int dj = l[size_t(i) * n + j].get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), dj.get_mpz_t());
        }
        if (!den.fits_slong_p()) throw std::runtime_error("enumeration profile overflow in row denominator");
        p.R[i] = den.get_si();
        for (int j = i + 1; j < n; ++j)
            p.Lnum[size_t(i) * n + j] = rat_to_ll(l[size_t(i) * n + j] * Rat(den), "row numerator");
    }
    p.D = 1;
    for (int i = 0; i < n; ++i) {
        Int term = Int(qdiag[i].get_den()) * to_int(p.R[i]) * to_int(p.R[i]);
        mpz_lcm(p.D.get_mpz_t(), p.D.get_mpz_t(), term.get_mpz_t());
    }
    for (int i = 0; i < n; ++i) {
        Int term = Int(qdiag[i].get_den()) * to_int(p.R[i]) * to_int(p.R[i]);
        p.M[i] = (p.D / term) * qdiag[i].get_num();
    }
    return p;
}

// Depth-first enumeration of one half of the shell: only branches whose
// outermost nonzero coordinate is positive are visited, the caller emits the
// mirror image.  Exactness: That carries D*(m - partial) so reaching level -1
// with That == 0 is precisely Q(x) = m.
template <class Emit>
void enumerate_half(const CholeskyProfile& p, long long m, NodeBudget* budget, Emit&& emit) {
    const int n = p.rank;
    std::vector<long long> x(n, 0);
    std::vector<Int> that(n + 1), tmp(n);
    that[n] = p.D * to_int(m);

    auto rec = [&](auto&& self, int i, bool zero_above) -> void {
        if (i < 0) {
            if (that[0] == 0) emit(std::span<const long long>(x.data(), size_t(n)));
            return;
        }
        if (that[i + 1] < 0) return;
        long long ci = 0;
        for (int j = i + 1; j < n; ++j) ci += p.Lnum[size_t(i) * n + j] * x[j];
        // u = R[i]*x + ci must satisfy u^2 <= That/M[i]
        mpz_fdiv_q(tmp[i].get_mpz_t(), that[i + 1].get_mpz_t(), p.M[i].get_mpz_t());
        if (tmp[i] < 0) return;
        Int umax_z = isqrt(tmp[i]);
        if (!umax_z.fits_slong_p()) throw std::runtime_error("enumeration bound overflow");
        long long umax = umax_z.get_si();
        long long r = p.R[i];
        auto floor_div = [](long long a, long long b) {
            long long qq = a / b, rr = a % b;
            return rr != 0 && ((rr < 0) != (b < 0)) ? qq - 1 : qq;
        };
        long long xmin = -floor_div(umax + ci, r);
        long long xmax = floor_div(umax - ci, r);
        if (zero_above && xmin < 0) xmin = 0;
        for (long long v = xmin; v <= xmax; ++v) {
            charge(budget);
            long long u = r * v + ci;
            x[i] = v;
            // that[i] = that[i+1] - M[i]*u^2
            unsigned long long uu = (unsigned long long)(u < 0 ? -u : u);
            mpz_mul_ui(that[i].get_mpz_t(), p.M[i].get_mpz_t(), uu);
            mpz_mul_ui(that[i].get_mpz_t(), that[i].get_mpz_t(), uu);
            mpz_sub(that[i].get_mpz_t(), that[i + 1].get_mpz_t(), that[i].get_mpz_t());
            self(self, i - 1, zero_above && v == 0);
        }
        x[i] = 0;
    };
    rec(rec, n - 1, true);
}

struct CacheEntry {
    CholeskyProfile profile;
    std::map<long long, std::shared_ptr<const NormShell>> shells;
};

std::mutex g_cache_mutex;
std::map<std::string, std::shared_ptr<CacheEntry>> g_cache;

std::string form_key(const QuadraticForm& q) {
    std::ostringstream os;
    os << q.label << '#' << q.rank << '#';
    for (int i = 0; i < q.rank; ++i)
        for (int j = 0; j <= i; ++j) os << q.gram.at(i, j).get_str() << ',';
    return os.str();
}

std::shared_ptr<CacheEntry> entry_for(const QuadraticForm& q) {
    std::string key = form_key(q);
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    auto e = std::make_shared<CacheEntry>();
    e->profile = build_profile(q);
    g_cache[key] = e;
    return e;
}

} // namespace

const NormShell& vectors_of_norm(const QuadraticForm& q, long long m, NodeBudget* budget) {
    auto entry = entry_for(q);
    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = entry->shells.find(m);
        if (it != entry->shells.end()) return *it->second;
    }
    auto shell = std::make_shared<NormShell>();
    shell->norm = m;
    shell->rank = q.rank;
    if (m >= 0) {
        std::vector<std::vector<int16_t>> rows;
        enumerate_half(entry->profile, m, budget, [&](std::span<const long long> v) {
            std::vector<int16_t> a(v.size()), b(v.size());
            bool zero = true;
            for (size_t k = 0; k < v.size(); ++k) {
                if (v[k] < INT16_MIN || v[k] > INT16_MAX)
                    throw std::runtime_error("shell coordinate exceeds int16 range");
                a[k] = int16_t(v[k]);
                b[k] = int16_t(-v[k]);
                if (v[k] != 0) zero = false;
            }
            rows.push_back(std::move(a));
            if (!zero) rows.push_back(std::move(b));
        });
        std::sort(rows.begin(), rows.end());
        shell->flat.reserve(rows.size() * size_t(q.rank));
        for (auto& r : rows) shell->flat.insert(shell->flat.end(), r.begin(), r.end());
    }
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto [it, inserted] = entry->shells.emplace(m, shell);
    (void)inserted;
    return *it->second;
}

long long count_by_norm(const QuadraticForm& q, long long m, NodeBudget* budget) {
    auto entry = entry_for(q);
    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = entry->shells.find(m);
        if (it != entry->shells.end()) return (long long)it->second->size();
    }
    if (m < 0) return 0;
    long long half = 0, zero = 0;
    enumerate_half(entry->profile, m, budget, [&](std::span<const long long> v) {
        bool z = std::all_of(v.begin(), v.end(), [](long long t) { return t == 0; });
        (z ? zero : half) += 1;
    });
    return 2 * half + zero;
}

void stream_vectors_of_norm(const QuadraticForm& q, long long m,
                            const std::function<void(std::span<const int16_t>)>& f,
                            NodeBudget* budget) {
    if (m < 0) return;
    auto entry = entry_for(q);
    {
        // reuse a shell that is already materialized instead of re-walking
        // the enumeration tree
        std::shared_ptr<const NormShell> cached;
        {
            std::lock_guard<std::mutex> lk(g_cache_mutex);
            auto it = entry->shells.find(m);
            if (it != entry->shells.end()) cached = it->second;
        }
        if (cached) {
            for (size_t i = 0; i < cached->size(); ++i) f(cached->vec(i));
            return;
        }
    }
    std::vector<int16_t> a(q.rank), b(q.rank);
    enumerate_half(entry->profile, m, budget, [&](std::span<const long long> v) {
        bool zero = true;
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k] < INT16_MIN || v[k] > INT16_MAX)
                throw std::runtime_error("shell coordinate exceeds int16 range");
            a[k] = int16_t(v[k]);
            b[k] = int16_t(-v[k]);
            if (v[k] != 0) zero = false;
        }
        f(a);
        if (!zero) f(b);
    });
}

std::vector<std::vector<long long>> constrained_extend(const QuadraticForm& q,
                                                       const std::vector<std::vector<long long>>& fixed,
                                                       long long target_norm,
                                                       const std::vector<long long>& target_inner,
                                                       NodeBudget* budget) {
    if (fixed.size() != target_inner.size())
        throw std::invalid_argument("constrained_extend: one inner product per fixed vector");
    if (target_norm < 0) return {};

    // Cauchy-Schwarz gate: |<v,w>|^2 <= Q(v) Q(w), checked before touching
    // the lattice at all.
    std::vector<std::vector<long long>> qv(fixed.size());
    for (size_t i = 0; i < fixed.size(); ++i) {
        if (int(fixed[i].size()) != q.rank)
            throw std::invalid_argument("constrained_extend: fixed vector has wrong length");
        Int nv = evaluate(q, fixed[i], fixed[i]);
        Int c2 = to_int(target_inner[i]) * to_int(target_inner[i]);
        if (c2 > nv * to_int(target_norm)) return {};
        if (nv == 0 && target_inner[i] != 0) return {};
        qv[i].resize(q.rank);
        for (int r = 0; r < q.rank; ++r) {
            Int acc = 0;
            for (int cth = 0; cth < q.rank; ++cth) acc += q.gram.at(r, cth) * to_int(fixed[i][cth]);
            if (!acc.fits_slong_p()) throw std::runtime_error("constrained_extend overflow");
            qv[i][r] = acc.get_si();
        }
    }

    std::vector<std::vector<long long>> out;
    const NormShell& shell = vectors_of_norm(q, target_norm, budget);
    for (size_t idx = 0; idx < shell.size(); ++idx) {
        charge(budget);
        auto w = shell.vec(idx);
        bool good = true;
        for (size_t i = 0; i < qv.size() && good; ++i) {
            long long dot = 0;
            for (int k = 0; k < q.rank; ++k) dot += qv[i][k] * w[k];
            good = (dot == target_inner[i]);
        }
        if (good) out.emplace_back(w.begin(), w.end());
    }
    return out;
}

void clear_shell_cache() {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    g_cache.clear();
}

} // namespace stheta
