#include "stheta/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stheta {

namespace {

size_t ut_size(int g) { return size_t(g) * (g + 1) / 2; }

size_t ut_offset(int g, int i, int j) {
    if (i > j) std::swap(i, j);
    return size_t(i) * g - size_t(i) * (i - 1) / 2 + size_t(j - i);
}

void validate_index(int genus, const std::vector<long long>& ut) {
    if (genus < 0) throw std::invalid_argument("FourierIndex: negative genus");
    if (ut.size() != ut_size(genus)) throw std::invalid_argument("FourierIndex: wrong upper triangle size");
    for (int i = 0; i < genus; ++i) {
        long long d = ut[ut_offset(genus, i, i)];
        if (d < 0 || d % 2 != 0) throw std::invalid_argument("FourierIndex: diagonal must be even and nonnegative");
    }
    for (int i = 0; i < genus; ++i)
        for (int j = i + 1; j < genus; ++j) {
            long long di = ut[ut_offset(genus, i, i)], dj = ut[ut_offset(genus, j, j)];
            long long c = ut[ut_offset(genus, i, j)];
            if (c * c > di * dj)
                throw std::invalid_argument("FourierIndex: off-diagonal entry violates the Cauchy-Schwarz bound");
        }
    if (genus > 0) {
        IMat m(genus, genus);
        for (int i = 0; i < genus; ++i)
            for (int j = 0; j < genus; ++j) m.at(i, j) = to_int(ut[ut_offset(genus, i, j)]);
        if (!is_positive_semidefinite(m))
            throw std::invalid_argument("FourierIndex: matrix is not positive semidefinite");
    }
}

} // namespace

FourierIndex::FourierIndex(int g, std::vector<long long> upper) : genus(g), ut(std::move(upper)) {
    validate_index(genus, ut);
}

long long FourierIndex::at(int i, int j) const { return ut[ut_offset(genus, i, j)]; }

long long FourierIndex::trace() const {
    long long t = 0;
    for (int i = 0; i < genus; ++i) t += at(i, i);
    return t;
}

IMat FourierIndex::to_matrix() const {
    IMat m(genus, genus);
    for (int i = 0; i < genus; ++i)
        for (int j = 0; j < genus; ++j) m.at(i, j) = to_int(at(i, j));
    return m;
}

FourierIndex FourierIndex::from_matrix(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("FourierIndex::from_matrix: not square");
    if (!m.is_symmetric()) throw std::invalid_argument("FourierIndex::from_matrix: not symmetric");
    int g = m.rows();
    std::vector<long long> ut;
    ut.reserve(ut_size(g));
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            if (!m.at(i, j).fits_slong_p()) throw std::invalid_argument("FourierIndex::from_matrix: entry overflow");
            ut.push_back(m.at(i, j).get_si());
        }
    return FourierIndex(g, std::move(ut));
}

bool GradedLess::operator()(const FourierIndex& a, const FourierIndex& b) const {
    long long ta = a.trace(), tb = b.trace();
    if (ta != tb) return ta < tb;
    if (a.genus != b.genus) return a.genus < b.genus;
    return a.ut < b.ut;
}

Weight::Weight(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Weight: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

std::vector<FourierIndex> enumerate_indices(int genus, long long trace_bound) {
    if (genus < 0 || trace_bound < 0)
        throw std::invalid_argument("enumerate_indices: genus and trace bound must be nonnegative");
    std::vector<FourierIndex> out;
    if (genus == 0) {
        out.emplace_back(0, std::vector<long long>{});
        return out;
    }

    std::vector<long long> diag(genus, 0), ut(ut_size(genus), 0);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < genus; ++i)
        for (int j = i + 1; j < genus; ++j) pairs.emplace_back(i, j);

    auto accept = [&]() {
        IMat m(genus, genus);
        for (int i = 0; i < genus; ++i)
            for (int j = 0; j < genus; ++j) m.at(i, j) = to_int(ut[ut_offset(genus, i, j)]);
        if (!is_positive_semidefinite(m)) return;
        out.emplace_back(FourierIndex(genus, ut));
    };

    auto fill_pairs = [&](auto&& self, size_t p) -> void {
        if (p == pairs.size()) {
            accept();
            return;
        }
        auto [i, j] = pairs[p];
        long long bound = isqrt_ll(diag[i] * diag[j]);
        for (long long c = -bound; c <= bound; ++c) {
            ut[ut_offset(genus, i, j)] = c;
            self(self, p + 1);
        }
        ut[ut_offset(genus, i, j)] = 0;
    };

    auto fill_diag = [&](auto&& self, int pos, long long remaining) -> void {
        if (pos == genus) {
            for (int i = 0; i < genus; ++i) ut[ut_offset(genus, i, i)] = diag[i];
            fill_pairs(fill_pairs, 0);
            return;
        }
        for (long long d = 0; d <= remaining; d += 2) {
            diag[pos] = d;
            self(self, pos + 1, remaining - d);
        }
        diag[pos] = 0;
    };
    fill_diag(fill_diag, 0, trace_bound);

    std::sort(out.begin(), out.end(), [](const FourierIndex& a, const FourierIndex& b) {
        return GradedLess{}(a, b);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Representation counting.
//
// A zero diagonal entry forces its whole row and the matching matrix column
// to vanish, so counting reduces to the submatrix supported on the positive
// diagonal.  Signed column permutations U act by T -> U^t T U and G -> G U,
// a bijection on solution sets; the canonical orbit representative (diagonal
// non-increasing, upper triangle lexicographically minimal) therefore keys a
// cache shared by the whole orbit.
// ---------------------------------------------------------------------------

namespace {

struct ReducedIndex {
    int genus = 0;
    std::vector<long long> ut; // dense upper triangle of the reduced matrix
    long long at(int i, int j) const { return ut[ut_offset(genus, i, j)]; }
};

ReducedIndex reduce_index(const FourierIndex& t) {
    std::vector<int> keep;
    for (int i = 0; i < t.genus; ++i)
        if (t.at(i, i) > 0) keep.push_back(i);
    ReducedIndex r;
    r.genus = int(keep.size());
    r.ut.resize(ut_size(r.genus));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = i; j < keep.size(); ++j)
            r.ut[ut_offset(r.genus, int(i), int(j))] = t.at(keep[i], keep[j]);
    return r;
}

// Smallest upper triangle over the signed permutation orbit, restricted to
// representatives with non-increasing diagonal.  Identity beyond genus 6;
// the cache just gets less sharing there.
std::vector<long long> canonical_ut(const ReducedIndex& r) {
    int g = r.genus;
    if (g > 6) return r.ut;
    std::vector<int> perm(g);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<long long> best;
    std::vector<long long> cand(ut_size(g));
    std::vector<int> sign(g, 1);
    std::sort(perm.begin(), perm.end());
    do {
        bool desc = true;
        for (int i = 0; i + 1 < g; ++i)
            if (r.at(perm[i], perm[i]) < r.at(perm[i + 1], perm[i + 1])) { desc = false; break; }
        if (!desc) continue;
        for (unsigned smask = 0; smask < (g ? (1u << (g - 1)) : 1u); ++smask) {
            sign[0] = 1;
            for (int i = 1; i < g; ++i) sign[i] = (smask >> (i - 1)) & 1 ? -1 : 1;
            for (int i = 0; i < g; ++i)
                for (int j = i; j < g; ++j)
                    cand[ut_offset(g, i, j)] = (long long)sign[i] * sign[j] * r.at(perm[i], perm[j]);
            if (best.empty() || cand < best) best = cand;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// int16 images Q*b for a whole shell, used by the dot product kernels.
std::vector<int16_t> q_times_shell(const QuadraticForm& q, const NormShell& shell) {
    int r = q.rank;
    std::vector<long long> qrow(size_t(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (!q.gram.at(i, j).fits_slong_p()) throw std::runtime_error("Gram entry overflow");
            qrow[size_t(i) * r + j] = q.gram.at(i, j).get_si();
        }
    std::vector<int16_t> out(shell.flat.size());
    for (size_t v = 0; v < shell.size(); ++v) {
        auto b = shell.vec(v);
        for (int i = 0; i < r; ++i) {
            long long acc = 0;
            for (int j = 0; j < r; ++j) acc += qrow[size_t(i) * r + j] * b[j];
            if (acc < INT16_MIN || acc > INT16_MAX)
                throw std::runtime_error("transformed shell coordinate exceeds int16 range");
            out[v * size_t(r) + i] = int16_t(acc);
        }
    }
    return out;
}

inline int dot16(const int16_t* a, const int16_t* b, int r) {
    int acc = 0;
    for (int k = 0; k < r; ++k) acc += int(a[k]) * int(b[k]);
    return acc;
}

struct PairTable {
    long long cmax = 0;
    std::vector<long long> hist;
};

struct MaskFamily {
    bool available = false;
    long long cmax = 0;
    size_t words = 0; // per row, bits run over the second shell
    std::vector<std::vector<uint64_t>> planes;
    const uint64_t* row(long long c, size_t a) const { return planes[size_t(c + cmax)].data() + a * words; }
};

struct FormScratch {
    std::map<std::pair<long long, long long>, PairTable> hists;
    std::map<std::pair<long long, long long>, std::shared_ptr<const MaskFamily>> masks;
    std::map<std::vector<long long>, long long> counts;
};

std::mutex g_fourier_mutex;
std::map<std::string, std::shared_ptr<FormScratch>> g_scratch;

std::string scratch_key(const QuadraticForm& q) {
    std::ostringstream os;
    os << q.label << '#' << q.rank << '#';
    for (int i = 0; i < q.rank; ++i)
        for (int j = 0; j <= i; ++j) os << q.gram.at(i, j).get_str() << ',';
    return os.str();
}

std::shared_ptr<FormScratch> scratch_for(const QuadraticForm& q) {
    std::lock_guard<std::mutex> lk(g_fourier_mutex);
    auto& slot = g_scratch[scratch_key(q)];
    if (!slot) slot = std::make_shared<FormScratch>();
    return slot;
}

// Inner product histogram between two shells: one pass answers every genus
// two index with this diagonal.
const PairTable& pair_histogram(const QuadraticForm& q, FormScratch& scratch, long long d1, long long d2,
                                NodeBudget* budget) {
    auto key = std::make_pair(d1, d2);
    {
        std::lock_guard<std::mutex> lk(g_fourier_mutex);
        auto it = scratch.hists.find(key);
        if (it != scratch.hists.end()) return it->second;
    }
    PairTable table;
    table.cmax = isqrt_ll(d1 * d2);
    table.hist.assign(size_t(2 * table.cmax + 1), 0);
    const NormShell& inner = vectors_of_norm(q, d2, budget);
    if (inner.size() != 0) {
        std::vector<int16_t> qb = q_times_shell(q, inner);
        const int r = q.rank;
        const size_t in = inner.size();
        stream_vectors_of_norm(q, d1, [&](std::span<const int16_t> a) {
            charge(budget, (long long)in);
            const int16_t* ap = a.data();
            for (size_t j = 0; j < in; ++j) {
                int d = dot16(ap, qb.data() + j * size_t(r), r);
                ++table.hist[size_t(d + table.cmax)];
            }
        }, budget);
    }
    std::lock_guard<std::mutex> lk(g_fourier_mutex);
    auto [it, ins] = scratch.hists.emplace(key, std::move(table));
    (void)ins;
    return it->second;
}

constexpr size_t MASK_BYTE_CAP = size_t(100) << 20;

// Bit planes adj[c][a][b] = 1 iff <a,b> = c between two shells.  Used to
// intersect candidate sets during column backtracking.  Returns a family
// with available=false when the planes would not fit the memory cap.
std::shared_ptr<const MaskFamily> adjacency(const QuadraticForm& q, FormScratch& scratch, long long da,
                                            long long db, NodeBudget* budget) {
    auto key = std::make_pair(da, db);
    {
        std::lock_guard<std::mutex> lk(g_fourier_mutex);
        auto it = scratch.masks.find(key);
        if (it != scratch.masks.end()) return it->second;
    }
    auto fam = std::make_shared<MaskFamily>();
    const NormShell& a = vectors_of_norm(q, da, budget);
    const NormShell& b = vectors_of_norm(q, db, budget);
    fam->cmax = isqrt_ll(da * db);
    fam->words = (b.size() + 63) / 64;
    size_t bytes = size_t(2 * fam->cmax + 1) * a.size() * fam->words * 8;
    if (bytes <= MASK_BYTE_CAP && a.size() != 0 && b.size() != 0) {
        fam->available = true;
        fam->planes.assign(size_t(2 * fam->cmax + 1), std::vector<uint64_t>(a.size() * fam->words, 0));
        std::vector<int16_t> qb = q_times_shell(q, b);
        const int r = q.rank;
        for (size_t i = 0; i < a.size(); ++i) {
            charge(budget, (long long)b.size());
            const int16_t* ap = a.vec(i).data();
            for (size_t j = 0; j < b.size(); ++j) {
                int d = dot16(ap, qb.data() + j * size_t(r), r);
                fam->planes[size_t(d + fam->cmax)][i * fam->words + j / 64] |= uint64_t(1) << (j % 64);
            }
        }
    }
    std::lock_guard<std::mutex> lk(g_fourier_mutex);
    auto [it, ins] = scratch.masks.emplace(key, std::move(fam));
    (void)ins;
    return it->second;
}

bool positive_representative(std::span<const int16_t> v) {
    for (int16_t t : v)
        if (t != 0) return t > 0;
    return false;
}

// Backtracking count with adjacency planes: iterate candidates for columns
// 0..n-2, count the last column by popcount of the intersected plane rows.
// Solutions come in +-G pairs, so column 0 only ranges over lexicographically
// positive vectors and the result is doubled.
long long masked_count(const ReducedIndex& t, const std::vector<const NormShell*>& shells,
                       const std::vector<std::vector<std::shared_ptr<const MaskFamily>>>& fam,
                       NodeBudget* budget) {
    const int n = t.genus;
    std::vector<std::vector<uint64_t>> buf(n);
    for (int k = 1; k < n; ++k) buf[k].resize((shells[k]->size() + 63) / 64);
    std::vector<size_t> idx(n, 0);
    long long total = 0;

    auto intersect = [&](int k) -> const std::vector<uint64_t>& {
        auto& dst = buf[k];
        const uint64_t* first = fam[0][k]->row(t.at(0, k), idx[0]);
        std::copy(first, first + dst.size(), dst.begin());
        for (int i = 1; i < k; ++i) {
            const uint64_t* row = fam[i][k]->row(t.at(i, k), idx[i]);
            for (size_t w = 0; w < dst.size(); ++w) dst[w] &= row[w];
        }
        return dst;
    };

    auto rec = [&](auto&& self, int k) -> void {
        if (k == n - 1) {
            charge(budget);
            const auto& m = intersect(k);
            for (uint64_t w : m) total += std::popcount(w);
            return;
        }
        const auto& m = intersect(k);
        for (size_t w = 0; w < m.size(); ++w) {
            uint64_t bits = m[w];
            while (bits) {
                charge(budget);
                idx[k] = w * 64 + size_t(std::countr_zero(bits));
                bits &= bits - 1;
                self(self, k + 1);
            }
        }
    };

    const NormShell& s0 = *shells[0];
    for (size_t i = 0; i < s0.size(); ++i) {
        if (!positive_representative(s0.vec(i))) continue;
        charge(budget);
        idx[0] = i;
        rec(rec, 1);
    }
    return 2 * total;
}

// Plain scan backtracking, used only when an adjacency family would exceed
// the memory cap.  Same contract as masked_count.
long long scan_count(const QuadraticForm& q, const ReducedIndex& t,
                     const std::vector<const NormShell*>& shells, NodeBudget* budget) {
    const int n = t.genus;
    const int r = q.rank;
    std::vector<std::vector<int16_t>> qcols(n); // Q * chosen column vectors
    long long total = 0;

    auto matches = [&](int k, std::span<const int16_t> v) {
        for (int i = 0; i < k; ++i)
            if (dot16(qcols[i].data(), v.data(), r) != t.at(i, k)) return false;
        return true;
    };
    auto rec = [&](auto&& self, int k) -> void {
        const NormShell& s = *shells[k];
        if (k == n - 1) {
            for (size_t j = 0; j < s.size(); ++j) {
                charge(budget);
                if (matches(k, s.vec(j))) ++total;
            }
            return;
        }
        for (size_t j = 0; j < s.size(); ++j) {
            charge(budget);
            auto v = s.vec(j);
            if (k == 0 && !positive_representative(v)) continue;
            if (!matches(k, v)) continue;
            std::vector<int16_t> qv(r);
            std::vector<long long> vl(v.begin(), v.end());
            for (int i = 0; i < r; ++i) {
                Int acc = 0;
                for (int j2 = 0; j2 < r; ++j2) acc += q.gram.at(i, j2) * to_int(vl[j2]);
                if (acc < INT16_MIN || acc > INT16_MAX) throw std::runtime_error("scan_count overflow");
                qv[i] = int16_t(acc.get_si());
            }
            qcols[k] = std::move(qv);
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return 2 * total;
}

} // namespace

long long representation_count(const QuadraticForm& q, const FourierIndex& t, NodeBudget* budget) {
    ReducedIndex red = reduce_index(t);
    if (red.genus == 0) return 1;

    std::vector<long long> canon = canonical_ut(red);
    ReducedIndex ct{red.genus, canon};
    std::vector<long long> key;
    key.reserve(canon.size() + 1);
    key.push_back(red.genus);
    key.insert(key.end(), canon.begin(), canon.end());

    auto scratch = scratch_for(q);
    {
        std::lock_guard<std::mutex> lk(g_fourier_mutex);
        auto it = scratch->counts.find(key);
        if (it != scratch->counts.end()) return it->second;
    }

    long long value = 0;
    if (ct.genus == 1) {
        value = count_by_norm(q, ct.at(0, 0), budget);
    } else if (ct.genus == 2) {
        const PairTable& table = pair_histogram(q, *scratch, ct.at(0, 0), ct.at(1, 1), budget);
        long long c = ct.at(0, 1);
        value = (c >= -table.cmax && c <= table.cmax) ? table.hist[size_t(c + table.cmax)] : 0;
    } else {
        std::vector<const NormShell*> shells(ct.genus);
        for (int k = 0; k < ct.genus; ++k) shells[k] = &vectors_of_norm(q, ct.at(k, k), budget);
        std::vector<std::vector<std::shared_ptr<const MaskFamily>>> fam(
            ct.genus, std::vector<std::shared_ptr<const MaskFamily>>(ct.genus));
        bool all_masks = true;
        for (int i = 0; i < ct.genus && all_masks; ++i)
            for (int j = i + 1; j < ct.genus && all_masks; ++j) {
                fam[i][j] = adjacency(q, *scratch, ct.at(i, i), ct.at(j, j), budget);
                all_masks = fam[i][j]->available;
            }
        value = all_masks ? masked_count(ct, shells, fam, budget) : scan_count(q, ct, shells, budget);
    }

    std::lock_guard<std::mutex> lk(g_fourier_mutex);
    scratch->counts.emplace(key, value);
    return value;
}

Expansion theta_expansion(const QuadraticForm& q, int genus, long long trace_bound, NodeBudget* budget) {
    Expansion e;
    e.genus = genus;
    e.weight = Weight(q.rank, 2);
    e.trace_bound = trace_bound;
    e.form_label = q.label;
    for (FourierIndex& idx : enumerate_indices(genus, trace_bound)) {
        long long c = representation_count(q, idx, budget);
        e.coeffs.emplace(std::move(idx), c);
    }
    return e;
}

Expansion expansion_sub(const Expansion& a, const Expansion& b) {
    if (a.genus != b.genus || a.trace_bound != b.trace_bound || !(a.weight == b.weight))
        throw std::invalid_argument("expansion_sub: incompatible expansions");
    Expansion r;
    r.genus = a.genus;
    r.weight = a.weight;
    r.trace_bound = a.trace_bound;
    r.form_label = a.form_label + "-" + b.form_label;
    auto ib = b.coeffs.begin();
    for (const auto& [idx, ca] : a.coeffs) {
        if (ib == b.coeffs.end() || !(ib->first == idx))
            throw std::invalid_argument("expansion_sub: index sets differ");
        r.coeffs.emplace(idx, ca - ib->second);
        ++ib;
    }
    if (ib != b.coeffs.end()) throw std::invalid_argument("expansion_sub: index sets differ");
    return r;
}

bool is_singular(const FourierIndex& t) { return bareiss_det(t.to_matrix()) == 0; }

FourierIndex unimodular_transform(const FourierIndex& t, const IMat& u) {
    if (u.rows() != t.genus || u.cols() != t.genus)
        throw std::invalid_argument("unimodular_transform: shape mismatch");
    Int det = bareiss_det(u);
    if (det != 1 && det != -1) throw std::invalid_argument("unimodular_transform: matrix is not unimodular");
    IMat m = u.transpose().mul(t.to_matrix()).mul(u);
    return FourierIndex::from_matrix(m);
}

FourierIndex extend_by_zero(const FourierIndex& t, int extra) {
    if (extra < 0) throw std::invalid_argument("extend_by_zero: negative padding");
    int g = t.genus + extra;
    std::vector<long long> ut(ut_size(g), 0);
    for (int i = 0; i < t.genus; ++i)
        for (int j = i; j < t.genus; ++j) ut[ut_offset(g, i, j)] = t.at(i, j);
    return FourierIndex(g, std::move(ut));
}

// --------------------------- cache file format ----------------------------

namespace {

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace

std::string expansion_to_string(const Expansion& e) {
    std::ostringstream os;
    os << "expansion genus=" << e.genus << " weight=" << e.weight.num << "/" << e.weight.den
       << " trace_bound=" << e.trace_bound << " form=" << e.form_label << "\n";
    for (const auto& [idx, c] : e.coeffs) {
        for (size_t k = 0; k < idx.ut.size(); ++k) os << idx.ut[k] << ' ';
        os << ": " << c << "\n";
    }
    std::string body = os.str();
    return body + "checksum " + hex64(fnv1a(body)) + "\n";
}

void write_expansion(std::ostream& os, const Expansion& e) { os << expansion_to_string(e); }

Expansion expansion_from_string(const std::string& text) {
    size_t mark = text.rfind("checksum ");
    if (mark == std::string::npos || (mark != 0 && text[mark - 1] != '\n'))
        throw std::runtime_error("expansion cache: missing checksum line");
    std::string body = text.substr(0, mark);
    std::string tail = text.substr(mark);
    std::istringstream ts(tail);
    std::string kw, hex;
    ts >> kw >> hex;
    if (hex != hex64(fnv1a(body))) throw std::runtime_error("expansion cache: checksum mismatch");

    std::istringstream is(body);
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("expansion cache: empty body");
    Expansion e;
    {
        std::istringstream hs(header);
        std::string t0, t1, t2, t3, t4;
        if (!(hs >> t0 >> t1 >> t2 >> t3 >> t4) || t0 != "expansion")
            throw std::runtime_error("expansion cache: malformed header");
        auto field = [](const std::string& tok, const std::string& name) {
            if (tok.rfind(name + "=", 0) != 0)
                throw std::runtime_error("expansion cache: expected field " + name);
            return tok.substr(name.size() + 1);
        };
        e.genus = std::stoi(field(t1, "genus"));
        std::string w = field(t2, "weight");
        size_t slash = w.find('/');
        if (slash == std::string::npos) throw std::runtime_error("expansion cache: malformed weight");
        e.weight = Weight(std::stoll(w.substr(0, slash)), std::stoll(w.substr(slash + 1)));
        e.trace_bound = std::stoll(field(t3, "trace_bound"));
        e.form_label = field(t4, "form");
    }
    if (e.genus < 0 || e.trace_bound < 0) throw std::runtime_error("expansion cache: bad header values");

    std::string line;
    const FourierIndex* prev = nullptr;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw std::runtime_error("expansion cache: malformed line");
        std::istringstream left(line.substr(0, colon)), right(line.substr(colon + 1));
        std::vector<long long> ut;
        long long v;
        while (left >> v) ut.push_back(v);
        long long coeff;
        if (!(right >> coeff)) throw std::runtime_error("expansion cache: missing coefficient");
        FourierIndex idx(e.genus, std::move(ut));
        if (idx.trace() > e.trace_bound) throw std::runtime_error("expansion cache: index beyond trace bound");
        if (prev && !GradedLess{}(*prev, idx)) throw std::runtime_error("expansion cache: indices out of order");
        auto [it, inserted] = e.coeffs.emplace(std::move(idx), coeff);
        if (!inserted) throw std::runtime_error("expansion cache: duplicate index");
        prev = &it->first;
    }
    if (e.coeffs.size() != enumerate_indices(e.genus, e.trace_bound).size())
        throw std::runtime_error("expansion cache: incomplete index set");
    return e;
}

Expansion read_expansion(std::istream& is) {
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return expansion_from_string(text);
}

void clear_fourier_caches() {
    std::lock_guard<std::mutex> lk(g_fourier_mutex);
    g_scratch.clear();
}

} // namespace stheta
