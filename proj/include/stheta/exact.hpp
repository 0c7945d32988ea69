#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace stheta {

// Exact arithmetic backing for everything that must not round: Gram matrices,
// determinants, lattice point enumeration bounds.
using Int = mpz_class;
using Rat = mpq_class;

/// Exact integer from a 64-bit value; gmpxx itself has no long long
/// constructor, only long, which this platform guarantees is wide enough.
inline Int to_int(long long v) {
    static_assert(sizeof(long) >= sizeof(long long));
    return Int(static_cast<long>(v));
}

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline long long isqrt_ll(long long n) {
    return isqrt(to_int(n)).get_si();
}

inline bool fits_ll(const Int& n) { return n.fits_slong_p(); }

inline long long to_ll(const Int& n) { return n.get_si(); }

inline std::string to_string(const Int& n) { return n.get_str(); }

} // namespace stheta
