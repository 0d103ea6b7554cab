#ifndef DIRACRED_CORE_RATIONAL_HPP
#define DIRACRED_CORE_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

#include "errors.hpp"

namespace diracred {

// Exact scalar field: arbitrary-precision rationals, always canonical
// (gcd(|num|, den) = 1, den > 0). mpq_class keeps that invariant for us.
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p", or "p/q" with arbitrary-precision parts.
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw Error(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    if (q.get_den() == 0)
        throw Error(ErrorKind::ParseError, "zero denominator in literal '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

inline double rat_to_double(const Rat& q) {
    return q.get_d();
}

} // namespace diracred

#endif
