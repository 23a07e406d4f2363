#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "metrembed/errors.hpp"

namespace metrembed {

// The two numeric kernels. Exact rationals back every assertion of isometry
// (trees, unit-weight graphs); doubles with a relative tolerance back the
// rest. Code that works for both is templated on the scalar.
using Rat = mpq_class;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rat>;

inline const char* kernel_name(double) { return "float"; }
inline const char* kernel_name(const Rat&) { return "rational"; }
template <class T>
inline const char* kernel_name() { return is_exact_v<T> ? "rational" : "float"; }

inline double to_double(double x) { return x; }
inline double to_double(const Rat& q) { return q.get_d(); }

inline double abs_val(double x) { return std::fabs(x); }
inline Rat abs_val(const Rat& q) {
    Rat r;
    mpq_abs(r.get_mpq_t(), q.get_mpq_t());
    return r;
}

// Parses "p/q" or "p". Throws InputError on garbage or zero denominator.
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw input_error("cannot parse rational '" + s + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw input_error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

// Relative comparison used by all float-kernel audits: |x - y| <= tol * scale.
inline bool approx_le(double x, double y, double tol, double scale) {
    return x <= y + tol * std::fabs(scale);
}

}  // namespace metrembed
