#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace fingeo {

// Exact scalars throughout the geometric stack; complex doubles only in the
// spinor/spectrum layer.
using Rational = mpq_class;
using Complex = std::complex<double>;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "-1/3", "2", "+7/2". Whitespace is trimmed; anything else throws.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Best rational approximation with denominator <= max_den, by continued
// fractions. Used to promote numeric solver candidates to exact values.
Rational rationalize(double x, unsigned long max_den = 1000000);

// FNV-1a, used for config hashes embedded in reports.
std::uint64_t fnv1a(const std::string& data);

}  // namespace fingeo
