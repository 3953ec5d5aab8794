#include "fingeo/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace fingeo {

Rational parse_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.front() == '+') s.erase(s.begin());
    auto ok = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = part.front() == '-' ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!ok(num) || !ok(den))
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rationalize(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // continued fraction convergents p/q
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int step = 0; step < 64; ++step) {
        double fl = std::floor(frac);
        if (fl > 1e18) break;
        mpz_class a(static_cast<unsigned long>(fl));
        mpz_class p2 = a * p1 + p0;
        mpz_class q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rational q(p1, q1 == 0 ? mpz_class(1) : q1);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace fingeo
