#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace theonlab {

// Exact rational scalar. All closed-form density arithmetic runs on these;
// doubles appear only on Monte Carlo paths.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// "num/den", plain integer, or decimal ("0.3" -> 3/10), exactly.
inline Rat parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            Rat q(s.substr(0, slash) + "/" + s.substr(slash + 1), 10);
            q.canonicalize();
            return q;
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument(s);
            Rat num(digits, 10);
            Rat den(1);
            for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            Rat q = num / den;
            q.canonicalize();
            return q;
        }
        Rat q(s, 10);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat pow_rat(Rat base, unsigned long e) {
    Rat out(1);
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline Rat factorial(unsigned n) {
    Rat out(1);
    for (unsigned i = 2; i <= n; ++i) out *= (long)i;
    return out;
}

} // namespace theonlab
