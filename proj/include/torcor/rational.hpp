#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "torcor/errors.hpp"

namespace torcor {

using Int = mpz_class;
using Rat = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw PreconditionError("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int floor_int(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Reduces q to the representative of q + Z in [0, 1).
inline Rat mod1(const Rat& q) {
    Rat r = q - Rat(floor_int(q));
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q". Throws ParseError on anything else.
Rat rat_from_string(const std::string& s);

// Formats as "p" or "p/q" in lowest terms.
std::string rat_to_string(const Rat& q);

}  // namespace torcor
