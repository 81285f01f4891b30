#pragma once

#include <cstdint>

#include "torcor/correspondence.hpp"
#include "torcor/lattice.hpp"
#include "torcor/matrix.hpp"

namespace torcor::testing {

// Deterministic generator for property tests.
struct TestRng {
    uint64_t state;

    explicit TestRng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi] (small ranges only; modulo bias is irrelevant here).
    long pick(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    Rat small_rat(long max_num, long max_den) {
        return rat(pick(-max_num, max_num), pick(1, max_den));
    }

    RatMatrix integer_matrix(int m, long max_entry) {
        RatMatrix a(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) a.at(i, j) = Rat(pick(-max_entry, max_entry));
        return a;
    }

    RatMatrix invertible_rational_matrix(int m, long max_entry, long max_den) {
        while (true) {
            RatMatrix a(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) a.at(i, j) = small_rat(max_entry, max_den);
            if (a.det() != 0) return a;
        }
    }

    Lattice full_rank_lattice(int m, long max_entry, long max_den) {
        while (true) {
            RatMatrix g(m, m + 1);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m + 1; ++j) g.at(i, j) = small_rat(max_entry, max_den);
            Lattice l = Lattice::from_generators(m, g);
            if (l.rank() == m) return l;
        }
    }

    // Random correspondence: integer or simple fractional matrix plus a
    // refinement of the connected hull of index <= 4.
    Correspondence correspondence(int m) {
        while (true) {
            RatMatrix a = integer_matrix(m, 3);
            if (next() % 2) {
                long d = pick(2, 4);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) a.at(i, j) /= d;
            }
            if (a.det() == 0) continue;
            Correspondence hull = Correspondence::connected_hull(a);
            Lattice delta = hull.delta();
            if (next() % 2) {
                RatVector v(m, Rat(0));
                long d = pick(2, 4);
                for (int i = 0; i < m; ++i) v[i] = rat(pick(0, d - 1), d);
                delta = delta.sum(Lattice::from_vectors(m, {v}));
            }
            return Correspondence(a, delta);
        }
    }
};

}  // namespace torcor::testing
