#include "torcor/markov.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "torcor/classify.hpp"
#include "torcor/errors.hpp"
#include "torcor/prng.hpp"

namespace torcor {

namespace {

RatVector to_rat(const IntVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

IntVector to_int(const RatVector& v) {
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i])) throw Error("expected an integral vector");
        out[i] = v[i].get_num();
    }
    return out;
}

RatVector mod1_vector(const RatVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod1(v[i]);
    return out;
}

void require_dimension(const Correspondence& p, std::size_t n) {
    if (static_cast<std::size_t>(p.dim()) != n)
        throw PreconditionError("character dimension mismatch");
}

// Exact complex rational scalar, enough for eigenvector residuals.
struct CRat {
    Rat re, im;

    CRat() = default;
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    CRat operator*(const CRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CRat& operator+=(const CRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRat& operator-=(const CRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Rat norm_sq() const { return re * re + im * im; }
};

using SparseVector = std::map<IntVector, CRat>;

Rat total_norm_sq(const SparseVector& v) {
    Rat total(0);
    for (const auto& [_, c] : v) total += c.norm_sq();
    return total;
}

}  // namespace

CharacterImage apply_V(const Correspondence& p, const IntVector& n) {
    require_dimension(p, n.size());
    auto action = p.character_action();
    RatVector nr = to_rat(n);
    if (!action.lambda.contains(nr)) return std::nullopt;
    return to_int(action.q.inverse() * nr);
}

CharacterImage apply_V_star(const Correspondence& p, const IntVector& n) {
    require_dimension(p, n.size());
    auto action = p.character_action();
    RatVector image = action.q * to_rat(n);
    if (!action.lambda.contains(image)) return std::nullopt;
    return to_int(image);
}

long TruncatedOperator::index_of(const IntVector& n) const {
    auto it = std::lower_bound(characters.begin(), characters.end(), n);
    if (it == characters.end() || *it != n) return -1;
    return static_cast<long>(it - characters.begin());
}

TruncatedOperator operator_matrix(const Correspondence& p, long radius) {
    if (radius < 1) throw PreconditionError("box radius must be at least 1");
    const int m = p.dim();
    auto action = p.character_action();
    const RatMatrix qinv = action.q.inverse();

    TruncatedOperator op;
    op.radius = radius;
    IntVector current(m, Int(-radius));
    for (;;) {
        op.characters.push_back(current);
        int i = m - 1;
        while (i >= 0 && current[i] == radius) current[i--] = -radius;
        if (i < 0) break;
        current[i] += 1;
    }

    op.image.reserve(op.characters.size());
    for (std::size_t j = 0; j < op.characters.size(); ++j) {
        RatVector nr = to_rat(op.characters[j]);
        if (!action.lambda.contains(nr)) {
            op.image.push_back(TruncatedOperator::kZero);
            continue;
        }
        IntVector img = to_int(qinv * nr);
        long row = op.index_of(img);
        if (row < 0) {
            op.image.push_back(TruncatedOperator::kEscape);
            op.escapes.emplace_back(static_cast<long>(j), std::move(img));
        } else {
            op.image.push_back(row);
        }
    }
    return op;
}

OrbitRecord character_orbit(const Correspondence& p, const IntVector& n, long kmax) {
    require_dimension(p, n.size());
    if (kmax < 1) throw PreconditionError("orbit length must be at least 1");

    OrbitRecord record;
    record.start = n;
    IntVector v = n;
    for (long k = 1; k <= kmax; ++k) {
        CharacterImage image = apply_V(p, v);
        if (!image) {
            record.forward_death = k;
            break;
        }
        record.forward.push_back(*image);
        v = std::move(*image);
    }
    v = n;
    for (long k = 1; k <= kmax; ++k) {
        CharacterImage image = apply_V_star(p, v);
        if (!image) {
            record.backward_death = k;
            break;
        }
        record.backward.push_back(*image);
        v = std::move(*image);
    }
    return record;
}

EigenvectorCheck verify_eigenvector(const Correspondence& p, const IntVector& n,
                                    const Rat& gamma_re, const Rat& gamma_im, long terms) {
    require_dimension(p, n.size());
    if (terms < 0) throw PreconditionError("truncation order must be nonnegative");
    const CRat gamma{gamma_re, gamma_im};
    if (gamma.norm_sq() >= 1)
        throw PreconditionError("eigenvalue must lie strictly inside the open unit disk");

    auto action = p.character_action();
    RatVector nr = to_rat(n);
    if (!deterministic_cores(p).xi_minus.contains(nr))
        throw PreconditionError(
            "character orbit leaves the character lattice: n is outside the backward core");
    RatVector bottom = action.q.inverse() * nr;
    if (action.lambda.contains(bottom))
        throw PreconditionError(
            "character orbit has no free end: Q^{-1} n is still in the character lattice");

    // v = sum_{k=0..K} gamma^k chi_{o_k} with o_0 = Q^{-1} n, o_k = Q^{k-1} n.
    SparseVector v;
    IntVector orbit_point = to_int(bottom);
    CRat coeff{Rat(1), Rat(0)};
    for (long k = 0; k <= terms; ++k) {
        v[orbit_point] += coeff;
        coeff = coeff * gamma;
        orbit_point = to_int(action.q * to_rat(orbit_point));
    }

    SparseVector residual;
    for (const auto& [vec, c] : v) {
        if (CharacterImage image = apply_V(p, vec)) residual[*image] += c;
    }
    for (const auto& [vec, c] : v) residual[vec] -= gamma * c;

    EigenvectorCheck check;
    check.terms = terms;
    check.residual_norm_sq = total_norm_sq(residual);
    check.vector_norm_sq = total_norm_sq(v);
    check.ratio_sq = check.residual_norm_sq / check.vector_norm_sq;
    check.ratio = std::sqrt(check.ratio_sq.get_d());
    return check;
}

StepDistribution step_distribution(const Correspondence& p, const RatVector& x0) {
    require_dimension(p, x0.size());
    auto reps = enumerate_cosets(p.delta(), Lattice::standard(p.dim()), Int(100000));
    RatVector base = p.matrix() * x0;

    StepDistribution dist;
    dist.atoms.reserve(reps.size());
    for (const auto& rep : reps) {
        RatVector atom(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) atom[i] = mod1(base[i] + rep[i]);
        dist.atoms.push_back(std::move(atom));
    }
    std::sort(dist.atoms.begin(), dist.atoms.end());
    dist.mass = Rat(1) / Rat(Int(dist.atoms.size()));
    return dist;
}

std::vector<RatVector> sample_path(const Correspondence& p, const RatVector& x0,
                                   long steps, std::uint64_t seed) {
    require_dimension(p, x0.size());
    if (steps < 1) throw PreconditionError("path length must be at least 1");
    if (steps > 100000) throw PreconditionError("path length capped at 100000");

    auto reps = enumerate_cosets(p.delta(), Lattice::standard(p.dim()), Int(100000));
    std::sort(reps.begin(), reps.end());
    SplitMix64 rng(seed);

    std::vector<RatVector> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    path.push_back(mod1_vector(x0));
    for (long t = 0; t < steps; ++t) {
        const RatVector& rep = reps[rng.next_below(reps.size())];
        RatVector base = p.matrix() * path.back();
        RatVector next(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            next[i] = mod1(base[i] + rep[i]);
            if (mpz_sizeinbase(next[i].get_den().get_mpz_t(), 2) > 16384)
                throw CapError("path state denominators exceeded 16384 bits");
        }
        path.push_back(std::move(next));
    }
    return path;
}

std::vector<double> equidistribution_stat(const std::vector<RatVector>& path,
                                          const std::vector<IntVector>& characters) {
    if (path.empty()) throw PreconditionError("path must be nonempty");
    constexpr double kTwoPi = 6.283185307179586476925286766559;

    std::vector<double> stats;
    stats.reserve(characters.size());
    for (const auto& n : characters) {
        double sum_cos = 0.0, sum_sin = 0.0;
        for (const auto& x : path) {
            if (x.size() != n.size()) throw PreconditionError("character dimension mismatch");
            Rat dot(0);
            for (std::size_t i = 0; i < n.size(); ++i) dot += Rat(n[i]) * x[i];
            double angle = kTwoPi * mod1(dot).get_d();
            sum_cos += std::cos(angle);
            sum_sin += std::sin(angle);
        }
        stats.push_back(std::hypot(sum_cos, sum_sin) / static_cast<double>(path.size()));
    }
    return stats;
}

}  // namespace torcor
