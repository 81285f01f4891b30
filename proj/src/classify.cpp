#include "torcor/classify.hpp"

namespace torcor {

std::string to_string(SpectrumCase c) {
    switch (c) {
        case SpectrumCase::PointZeroOnly: return "PointZeroOnly";
        case SpectrumCase::FullUnitCircle: return "FullUnitCircle";
        case SpectrumCase::WithinCircleUnionZero: return "WithinCircleUnionZero";
        case SpectrumCase::FullUnitDisk: return "FullUnitDisk";
    }
    throw PreconditionError("unknown spectrum case");
}

bool is_ergodic(const Correspondence& p) {
    return !has_root_of_unity_factor(char_poly(p.matrix()), p.dim());
}

namespace {

constexpr int kCoreIterationCap = 10000;

// Stable part of lambda under repeated L <- L ∩ step L. The seed is cut to
// the generalized eigenspace of the integer-monic primary part of
// char_poly(step^{-1}), which makes the chain terminate.
Lattice stable_core(const Lattice& lambda, const RatMatrix& step) {
    const RatMatrix inv = step.inverse();
    RatPoly g = RatPoly::constant(Rat(1));
    for (const auto& pf : factor_poly_rational(char_poly(inv))) {
        if (!pf.factor.is_integral()) continue;
        for (int i = 0; i < pf.multiplicity; ++i) g = g * pf.factor;
    }
    if (g.degree() == 0) return Lattice::zero(lambda.ambient());
    Lattice l = lambda.intersect_subspace(rational_kernel(eval_poly(g, inv)));
    for (int i = 0; i < kCoreIterationCap; ++i) {
        Lattice next = l.intersect(l.transformed(step));
        if (next == l) return l;
        l = std::move(next);
    }
    throw CapError("deterministic core iteration failed to stabilize");
}

}  // namespace

DeterministicCores deterministic_cores(const Correspondence& p) {
    const auto [q, lambda] = p.character_action();
    DeterministicCores cores;
    cores.xi_plus = stable_core(lambda, q);
    cores.xi_minus = stable_core(lambda, q.inverse());
    cores.xi_intersection = cores.xi_plus.intersect(cores.xi_minus);
    return cores;
}

NondeterminismFlags nondeterminism_flags(const DeterministicCores& cores) {
    return {cores.xi_plus.rank() == 0, cores.xi_minus.rank() == 0,
            cores.xi_intersection.rank() == 0};
}

NondeterminismFlags nondeterminism_flags(const Correspondence& p) {
    return nondeterminism_flags(deterministic_cores(p));
}

namespace {

SpectrumReport spectrum_from_cores(const DeterministicCores& cores, const Lattice& lambda) {
    if (cores.xi_plus != cores.xi_minus)
        return {SpectrumCase::FullUnitDisk, SpectrumCase::FullUnitDisk};
    if (cores.xi_plus == lambda)
        return {SpectrumCase::FullUnitCircle, SpectrumCase::FullUnitCircle};
    if (cores.xi_plus.rank() == 0)
        return {SpectrumCase::PointZeroOnly, SpectrumCase::PointZeroOnly};
    return {SpectrumCase::WithinCircleUnionZero,
            SpectrumCase::WithinCircleUnionZero};
}

}  // namespace

SpectrumReport spectrum_report(const Correspondence& p) {
    return spectrum_from_cores(deterministic_cores(p), p.character_action().lambda);
}

std::vector<KernelGrowthRow> kernel_growth(const Correspondence& p, int max_power) {
    if (max_power < 1) throw PreconditionError("kernel growth needs at least one power");
    std::vector<KernelGrowthRow> rows;
    Correspondence acc = p;
    for (int n = 1; n <= max_power; ++n) {
        auto [k1, k2] = acc.kernel_groups();
        rows.push_back({n, k1.order(), k2.order(), k1.invariants(), k2.invariants()});
        if (n < max_power) acc = acc.compose(p);
    }
    return rows;
}

InvarianceFlags invariance_of(const Correspondence& p, const FiniteSubgroup& h) {
    if (h.ambient() != p.dim()) throw PreconditionError("subgroup dimension mismatch");
    const Lattice& carrier = h.carrier();
    const Lattice image = carrier.transformed(p.matrix()).sum(p.delta());
    const Correspondence adj = p.adjoint();
    const Lattice preimage = carrier.transformed(adj.matrix()).sum(adj.delta());
    InvarianceFlags flags{carrier.contains_lattice(image),
                          carrier.contains_lattice(preimage), false};
    flags.doubly_invariant = flags.invariant && flags.co_invariant;
    return flags;
}

FiniteSubgroup minimal_doubly_invariant(const RatMatrix& m, const FiniteSubgroup& h) {
    if (!m.is_square() || m.rows() != h.ambient())
        throw PreconditionError("matrix and subgroup dimension mismatch");
    Rat d = m.det();
    if (!m.is_integral() || (d != 1 && d != -1))
        throw PreconditionError("minimal doubly invariant subgroup requires a unimodular matrix");
    const RatMatrix minv = m.inverse();
    Lattice l = h.carrier();
    while (true) {
        Lattice next = l.sum(l.transformed(m)).sum(l.transformed(minv));
        if (next == l) return FiniteSubgroup::from_carrier(l);
        l = std::move(next);
    }
}

AutomorphismCoverWitness automorphism_cover_necessary(const Correspondence& p) {
    AutomorphismCoverWitness w;
    w.invariant_factors = invariant_factors(p.matrix());
    w.det = p.matrix().det();
    bool integral = true;
    for (const auto& f : w.invariant_factors)
        if (!f.is_integral()) integral = false;
    w.possible = integral && (w.det == 1 || w.det == -1);
    return w;
}

ClassificationReport classify(const Correspondence& p) {
    ClassificationReport r;
    r.dim = p.dim();
    r.morphism = p.classify_morphism();
    r.connected = p.is_connected();
    r.ergodic = is_ergodic(p);
    r.kernel_first_order = p.kernel_first().order();
    r.kernel_second_order = p.kernel_second().order();
    r.cores = deterministic_cores(p);
    r.nondeterminism = nondeterminism_flags(r.cores);
    r.spectrum = spectrum_from_cores(r.cores, p.character_action().lambda);
    r.cover = automorphism_cover_necessary(p);
    return r;
}

}  // namespace torcor
