#include "torcor/correspondence.hpp"

#include <algorithm>

namespace torcor {

FiniteSubgroup FiniteSubgroup::from_carrier(const Lattice& carrier) {
    if (!carrier.contains_lattice(Lattice::standard(carrier.ambient())))
        throw PreconditionError("carrier must contain the integer lattice");
    FiniteSubgroup h;
    h.carrier_ = carrier;
    return h;
}

FiniteSubgroup FiniteSubgroup::trivial(int m) {
    return from_carrier(Lattice::standard(m));
}

Int FiniteSubgroup::order() const {
    return Lattice::standard(ambient()).index_in(carrier_);
}

std::vector<Int> FiniteSubgroup::invariants() const {
    return Lattice::standard(ambient()).quotient_invariants_in(carrier_);
}

bool FiniteSubgroup::is_trivial() const { return carrier_.is_standard(); }

FiniteSubgroup FiniteSubgroup::intersected(const FiniteSubgroup& rhs) const {
    return from_carrier(carrier_.intersect(rhs.carrier_));
}

bool FiniteSubgroup::contains(const FiniteSubgroup& rhs) const {
    return carrier_.contains_lattice(rhs.carrier_);
}

std::vector<RatVector> FiniteSubgroup::elements(const Int& cap) const {
    auto reps = enumerate_cosets(carrier_, Lattice::standard(ambient()), cap);
    for (auto& v : reps)
        for (auto& x : v) x = mod1(x);
    std::sort(reps.begin(), reps.end());
    return reps;
}

std::string to_string(MorphismType t) {
    switch (t) {
        case MorphismType::Automorphism: return "Automorphism";
        case MorphismType::ForwardMap: return "ForwardMap";
        case MorphismType::BackwardMap: return "BackwardMap";
        case MorphismType::ProperPolymorphism: return "ProperPolymorphism";
    }
    throw PreconditionError("unknown morphism type");
}

Correspondence::Correspondence(RatMatrix m, Lattice delta)
    : m_(std::move(m)), delta_(std::move(delta)) {
    if (!m_.is_square() || m_.rows() == 0)
        throw PreconditionError("correspondence matrix must be square and nonempty");
    if (m_.det() == 0) throw PreconditionError("correspondence matrix must be invertible");
    if (delta_.ambient() != m_.rows())
        throw PreconditionError("offset lattice dimension mismatch");
    const Lattice z = Lattice::standard(dim());
    if (!delta_.contains_lattice(z) || !delta_.contains_lattice(z.transformed(m_)))
        throw PreconditionError("offset lattice must contain Z^m + M Z^m");
}

Correspondence Correspondence::identity(int m) {
    return Correspondence(RatMatrix::identity(m), Lattice::standard(m));
}

Correspondence Correspondence::connected_hull(const RatMatrix& m) {
    const Lattice z = Lattice::standard(m.rows());
    return Correspondence(m, z.sum(z.transformed(m)));
}

Correspondence Correspondence::from_relation(const RatMatrix& a, const RatMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw PreconditionError("relation matrices must be square of equal size");
    if (!a.is_integral() || !b.is_integral())
        throw PreconditionError("relation matrices must be integral");
    if (a.det() == 0 || b.det() == 0)
        throw PreconditionError("relation matrices must be invertible");
    const RatMatrix binv = b.inverse();
    const Lattice z = Lattice::standard(a.rows());
    return Correspondence(binv * a, z.sum(z.transformed(binv)));
}

Correspondence Correspondence::from_annihilator(const Lattice& ann) {
    if (ann.ambient() % 2 != 0) throw PreconditionError("annihilator ambient dimension must be even");
    const int m = ann.ambient() / 2;
    if (ann.rank() != m) throw PreconditionError("annihilator must have rank m");
    if (!ann.basis().is_integral())
        throw PreconditionError("annihilator must be a sublattice of Z^2m");
    RatMatrix u(m, m), w(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            u.at(i, j) = ann.basis().at(i, j);
            w.at(i, j) = ann.basis().at(m + i, j);
        }
    if (u.det() == 0 || w.det() == 0)
        throw PreconditionError("annihilator projections must be invertible");
    const RatMatrix mt = -(u * w.inverse());
    const Lattice delta = Lattice::from_generators(m, w).dual();
    return Correspondence(mt.transpose(), delta);
}

bool Correspondence::is_connected() const {
    const Lattice z = Lattice::standard(dim());
    return delta_ == z.sum(z.transformed(m_));
}

Correspondence Correspondence::compose(const Correspondence& rhs) const {
    if (dim() != rhs.dim()) throw PreconditionError("correspondence dimension mismatch");
    return Correspondence(m_ * rhs.m_, delta_.sum(rhs.delta_.transformed(m_)));
}

Correspondence Correspondence::adjoint() const {
    const RatMatrix minv = m_.inverse();
    return Correspondence(minv, delta_.transformed(minv));
}

Correspondence Correspondence::power(int n) const {
    if (n < 1) throw PreconditionError("power exponent must be at least 1");
    Correspondence acc = *this;
    for (int i = 1; i < n; ++i) acc = acc.compose(*this);
    return acc;
}

FiniteSubgroup Correspondence::kernel_first() const {
    return FiniteSubgroup::from_carrier(delta_.transformed(m_.inverse()));
}

FiniteSubgroup Correspondence::kernel_second() const {
    return FiniteSubgroup::from_carrier(delta_);
}

std::pair<FiniteSubgroup, FiniteSubgroup> Correspondence::kernel_groups() const {
    return {kernel_first(), kernel_second()};
}

MorphismType Correspondence::classify_morphism() const {
    const bool forward = kernel_second().is_trivial();
    const bool backward = kernel_first().is_trivial();
    if (forward && backward) return MorphismType::Automorphism;
    if (forward) return MorphismType::ForwardMap;
    if (backward) return MorphismType::BackwardMap;
    return MorphismType::ProperPolymorphism;
}

std::pair<RatMatrix, RatMatrix> Correspondence::to_relation() const {
    const RatMatrix b = delta_.basis().inverse();
    return {b * m_, b};
}

Correspondence Correspondence::factor_by(const FiniteSubgroup& h) const {
    if (h.ambient() != dim()) throw PreconditionError("subgroup dimension mismatch");
    const RatMatrix g = h.carrier().basis();
    const RatMatrix ginv = g.inverse();
    const Lattice l = h.carrier();
    const Lattice spread = l.sum(l.transformed(m_)).sum(delta_);
    return Correspondence(ginv * m_ * g, spread.transformed(ginv));
}

Lattice Correspondence::annihilator() const {
    const RatMatrix w = delta_.dual().basis();
    return Lattice::from_generators(2 * dim(), vstack(-(m_.transpose() * w), w));
}

Lattice Correspondence::factor_annihilator(const FiniteSubgroup& h) const {
    if (h.ambient() != dim()) throw PreconditionError("subgroup dimension mismatch");
    const Correspondence factored = factor_by(h);
    const RatMatrix gt_inv = h.carrier().basis().transpose().inverse();
    const int m = dim();
    RatMatrix block(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            block.at(i, j) = gt_inv.at(i, j);
            block.at(m + i, m + j) = gt_inv.at(i, j);
        }
    return factored.annihilator().transformed(block);
}

Correspondence::CharacterAction Correspondence::character_action() const {
    return {m_.transpose(), delta_.transformed(m_.inverse()).dual()};
}

}  // namespace torcor
