#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torcor/lattice.hpp"

namespace torcor {

// Finite subgroup of the m-torus, represented by its carrier lattice L with
// Z^m ⊆ L ⊆ Q^m; the group is L/Z^m.
class FiniteSubgroup {
public:
    static FiniteSubgroup from_carrier(const Lattice& carrier);
    static FiniteSubgroup trivial(int m);

    const Lattice& carrier() const { return carrier_; }
    int ambient() const { return carrier_.ambient(); }
    Int order() const;
    std::vector<Int> invariants() const;  // elementary divisor chain of L/Z^m
    bool is_trivial() const;
    FiniteSubgroup intersected(const FiniteSubgroup& rhs) const;
    bool contains(const FiniteSubgroup& rhs) const;

    // Group elements as coordinate vectors in [0,1)^m, lexicographically
    // sorted. Throws CapError if the order exceeds cap.
    std::vector<RatVector> elements(const Int& cap) const;

    bool operator==(const FiniteSubgroup& rhs) const = default;

private:
    Lattice carrier_;
};

enum class MorphismType { Automorphism, ForwardMap, BackwardMap, ProperPolymorphism };

std::string to_string(MorphismType t);

// Algebraic correspondence of the m-torus: the closed subgroup
// P = {(x, y) : y ∈ Mx + D/Z^m} of T^m x T^m, with M an invertible rational
// matrix and D a lattice containing Z^m + M Z^m with finite index.
// Composition applies the right-hand factor first; both coordinate
// projections are onto with finite fibers.
class Correspondence {
public:
    Correspondence(RatMatrix m, Lattice delta);

    static Correspondence identity(int m);
    // Smallest valid correspondence with matrix part M: D = Z^m + M Z^m.
    static Correspondence connected_hull(const RatMatrix& m);
    // Pairs (x, y) with Ax = By on the torus; A, B integer and invertible.
    static Correspondence from_relation(const RatMatrix& a, const RatMatrix& b);
    // Reconstructs P from its annihilator lattice in Z^{2m}.
    static Correspondence from_annihilator(const Lattice& ann);

    int dim() const { return m_.rows(); }
    const RatMatrix& matrix() const { return m_; }
    const Lattice& delta() const { return delta_; }
    bool operator==(const Correspondence& rhs) const = default;

    // Connected as a subgroup of T^m x T^m, i.e. D = Z^m + M Z^m.
    bool is_connected() const;

    Correspondence compose(const Correspondence& rhs) const;
    Correspondence adjoint() const;
    Correspondence power(int n) const;  // n >= 1

    // Fiber group of the first projection over 0 (carrier M^{-1} D) and of
    // the second projection (carrier D).
    FiniteSubgroup kernel_first() const;
    FiniteSubgroup kernel_second() const;
    std::pair<FiniteSubgroup, FiniteSubgroup> kernel_groups() const;

    MorphismType classify_morphism() const;

    // Integer matrix pair (A, B) with P = {(x, y) : Ax = By}, normalized so
    // B is the inverse of the canonical basis of D.
    std::pair<RatMatrix, RatMatrix> to_relation() const;

    // Quotient by a finite subgroup, rewritten on the standard torus via the
    // carrier basis G of h: (G^{-1} M G, G^{-1}(L + ML + D)).
    Correspondence factor_by(const FiniteSubgroup& h) const;

    // Character pairs annihilating the graph: {(n1, n2) : n1 + M^T n2 ∈
    // dual(D)} as a rank-m sublattice of Z^{2m}.
    Lattice annihilator() const;

    // Annihilator of factor_by(h), expressed in the original character
    // coordinates (equals annihilator() ∩ dual(L)^2).
    Lattice factor_annihilator(const FiniteSubgroup& h) const;

    // Transposed data acting on characters: Q = M^T and the character
    // lattice of the graph closure, Lambda = dual(M^{-1} D).
    struct CharacterAction {
        RatMatrix q;
        Lattice lambda;
    };
    CharacterAction character_action() const;

private:
    RatMatrix m_;
    Lattice delta_;
};

}  // namespace torcor
