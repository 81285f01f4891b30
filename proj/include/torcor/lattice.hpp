#pragma once

#include <vector>

#include "torcor/matrix.hpp"

namespace torcor {

// Finitely generated subgroup of Q^m (a lattice of any rank up to m).
// The stored basis is the canonical column Hermite form of the generators,
// so two lattices are equal iff their bases are equal.
class Lattice {
public:
    Lattice() : m_(0), basis_(0, 0) {}

    // Columns of gens generate the lattice; zero and dependent generators
    // are allowed and absorbed by the canonical form.
    static Lattice from_generators(int m, const RatMatrix& gens);
    static Lattice from_vectors(int m, const std::vector<RatVector>& gens);
    static Lattice zero(int m);
    static Lattice standard(int m);  // Z^m

    int ambient() const { return m_; }
    int rank() const { return basis_.cols(); }
    const RatMatrix& basis() const { return basis_; }
    bool operator==(const Lattice& rhs) const = default;
    bool is_standard() const;

    Lattice sum(const Lattice& rhs) const;
    Lattice intersect(const Lattice& rhs) const;

    // Dual lattice {y : <y, x> in Z for all x}. Requires full rank.
    Lattice dual() const;

    // Image T * L under an invertible square matrix.
    Lattice transformed(const RatMatrix& t) const;
    Lattice scaled(const Rat& c) const;

    bool contains(const RatVector& v) const;
    bool contains_lattice(const Lattice& sub) const;

    // Group index [super : this]; throws PreconditionError("not a sublattice")
    // unless this is a finite-index sublattice of super.
    Int index_in(const Lattice& super) const;

    // Elementary divisors d_1 | d_2 | ... of super/this, one per rank
    // (divisors equal to 1 are kept).
    std::vector<Int> quotient_invariants_in(const Lattice& super) const;

    // L intersected with the rational column span of c.
    Lattice intersect_subspace(const RatMatrix& c) const;

private:
    int m_;
    RatMatrix basis_;
};

// Saturated integer kernel {x in Z^k : a x = 0} for a rational matrix a with
// k columns.
Lattice integer_kernel(const RatMatrix& a);

// Representatives of super/sub (sub a finite-index sublattice of super).
// Throws CapError if the index exceeds cap.
std::vector<RatVector> enumerate_cosets(const Lattice& super, const Lattice& sub,
                                        const Int& cap);

}  // namespace torcor
