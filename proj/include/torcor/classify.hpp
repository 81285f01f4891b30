#pragma once

#include <string>
#include <vector>

#include "torcor/correspondence.hpp"
#include "torcor/polynomial.hpp"

namespace torcor {

// Sublattices of the character lattice Lambda on which the Markov operator
// V (respectively V*) acts isometrically forever: xi_plus collects the
// characters whose full backward Q-orbit stays in Lambda, xi_minus the same
// for the forward orbit.
struct DeterministicCores {
    Lattice xi_plus;
    Lattice xi_minus;
    Lattice xi_intersection;
    bool operator==(const DeterministicCores& rhs) const = default;
};

struct NondeterminismFlags {
    bool right;  // xi_plus trivial
    bool left;   // xi_minus trivial
    bool total;  // xi_plus ∩ xi_minus trivial
};

enum class SpectrumCase {
    PointZeroOnly,
    FullUnitCircle,
    WithinCircleUnionZero,
    FullUnitDisk,
};

std::string to_string(SpectrumCase c);

struct SpectrumReport {
    SpectrumCase v;
    SpectrumCase v_star;
};

// Necessary conditions for P to be an algebraic factor of a torus
// automorphism: |det M| = 1 and M conjugate over Q to an integer matrix
// (all invariant factors integral).
struct AutomorphismCoverWitness {
    bool possible;
    std::vector<RatPoly> invariant_factors;
    Rat det;
};

struct KernelGrowthRow {
    int n;
    Int first_order;
    Int second_order;
    std::vector<Int> first_invariants;
    std::vector<Int> second_invariants;
};

struct InvarianceFlags {
    bool invariant;         // P(H) ⊆ H
    bool co_invariant;      // P*(H) ⊆ H
    bool doubly_invariant;
};

struct ClassificationReport {
    int dim;
    MorphismType morphism;
    bool connected;
    bool ergodic;
    Int kernel_first_order;
    Int kernel_second_order;
    DeterministicCores cores;
    NondeterminismFlags nondeterminism;
    SpectrumReport spectrum;
    AutomorphismCoverWitness cover;
};

// A correspondence is ergodic iff its matrix has no root-of-unity
// eigenvalue; the offset lattice plays no role.
bool is_ergodic(const Correspondence& p);

DeterministicCores deterministic_cores(const Correspondence& p);

NondeterminismFlags nondeterminism_flags(const DeterministicCores& cores);
NondeterminismFlags nondeterminism_flags(const Correspondence& p);

SpectrumReport spectrum_report(const Correspondence& p);

// Kernel invariants of P^n for n = 1..max_power.
std::vector<KernelGrowthRow> kernel_growth(const Correspondence& p, int max_power);

InvarianceFlags invariance_of(const Correspondence& p, const FiniteSubgroup& h);

// Smallest subgroup containing h whose carrier is stable under both m and
// m^{-1}; requires m in GL(dim, Z).
FiniteSubgroup minimal_doubly_invariant(const RatMatrix& m, const FiniteSubgroup& h);

AutomorphismCoverWitness automorphism_cover_necessary(const Correspondence& p);

ClassificationReport classify(const Correspondence& p);

}  // namespace torcor
