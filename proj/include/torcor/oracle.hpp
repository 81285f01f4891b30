#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "torcor/classify.hpp"
#include "torcor/correspondence.hpp"
#include "torcor/prng.hpp"

// Independent ground-truth engines. Nothing here reuses the parametric
// composition and adjoint formulas it is meant to check.
namespace torcor::oracle {

// Composition computed purely on annihilator lattices: embed the two
// annihilators into Z^{3m} sharing the middle block, cut the sublattice with
// middle block zero, project to the outer blocks.
Lattice compose_via_annihilator(const Correspondence& p1, const Correspondence& p2);

// Block swap of the annihilator.
Lattice adjoint_via_annihilator(const Correspondence& p);

// The Markov transition matrix of a correspondence restricted to N-torsion
// states (Z/N)^m, states indexed lexicographically.
struct FiniteModel {
    long modulus = 0;
    int dim = 0;
    long state_count = 0;
    std::vector<std::map<long, Rat>> rows;  // row-stochastic transitions
    Correspondence source;
};

// Requires an integral matrix, modulus a multiple of the noise exponent and
// coprime to the determinant; at most 100000 states.
FiniteModel torsion_model(const Correspondence& p, long modulus);

bool is_row_stochastic(const FiniteModel& model);
bool is_doubly_stochastic(const FiniteModel& model);

// Dimension of the eigenvalue-1 eigenspace of the transition matrix.
long invariant_dimension(const FiniteModel& model);

// Cycles of the partial character map n -> M^T n mod N (killed unless n
// annihilates the noise subgroup). Always equals invariant_dimension: the
// eigenspace is spanned by the sums of characters along surviving cycles.
long character_cycle_count(const FiniteModel& model);

// Exact multiset check of the model's row action on characters against the
// character map of the source correspondence reduced mod N: surviving
// characters advance by M^T, killed ones average to zero over a nontrivial
// subgroup coset.
bool character_action_matches(const FiniteModel& model);

// One instance of the documented random distribution: integer entries up to
// 3 over a denominator up to 4, nonsingular, hull noise optionally refined by
// a cyclic subgroup of order up to 4.
Correspondence random_correspondence(SplitMix64& rng, int dim);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CaseReport {
    std::uint64_t seed = 0;
    std::string params;
    bool pass = false;
    std::vector<CheckResult> checks;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    long count = 0;
    long failures = 0;
    bool pass = false;
    std::vector<CaseReport> cases;
};

// Injectable implementations so tests can corrupt one code path and watch
// the suite catch it.
struct SuiteHooks {
    std::function<Correspondence(const Correspondence&, const Correspondence&)> compose;
    std::function<DeterministicCores(const Correspondence&)> cores;
};

SuiteReport consistency_suite(std::uint64_t seed, long count);
SuiteReport consistency_suite(std::uint64_t seed, long count, const SuiteHooks& hooks);

}  // namespace torcor::oracle
