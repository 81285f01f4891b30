#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "torcor/correspondence.hpp"

namespace torcor {

// Characters are integer frequency vectors n acting as x -> exp(2*pi*i n.x);
// the zero function (not the trivial character n = 0) is nullopt.
using CharacterImage = std::optional<IntVector>;

// V chi_n = chi_{Q^{-1} n} when n lies in the character lattice, else zero.
CharacterImage apply_V(const Correspondence& p, const IntVector& n);

// Adjoint action: V* chi_n = chi_{Q n} when Q n lies in the character
// lattice, else zero. Equals apply_V of the adjoint correspondence.
CharacterImage apply_V_star(const Correspondence& p, const IntVector& n);

// V restricted to the box {n : max |n_i| <= radius}. Every column carries at
// most one entry and that entry is 1, so the matrix is stored as an image
// map. Images that land outside the box are kept in `escapes`, never zeroed.
struct TruncatedOperator {
    static constexpr long kZero = -1;
    static constexpr long kEscape = -2;

    long radius = 0;
    std::vector<IntVector> characters;  // the box in ascending lex order
    std::vector<long> image;            // per column: row index, kZero, or kEscape
    std::vector<std::pair<long, IntVector>> escapes;  // (column, out-of-box image)

    // Index of n in `characters`, -1 when outside the box.
    long index_of(const IntVector& n) const;
};

TruncatedOperator operator_matrix(const Correspondence& p, long radius);

// Forward V-iterates and backward V*-iterates of chi_n. The vectors hold the
// surviving images in order; a death step k means the k-th application
// returned zero.
struct OrbitRecord {
    IntVector start;
    std::vector<IntVector> forward;
    std::optional<long> forward_death;
    std::vector<IntVector> backward;
    std::optional<long> backward_death;
};

OrbitRecord character_orbit(const Correspondence& p, const IntVector& n, long kmax);

// Truncated eigenvector check for an eigenvalue gamma = re + i*im strictly
// inside the unit disk. Requires n in the backward core with Q^{-1} n outside
// the character lattice; builds v = sum_{k<=K} gamma^k chi_{Q^{k-1} n} and
// measures ||V v - gamma v|| / ||v|| with exact squared norms.
struct EigenvectorCheck {
    long terms = 0;  // K
    Rat residual_norm_sq;
    Rat vector_norm_sq;
    Rat ratio_sq;
    double ratio = 0.0;
};

EigenvectorCheck verify_eigenvector(const Correspondence& p, const IntVector& n,
                                    const Rat& gamma_re, const Rat& gamma_im, long terms);

// Exact one-step law from x0: uniform on {M x0 + d : d in Delta/Z^m}, one
// atom per second-kernel element, reduced mod 1 and lex sorted.
struct StepDistribution {
    std::vector<RatVector> atoms;
    Rat mass;  // 1 / atoms.size()
};

StepDistribution step_distribution(const Correspondence& p, const RatVector& x0);

// Seeded trajectory x0, x1, ..., x_steps with x_{t+1} uniform on the step
// distribution at x_t. States stay exact rationals; steps is capped at
// 100000 and state denominators at 16384 bits.
std::vector<RatVector> sample_path(const Correspondence& p, const RatVector& x0,
                                   long steps, std::uint64_t seed);

// |average of chi_n along the path| per requested character; floating point
// diagnostic over exact states.
std::vector<double> equidistribution_stat(const std::vector<RatVector>& path,
                                          const std::vector<IntVector>& characters);

}  // namespace torcor
