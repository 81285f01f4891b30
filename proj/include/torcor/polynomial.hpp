#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torcor/matrix.hpp"

namespace torcor {

// Univariate polynomial over Q. Coefficients are stored lowest degree first
// with no trailing zeros; the zero polynomial has degree -1.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(RatVector coeffs);
    static RatPoly constant(const Rat& c);
    static RatPoly monomial(int deg, const Rat& c = Rat(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(int i) const;
    const Rat& lc() const;
    const RatVector& coeffs() const { return c_; }

    bool operator==(const RatPoly& rhs) const = default;
    RatPoly operator+(const RatPoly& rhs) const;
    RatPoly operator-(const RatPoly& rhs) const;
    RatPoly operator*(const RatPoly& rhs) const;
    RatPoly scaled(const Rat& c) const;

    // Euclidean division; rhs must be nonzero.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& rhs) const;
    bool divides(const RatPoly& multiple) const;

    RatPoly monic() const;
    RatPoly derivative() const;
    Rat evaluate(const Rat& x) const;
    bool is_integral() const;

    std::string to_string(const std::string& var = "x") const;

private:
    RatVector c_;
};

// Monic characteristic polynomial det(xI - a) of a square matrix.
RatPoly char_poly(const RatMatrix& a);

// Monic gcd; gcd(0, 0) = 0.
RatPoly poly_gcd(RatPoly a, RatPoly b);

// Substitutes a square matrix for the variable.
RatMatrix eval_poly(const RatPoly& p, const RatMatrix& a);

// All cyclotomic polynomials Phi_d with phi(d) <= m, as (d, Phi_d) sorted
// by d.
std::vector<std::pair<int, RatPoly>> cyclotomics_up_to_totient(int m);

// True iff p has a common factor with some Phi_d, phi(d) <= m.
bool has_root_of_unity_factor(const RatPoly& p, int m);

struct PolyFactor {
    RatPoly factor;  // monic irreducible
    int multiplicity;
    bool operator==(const PolyFactor& rhs) const = default;
};

// Irreducible factorization over Q: p = c * prod factor^multiplicity with c
// a nonzero constant. Factors are monic, sorted by degree then coefficient
// order. Throws CapError above degree 16 and PreconditionError on zero input.
std::vector<PolyFactor> factor_poly_rational(const RatPoly& p);

// Nonconstant invariant factors of xI - a (divisibility chain, monic); their
// product is char_poly(a).
std::vector<RatPoly> invariant_factors(const RatMatrix& a);

}  // namespace torcor
