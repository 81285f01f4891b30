#include "torcor/lattice.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace torcor {

namespace {

using ZMat = std::vector<std::vector<Int>>;

ZMat zmat_identity(int n) {
    ZMat u(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    return u;
}

void negate_row(std::vector<Int>& row) {
    for (auto& x : row) x = -x;
}

// a_row <- a_row - q * b_row
void submul_row(std::vector<Int>& a, const std::vector<Int>& b, const Int& q) {
    for (size_t j = 0; j < a.size(); ++j) a[j] -= q * b[j];
}

// Replaces rows (r, i) by a unimodular combination that puts a generator of
// gcd(a[r][c], a[i][c]) at (r, c) and zero at (i, c). Mirrors the operation
// on *u. When a[r][c] already divides a[i][c] this must reduce to a plain
// elimination that leaves row r untouched; the general gcd transform can
// rewrite row r even then (gcdext picks x = 0, y = ±1 when |alpha| = |beta|),
// which re-dirties cleared entries and lets the Smith loop cycle forever.
void xgcd_rows(ZMat& a, ZMat* u, int r, int i, int c) {
    const Int alpha = a[r][c], beta = a[i][c];
    if (beta == 0) return;
    if (alpha != 0 && beta % alpha == 0) {
        const Int q = beta / alpha;
        submul_row(a[i], a[r], q);
        if (u) submul_row((*u)[i], (*u)[r], q);
        return;
    }
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), alpha.get_mpz_t(),
               beta.get_mpz_t());
    const Int alpha_g = alpha / g, beta_g = beta / g;
    auto combine = [&](std::vector<Int>& row_r, std::vector<Int>& row_i) {
        for (size_t j = 0; j < row_r.size(); ++j) {
            Int nr = x * row_r[j] + y * row_i[j];
            Int ni = alpha_g * row_i[j] - beta_g * row_r[j];
            row_r[j] = std::move(nr);
            row_i[j] = std::move(ni);
        }
    };
    combine(a[r], a[i]);
    if (u) combine((*u)[r], (*u)[i]);
}

// In-place row Hermite form: pivot columns strictly increase, pivots are
// positive, entries below a pivot are zero, entries above lie in [0, pivot).
// Returns the number of nonzero rows. If u is non-null it is set to a
// unimodular matrix with u * input = output.
int hnf_rows(ZMat& a, ZMat* u) {
    const int k = static_cast<int>(a.size());
    const int m = k == 0 ? 0 : static_cast<int>(a[0].size());
    if (u) *u = zmat_identity(k);
    int r = 0;
    for (int c = 0; c < m && r < k; ++c) {
        for (int i = r + 1; i < k; ++i) xgcd_rows(a, u, r, i, c);
        if (a[r][c] == 0) {
            int p = -1;
            for (int i = r + 1; i < k; ++i)
                if (a[i][c] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            std::swap(a[r], a[p]);
            if (u) std::swap((*u)[r], (*u)[p]);
        }
        if (a[r][c] < 0) {
            negate_row(a[r]);
            if (u) negate_row((*u)[r]);
        }
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q != 0) {
                submul_row(a[i], a[r], q);
                if (u) submul_row((*u)[i], (*u)[r], q);
            }
        }
        ++r;
    }
    return r;
}

Int denominator_lcm(const RatMatrix& a) {
    Int l = 1;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.at(i, j).get_den_mpz_t());
    return l;
}

// Pivot row of each basis column (first nonzero entry from the top; the
// canonical form guarantees these are strictly increasing).
std::vector<int> pivot_rows(const RatMatrix& basis) {
    std::vector<int> p(basis.cols(), -1);
    for (int j = 0; j < basis.cols(); ++j)
        for (int i = 0; i < basis.rows(); ++i)
            if (basis.at(i, j) != 0) {
                p[j] = i;
                break;
            }
    return p;
}

// Rational coordinates s with basis * s = v, or nullopt if v is outside the
// rational span.
std::optional<RatVector> solve_coords(const RatMatrix& basis, const RatVector& v) {
    const auto piv = pivot_rows(basis);
    RatVector s(basis.cols(), Rat(0));
    for (int j = 0; j < basis.cols(); ++j) {
        Rat acc = v[piv[j]];
        for (int j2 = 0; j2 < j; ++j2) acc -= basis.at(piv[j], j2) * s[j2];
        s[j] = acc / basis.at(piv[j], j);
    }
    RatVector check(basis.rows(), Rat(0));
    for (int i = 0; i < basis.rows(); ++i)
        for (int j = 0; j < basis.cols(); ++j) check[i] += basis.at(i, j) * s[j];
    for (int i = 0; i < basis.rows(); ++i)
        if (check[i] != v[i]) return std::nullopt;
    return s;
}

struct Smith {
    ZMat d;  // n x k diagonal
    ZMat u;  // n x n unimodular
    ZMat v;  // k x k unimodular, u * a * v = d
};

// Column analogue of xgcd_rows, with the same plain-elimination contract on
// the divisible path.
void xgcd_cols(ZMat& a, ZMat& v, int c, int j, int r) {
    const Int alpha = a[r][c], beta = a[r][j];
    if (beta == 0) return;
    if (alpha != 0 && beta % alpha == 0) {
        const Int q = beta / alpha;
        for (auto* mat : {&a, &v})
            for (auto& row : *mat) row[j] -= q * row[c];
        return;
    }
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), alpha.get_mpz_t(),
               beta.get_mpz_t());
    const Int alpha_g = alpha / g, beta_g = beta / g;
    auto combine = [&](ZMat& mat) {
        for (auto& row : mat) {
            Int nc = x * row[c] + y * row[j];
            Int nj = alpha_g * row[j] - beta_g * row[c];
            row[c] = std::move(nc);
            row[j] = std::move(nj);
        }
    };
    combine(a);
    combine(v);
}

Smith snf_transform(ZMat a) {
    const int n = static_cast<int>(a.size());
    const int k = n == 0 ? 0 : static_cast<int>(a[0].size());
    Smith s{std::move(a), zmat_identity(n), zmat_identity(k)};
    ZMat& d = s.d;
    for (int t = 0; t < std::min(n, k); ++t) {
        int pi = -1, pj = -1;
        for (int i = t; i < n && pi < 0; ++i)
            for (int j = t; j < k; ++j)
                if (d[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        std::swap(d[t], d[pi]);
        std::swap(s.u[t], s.u[pi]);
        if (pj != t)
            for (auto* mat : {&d, &s.v}) {
                for (auto& row : *mat) std::swap(row[t], row[pj]);
            }
        while (true) {
            for (int i = t + 1; i < n; ++i) xgcd_rows(d, &s.u, t, i, t);
            for (int j = t + 1; j < k; ++j) xgcd_cols(d, s.v, t, j, t);
            bool col_clear = true;
            for (int i = t + 1; i < n; ++i)
                if (d[i][t] != 0) col_clear = false;
            if (!col_clear) continue;
            bool fixed = false;
            for (int i = t + 1; i < n && !fixed; ++i)
                for (int j = t + 1; j < k && !fixed; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        submul_row(d[t], d[i], Int(-1));
                        submul_row(s.u[t], s.u[i], Int(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (d[t][t] < 0) {
            negate_row(d[t]);
            negate_row(s.u[t]);
        }
    }
    return s;
}

RatMatrix zmat_to_rat(const ZMat& z) {
    RatMatrix a(static_cast<int>(z.size()),
                z.empty() ? 0 : static_cast<int>(z[0].size()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a.at(i, j) = Rat(z[i][j]);
    return a;
}

}  // namespace

Lattice Lattice::from_generators(int m, const RatMatrix& gens) {
    if (gens.cols() > 0 && gens.rows() != m)
        throw PreconditionError("generator ambient dimension mismatch");
    Lattice l;
    l.m_ = m;
    const Int s = denominator_lcm(gens);
    ZMat rows(gens.cols(), std::vector<Int>(m));
    for (int j = 0; j < gens.cols(); ++j)
        for (int i = 0; i < m; ++i) {
            Rat x = gens.at(i, j) * Rat(s);
            rows[j][i] = x.get_num();
        }
    const int r = hnf_rows(rows, nullptr);
    RatMatrix basis(m, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m; ++i) {
            basis.at(i, j) = Rat(rows[j][i]) / Rat(s);
            basis.at(i, j).canonicalize();
        }
    l.basis_ = std::move(basis);
    return l;
}

Lattice Lattice::from_vectors(int m, const std::vector<RatVector>& gens) {
    return from_generators(m, gens.empty() ? RatMatrix(m, 0)
                                           : RatMatrix::from_columns(gens));
}

Lattice Lattice::zero(int m) { return from_generators(m, RatMatrix(m, 0)); }

Lattice Lattice::standard(int m) { return from_generators(m, RatMatrix::identity(m)); }

bool Lattice::is_standard() const {
    return rank() == m_ && basis_ == RatMatrix::identity(m_);
}

Lattice Lattice::sum(const Lattice& rhs) const {
    if (m_ != rhs.m_) throw PreconditionError("lattice ambient dimension mismatch");
    return from_generators(m_, hstack(basis_, rhs.basis_));
}

Lattice Lattice::intersect(const Lattice& rhs) const {
    if (m_ != rhs.m_) throw PreconditionError("lattice ambient dimension mismatch");
    if (rank() == 0 || rhs.rank() == 0) return zero(m_);
    const Lattice k = integer_kernel(hstack(basis_, rhs.basis_.scaled(Rat(-1))));
    RatMatrix s(rank(), k.rank());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < k.rank(); ++j) s.at(i, j) = k.basis().at(i, j);
    return from_generators(m_, basis_ * s);
}

Lattice Lattice::dual() const {
    if (rank() != m_)
        throw PreconditionError("dual undefined for rank-deficient lattice");
    return from_generators(m_, basis_.inverse().transpose());
}

Lattice Lattice::transformed(const RatMatrix& t) const {
    if (t.cols() != m_) throw PreconditionError("transform shape mismatch");
    return from_generators(t.rows(), t * basis_);
}

Lattice Lattice::scaled(const Rat& c) const {
    return from_generators(m_, basis_.scaled(c));
}

bool Lattice::contains(const RatVector& v) const {
    if (static_cast<int>(v.size()) != m_)
        throw PreconditionError("vector ambient dimension mismatch");
    if (rank() == 0) return is_zero(v);
    auto s = solve_coords(basis_, v);
    return s.has_value() && is_integral(*s);
}

bool Lattice::contains_lattice(const Lattice& sub) const {
    if (m_ != sub.m_) throw PreconditionError("lattice ambient dimension mismatch");
    for (int j = 0; j < sub.rank(); ++j)
        if (!contains(sub.basis_.column(j))) return false;
    return true;
}

namespace {

// Integer coordinate matrix of sub's basis in super's basis. Throws unless
// sub is a finite-index sublattice of super.
RatMatrix sublattice_coords(const Lattice& sub, const Lattice& super) {
    if (sub.ambient() != super.ambient())
        throw PreconditionError("lattice ambient dimension mismatch");
    if (sub.rank() != super.rank())
        throw PreconditionError("not a finite-index sublattice");
    const int r = sub.rank();
    RatMatrix c(r, r);
    for (int j = 0; j < r; ++j) {
        auto s = solve_coords(super.basis(), sub.basis().column(j));
        if (!s || !is_integral(*s)) throw PreconditionError("not a sublattice");
        for (int i = 0; i < r; ++i) c.at(i, j) = (*s)[i];
    }
    return c;
}

ZMat rat_to_zmat(const RatMatrix& a) {
    ZMat z(a.rows(), std::vector<Int>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) z[i][j] = a.at(i, j).get_num();
    return z;
}

}  // namespace

Int Lattice::index_in(const Lattice& super) const {
    const RatMatrix c = sublattice_coords(*this, super);
    Rat d = c.det();
    Int idx = d.get_num();
    return idx < 0 ? Int(-idx) : idx;
}

std::vector<Int> Lattice::quotient_invariants_in(const Lattice& super) const {
    const RatMatrix c = sublattice_coords(*this, super);
    const Smith s = snf_transform(rat_to_zmat(c));
    std::vector<Int> divisors;
    for (int i = 0; i < rank(); ++i) divisors.push_back(s.d[i][i]);
    return divisors;
}

Lattice Lattice::intersect_subspace(const RatMatrix& c) const {
    if (c.rows() != m_) throw PreconditionError("subspace ambient dimension mismatch");
    if (rank() == 0) return zero(m_);
    const RatMatrix comp = rational_kernel(c.transpose());
    if (comp.cols() == 0) return *this;
    const Lattice k = integer_kernel(comp.transpose() * basis_);
    return from_generators(m_, basis_ * k.basis());
}

Lattice integer_kernel(const RatMatrix& a) {
    const int k = a.cols();
    // Row scaling does not change the kernel.
    ZMat rows(k, std::vector<Int>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) {
        Int l = 1;
        for (int j = 0; j < k; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.at(i, j).get_den_mpz_t());
        for (int j = 0; j < k; ++j) {
            Rat x = a.at(i, j) * Rat(l);
            rows[j][i] = x.get_num();
        }
    }
    ZMat u;
    const int r = hnf_rows(rows, &u);
    std::vector<RatVector> gens;
    for (int i = r; i < k; ++i) {
        RatVector v(k);
        for (int j = 0; j < k; ++j) v[j] = Rat(u[i][j]);
        gens.push_back(std::move(v));
    }
    return Lattice::from_vectors(k, gens);
}

std::vector<RatVector> enumerate_cosets(const Lattice& super, const Lattice& sub,
                                        const Int& cap) {
    const RatMatrix c = sublattice_coords(sub, super);
    const int r = sub.rank();
    const Smith s = snf_transform(rat_to_zmat(c));
    Int index = 1;
    for (int i = 0; i < r; ++i) index *= s.d[i][i];
    if (index > cap) throw CapError("quotient too large to enumerate");
    const RatMatrix uinv = zmat_to_rat(s.u).inverse();
    std::vector<RatVector> reps;
    reps.reserve(index.get_ui());
    std::vector<Int> counter(r, 0);
    while (true) {
        RatVector coords(r, Rat(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) coords[i] += uinv.at(i, j) * Rat(counter[j]);
        reps.push_back(super.basis() * coords);
        int pos = r - 1;
        while (pos >= 0) {
            ++counter[pos];
            if (counter[pos] < s.d[pos][pos]) break;
            counter[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return reps;
}

}  // namespace torcor
