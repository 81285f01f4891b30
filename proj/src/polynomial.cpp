#include "torcor/polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace torcor {

RatPoly::RatPoly(RatVector coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::constant(const Rat& c) { return RatPoly(RatVector{c}); }

RatPoly RatPoly::monomial(int deg, const Rat& c) {
    RatVector v(deg + 1, Rat(0));
    v[deg] = c;
    return RatPoly(std::move(v));
}

Rat RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[i];
}

const Rat& RatPoly::lc() const {
    if (c_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
    return c_.back();
}

RatPoly RatPoly::operator+(const RatPoly& rhs) const {
    RatVector v(std::max(c_.size(), rhs.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < rhs.c_.size(); ++i) v[i] += rhs.c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& rhs) const {
    RatVector v(std::max(c_.size(), rhs.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < rhs.c_.size(); ++i) v[i] -= rhs.c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const RatPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return RatPoly();
    RatVector v(c_.size() + rhs.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < rhs.c_.size(); ++j) v[i + j] += c_[i] * rhs.c_[j];
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::scaled(const Rat& c) const {
    RatVector v = c_;
    for (auto& x : v) x *= c;
    return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& rhs) const {
    if (rhs.is_zero()) throw PreconditionError("polynomial division by zero");
    RatPoly q, r = *this;
    while (!r.is_zero() && r.degree() >= rhs.degree()) {
        RatPoly t = monomial(r.degree() - rhs.degree(), r.lc() / rhs.lc());
        q = q + t;
        r = r - t * rhs;
    }
    return {q, r};
}

bool RatPoly::divides(const RatPoly& multiple) const {
    if (is_zero()) return multiple.is_zero();
    return multiple.divmod(*this).second.is_zero();
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(1 / lc());
}

RatPoly RatPoly::derivative() const {
    if (degree() < 1) return RatPoly();
    RatVector v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(v));
}

Rat RatPoly::evaluate(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

bool RatPoly::is_integral() const {
    for (const auto& x : c_)
        if (!is_integer(x)) return false;
    return true;
}

std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rat c = coeff(i);
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        Rat a = c < 0 ? Rat(-c) : c;
        if (i == 0 || a != 1) out << rat_to_string(a);
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    return out.str();
}

RatPoly char_poly(const RatMatrix& a) {
    if (!a.is_square()) throw PreconditionError("characteristic polynomial of non-square matrix");
    const int m = a.rows();
    RatVector coeffs(m + 1, Rat(0));
    coeffs[m] = 1;
    RatMatrix mk(m, m);
    RatMatrix id = RatMatrix::identity(m);
    Rat ck(1);
    for (int k = 1; k <= m; ++k) {
        mk = a * (mk + id.scaled(ck));
        ck = -mk.trace() / Rat(k);
        coeffs[m - k] = ck;
    }
    return RatPoly(std::move(coeffs));
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

RatMatrix eval_poly(const RatPoly& p, const RatMatrix& a) {
    if (!a.is_square()) throw PreconditionError("polynomial of non-square matrix");
    const int m = a.rows();
    RatMatrix acc(m, m);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * a;
        Rat c = p.coeff(i);
        for (int d = 0; d < m; ++d) acc.at(d, d) += c;
    }
    return acc;
}

namespace {

int totient(int d) {
    int result = d, n = d;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace

std::vector<std::pair<int, RatPoly>> cyclotomics_up_to_totient(int m) {
    std::vector<std::pair<int, RatPoly>> out;
    if (m < 1) return out;
    std::map<int, RatPoly> cache;
    // phi(d) >= sqrt(d/2), so phi(d) <= m forces d <= 2m^2.
    for (int d = 1; d <= 2 * m * m; ++d) {
        RatVector xd(d + 1, Rat(0));
        xd[0] = -1;
        xd[d] = 1;
        RatPoly phi(std::move(xd));
        for (int e = 1; e < d; ++e)
            if (d % e == 0) phi = phi.divmod(cache.at(e)).first;
        cache.emplace(d, phi);
        if (totient(d) <= m) out.emplace_back(d, phi);
    }
    return out;
}

bool has_root_of_unity_factor(const RatPoly& p, int m) {
    for (const auto& [d, phi] : cyclotomics_up_to_totient(m))
        if (poly_gcd(p, phi).degree() > 0) return true;
    return false;
}

namespace {

// Integer polynomials, lowest degree first, trimmed.
using ZPoly = std::vector<Int>;

void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

Int pos_mod(const Int& a, const Int& p) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

ZPoly zp_reduce(ZPoly a, const Int& p) {
    for (auto& x : a) x = pos_mod(x, p);
    zp_trim(a);
    return a;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return zp_reduce(std::move(c), p);
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const Int& p) {
    ZPoly c(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return zp_reduce(std::move(c), p);
}

Int zp_inv_scalar(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw PreconditionError("non-invertible scalar in modular arithmetic");
    return r;
}

ZPoly zp_scale(ZPoly a, const Int& c, const Int& p) {
    for (auto& x : a) x = pos_mod(x * c, p);
    zp_trim(a);
    return a;
}

ZPoly zp_make_monic(const ZPoly& a, const Int& p) {
    if (a.empty()) return a;
    return zp_scale(a, zp_inv_scalar(a.back(), p), p);
}

// Division with remainder in F_p[x].
std::pair<ZPoly, ZPoly> zp_divmod(const ZPoly& a, const ZPoly& b, const Int& p) {
    if (b.empty()) throw PreconditionError("polynomial division by zero");
    ZPoly q, r = a;
    const Int lcinv = zp_inv_scalar(b.back(), p);
    if (zdeg(r) >= zdeg(b)) q.assign(r.size() - b.size() + 1, Int(0));
    while (zdeg(r) >= zdeg(b)) {
        const int shift = zdeg(r) - zdeg(b);
        const Int f = pos_mod(r.back() * lcinv, p);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] = pos_mod(r[shift + i] - f * b[i], p);
        zp_trim(r);
    }
    zp_trim(q);
    return {q, r};
}

ZPoly zp_gcd(ZPoly a, ZPoly b, const Int& p) {
    a = zp_reduce(std::move(a), p);
    b = zp_reduce(std::move(b), p);
    while (!b.empty()) {
        ZPoly r = zp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return zp_make_monic(a, p);
}

// Extended Euclid: returns (g, s) with s*a = g mod b, g monic = gcd(a, b).
// Only the cofactor of a is needed by the lifting step.
std::pair<ZPoly, ZPoly> zp_half_xgcd(const ZPoly& a, const ZPoly& b, const Int& p) {
    ZPoly r0 = zp_reduce(a, p), r1 = zp_reduce(b, p);
    ZPoly s0 = {Int(1)}, s1 = {};
    while (!r1.empty()) {
        auto [q, r2] = zp_divmod(r0, r1, p);
        ZPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.empty()) return {r0, s0};
    const Int inv = zp_inv_scalar(r0.back(), p);
    return {zp_scale(r0, inv, p), zp_scale(s0, inv, p)};
}

ZPoly zp_powmod(const ZPoly& base, const Int& exp, const ZPoly& mod, const Int& p) {
    ZPoly acc = {Int(1)};
    ZPoly b = zp_divmod(zp_reduce(base, p), mod, p).second;
    const size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = zp_divmod(zp_mul(acc, acc, p), mod, p).second;
        if (mpz_tstbit(exp.get_mpz_t(), i))
            acc = zp_divmod(zp_mul(acc, b, p), mod, p).second;
    }
    return acc;
}

uint64_t splitmix_step(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Cantor-Zassenhaus equal-degree splitting: u is monic with all irreducible
// factors of degree d; p is odd.
void zp_equal_degree(const ZPoly& u, int d, const Int& p, uint64_t& rng,
                     std::vector<ZPoly>& out) {
    if (zdeg(u) == d) {
        out.push_back(u);
        return;
    }
    Int e = 1;
    mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
        ZPoly a(zdeg(u), Int(0));
        for (auto& x : a) x = pos_mod(Int(static_cast<unsigned long>(splitmix_step(rng) >> 16)), p);
        zp_trim(a);
        if (zdeg(a) < 1) continue;
        ZPoly g = zp_gcd(a, u, p);
        if (zdeg(g) == 0 || zdeg(g) == zdeg(u)) {
            ZPoly b = zp_powmod(a, e, u, p);
            if (b.empty()) continue;
            b[0] = pos_mod(b[0] - 1, p);
            zp_trim(b);
            g = zp_gcd(b, u, p);
        }
        if (zdeg(g) > 0 && zdeg(g) < zdeg(u)) {
            zp_equal_degree(g, d, p, rng, out);
            zp_equal_degree(zp_divmod(u, g, p).first, d, p, rng, out);
            return;
        }
    }
}

// Full factorization of a monic squarefree polynomial over F_p.
std::vector<ZPoly> zp_factor_squarefree(const ZPoly& f, const Int& p, uint64_t& rng) {
    std::vector<ZPoly> out;
    ZPoly v = f;
    ZPoly x = {Int(0), Int(1)};
    ZPoly w = x;
    int d = 0;
    while (zdeg(v) >= 2 * (d + 1)) {
        ++d;
        w = zp_powmod(w, p, v, p);
        ZPoly diff = zp_sub(w, x, p);
        ZPoly g = zp_gcd(diff, v, p);
        if (zdeg(g) > 0) {
            zp_equal_degree(g, d, p, rng, out);
            v = zp_divmod(v, g, p).first;
            w = zp_divmod(w, v, p).second;
        }
    }
    if (zdeg(v) > 0) out.push_back(v);
    return out;
}

bool small_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

ZPoly zpoly_derivative(const ZPoly& a) {
    ZPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Int(static_cast<long>(i)));
    zp_trim(d);
    return d;
}

Int symmetric_rep(const Int& a, const Int& m) {
    Int r = pos_mod(a, m);
    if (r * 2 > m) r -= m;
    return r;
}

// Exact division in Z[x] by a monic divisor; nullopt if the remainder is
// nonzero or quotient coefficients would be fractional (cannot happen for
// monic b).
std::optional<ZPoly> zpoly_exact_divide(const ZPoly& a, const ZPoly& b) {
    ZPoly q, r = a;
    if (zdeg(r) < zdeg(b)) return std::nullopt;
    q.assign(r.size() - b.size() + 1, Int(0));
    while (zdeg(r) >= zdeg(b)) {
        const int shift = zdeg(r) - zdeg(b);
        const Int f = r.back();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
        zp_trim(r);
    }
    if (!r.empty()) return std::nullopt;
    return q;
}

// Zassenhaus factorization of a monic squarefree integer polynomial of
// degree >= 2 into monic integer irreducibles.
std::vector<ZPoly> zassenhaus_monic(const ZPoly& f) {
    const int n = zdeg(f);
    // Prime with squarefree reduction; exists because disc(f) != 0.
    Int p = 0;
    for (int cand = 3;; cand += 2) {
        if (!small_prime(cand)) continue;
        Int q(cand);
        ZPoly fq = zp_reduce(f, q);
        if (zdeg(fq) != n) continue;
        if (zdeg(zp_gcd(fq, zpoly_derivative(f), q)) == 0) {
            p = q;
            break;
        }
    }

    uint64_t rng = 0x5bd1e9954c78d2c1ull;
    std::vector<ZPoly> modular = zp_factor_squarefree(zp_reduce(f, p), p, rng);
    if (modular.size() == 1) return {f};

    // Coefficient bound for monic factors: 2^n * ||f||_2.
    Int norm_sq = 0;
    for (const auto& c : f) norm_sq += c * c;
    Int norm;
    mpz_sqrt(norm.get_mpz_t(), norm_sq.get_mpz_t());
    norm += 1;
    Int bound = norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));

    // Bezout cofactors for the linear multifactor Hensel step.
    std::vector<ZPoly> sigma;
    for (size_t i = 0; i < modular.size(); ++i) {
        ZPoly w = {Int(1)};
        for (size_t j = 0; j < modular.size(); ++j)
            if (j != i) w = zp_divmod(zp_mul(w, modular[j], p), modular[i], p).second;
        auto [g, s] = zp_half_xgcd(w, modular[i], p);
        if (zdeg(g) != 0) throw PreconditionError("modular factors not coprime");
        sigma.push_back(std::move(s));
    }

    std::vector<ZPoly> lifted = modular;
    Int modulus = p;
    while (modulus <= bound * 2) {
        ZPoly prod = {Int(1)};
        for (const auto& h : lifted) {
            ZPoly next(prod.size() + h.size() - 1, Int(0));
            for (size_t i = 0; i < prod.size(); ++i)
                for (size_t j = 0; j < h.size(); ++j) next[i + j] += prod[i] * h[j];
            prod = std::move(next);
        }
        ZPoly err(std::max(f.size(), prod.size()), Int(0));
        for (size_t i = 0; i < f.size(); ++i) err[i] += f[i];
        for (size_t i = 0; i < prod.size(); ++i) err[i] -= prod[i];
        for (auto& c : err) c /= modulus;
        ZPoly ebar = zp_reduce(std::move(err), p);
        for (size_t i = 0; i < lifted.size(); ++i) {
            ZPoly delta = zp_divmod(zp_mul(sigma[i], ebar, p), modular[i], p).second;
            if (lifted[i].size() < modular[i].size()) lifted[i].resize(modular[i].size(), Int(0));
            for (size_t j = 0; j < delta.size(); ++j) lifted[i][j] += modulus * delta[j];
        }
        modulus *= p;
    }

    // Subset recombination, smallest subsets first.
    std::vector<ZPoly> result;
    ZPoly rem = f;
    std::vector<ZPoly> pool = lifted;
    int size = 1;
    while (static_cast<int>(pool.size()) >= 2 * size) {
        bool found = false;
        std::vector<int> idx(size);
        // Iterate cardinality-`size` index subsets in lexicographic order.
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            ZPoly cand = {Int(1)};
            for (int i : idx) cand = zp_mul(cand, pool[i], modulus);
            for (auto& c : cand) c = symmetric_rep(c, modulus);
            zp_trim(cand);
            auto quot = cand.empty() ? std::nullopt : zpoly_exact_divide(rem, cand);
            if (quot) {
                result.push_back(cand);
                rem = *quot;
                std::vector<ZPoly> next_pool;
                for (int i = 0, k = 0; i < static_cast<int>(pool.size()); ++i) {
                    if (k < size && idx[k] == i)
                        ++k;
                    else
                        next_pool.push_back(pool[i]);
                }
                pool = std::move(next_pool);
                found = true;
                break;
            }
            int pos = size - 1;
            while (pos >= 0 && idx[pos] == static_cast<int>(pool.size()) - size + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++size;
    }
    if (zdeg(rem) > 0) result.push_back(rem);
    return result;
}

ZPoly ratpoly_to_monic_zpoly(const RatPoly& s, Int& lambda) {
    // s is monic; substitute x -> x / lambda and rescale to land in Z[x].
    lambda = 1;
    for (int i = 0; i <= s.degree(); ++i)
        mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), s.coeff(i).get_den_mpz_t());
    const int n = s.degree();
    ZPoly f(n + 1);
    Int power = 1;
    for (int i = n; i >= 0; --i) {
        Rat c = s.coeff(i) * Rat(power);
        f[i] = c.get_num();
        power *= lambda;
    }
    return f;
}

RatPoly zpoly_substitute_scaled(const ZPoly& h, const Int& lambda) {
    // monic(h(lambda * x))
    RatVector v(h.size());
    Int power = 1;
    for (size_t i = 0; i < h.size(); ++i) {
        v[i] = Rat(h[i] * power);
        power *= lambda;
    }
    RatPoly g{std::move(v)};
    return g.monic();
}

std::vector<RatPoly> factor_squarefree_monic(const RatPoly& s) {
    if (s.degree() == 1) return {s};
    Int lambda;
    ZPoly f = ratpoly_to_monic_zpoly(s, lambda);
    std::vector<RatPoly> out;
    for (const auto& h : zassenhaus_monic(f)) out.push_back(zpoly_substitute_scaled(h, lambda));
    return out;
}

// Yun squarefree decomposition of a monic polynomial: f = prod a_i^i with
// the a_i squarefree and pairwise coprime.
std::vector<std::pair<RatPoly, int>> yun_squarefree(const RatPoly& f) {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly df = f.derivative();
    RatPoly g = poly_gcd(f, df);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    RatPoly b = f.divmod(g).first;
    RatPoly c = df.divmod(g).first;
    RatPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RatPoly a = poly_gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a.monic(), i);
        b = b.divmod(a).first;
        c = d.divmod(a).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

bool poly_order_less(const RatPoly& a, const RatPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
    return false;
}

}  // namespace

std::vector<PolyFactor> factor_poly_rational(const RatPoly& p) {
    if (p.is_zero()) throw PreconditionError("cannot factor zero polynomial");
    if (p.degree() > 16) throw CapError("factorization degree cap exceeded");
    std::vector<PolyFactor> out;
    if (p.degree() == 0) return out;

    RatVector coeffs = p.coeffs();
    int x_mult = 0;
    while (coeffs[x_mult] == 0) ++x_mult;
    if (x_mult > 0) {
        out.push_back({RatPoly::monomial(1), x_mult});
        coeffs.erase(coeffs.begin(), coeffs.begin() + x_mult);
    }
    RatPoly q = RatPoly(std::move(coeffs)).monic();
    for (const auto& [s, mult] : yun_squarefree(q))
        for (const auto& h : factor_squarefree_monic(s)) out.push_back({h, mult});

    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        return poly_order_less(a.factor, b.factor);
    });
    std::vector<PolyFactor> merged;
    for (auto& pf : out) {
        if (!merged.empty() && merged.back().factor == pf.factor)
            merged.back().multiplicity += pf.multiplicity;
        else
            merged.push_back(std::move(pf));
    }
    return merged;
}

std::vector<RatPoly> invariant_factors(const RatMatrix& a) {
    if (!a.is_square()) throw PreconditionError("invariant factors of non-square matrix");
    const int m = a.rows();
    std::vector<std::vector<RatPoly>> p(m, std::vector<RatPoly>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            RatVector v{-a.at(i, j), Rat(i == j ? 1 : 0)};
            p[i][j] = RatPoly(std::move(v));
        }
    for (int t = 0; t < m; ++t) {
        while (true) {
            int pi = -1, pj = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < m; ++j)
                    if (!p[i][j].is_zero() &&
                        (pi < 0 || p[i][j].degree() < p[pi][pj].degree())) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;
            std::swap(p[t], p[pi]);
            for (int i = 0; i < m; ++i) std::swap(p[i][t], p[i][pj]);
            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (p[i][t].is_zero()) continue;
                RatPoly qq = p[i][t].divmod(p[t][t]).first;
                for (int j = t; j < m; ++j) p[i][j] = p[i][j] - qq * p[t][j];
                if (!p[i][t].is_zero()) dirty = true;
            }
            for (int j = t + 1; j < m; ++j) {
                if (p[t][j].is_zero()) continue;
                RatPoly qq = p[t][j].divmod(p[t][t]).first;
                for (int i = t; i < m; ++i) p[i][j] = p[i][j] - qq * p[i][t];
                if (!p[t][j].is_zero()) dirty = true;
            }
            if (dirty) continue;
            bool fixed = false;
            for (int i = t + 1; i < m && !fixed; ++i)
                for (int j = t + 1; j < m && !fixed; ++j)
                    if (!p[t][t].divides(p[i][j])) {
                        for (int jj = t; jj < m; ++jj) p[t][jj] = p[t][jj] + p[i][jj];
                        fixed = true;
                    }
            if (!fixed) break;
        }
    }
    std::vector<RatPoly> out;
    for (int t = 0; t < m; ++t)
        if (p[t][t].degree() > 0) out.push_back(p[t][t].monic());
    return out;
}

}  // namespace torcor
