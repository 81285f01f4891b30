// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits 0 only if every criterion passes. All tolerances
// and budgets are pinned here as constants.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torcor/classify.hpp"
#include "torcor/correspondence.hpp"
#include "torcor/markov.hpp"
#include "torcor/oracle.hpp"
#include "torcor/polynomial.hpp"
#include "torcor/prng.hpp"

namespace {

using namespace torcor;

Rat rat(long num, long den = 1) { return Rat(Int(num), Int(den)); }

RatMatrix rows(const std::vector<std::vector<long>>& entries) {
    std::vector<RatVector> out;
    for (const auto& row : entries) {
        RatVector r;
        for (long v : row) r.push_back(rat(v));
        out.push_back(std::move(r));
    }
    return RatMatrix::from_rows(out);
}

IntVector ints(const std::vector<long>& v) {
    IntVector out;
    for (long x : v) out.push_back(Int(x));
    return out;
}

// The running example throughout: {(u, v) : k u = l v} as a relation on T^1.
Correspondence scalar_relation(long k, long l) {
    return Correspondence::from_relation(rows({{k}}), rows({{l}}));
}

struct Gate {
    int failed = 0;

    void criterion(int index, const std::string& label,
                   const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::printf("%s  %d  %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", index,
                    label.c_str(), static_cast<long long>(ms),
                    detail.empty() ? "" : "  -- ", detail.c_str());
        if (!ok) ++failed;
    }
};

bool expect(bool cond, const char* what, std::string& detail) {
    if (!cond && detail.empty()) detail = what;
    return cond;
}

// ---- criterion 1: the {3u=2v} family ---------------------------------------

bool run_scalar_family(std::string& detail) {
    const auto p = scalar_relation(3, 2);
    const auto report = classify(p);
    if (!expect(report.connected, "3u=2v not connected", detail)) return false;
    if (!expect(report.ergodic, "3u=2v not ergodic", detail)) return false;
    if (!expect(report.nondeterminism.total, "3u=2v not totally nondeterministic", detail))
        return false;
    if (!expect(report.spectrum.v == SpectrumCase::PointZeroOnly &&
                    report.spectrum.v_star == SpectrumCase::PointZeroOnly,
                "3u=2v spectrum is not {0}", detail))
        return false;
    if (!expect(report.kernel_first_order == 3 && report.kernel_second_order == 2,
                "3u=2v kernel orders differ from 3 and 2", detail))
        return false;

    const auto scaled = scalar_relation(6, 4);
    if (!expect(!scaled.is_connected(), "6u=4v unexpectedly connected", detail)) return false;
    const auto common = scaled.kernel_first().intersected(scaled.kernel_second());
    if (!expect(common.order() == 2, "6u=4v kernel intersection order is not 2", detail))
        return false;
    return true;
}

// ---- criterion 2: annihilators and the order-5 factor ----------------------

bool run_annihilator_factor(std::string& detail) {
    const auto p = scalar_relation(3, 2);
    const auto expected = Lattice::from_vectors(2, {{rat(-3), rat(2)}});
    if (!expect(p.annihilator() == expected, "annihilator of 3u=2v is not Z(-3,2)", detail))
        return false;

    const auto h5 = FiniteSubgroup::from_carrier(Lattice::from_vectors(1, {{rat(1, 5)}}));
    const auto factored_ann = Lattice::from_vectors(2, {{rat(-15), rat(10)}});
    if (!expect(p.factor_annihilator(h5) == factored_ann,
                "factor annihilator is not Z(-15,10)", detail))
        return false;
    if (!expect(p.factor_by(h5) == p, "factoring by the order-5 subgroup changed 3u=2v",
                detail))
        return false;
    return true;
}

// ---- criterion 3: Fibonacci graph factored by a half point -----------------

bool run_fibonacci_factor(std::string& detail) {
    const auto fib = Correspondence::connected_hull(rows({{1, 1}, {1, 0}}));
    const auto h = FiniteSubgroup::from_carrier(
        Lattice::standard(2).sum(Lattice::from_vectors(2, {{rat(1, 2), rat(0)}})));
    if (!expect(h.order() == 2, "half-point subgroup order is not 2", detail)) return false;

    const auto q = fib.factor_by(h);
    if (!expect(q.classify_morphism() == MorphismType::ProperPolymorphism,
                "factored Fibonacci graph is not a proper polymorphism", detail))
        return false;
    const auto [a, b] = q.to_relation();
    if (!expect(a == rows({{1, 2}, {1, 0}}) && b == RatMatrix::diagonal({rat(1), rat(2)}),
                "factored relation pair differs from ([[1,2],[1,0]], diag(1,2))", detail))
        return false;

    const auto closure = minimal_doubly_invariant(fib.matrix(), h);
    if (!expect(closure.order() == 4, "doubly invariant closure order is not 4", detail))
        return false;
    if (!expect(fib.factor_by(closure).classify_morphism() == MorphismType::Automorphism,
                "factoring by the closure is not an automorphism", detail))
        return false;
    return true;
}

// ---- criterion 4: seeded consistency suite ----------------------------------

constexpr std::uint64_t kSuiteSeed = 1;
constexpr long kSuiteCount = 200;

bool run_suite(std::string& detail) {
    const auto report = oracle::consistency_suite(kSuiteSeed, kSuiteCount);
    if (!report.pass) {
        for (const auto& c : report.cases) {
            if (c.pass) continue;
            for (const auto& chk : c.checks) {
                if (!chk.pass) {
                    detail = "case seed " + std::to_string(c.seed) + ": " + chk.name + ": " +
                             chk.detail;
                    return false;
                }
            }
        }
        detail = "suite failed";
        return false;
    }
    const std::vector<std::string> required = {
        "semigroup_identity", "associativity",    "adjoint_antihom", "compose_annihilator",
        "adjoint_annihilator", "kernel_duality",  "character_lattice"};
    for (const auto& name : required) {
        bool seen = false;
        for (const auto& chk : report.cases.front().checks) seen |= chk.name == name;
        if (!expect(seen, "suite is missing a required check", detail)) {
            detail += ": " + name;
            return false;
        }
    }
    return expect(report.cases.size() == static_cast<std::size_t>(kSuiteCount),
                  "suite case count is off", detail);
}

// ---- criterion 5: truncated operator identities -----------------------------

constexpr int kOperatorCases = 50;
constexpr long kOperatorBoxMax = 6;

bool structurally_sound(const TruncatedOperator& op, std::string& detail) {
    const long size = static_cast<long>(op.characters.size());
    std::size_t escape_count = 0;
    for (long j = 0; j < size; ++j) {
        const long img = op.image[j];
        if (img == TruncatedOperator::kEscape) {
            ++escape_count;
            bool listed = false;
            for (const auto& [col, target] : op.escapes) listed |= col == j;
            if (!expect(listed, "escaping column missing from the escape list", detail))
                return false;
            continue;
        }
        if (!expect(img == TruncatedOperator::kZero || (img >= 0 && img < size),
                    "column image out of range", detail))
            return false;
    }
    return expect(escape_count == op.escapes.size(), "stray escape entries", detail);
}

bool run_operator_identities(std::string& detail) {
    SplitMix64 rng(2026);
    for (int k = 0; k < kOperatorCases; ++k) {
        const int m = 1 + static_cast<int>(rng.next_below(3));
        const auto c1 = oracle::random_correspondence(rng, m);
        const auto c2 = oracle::random_correspondence(rng, m);
        const long box = 1 + static_cast<long>(rng.next_below(kOperatorBoxMax));

        const auto op1 = operator_matrix(c1, box);
        const auto op2 = operator_matrix(c2, box);
        const auto adj = operator_matrix(c1.adjoint(), box);
        const auto both = operator_matrix(c1.compose(c2), box);
        if (!structurally_sound(op1, detail) || !structurally_sound(op2, detail) ||
            !structurally_sound(adj, detail) || !structurally_sound(both, detail))
            return false;

        const long size = static_cast<long>(op1.characters.size());
        // Transpose pairing on entries whose source and image both sit in the
        // box: entry (i, j) of V exists iff entry (j, i) of the adjoint does.
        for (long j = 0; j < size; ++j) {
            const long i = op1.image[j];
            if (i >= 0 &&
                !expect(adj.image[i] == j, "adjoint operator is not the transpose", detail))
                return false;
            const long i_adj = adj.image[j];
            if (i_adj >= 0 &&
                !expect(op1.image[i_adj] == j, "transpose has an extra entry", detail))
                return false;
        }

        // Composition: columns whose two-step chain stays inside the box must
        // agree with the one-shot operator of the composed correspondence.
        for (long j = 0; j < size; ++j) {
            const long mid = op2.image[j];
            if (mid == TruncatedOperator::kEscape) continue;
            long want;
            if (mid == TruncatedOperator::kZero) {
                want = TruncatedOperator::kZero;
            } else {
                const long top = op1.image[mid];
                if (top == TruncatedOperator::kEscape) continue;
                want = top;
            }
            if (!expect(both.image[j] == want, "composed operator differs from the product",
                        detail)) {
                detail += " (case " + std::to_string(k) + ")";
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 6: spectrum exemplars ----------------------------------------

constexpr double kEigenResidualTol = 1e-8;
constexpr long kEigenTerms = 30;

bool run_spectrum_exemplars(std::string& detail) {
    const auto tag = [](const Correspondence& p) { return spectrum_report(p); };

    const auto circle = tag(scalar_relation(3, 2));
    if (!expect(circle.v == SpectrumCase::PointZeroOnly &&
                    circle.v_star == SpectrumCase::PointZeroOnly,
                "3u=2v spectrum tag", detail))
        return false;

    const auto fib = tag(Correspondence::connected_hull(rows({{1, 1}, {1, 0}})));
    if (!expect(fib.v == SpectrumCase::FullUnitCircle &&
                    fib.v_star == SpectrumCase::FullUnitCircle,
                "Fibonacci spectrum tag", detail))
        return false;

    const auto doubling_map = Correspondence::connected_hull(rows({{2}}));
    const auto doubling = tag(doubling_map);
    if (!expect(doubling.v == SpectrumCase::FullUnitDisk &&
                    doubling.v_star == SpectrumCase::FullUnitDisk,
                "doubling spectrum tag", detail))
        return false;

    // Fibonacci block plus an ergodic noisy 3/2 block: deterministic core is
    // proper and nontrivial, so the spectrum sits within the circle union 0.
    const auto block = Correspondence(
        RatMatrix::from_rows({{rat(1), rat(1), rat(0)},
                              {rat(1), rat(0), rat(0)},
                              {rat(0), rat(0), rat(3, 2)}}),
        Lattice::standard(3).sum(Lattice::from_vectors(3, {{rat(0), rat(0), rat(1, 2)}})));
    const auto mixed = tag(block);
    if (!expect(mixed.v == SpectrumCase::WithinCircleUnionZero &&
                    mixed.v_star == SpectrumCase::WithinCircleUnionZero,
                "block diagonal spectrum tag", detail))
        return false;

    const auto check = verify_eigenvector(doubling_map, ints({2}), rat(1, 2), rat(0),
                                          kEigenTerms);
    if (!expect(check.ratio <= kEigenResidualTol, "eigenvector residual too large", detail)) {
        detail += " (ratio " + std::to_string(check.ratio) + ")";
        return false;
    }
    return true;
}

// ---- criterion 7: ergodicity, exact vs numeric -------------------------------

constexpr int kErgodicCases = 100;
constexpr double kNumericTol = 1e-9;
constexpr int kRootIterations = 400;

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& monic) {
    const int deg = static_cast<int>(monic.size()) - 1;
    const auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (int i = deg; i >= 0; --i) acc = acc * z + monic[static_cast<std::size_t>(i)];
        return acc;
    };
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(deg));
    std::complex<double> w(0.4, 0.9);
    std::complex<double> seed = w;
    for (auto& r : roots) {
        r = seed;
        seed *= w;
    }
    for (int it = 0; it < kRootIterations; ++it) {
        for (std::size_t i = 0; i < roots.size(); ++i) {
            std::complex<double> denom = 1.0;
            for (std::size_t j = 0; j < roots.size(); ++j)
                if (j != i) denom *= roots[i] - roots[j];
            roots[i] -= eval(roots[i]) / denom;
        }
    }
    return roots;
}

// Numeric screen: an eigenvalue within kNumericTol of a d-th root of unity,
// d with phi(d) <= 3, or a candidate root of unity where the characteristic
// polynomial nearly vanishes. The second test keeps multiple roots, whose
// computed eigenvalues are conditioning-limited, from slipping past the
// first.
bool numeric_nonergodic(const RatPoly& chi) {
    std::vector<double> monic(static_cast<std::size_t>(chi.degree()) + 1);
    for (int i = 0; i <= chi.degree(); ++i) monic[static_cast<std::size_t>(i)] = chi.coeff(i).get_d();
    const auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (int i = chi.degree(); i >= 0; --i)
            acc = acc * z + monic[static_cast<std::size_t>(i)];
        return acc;
    };
    static const int kOrders[] = {1, 2, 3, 4, 6};
    for (const auto& root : durand_kerner(monic))
        for (int d : kOrders)
            if (std::abs(std::pow(root, d) - 1.0) < kNumericTol) return true;
    const double pi = std::acos(-1.0);
    for (int d : kOrders)
        for (int j = 0; j < d; ++j)
            if (std::abs(eval(std::polar(1.0, 2.0 * pi * j / d))) < kNumericTol) return true;
    return false;
}

bool run_ergodicity_crosscheck(std::string& detail) {
    SplitMix64 rng(7);
    int done = 0;
    while (done < kErgodicCases) {
        std::vector<std::vector<long>> entries(3, std::vector<long>(3));
        for (auto& row : entries)
            for (auto& v : row) v = static_cast<long>(rng.next_below(9)) - 4;
        const auto m = rows(entries);
        if (m.det() == 0) continue;
        ++done;
        const bool exact = !is_ergodic(Correspondence::connected_hull(m));
        const bool numeric = numeric_nonergodic(char_poly(m));
        if (!expect(exact == numeric, "exact and numeric ergodicity disagree", detail)) {
            detail += " (case " + std::to_string(done) + ")";
            return false;
        }
    }
    const auto rotation = Correspondence::connected_hull(rows({{0, -1}, {1, 0}}));
    if (!expect(!is_ergodic(rotation), "quarter rotation reported ergodic", detail))
        return false;
    const auto fib = Correspondence::connected_hull(rows({{1, 1}, {1, 0}}));
    return expect(is_ergodic(fib), "Fibonacci graph reported nonergodic", detail);
}

// ---- criterion 8: Markov process checks --------------------------------------

constexpr int kStepPowers = 4;
constexpr int kGrowthPowers = 5;
constexpr long kDraws = 10000;
// Two equally likely atoms: sigma = sqrt(kDraws * 1/2 * 1/2) = 50.
constexpr long kThreeSigma = 150;

struct LexLess {
    bool operator()(const RatVector& a, const RatVector& b) const {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            const int c = cmp(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return a.size() < b.size();
    }
};

bool run_markov_checks(std::string& detail) {
    const auto p = scalar_relation(3, 2);
    const RatVector start = {rat(1, 3)};

    for (int n = 1; n <= kStepPowers; ++n) {
        // Brute force: convolve the one-step law n times.
        std::map<RatVector, Rat, LexLess> dist;
        dist[start] = rat(1);
        for (int step = 0; step < n; ++step) {
            std::map<RatVector, Rat, LexLess> next;
            for (const auto& [x, mass] : dist) {
                const auto law = step_distribution(p, x);
                for (const auto& atom : law.atoms) next[atom] += mass * law.mass;
            }
            dist = std::move(next);
        }

        const auto power = p.power(n);
        const auto one_shot = step_distribution(power, start);
        if (!expect(one_shot.atoms.size() == dist.size(), "atom counts differ", detail)) {
            detail += " (n = " + std::to_string(n) + ")";
            return false;
        }
        if (!expect(Rat(Int(1)) ==
                        one_shot.mass * Rat(Int(static_cast<long>(one_shot.atoms.size()))),
                    "one-shot law is not uniform", detail))
            return false;
        if (!expect(power.kernel_second().order() ==
                        Int(static_cast<long>(one_shot.atoms.size())),
                    "atom count differs from the second kernel order", detail))
            return false;
        for (const auto& atom : one_shot.atoms) {
            const auto it = dist.find(atom);
            if (!expect(it != dist.end() && it->second == one_shot.mass,
                        "convolved law differs from the one-shot law", detail)) {
                detail += " (n = " + std::to_string(n) + ")";
                return false;
            }
        }
    }

    // One-step frequencies: the law from 1/3 is uniform on {0, 1/2}.
    long zero_hits = 0;
    for (long k = 0; k < kDraws; ++k) {
        const auto path = sample_path(p, start, 1, 1000 + static_cast<std::uint64_t>(k));
        if (path.at(1).at(0) == 0) ++zero_hits;
    }
    if (std::llabs(zero_hits - kDraws / 2) > kThreeSigma) {
        detail = "one-step frequency " + std::to_string(zero_hits) + "/" +
                 std::to_string(kDraws) + " outside 3 sigma";
        return false;
    }

    const auto growth = kernel_growth(p, kGrowthPowers);
    Int expected = 1;
    for (const auto& row : growth) {
        expected *= 2;
        if (!expect(row.second_order == expected, "second kernel growth is not 2^n", detail)) {
            detail += " (n = " + std::to_string(row.n) + ")";
            return false;
        }
    }
    return expect(growth.size() == kGrowthPowers, "kernel growth row count", detail);
}

// ---- criterion 9: mutation sensitivity ---------------------------------------

constexpr std::uint64_t kMutationSeed = 1;
constexpr long kMutationCount = 40;

bool check_flagged(const oracle::SuiteReport& report, const std::string& name) {
    for (const auto& c : report.cases)
        for (const auto& chk : c.checks)
            if (chk.name == name && !chk.pass) return true;
    return false;
}

bool run_mutation_sensitivity(std::string& detail) {
    oracle::SuiteHooks bad_compose;
    bad_compose.compose = [](const Correspondence& a, const Correspondence& b) {
        // Wrong offset law: intersect instead of a.delta + M_a b.delta.
        return Correspondence(a.matrix() * b.matrix(),
                              a.delta().intersect(b.delta().transformed(a.matrix())));
    };
    const auto broken = oracle::consistency_suite(kMutationSeed, kMutationCount, bad_compose);
    if (!expect(!broken.pass, "corrupted composition law went unnoticed", detail)) return false;
    if (!expect(check_flagged(broken, "compose_annihilator"),
                "composition corruption not flagged by the annihilator oracle", detail))
        return false;

    oracle::SuiteHooks bad_cores;
    bad_cores.cores = [](const Correspondence& p) {
        // Core iteration seeded from the whole character lattice instead of
        // the integral-core projection; stalls short of the stable core.
        const auto [q, lambda] = p.character_action();
        const auto q_inv = q.inverse();
        const auto shrink = [&](const RatMatrix& step) {
            Lattice core = lambda;
            for (int i = 0; i < 40; ++i) {
                Lattice next = core.intersect(core.transformed(step));
                if (next == core) return core;
                core = next;
            }
            return core;
        };
        DeterministicCores cores;
        cores.xi_plus = shrink(q);
        cores.xi_minus = shrink(q_inv);
        cores.xi_intersection = cores.xi_plus.intersect(cores.xi_minus);
        return cores;
    };
    const auto drifting = oracle::consistency_suite(kMutationSeed, kMutationCount, bad_cores);
    if (!expect(!drifting.pass, "corrupted core projection went unnoticed", detail))
        return false;
    if (!expect(check_flagged(drifting, "cores_stability"),
                "core corruption not flagged by the stability check", detail))
        return false;

    const auto clean = oracle::consistency_suite(kMutationSeed, kMutationCount);
    return expect(clean.pass, "clean suite failed at the mutation seed", detail);
}

}  // namespace

int main() {
    Gate gate;
    gate.criterion(1, "scalar relation family {ku=lv}", run_scalar_family);
    gate.criterion(2, "annihilators and the order-5 factor", run_annihilator_factor);
    gate.criterion(3, "Fibonacci graph factored by a half point", run_fibonacci_factor);
    gate.criterion(4, "seeded consistency suite (200 cases)", run_suite);
    gate.criterion(5, "truncated operator identities (50 cases)", run_operator_identities);
    gate.criterion(6, "spectrum classification exemplars", run_spectrum_exemplars);
    gate.criterion(7, "ergodicity, exact vs numeric (100 cases)", run_ergodicity_crosscheck);
    gate.criterion(8, "Markov step laws, sampling, kernel growth", run_markov_checks);
    gate.criterion(9, "mutation sensitivity of the suite", run_mutation_sensitivity);
    if (gate.failed == 0) {
        std::puts("acceptance: all criteria passed");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", gate.failed);
    return 1;
}
