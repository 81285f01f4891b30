#include "torcor/oracle.hpp"

#include <complex>
#include <utility>

#include "torcor/errors.hpp"
#include "torcor/markov.hpp"
#include "torcor/polynomial.hpp"

namespace torcor::oracle {

namespace {

RatMatrix row_block(const RatMatrix& a, int first, int last) {
    RatMatrix out(last - first, a.cols());
    for (int i = first; i < last; ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i - first, j) = a.at(i, j);
    return out;
}

long pick(SplitMix64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Int mod_pos(const Int& a, long n) {
    Int r;
    Int modulus(n);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

// Integer jump vectors N*delta mod N, one per noise coset, plus the coset
// count. Requires the exponent to divide N (callers validate).
struct TorsionJumps {
    std::vector<IntVector> jumps;
    long count = 0;
};

TorsionJumps torsion_jumps(const Correspondence& p, long modulus) {
    auto reps = enumerate_cosets(p.delta(), Lattice::standard(p.dim()), Int(100000));
    TorsionJumps out;
    out.count = static_cast<long>(reps.size());
    for (const auto& rep : reps) {
        IntVector jump(rep.size());
        for (std::size_t i = 0; i < rep.size(); ++i) {
            Rat scaled = Rat(modulus) * rep[i];
            if (!is_integer(scaled)) throw Error("noise exponent does not divide the modulus");
            jump[i] = mod_pos(scaled.get_num(), modulus);
        }
        out.jumps.push_back(std::move(jump));
    }
    return out;
}

long encode_state(const IntVector& digits, long modulus) {
    long index = 0;
    for (const auto& d : digits) index = index * modulus + d.get_si();
    return index;
}

IntVector decode_state(long index, long modulus, int dim) {
    IntVector digits(dim);
    for (int i = dim - 1; i >= 0; --i) {
        digits[i] = Int(index % modulus);
        index /= modulus;
    }
    return digits;
}

Int dot_mod(const IntVector& a, const IntVector& b, long modulus) {
    Int sum(0);
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return mod_pos(sum, modulus);
}

// Image digits of an integer matrix applied to state digits, reduced mod N.
IntVector apply_mod(const RatMatrix& m, const IntVector& x, long modulus) {
    IntVector out(x.size());
    for (int i = 0; i < m.rows(); ++i) {
        Int sum(0);
        for (int j = 0; j < m.cols(); ++j) sum += m.at(i, j).get_num() * x[j];
        out[i] = mod_pos(sum, modulus);
    }
    return out;
}

// Out-edges of the partial character map n -> M^T n mod N; -1 where the
// noise subgroup kills the character.
std::vector<long> character_edges(const FiniteModel& model) {
    const TorsionJumps jumps = torsion_jumps(model.source, model.modulus);
    const RatMatrix mt = model.source.matrix().transpose();
    std::vector<long> edge(model.state_count, -1);
    for (long s = 0; s < model.state_count; ++s) {
        IntVector n = decode_state(s, model.modulus, model.dim);
        bool alive = true;
        for (const auto& jump : jumps.jumps) {
            if (dot_mod(n, jump, model.modulus) != 0) {
                alive = false;
                break;
            }
        }
        if (alive) edge[s] = encode_state(apply_mod(mt, n, model.modulus), model.modulus);
    }
    return edge;
}

bool roots_include_root_of_unity(const RatPoly& poly) {
    const int degree = poly.degree();
    std::vector<std::complex<double>> c(degree + 1);
    double lead = poly.lc().get_d();
    for (int i = 0; i <= degree; ++i) c[i] = poly.coeff(i).get_d() / lead;
    std::vector<std::complex<double>> z(degree);
    std::complex<double> speck(0.4, 0.9);
    z[0] = speck;
    for (int k = 1; k < degree; ++k) z[k] = z[k - 1] * speck;
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (int k = 0; k < degree; ++k) {
            std::complex<double> value = c[degree];
            for (int i = degree - 1; i >= 0; --i) value = value * z[k] + c[i];
            std::complex<double> denom(1, 0);
            for (int j = 0; j < degree; ++j)
                if (j != k) denom *= z[k] - z[j];
            std::complex<double> delta = value / denom;
            z[k] -= delta;
            moved += std::abs(delta);
        }
        if (moved < 1e-14) break;
    }
    for (const auto& root : z) {
        if (std::abs(std::abs(root) - 1.0) > 1e-6) continue;
        std::complex<double> power(1, 0);
        for (int d = 1; d <= 48; ++d) {
            power *= root;
            if (std::abs(power - std::complex<double>(1, 0)) < 1e-6) return true;
        }
    }
    return false;
}

}  // namespace

Lattice compose_via_annihilator(const Correspondence& p1, const Correspondence& p2) {
    if (p1.dim() != p2.dim()) throw PreconditionError("dimension mismatch");
    const int m = p1.dim();
    const RatMatrix b2 = p2.annihilator().basis();
    const RatMatrix b1 = p1.annihilator().basis();
    const RatMatrix zero_left(m, b2.cols());
    const RatMatrix zero_right(m, b1.cols());

    // Generators of {(u, v + v', w)} in Z^{3m}.
    RatMatrix embedded = vstack(
        vstack(hstack(row_block(b2, 0, m), zero_right),
               hstack(row_block(b2, m, 2 * m), row_block(b1, 0, m))),
        hstack(zero_left, row_block(b1, m, 2 * m)));

    // Coefficient vectors whose combination has middle block zero.
    Lattice coeffs = integer_kernel(row_block(embedded, m, 2 * m));
    RatMatrix cut = embedded * coeffs.basis();
    return Lattice::from_generators(
        2 * m, vstack(row_block(cut, 0, m), row_block(cut, 2 * m, 3 * m)));
}

Lattice adjoint_via_annihilator(const Correspondence& p) {
    const int m = p.dim();
    const RatMatrix b = p.annihilator().basis();
    return Lattice::from_generators(2 * m,
                                    vstack(row_block(b, m, 2 * m), row_block(b, 0, m)));
}

FiniteModel torsion_model(const Correspondence& p, long modulus) {
    const int m = p.dim();
    if (!p.matrix().is_integral())
        throw PreconditionError(
            "torsion model requires an integral matrix; model the adjoint instead");
    if (modulus < 2) throw PreconditionError("modulus must be at least 2");

    auto invariants = p.kernel_second().invariants();
    Int exponent = invariants.empty() ? Int(1) : invariants.back();
    if (Int(modulus) % exponent != 0)
        throw PreconditionError("modulus must be a multiple of the noise exponent");
    Int determinant = abs(p.matrix().det().get_num());
    if (gcd(determinant, Int(modulus)) != 1)
        throw PreconditionError("modulus must be coprime to the matrix determinant");

    long states = 1;
    for (int i = 0; i < m; ++i) {
        states *= modulus;
        if (states > 100000) throw CapError("torsion model too large");
    }

    FiniteModel model{modulus, m, states, {}, p};
    const TorsionJumps jumps = torsion_jumps(p, modulus);
    const Rat mass = Rat(1) / Rat(Int(jumps.count));
    model.rows.resize(states);
    for (long s = 0; s < states; ++s) {
        IntVector x = decode_state(s, modulus, m);
        IntVector mx = apply_mod(p.matrix(), x, modulus);
        for (const auto& jump : jumps.jumps) {
            IntVector y(mx.size());
            for (std::size_t i = 0; i < y.size(); ++i)
                y[i] = mod_pos(mx[i] + jump[i], modulus);
            model.rows[s][encode_state(y, modulus)] += mass;
        }
    }
    return model;
}

bool is_row_stochastic(const FiniteModel& model) {
    for (const auto& row : model.rows) {
        Rat sum(0);
        for (const auto& [col, mass] : row) {
            if (mass <= 0 || col < 0 || col >= model.state_count) return false;
            sum += mass;
        }
        if (sum != 1) return false;
    }
    return true;
}

bool is_doubly_stochastic(const FiniteModel& model) {
    if (!is_row_stochastic(model)) return false;
    std::vector<Rat> column_sums(model.state_count, Rat(0));
    for (const auto& row : model.rows)
        for (const auto& [col, mass] : row) column_sums[col] += mass;
    for (const auto& sum : column_sums)
        if (sum != 1) return false;
    return true;
}

long invariant_dimension(const FiniteModel& model) {
    if (model.state_count > 4096) throw CapError("transition matrix too large for rank");
    const int n = static_cast<int>(model.state_count);
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [col, mass] : model.rows[i]) a.at(i, static_cast<int>(col)) += mass;
        a.at(i, i) -= 1;
    }
    return n - rank(a);
}

long character_cycle_count(const FiniteModel& model) {
    std::vector<long> edge = character_edges(model);
    // 0 unvisited, 1 on the current walk, 2 resolved.
    std::vector<char> color(edge.size(), 0);
    long cycles = 0;
    std::vector<long> walk;
    for (long start = 0; start < static_cast<long>(edge.size()); ++start) {
        if (color[start] != 0) continue;
        walk.clear();
        long node = start;
        while (node >= 0 && color[node] == 0) {
            color[node] = 1;
            walk.push_back(node);
            node = edge[node];
        }
        if (node >= 0 && color[node] == 1) ++cycles;
        for (long visited : walk) color[visited] = 2;
    }
    return cycles;
}

bool character_action_matches(const FiniteModel& model) {
    const long n_states = model.state_count;
    const long modulus = model.modulus;
    const TorsionJumps jumps = torsion_jumps(model.source, modulus);

    std::vector<IntVector> decoded(n_states);
    std::vector<IntVector> forward(n_states);
    for (long s = 0; s < n_states; ++s) {
        decoded[s] = decode_state(s, modulus, model.dim);
        forward[s] = apply_mod(model.source.matrix(), decoded[s], modulus);
    }

    auto sample = [n_states](long cap) {
        std::vector<long> out;
        long stride = n_states <= cap ? 1 : n_states / cap;
        for (long s = 0; s < n_states; s += stride) out.push_back(s);
        return out;
    };

    for (long char_index : sample(48)) {
        const IntVector& n = decoded[char_index];

        // Subgroup of Z/N generated by the jump pairings.
        Int g(modulus);
        for (const auto& jump : jumps.jumps) g = gcd(g, dot_mod(n, jump, modulus));
        const bool alive = g == modulus || g == 0;
        const long subgroup_order = alive ? 1 : static_cast<long>(Int(modulus / g).get_si());
        if (jumps.count % subgroup_order != 0) return false;
        const long repeat = jumps.count / subgroup_order;

        // The lifted character must agree with the torus-side action.
        CharacterImage torus = apply_V_star(model.source, n);
        if (alive != torus.has_value()) return false;
        if (alive) {
            IntVector expected = apply_mod(model.source.matrix().transpose(), n, modulus);
            IntVector reduced(torus->size());
            for (std::size_t i = 0; i < torus->size(); ++i)
                reduced[i] = mod_pos((*torus)[i], modulus);
            if (expected != reduced) return false;
        }

        for (long row_index : sample(48)) {
            Int base = dot_mod(n, forward[row_index], modulus);
            std::map<Int, long> counts;
            for (const auto& [col, mass] : model.rows[row_index]) {
                (void)mass;
                counts[dot_mod(n, decoded[col], modulus)] += 1;
            }
            std::map<Int, long> expected;
            if (alive) {
                expected[base] = jumps.count;
            } else {
                for (long t = 0; t < subgroup_order; ++t)
                    expected[mod_pos(base + t * g, modulus)] = repeat;
            }
            if (counts != expected) return false;
        }
    }
    return true;
}

Correspondence random_correspondence(SplitMix64& rng, int dim) {
    for (;;) {
        RatMatrix m(dim, dim);
        long den = pick(rng, 1, 4);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m.at(i, j) = rat(pick(rng, -3, 3), den);
        if (m.det() == 0) continue;
        Lattice delta = Lattice::standard(dim).sum(Lattice::standard(dim).transformed(m));
        if (pick(rng, 0, 1) == 1) {
            long order = pick(rng, 2, 4);
            RatVector v(dim);
            for (int i = 0; i < dim; ++i) v[i] = rat(pick(rng, 0, order - 1), order);
            delta = delta.sum(Lattice::from_vectors(dim, {v}));
        }
        return Correspondence(m, delta);
    }
}

SuiteReport consistency_suite(std::uint64_t seed, long count) {
    return consistency_suite(seed, count, SuiteHooks{});
}

SuiteReport consistency_suite(std::uint64_t seed, long count, const SuiteHooks& hooks) {
    auto compose_fn = hooks.compose
                          ? hooks.compose
                          : [](const Correspondence& a, const Correspondence& b) {
                                return a.compose(b);
                            };
    auto cores_fn = hooks.cores ? hooks.cores : [](const Correspondence& c) {
        return deterministic_cores(c);
    };

    SuiteReport report;
    report.seed = seed;
    report.count = count;

    SplitMix64 seeder(seed);
    for (long index = 0; index < count; ++index) {
        const std::uint64_t case_seed = seeder.next();
        SplitMix64 rng(case_seed);
        const int m = static_cast<int>(pick(rng, 1, 3));
        Correspondence c1 = random_correspondence(rng, m);
        Correspondence c2 = random_correspondence(rng, m);

        CaseReport cr;
        cr.seed = case_seed;
        cr.params = "m=" + std::to_string(m);

        auto run = [&cr](const std::string& name, auto&& body) {
            CheckResult result;
            result.name = name;
            try {
                result.pass = body(result.detail);
            } catch (const std::exception& e) {
                result.pass = false;
                result.detail = e.what();
            }
            cr.checks.push_back(std::move(result));
        };

        run("compose_annihilator", [&](std::string& detail) {
            if (compose_via_annihilator(c1, c2) == compose_fn(c1, c2).annihilator())
                return true;
            detail = "annihilator of the product disagrees with the lattice construction";
            return false;
        });

        run("adjoint_annihilator", [&](std::string& detail) {
            if (adjoint_via_annihilator(c1) == c1.adjoint().annihilator()) return true;
            detail = "block swap disagrees with the adjoint annihilator";
            return false;
        });

        run("semigroup_identity", [&](std::string& detail) {
            const Correspondence id = Correspondence::identity(m);
            if (compose_fn(c1, id) == c1 && compose_fn(id, c1) == c1) return true;
            detail = "identity correspondence is not neutral";
            return false;
        });

        run("associativity", [&](std::string& detail) {
            if (compose_fn(compose_fn(c1, c2), c1) ==
                compose_fn(c1, compose_fn(c2, c1)))
                return true;
            detail = "composition is not associative on this triple";
            return false;
        });

        run("adjoint_antihom", [&](std::string& detail) {
            if (c1.adjoint().adjoint() != c1) {
                detail = "adjoint is not an involution";
                return false;
            }
            if (compose_fn(c1, c2).adjoint() ==
                compose_fn(c2.adjoint(), c1.adjoint()))
                return true;
            detail = "adjoint does not reverse composition";
            return false;
        });

        run("operator_composition", [&](std::string& detail) {
            Correspondence prod = compose_fn(c1, c2);
            for (int t = 0; t < 12; ++t) {
                IntVector n(m);
                for (int i = 0; i < m; ++i) n[i] = Int(pick(rng, -5, 5));
                CharacterImage inner = apply_V(c2, n);
                CharacterImage chained = inner ? apply_V(c1, *inner) : std::nullopt;
                if (apply_V(prod, n) != chained) {
                    detail = "product operator differs from the composed operators";
                    return false;
                }
            }
            return true;
        });

        run("kernel_duality", [&](std::string& detail) {
            Rat lhs(c1.kernel_first().order());
            Rat rhs = Rat(c1.kernel_second().order()) * abs(c1.matrix().det());
            if (lhs == rhs) return true;
            detail = "kernel orders break the determinant relation";
            return false;
        });

        run("character_lattice", [&](std::string& detail) {
            auto action = c1.character_action();
            Lattice standard = Lattice::standard(m);
            if (!standard.contains_lattice(action.lambda)) {
                detail = "character lattice not integral";
                return false;
            }
            if (!standard.transformed(action.q).contains_lattice(action.lambda)) {
                detail = "character lattice not inside Q Z^m";
                return false;
            }
            if (action.lambda.index_in(standard) != c1.kernel_first().order()) {
                detail = "character lattice index differs from the first kernel order";
                return false;
            }
            return true;
        });

        run("cores_stability", [&](std::string& detail) {
            auto action = c1.character_action();
            DeterministicCores cores = cores_fn(c1);
            if (!action.lambda.contains_lattice(cores.xi_plus) ||
                !action.lambda.contains_lattice(cores.xi_minus)) {
                detail = "core leaves the character lattice";
                return false;
            }
            if (cores.xi_plus != cores.xi_plus.intersect(cores.xi_plus.transformed(action.q))) {
                detail = "forward core is not stable";
                return false;
            }
            if (cores.xi_minus !=
                cores.xi_minus.intersect(cores.xi_minus.transformed(action.q.inverse()))) {
                detail = "backward core is not stable";
                return false;
            }
            if (cores.xi_intersection != cores.xi_plus.intersect(cores.xi_minus)) {
                detail = "core intersection inconsistent";
                return false;
            }
            return true;
        });

        run("adjoint_cores", [&](std::string& detail) {
            auto action = c1.character_action();
            RatMatrix qinv = action.q.inverse();
            DeterministicCores cores = cores_fn(c1);
            DeterministicCores adj = cores_fn(c1.adjoint());
            if (adj.xi_minus == cores.xi_plus.transformed(qinv) &&
                adj.xi_plus == cores.xi_minus.transformed(qinv))
                return true;
            detail = "adjoint cores are not the rescaled swap";
            return false;
        });

        run("ergodic_numeric", [&](std::string& detail) {
            bool exact = is_ergodic(c1);
            bool numeric = !roots_include_root_of_unity(char_poly(c1.matrix()));
            if (exact == numeric) return true;
            detail = exact ? "exact ergodic, numeric found a unit root"
                           : "exact nonergodic, numeric found none";
            return false;
        });

        // Torsion model checks when a forward-map form and a valid modulus exist.
        std::optional<Correspondence> base;
        if (c1.matrix().is_integral())
            base = c1;
        else if (c1.matrix().inverse().is_integral())
            base = c1.adjoint();
        std::optional<long> modulus;
        if (base) {
            auto invariants = base->kernel_second().invariants();
            Int exponent = invariants.empty() ? Int(1) : invariants.back();
            Int determinant = abs(base->matrix().det().get_num());
            if (gcd(exponent, determinant) == 1) {
                long e = exponent.get_si();
                for (long n = e < 2 ? 2 * e : e; n <= 16 * e; n += e) {
                    if (gcd(Int(n), determinant) != 1) continue;
                    long states = 1;
                    bool fits = true;
                    for (int i = 0; i < m; ++i) {
                        states *= n;
                        if (states > 4096) fits = false;
                    }
                    if (fits) {
                        modulus = n;
                        break;
                    }
                }
            }
        }
        if (modulus) {
            FiniteModel model = torsion_model(*base, *modulus);
            run("torsion_stochastic", [&](std::string& detail) {
                if (is_doubly_stochastic(model)) return true;
                detail = "transition matrix is not doubly stochastic";
                return false;
            });
            run("torsion_characters", [&](std::string& detail) {
                if (character_action_matches(model)) return true;
                detail = "finite character action disagrees with the torus action";
                return false;
            });
            if (model.state_count <= 64) {
                run("torsion_spectrum", [&](std::string& detail) {
                    if (invariant_dimension(model) != character_cycle_count(model)) {
                        detail = "eigenvalue-1 dimension differs from surviving cycles";
                        return false;
                    }
                    bool noise_free = base->kernel_second().is_trivial();
                    if (noise_free && invariant_dimension(model) == 1 && !is_ergodic(*base)) {
                        detail = "ergodic finite model over a nonergodic noise-free map";
                        return false;
                    }
                    return true;
                });
            }
        }

        cr.pass = true;
        for (const auto& check : cr.checks) cr.pass = cr.pass && check.pass;
        if (!cr.pass) ++report.failures;
        report.cases.push_back(std::move(cr));
    }
    report.pass = report.failures == 0;
    return report;
}

}  // namespace torcor::oracle
