#include "doctest.h"
#include "test_support.hpp"
#include "torcor/correspondence.hpp"

using namespace torcor;

namespace {

Lattice line(const Rat& g) { return Lattice::from_vectors(1, {{g}}); }

// The correspondence {(u, v) : 3u = 2v} on the circle.
Correspondence three_two() {
    return Correspondence::from_relation(RatMatrix{{rat(3)}}, RatMatrix{{rat(2)}});
}

const RatMatrix kFib{{rat(1), rat(1)}, {rat(1), rat(0)}};

}  // namespace

TEST_CASE("relation constructor matches the direct presentation") {
    Correspondence p = three_two();
    CHECK(p == Correspondence(RatMatrix{{rat(3, 2)}}, line(rat(1, 2))));
    CHECK(p.matrix().at(0, 0) == rat(3, 2));
    CHECK(p.delta() == line(rat(1, 2)));

    CHECK_THROWS_AS(Correspondence::from_relation(RatMatrix{{rat(1, 2)}}, RatMatrix{{rat(1)}}),
                    PreconditionError);
    CHECK_THROWS_AS(Correspondence::from_relation(RatMatrix{{rat(0)}}, RatMatrix{{rat(1)}}),
                    PreconditionError);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(Correspondence(RatMatrix{{rat(0)}}, Lattice::standard(1)),
                    PreconditionError);
    // Delta must contain M Z^m.
    CHECK_THROWS_AS(Correspondence(RatMatrix{{rat(3, 2)}}, Lattice::standard(1)),
                    PreconditionError);
    // Delta must contain Z^m.
    CHECK_THROWS_AS(Correspondence(RatMatrix{{rat(2)}}, line(rat(2))), PreconditionError);
}

TEST_CASE("kernel groups and the order law") {
    Correspondence p = three_two();
    CHECK(p.kernel_first().order() == 3);
    CHECK(p.kernel_second().order() == 2);
    CHECK(p.kernel_first().carrier() == line(rat(1, 3)));

    testing::TestRng rng(41);
    for (int t = 0; t < 20; ++t) {
        Correspondence c = rng.correspondence(static_cast<int>(rng.pick(1, 3)));
        Rat det = c.matrix().det();
        Rat abs_det = det < 0 ? Rat(-det) : det;
        // |K1| = |K2| * |det M|
        CHECK(Rat(c.kernel_first().order()) == Rat(c.kernel_second().order()) * abs_det);
    }
}

TEST_CASE("composition squares the doubling relation") {
    Correspondence p = three_two();
    Correspondence sq = p.compose(p);
    CHECK(sq == Correspondence(RatMatrix{{rat(9, 4)}}, line(rat(1, 4))));
    CHECK(sq == p.power(2));
    CHECK(p.power(1) == p);
    CHECK_THROWS_AS(p.power(0), PreconditionError);
}

TEST_CASE("adjoint involution and contravariance") {
    Correspondence p = three_two();
    CHECK(p.adjoint() == Correspondence(RatMatrix{{rat(2, 3)}}, line(rat(1, 3))));
    CHECK(p.adjoint().adjoint() == p);

    testing::TestRng rng(43);
    for (int t = 0; t < 15; ++t) {
        int m = static_cast<int>(rng.pick(1, 3));
        Correspondence a = rng.correspondence(m);
        Correspondence b = rng.correspondence(m);
        CHECK(a.compose(b).adjoint() == b.adjoint().compose(a.adjoint()));
        Correspondence id = Correspondence::identity(m);
        CHECK(a.compose(id) == a);
        CHECK(id.compose(a) == a);
        auto [k1, k2] = a.kernel_groups();
        CHECK(a.adjoint().kernel_first() == k2);
        CHECK(a.adjoint().kernel_second() == k1);
    }
}

TEST_CASE("connectedness") {
    CHECK(three_two().is_connected());
    Correspondence coarse =
        Correspondence::from_relation(RatMatrix{{rat(6)}}, RatMatrix{{rat(4)}});
    CHECK(!coarse.is_connected());
    CHECK(coarse.matrix().at(0, 0) == rat(3, 2));
    CHECK(Correspondence::connected_hull(coarse.matrix()) == three_two());
    CHECK(coarse.kernel_first().intersected(coarse.kernel_second()).order() == 2);
}

TEST_CASE("morphism classification") {
    CHECK(three_two().classify_morphism() == MorphismType::ProperPolymorphism);
    Correspondence doubling(RatMatrix{{rat(2)}}, Lattice::standard(1));
    CHECK(doubling.classify_morphism() == MorphismType::ForwardMap);
    CHECK(doubling.adjoint().classify_morphism() == MorphismType::BackwardMap);
    CHECK(Correspondence(kFib, Lattice::standard(2)).classify_morphism() ==
          MorphismType::Automorphism);
}

TEST_CASE("relation round trip") {
    Correspondence p = three_two();
    auto [a, b] = p.to_relation();
    CHECK(a == RatMatrix{{rat(3)}});
    CHECK(b == RatMatrix{{rat(2)}});

    testing::TestRng rng(47);
    for (int t = 0; t < 20; ++t) {
        Correspondence c = rng.correspondence(static_cast<int>(rng.pick(1, 3)));
        auto [ra, rb] = c.to_relation();
        CHECK(ra.is_integral());
        CHECK(rb.is_integral());
        CHECK(Correspondence::from_relation(ra, rb) == c);
    }
}

TEST_CASE("annihilator of the basic example") {
    Correspondence p = three_two();
    Lattice ann = p.annihilator();
    CHECK(ann == Lattice::from_vectors(2, {{rat(-3), rat(2)}}));
    CHECK(Correspondence::from_annihilator(ann) == p);
}

TEST_CASE("annihilator round trips and pairing") {
    testing::TestRng rng(53);
    for (int t = 0; t < 20; ++t) {
        int m = static_cast<int>(rng.pick(1, 3));
        Correspondence c = rng.correspondence(m);
        Lattice ann = c.annihilator();
        CHECK(ann.rank() == m);
        CHECK(ann.basis().is_integral());
        CHECK(Correspondence::from_annihilator(ann) == c);

        // Every annihilator element pairs integrally with every graph point
        // (x, Mx + d) sampled on kernel representatives.
        auto deltas = enumerate_cosets(c.delta(), Lattice::standard(m), Int(64));
        for (int j = 0; j < ann.rank(); ++j) {
            RatVector n1(m), n2(m);
            for (int i = 0; i < m; ++i) {
                n1[i] = ann.basis().at(i, j);
                n2[i] = ann.basis().at(m + i, j);
            }
            for (const auto& d : deltas) {
                Rat pairing(0);
                for (int i = 0; i < m; ++i) pairing += n2[i] * d[i];
                CHECK(is_integer(pairing));
            }
            // n1 + M^T n2 must annihilate every x, i.e. vanish... on Z^m it
            // must be integral; on the connected component it must vanish.
            RatVector w = c.matrix().transpose() * n2;
            for (int i = 0; i < m; ++i) w[i] += n1[i];
            CHECK(is_zero(w));
        }
    }
}

TEST_CASE("annihilator saturation index counts connected components") {
    Correspondence coarse =
        Correspondence::from_relation(RatMatrix{{rat(6)}}, RatMatrix{{rat(4)}});
    Lattice ann = coarse.annihilator();
    Lattice saturated = Lattice::standard(2).intersect_subspace(ann.basis());
    CHECK(ann.index_in(saturated) == 2);

    Lattice conn_ann = three_two().annihilator();
    Lattice conn_sat = Lattice::standard(2).intersect_subspace(conn_ann.basis());
    CHECK(conn_ann.index_in(conn_sat) == 1);
}

TEST_CASE("character action") {
    auto [q, lambda] = three_two().character_action();
    CHECK(q == RatMatrix{{rat(3, 2)}});
    CHECK(lambda == line(rat(3)));

    testing::TestRng rng(59);
    for (int t = 0; t < 20; ++t) {
        int m = static_cast<int>(rng.pick(1, 3));
        Correspondence c = rng.correspondence(m);
        auto [cq, cl] = c.character_action();
        CHECK(cq == c.matrix().transpose());
        CHECK(Lattice::standard(m).contains_lattice(cl));
        CHECK(Lattice::standard(m).transformed(cq).contains_lattice(cl));
        // Lambda is the dual of the first-projection kernel carrier.
        CHECK(cl == c.kernel_first().carrier().dual());
    }
}

TEST_CASE("factoring by a subgroup of the circle example") {
    Correspondence p = three_two();
    FiniteSubgroup fifths = FiniteSubgroup::from_carrier(line(rat(1, 5)));
    CHECK(fifths.order() == 5);
    CHECK(p.factor_by(fifths) == p);

    CHECK(p.factor_annihilator(fifths) == Lattice::from_vectors(2, {{rat(-15), rat(10)}}));
    // Same lattice via the direct description: annihilator pairs supported on
    // characters trivial on the subgroup.
    Lattice direct = p.annihilator().intersect(
        Lattice::from_generators(2, RatMatrix::diagonal({rat(5), rat(5)})));
    CHECK(p.factor_annihilator(fifths) == direct);
}

TEST_CASE("factoring the hyperbolic automorphism by a half-point") {
    Correspondence fib(kFib, Lattice::standard(2));
    FiniteSubgroup h = FiniteSubgroup::from_carrier(
        Lattice::from_vectors(2, {{rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1, 2), rat(0)}}));
    CHECK(h.order() == 2);
    Correspondence q = fib.factor_by(h);
    CHECK(q.classify_morphism() == MorphismType::ProperPolymorphism);
    auto [a, b] = q.to_relation();
    CHECK(a == RatMatrix{{rat(1), rat(2)}, {rat(1), rat(0)}});
    CHECK(b == RatMatrix{{rat(1), rat(0)}, {rat(0), rat(2)}});
}

TEST_CASE("factor annihilator via subgroup-trivial characters") {
    testing::TestRng rng(61);
    for (int t = 0; t < 15; ++t) {
        int m = static_cast<int>(rng.pick(1, 2));
        Correspondence c = rng.correspondence(m);
        RatVector v(m, Rat(0));
        long d = rng.pick(2, 4);
        for (int i = 0; i < m; ++i) v[i] = rat(rng.pick(0, d - 1), d);
        FiniteSubgroup h = FiniteSubgroup::from_carrier(
            Lattice::standard(m).sum(Lattice::from_vectors(m, {v})));
        Lattice dual_pairs = h.carrier().dual();
        RatMatrix embed(2 * m, 2 * dual_pairs.rank());
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < dual_pairs.rank(); ++j) {
                embed.at(i, j) = dual_pairs.basis().at(i, j);
                embed.at(m + i, dual_pairs.rank() + j) = dual_pairs.basis().at(i, j);
            }
        Lattice direct = c.annihilator().intersect(Lattice::from_generators(2 * m, embed));
        CHECK(c.factor_annihilator(h) == direct);
    }
}

TEST_CASE("finite subgroups") {
    FiniteSubgroup h = FiniteSubgroup::from_carrier(
        Lattice::from_generators(2, RatMatrix{{rat(1, 2), rat(0)}, {rat(0), rat(1, 3)}}));
    CHECK(h.order() == 6);
    auto inv = h.invariants();
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 1);
    CHECK(inv[1] == 6);
    auto elems = h.elements(Int(100));
    CHECK(elems.size() == 6);
    CHECK(elems[0] == RatVector{rat(0), rat(0)});
    for (const auto& e : elems) CHECK(h.carrier().contains(e));
    CHECK(FiniteSubgroup::trivial(2).is_trivial());
    CHECK_THROWS_AS(FiniteSubgroup::from_carrier(Lattice::from_vectors(1, {{rat(2)}})),
                    PreconditionError);
}
