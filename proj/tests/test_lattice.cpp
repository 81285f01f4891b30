#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"
#include "torcor/lattice.hpp"

using namespace torcor;

namespace {

Lattice line(const Rat& g) { return Lattice::from_vectors(1, {{g}}); }

}  // namespace

TEST_CASE("canonical form absorbs redundant generators") {
    Lattice l = Lattice::from_vectors(1, {{rat(3, 2)}, {rat(1, 2)}});
    CHECK(l == line(rat(1, 2)));
    CHECK(l.rank() == 1);
    CHECK(l.basis().at(0, 0) == rat(1, 2));

    Lattice z = Lattice::from_vectors(2, {{rat(1), rat(0)}, {rat(0), rat(0)}});
    CHECK(z.rank() == 1);
}

TEST_CASE("intersection agrees with brute-force membership scan") {
    Lattice a = Lattice::standard(1);
    Lattice b = line(rat(3, 2));
    Lattice cut = a.intersect(b);
    CHECK(cut == line(rat(3)));
    for (long k = -40; k <= 40; ++k) {
        RatVector v{rat(k, 2)};
        CHECK(cut.contains(v) == (a.contains(v) && b.contains(v)));
    }
}

TEST_CASE("sum and intersection in rank-deficient cases") {
    Lattice a = Lattice::from_vectors(2, {{rat(2), rat(0)}});
    Lattice b = Lattice::from_vectors(2, {{rat(3), rat(0)}});
    CHECK(a.intersect(b) == Lattice::from_vectors(2, {{rat(6), rat(0)}}));
    CHECK(a.sum(b) == Lattice::from_vectors(2, {{rat(1), rat(0)}}));

    Lattice c = Lattice::from_vectors(2, {{rat(0), rat(1)}});
    CHECK(a.intersect(c).rank() == 0);
    CHECK(a.sum(c).rank() == 2);
}

TEST_CASE("dual lattices") {
    CHECK(line(rat(1, 2)).dual() == line(rat(2)));
    CHECK(Lattice::standard(3).dual() == Lattice::standard(3));
    CHECK_THROWS_WITH_AS(Lattice::from_vectors(2, {{rat(1), rat(0)}}).dual(),
                         "dual undefined for rank-deficient lattice", PreconditionError);

    testing::TestRng rng(5);
    for (int t = 0; t < 20; ++t) {
        int m = static_cast<int>(rng.pick(1, 3));
        Lattice l = rng.full_rank_lattice(m, 3, 3);
        CHECK(l.dual().dual() == l);
    }
}

TEST_CASE("duality swaps sum and intersection") {
    testing::TestRng rng(7);
    for (int t = 0; t < 20; ++t) {
        int m = static_cast<int>(rng.pick(1, 3));
        Lattice a = rng.full_rank_lattice(m, 3, 3);
        Lattice b = rng.full_rank_lattice(m, 3, 3);
        CHECK(a.intersect(b) == a.dual().sum(b.dual()).dual());
    }
}

TEST_CASE("index and quotient invariants") {
    CHECK(Lattice::standard(1).index_in(line(rat(1, 2))) == 2);
    CHECK(line(rat(3)).index_in(Lattice::standard(1)) == 3);
    CHECK_THROWS_AS(line(rat(1, 2)).index_in(Lattice::standard(1)), PreconditionError);

    Lattice fine = Lattice::from_generators(
        2, RatMatrix{{rat(1, 6), rat(0)}, {rat(0), rat(1, 4)}});
    auto divisors = Lattice::standard(2).quotient_invariants_in(fine);
    REQUIRE(divisors.size() == 2);
    CHECK(divisors[0] == 2);
    CHECK(divisors[1] == 12);
    CHECK(Lattice::standard(2).index_in(fine) == 24);

    auto with_one = Lattice::standard(2).quotient_invariants_in(
        Lattice::from_generators(2, RatMatrix{{rat(1, 3), rat(0)}, {rat(0), rat(1)}}));
    REQUIRE(with_one.size() == 2);
    CHECK(with_one[0] == 1);
    CHECK(with_one[1] == 3);
}

TEST_CASE("membership") {
    Lattice l = Lattice::from_vectors(2, {{rat(1, 2), rat(1, 2)}, {rat(0), rat(1)}});
    CHECK(l.contains({rat(1, 2), rat(3, 2)}));
    CHECK(!l.contains({rat(1, 2), rat(1, 3)}));
    CHECK(l.contains_lattice(Lattice::standard(2)));
    CHECK(!Lattice::standard(2).contains_lattice(l));
}

TEST_CASE("integer kernel is saturated") {
    RatMatrix a{{rat(3), rat(-2)}};
    Lattice k = integer_kernel(a);
    CHECK(k == Lattice::from_vectors(2, {{rat(2), rat(3)}}));

    RatMatrix fractional{{rat(1, 2), rat(-1, 3)}};
    CHECK(integer_kernel(fractional) == Lattice::from_vectors(2, {{rat(2), rat(3)}}));

    CHECK(integer_kernel(RatMatrix::identity(2)).rank() == 0);
    CHECK(integer_kernel(RatMatrix(0, 3)) == Lattice::standard(3));
}

TEST_CASE("subspace slice is saturated in the lattice") {
    Lattice z2 = Lattice::standard(2);
    RatMatrix direction = RatMatrix::from_columns({{rat(2), rat(4)}});
    CHECK(z2.intersect_subspace(direction) == Lattice::from_vectors(2, {{rat(1), rat(2)}}));
    RatMatrix everything = RatMatrix::identity(2);
    CHECK(z2.intersect_subspace(everything) == z2);
    CHECK(z2.intersect_subspace(RatMatrix(2, 0)).rank() == 0);
}

TEST_CASE("coset enumeration") {
    Lattice fine = Lattice::from_generators(
        2, RatMatrix{{rat(1, 2), rat(0)}, {rat(0), rat(1, 3)}});
    auto reps = enumerate_cosets(fine, Lattice::standard(2), Int(100));
    CHECK(reps.size() == 6);
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            RatVector diff{reps[i][0] - reps[j][0], reps[i][1] - reps[j][1]};
            CHECK(!Lattice::standard(2).contains(diff));
        }
    for (const auto& r : reps) CHECK(fine.contains(r));
    CHECK_THROWS_AS(enumerate_cosets(fine, Lattice::standard(2), Int(5)), CapError);
}

TEST_CASE("transformed lattices") {
    RatMatrix t{{rat(0), rat(-1)}, {rat(1), rat(0)}};
    CHECK(Lattice::standard(2).transformed(t) == Lattice::standard(2));
    CHECK(line(rat(1, 2)).scaled(rat(3)) == line(rat(3, 2)));
}
