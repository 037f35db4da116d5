#include "doctest.h"
#include "gen.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/spaces.hpp"

using namespace relcalc;

TEST_CASE("space validation") {
    CHECK_THROWS_AS(InnerProductSpace(RatMatrix{{1, 0}, {0, 0}}), PreconditionError);
    CHECK_THROWS_AS(InnerProductSpace(RatMatrix{{1, 2}, {2, 1}}), PreconditionError);
    CHECK_THROWS_AS(InnerProductSpace(RatMatrix{{1, 1}, {0, 1}}), PreconditionError);
    CHECK(InnerProductSpace(3).has_identity_gram());
}

TEST_CASE("complement examples") {
    const InnerProductSpace q2(2);
    CHECK(complement(Subspace::span(q2, {{1, 0}})) == Subspace::span(q2, {{0, 1}}));
    const InnerProductSpace w(RatMatrix{{1, 0}, {0, 2}});
    CHECK(complement(Subspace::span(w, {{1, 1}})) == Subspace::span(w, {{2, -1}}));
    CHECK(complement(Subspace::full(q2)).is_zero());
    CHECK(complement(Subspace::full(q2)).basis().cols() == 0);
}

TEST_CASE("intersect and sum examples") {
    const InnerProductSpace q2(2);
    const auto v = Subspace::span(q2, {{1, 0}, {0, 1}});
    CHECK(intersect(v, Subspace::span(q2, {{1, 1}})) == Subspace::span(q2, {{1, 1}}));
    CHECK(intersect(Subspace::span(q2, {{1, 3}}), Subspace::span(q2, {{1, -1}})).is_zero());
    CHECK(intersect(v, v) == v);
    CHECK_THROWS_AS(intersect(v, Subspace::full(InnerProductSpace(3))), PreconditionError);

    CHECK(sum(Subspace::span(q2, {{1, 0}}), Subspace::span(q2, {{0, 1}})).is_full());
    CHECK(sum(v, Subspace::zero(q2)) == v);
    const InnerProductSpace q4(4);
    const auto s = sum(Subspace::span(q4, {{1, 1, 1, 3}}), Subspace::span(q4, {{3, -1, 0, 0}}));
    CHECK(s.dim() == 2);
    CHECK(s.contains(Vector{1, 1, 1, 3}));
    CHECK(s.contains(Vector{3, -1, 0, 0}));
}

TEST_CASE("member and project examples") {
    const InnerProductSpace q2(2);
    CHECK(member({1, 1}, Subspace::span(q2, {{2, 2}})));
    CHECK(project({1, 0}, Subspace::span(q2, {{1, 1}})) == Vector{Rational(1, 2), Rational(1, 2)});
    CHECK(project({3, -7}, Subspace::full(q2)) == Vector{3, -7});
}

TEST_CASE("canonical form is basis independent") {
    const InnerProductSpace q3(3);
    CHECK(Subspace::span(q3, {{1, 2, 3}, {0, 1, 1}}) == Subspace::span(q3, {{1, 3, 4}, {2, 4, 6}, {1, 1, 2}}));
}

TEST_CASE("property: involution, De Morgan, projector") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 150; ++it) {
        const std::size_t n = 1 + rng() % 6;
        const auto amb = testgen::random_space(rng, n);
        const auto v = testgen::random_subspace(rng, amb, rng() % (n + 1));
        const auto w = testgen::random_subspace(rng, amb, rng() % (n + 1));
        CHECK(complement(complement(v)) == v);
        CHECK(v.dim() + complement(v).dim() == n);
        CHECK(intersect(v, complement(v)).is_zero());
        CHECK(complement(sum(v, w)) == intersect(complement(v), complement(w)));
        CHECK(sum(v, w).dim() + intersect(v, w).dim() == v.dim() + w.dim());

        const RatMatrix p = v.projector();
        CHECK(p * p == p);
        const Vector x = testgen::random_vector(rng, n), y = testgen::random_vector(rng, n);
        CHECK(amb.inner(x, p * y) == amb.inner(p * x, y));
        CHECK(project(x, v) == p * x);
        CHECK(project(project(x, v), v) == project(x, v));
    }
}
