#include "doctest.h"
#include "gen.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/extensions.hpp"

using namespace relcalc;

namespace {

const InnerProductSpace q1(1), q2(2), q3(3), q4(4);

LinearRelation rank_one() { return LinearRelation::from_pairs(q2, q2, {{{1, 1}, {1, 3}}}); }
LinearRelation orthogonal_pair() { return LinearRelation::from_pairs(q3, q3, {{{1, 0, 0}, {0, 1, 0}}}); }
LinearRelation op(const RatMatrix& a) {
    const InnerProductSpace h(a.rows());
    return LinearRelation::from_matrix(h, h, a);
}
Subspace span(const InnerProductSpace& h, std::vector<Vector> v) { return Subspace::span(h, v); }

// All symmetric operators on Q^2 extending the rank-one fixture.
LinearRelation family(const Rational& b) { return op(RatMatrix{{1 - b, b}, {b, 3 - b}}); }

}  // namespace

TEST_CASE("Friedrichs extension") {
    const auto d13 = op(RatMatrix{{1, 0}, {0, 3}});
    CHECK(friedrichs(d13, 0) == d13);

    const auto f = friedrichs(rank_one(), 0);
    CHECK(f == LinearRelation::from_pairs(q2, q2, {{{1, 1}, {2, 2}}, {{0, 0}, {1, -1}}}));
    CHECK(mul(f) == span(q2, {{1, -1}}));
    CHECK(*lift(regular_part(f), {1, 1}) == Vector{2, 2});
    CHECK(friedrichs(rank_one(), 2) == f);

    CHECK(friedrichs(orthogonal_pair(), 0) ==
          LinearRelation::product(span(q3, {{1, 0, 0}}), span(q3, {{0, 1, 0}, {0, 0, 1}})));

    CHECK_THROWS_AS(friedrichs(rank_one(), 3), CertificationError);
    try {
        friedrichs(rank_one(), 3);
    } catch (const CertificationError& e) {
        CHECK(span(q4, {{1, 1, 1, 3}}).contains(e.graph_element()));
    }
    CHECK_THROWS_AS(friedrichs(LinearRelation::from_pairs(q2, q2, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}}), 0),
                    PreconditionError);
}

TEST_CASE("Krein extension") {
    const auto k = krein(rank_one(), 0);
    CHECK(k == op(Rational(1, 4) * RatMatrix{{1, 3}, {3, 9}}));
    CHECK(ker(k) == span(q2, {{3, -1}}));
    CHECK(ker(k) == ker(adjoint(rank_one())));

    CHECK(krein(orthogonal_pair(), 0) ==
          LinearRelation::product(span(q3, {{1, 0, 0}, {0, 0, 1}}), span(q3, {{0, 1, 0}})));

    const auto d13 = op(RatMatrix{{1, 0}, {0, 3}});
    CHECK(krein(d13, 1) == d13);

    CHECK(weak_krein(rank_one(), 0) == k);
    CHECK(weak_friedrichs(rank_one(), 0) == friedrichs(rank_one(), 0));
}

TEST_CASE("selfadjoint order") {
    const auto s = rank_one();
    const auto d13 = op(RatMatrix{{1, 0}, {0, 3}});
    CHECK(order_leq(d13, d13).leq);
    CHECK(order_leq(krein(s, 0), d13).leq);
    CHECK(order_leq(d13, friedrichs(s, 0)).leq);
    CHECK_FALSE(order_leq(friedrichs(s, 0), d13).leq);

    const auto d31 = op(RatMatrix{{3, 0}, {0, 1}});
    const auto a = order_leq(d13, d31), b = order_leq(d31, d13);
    CHECK_FALSE(a.leq);
    CHECK_FALSE(b.leq);
    CHECK(quadratic(RatMatrix{{2, 0}, {0, -2}}, a.witness) < 0);

    CHECK_THROWS_AS(order_leq(s, d13), PreconditionError);
}

TEST_CASE("extension interval") {
    const auto s = rank_one();
    for (const Rational& b : {Rational(0), Rational(3, 4), Rational(1), Rational(-2), Rational(1, 2)}) {
        const auto r = extension_interval_check(s, 0, family(b));
        CHECK(r.agrees());
    }
    CHECK(extension_interval_check(s, 0, family(0)).bounded_below);
    CHECK(family(Rational(3, 4)) == krein(s, 0));
    CHECK(extension_interval_check(s, 0, family(Rational(3, 4))).in_interval);
    CHECK_FALSE(extension_interval_check(s, 0, family(1)).bounded_below);
    CHECK_FALSE(extension_interval_check(s, 0, family(1)).in_interval);
    CHECK_THROWS_AS(extension_interval_check(s, 0, op(RatMatrix{{3, 0}, {0, 1}})), PreconditionError);
}

TEST_CASE("extremality") {
    const auto s = rank_one();
    CHECK(extremal_check(friedrichs(s, 0), s, 0));
    CHECK(extremal_check(krein(s, 0), s, 0));

    const auto d13 = family(0);
    CHECK_FALSE(extremal_check(d13, s, 0));
    CHECK(extremal_infimum(d13, s, 0, {1, -1}) == 3);
    const auto det = extremal_detail(d13, s, 0);
    CHECK_FALSE(det.definitional);
    CHECK_FALSE(det.sandwich);
    CHECK(det.witness_value > 0);

    // non-extremal because not bounded below by c
    CHECK_FALSE(extremal_check(family(1), s, 0));

    const auto w = orthogonal_pair();
    CHECK(extremal_check(friedrichs(w, 0), w, 0));
    CHECK(extremal_check(krein(w, 0), w, 0));
    const auto swap = op(RatMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    REQUIRE(swap.contains(w));
    CHECK_FALSE(numerical_range_zero(swap));
    CHECK_FALSE(extremal_check(swap, w, 0));
}

TEST_CASE("extremal extensions from intermediate domains") {
    const auto s = rank_one();
    const auto jstar = adjoint(companion(s, repmap_ldl(form_of_relation(s), 0)));
    CHECK(extremal_from_domain(s, 0, dom(s)) == friedrichs(s, 0));
    CHECK(extremal_from_domain(s, 0, dom(jstar)) == krein(s, 0));

    const auto d4 = op(RatMatrix::diagonal({1, 2, 3, 4}));
    const auto s4 = restrict(d4, span(q4, {{1, 1, 1, 1}, {1, -1, 1, -1}}));
    const auto defect = ker(adjoint(s4));
    REQUIRE(defect.dim() == 2);
    const auto d = sum(dom(s4), span(q4, {defect.vectors()[0]}));
    const auto x = extremal_from_domain(s4, 0, d);
    const auto f = friedrichs(s4, 0), k = krein(s4, 0);
    CHECK(extremal_check(x, s4, 0));
    CHECK(order_leq(k, x).leq);
    CHECK(order_leq(x, f).leq);
    CHECK_FALSE(x == f);
    CHECK_FALSE(x == k);

    CHECK_THROWS_AS(extremal_from_domain(s, 0, Subspace::zero(q2)), PreconditionError);
}

TEST_CASE("Krein extension is an operator") {
    CHECK(krein_is_operator(rank_one(), 0));
    CHECK_FALSE(krein_is_operator(orthogonal_pair(), 0));
    CHECK(mul(krein(orthogonal_pair(), 0)) == span(q3, {{0, 1, 0}}));
    CHECK(krein_is_operator(op(RatMatrix{{2, 1}, {1, 2}}), 0));
}

TEST_CASE("Krein extension at the bound versus Friedrichs") {
    // S_K,2 and S_F coincide here: ker(S* - c) ∩ dom J_2* = span(1,0) ∩ span(1,1) = {0}
    auto r = krein_equals_friedrichs(rank_one());
    CHECK(r.gamma == Rational(2));
    CHECK(r.decision == Decision::equal);
    CHECK(krein(rank_one(), 2) == friedrichs(rank_one(), 2));

    r = krein_equals_friedrichs(op(RatMatrix{{1, 0}, {0, 3}}));
    CHECK(r.decision == Decision::equal);

    r = krein_equals_friedrichs(orthogonal_pair());
    CHECK(r.gamma == Rational(0));
    CHECK(r.decision == Decision::not_equal);

    r = krein_equals_friedrichs(op(RatMatrix{{1, 1}, {1, 2}}));
    CHECK(r.decision == Decision::undecided);

    CHECK_THROWS_AS(krein_equals_friedrichs(rank_one(), 1), CertificationError);
}

TEST_CASE("relations generated by a form") {
    const InnerProductSpace h(3);
    const RepresentingMap zero{Rational(5), Subspace::full(h), q1, RatMatrix(1, 3)};
    auto fr = relations_of_form(zero);
    CHECK(fr.s_t == shift(LinearRelation::from_matrix(h, h, RatMatrix::zero(3, 3)), 5));
    CHECK(fr.a_t == fr.s_t);

    // q: x -> x with closure span{(1|1), (0|1)}
    const RepresentingMap id1{0, Subspace::full(q1), q1, RatMatrix{{1}}};
    const auto qbar = LinearRelation::from_pairs(q1, q1, {{{1}, {1}}, {{0}, {1}}});
    CHECK(adjoint(qbar).dim() == 0);
    CHECK(compose(adjoint(qbar), qbar) == LinearRelation::from_pairs(q1, q1, {{{1}, {0}}}));
    fr = relations_of_form(id1, qbar);
    CHECK(fr.a_t == LinearRelation::from_pairs(q1, q1, {{{1}, {0}}}));
    CHECK(fr.s_t.dim() == 0);
    CHECK(friedrichs(fr.s_t, 0) == LinearRelation::product(Subspace::zero(q1), Subspace::full(q1)));
}

TEST_CASE("stacked representing map") {
    // singular minimal map q(x) = x_1 on span{e1} in Q^2, closure adds {0} x K
    const Subspace d = span(q2, {{1, 0}});
    const RepresentingMap q{0, d, q1, RatMatrix{{1}}};
    const auto qbar = hsum(q.as_relation(), LinearRelation::product(Subspace::zero(q2), Subspace::full(q1)));
    const Rational c = -2;
    const InnerProductSpace weighted(Rational(2) * RatMatrix::identity(2));
    const RepresentingMap qc{0, d, weighted, d.basis()};
    const auto stacked = stack_maps(qc, q, c);
    CHECK(stacked.represents(QuadraticForm(d, RatMatrix{{1}})));

    const auto sk = stacked.codomain;
    const auto stacked_bar =
        hsum(stacked.as_relation(),
             LinearRelation::product(Subspace::zero(q2), Subspace::span(sk, {{0, 0, 1}})));
    const auto lhs = compose(adjoint(stacked_bar), stacked.as_relation());
    const auto rhs = shift(compose(adjoint(qbar), q.as_relation()), -c);
    CHECK(lhs == rhs);

    // regular part of the stacked map is q_c, singular part is q
    const RatMatrix p = mul(stacked_bar).projector();
    CHECK((RatMatrix::identity(3) - p) * stacked.matrix == vstack(qc.matrix, RatMatrix(1, 1)));
    CHECK(p * stacked.matrix == vstack(RatMatrix(2, 1), q.matrix));
    const auto parts = lebesgue_form(stacked, stacked_bar);
    CHECK(parts.regular.matrix().is_zero());
    CHECK(parts.singular.matrix() == RatMatrix{{1}});
}
