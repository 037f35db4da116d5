#include "doctest.h"
#include "gen.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/forms.hpp"

using namespace relcalc;

namespace {

const InnerProductSpace q1(1), q2(2), q3(3);

LinearRelation rank_one() { return LinearRelation::from_pairs(q2, q2, {{{1, 1}, {1, 3}}}); }
LinearRelation orthogonal_pair() { return LinearRelation::from_pairs(q3, q3, {{{1, 0, 0}, {0, 1, 0}}}); }

}  // namespace

TEST_CASE("form of a relation") {
    const auto t = form_of_relation(rank_one());
    CHECK(t.domain() == Subspace::span(q2, {{1, 1}}));
    CHECK(t.matrix() == RatMatrix{{4}});
    CHECK(t({1, 1}, {1, 1}) == 4);

    const auto z = form_of_relation(LinearRelation::from_matrix(q2, q2, RatMatrix::zero(2, 2)));
    CHECK(z.domain().is_full());
    CHECK(z.matrix().is_zero());

    CHECK(form_of_relation(orthogonal_pair()).matrix().is_zero());
    CHECK_THROWS_AS(form_of_relation(LinearRelation::from_pairs(q2, q2, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}})),
                    PreconditionError);
}

TEST_CASE("lower bound certification") {
    const auto t = form_of_relation(rank_one());
    CHECK(certify_lower_bound(t, 2).ok());
    const auto bad = certify_lower_bound(t, 3);
    CHECK_FALSE(bad.ok());
    CHECK(t(bad.witness, bad.witness) < 3 * q2.norm2(bad.witness));
    CHECK(certify_lower_bound(t, -1000000).ok());
}

TEST_CASE("bound bisection") {
    auto iv = bound_bisect(form_of_relation(rank_one()), Rational(1, 8));
    CHECK(iv.exact);
    CHECK(iv.lower == 2);
    CHECK(iv.upper - iv.lower <= Rational(1, 8));
    CHECK(iv.approximate == doctest::Approx(2.0));

    const auto id = LinearRelation::identity(q3);
    iv = bound_bisect(form_of_relation(restrict(id, Subspace::span(q3, {{1, 2, 0}, {0, 1, 5}}))), Rational(1, 64));
    CHECK(iv.exact);
    CHECK(iv.lower == 1);

    const auto d13 = LinearRelation::from_matrix(q2, q2, RatMatrix{{1, 0}, {0, 3}});
    iv = bound_bisect(form_of_relation(restrict(d13, Subspace::span(q2, {{1, 1}}))), Rational(1, 64));
    CHECK(iv.lower == 2);

    // irrational bound (3 - sqrt 5) / 2
    const auto irr = form_of_relation(LinearRelation::from_matrix(q2, q2, RatMatrix{{1, 1}, {1, 2}}));
    iv = bound_bisect(irr, Rational(1, 64));
    CHECK_FALSE(iv.exact);
    CHECK(iv.upper - iv.lower <= Rational(1, 64));
    CHECK(certify_lower_bound(irr, iv.lower).ok());
    CHECK_FALSE(certify_lower_bound(irr, iv.upper).ok());
    CHECK(iv.lower.get_d() <= (3 - std::sqrt(5.0)) / 2);
    CHECK(iv.upper.get_d() >= (3 - std::sqrt(5.0)) / 2);
    CHECK_FALSE(exact_lower_bound(irr).has_value());

    CHECK_THROWS_AS(bound_bisect(form_of_relation(LinearRelation(q2, q2, RatMatrix(4, 0))), 1), PreconditionError);
}

TEST_CASE("LDL representing map") {
    const auto t = form_of_relation(rank_one());
    auto q = repmap_ldl(t, 0);
    CHECK(q.codomain.gram() == RatMatrix{{4}});
    CHECK(q.matrix == RatMatrix{{1}});
    CHECK(q.represents(t));

    q = repmap_ldl(t, 2);
    CHECK(q.codomain.dim() == 0);
    CHECK(q.matrix.rows() == 0);
    CHECK(q.represents(t));

    const auto z = form_of_relation(LinearRelation::from_matrix(q2, q2, RatMatrix::zero(2, 2)));
    q = repmap_ldl(z, 0);
    CHECK(q.codomain.dim() == 0);

    CHECK_THROWS_AS(repmap_ldl(t, 3), CertificationError);
}

TEST_CASE("quotient representing map") {
    auto q = repmap_quotient(rank_one(), 0);
    CHECK(q.codomain.gram() == RatMatrix{{4}});
    CHECK(q.matrix == RatMatrix{{1}});

    CHECK(repmap_quotient(orthogonal_pair(), 0).codomain.dim() == 0);
    CHECK(repmap_quotient(LinearRelation::from_matrix(q1, q1, RatMatrix{{2}}), 2).codomain.dim() == 0);
}

TEST_CASE("companion relation") {
    const auto s = rank_one();
    auto j = companion(s, repmap_ldl(form_of_relation(s), 0));
    CHECK(j == LinearRelation::from_pairs(j.from(), q2, {{{1}, {1, 3}}}));
    const auto q0 = repmap_ldl(form_of_relation(s), 0).as_relation();
    CHECK(compose(j, q0) == s);

    j = companion(s, repmap_ldl(form_of_relation(s), 2));
    CHECK(j.from().dim() == 0);
    CHECK(dom(j).is_zero());
    CHECK(mul(j) == Subspace::span(q2, {{-1, 1}}));

    const auto w = orthogonal_pair();
    j = companion(w, repmap_ldl(form_of_relation(w), 0));
    CHECK(dom(j).is_zero());
    CHECK(mul(j) == ran(w));

    CHECK_THROWS_AS(companion(s, repmap_ldl(form_of_relation(orthogonal_pair()), 0)), PreconditionError);
}

TEST_CASE("form s(S)") {
    const auto s = rank_one();
    auto f = form_s_of(s, 0);
    CHECK(f.domain().is_full());
    CHECK(f.matrix() == Rational(1, 4) * RatMatrix{{1, 3}, {3, 9}});

    f = form_s_of(s, 2);
    CHECK(f.domain() == Subspace::span(q2, {{1, 1}}));
    CHECK(f.matrix() == RatMatrix{{4}});

    const auto w = orthogonal_pair();
    f = form_s_of(w, 0);
    CHECK(f.domain() == ker(adjoint(w)));
    CHECK(f.matrix().is_zero());
}

TEST_CASE("range inequality test") {
    const auto s = rank_one();
    CHECK(ran_adjoint_by_inequality(s, 0, {1, 3}));
    CHECK_FALSE(ran_adjoint_by_inequality(s, 2, {1, 1}));
    CHECK(ran_adjoint_by_inequality(s, 2, {1, -1}));
    CHECK(ran_adjoint_by_inequality(s, 0, {5, -5}));
}

TEST_CASE("Lebesgue decomposition and stacking") {
    // operator map: nothing singular
    const auto t = form_of_relation(rank_one());
    const auto q = repmap_ldl(t, 0);
    auto parts = lebesgue_form(q, q.as_relation());
    CHECK(parts.singular.matrix().is_zero());
    CHECK(parts.regular.matrix() == t.matrix());

    // x -> x with closure span{(1|1), (0|1)}: entirely singular
    const RepresentingMap id1{0, Subspace::full(q1), q1, RatMatrix{{1}}};
    const auto qbar = LinearRelation::from_pairs(q1, q1, {{{1}, {1}}, {{0}, {1}}});
    parts = lebesgue_form(id1, qbar);
    CHECK(parts.regular.matrix().is_zero());
    CHECK(parts.singular.matrix() == RatMatrix{{1}});

    // stack(q_c, Q) for c < 0 represents t - c
    const Rational c = -3;
    const InnerProductSpace weighted(Rational(3) * RatMatrix::identity(1));
    const RepresentingMap qc{0, Subspace::full(q1), weighted, RatMatrix{{1}}};
    const auto stacked = stack_maps(qc, id1, c);
    CHECK(stacked.represented() == RatMatrix{{4}});
    CHECK(stacked.represents(QuadraticForm(Subspace::full(q1), RatMatrix{{1}})));
}
