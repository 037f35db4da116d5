#include "relcalc/extensions.hpp"

#include "relcalc/errors.hpp"

namespace relcalc {

namespace {

// Throws with a graph element violating (f', f) >= c (f, f).
void require_bound(const LinearRelation& s, const Rational& c) {
    if (!is_symmetric(s)) throw PreconditionError("relation is not symmetric");
    const auto r = is_nonneg_above(s, c);
    if (!r.holds) {
        const std::size_t n = s.from().dim();
        Vector f(r.witness.begin(), r.witness.begin() + static_cast<long>(n));
        throw CertificationError("lower bound " + to_string(c) + " fails on the graph", std::move(f), r.witness);
    }
}

void require_selfadjoint(const LinearRelation& h, const char* where) {
    if (!is_selfadjoint(h)) throw PreconditionError(std::string(where) + ": relation is not selfadjoint");
}

void require_extension(const LinearRelation& h, const LinearRelation& s, const char* where) {
    require_selfadjoint(h, where);
    if (!h.contains(s)) throw PreconditionError(std::string(where) + ": relation does not extend S");
}

void expect_equal(const LinearRelation& a, const LinearRelation& b, const std::string& what) {
    if (!(a == b)) throw CrossCheckError(what + " disagree");
}

// Defining map of S_F and S_K,c checked once they are built.
void check_extension(const LinearRelation& x, const LinearRelation& s, const Rational& c, const char* name) {
    if (!is_selfadjoint(x)) throw CrossCheckError(std::string(name) + " is not selfadjoint");
    if (!x.contains(s)) throw CrossCheckError(std::string(name) + " does not extend S");
    if (!is_nonneg_above(x, c).holds) throw CrossCheckError(std::string(name) + " is not bounded below by c");
}

Subspace krein_mul(const LinearRelation& s, const Rational& c) {
    return intersect(ran(shift(s, -c)), mul(adjoint(s)));
}

}  // namespace

namespace routes {

LinearRelation friedrichs_product(const RepresentingMap& q) {
    const LinearRelation qr = q.as_relation();
    return shift(compose(adjoint(qr), closure(qr)), q.c);
}

LinearRelation friedrichs_adjoint(const LinearRelation& s) { return restrict(adjoint(s), dom(s)); }

LinearRelation friedrichs_weak(const LinearRelation& s) {
    return hsum(s, LinearRelation::product(Subspace::zero(s.from()), mul(adjoint(s))));
}

LinearRelation krein_product(const LinearRelation& j, const Rational& c) {
    return shift(compose(closure(j), adjoint(j)), c);
}

LinearRelation krein_weak(const LinearRelation& s, const Rational& c) { return hsum(s, defect_graph(s, c)); }

LinearRelation krein_inverse(const LinearRelation& s, const Rational& c) {
    return shift(inverse(friedrichs(inverse(shift(s, -c)), Rational(0))), c);
}

LinearRelation krein_closed(const LinearRelation& s, const Rational& c) {
    return hsum(closure(s), defect_graph(s, c));
}

}  // namespace routes

LinearRelation friedrichs(const LinearRelation& s, const Rational& c) {
    require_bound(s, c);
    return friedrichs(s, repmap_ldl(form_of_relation(s), c));
}

LinearRelation friedrichs(const LinearRelation& s, const RepresentingMap& q) {
    require_bound(s, q.c);
    if (!q.represents(form_of_relation(s))) throw PreconditionError("friedrichs: map does not represent t(S) - c");
    const LinearRelation f1 = routes::friedrichs_product(q);
    expect_equal(f1, routes::friedrichs_adjoint(s), "Friedrichs: product and adjoint-restriction routes");
    expect_equal(f1, routes::friedrichs_weak(s), "Friedrichs: product and weak routes");
    check_extension(f1, s, q.c, "S_F");
    if (!(mul(f1) == mul(adjoint(s)))) throw CrossCheckError("mul S_F differs from mul S*");
    return f1;
}

LinearRelation krein(const LinearRelation& s, const Rational& c) {
    require_bound(s, c);
    return krein(s, repmap_ldl(form_of_relation(s), c));
}

LinearRelation krein(const LinearRelation& s, const RepresentingMap& q) {
    require_bound(s, q.c);
    const Rational& c = q.c;
    const LinearRelation j = companion(s, q);
    const LinearRelation k0 = routes::krein_product(j, c);
    expect_equal(k0, routes::krein_weak(s, c), "Krein: product and weak routes");
    expect_equal(k0, routes::krein_inverse(s, c), "Krein: product and inverse-duality routes");
    expect_equal(k0, routes::krein_closed(s, c), "Krein: product and closure routes");
    check_extension(k0, s, c, "S_K,c");
    if (!(mul(k0) == krein_mul(s, c))) throw CrossCheckError("mul S_K,c differs from ran(S - c) ∩ mul S*");
    return k0;
}

LinearRelation weak_friedrichs(const LinearRelation& s, const Rational& c) {
    const LinearRelation w = routes::friedrichs_weak(s);
    expect_equal(w, friedrichs(s, c), "weak and full Friedrichs extensions");
    return w;
}

LinearRelation weak_krein(const LinearRelation& s, const Rational& c) {
    const LinearRelation w = routes::krein_weak(s, c);
    expect_equal(w, krein(s, c), "weak and full Krein extensions");
    return w;
}

// ---------------------------------------------------------------------------

OrderResult order_leq(const LinearRelation& h, const LinearRelation& k) {
    require_selfadjoint(h, "order_leq");
    require_selfadjoint(k, "order_leq");
    const QuadraticForm th = form_of_relation(h);
    const QuadraticForm tk = form_of_relation(k);
    OrderResult out;
    for (const auto& v : tk.domain().vectors()) {
        if (!th.domain().contains(v)) {
            out.leq = false;
            out.witness = v;
            return out;
        }
    }
    const RatMatrix diff = tk.matrix() - th.restrict_to(tk.domain()).matrix();
    const auto res = ldl_psd_certificate(diff);
    if (const auto* bad = std::get_if<NotPsd>(&res)) {
        out.leq = false;
        out.witness = tk.domain().basis() * bad->witness;
    }
    return out;
}

IntervalCheck extension_interval_check(const LinearRelation& s, const Rational& c, const LinearRelation& h) {
    require_extension(h, s, "extension_interval_check");
    IntervalCheck out;
    out.bounded_below = is_nonneg_above(h, c).holds;
    out.in_interval = order_leq(krein(s, c), h).leq && order_leq(h, friedrichs(s, c)).leq;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// inf over dom S of the PSD form T[a - C y] (domain coordinates of H).
Rational infimum(const RatMatrix& t, const RatMatrix& c, const Vector& a) {
    if (c.cols() == 0) return quadratic(t, a);
    const RatMatrix ct = c.transpose() * t;
    const auto y = solve(ct * c, ct * a);
    if (!y) throw CrossCheckError("normal equations of a PSD form are inconsistent");
    return quadratic(t, a - c * *y);
}

void definitional(ExtremalDetail& out, const LinearRelation& h, const LinearRelation& s, const Rational& c) {
    const QuadraticForm th = form_of_relation(h);
    const RatMatrix t = th.shifted(c);
    const auto res = ldl_psd_certificate(t);
    if (const auto* bad = std::get_if<NotPsd>(&res)) {
        // the infimum is -infinity along this direction
        out.definitional = false;
        out.witness = th.domain().basis() * bad->witness;
        out.witness_value = bad->value;
        return;
    }
    const RatMatrix coords = coordinates_in(dom(s), th.domain());
    // the infimum is a squared seminorm, so vanishing on a basis suffices
    out.definitional = true;
    for (std::size_t i = 0; i < th.domain().dim(); ++i) {
        const Rational v = infimum(t, coords, unit_vector(th.domain().dim(), i));
        if (v != 0) {
            out.definitional = false;
            out.witness = th.domain().basis().column(i);
            out.witness_value = v;
            return;
        }
    }
}

bool sandwich(const LinearRelation& h, const LinearRelation& s_f, const LinearRelation& s_k) {
    const QuadraticForm tf = form_of_relation(s_f);
    const QuadraticForm th = form_of_relation(h);
    const QuadraticForm tk = form_of_relation(s_k);
    if (!th.domain().contains(tf.domain()) || !tk.domain().contains(th.domain())) return false;
    return th.restrict_to(tf.domain()) == tf && tk.restrict_to(th.domain()) == th;
}

}  // namespace

ExtremalDetail extremal_detail(const LinearRelation& h, const LinearRelation& s, const Rational& c,
                               const LinearRelation& s_f, const LinearRelation& s_k) {
    require_extension(h, s, "extremal_check");
    ExtremalDetail out;
    definitional(out, h, s, c);
    out.sandwich = sandwich(h, s_f, s_k);
    return out;
}

ExtremalDetail extremal_detail(const LinearRelation& h, const LinearRelation& s, const Rational& c) {
    return extremal_detail(h, s, c, friedrichs(s, c), krein(s, c));
}

bool extremal_check(const LinearRelation& h, const LinearRelation& s, const Rational& c) {
    const ExtremalDetail d = extremal_detail(h, s, c);
    if (d.definitional != d.sandwich) throw CrossCheckError("extremality tests disagree");
    return d.definitional;
}

Rational extremal_infimum(const LinearRelation& h, const LinearRelation& s, const Rational& c, const Vector& f) {
    require_extension(h, s, "extremal_infimum");
    const QuadraticForm th = form_of_relation(h);
    const RatMatrix t = th.shifted(c);
    if (!is_psd(t)) throw PreconditionError("extremal_infimum: H is not bounded below by c");
    const auto a = th.domain().coordinates(f);
    if (!a) throw PreconditionError("extremal_infimum: vector is not in dom H");
    return infimum(t, coordinates_in(dom(s), th.domain()), *a);
}

LinearRelation extremal_from_domain(const LinearRelation& s, const Rational& c, const Subspace& d) {
    require_bound(s, c);
    const RepresentingMap q = repmap_ldl(form_of_relation(s), c);
    const LinearRelation jstar = adjoint(companion(s, q));
    if (!d.contains(dom(s)) || !dom(jstar).contains(d)) {
        throw PreconditionError("extremal_from_domain: need dom S ⊆ D ⊆ dom J_c*");
    }
    const LinearRelation r = restrict(regular_part(jstar), d);
    const LinearRelation h = shift(compose(adjoint(r), closure(r)), c);
    check_extension(h, s, c, "extremal extension");
    ExtremalDetail det;
    definitional(det, h, s, c);
    if (!det.definitional) throw CrossCheckError("extremal_from_domain: result is not extremal");
    if (d == dom(s)) expect_equal(h, routes::friedrichs_adjoint(s), "extremal_from_domain(dom S) and S_F");
    if (d == dom(jstar)) expect_equal(h, routes::krein_weak(s, c), "extremal_from_domain(dom J_c*) and S_K,c");
    return h;
}

bool krein_is_operator(const LinearRelation& s, const Rational& c) {
    require_bound(s, c);
    const Subspace n = krein_mul(s, c);
    const RepresentingMap q = repmap_ldl(form_of_relation(s), c);
    const LinearRelation k = krein(s, q);
    if (!(mul(k) == n)) throw CrossCheckError("krein_is_operator: mul S_K,c differs from the intersection");
    const bool op = n.is_zero();
    if (op) {
        const LinearRelation j = companion(s, q);
        const LinearRelation jj = restrict(compose(j, adjoint(j)), dom(s));
        expect_equal(jj, shift(s, -c), "krein_is_operator: S - c and J_c J_c* on dom S");
    }
    return op;
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::equal:
            return "equal";
        case Decision::not_equal:
            return "not_equal";
        case Decision::undecided:
            return "undecided";
    }
    return "undecided";
}

KreinFriedrichsResult krein_equals_friedrichs(const LinearRelation& s) {
    if (!is_symmetric(s)) throw PreconditionError("krein_equals_friedrichs: relation is not symmetric");
    const QuadraticForm t = form_of_relation(s);
    if (t.domain().is_zero()) return {};
    const auto gamma = exact_lower_bound(t);
    if (!gamma) return {};
    return krein_equals_friedrichs(s, *gamma);
}

KreinFriedrichsResult krein_equals_friedrichs(const LinearRelation& s, const Rational& gamma) {
    const QuadraticForm t = form_of_relation(s);
    if (t.domain().is_zero()) throw PreconditionError("krein_equals_friedrichs: empty domain has no lower bound");
    const RatMatrix shifted = t.shifted(gamma);
    if (!certify_lower_bound(t, gamma).ok() || rank(shifted) == shifted.rows()) {
        throw CertificationError(to_string(gamma) + " is not the exact lower bound", {});
    }
    const RepresentingMap q = repmap_ldl(t, gamma);

    // graph comparison
    const bool by_graph = krein(s, q) == friedrichs(s, q);

    // ker(S* - c) ∩ dom J_gamma* = {0} for c < gamma
    const Rational c = gamma - 1;
    const Subspace defect = eigenspace(adjoint(s), c);
    const Subspace dom_js = dom(adjoint(companion(s, q)));
    const bool by_domain = intersect(defect, dom_js).is_zero();

    // h in ker(S* - c) with a finite supremum over S - gamma: range test of
    // the form of (S - gamma)^{-1}
    const LinearRelation inv = inverse(shift(s, -gamma));
    const QuadraticForm ti = form_of_relation(inv);
    const RatMatrix v = ti.domain().basis().transpose() * s.from().gram() * defect.basis();
    const RatMatrix k = kernel(hstack(v, Rational(-1) * ti.matrix()));
    const Subspace finite(s.from(), defect.basis() * k.top_rows(defect.dim()));
    const bool by_sup = finite.is_zero();

    if (by_graph != by_domain || by_graph != by_sup) {
        throw CrossCheckError("krein_equals_friedrichs: graph comparison and criteria disagree");
    }
    return {by_graph ? Decision::equal : Decision::not_equal, gamma};
}

// ---------------------------------------------------------------------------

FormRelations relations_of_form(const RepresentingMap& q, const LinearRelation& qbar) {
    const LinearRelation graph = q.as_relation();
    if (!(qbar.from() == graph.from()) || !(qbar.to() == graph.to()) || !qbar.contains(graph) ||
        !(dom(qbar) == q.domain)) {
        throw PreconditionError("relations_of_form: relation must extend the map with the same domain");
    }
    const LinearRelation qstar = adjoint(qbar);
    FormRelations out{shift(compose(qstar, graph), q.c), shift(compose(qstar, qbar), q.c)};
    if (qbar == graph) expect_equal(out.s_t, out.a_t, "relations_of_form: S_t and A_t for a closed map");
    if (mul(qbar).contains(ran(graph))) {
        // singular map: S_t - c = ker q x (dom q)^⊥
        const LinearRelation expected =
            LinearRelation::product(ker(graph), complement(q.domain));
        expect_equal(shift(out.s_t, -q.c), expected, "relations_of_form: S_t and ker q x (dom q)^⊥");
    }
    return out;
}

FormRelations relations_of_form(const RepresentingMap& q) { return relations_of_form(q, q.as_relation()); }

ExtensionReport extension_report(const LinearRelation& s, const Rational& c) {
    ExtensionReport r;
    r.input = s;
    r.c = c;
    const RepresentingMap q = repmap_ldl(form_of_relation(s), c);
    r.friedrichs = friedrichs(s, q);
    r.krein = krein(s, q);
    r.weak_friedrichs = routes::friedrichs_weak(s);
    r.weak_krein = routes::krein_weak(s, c);
    r.checks = {
        {"friedrichs-routes-agree", true},
        {"krein-routes-agree", true},
        {"weak-friedrichs-equals-friedrichs", r.weak_friedrichs == r.friedrichs},
        {"weak-krein-equals-krein", r.weak_krein == r.krein},
        {"extensions-contain-input", r.friedrichs.contains(s) && r.krein.contains(s)},
        {"krein-leq-friedrichs", order_leq(r.krein, r.friedrichs).leq},
    };
    return r;
}

}  // namespace relcalc
