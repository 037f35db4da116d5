#include "relcalc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "relcalc/errors.hpp"

namespace relcalc {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rational Rng::rational(int bound) {
    const long p = range(-bound, bound);
    const long q = range(1, bound);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

namespace {

RatMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, int bound) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational(bound);
    return m;
}

RatMatrix random_integers(Rng& rng, std::size_t r, std::size_t c, long bound) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(rng.range(-bound, bound));
    return m;
}

// Integer SPD Gram B^T B + I; the identity one time in three.
InnerProductSpace random_space(Rng& rng, std::size_t n) {
    if (rng.below(3) == 0) return InnerProductSpace(n);
    const RatMatrix b = random_integers(rng, n, n, 1);
    return InnerProductSpace(b.transpose() * b + RatMatrix::identity(n));
}

Subspace random_subspace_of(Rng& rng, const Subspace& w, std::size_t k) {
    if (w.is_zero() || k == 0) return Subspace::zero(w.ambient());
    return Subspace(w.ambient(), w.basis() * random_integers(rng, w.dim(), k, 2));
}

// Random element of the span of the columns, avoiding zero when possible.
Vector random_combination(Rng& rng, const RatMatrix& basis) {
    Vector coeff(basis.cols());
    for (auto& x : coeff) x = Rational(rng.range(-2, 2));
    if (!coeff.empty() && is_zero(coeff)) coeff[rng.below(coeff.size())] = 1;
    return basis * coeff;
}

LinearRelation with_element(const LinearRelation& h, const Vector& x) {
    return LinearRelation(h.from(), h.to(), hstack(h.graph().basis(), RatMatrix::from_columns(x.size(), {x})));
}

// Completes a symmetric relation to a selfadjoint one.
LinearRelation complete(LinearRelation h, Rng& rng) {
    for (;;) {
        const LinearRelation a = adjoint(h);
        if (a.dim() == h.dim()) return h;
        Vector x = random_combination(rng, a.graph().basis());
        if (h.graph().contains(x)) {
            for (const auto& v : a.graph().vectors()) {
                if (!h.graph().contains(v)) {
                    x = v;
                    break;
                }
            }
        }
        h = with_element(h, x);
    }
}

}  // namespace

InstanceSpec spec_for(std::uint64_t seed, std::size_t dim) {
    Rng rng(seed ^ 0x5eedf00dULL);
    InstanceSpec spec;
    spec.dim = dim;
    spec.seed = seed;
    spec.mul_dim = rng.below(dim);
    spec.restrict_dim = 1 + rng.below(dim);
    spec.form_kernel_dim = rng.below(3);
    spec.through_mul = spec.mul_dim > 0 && spec.form_kernel_dim > 0 && rng.below(2) == 0;
    return spec;
}

Instance random_semibounded(const InstanceSpec& spec) {
    if (spec.dim == 0 || spec.mul_dim > spec.dim || spec.restrict_dim > spec.dim) {
        throw PreconditionError("random_semibounded: need mul_dim, restrict_dim <= dim");
    }
    Rng rng(spec.seed);
    const InnerProductSpace h = random_space(rng, spec.dim);
    const Subspace m = spec.mul_dim == 0 ? Subspace::zero(h)
                                         : Subspace(h, random_integers(rng, spec.dim, spec.mul_dim, 2));
    const RatMatrix e = complement(m).basis();
    const std::size_t d = e.cols();
    const Rational c0(rng.range(-2, 2));

    // form c0 (., .) + |C .|^2 on ran E; X is its operator in E coordinates
    const std::size_t r = d - std::min(spec.form_kernel_dim, d);
    const RatMatrix cm = random_matrix(rng, r, d, spec.entry_bound);
    const RatMatrix gd = e.transpose() * h.gram() * e;
    const RatMatrix x = inverse(gd) * (cm.transpose() * cm + c0 * gd);

    // graph basis of the selfadjoint A = {E y, E X y} hsum ({0} x M)
    const RatMatrix op = vstack(e, e * x);
    const RatMatrix multi = vstack(RatMatrix::zero(spec.dim, m.dim()), m.basis());
    const RatMatrix a = hstack(op, multi);

    RatMatrix gens = a * random_integers(rng, a.cols(), spec.restrict_dim, 2);
    if (spec.through_mul && !m.is_zero()) {
        const RatMatrix kc = kernel(cm);
        if (kc.cols() > 0) {
            const Vector y = kc.column(0);
            const Vector mu = random_combination(rng, m.basis());
            const Vector el = concat(e * y, e * (x * y) + mu);
            for (std::size_t i = 0; i < el.size(); ++i) gens(i, 0) = el[i];
        }
    }
    Instance out{spec, LinearRelation(h, h, gens), c0};
    if (!is_symmetric(out.s)) throw CrossCheckError("random_semibounded: restriction is not symmetric");
    if (!is_nonneg_above(out.s, c0).holds) throw CrossCheckError("random_semibounded: bound fails");
    return out;
}

LinearRelation random_numrange_zero(std::size_t dim, std::uint64_t seed) {
    if (dim < 2) throw PreconditionError("random_numrange_zero: need dim >= 2");
    Rng rng(seed);
    const InnerProductSpace h = random_space(rng, dim);
    const Subspace d = random_subspace_of(rng, Subspace::full(h), 1 + rng.below(dim - 1));
    const Subspace perp = complement(d);
    std::vector<Vector> cols;
    for (const auto& f : d.vectors()) cols.push_back(concat(f, random_combination(rng, perp.basis())));
    const Subspace mul_part = random_subspace_of(rng, perp, rng.below(perp.dim() + 1));
    for (const auto& g : mul_part.vectors()) cols.push_back(concat(zero_vector(dim), g));
    return LinearRelation(h, h, RatMatrix::from_columns(2 * dim, cols));
}

LinearRelation random_selfadjoint_extension(const LinearRelation& s, Rng& rng) {
    if (!is_symmetric(s)) throw PreconditionError("random_selfadjoint_extension: relation is not symmetric");
    return complete(s, rng);
}

std::vector<LinearRelation> engineered_non_extremal(const LinearRelation& s, const Rational& c, std::size_t count,
                                                    Rng& rng) {
    if (!is_symmetric(s)) throw PreconditionError("engineered_non_extremal: relation is not symmetric");
    std::vector<LinearRelation> out;
    const LinearRelation sstar = adjoint(s);
    if (sstar.dim() == s.dim()) return out;
    const InnerProductSpace& h = s.from();
    for (std::size_t attempt = 0; out.size() < count && attempt < 8 * count; ++attempt) {
        // a defect element {f, lambda f} with lambda < c is a negative
        // direction; perturb it inside S* while it stays negative
        const Rational lambda = c - 1 - Rational(static_cast<long>(rng.below(3)));
        const Subspace defect = eigenspace(sstar, lambda);
        if (defect.is_zero()) continue;
        const Vector f = random_combination(rng, defect.basis());
        Vector x = concat(f, lambda * f);
        const Vector p = random_combination(rng, sstar.graph().basis());
        const Vector y = x + Rational(1, static_cast<long>(2 + rng.below(4))) * p;
        const auto value = [&](const Vector& el) -> Rational {
            const Vector a(el.begin(), el.begin() + static_cast<long>(h.dim()));
            const Vector b(el.begin() + static_cast<long>(h.dim()), el.end());
            return h.inner(b, a) - c * h.norm2(a);
        };
        if (value(y) < 0) x = y;
        const LinearRelation cand = complete(with_element(s, x), rng);
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
    }
    return out;
}

std::vector<LinearRelation> sample_extremal(const LinearRelation& s, const Rational& c, std::size_t count,
                                            std::uint64_t seed) {
    Rng rng(seed);
    const RepresentingMap q = repmap_ldl(form_of_relation(s), c);
    const Subspace ds = dom(s);
    const Subspace dj = dom(adjoint(companion(s, q)));
    std::vector<Subspace> domains{ds, dj};
    const std::size_t gap = dj.dim() - ds.dim();
    for (std::size_t i = 0; gap > 1 && i < count; ++i) {
        const std::size_t k = 1 + rng.below(gap - 1);
        domains.push_back(sum(ds, random_subspace_of(rng, dj, k)));
    }
    std::vector<LinearRelation> out;
    for (const auto& d : domains) {
        if (out.size() >= std::max<std::size_t>(count, 1)) break;
        LinearRelation x = extremal_from_domain(s, c, d);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    }
    return out;
}

ExtensionBundle compute_bundle(const LinearRelation& s, const Rational& c) {
    const QuadraticForm t = form_of_relation(s);
    ExtensionBundle b;
    b.q_ldl = repmap_ldl(t, c);
    b.q_quotient = repmap_quotient(s, c);
    b.companion = companion(s, b.q_ldl);
    b.companion_quotient = companion(s, b.q_quotient);
    b.friedrichs = routes::friedrichs_product(b.q_ldl);
    b.krein = routes::krein_product(b.companion, c);
    return b;
}

// ---------------------------------------------------------------------------

namespace {

struct Context {
    const LinearRelation& s;
    const Rational& c;
    const VerifyOptions& opts;
    ExtensionBundle b;
    LinearRelation s_star;
    QuadraticForm t;
    std::vector<LinearRelation> random_ext;
    std::vector<LinearRelation> engineered;
    std::vector<LinearRelation> samples;
};

using Outcome = std::optional<Witness>;

Outcome fail(std::string detail) { return Witness{std::move(detail), {}, {}}; }

Outcome compare(const LinearRelation& a, const LinearRelation& b, const std::string& what, const std::string& la,
                const std::string& lb) {
    if (a == b) return std::nullopt;
    Witness w{what, {}, {{la, a}, {lb, b}}};
    if (a.from() == b.from() && a.to() == b.to()) {
        if (auto d = graph_difference(a, b)) w.vectors.emplace_back("graph element in exactly one", *d);
    }
    return w;
}

Outcome compare(const Subspace& a, const Subspace& b, const std::string& what) {
    if (a == b) return std::nullopt;
    Witness w{what, {}, {}};
    for (const auto& v : a.vectors())
        if (!b.contains(v)) {
            w.vectors.emplace_back("in first only", v);
            return w;
        }
    for (const auto& v : b.vectors())
        if (!a.contains(v)) {
            w.vectors.emplace_back("in second only", v);
            return w;
        }
    return w;
}

Outcome included(const LinearRelation& a, const LinearRelation& b, const std::string& what, const std::string& la,
                 const std::string& lb) {
    for (const auto& v : a.graph().vectors()) {
        if (!b.graph().contains(v)) return Witness{what, {{"graph element outside " + lb, v}}, {{la, a}, {lb, b}}};
    }
    return std::nullopt;
}

// Every extension the order and extremality checks look at.
std::vector<std::pair<std::string, const LinearRelation*>> extensions_of(const Context& x) {
    std::vector<std::pair<std::string, const LinearRelation*>> out{{"S_F", &x.b.friedrichs}, {"S_K", &x.b.krein}};
    for (std::size_t i = 0; i < x.random_ext.size(); ++i)
        out.emplace_back("random extension " + std::to_string(i), &x.random_ext[i]);
    for (std::size_t i = 0; i < x.engineered.size(); ++i)
        out.emplace_back("engineered extension " + std::to_string(i), &x.engineered[i]);
    for (std::size_t i = 0; i < x.samples.size(); ++i)
        out.emplace_back("extremal sample " + std::to_string(i), &x.samples[i]);
    return out;
}

Outcome check_generator(Context& x) {
    if (!is_symmetric(x.s)) return fail("S is not symmetric");
    const BoundResult r = certify_lower_bound(x.t, x.c);
    if (!r.ok()) return Witness{"c is not a lower bound", {{"f", r.witness}}, {}};
    return std::nullopt;
}

Outcome check_involution(Context& x) {
    const std::vector<std::pair<std::string, LinearRelation>> rels = {
        {"S", x.s}, {"S*", x.s_star}, {"J", x.b.companion}, {"Q", x.b.q_ldl.as_relation()}};
    for (const auto& [name, rel] : rels) {
        if (auto w = compare(adjoint(adjoint(rel)), rel, name + "** differs from " + name, name + "**", name))
            return w;
    }
    return std::nullopt;
}

Outcome check_exchange(Context& x) {
    for (const LinearRelation* t : std::initializer_list<const LinearRelation*>{&x.s, &x.b.companion}) {
        if (auto w = compare(adjoint(inverse(*t)), inverse(adjoint(*t)), "(T^-1)* and (T*)^-1 differ", "(T^-1)*",
                             "(T*)^-1"))
            return w;
    }
    return std::nullopt;
}

Outcome check_parts_duality(Context& x) {
    for (const LinearRelation* t : std::initializer_list<const LinearRelation*>{&x.s, &x.b.companion}) {
        const LinearRelation a = adjoint(*t);
        if (auto w = compare(mul(a), complement(dom(*t)), "mul T* is not (dom T)^perp")) return w;
        if (auto w = compare(ker(a), complement(ran(*t)), "ker T* is not (ran T)^perp")) return w;
    }
    return std::nullopt;
}

Outcome check_compose(Context& x) {
    const LinearRelation q = x.b.q_ldl.as_relation();
    const LinearRelation& j = x.b.companion;
    const LinearRelation js = adjoint(j);
    if (auto w = compare(compose(j, compose(q, x.s)), compose(compose(j, q), x.s), "J(QS) and (JQ)S differ", "J(QS)",
                         "(JQ)S"))
        return w;
    return compare(compose(x.s_star, compose(j, js)), compose(compose(x.s_star, j), js),
                   "S*(J J*) and (S* J) J* differ", "S*(JJ*)", "(S*J)J*");
}

Outcome check_reg_sing(Context& x) {
    for (const LinearRelation* t : std::initializer_list<const LinearRelation*>{&x.s_star, &x.b.friedrichs, &x.b.krein}) {
        const LinearRelation reg = regular_part(*t);
        const LinearRelation sing = singular_part(*t);
        if (auto w = compare(add(reg, sing), *t, "T_reg + T_sing differs from T", "T_reg + T_sing", "T")) return w;
        if (!mul(reg).is_zero()) return Witness{"T_reg is multivalued", {}, {{"T_reg", reg}}};
        if (!mul(*t).contains(ran(sing))) return Witness{"ran T_sing not in mul T", {}, {{"T_sing", sing}}};
    }
    return std::nullopt;
}

Outcome check_shift(Context& x) {
    for (const Rational& a : {x.c, Rational(-3, 2), Rational(7)}) {
        if (auto w = compare(shift(shift(x.s, a), -a), x.s, "shift round trip on S", "(S + a) - a", "S")) return w;
        if (auto w = compare(shift(shift(x.s_star, a), -a), x.s_star, "shift round trip on S*", "(S* + a) - a", "S*"))
            return w;
    }
    return std::nullopt;
}

Outcome check_certificate(Context& x) {
    for (const RepresentingMap* q : std::initializer_list<const RepresentingMap*>{&x.b.q_ldl, &x.b.q_quotient}) {
        if (!q->represents(x.t)) return fail("Q^T G Q differs from t - c");
    }
    return std::nullopt;
}

Outcome check_repmap_independence(Context& x) {
    const LinearRelation q1 = x.b.q_ldl.as_relation();
    const LinearRelation q2 = x.b.q_quotient.as_relation();
    if (auto w = compare(compose(adjoint(q1), q1), compose(adjoint(q2), q2), "Q*Q differs between maps", "LDL",
                         "quotient"))
        return w;
    const LinearRelation& j1 = x.b.companion;
    const LinearRelation& j2 = x.b.companion_quotient;
    return compare(compose(j1, adjoint(j1)), compose(j2, adjoint(j2)), "J J* differs between maps", "LDL",
                   "quotient");
}

Outcome check_dual_pair(Context& x) {
    const std::pair<const RepresentingMap*, const LinearRelation*> pairs[] = {
        {&x.b.q_ldl, &x.b.companion}, {&x.b.q_quotient, &x.b.companion_quotient}};
    for (const auto& [q, j] : pairs) {
        const LinearRelation qr = q->as_relation();
        if (auto w = included(qr, adjoint(*j), "Q is not contained in J*", "Q", "J*")) return w;
        if (auto w = included(*j, adjoint(qr), "J is not contained in Q*", "J", "Q*")) return w;
    }
    return std::nullopt;
}

Subspace krein_intersection(const Context& x) { return intersect(ran(shift(x.s, -x.c)), mul(x.s_star)); }

Outcome check_companion_mul(Context& x) {
    const Subspace n = krein_intersection(x);
    if (auto w = compare(mul(x.b.companion), n, "mul J differs from ran(S - c) ∩ mul S*")) return w;
    return compare(mul(x.b.companion_quotient), n, "mul J (quotient map) differs from ran(S - c) ∩ mul S*");
}

// in and out probes: half from the subspace, half from the whole space
std::vector<Vector> probes(Rng& rng, const Subspace& inside, std::size_t count) {
    std::vector<Vector> out;
    const std::size_t n = inside.ambient_dim();
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2 == 0 && !inside.is_zero()) {
            out.push_back(random_combination(rng, inside.basis()));
        } else {
            out.push_back(random_combination(rng, RatMatrix::identity(n)));
        }
    }
    return out;
}

Outcome check_domj_inequality(Context& x) {
    Rng rng(x.opts.seed ^ 0xd0d0ULL);
    const Subspace target = dom(adjoint(x.b.companion));
    for (const auto& psi : probes(rng, target, x.opts.probes)) {
        if (dom_adjoint_companion_test(x.s, x.c, psi) != target.contains(psi)) {
            return Witness{"inequality test disagrees with dom J*", {{"psi", psi}}, {}};
        }
    }
    return std::nullopt;
}

Outcome check_form_extends(Context& x) {
    const QuadraticForm s_form = form_s_of(x.s, x.c);
    if (!s_form.domain().contains(x.t.domain())) return fail("dom S is not inside the domain of s(S)");
    if (!(s_form.restrict_to(x.t.domain()) == x.t)) return fail("s(S) does not extend t(S)");
    return std::nullopt;
}

Outcome check_adjoint_form(Context& x) {
    const LinearRelation r = restrict(x.s_star, dom(x.s));
    const std::size_t n = x.s.from().dim();
    for (const auto& el : r.graph().vectors()) {
        const Vector phi(el.begin(), el.begin() + static_cast<long>(n));
        const Vector phi2(el.begin() + static_cast<long>(n), el.end());
        for (const auto& psi : x.t.domain().vectors()) {
            if (x.t(phi, psi) != x.s.from().inner(phi2, psi)) {
                return Witness{"t(S)[phi, psi] differs from (phi', psi)", {{"phi", phi}, {"phi'", phi2}, {"psi", psi}},
                               {}};
            }
        }
    }
    return std::nullopt;
}

Outcome check_inverse_repmap(Context& x) {
    const LinearRelation jinv = inverse(x.b.companion);
    const Subspace d = dom(jinv);
    if (!mul(jinv).is_zero()) return Witness{"J is not injective", {}, {{"J", x.b.companion}}};
    std::vector<Vector> cols;
    for (const auto& u : d.vectors()) cols.push_back(*lift(jinv, u));
    const RepresentingMap r{Rational(0), d, x.b.q_ldl.codomain,
                            RatMatrix::from_columns(x.b.q_ldl.codomain.dim(), cols)};
    const LinearRelation sinv = inverse(shift(x.s, -x.c));
    if (!r.represents(form_of_relation(sinv))) return fail("J^-1 does not represent the form of (S - c)^-1");
    return compare(companion(sinv, r), inverse(x.b.q_ldl.as_relation()), "companion of J^-1 differs from Q^-1",
                   "companion", "Q^-1");
}

Outcome check_friedrichs_routes(Context& x) {
    const LinearRelation& f = x.b.friedrichs;
    if (auto w = compare(f, routes::friedrichs_adjoint(x.s), "Friedrichs product and adjoint routes", "product",
                         "adjoint"))
        return w;
    if (auto w = compare(f, routes::friedrichs_weak(x.s), "Friedrichs product and weak routes", "product", "weak"))
        return w;
    if (!is_selfadjoint(f)) return Witness{"S_F is not selfadjoint", {}, {{"S_F", f}}};
    return included(x.s, f, "S is not contained in S_F", "S", "S_F");
}

Outcome check_krein_routes(Context& x) {
    const LinearRelation& k = x.b.krein;
    if (auto w = compare(k, routes::krein_weak(x.s, x.c), "Krein product and weak routes", "product", "weak"))
        return w;
    if (auto w = compare(k, routes::krein_closed(x.s, x.c), "Krein product and closure routes", "product", "closed"))
        return w;
    if (!is_selfadjoint(k)) return Witness{"S_K is not selfadjoint", {}, {{"S_K", k}}};
    return included(x.s, k, "S is not contained in S_K", "S", "S_K");
}

Outcome check_krein_bound(Context& x) {
    const auto r = is_nonneg_above(x.b.krein, x.c);
    if (!r.holds) return Witness{"S_K is not bounded below by c", {{"graph element", r.witness}}, {}};
    if (!eigenspace(x.s_star, x.c).is_zero()) {
        if (is_nonneg_above(x.b.krein, x.c + Rational(1, 1000)).holds) {
            return fail("ker(S* - c) is nontrivial but S_K is bounded below by c + 1/1000");
        }
    }
    return std::nullopt;
}

Outcome check_translation(Context& x) {
    const LinearRelation shifted = shift(x.s, -x.c);
    const LinearRelation f0 = routes::friedrichs_product(repmap_ldl(form_of_relation(shifted), Rational(0)));
    return compare(f0, shift(x.b.friedrichs, -x.c), "(S - c)_F differs from S_F - c", "(S - c)_F", "S_F - c");
}

Outcome check_codding(Context& x) {
    return compare(x.b.krein, routes::krein_inverse(x.s, x.c), "S_K differs from c + ((S - c)^-1)_F^-1", "S_K",
                   "inverse route");
}

Outcome check_mul_identities(Context& x) {
    if (auto w = compare(mul(x.b.krein), krein_intersection(x), "mul S_K differs from ran(S - c) ∩ mul S*"))
        return w;
    return compare(mul(x.b.friedrichs), mul(x.s_star), "mul S_F differs from mul S*");
}

Outcome check_order_interval(Context& x) {
    const OrderResult o = order_leq(x.b.krein, x.b.friedrichs);
    if (!o.leq) return Witness{"S_K <= S_F fails", {{"w", o.witness}}, {}};
    for (const auto& [name, h] : extensions_of(x)) {
        const IntervalCheck ic = extension_interval_check(x.s, x.c, *h);
        if (!ic.agrees()) {
            return Witness{name + ": H >= c and S_K <= H <= S_F disagree", {}, {{name, *h}}};
        }
    }
    return std::nullopt;
}

Outcome check_samples_ordered(Context& x) {
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
        const LinearRelation& h = x.samples[i];
        const OrderResult lo = order_leq(x.b.krein, h);
        if (!lo.leq) return Witness{"S_K <= X fails for a sample", {{"w", lo.witness}}, {{"X", h}}};
        const OrderResult hi = order_leq(h, x.b.friedrichs);
        if (!hi.leq) return Witness{"X <= S_F fails for a sample", {{"w", hi.witness}}, {{"X", h}}};
    }
    return std::nullopt;
}

Outcome check_extremality(Context& x) {
    for (const auto& [name, h] : extensions_of(x)) {
        const ExtremalDetail d = extremal_detail(*h, x.s, x.c, x.b.friedrichs, x.b.krein);
        if (d.definitional != d.sandwich) {
            return Witness{name + ": extremality tests disagree", {{"f", d.witness}}, {{name, *h}}};
        }
        const bool expected_extremal = name.starts_with("S_") || name.starts_with("extremal");
        const bool expected_not = name.starts_with("engineered");
        if ((expected_extremal && !d.definitional) || (expected_not && d.definitional)) {
            return Witness{name + ": unexpected extremality verdict", {{"f", d.witness}}, {{name, *h}}};
        }
    }
    return std::nullopt;
}

Outcome check_extension_repmaps(Context& x) {
    if (auto w = compare(routes::friedrichs_product(x.b.q_quotient), x.b.friedrichs,
                         "S_F differs between representing maps", "quotient", "LDL"))
        return w;
    return compare(routes::krein_product(x.b.companion_quotient, x.c), x.b.krein,
                   "S_K differs between representing maps", "quotient", "LDL");
}

Outcome check_friedrichs_half(Context& x) {
    Rng rng(x.opts.seed ^ 0xf1f1ULL);
    const Subspace target = ran(adjoint(x.b.q_ldl.as_relation()));
    for (const auto& phi : probes(rng, target, x.opts.probes)) {
        if (ran_adjoint_test(x.s, x.c, phi) != target.contains(phi)) {
            return Witness{"inequality test disagrees with ran Q*", {{"phi", phi}}, {}};
        }
    }
    return std::nullopt;
}

Outcome check_krein_half(Context& x) {
    const Subspace dj = dom(adjoint(x.b.companion));
    if (auto w = compare(dj, dom(x.b.krein), "dom J* differs from dom S_K")) return w;
    if (auto w = compare(dj, form_s_of(x.s, x.c).domain(), "dom J* differs from the domain of s(S)")) return w;
    return check_domj_inequality(x);
}

Outcome check_numrange_zero(Context& x) {
    if (!numerical_range_zero(x.s)) return std::nullopt;
    const Rational zero(0);
    const LinearRelation f0 = routes::friedrichs_weak(x.s);
    if (auto w = compare(f0, LinearRelation::product(dom(x.s), mul(x.s_star)), "S_F is not dom S x mul S*", "S_F",
                         "dom S x mul S*"))
        return w;
    const LinearRelation k0 = routes::krein_weak(x.s, zero);
    if (auto w = compare(k0, LinearRelation::product(ker(x.s_star), ran(x.s)), "S_K,0 is not ker S* x ran S",
                         "S_K,0", "ker S* x ran S"))
        return w;
    for (const auto& [name, h] : extensions_of(x)) {
        const ExtremalDetail d = extremal_detail(*h, x.s, zero, f0, k0);
        if (d.definitional != d.sandwich || d.definitional != numerical_range_zero(*h)) {
            return Witness{name + ": W(H) = {0} and extremality at 0 disagree", {{"f", d.witness}}, {{name, *h}}};
        }
    }
    return std::nullopt;
}

Outcome check_krein_operator(Context& x) {
    const bool op = krein_is_operator(x.s, x.c);
    if (op != mul(x.b.krein).is_zero()) return Witness{"operator criterion disagrees with mul S_K", {}, {{"S_K", x.b.krein}}};
    return std::nullopt;
}

Outcome check_krein_equals_friedrichs(Context& x) {
    if (x.t.domain().is_zero()) return std::nullopt;
    const KreinFriedrichsResult r = krein_equals_friedrichs(x.s);
    if (r.decision == Decision::undecided) return std::nullopt;
    const LinearRelation kg = routes::krein_weak(x.s, *r.gamma);
    if ((kg == x.b.friedrichs) != (r.decision == Decision::equal)) {
        return Witness{"decision at the exact bound disagrees with the graphs", {}, {{"S_K,gamma", kg}}};
    }
    return std::nullopt;
}

struct Entry {
    CheckInfo info;
    std::function<Outcome(Context&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{"generator-soundness", {"harness.generator-soundness"}}, check_generator},
        {{"adjoint-involution", {"relations.involution"}}, check_involution},
        {{"adjoint-inverse-exchange", {"relations.exchange"}}, check_exchange},
        {{"adjoint-parts-duality", {"relations.parts-duality"}}, check_parts_duality},
        {{"compose-associative", {"relations.compose-associative"}}, check_compose},
        {{"regular-singular-decomposition", {"relations.regular-singular"}}, check_reg_sing},
        {{"shift-roundtrip", {"relations.shift-roundtrip"}}, check_shift},
        {{"repmap-certificate", {"forms.certificate"}}, check_certificate},
        {{"repmap-independence", {"forms.repmap-independence"}}, check_repmap_independence},
        {{"dual-pair", {"forms.dual-pair"}}, check_dual_pair},
        {{"companion-mul", {"forms.mul-companion"}}, check_companion_mul},
        {{"domJstar-inequality", {"forms.domJstar-criterion"}}, check_domj_inequality},
        {{"form-extends", {"forms.extends-form"}}, check_form_extends},
        {{"adjoint-form-identity", {"forms.adjoint-form-identity"}}, check_adjoint_form},
        {{"inverse-duality-repmap", {"forms.inverse-duality"}}, check_inverse_repmap},
        {{"friedrichs-routes", {"extensions.extension"}}, check_friedrichs_routes},
        {{"krein-routes", {"extensions.extension"}}, check_krein_routes},
        {{"krein-lower-bound", {"extensions.extension"}}, check_krein_bound},
        {{"translation-invariance", {"extensions.translation-invariance"}}, check_translation},
        {{"codding-identity", {"extensions.inverse-duality"}}, check_codding},
        {{"mul-identities", {"extensions.mul-parts"}}, check_mul_identities},
        {{"order-interval", {"extensions.order"}}, check_order_interval},
        {{"extremal-samples-ordered", {"extensions.order"}}, check_samples_ordered},
        {{"extremality-equivalence", {"extensions.extremality-equivalence"}}, check_extremality},
        {{"numrange-zero", {"extensions.numrange-zero"}}, check_numrange_zero},
        {{"extension-repmap-independence", {"extensions.repmap-independence"}}, check_extension_repmaps},
        {{"friedrichs-half", {"extensions.friedrichs-half"}}, check_friedrichs_half},
        {{"krein-half", {"extensions.krein-half"}}, check_krein_half},
        {{"krein-operator-criterion", {"extensions.mul-parts"}}, check_krein_operator},
        {{"krein-equals-friedrichs", {"extensions.extension"}}, check_krein_equals_friedrichs},
    };
    return list;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

const std::vector<std::string>& invariant_catalog() {
    static const std::vector<std::string> ids = {
        "relations.involution",
        "relations.exchange",
        "relations.parts-duality",
        "relations.compose-associative",
        "relations.regular-singular",
        "relations.shift-roundtrip",
        "forms.certificate",
        "forms.repmap-independence",
        "forms.dual-pair",
        "forms.mul-companion",
        "forms.domJstar-criterion",
        "forms.extends-form",
        "forms.adjoint-form-identity",
        "forms.inverse-duality",
        "extensions.extension",
        "extensions.translation-invariance",
        "extensions.inverse-duality",
        "extensions.mul-parts",
        "extensions.order",
        "extensions.extremality-equivalence",
        "extensions.numrange-zero",
        "extensions.repmap-independence",
        "extensions.friedrichs-half",
        "extensions.krein-half",
        "harness.generator-soundness",
    };
    return ids;
}

std::vector<CheckResult> verify_all(const LinearRelation& s, const Rational& c, const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    std::optional<Context> ctx;
    std::string setup_error;
    try {
        ctx.emplace(Context{s, c, opts, opts.bundle ? *opts.bundle : compute_bundle(s, c), adjoint(s),
                            form_of_relation(s), {}, {}, {}});
        Rng rng(opts.seed ^ 0xe17e4d5ULL);
        for (std::size_t i = 0; i < opts.random_extensions; ++i) {
            LinearRelation h = random_selfadjoint_extension(s, rng);
            if (std::find(ctx->random_ext.begin(), ctx->random_ext.end(), h) == ctx->random_ext.end())
                ctx->random_ext.push_back(std::move(h));
        }
        ctx->engineered = engineered_non_extremal(s, c, opts.engineered, rng);
        ctx->samples = sample_extremal(s, c, opts.extremal_samples, opts.seed ^ 0x5a3b1eULL);
    } catch (const std::exception& e) {
        ctx.reset();
        setup_error = e.what();
    }
    for (const auto& e : entries()) {
        CheckResult r{e.info.name, true, std::nullopt};
        if (!ctx) {
            r.passed = false;
            r.witness = Witness{"setup failed: " + setup_error, {}, {{"S", s}}};
        } else {
            try {
                r.witness = e.run(*ctx);
                r.passed = !r.witness.has_value();
            } catch (const std::exception& ex) {
                r.passed = false;
                r.witness = Witness{std::string("exception: ") + ex.what(), {}, {{"S", s}}};
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------

bool InstanceReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
}

std::size_t SuiteReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(instances.begin(), instances.end(), [](const InstanceReport& r) { return !r.passed(); }));
}

std::string SuiteReport::summary() const {
    const std::size_t n = instances.size();
    const std::size_t f = failures();
    return std::to_string(n - f) + "/" + std::to_string(n) + " instances, " + std::to_string(f) + " failures";
}

std::size_t harness_threads() {
    if (const char* env = std::getenv("RELCALC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(std::size_t count, std::size_t dim_lo, std::size_t dim_hi, std::uint64_t seed,
                      std::size_t threads) {
    if (dim_lo < 1 || dim_hi < dim_lo) throw PreconditionError("run_suite: need 1 <= lo <= hi");
    SuiteReport report;
    report.instances.resize(count);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            InstanceReport& r = report.instances[i];
            r.index = i;
            r.spec = spec_for(seed + i, dim_lo + i % (dim_hi - dim_lo + 1));
            try {
                const Instance inst = random_semibounded(r.spec);
                r.s = inst.s;
                r.c = inst.c;
                VerifyOptions opts;
                opts.seed = r.spec.seed;
                r.checks = verify_all(inst.s, inst.c, opts);
            } catch (const std::exception& e) {
                r.checks = {{"generator-soundness", false, Witness{e.what(), {}, {}}}};
            }
        }
    };
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return report;
}

}  // namespace relcalc
