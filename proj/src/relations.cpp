#include "relcalc/relations.hpp"

#include "relcalc/errors.hpp"

namespace relcalc {

namespace {

void require_square(const LinearRelation& t, const char* where) {
    if (!t.is_square()) throw PreconditionError(std::string(where) + ": relation must act in one space");
}

RatMatrix neg(const RatMatrix& m) { return Rational(-1) * m; }

}  // namespace

LinearRelation::LinearRelation(InnerProductSpace from, InnerProductSpace to, const RatMatrix& generators)
    : from_(std::move(from)), to_(std::move(to)),
      graph_(InnerProductSpace::product(from_, to_), generators.cols() == 0
                                                         ? RatMatrix(from_.dim() + to_.dim(), 0)
                                                         : generators) {}

LinearRelation LinearRelation::from_pairs(const InnerProductSpace& from, const InnerProductSpace& to,
                                          const std::vector<std::pair<Vector, Vector>>& pairs) {
    std::vector<Vector> cols;
    cols.reserve(pairs.size());
    for (const auto& [f, g] : pairs) {
        if (f.size() != from.dim() || g.size() != to.dim()) {
            throw PreconditionError("graph pair has the wrong length");
        }
        cols.push_back(concat(f, g));
    }
    return LinearRelation(from, to, RatMatrix::from_columns(from.dim() + to.dim(), cols));
}

LinearRelation LinearRelation::from_matrix(const InnerProductSpace& from, const InnerProductSpace& to,
                                           const RatMatrix& a) {
    return operator_on(Subspace::full(from), to, a);
}

LinearRelation LinearRelation::operator_on(const Subspace& domain, const InnerProductSpace& to,
                                           const RatMatrix& a) {
    if (a.rows() != to.dim() || a.cols() != domain.ambient_dim()) {
        throw PreconditionError("operator matrix has the wrong shape");
    }
    return LinearRelation(domain.ambient(), to, vstack(domain.basis(), a * domain.basis()));
}

LinearRelation LinearRelation::identity(const InnerProductSpace& h) {
    return from_matrix(h, h, RatMatrix::identity(h.dim()));
}

LinearRelation LinearRelation::product(const Subspace& dom, const Subspace& mul) {
    const RatMatrix gens = block_diag(dom.basis(), mul.basis());
    return LinearRelation(dom.ambient(), mul.ambient(), gens);
}

bool LinearRelation::contains(const LinearRelation& other) const {
    if (!(from_ == other.from_) || !(to_ == other.to_)) {
        throw PreconditionError("relation inclusion across different spaces");
    }
    return graph_.contains(other.graph_);
}

// ---------------------------------------------------------------------------

Subspace dom(const LinearRelation& t) { return Subspace(t.from(), t.f_part()); }
Subspace ran(const LinearRelation& t) { return Subspace(t.to(), t.g_part()); }

Subspace ker(const LinearRelation& t) {
    return Subspace(t.from(), t.f_part() * kernel(t.g_part()));
}

Subspace mul(const LinearRelation& t) {
    return Subspace(t.to(), t.g_part() * kernel(t.f_part()));
}

RelationParts parts(const LinearRelation& t) { return {dom(t), ran(t), ker(t), mul(t)}; }

std::optional<Vector> lift(const LinearRelation& t, const Vector& f) {
    const auto a = solve(t.f_part(), f);
    if (!a) return std::nullopt;
    return t.g_part() * *a;
}

LinearRelation adjoint(const LinearRelation& t) {
    // {h, k} in T*  <=>  (g, h)_K - (f, k)_H = 0 for each graph basis element {f, g}
    const RatMatrix pairing =
        hstack(t.g_part().transpose() * t.to().gram(), neg(t.f_part().transpose() * t.from().gram()));
    return LinearRelation(t.to(), t.from(), kernel(pairing));
}

LinearRelation inverse(const LinearRelation& t) {
    return LinearRelation(t.to(), t.from(), vstack(t.g_part(), t.f_part()));
}

LinearRelation shift(const LinearRelation& t, const Rational& c) {
    require_square(t, "shift");
    return LinearRelation(t.from(), t.to(), vstack(t.f_part(), t.g_part() + c * t.f_part()));
}

LinearRelation scale(const LinearRelation& t, const Rational& a) {
    return LinearRelation(t.from(), t.to(), vstack(t.f_part(), a * t.g_part()));
}

LinearRelation compose(const LinearRelation& r, const LinearRelation& t) {
    require_same_space(t.to(), r.from(), "compose");
    const std::size_t n = t.from().dim(), l = r.to().dim();
    // T-coefficients a and R-coefficients b with matching middle component
    const RatMatrix k = kernel(hstack(t.g_part(), neg(r.f_part())));
    if (k.cols() == 0) return LinearRelation(t.from(), r.to(), RatMatrix(n + l, 0));
    const RatMatrix a = k.top_rows(t.dim());
    const RatMatrix b = k.bottom_rows(r.dim());
    return LinearRelation(t.from(), r.to(), vstack(t.f_part() * a, r.g_part() * b));
}

LinearRelation hsum(const LinearRelation& s, const LinearRelation& t) {
    require_same_space(s.from(), t.from(), "hsum");
    require_same_space(s.to(), t.to(), "hsum");
    return LinearRelation(s.from(), s.to(), hstack(s.graph().basis(), t.graph().basis()));
}

LinearRelation add(const LinearRelation& s, const LinearRelation& t) {
    require_same_space(s.from(), t.from(), "add");
    require_same_space(s.to(), t.to(), "add");
    const std::size_t n = s.from().dim(), m = s.to().dim();
    const RatMatrix k = kernel(hstack(s.f_part(), neg(t.f_part())));
    if (k.cols() == 0) return LinearRelation(s.from(), s.to(), RatMatrix(n + m, 0));
    const RatMatrix a = k.top_rows(s.dim());
    const RatMatrix b = k.bottom_rows(t.dim());
    return LinearRelation(s.from(), s.to(), vstack(s.f_part() * a, s.g_part() * a + t.g_part() * b));
}

LinearRelation apply_left(const RatMatrix& m, const LinearRelation& t, const InnerProductSpace& target) {
    if (m.cols() != t.to().dim() || m.rows() != target.dim()) {
        throw PreconditionError("apply_left: matrix shape does not match the spaces");
    }
    return LinearRelation(t.from(), target, vstack(t.f_part(), m * t.g_part()));
}

LinearRelation restrict(const LinearRelation& t, const Subspace& d) {
    require_same_space(t.from(), d.ambient(), "restrict");
    const Subspace box = LinearRelation::product(d, Subspace::full(t.to())).graph();
    const Subspace g = intersect(t.graph(), box);
    return LinearRelation(t.from(), t.to(), g.basis());
}

LinearRelation regular_part(const LinearRelation& t) {
    const RatMatrix p = mul(t).projector();
    return apply_left(RatMatrix::identity(t.to().dim()) - p, t, t.to());
}

LinearRelation singular_part(const LinearRelation& t) {
    return apply_left(mul(t).projector(), t, t.to());
}

LinearRelation closure(const LinearRelation& t) {
    if (!(adjoint(adjoint(t)) == t)) throw CrossCheckError("closure: T** differs from T");
    return t;
}

Subspace eigenspace(const LinearRelation& t, const Rational& c) { return ker(shift(t, -c)); }

LinearRelation defect_graph(const LinearRelation& s, const Rational& c) {
    require_square(s, "defect_graph");
    const Subspace k = eigenspace(adjoint(s), c);
    return LinearRelation(s.from(), s.to(), vstack(k.basis(), c * k.basis()));
}

bool is_symmetric(const LinearRelation& s) {
    require_square(s, "is_symmetric");
    if (s.dim() == 0) return true;
    // S ⊆ S*  <=>  (g_i, f_j) = (f_i, g_j) for all graph basis pairs
    const RatMatrix& g = s.from().gram();
    const RatMatrix cross = s.g_part().transpose() * g * s.f_part();
    return cross == cross.transpose();
}

bool is_selfadjoint(const LinearRelation& s) {
    require_square(s, "is_selfadjoint");
    return adjoint(s) == s;
}

NonnegResult is_nonneg_above(const LinearRelation& s, const Rational& c) {
    require_square(s, "is_nonneg_above");
    NonnegResult out;
    if (s.dim() == 0) return out;
    const RatMatrix& g = s.from().gram();
    const RatMatrix f = s.f_part();
    const RatMatrix m = s.g_part().transpose() * g * f - c * (f.transpose() * g * f);
    const RatMatrix sym = Rational(1, 2) * (m + m.transpose());
    const auto res = ldl_psd_certificate(sym);
    if (const auto* bad = std::get_if<NotPsd>(&res)) {
        out.holds = false;
        out.witness = s.graph().basis() * bad->witness;
        out.defect = bad->value;
    }
    return out;
}

bool numerical_range_zero(const LinearRelation& s) {
    require_square(s, "numerical_range_zero");
    if (s.dim() == 0) return true;
    return (s.f_part().transpose() * s.from().gram() * s.g_part()).is_zero();
}

std::optional<Vector> graph_difference(const LinearRelation& a, const LinearRelation& b) {
    for (const auto& v : a.graph().vectors()) {
        if (!b.graph().contains(v)) return v;
    }
    for (const auto& v : b.graph().vectors()) {
        if (!a.graph().contains(v)) return v;
    }
    return std::nullopt;
}

}  // namespace relcalc
