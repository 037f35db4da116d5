#include "relcalc/forms.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "relcalc/errors.hpp"

namespace relcalc {

QuadraticForm::QuadraticForm(Subspace domain, RatMatrix matrix)
    : domain_(std::move(domain)), matrix_(std::move(matrix)) {
    const std::size_t k = domain_.dim();
    if (matrix_.rows() != k || matrix_.cols() != k) throw PreconditionError("form matrix has the wrong size");
    if (!matrix_.is_symmetric()) throw PreconditionError("form matrix is not symmetric");
}

Rational QuadraticForm::operator()(const Vector& x, const Vector& y) const {
    const auto cx = domain_.coordinates(x);
    const auto cy = domain_.coordinates(y);
    if (!cx || !cy) throw PreconditionError("form evaluated outside its domain");
    return bilinear(matrix_, *cx, *cy);
}

QuadraticForm QuadraticForm::restrict_to(const Subspace& d) const {
    const RatMatrix c = coordinates_in(d, domain_);
    return QuadraticForm(d, c.transpose() * matrix_ * c);
}

RatMatrix coordinates_in(const Subspace& sub, const Subspace& super) {
    require_same_space(sub.ambient(), super.ambient(), "coordinates_in");
    std::vector<Vector> cols;
    cols.reserve(sub.dim());
    for (const auto& v : sub.vectors()) {
        auto x = super.coordinates(v);
        if (!x) throw PreconditionError("subspace is not contained in the form domain");
        cols.push_back(std::move(*x));
    }
    return RatMatrix::from_columns(super.dim(), cols);
}

// ---------------------------------------------------------------------------

RatMatrix RepresentingMap::represented() const {
    return matrix.transpose() * codomain.gram() * matrix;
}

bool RepresentingMap::represents(const QuadraticForm& t) const {
    return t.domain() == domain && represented() == t.shifted(c);
}

LinearRelation RepresentingMap::as_relation() const {
    return LinearRelation(domain.ambient(), codomain, vstack(domain.basis(), matrix));
}

Vector RepresentingMap::apply(const Vector& x) const {
    const auto cx = domain.coordinates(x);
    if (!cx) throw PreconditionError("representing map applied outside its domain");
    return matrix * *cx;
}

// ---------------------------------------------------------------------------

QuadraticForm form_of_relation(const LinearRelation& s) {
    if (!is_symmetric(s)) throw PreconditionError("form_of_relation: relation is not symmetric");
    const Subspace d = dom(s);
    // the value must not depend on the lift; mul S ⊥ dom S makes sure of it
    if (!orthogonal(mul(s), d)) throw CrossCheckError("form_of_relation: lift dependence");
    std::vector<Vector> lifts;
    lifts.reserve(d.dim());
    for (const auto& b : d.vectors()) lifts.push_back(*lift(s, b));
    const RatMatrix l = RatMatrix::from_columns(s.to().dim(), lifts);
    const RatMatrix m = l.transpose() * s.from().gram() * d.basis();
    if (!m.is_symmetric()) throw CrossCheckError("form_of_relation: form matrix not symmetric");
    return QuadraticForm(d, m);
}

BoundResult certify_lower_bound(const QuadraticForm& t, const Rational& c) {
    BoundResult out;
    auto res = ldl_psd_certificate(t.shifted(c));
    if (auto* cert = std::get_if<PsdCertificate>(&res)) {
        out.cert = LowerBoundCert{c, std::move(*cert)};
    } else {
        const auto& bad = std::get<NotPsd>(res);
        out.witness = t.domain().basis() * bad.witness;
        out.defect = bad.value;
    }
    return out;
}

double approximate_lower_bound(const QuadraticForm& t) {
    const std::size_t k = t.domain().dim();
    if (k == 0) throw PreconditionError("lower bound of a form with empty domain");
    const RatMatrix g = t.domain_gram();
    Eigen::MatrixXd a(k, k), b(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            a(i, j) = t.matrix()(i, j).get_d();
            b(i, j) = g(i, j).get_d();
        }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

namespace {

// Continued-fraction convergents of x with denominators up to `max_den`.
std::vector<Rational> convergents(double x, long max_den) {
    std::vector<Rational> out;
    if (!std::isfinite(x)) return out;
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
    mpz_class k_prev = 0, k = 1;
    double rest = x - std::floor(x);
    out.emplace_back(h, k);
    for (int step = 0; step < 40 && rest > 1e-12; ++step) {
        const double inv = 1.0 / rest;
        const long a = static_cast<long>(std::floor(inv));
        rest = inv - std::floor(inv);
        const mpz_class h_next = a * h + h_prev;
        const mpz_class k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        Rational r(h, k);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::optional<Rational> exact_lower_bound(const QuadraticForm& t) {
    const std::size_t k = t.domain().dim();
    if (k == 0) throw PreconditionError("lower bound of a form with empty domain");
    const double est = approximate_lower_bound(t);
    auto cands = convergents(est, 1000000);
    // the last convergents are the most accurate
    for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
        const Rational& r = *it;
        if (rank(t.shifted(r)) == k) continue;
        if (certify_lower_bound(t, r).ok()) return r;
    }
    return std::nullopt;
}

BoundInterval bound_bisect(const QuadraticForm& t, const Rational& width) {
    if (t.domain().dim() == 0) throw PreconditionError("bound_bisect: empty domain");
    if (width <= 0) throw PreconditionError("bound_bisect: width must be positive");
    BoundInterval out;
    out.approximate = approximate_lower_bound(t);
    if (auto g = exact_lower_bound(t)) {
        out.lower = *g;
        out.upper = *g + width;
        out.exact = true;
        return out;
    }
    // smallest Rayleigh quotient over basis vectors bounds the bound from above
    const RatMatrix g = t.domain_gram();
    Rational hi = t.matrix()(0, 0) / g(0, 0);
    for (std::size_t i = 1; i < g.rows(); ++i) hi = std::min(hi, Rational(t.matrix()(i, i) / g(i, i)));
    if (certify_lower_bound(t, hi).ok()) {
        out.lower = hi;
        out.upper = hi + width;
        out.exact = true;
        return out;
    }
    // bracket near the estimate first, then fall back to plain bisection
    const Rational h = width / 2;
    Rational lo = h * Rational(mpz_class(static_cast<long>(std::floor(out.approximate / h.get_d())))) - h;
    if (!certify_lower_bound(t, lo).ok()) {
        lo = -1;
        while (!certify_lower_bound(t, lo).ok()) lo *= 2;
    }
    if (lo + width < hi && !certify_lower_bound(t, lo + width).ok()) hi = lo + width;
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (certify_lower_bound(t, mid).ok()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.lower = lo;
    out.upper = hi;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_certified(const QuadraticForm& t, const Rational& c) {
    const auto res = certify_lower_bound(t, c);
    if (!res.ok()) {
        throw CertificationError("lower bound " + to_string(c) + " cannot be certified", res.witness);
    }
}

InnerProductSpace weighted_space(const Vector& weights) {
    if (weights.empty()) return InnerProductSpace(std::size_t{0});
    return InnerProductSpace(RatMatrix::diagonal(weights));
}

}  // namespace

RepresentingMap repmap_ldl(const QuadraticForm& t, const Rational& c) {
    const auto res = certify_lower_bound(t, c);
    if (!res.ok()) throw CertificationError("lower bound " + to_string(c) + " cannot be certified", res.witness);
    const PsdCertificate& cert = res.cert->certificate;
    const std::size_t k = t.domain().dim();
    // M - cG = P L D L^T P^T, so x -> (L^T P^T x) restricted to D > 0
    const RatMatrix factor = cert.lower.transpose() * cert.permutation().transpose();
    std::vector<std::size_t> kept;
    Vector weights;
    for (std::size_t i = 0; i < k; ++i) {
        if (cert.diag[i] > 0) {
            kept.push_back(i);
            weights.push_back(cert.diag[i]);
        }
    }
    RepresentingMap q{c, t.domain(), weighted_space(weights), factor.select_rows(kept)};
    if (q.matrix.rows() == 0) q.matrix = RatMatrix(0, k);
    if (!q.represents(t)) throw CrossCheckError("repmap_ldl: certificate identity fails");
    return q;
}

RepresentingMap repmap_quotient(const LinearRelation& s, const Rational& c) {
    const QuadraticForm t = form_of_relation(s);
    require_certified(t, c);
    const LinearRelation sc = shift(s, -c);
    const Subspace r = ran(sc);
    const Subspace n = intersect(r, mul(adjoint(s)));

    // basis of r: n's basis first, then a complement of n inside r
    RatMatrix w = n.basis();
    std::vector<Vector> us;
    for (const auto& v : r.vectors()) {
        RatMatrix trial = hstack(w, RatMatrix::from_columns(r.ambient_dim(), {v}));
        if (rank(trial) == trial.cols()) {
            w = std::move(trial);
            us.push_back(v);
        }
    }
    const std::size_t nd = n.dim(), qd = us.size(), k = t.domain().dim();

    RatMatrix qm(qd, k);
    const auto basis = t.domain().vectors();
    for (std::size_t j = 0; j < k; ++j) {
        const Vector image = *lift(sc, basis[j]);
        const auto coords = *solve(w, image);
        for (std::size_t i = 0; i < qd; ++i) qm(i, j) = coords[nd + i];
    }

    // induced inner product ([u_i], [u_l]) = (u_i, psi_l) with {psi_l, u_l} in S - c
    const LinearRelation inv = inverse(sc);
    RatMatrix gram(qd, qd);
    std::vector<Vector> psis;
    for (const auto& u : us) psis.push_back(*lift(inv, u));
    for (std::size_t i = 0; i < qd; ++i)
        for (std::size_t l = 0; l < qd; ++l) gram(i, l) = s.from().inner(us[i], psis[l]);

    std::optional<InnerProductSpace> codomain;
    try {
        codomain.emplace(qd == 0 ? InnerProductSpace(std::size_t{0}) : InnerProductSpace(gram));
    } catch (const PreconditionError& e) {
        throw CrossCheckError(std::string("repmap_quotient: induced inner product invalid: ") + e.what());
    }
    RepresentingMap q{c, t.domain(), *codomain, qm};
    if (!q.represents(t)) throw CrossCheckError("repmap_quotient: certificate identity fails");
    return q;
}

LinearRelation companion(const LinearRelation& s, const RepresentingMap& q) {
    if (!q.represents(form_of_relation(s))) {
        throw PreconditionError("companion: map does not represent t(S) - c");
    }
    const RatMatrix f = s.f_part();
    RatMatrix qf(q.codomain.dim(), s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
        const Vector col = q.apply(f.column(j));
        for (std::size_t i = 0; i < qf.rows(); ++i) qf(i, j) = col[i];
    }
    const LinearRelation j(q.codomain, s.to(), vstack(qf, s.g_part() - q.c * f));
    const LinearRelation qrel = q.as_relation();
    if (!adjoint(j).contains(qrel) || !adjoint(qrel).contains(j)) {
        throw CrossCheckError("companion: Q_c and J_c do not form a dual pair");
    }
    return j;
}

LinearRelation regular_adjoint(const LinearRelation& j) { return regular_part(adjoint(j)); }

QuadraticForm form_s_of(const LinearRelation& s, const Rational& c) {
    const QuadraticForm t = form_of_relation(s);
    const RepresentingMap q = repmap_ldl(t, c);
    const LinearRelation r = regular_adjoint(companion(s, q));
    const Subspace d = dom(r);
    std::vector<Vector> images;
    for (const auto& v : d.vectors()) images.push_back(*lift(r, v));
    const RatMatrix ri = RatMatrix::from_columns(q.codomain.dim(), images);
    const RatMatrix m = c * d.gram() + ri.transpose() * q.codomain.gram() * ri;
    QuadraticForm out(d, m);
    if (!certify_lower_bound(out, c).ok()) throw CrossCheckError("form_s_of: s(S) is not bounded below by c");
    return out;
}

bool ran_adjoint_test(const LinearRelation& s, const Rational& c, const Vector& phi) {
    const QuadraticForm t = form_of_relation(s);
    require_certified(t, c);
    if (phi.size() != s.from().dim()) throw PreconditionError("vector has the wrong length");
    const Vector v = t.domain().basis().transpose() * (s.from().gram() * phi);
    return solve(t.shifted(c), v).has_value();
}

bool ran_adjoint_by_inequality(const LinearRelation& s, const Rational& c, const Vector& phi) {
    const bool by_range = ran_adjoint_test(s, c, phi);
    const RepresentingMap q = repmap_ldl(form_of_relation(s), c);
    const bool direct = ran(adjoint(q.as_relation())).contains(phi);
    if (by_range != direct) throw CrossCheckError("ran_adjoint_by_inequality: range test disagrees with ran Q_c*");
    return by_range;
}

bool dom_adjoint_companion_test(const LinearRelation& s, const Rational& c, const Vector& psi) {
    require_certified(form_of_relation(s), c);
    return ran_adjoint_test(inverse(shift(s, -c)), 0, psi);
}

RepresentingMap stack_maps(const RepresentingMap& q1, const RepresentingMap& q2, const Rational& c) {
    if (!(q1.domain == q2.domain)) throw PreconditionError("stack_maps: domains differ");
    return RepresentingMap{c, q1.domain, InnerProductSpace::product(q1.codomain, q2.codomain),
                           vstack(q1.matrix, q2.matrix)};
}

LebesgueParts lebesgue_form(const RepresentingMap& q, const LinearRelation& qbar) {
    if (!(qbar.from() == q.domain.ambient()) || !(qbar.to() == q.codomain)) {
        throw PreconditionError("lebesgue_form: relation lives in different spaces");
    }
    if (!qbar.contains(q.as_relation()) || !(dom(qbar) == q.domain)) {
        throw PreconditionError("lebesgue_form: relation must extend the map with the same domain");
    }
    const RatMatrix p = mul(qbar).projector();
    const RatMatrix& g = q.codomain.gram();
    const RatMatrix reg = (RatMatrix::identity(p.rows()) - p) * q.matrix;
    const RatMatrix sing = p * q.matrix;
    const RatMatrix treg = reg.transpose() * g * reg;
    const RatMatrix tsing = sing.transpose() * g * sing;
    if (!(treg + tsing == q.represented())) throw CrossCheckError("lebesgue_form: parts do not add up");
    return {QuadraticForm(q.domain, q.c * q.domain.gram() + treg), QuadraticForm(q.domain, tsing)};
}

}  // namespace relcalc
