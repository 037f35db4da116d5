#pragma once

#include "relcalc/relations.hpp"

namespace relcalc {

/// Symmetric bilinear form t[Bx, By] = x^T M y on the subspace spanned by
/// the columns of B (the canonical basis of `domain`).
class QuadraticForm {
public:
    QuadraticForm() = default;
    QuadraticForm(Subspace domain, RatMatrix matrix);

    const Subspace& domain() const { return domain_; }
    const InnerProductSpace& space() const { return domain_.ambient(); }
    const RatMatrix& matrix() const { return matrix_; }

    /// t[x, y] for ambient vectors x, y in the domain.
    Rational operator()(const Vector& x, const Vector& y) const;
    /// B^T G B.
    RatMatrix domain_gram() const { return domain_.gram(); }
    /// Matrix of t - c.
    RatMatrix shifted(const Rational& c) const { return matrix_ - c * domain_gram(); }
    /// Restriction to a subspace of the domain.
    QuadraticForm restrict_to(const Subspace& d) const;

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.domain_ == b.domain_ && a.matrix_ == b.matrix_;
    }

private:
    Subspace domain_;
    RatMatrix matrix_;
};

/// Coordinates of the columns of `sub` in the basis of `super`; throws if
/// sub is not contained in super.
RatMatrix coordinates_in(const Subspace& sub, const Subspace& super);

/// Q_c: coordinates of dom -> codomain with (Q x, Q y)_codomain = (t - c)[x, y].
/// The matrix acts on domain coordinates (columns of the canonical basis).
struct RepresentingMap {
    Rational c;
    Subspace domain;
    InnerProductSpace codomain;
    RatMatrix matrix;

    /// Q^T G_codomain Q.
    RatMatrix represented() const;
    bool represents(const QuadraticForm& t) const;
    /// Graph {(B x, Q x)} from H to the codomain.
    LinearRelation as_relation() const;
    /// Q applied to an ambient vector of the domain.
    Vector apply(const Vector& x) const;
};

struct LowerBoundCert {
    Rational c;
    PsdCertificate certificate;
};

/// Certification outcome; on failure `witness` is an ambient vector in the
/// form domain with t[w] < c (w, w).
struct BoundResult {
    std::optional<LowerBoundCert> cert;
    Vector witness;
    Rational defect;
    bool ok() const { return cert.has_value(); }
};

/// Interval [lower, upper] with certify(lower) succeeding and certify(upper)
/// failing. `exact` means the bound itself equals `lower`.
struct BoundInterval {
    Rational lower;
    Rational upper;
    bool exact = false;
    /// generalized eigenvalue estimate, display only
    double approximate = 0.0;
};

/// t(S)[f, g] = (f', g) on dom S; requires S symmetric.
QuadraticForm form_of_relation(const LinearRelation& s);
BoundResult certify_lower_bound(const QuadraticForm& t, const Rational& c);
/// Floating-point smallest generalized eigenvalue of (M, B^T G B).
double approximate_lower_bound(const QuadraticForm& t);
/// The lower bound if it is rational and small enough to be recovered from
/// the floating estimate; verified exactly (certified and attained).
std::optional<Rational> exact_lower_bound(const QuadraticForm& t);
BoundInterval bound_bisect(const QuadraticForm& t, const Rational& width);

RepresentingMap repmap_ldl(const QuadraticForm& t, const Rational& c);
/// q_c f = [f' - c f] in ran(S - c) modulo ran(S - c) ∩ mul S*.
RepresentingMap repmap_quotient(const LinearRelation& s, const Rational& c);

/// J_c = {{Q_c f, f' - c f} : {f, f'} in S}.
LinearRelation companion(const LinearRelation& s, const RepresentingMap& q);

/// Orthogonal projection onto mul J_c* applied to J_c*: (J_c*)_reg.
LinearRelation regular_adjoint(const LinearRelation& j);

/// s(S)[f, g] = c (f, g) + ((J_c*)_reg f, (J_c*)_reg g) on dom J_c*.
QuadraticForm form_s_of(const LinearRelation& s, const Rational& c);

/// Exists C with |(y, phi)|^2 <= C (t - c)[y] for all y in dom S; decided by
/// a range test, cross-checked against phi in ran Q_c*.
bool ran_adjoint_by_inequality(const LinearRelation& s, const Rational& c, const Vector& phi);
/// Same test without the cross-check.
bool ran_adjoint_test(const LinearRelation& s, const Rational& c, const Vector& phi);
/// Exists C with |(psi', y')|^2 <= C (y', y) for {y, y'} in S - c; decided
/// through the form of (S - c)^{-1}.
bool dom_adjoint_companion_test(const LinearRelation& s, const Rational& c, const Vector& psi);

/// Stacked map x -> (q1 x, q2 x) into the orthogonal sum of codomains.
RepresentingMap stack_maps(const RepresentingMap& q1, const RepresentingMap& q2, const Rational& c);

/// Lebesgue decomposition of t[x] = (q x, q x) with respect to a relation
/// qbar that contains the graph of q and has the same domain: the regular
/// part uses (I - P) q and the singular part P q, P projecting onto mul qbar.
struct LebesgueParts {
    QuadraticForm regular;
    QuadraticForm singular;
};
LebesgueParts lebesgue_form(const RepresentingMap& q, const LinearRelation& qbar);

}  // namespace relcalc
