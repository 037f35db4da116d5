#pragma once

#include <string>

#include "relcalc/forms.hpp"

namespace relcalc {

/// Individual constructions behind `friedrichs` and `krein`. They do no
/// cross-checking so callers can compare them independently.
namespace routes {

/// c + Q_c* Q_c with Q_c from `q`.
LinearRelation friedrichs_product(const RepresentingMap& q);
/// {{f, f'} in S* : f in dom S}.
LinearRelation friedrichs_adjoint(const LinearRelation& s);
/// S hsum ({0} x mul S*).
LinearRelation friedrichs_weak(const LinearRelation& s);

/// c + J_c J_c*.
LinearRelation krein_product(const LinearRelation& j, const Rational& c);
/// S hsum {{h, c h} : h in ker(S* - c)}.
LinearRelation krein_weak(const LinearRelation& s, const Rational& c);
/// c + ((S - c)^{-1})_F^{-1}, the Friedrichs extension taken at 0.
LinearRelation krein_inverse(const LinearRelation& s, const Rational& c);
/// closure(S) hsum {{h, c h} : h in ker(S* - c)}.
LinearRelation krein_closed(const LinearRelation& s, const Rational& c);

}  // namespace routes

/// Friedrichs extension S_F. All three routes are computed and must agree;
/// throws PreconditionError when S is not symmetric and CertificationError
/// when c is not a lower bound.
LinearRelation friedrichs(const LinearRelation& s, const Rational& c);
/// Same, with the product route built from a given representing map.
LinearRelation friedrichs(const LinearRelation& s, const RepresentingMap& q);

/// Krein type extension S_K,c, all four routes cross-checked.
LinearRelation krein(const LinearRelation& s, const Rational& c);
LinearRelation krein(const LinearRelation& s, const RepresentingMap& q);

/// The symmetric pre-extensions; at finite dimension they already equal
/// the full extensions.
LinearRelation weak_friedrichs(const LinearRelation& s, const Rational& c);
LinearRelation weak_krein(const LinearRelation& s, const Rational& c);

/// H <= K for selfadjoint H, K: dom K ⊆ dom H and t_K - t_H >= 0 on dom K.
struct OrderResult {
    bool leq = true;
    /// dom K vector outside dom H, or a vector of dom K with t_K[w] < t_H[w]
    Vector witness;
};
OrderResult order_leq(const LinearRelation& h, const LinearRelation& k);

struct IntervalCheck {
    bool bounded_below = false;  ///< H >= c
    bool in_interval = false;    ///< S_K,c <= H <= S_F
    bool agrees() const { return bounded_below == in_interval; }
};
/// Both sides of: H >= c  <=>  S_K,c <= H <= S_F.
IntervalCheck extension_interval_check(const LinearRelation& s, const Rational& c, const LinearRelation& h);

struct ExtremalDetail {
    bool definitional = false;
    bool sandwich = false;
    /// dom H vector with positive infimum (or negative form value)
    Vector witness;
    Rational witness_value;
};
/// Both extremality tests, uncompared.
ExtremalDetail extremal_detail(const LinearRelation& h, const LinearRelation& s, const Rational& c);
/// Same, reusing already computed S_F and S_K,c.
ExtremalDetail extremal_detail(const LinearRelation& h, const LinearRelation& s, const Rational& c,
                               const LinearRelation& s_f, const LinearRelation& s_k);
/// Extremality of H with respect to S and c; throws CrossCheckError when
/// the two tests disagree.
bool extremal_check(const LinearRelation& h, const LinearRelation& s, const Rational& c);
/// inf over g in dom S of (t(H) - c)[f - g]; requires H >= c.
Rational extremal_infimum(const LinearRelation& h, const LinearRelation& s, const Rational& c, const Vector& f);

/// c + R* R with R = (J_c*)_reg restricted to D, dom S ⊆ D ⊆ dom J_c*.
LinearRelation extremal_from_domain(const LinearRelation& s, const Rational& c, const Subspace& d);

/// ran(S - c) ∩ mul S* = {0}, cross-checked against mul S_K,c.
bool krein_is_operator(const LinearRelation& s, const Rational& c);

enum class Decision { equal, not_equal, undecided };
std::string to_string(Decision d);

struct KreinFriedrichsResult {
    Decision decision = Decision::undecided;
    /// exact lower bound when it was found
    std::optional<Rational> gamma;
};
/// Whether S_K,gamma = S_F. gamma must be the exact lower bound; when it is
/// not rational (or not recoverable) the answer is undecided.
KreinFriedrichsResult krein_equals_friedrichs(const LinearRelation& s);
KreinFriedrichsResult krein_equals_friedrichs(const LinearRelation& s, const Rational& gamma);

/// The relations generated by t = c + (q., q.) with q an operator and qbar a
/// relation containing its graph with the same domain (qbar plays Q**).
struct FormRelations {
    LinearRelation s_t;  ///< c + qbar* q
    LinearRelation a_t;  ///< c + qbar* qbar
};
FormRelations relations_of_form(const RepresentingMap& q, const LinearRelation& qbar);
FormRelations relations_of_form(const RepresentingMap& q);

/// Everything `analyze`/`extend` report for one (S, c).
struct ExtensionReport {
    LinearRelation input;
    Rational c;
    LinearRelation friedrichs, weak_friedrichs, krein, weak_krein;
    std::vector<std::pair<std::string, bool>> checks;
};
ExtensionReport extension_report(const LinearRelation& s, const Rational& c);

}  // namespace relcalc
