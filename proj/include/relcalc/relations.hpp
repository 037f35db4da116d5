#pragma once

#include <utility>

#include "relcalc/spaces.hpp"

namespace relcalc {

/// A linear relation from H to K, identified with its graph in H (+) K.
/// Graph vectors are concatenations [f | g] with f in H and g in K.
class LinearRelation {
public:
    LinearRelation() = default;
    /// Span of the columns of `generators` ((dim H + dim K) x k).
    LinearRelation(InnerProductSpace from, InnerProductSpace to, const RatMatrix& generators);

    static LinearRelation from_pairs(const InnerProductSpace& from, const InnerProductSpace& to,
                                     const std::vector<std::pair<Vector, Vector>>& pairs);
    /// Graph of x -> a x on the whole of H.
    static LinearRelation from_matrix(const InnerProductSpace& from, const InnerProductSpace& to,
                                      const RatMatrix& a);
    /// Graph of x -> a x restricted to `domain`.
    static LinearRelation operator_on(const Subspace& domain, const InnerProductSpace& to,
                                      const RatMatrix& a);
    static LinearRelation identity(const InnerProductSpace& h);
    /// dom x mul: every pair {f, g} with f in dom and g in mul.
    static LinearRelation product(const Subspace& dom, const Subspace& mul);

    const InnerProductSpace& from() const { return from_; }
    const InnerProductSpace& to() const { return to_; }
    const Subspace& graph() const { return graph_; }
    std::size_t dim() const { return graph_.dim(); }
    bool is_square() const { return from_ == to_; }

    /// First / second components of the canonical graph basis.
    RatMatrix f_part() const { return graph_.basis().top_rows(from_.dim()); }
    RatMatrix g_part() const { return graph_.basis().bottom_rows(to_.dim()); }

    bool contains(const Vector& f, const Vector& g) const { return graph_.contains(concat(f, g)); }
    /// Graph inclusion this ⊆ other.
    bool contains(const LinearRelation& other) const;

    friend bool operator==(const LinearRelation& a, const LinearRelation& b) {
        return a.graph_ == b.graph_ && a.from_ == b.from_ && a.to_ == b.to_;
    }

private:
    InnerProductSpace from_;
    InnerProductSpace to_;
    Subspace graph_;
};

struct RelationParts {
    Subspace dom, ran, ker, mul;
};

RelationParts parts(const LinearRelation& t);
Subspace dom(const LinearRelation& t);
Subspace ran(const LinearRelation& t);
Subspace ker(const LinearRelation& t);
Subspace mul(const LinearRelation& t);

/// Some g with {f, g} in T, or nullopt when f is not in dom T.
std::optional<Vector> lift(const LinearRelation& t, const Vector& f);

LinearRelation adjoint(const LinearRelation& t);
LinearRelation inverse(const LinearRelation& t);
/// {f, g + c f}; T - c is shift(T, -c).
LinearRelation shift(const LinearRelation& t, const Rational& c);
/// {f, a g}.
LinearRelation scale(const LinearRelation& t, const Rational& a);
/// R T = {{f, g} : {f, k} in T, {k, g} in R for some k}.
LinearRelation compose(const LinearRelation& r, const LinearRelation& t);
/// Graph sum (span of the union of graphs).
LinearRelation hsum(const LinearRelation& s, const LinearRelation& t);
/// Operator-wise sum {f, g + h} with {f, g} in S and {f, h} in T.
LinearRelation add(const LinearRelation& s, const LinearRelation& t);
/// {f, m g}; m maps the codomain of T into `target`.
LinearRelation apply_left(const RatMatrix& m, const LinearRelation& t, const InnerProductSpace& target);
/// {{f, g} in T : f in d}.
LinearRelation restrict(const LinearRelation& t, const Subspace& d);

/// (I - P) T with P the orthogonal projection onto mul T.
LinearRelation regular_part(const LinearRelation& t);
/// P T.
LinearRelation singular_part(const LinearRelation& t);

/// Every relation between finite-dimensional spaces is closed; T** is T.
/// The check is kept so the identity is asserted rather than assumed.
LinearRelation closure(const LinearRelation& t);

/// ker(T - c) for a relation on one space.
Subspace eigenspace(const LinearRelation& t, const Rational& c);
/// {{h, c h} : h in ker(S* - c)}.
LinearRelation defect_graph(const LinearRelation& s, const Rational& c);

bool is_symmetric(const LinearRelation& s);
bool is_selfadjoint(const LinearRelation& s);

/// Outcome of testing (f', f) >= c (f, f) over the graph of S.
struct NonnegResult {
    bool holds = true;
    /// graph element [f | f'] with (f', f) < c (f, f) when `holds` is false
    Vector witness;
    /// (f', f) - c (f, f) at the witness
    Rational defect;
};
NonnegResult is_nonneg_above(const LinearRelation& s, const Rational& c);

/// dom S ⊥ ran S.
bool numerical_range_zero(const LinearRelation& s);

/// A canonical graph basis vector in exactly one of a and b, if any.
std::optional<Vector> graph_difference(const LinearRelation& a, const LinearRelation& b);

}  // namespace relcalc
