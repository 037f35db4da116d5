#pragma once

#include <memory>

#include "relcalc/linalg.hpp"

namespace relcalc {

/// Finite-dimensional rational inner-product space (x, y) = x^T G y with an
/// explicit Gram matrix G. The Gram is checked positive definite on
/// construction. Copies share the Gram.
class InnerProductSpace {
public:
    /// Q^n with the standard inner product.
    explicit InnerProductSpace(std::size_t dim = 0);
    explicit InnerProductSpace(RatMatrix gram);

    /// H (+) K; block-diagonal Gram, no re-validation needed.
    static InnerProductSpace product(const InnerProductSpace& h, const InnerProductSpace& k);

    std::size_t dim() const { return gram_->rows(); }
    const RatMatrix& gram() const { return *gram_; }
    bool has_identity_gram() const;

    Rational inner(const Vector& x, const Vector& y) const;
    Rational norm2(const Vector& x) const { return inner(x, x); }

    friend bool operator==(const InnerProductSpace& a, const InnerProductSpace& b);

private:
    struct Trusted {};
    InnerProductSpace(Trusted, RatMatrix gram);

    std::shared_ptr<const RatMatrix> gram_;
};

/// H (+) K with the block-diagonal graph inner product
/// <{f,g},{h,k}> = (f,h)_H + (g,k)_K.
struct ProductSpace {
    InnerProductSpace left;
    InnerProductSpace right;

    InnerProductSpace combined() const;
};

/// Linear subspace of an inner-product space, stored canonically: the basis
/// columns are the nonzero rows of rref(B^T). Two subspaces are equal iff
/// their ambient spaces and canonical bases are identical.
class Subspace {
public:
    Subspace() = default;
    /// Span of the columns of `generators` (any number, may be dependent).
    Subspace(InnerProductSpace ambient, const RatMatrix& generators);

    static Subspace span(const InnerProductSpace& ambient, const std::vector<Vector>& vectors);
    static Subspace zero(const InnerProductSpace& ambient);
    static Subspace full(const InnerProductSpace& ambient);

    const InnerProductSpace& ambient() const { return ambient_; }
    /// n x k, columns are the canonical basis vectors.
    const RatMatrix& basis() const { return basis_; }
    std::size_t dim() const { return basis_.cols(); }
    std::size_t ambient_dim() const { return ambient_.dim(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_dim(); }
    std::vector<Vector> vectors() const { return basis_.columns(); }

    bool contains(const Vector& x) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of x in the canonical basis, or nullopt if x is not a member.
    std::optional<Vector> coordinates(const Vector& x) const;

    /// B^T G B.
    RatMatrix gram() const;
    /// Matrix of the G-orthogonal projection onto this subspace, n x n.
    RatMatrix projector() const;

    friend bool operator==(const Subspace& a, const Subspace& b);

private:
    InnerProductSpace ambient_;
    RatMatrix basis_;
};

/// {x : (x, w) = 0 for all w in W} in the ambient Gram.
Subspace complement(const Subspace& w);
Subspace intersect(const Subspace& v, const Subspace& w);
Subspace sum(const Subspace& v, const Subspace& w);
bool member(const Vector& x, const Subspace& w);
/// G-orthogonal projection of x onto W via the normal equations.
Vector project(const Vector& x, const Subspace& w);
/// Image of W under the matrix m (rows = dim of the target space).
Subspace image(const RatMatrix& m, const Subspace& w, const InnerProductSpace& target);
bool orthogonal(const Subspace& v, const Subspace& w);

/// Throws PreconditionError unless the two spaces are equal.
void require_same_space(const InnerProductSpace& a, const InnerProductSpace& b, const char* where);

}  // namespace relcalc
