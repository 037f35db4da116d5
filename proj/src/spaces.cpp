#include "relcalc/spaces.hpp"

#include <string>

#include "relcalc/errors.hpp"

namespace relcalc {

InnerProductSpace::InnerProductSpace(std::size_t dim)
    : gram_(std::make_shared<const RatMatrix>(RatMatrix::identity(dim))) {}

InnerProductSpace::InnerProductSpace(RatMatrix gram) {
    if (gram.rows() != gram.cols()) throw PreconditionError("Gram matrix is not square");
    if (!gram.is_symmetric()) throw PreconditionError("Gram matrix is not symmetric");
    const auto cert = ldl_psd_certificate(gram);
    const auto* ok = std::get_if<PsdCertificate>(&cert);
    if (ok == nullptr) throw PreconditionError("Gram matrix is not positive semidefinite");
    for (const auto& d : ok->diag) {
        if (d <= 0) throw PreconditionError("Gram matrix is singular");
    }
    gram_ = std::make_shared<const RatMatrix>(std::move(gram));
}

InnerProductSpace::InnerProductSpace(Trusted, RatMatrix gram)
    : gram_(std::make_shared<const RatMatrix>(std::move(gram))) {}

InnerProductSpace InnerProductSpace::product(const InnerProductSpace& h, const InnerProductSpace& k) {
    return InnerProductSpace(Trusted{}, block_diag(h.gram(), k.gram()));
}

bool InnerProductSpace::has_identity_gram() const {
    return *gram_ == RatMatrix::identity(dim());
}

Rational InnerProductSpace::inner(const Vector& x, const Vector& y) const {
    return bilinear(*gram_, x, y);
}

bool operator==(const InnerProductSpace& a, const InnerProductSpace& b) {
    return a.gram_ == b.gram_ || *a.gram_ == *b.gram_;
}

InnerProductSpace ProductSpace::combined() const {
    return InnerProductSpace::product(left, right);
}

void require_same_space(const InnerProductSpace& a, const InnerProductSpace& b, const char* where) {
    if (!(a == b)) {
        throw PreconditionError(std::string(where) + ": ambient space mismatch (dim " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

// ---------------------------------------------------------------------------

Subspace::Subspace(InnerProductSpace ambient, const RatMatrix& generators)
    : ambient_(std::move(ambient)) {
    if (generators.rows() != ambient_.dim() && !(generators.cols() == 0)) {
        throw PreconditionError("subspace generators have the wrong length");
    }
    const std::size_t n = ambient_.dim();
    if (generators.cols() == 0) {
        basis_ = RatMatrix(n, 0);
        return;
    }
    const auto r = rref(generators.transpose());
    basis_ = r.form.top_rows(r.rank()).transpose();
}

Subspace Subspace::span(const InnerProductSpace& ambient, const std::vector<Vector>& vectors) {
    return Subspace(ambient, RatMatrix::from_columns(ambient.dim(), vectors));
}

Subspace Subspace::zero(const InnerProductSpace& ambient) {
    return Subspace(ambient, RatMatrix(ambient.dim(), 0));
}

Subspace Subspace::full(const InnerProductSpace& ambient) {
    return Subspace(ambient, RatMatrix::identity(ambient.dim()));
}

std::optional<Vector> Subspace::coordinates(const Vector& x) const {
    if (x.size() != ambient_dim()) throw PreconditionError("vector not in the ambient space");
    return solve(basis_, x);
}

bool Subspace::contains(const Vector& x) const { return coordinates(x).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    require_same_space(ambient_, other.ambient_, "Subspace::contains");
    for (std::size_t j = 0; j < other.dim(); ++j) {
        if (!contains(other.basis_.column(j))) return false;
    }
    return true;
}

RatMatrix Subspace::gram() const { return basis_.transpose() * ambient_.gram() * basis_; }

RatMatrix Subspace::projector() const {
    const std::size_t n = ambient_dim();
    if (is_zero()) return RatMatrix(n, n);
    const RatMatrix bt_g = basis_.transpose() * ambient_.gram();
    return basis_ * inverse(bt_g * basis_) * bt_g;
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

// ---------------------------------------------------------------------------

Subspace complement(const Subspace& w) {
    const auto& amb = w.ambient();
    if (w.is_zero()) return Subspace::full(amb);
    return Subspace(amb, kernel(w.basis().transpose() * amb.gram()));
}

Subspace intersect(const Subspace& v, const Subspace& w) {
    require_same_space(v.ambient(), w.ambient(), "intersect");
    if (v.is_zero() || w.is_zero()) return Subspace::zero(v.ambient());
    // v a = w b  <=>  [V | -W] (a, b) = 0
    const RatMatrix k = kernel(hstack(v.basis(), Rational(-1) * w.basis()));
    return Subspace(v.ambient(), v.basis() * k.top_rows(v.dim()));
}

Subspace sum(const Subspace& v, const Subspace& w) {
    require_same_space(v.ambient(), w.ambient(), "sum");
    return Subspace(v.ambient(), hstack(v.basis(), w.basis()));
}

bool member(const Vector& x, const Subspace& w) { return w.contains(x); }

Vector project(const Vector& x, const Subspace& w) {
    if (x.size() != w.ambient_dim()) throw PreconditionError("project: vector not in the ambient space");
    if (w.is_zero()) return zero_vector(x.size());
    const RatMatrix bt_g = w.basis().transpose() * w.ambient().gram();
    const auto coeff = solve(bt_g * w.basis(), bt_g * x);
    return w.basis() * *coeff;
}

Subspace image(const RatMatrix& m, const Subspace& w, const InnerProductSpace& target) {
    if (m.cols() != w.ambient_dim() || m.rows() != target.dim()) {
        throw PreconditionError("image: matrix shape does not match the spaces");
    }
    return Subspace(target, m * w.basis());
}

bool orthogonal(const Subspace& v, const Subspace& w) {
    require_same_space(v.ambient(), w.ambient(), "orthogonal");
    return (v.basis().transpose() * v.ambient().gram() * w.basis()).is_zero();
}

}  // namespace relcalc
