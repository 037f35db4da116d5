#include "relcalc/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <regex>

#include "relcalc/errors.hpp"

namespace relcalc {

Rational parse_rational(std::string_view text) {
    static const std::regex pattern(R"(^\s*(-?[0-9]+)(/([0-9]+))?\s*$)");
    std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) {
        throw ParseError("not a rational: \"" + s + "\"");
    }
    mpz_class num(m[1].str(), 10);
    mpz_class den(1);
    if (m[3].matched) {
        den = mpz_class(m[3].str(), 10);
        if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw PreconditionError("matrix entry count does not match its shape");
    }
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::diagonal(const Vector& d) {
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    RatMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw PreconditionError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vector RatMatrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vector RatMatrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Vector> RatMatrix::columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    RatMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

RatMatrix RatMatrix::select_columns(const std::vector<std::size_t>& idx) const {
    RatMatrix b(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    RatMatrix b(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(idx[i], j);
    return b;
}

bool RatMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("shape mismatch in +");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("shape mismatch in -");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("shape mismatch in *");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (b(k, j) != 0) c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
}

Vector operator*(const RatMatrix& a, const Vector& x) {
    if (a.cols_ != x.size()) throw PreconditionError("shape mismatch in matrix*vector");
    Vector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            if (x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw PreconditionError("hstack row mismatch");
    RatMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw PreconditionError("vstack column mismatch");
    RatMatrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

Vector operator*(const Rational& s, const Vector& a) {
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

Vector concat(const Vector& a, const Vector& b) {
    Vector c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

// ---------------------------------------------------------------------------

RrefResult rref(const RatMatrix& m) {
    RatMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r) {
            for (std::size_t j = c; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        }
        const Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                if (a(r, j) != 0) a(i, j) -= f * a(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

RatMatrix kernel(const RatMatrix& m) {
    const auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector x(m.cols());
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r(i, f);
        basis.push_back(std::move(x));
    }
    return RatMatrix::from_columns(m.cols(), basis);
}

std::optional<Vector> solve(const RatMatrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw PreconditionError("solve: right-hand side length mismatch");
    RatMatrix aug = hstack(m, RatMatrix::from_columns(m.rows(), {b}));
    const auto [r, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
    return x;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse: matrix is not square");
    const std::size_t n = m.rows();
    const auto [r, pivots] = rref(hstack(m, RatMatrix::identity(n)));
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
        throw PreconditionError("inverse: matrix is singular");
    }
    return r.block(0, n, n, n);
}

// ---------------------------------------------------------------------------

RatMatrix PsdCertificate::permutation() const {
    RatMatrix p(perm.size(), perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) p(perm[j], j) = 1;
    return p;
}

RatMatrix PsdCertificate::reconstruct() const {
    const RatMatrix p = permutation();
    return p * lower * RatMatrix::diagonal(diag) * lower.transpose() * p.transpose();
}

namespace {

// Lifts a vector y of the trailing (n-k) coordinates of the partially
// factored matrix to a full vector z with z^T (P^T M P) z = y^T S y, where S
// is the current Schur complement, then undoes the permutation.
Vector lift_witness(const RatMatrix& lower, const std::vector<std::size_t>& perm,
                    std::size_t k, const Vector& y) {
    const std::size_t n = perm.size();
    Vector z(n);
    for (std::size_t i = 0; i < y.size(); ++i) z[k + i] = y[i];
    // Solve L11^T x_top = -L21^T y by back substitution.
    for (std::size_t ii = k; ii-- > 0;) {
        Rational s = 0;
        for (std::size_t i = k; i < n; ++i) s -= lower(i, ii) * z[i];
        for (std::size_t i = ii + 1; i < k; ++i) s -= lower(i, ii) * z[i];
        z[ii] = s;
    }
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[perm[i]] = z[i];
    return v;
}

}  // namespace

PsdResult ldl_psd_certificate(const RatMatrix& m) {
    if (!m.is_symmetric()) throw PreconditionError("ldl_psd_certificate: matrix is not symmetric");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix lower = RatMatrix::identity(n);
    Vector diag(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    auto fail = [&](std::size_t k, const Vector& y) -> PsdResult {
        Vector v = lift_witness(lower, perm, k, y);
        Rational value = quadratic(m, v);
        return NotPsd{std::move(v), std::move(value)};
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (a(i, i) > a(p, p)) p = i;
        if (a(p, p) < 0) return fail(k, unit_vector(n - k, p - k));
        if (a(p, p) == 0) {
            for (std::size_t i = k; i < n; ++i)
                if (a(i, i) < 0) return fail(k, unit_vector(n - k, i - k));
            for (std::size_t i = k; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (a(i, j) != 0) {
                        Vector y(n - k);
                        y[i - k] = 1;
                        y[j - k] = a(i, j) > 0 ? -1 : 1;
                        return fail(k, y);
                    }
                }
            }
            break;  // remaining block is zero; D stays 0 there
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, p));
            for (std::size_t j = 0; j < k; ++j) std::swap(lower(k, j), lower(p, j));
            std::swap(perm[k], perm[p]);
        }
        diag[k] = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) lower(i, k) = a(i, k) / diag[k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (lower(i, k) == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lower(i, k) * a(k, j);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) = 0;
            a(k, i) = 0;
        }
    }
    return PsdCertificate{std::move(perm), std::move(lower), std::move(diag)};
}

Rational quadratic(const RatMatrix& m, const Vector& v) { return dot(v, m * v); }

Rational bilinear(const RatMatrix& m, const Vector& x, const Vector& y) { return dot(x, m * y); }

}  // namespace relcalc
