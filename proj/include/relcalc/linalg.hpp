#pragma once

// Exact rational matrix kernel. Every other module is built on top of this;
// nothing here ever rounds.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace relcalc {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p/q" or "p" (optional leading '-'); throws ParseError on
/// anything else, including a zero denominator. Result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
    static RatMatrix diagonal(const Vector& d);
    /// Columns of the result are the given vectors (all of length `rows`).
    static RatMatrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;
    std::vector<Vector> columns() const;

    RatMatrix transpose() const;
    RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    RatMatrix top_rows(std::size_t n) const { return block(0, 0, n, cols_); }
    RatMatrix bottom_rows(std::size_t n) const { return block(rows_ - n, 0, n, cols_); }
    RatMatrix select_columns(const std::vector<std::size_t>& idx) const;
    RatMatrix select_rows(const std::vector<std::size_t>& idx) const;

    bool is_zero() const;
    bool is_symmetric() const;

    const std::vector<Rational>& entries() const { return data_; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
    friend Vector operator*(const RatMatrix& a, const Vector& x);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& a);
Rational dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Vector concat(const Vector& a, const Vector& b);

struct RrefResult {
    RatMatrix form;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Canonical reduced row echelon form: leading ones, zeros above and below
/// every pivot.
RrefResult rref(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Basis of {x : m x = 0} as columns; one column per free variable, with a
/// 1 in that free position.
RatMatrix kernel(const RatMatrix& m);

/// Some x with m x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<Vector> solve(const RatMatrix& m, const Vector& b);

/// Inverse of a square nonsingular matrix; throws PreconditionError otherwise.
RatMatrix inverse(const RatMatrix& m);

/// Exact LDL^T with symmetric diagonal pivoting, P^T M P = L D L^T.
struct PsdCertificate {
    std::vector<std::size_t> perm;  ///< column j of P is e_{perm[j]}
    RatMatrix lower;                ///< unit lower triangular
    Vector diag;                    ///< all entries >= 0

    RatMatrix permutation() const;
    /// P L D L^T P^T; equals the factored matrix exactly.
    RatMatrix reconstruct() const;
};

/// A vector v with v^T M v < 0.
struct NotPsd {
    Vector witness;
    Rational value;
};

using PsdResult = std::variant<PsdCertificate, NotPsd>;

/// Throws PreconditionError when m is not symmetric.
PsdResult ldl_psd_certificate(const RatMatrix& m);

inline bool is_psd(const RatMatrix& m) {
    return std::holds_alternative<PsdCertificate>(ldl_psd_certificate(m));
}

Rational quadratic(const RatMatrix& m, const Vector& v);
Rational bilinear(const RatMatrix& m, const Vector& x, const Vector& y);

}  // namespace relcalc
