#pragma once

// Small hand-computed relations shared by the harness and acceptance tests.

#include "relcalc/relations.hpp"

namespace fixtures {

using namespace relcalc;

/// Rank-one symmetric relation on Q^2 spanned by {(1,1), (1,3)}.
inline LinearRelation rank_one() {
    const InnerProductSpace q2(2);
    return LinearRelation::from_pairs(q2, q2, {{{1, 1}, {1, 3}}});
}

/// {e1, e2} on Q^3: domain and range orthogonal.
inline LinearRelation orthogonal_pair() {
    const InnerProductSpace q3(3);
    return LinearRelation::from_pairs(q3, q3, {{{1, 0, 0}, {0, 1, 0}}});
}

/// diag(1, 2, 3, 4) restricted to span{(1,1,1,1), (1,-1,1,-1)}; defect 2.
inline LinearRelation diagonal_restriction() {
    const InnerProductSpace q4(4);
    const auto d = LinearRelation::from_matrix(q4, q4, RatMatrix::diagonal({1, 2, 3, 4}));
    return restrict(d, Subspace::span(q4, {{1, 1, 1, 1}, {1, -1, 1, -1}}));
}

inline LinearRelation matrix_operator(const RatMatrix& a) {
    const InnerProductSpace h(a.rows());
    return LinearRelation::from_matrix(h, h, a);
}

}  // namespace fixtures
