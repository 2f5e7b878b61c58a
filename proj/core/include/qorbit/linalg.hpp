#ifndef QORBIT_LINALG_HPP
#define QORBIT_LINALG_HPP

#include "qorbit/scalar.hpp"

#include <optional>
#include <vector>

namespace qorbit {

// Dense row-major matrix over the exact scalar field.
using DMat = std::vector<std::vector<Scalar>>;
using DVec = std::vector<Scalar>;

DMat dmat(std::size_t rows, std::size_t cols);
DMat identity_mat(std::size_t n);
DMat mat_mul(const DMat& a, const DMat& b);
DVec mat_vec(const DMat& a, const DVec& v);
DMat mat_add(const DMat& a, const DMat& b);
DMat mat_sub(const DMat& a, const DMat& b);
DMat mat_scale(const DMat& a, const Scalar& c);
DMat mat_transpose(const DMat& a);
bool mat_is_zero(const DMat& a);

// Reduced row echelon data with deterministic (leftmost) pivoting.
struct Echelon {
    DMat rref;
    std::vector<int> pivot_cols;
    int rank = 0;
};
Echelon echelon(DMat a);

// Fraction-free (Bareiss) elimination: rank, leftmost pivot columns, and the
// expansion of every column over the pivot columns. Intermediate entries are
// polynomial minors; no gcd is taken until the final back-substitution.
struct FFExpand {
    int rank = 0;
    std::vector<int> pivot_cols;
    DMat coords; // rank x cols; pivot columns expand to unit vectors
};
FFExpand ff_rank_expand(const DMat& a);

int mat_rank(const DMat& a);

// Exact solve A x = b for consistent systems; nullopt when inconsistent.
// Free variables are set to zero.
std::optional<DVec> solve(const DMat& a, const DVec& b);

// Basis of the right kernel of A.
std::vector<DVec> kernel_basis(const DMat& a);

// Inverse of a square invertible matrix; nullopt if singular.
std::optional<DMat> mat_inverse(const DMat& a);

} // namespace qorbit

#endif
