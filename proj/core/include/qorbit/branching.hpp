#ifndef QORBIT_BRANCHING_HPP
#define QORBIT_BRANCHING_HPP

#include "qorbit/root_system.hpp"

#include <map>
#include <vector>

namespace qorbit {

// Classical branching so(2n+1) -> so(2n) by the interlacing rule.
// Input: a dominant integral so(2n+1) weight in increasing eps-convention
// (0 <= nu_1 <= ... <= nu_n). Output: the multiplicity-free list of so(2n)
// highest weights in the same eps-basis; the first coordinate may be negative.
std::vector<Weight> branch_odd_to_even(const RootSystem& rs, const Weight& nu);

// Weyl dimension of the so(2n) module with highest weight xi. For n = 1 the
// subalgebra is so(2) and every weight is one-dimensional.
mpz_class k_weyl_dim(const RootSystem& rs, const Weight& xi);

// k-dominance: (xi, alpha^vee) nonnegative integral for alpha in
// {delta = eps_1 + eps_2, alpha_2, ..., alpha_n}.
bool is_k_dominant_integral(const RootSystem& rs, const Weight& xi);

// Full weight-multiplicity character of the so(4) module with highest weight
// xi (rank 2 only): so(4) = sl2 x sl2 along delta and alpha_2.
std::map<Weight, long> k_character_rank2(const RootSystem& rs, const Weight& xi);

} // namespace qorbit

#endif
