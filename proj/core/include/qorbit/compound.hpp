#ifndef QORBIT_COMPOUND_HPP
#define QORBIT_COMPOUND_HPP

#include "qorbit/op_expr.hpp"

#include <string>

namespace qorbit {

// Compound and dynamical root vectors as operator programs. Root indices are
// 0-based; conventions follow the presentation used throughout: [x,y]_a =
// xy - a yx, qbar = q^-1, p = q^(1/2).

// Root vectors of weights -eps_i / +eps_i (type B, any rank):
//   f_eps_1 = f_1,  f_eps_{i+1} = [f_eps_i, f_{i+1}]_qbar
//   e_eps_1 = e_1,  e_eps_{i+1} = [e_{i+1}, e_eps_i]_q
OpPtr f_eps_vector(int i);
OpPtr e_eps_vector(int i);

// so(5) compound vectors for gamma = eps_2 and delta = eps_1 + eps_2:
//   f_gamma = [f_a, f_b]_qbar        e_gamma = [e_b, e_a]_q
//   f_delta = [[f_a, f_b]_qbar, f_a] e_delta = [e_a, [e_b, e_a]_q]
OpPtr f_gamma_so5();
OpPtr e_gamma_so5();
OpPtr f_delta_so5();
OpPtr e_delta_so5();

// Serre-relation compounds (any rank >= 2):
//   fhat_delta = [f_1, [f_1, f_2]_q]_qbar, ehat_delta likewise in e.
OpPtr fhat_delta();
OpPtr ehat_delta();

// Dynamical vectors of so(5); the argument is a plain linear exponent:
//   fhat_delta(s) = pbar^2 ( f_a^2 f_b [s]_p/[s+2]_p
//                            - f_a f_b f_a [2]_p [s]_p/[s+1]_p + f_b f_a^2 )
//   ehat_delta(s) = e_a^2 e_b - e_a e_b e_a [2]_p [s+2]_p/[s+1]_p
//                   + e_b e_a^2 [s+2]_p/[s]_p
OpPtr fhat_delta_dyn(const ExpLin& s);
OpPtr ehat_delta_dyn(const ExpLin& s);

// Commuting pair generating the positive part of the reduction algebra
// (rank 2): z_eps1 = e_eps1 [h_2]_q - q e_eps2 f_2, z_eps2 = e_eps2.
OpPtr z_eps1();
OpPtr z_eps2();

// sl(3) versions along the first root (both roots of square length 2):
//   f_gamma = f_b f_a - q f_a f_b          e_gamma = e_a e_b - qbar e_b e_a
//   fhat_gamma(s) = f_b f_a - f_a f_b [s]_q/[s+1]_q
//   ehat_gamma(s) = e_a e_b - e_b e_a [s]_q/[s+1]_q
OpPtr f_gamma_a2();
OpPtr e_gamma_a2();
OpPtr fhat_gamma_a2(const ExpLin& s);
OpPtr ehat_gamma_a2(const ExpLin& s);

// Named lookup used by the CLI layer; s is required exactly for the
// dynamical vectors. Throws precondition_error for unknown names.
OpPtr compound_vector(const std::string& name, const ExpLin* s = nullptr);

} // namespace qorbit

#endif
