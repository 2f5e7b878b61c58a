#ifndef QORBIT_OP_EXPR_HPP
#define QORBIT_OP_EXPR_HPP

#include "qorbit/root_system.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace qorbit {

// Argument of a shifted projector: offset + h_slope * h_alpha, evaluated on a
// weight-mu vector by h_alpha -> (mu, alpha). The offset may carry the free
// shift parameter s (ExpLin.t) and lambda pairings.
struct ShiftParam {
    ExpLin offset;
    long h_slope = 0;

    ShiftParam() = default;
    ShiftParam(ExpLin off, long slope = 0) : offset(std::move(off)), h_slope(slope) {}

    static ShiftParam symbolic(long constant = 0) { return ShiftParam(ExpLin(mpq_class(constant), 0, 1)); }
    static ShiftParam constant(mpq_class c) { return ShiftParam(ExpLin(std::move(c))); }

    ExpLin eval(const Pairing& h_alpha) const {
        return ExpLin(offset.c + h_alpha.plain * h_slope,
                      offset.lam + h_alpha.lambda_int() * h_slope, offset.t);
    }
    ShiftParam operator+(long k) const { return ShiftParam(ExpLin(offset.c + k, offset.lam, offset.t), h_slope); }
};

// Operator program: a tree of generator applications, scalar and
// Cartan-dependent factors, sums, compositions, and shifted-projector
// series. Programs are immutable and evaluated against module handles.
struct OpExpr;
using OpPtr = std::shared_ptr<const OpExpr>;

struct OpExpr {
    enum class Node { GenE, GenF, GenK, Scale, Cartan, Sum, Compose, Pi };
    Node node;
    int root = 0;     // generator index, or pi series root
    int k_exp = 0;    // power of q^{h_root} for GenK
    Scalar coeff;     // Scale
    // Cartan: weight-dependent scalar factor
    std::function<Scalar(const Weight&)> fn;
    std::string label;
    std::vector<OpPtr> kids;
    // Pi series data
    ShiftParam shift;
    bool pi_transposed = false; // the sigma image: e^k f^k with h -> -h
};

OpPtr gen_e(int i);
OpPtr gen_f(int i);
OpPtr gen_k(int i, int exp);
OpPtr op_scale(Scalar c, OpPtr x);
OpPtr op_cartan(std::function<Scalar(const Weight&)> fn, std::string label);
OpPtr op_sum(std::vector<OpPtr> xs);
// compose({a, b}) = a after b (rightmost applied first)
OpPtr op_compose(std::vector<OpPtr> xs);
OpPtr op_identity();
// [x, y]_a = x y - a y x
OpPtr op_bracket(OpPtr x, OpPtr y, const Scalar& a);
OpPtr op_power(OpPtr x, long k);
OpPtr pi_series(int root, ShiftParam s, bool transposed = false);

// Weight shift of a homogeneous program (sum of generator steps).
Weight op_weight_shift(const RootSystem& rs, const OpPtr& x);

// Algebra automorphisms transported to programs built from generators,
// scalars, sums and compositions (no Cartan factors or series).
OpPtr op_sigma(const OpPtr& x);                      // e <-> f, q^h -> q^-h
OpPtr op_omega(const OpPtr& x);                      // anti-automorphism, e <-> f
enum class Coproduct { Sec3, Sec4 };
OpPtr op_antipode(const OpPtr& x, Coproduct conv);
OpPtr op_antipode_inv(const OpPtr& x, Coproduct conv);

std::string op_str(const OpPtr& x);

} // namespace qorbit

#endif
