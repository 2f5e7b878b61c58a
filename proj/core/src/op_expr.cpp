#include "qorbit/op_expr.hpp"

#include "qorbit/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qorbit {

namespace {

std::shared_ptr<OpExpr> make(OpExpr::Node n) {
    auto p = std::make_shared<OpExpr>();
    p->node = n;
    return p;
}

} // namespace

OpPtr gen_e(int i) {
    auto p = make(OpExpr::Node::GenE);
    p->root = i;
    return p;
}
OpPtr gen_f(int i) {
    auto p = make(OpExpr::Node::GenF);
    p->root = i;
    return p;
}
OpPtr gen_k(int i, int exp) {
    auto p = make(OpExpr::Node::GenK);
    p->root = i;
    p->k_exp = exp;
    return p;
}
OpPtr op_scale(Scalar c, OpPtr x) {
    auto p = make(OpExpr::Node::Scale);
    p->coeff = std::move(c);
    p->kids = {std::move(x)};
    return p;
}
OpPtr op_cartan(std::function<Scalar(const Weight&)> fn, std::string label) {
    auto p = make(OpExpr::Node::Cartan);
    p->fn = std::move(fn);
    p->label = std::move(label);
    return p;
}
OpPtr op_sum(std::vector<OpPtr> xs) {
    auto p = make(OpExpr::Node::Sum);
    p->kids = std::move(xs);
    return p;
}
OpPtr op_compose(std::vector<OpPtr> xs) {
    auto p = make(OpExpr::Node::Compose);
    p->kids = std::move(xs);
    return p;
}
OpPtr op_identity() { return op_compose({}); }
OpPtr op_bracket(OpPtr x, OpPtr y, const Scalar& a) {
    OpPtr xy = op_compose({x, y});
    OpPtr yx = op_compose({y, x});
    return op_sum({xy, op_scale(-a, yx)});
}
OpPtr op_power(OpPtr x, long k) {
    std::vector<OpPtr> xs(static_cast<std::size_t>(k), x);
    return op_compose(std::move(xs));
}
OpPtr pi_series(int root, ShiftParam s, bool transposed) {
    auto p = make(OpExpr::Node::Pi);
    p->root = root;
    p->shift = std::move(s);
    p->pi_transposed = transposed;
    return p;
}

Weight op_weight_shift(const RootSystem& rs, const OpPtr& x) {
    switch (x->node) {
        case OpExpr::Node::GenE: return rs.alpha(x->root);
        case OpExpr::Node::GenF: return -rs.alpha(x->root);
        case OpExpr::Node::GenK:
        case OpExpr::Node::Cartan:
        case OpExpr::Node::Pi: return Weight(rs.ambient_dim());
        case OpExpr::Node::Scale: return op_weight_shift(rs, x->kids[0]);
        case OpExpr::Node::Sum: {
            if (x->kids.empty()) return Weight(rs.ambient_dim());
            Weight w = op_weight_shift(rs, x->kids[0]);
            for (std::size_t k = 1; k < x->kids.size(); ++k)
                if (op_weight_shift(rs, x->kids[k]) != w)
                    throw precondition_error("sum of operators of different weights");
            return w;
        }
        case OpExpr::Node::Compose: {
            Weight w(rs.ambient_dim());
            for (auto& k : x->kids) w += op_weight_shift(rs, k);
            return w;
        }
    }
    return Weight(rs.ambient_dim());
}

namespace {

OpPtr transport(const OpPtr& x, const std::function<OpPtr(const OpExpr&)>& leaf,
                bool reverse_products) {
    switch (x->node) {
        case OpExpr::Node::GenE:
        case OpExpr::Node::GenF:
        case OpExpr::Node::GenK: return leaf(*x);
        case OpExpr::Node::Scale:
            return op_scale(x->coeff, transport(x->kids[0], leaf, reverse_products));
        case OpExpr::Node::Sum: {
            std::vector<OpPtr> kids;
            for (auto& k : x->kids) kids.push_back(transport(k, leaf, reverse_products));
            return op_sum(std::move(kids));
        }
        case OpExpr::Node::Compose: {
            std::vector<OpPtr> kids;
            for (auto& k : x->kids) kids.push_back(transport(k, leaf, reverse_products));
            if (reverse_products) std::reverse(kids.begin(), kids.end());
            return op_compose(std::move(kids));
        }
        case OpExpr::Node::Cartan:
        case OpExpr::Node::Pi:
            throw precondition_error("automorphism transport of a non-algebraic node");
    }
    throw precondition_error("bad node");
}

} // namespace

OpPtr op_sigma(const OpPtr& x) {
    return transport(x, [](const OpExpr& g) -> OpPtr {
        switch (g.node) {
            case OpExpr::Node::GenE: return gen_f(g.root);
            case OpExpr::Node::GenF: return gen_e(g.root);
            default: return gen_k(g.root, -g.k_exp);
        }
    }, false);
}

OpPtr op_omega(const OpPtr& x) {
    return transport(x, [](const OpExpr& g) -> OpPtr {
        switch (g.node) {
            case OpExpr::Node::GenE: return gen_f(g.root);
            case OpExpr::Node::GenF: return gen_e(g.root);
            default: return gen_k(g.root, g.k_exp);
        }
    }, true);
}

OpPtr op_antipode(const OpPtr& x, Coproduct conv) {
    return transport(x, [conv](const OpExpr& g) -> OpPtr {
        switch (g.node) {
            case OpExpr::Node::GenE:
                // Sec3: -e q^-h ; Sec4: -q^-h e
                if (conv == Coproduct::Sec3)
                    return op_scale(Scalar(-1), op_compose({gen_e(g.root), gen_k(g.root, -1)}));
                return op_scale(Scalar(-1), op_compose({gen_k(g.root, -1), gen_e(g.root)}));
            case OpExpr::Node::GenF:
                // Sec3: -q^h f ; Sec4: -f q^h
                if (conv == Coproduct::Sec3)
                    return op_scale(Scalar(-1), op_compose({gen_k(g.root, 1), gen_f(g.root)}));
                return op_scale(Scalar(-1), op_compose({gen_f(g.root), gen_k(g.root, 1)}));
            default: return gen_k(g.root, -g.k_exp);
        }
    }, true);
}

OpPtr op_antipode_inv(const OpPtr& x, Coproduct conv) {
    // the inverse antipode of Sec3 equals the antipode of Sec4 on generators
    return op_antipode(x, conv == Coproduct::Sec3 ? Coproduct::Sec4 : Coproduct::Sec3);
}

std::string op_str(const OpPtr& x) {
    std::ostringstream os;
    switch (x->node) {
        case OpExpr::Node::GenE: os << "e" << x->root + 1; break;
        case OpExpr::Node::GenF: os << "f" << x->root + 1; break;
        case OpExpr::Node::GenK: os << "K" << x->root + 1 << "^" << x->k_exp; break;
        case OpExpr::Node::Scale:
            os << x->coeff.str() << "*" << op_str(x->kids[0]);
            break;
        case OpExpr::Node::Cartan: os << "[" << x->label << "]"; break;
        case OpExpr::Node::Sum: {
            os << "(";
            for (std::size_t i = 0; i < x->kids.size(); ++i)
                os << (i ? " + " : "") << op_str(x->kids[i]);
            os << ")";
            break;
        }
        case OpExpr::Node::Compose: {
            if (x->kids.empty()) { os << "1"; break; }
            for (std::size_t i = 0; i < x->kids.size(); ++i)
                os << (i ? " " : "") << op_str(x->kids[i]);
            break;
        }
        case OpExpr::Node::Pi:
            os << "pi_" << x->root + 1 << "(" << x->shift.h_slope << "h+" << x->shift.offset.c
               << (x->shift.offset.t ? "+s" : "") << ")";
            break;
    }
    return os.str();
}

} // namespace qorbit
