#include "qorbit/compound.hpp"

#include "qorbit/errors.hpp"

namespace qorbit {

namespace {
Scalar q1() { return Scalar::p_power(2); }
Scalar qbar() { return Scalar::p_power(-2); }
} // namespace

OpPtr f_eps_vector(int i) {
    OpPtr v = gen_f(0);
    for (int k = 1; k <= i; ++k) v = op_bracket(v, gen_f(k), qbar());
    return v;
}

OpPtr e_eps_vector(int i) {
    OpPtr v = gen_e(0);
    for (int k = 1; k <= i; ++k) v = op_bracket(gen_e(k), v, q1());
    return v;
}

OpPtr f_gamma_so5() { return op_bracket(gen_f(0), gen_f(1), qbar()); }
OpPtr e_gamma_so5() { return op_bracket(gen_e(1), gen_e(0), q1()); }
// bracket orders chosen coherently with the dynamical vectors: the
// [s]_p = 0 degeneration of fhat_delta has +qbar f_b f_a^2, which forces
// f_delta = [f_a, f_gamma], and sigma(f_delta) = qbar e_delta then forces
// e_delta = [e_gamma, e_a]
OpPtr f_delta_so5() { return op_bracket(gen_f(0), f_gamma_so5(), Scalar(1)); }
OpPtr e_delta_so5() { return op_bracket(e_gamma_so5(), gen_e(0), Scalar(1)); }

OpPtr fhat_delta() {
    return op_bracket(gen_f(0), op_bracket(gen_f(0), gen_f(1), q1()), qbar());
}
OpPtr ehat_delta() {
    return op_bracket(gen_e(0), op_bracket(gen_e(0), gen_e(1), q1()), qbar());
}

OpPtr fhat_delta_dyn(const ExpLin& s) {
    Scalar s0 = qnum(s, QBase::P);
    Scalar s1 = qnum(s + ExpLin(1), QBase::P);
    Scalar s2 = qnum(s + ExpLin(2), QBase::P);
    Scalar two = qnum(ExpLin(2), QBase::P);
    OpPtr fa = gen_f(0), fb = gen_f(1);
    OpPtr t1 = op_scale(s0 / s2, op_compose({fa, fa, fb}));
    OpPtr t2 = op_scale(-(two * s0 / s1), op_compose({fa, fb, fa}));
    OpPtr t3 = op_compose({fb, fa, fa});
    return op_scale(Scalar::p_power(-2), op_sum({t1, t2, t3}));
}

OpPtr ehat_delta_dyn(const ExpLin& s) {
    Scalar s0 = qnum(s, QBase::P);
    Scalar s1 = qnum(s + ExpLin(1), QBase::P);
    Scalar s2 = qnum(s + ExpLin(2), QBase::P);
    Scalar two = qnum(ExpLin(2), QBase::P);
    OpPtr ea = gen_e(0), eb = gen_e(1);
    OpPtr t1 = op_compose({ea, ea, eb});
    OpPtr t2 = op_scale(-(two * s2 / s1), op_compose({ea, eb, ea}));
    OpPtr t3 = op_scale(s2 / s0, op_compose({eb, ea, ea}));
    return op_sum({t1, t2, t3});
}

OpPtr z_eps1() {
    OpPtr cart = op_cartan(
        [](const Weight& w) {
            std::vector<mpq_class> a2(w.dim(), mpq_class(0));
            a2[1] = 1;
            a2[0] = -1;
            return qnum(inner(w, Weight(a2)).exp(), QBase::Q);
        },
        "[h_2]_q");
    OpPtr t1 = op_compose({e_eps_vector(0), cart});
    OpPtr t2 = op_scale(-q1(), op_compose({e_eps_vector(1), gen_f(1)}));
    return op_sum({t1, t2});
}

OpPtr z_eps2() { return e_eps_vector(1); }

OpPtr f_gamma_a2() {
    // f_b f - q f f_b
    return op_sum({op_compose({gen_f(1), gen_f(0)}),
                   op_scale(-q1(), op_compose({gen_f(0), gen_f(1)}))});
}
OpPtr e_gamma_a2() {
    // e e_b - qbar e_b e
    return op_sum({op_compose({gen_e(0), gen_e(1)}),
                   op_scale(-qbar(), op_compose({gen_e(1), gen_e(0)}))});
}
OpPtr fhat_gamma_a2(const ExpLin& s) {
    Scalar r = qnum(s, QBase::Q) / qnum(s + ExpLin(1), QBase::Q);
    return op_sum({op_compose({gen_f(1), gen_f(0)}),
                   op_scale(-r, op_compose({gen_f(0), gen_f(1)}))});
}
OpPtr ehat_gamma_a2(const ExpLin& s) {
    Scalar r = qnum(s, QBase::Q) / qnum(s + ExpLin(1), QBase::Q);
    return op_sum({op_compose({gen_e(0), gen_e(1)}),
                   op_scale(-r, op_compose({gen_e(1), gen_e(0)}))});
}

OpPtr compound_vector(const std::string& name, const ExpLin* s) {
    auto need_s = [&]() -> const ExpLin& {
        if (!s) throw precondition_error("compound vector '" + name + "' needs a shift argument");
        return *s;
    };
    if (name == "f_gamma") return f_gamma_so5();
    if (name == "e_gamma") return e_gamma_so5();
    if (name == "f_delta") return f_delta_so5();
    if (name == "e_delta") return e_delta_so5();
    if (name == "fhat_delta") return fhat_delta();
    if (name == "ehat_delta") return ehat_delta();
    if (name == "fhat_delta_dyn") return fhat_delta_dyn(need_s());
    if (name == "ehat_delta_dyn") return ehat_delta_dyn(need_s());
    if (name == "z_eps1") return z_eps1();
    if (name == "z_eps2") return z_eps2();
    if (name.rfind("f_eps", 0) == 0) return f_eps_vector(std::stoi(name.substr(5)) - 1);
    if (name.rfind("e_eps", 0) == 0) return e_eps_vector(std::stoi(name.substr(5)) - 1);
    throw precondition_error("unknown compound vector '" + name + "'");
}

} // namespace qorbit
