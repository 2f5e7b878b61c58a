#include "qorbit/root_system.hpp"

#include "qorbit/errors.hpp"

#include <sstream>

namespace qorbit {

namespace {

Weight unit(std::size_t dim, std::size_t i) {
    Weight w(dim);
    w[i] = 1;
    return w;
}

Weight half_sum(const std::vector<Weight>& roots, std::size_t dim) {
    Weight s(dim);
    for (auto& r : roots) s += r;
    return s.scaled(mpq_class(1, 2));
}

} // namespace

RootSystem RootSystem::b_type(int n) {
    if (n < 1) throw precondition_error("rank must be >= 1");
    RootSystem rs;
    rs.type_ = LieType::B;
    rs.rank_ = n;
    rs.dim_ = static_cast<std::size_t>(n);
    rs.simple_.push_back(unit(rs.dim_, 0));
    for (int i = 1; i < n; ++i)
        rs.simple_.push_back(unit(rs.dim_, i) - unit(rs.dim_, i - 1));
    // positive roots: eps_i, and eps_j ± eps_i for i < j
    for (int i = 0; i < n; ++i) rs.positive_.push_back(unit(rs.dim_, i));
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            rs.positive_.push_back(unit(rs.dim_, j) - unit(rs.dim_, i));
            rs.positive_.push_back(unit(rs.dim_, j) + unit(rs.dim_, i));
        }
    rs.rho_ = half_sum(rs.positive_, rs.dim_);
    return rs;
}

RootSystem RootSystem::sl2() {
    RootSystem rs;
    rs.type_ = LieType::A1;
    rs.rank_ = 1;
    rs.dim_ = 2;
    rs.simple_.push_back(unit(2, 0) - unit(2, 1));
    rs.positive_ = rs.simple_;
    rs.rho_ = half_sum(rs.positive_, rs.dim_);
    return rs;
}

RootSystem RootSystem::a2() {
    RootSystem rs;
    rs.type_ = LieType::A2;
    rs.rank_ = 2;
    rs.dim_ = 3;
    rs.simple_.push_back(unit(3, 0) - unit(3, 1));
    rs.simple_.push_back(unit(3, 1) - unit(3, 2));
    rs.positive_ = rs.simple_;
    rs.positive_.push_back(rs.simple_[0] + rs.simple_[1]);
    rs.rho_ = half_sum(rs.positive_, rs.dim_);
    return rs;
}

mpq_class RootSystem::alpha_norm2(int i) const {
    return inner(simple_[i], simple_[i]).plain;
}

Weight RootSystem::alpha_covector(int i) const {
    return simple_[i].scaled(2 / alpha_norm2(i));
}

bool RootSystem::short_root(int i) const {
    return alpha_norm2(i) == 1;
}

Weight RootSystem::lambda_weight() const {
    if (type_ != LieType::B) throw precondition_error("lambda weight needs type B");
    return Weight(std::vector<mpq_class>(dim_, mpq_class(0)), 1);
}

Weight RootSystem::eps(int i) const {
    if (type_ != LieType::B) throw precondition_error("eps basis needs type B");
    return unit(dim_, static_cast<std::size_t>(i));
}

Weight RootSystem::from_eps_coords(const std::vector<mpq_class>& c) const {
    if (type_ != LieType::B || c.size() != dim_)
        throw precondition_error("bad eps coordinates");
    return Weight(c);
}

Weight RootSystem::from_fundamental(const std::vector<mpq_class>& c) const {
    if (type_ != LieType::B || c.size() != dim_)
        throw precondition_error("bad fundamental coordinates");
    // nu = sum c_i nu_i with (nu_i, alpha_j^vee) = delta_ij.
    // For B(n): nu_i = eps_i + ... + eps_n for i > 1 scaled pattern; solve directly.
    // (x, alpha_1^vee) = 2 x_1, (x, alpha_j^vee) = x_j - x_{j-1}.
    std::vector<mpq_class> x(dim_);
    // x_1 = c_1 / 2, x_j = x_{j-1} + c_j
    x[0] = mpq_class(c[0]) / 2;
    for (std::size_t j = 1; j < dim_; ++j) x[j] = x[j - 1] + c[j];
    Weight w{std::vector<mpq_class>(x.begin(), x.end())};
    return w;
}

bool RootSystem::is_dominant_integral(const Weight& nu) const {
    if (nu.lambda_mult() != 0) return false;
    for (int i = 0; i < rank_; ++i) {
        mpq_class v = inner(nu, alpha_covector(i)).plain;
        if (v < 0 || v.get_den() != 1) return false;
    }
    return true;
}

std::vector<long> RootSystem::ell_vector(const Weight& nu) const {
    if (!is_dominant_integral(nu))
        throw precondition_error("ell vector needs a dominant integral weight");
    std::vector<long> ell;
    for (int i = 0; i < rank_; ++i) {
        mpq_class v = inner(nu + rho_, alpha_covector(i)).plain - 1;
        ell.push_back(v.get_num().get_si());
    }
    return ell;
}

mpz_class RootSystem::weyl_dim(const Weight& nu) const {
    if (!is_dominant_integral(nu))
        throw precondition_error("weyl dimension needs a dominant integral weight");
    mpq_class d = 1;
    for (auto& a : positive_) {
        d *= inner(nu + rho_, a).plain / inner(rho_, a).plain;
    }
    d.canonicalize();
    if (d.get_den() != 1) throw precondition_error("weyl dimension is not integral");
    return d.get_num();
}

std::string RootSystem::str() const {
    std::ostringstream os;
    switch (type_) {
        case LieType::B: os << "so(" << 2 * rank_ + 1 << ")"; break;
        case LieType::A1: os << "sl(2)"; break;
        case LieType::A2: os << "sl(3)"; break;
    }
    return os.str();
}

Weight parse_weight(const RootSystem& rs, const std::string& text, const std::string& basis) {
    std::vector<mpq_class> c;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        c.emplace_back(tok);
        c.back().canonicalize();
    }
    if (c.size() != rs.ambient_dim())
        throw precondition_error("weight has wrong number of coordinates");
    if (basis == "fundamental") return rs.from_fundamental(c);
    if (basis == "epsilon") return rs.from_eps_coords(c);
    throw precondition_error("unknown basis '" + basis + "'");
}

} // namespace qorbit
