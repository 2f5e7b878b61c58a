#ifndef QORBIT_ROOT_SYSTEM_HPP
#define QORBIT_ROOT_SYSTEM_HPP

#include "qorbit/weight.hpp"

#include <string>
#include <vector>

namespace qorbit {

enum class LieType { B, A1, A2 };

// Simple-root data realized inside an orthonormal ambient basis, so every
// inner product is an exact rational (plus symbolic lambda terms).
//
//   B(n): alpha_1 = e1 (short, length^2 = 1), alpha_i = e_i - e_{i-1}.
//   A1:   alpha = e1 - e2 (the normalized sl2 with [e,f] = [h]_q).
//   A2:   alpha = e1 - e2, beta = e2 - e3.
class RootSystem {
public:
    static RootSystem b_type(int n);
    static RootSystem sl2();
    static RootSystem a2();

    LieType type() const { return type_; }
    int rank() const { return rank_; }
    std::size_t ambient_dim() const { return dim_; }

    const Weight& alpha(int i) const { return simple_[i]; } // 0-based
    const std::vector<Weight>& simple_roots() const { return simple_; }
    mpq_class alpha_norm2(int i) const;
    Weight alpha_covector(int i) const; // alpha^vee = 2 alpha / (alpha, alpha)
    // q_alpha = q^((alpha,alpha)/2); true when q_alpha = p.
    bool short_root(int i) const;

    const Weight& rho() const { return rho_; }
    const std::vector<Weight>& positive_roots() const { return positive_; }

    Weight zero_weight() const { return Weight(dim_); }
    // The base weight lambda (type B): q^(2(lambda,eps_i)) = -1/q for all i.
    Weight lambda_weight() const;

    // Type-B conversions and oracles.
    Weight eps(int i) const; // 0-based
    Weight from_eps_coords(const std::vector<mpq_class>& c) const;
    Weight from_fundamental(const std::vector<mpq_class>& c) const;
    bool is_dominant_integral(const Weight& nu) const;
    std::vector<long> ell_vector(const Weight& nu) const; // (nu+rho, alpha_i^vee) - 1
    mpz_class weyl_dim(const Weight& nu) const;

    std::string str() const;

private:
    RootSystem() = default;
    LieType type_ = LieType::B;
    int rank_ = 0;
    std::size_t dim_ = 0;
    std::vector<Weight> simple_;
    std::vector<Weight> positive_;
    Weight rho_;
};

// Parse "--weight 3,2" in the requested basis.
Weight parse_weight(const RootSystem& rs, const std::string& text, const std::string& basis);

} // namespace qorbit

#endif
