#include "qorbit/branching.hpp"

#include "qorbit/errors.hpp"

#include <functional>

namespace qorbit {

namespace {

// positive roots of so(2n): eps_j - eps_i and eps_j + eps_i for i < j
std::vector<Weight> k_positive_roots(const RootSystem& rs) {
    std::vector<Weight> roots;
    int n = rs.rank();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            roots.push_back(rs.eps(j) - rs.eps(i));
            roots.push_back(rs.eps(j) + rs.eps(i));
        }
    return roots;
}

Weight k_rho(const RootSystem& rs) {
    Weight r(rs.ambient_dim());
    for (int i = 0; i < rs.rank(); ++i) r += rs.eps(i).scaled(i);
    return r;
}

} // namespace

std::vector<Weight> branch_odd_to_even(const RootSystem& rs, const Weight& nu) {
    if (rs.type() != LieType::B) throw precondition_error("branching needs type B");
    if (!rs.is_dominant_integral(nu))
        throw precondition_error("branching needs a dominant integral weight");
    int n = rs.rank();
    // decreasing labels
    std::vector<mpq_class> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = nu[n - 1 - i];

    std::vector<Weight> out;
    std::vector<mpq_class> mu(n);
    // enumerate interlacing mu_1 >= ... >= mu_{n-1} >= |mu_n| on the same
    // integrality class as lambda
    auto emit = [&]() {
        std::vector<mpq_class> xi(n);
        for (int j = 0; j < n; ++j) xi[j] = mu[n - 1 - j];
        out.emplace_back(std::move(xi));
    };
    std::function<void(int)> rec = [&](int i) {
        if (i == n - 1) {
            // |mu_n| <= lam_n, same class
            mpq_class hi = lam[n - 1];
            for (mpq_class v = -hi; v <= hi; v += 1) {
                mu[n - 1] = v;
                emit();
            }
            return;
        }
        // lam_{i+1} <= mu_{i+1-th decreasing label} <= lam_i
        for (mpq_class v = lam[i + 1]; v <= lam[i]; v += 1) {
            mu[i] = v;
            rec(i + 1);
        }
    };
    if (n == 1) {
        // so(2) weights: nu, nu-1, ..., -nu
        for (mpq_class v = -lam[0]; v <= lam[0]; v += 1) {
            out.emplace_back(std::vector<mpq_class>{v});
        }
    } else {
        rec(0);
    }
    return out;
}

mpz_class k_weyl_dim(const RootSystem& rs, const Weight& xi) {
    if (rs.rank() == 1) return 1;
    Weight rho = k_rho(rs);
    mpq_class d = 1;
    for (auto& a : k_positive_roots(rs))
        d *= inner(xi + rho, a).plain / inner(rho, a).plain;
    d.canonicalize();
    if (d.get_den() != 1) throw precondition_error("k-dimension is not integral");
    mpz_class v = d.get_num();
    return v < 0 ? mpz_class(-v) : v; // |mu_n| sign symmetry
}

bool is_k_dominant_integral(const RootSystem& rs, const Weight& xi) {
    if (xi.lambda_mult() != 0) return false;
    int n = rs.rank();
    if (n == 1) {
        mpq_class v = xi[0] * 2;
        return v.get_den() == 1;
    }
    mpq_class d = xi[0] + xi[1]; // (xi, delta^vee)
    if (d < 0 || d.get_den() != 1) return false;
    for (int i = 1; i < n; ++i) {
        mpq_class v = xi[i] - xi[i - 1];
        if (v < 0 || v.get_den() != 1) return false;
    }
    return true;
}

std::map<Weight, long> k_character_rank2(const RootSystem& rs, const Weight& xi) {
    if (rs.rank() != 2) throw precondition_error("rank-2 character only");
    if (!is_k_dominant_integral(rs, xi)) throw precondition_error("xi is not k-dominant");
    Weight delta = rs.eps(0) + rs.eps(1);
    Weight a2 = rs.alpha(1);
    mpq_class la = xi[0] + xi[1]; // (xi, delta^vee)
    mpq_class lb = xi[1] - xi[0]; // (xi, alpha_2^vee)
    std::map<Weight, long> ch;
    for (mpq_class a = 0; a <= la; a += 1)
        for (mpq_class b = 0; b <= lb; b += 1)
            ch[xi - delta.scaled(a) - a2.scaled(b)] += 1;
    return ch;
}

} // namespace qorbit
