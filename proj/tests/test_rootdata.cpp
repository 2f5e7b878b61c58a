#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qorbit/branching.hpp"

using namespace qorbit;

namespace {

Weight eps_w(const RootSystem& rs, std::vector<long> c) {
    std::vector<mpq_class> q(c.begin(), c.end());
    return rs.from_eps_coords(q);
}

} // namespace

TEST_CASE("rho as half-sum matches the closed form") {
    for (int n = 1; n <= 3; ++n) {
        RootSystem rs = RootSystem::b_type(n);
        Weight rho = rs.rho();
        for (int i = 0; i < n; ++i)
            CHECK(rho[i] == mpq_class(2 * i + 1, 2)); // i + 1/2 in 1-based terms
    }
}

TEST_CASE("inner product examples") {
    RootSystem rs = RootSystem::b_type(2);
    CHECK(inner(rs.eps(0), rs.eps(0)).plain == 1);
    CHECK(inner(rs.alpha(1), rs.alpha(1)).plain == 2);
    CHECK(inner(rs.alpha(0), rs.alpha(1)).plain == -1);
    CHECK(rs.short_root(0));
    CHECK(!rs.short_root(1));
}

TEST_CASE("lambda pairing stays symbolic until a q-power consumes it") {
    RootSystem rs = RootSystem::b_type(2);
    Weight lam = rs.lambda_weight();
    Pairing pr = inner(lam, rs.eps(0));
    CHECK(pr.plain == 0);
    CHECK(pr.lambda == 1);
    // q^(2(lambda, eps_i)) = -1/q
    Scalar q2 = q_power(pr.exp().scaled(2));
    CHECK(q2 == -Scalar::p_power(-2));
    CHECK_THROWS_AS(inner(lam, lam), precondition_error);
}

TEST_CASE("ell vector examples") {
    RootSystem rs = RootSystem::b_type(2);
    Weight nu = rs.from_fundamental({3, 2});
    CHECK(nu[0] == mpq_class(3, 2));
    CHECK(nu[1] == mpq_class(7, 2));
    CHECK(rs.ell_vector(nu) == std::vector<long>{3, 2});
    CHECK(rs.ell_vector(eps_w(rs, {0, 0})) == std::vector<long>{0, 0});
    CHECK(rs.ell_vector(eps_w(rs, {0, 1})) == std::vector<long>{0, 1});
    CHECK_THROWS_AS(rs.ell_vector(eps_w(rs, {2, 1})), precondition_error);
}

TEST_CASE("weyl dimensions") {
    RootSystem rs = RootSystem::b_type(2);
    CHECK(rs.weyl_dim(eps_w(rs, {0, 1})) == 5);
    CHECK(rs.weyl_dim(eps_w(rs, {0, 0})) == 1);
    CHECK(rs.weyl_dim(eps_w(rs, {1, 1})) == 10);
    CHECK(rs.weyl_dim(rs.from_fundamental({3, 2})) == 140);
}

TEST_CASE("branching examples") {
    RootSystem rs = RootSystem::b_type(2);
    auto b1 = branch_odd_to_even(rs, eps_w(rs, {0, 1}));
    REQUIRE(b1.size() == 2);
    mpz_class total = 0;
    for (auto& xi : b1) total += k_weyl_dim(rs, xi);
    CHECK(total == 5);

    auto b0 = branch_odd_to_even(rs, eps_w(rs, {0, 0}));
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].is_zero());

    auto b32 = branch_odd_to_even(rs, rs.from_fundamental({3, 2}));
    CHECK(b32.size() == 12);

    auto badj = branch_odd_to_even(rs, eps_w(rs, {1, 1}));
    REQUIRE(badj.size() == 3);
    std::multiset<long> dims;
    for (auto& xi : badj) dims.insert(k_weyl_dim(rs, xi).get_si());
    CHECK(dims == std::multiset<long>{3, 3, 4});
}

TEST_CASE("branching dimension sums and grid counts") {
    for (int n = 1; n <= 3; ++n) {
        RootSystem rs = RootSystem::b_type(n);
        // dominant integral weights with eps entries <= 4 (integer and spinor)
        std::vector<std::vector<mpq_class>> cands;
        std::function<void(std::vector<mpq_class>&)> rec = [&](std::vector<mpq_class>& cur) {
            if ((int)cur.size() == n) {
                cands.push_back(cur);
                return;
            }
            mpq_class lo = cur.empty() ? mpq_class(0) : cur.back();
            for (mpq_class v = lo; v <= 4; v += mpq_class(1, 2)) {
                // all coordinates must share an integrality class
                if (!cur.empty() && mpq_class(v - cur[0]).get_den() != 1) continue;
                cur.push_back(v);
                rec(cur);
                cur.pop_back();
            }
        };
        std::vector<mpq_class> cur;
        rec(cur);
        for (auto& c : cands) {
            Weight nu(c);
            if (!rs.is_dominant_integral(nu)) continue;
            auto parts = branch_odd_to_even(rs, nu);
            mpz_class total = 0;
            for (auto& xi : parts) {
                CHECK(is_k_dominant_integral(rs, xi));
                total += k_weyl_dim(rs, xi);
            }
            CHECK(total == rs.weyl_dim(nu));
            long grid = 1;
            for (long l : rs.ell_vector(nu)) grid *= l + 1;
            CHECK((long)parts.size() == grid);
        }
    }
}

TEST_CASE("rank-2 k-character is the double string grid") {
    RootSystem rs = RootSystem::b_type(2);
    auto ch = k_character_rank2(rs, eps_w(rs, {0, 1}));
    mpz_class total = 0;
    for (auto& [w, m] : ch) total += m;
    CHECK(total == k_weyl_dim(rs, eps_w(rs, {0, 1})));
    CHECK(ch.at(eps_w(rs, {0, 1})) == 1);
    CHECK(ch.at(eps_w(rs, {0, -1})) == 1);
}

TEST_CASE("weight parsing for the CLI") {
    RootSystem rs = RootSystem::b_type(2);
    CHECK(parse_weight(rs, "3,2", "fundamental") == rs.from_fundamental({3, 2}));
    CHECK(parse_weight(rs, "0,1", "epsilon") == eps_w(rs, {0, 1}));
    CHECK_THROWS_AS(parse_weight(rs, "1", "epsilon"), precondition_error);
    CHECK_THROWS_AS(parse_weight(rs, "1,1", "spherical"), precondition_error);
}
