#include "qorbit/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qorbit {

namespace {

const GaussQ kZero;

// Univariate polynomial with exponent >= 0, sparse.
using Uni = std::map<int, GaussQ>;

int uni_deg(const Uni& u) { return u.empty() ? -1 : u.rbegin()->first; }

Uni uni_scale(const Uni& u, const GaussQ& c) {
    Uni r;
    if (c.is_zero()) return r;
    for (auto& [e, v] : u) r[e] = v * c;
    return r;
}

void uni_add_scaled(Uni& a, const Uni& b, const GaussQ& c, int shift) {
    if (c.is_zero()) return;
    for (auto& [e, v] : b) {
        auto it = a.find(e + shift);
        if (it == a.end()) {
            a[e + shift] = v * c;
        } else {
            it->second += v * c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

Uni uni_mul(const Uni& a, const Uni& b) {
    Uni r;
    for (auto& [ea, va] : a)
        uni_add_scaled(r, b, va, ea);
    return r;
}

// Division with remainder over the Gaussian-rational field.
void uni_divmod(const Uni& a, const Uni& b, Uni& q, Uni& r) {
    assert(!b.empty());
    q.clear();
    r = a;
    int db = uni_deg(b);
    const GaussQ& lb = b.rbegin()->second;
    while (!r.empty() && uni_deg(r) >= db) {
        int dr = uni_deg(r);
        GaussQ c = r.rbegin()->second / lb;
        q[dr - db] = c;
        uni_add_scaled(r, b, -c, dr - db);
    }
}

Uni uni_monic(const Uni& u) {
    if (u.empty()) return u;
    return uni_scale(u, u.rbegin()->second.inverse());
}

// Rescale so all coefficients are Gaussian integers with content 1.
// Coefficient growth in pseudo-remainder sequences stays polynomial this way;
// monic normalization over the rationals explodes.
Uni uni_primitive(const Uni& u) {
    if (u.empty()) return u;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (auto& [e, c] : u) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.re().get_den().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.im().get_den().get_mpz_t());
    }
    for (auto& [e, c] : u) {
        mpz_class re = c.re().get_num() * (den_lcm / c.re().get_den());
        mpz_class im = c.im().get_num() * (den_lcm / c.im().get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), re.get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), im.get_mpz_t());
    }
    GaussQ f(mpq_class(den_lcm, num_gcd));
    return uni_scale(u, f);
}

Uni uni_prem(Uni a, const Uni& b) {
    int db = uni_deg(b);
    const GaussQ& lb = b.rbegin()->second;
    while (!a.empty() && uni_deg(a) >= db) {
        int da = uni_deg(a);
        GaussQ la = a.rbegin()->second;
        a = uni_scale(a, lb);
        uni_add_scaled(a, b, -la, da - db);
    }
    return a;
}

Uni uni_gcd(Uni a, Uni b) {
    if (a.empty()) return uni_monic(b);
    if (b.empty()) return uni_monic(a);
    if (uni_deg(a) == 0 || uni_deg(b) == 0) return Uni{{0, GaussQ(1)}};
    a = uni_primitive(a);
    b = uni_primitive(b);
    if (uni_deg(a) < uni_deg(b)) std::swap(a, b);
    while (!b.empty() && uni_deg(b) > 0) {
        Uni r = uni_prem(a, b);
        a = std::move(b);
        b = uni_primitive(r);
    }
    if (!b.empty()) return Uni{{0, GaussQ(1)}}; // constant remainder: coprime
    return uni_monic(a);
}

Uni uni_divexact(const Uni& a, const Uni& b) {
    Uni q, r;
    uni_divmod(a, b, q, r);
    assert(r.empty() && "inexact univariate division");
    return q;
}

// Bivariate polynomial as map p-exponent -> T-polynomial, all exponents >= 0.
using Bi = std::map<int, Uni>;

int bi_deg_p(const Bi& a) { return a.empty() ? -1 : a.rbegin()->first; }

void bi_trim(Bi& a) {
    for (auto it = a.begin(); it != a.end();) {
        if (it->second.empty()) it = a.erase(it);
        else ++it;
    }
}

Bi bi_mul_uni(const Bi& a, const Uni& c) {
    Bi r;
    for (auto& [e, u] : a) {
        Uni m = uni_mul(u, c);
        if (!m.empty()) r[e] = std::move(m);
    }
    return r;
}

void bi_sub_shifted(Bi& a, const Bi& b, const Uni& c, int shift) {
    for (auto& [e, u] : b) {
        Uni m = uni_mul(u, c);
        Uni& dst = a[e + shift];
        for (auto& [te, v] : m) {
            auto it = dst.find(te);
            if (it == dst.end()) dst[te] = -v;
            else {
                it->second -= v;
                if (it->second.is_zero()) dst.erase(it);
            }
        }
    }
    bi_trim(a);
}

Uni bi_content(const Bi& a) {
    Uni g;
    for (auto& [e, u] : a) {
        g = g.empty() ? uni_monic(u) : uni_gcd(g, u);
        if (uni_deg(g) == 0) break;
    }
    return g.empty() ? Uni{} : g;
}

Bi bi_divexact_uni(const Bi& a, const Uni& c) {
    Bi r;
    for (auto& [e, u] : a) r[e] = uni_divexact(u, c);
    return r;
}

// Pseudo-remainder of a by b in the main variable p.
Bi bi_prem(Bi a, const Bi& b) {
    int db = bi_deg_p(b);
    const Uni& lb = b.rbegin()->second;
    while (!a.empty() && bi_deg_p(a) >= db) {
        int da = bi_deg_p(a);
        Uni la = a.rbegin()->second;
        a = bi_mul_uni(a, lb);
        bi_sub_shifted(a, b, la, da - db);
        assert(bi_deg_p(a) < da);
    }
    return a;
}

Bi bi_numeric_primitive(const Bi& a) {
    Uni flat;
    int key = 0;
    for (auto& [e, u] : a)
        for (auto& [te, c] : u) flat[key++] = c;
    if (flat.empty()) return a;
    Uni norm = uni_primitive(flat);
    GaussQ factor = norm.begin()->second / flat.begin()->second;
    Bi r;
    for (auto& [e, u] : a) r[e] = uni_scale(u, factor);
    return r;
}

Bi bi_primitive(const Bi& a) {
    if (a.empty()) return a;
    Uni c = bi_content(a);
    return bi_numeric_primitive(bi_divexact_uni(a, c));
}

Bi bi_gcd(Bi a, Bi b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Uni ca = bi_content(a), cb = bi_content(b);
    Uni cg = uni_gcd(ca, cb);
    a = bi_divexact_uni(a, ca);
    b = bi_divexact_uni(b, cb);
    Bi g;
    if (bi_deg_p(a) == 0 || bi_deg_p(b) == 0) {
        // a primitive part of main-degree zero is a unit
        g[0] = Uni{{0, GaussQ(1)}};
    } else {
        if (bi_deg_p(a) < bi_deg_p(b)) std::swap(a, b);
        // primitive PRS
        while (true) {
            Bi r = bi_prem(a, b);
            if (r.empty()) break;
            a = std::move(b);
            b = bi_primitive(r);
            if (bi_deg_p(b) == 0) { b.clear(); b[0] = Uni{{0, GaussQ(1)}}; break; }
        }
        g = bi_primitive(b);
    }
    // restore content gcd
    if (!(uni_deg(cg) == 0 && cg.begin()->second.is_one())) {
        Bi gc;
        for (auto& [e, u] : g) gc[e] = uni_mul(u, cg);
        g = std::move(gc);
    }
    return g;
}

// Exact bivariate division (b | a assumed).
Bi bi_divexact(Bi a, const Bi& b) {
    Bi q;
    int db = bi_deg_p(b);
    const Uni& lb = b.rbegin()->second;
    while (!a.empty()) {
        int da = bi_deg_p(a);
        assert(da >= db && "inexact bivariate division (degree)");
        Uni qc = uni_divexact(a.rbegin()->second, lb);
        q[da - db] = qc;
        bi_sub_shifted(a, b, qc, da - db);
        assert(bi_deg_p(a) < da);
    }
    return q;
}

// transpose = true swaps the roles of p and T, so the PRS runs in the
// variable of smaller degree.
Bi to_bi(const LaurentPoly& a, int pe_shift, int te_shift, bool transpose) {
    Bi r;
    for (auto& [e, c] : a.terms()) {
        int main = transpose ? e.te + te_shift : e.pe + pe_shift;
        int sub = transpose ? e.pe + pe_shift : e.te + te_shift;
        r[main][sub] = c;
    }
    return r;
}

LaurentPoly from_bi(const Bi& a, bool transpose) {
    LaurentPoly r;
    for (auto& [main, u] : a)
        for (auto& [sub, c] : u)
            r.set_coeff(transpose ? sub : main, transpose ? main : sub, c);
    return r;
}

} // namespace

int LaurentPoly::min_pe() const {
    int m = 0;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (first || e.pe < m) m = e.pe;
        first = false;
    }
    return m;
}
int LaurentPoly::max_pe() const {
    int m = 0;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (first || e.pe > m) m = e.pe;
        first = false;
    }
    return m;
}
int LaurentPoly::min_te() const {
    int m = 0;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (first || e.te < m) m = e.te;
        first = false;
    }
    return m;
}
int LaurentPoly::max_te() const {
    int m = 0;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (first || e.te > m) m = e.te;
        first = false;
    }
    return m;
}

bool LaurentPoly::depends_on_t() const {
    for (auto& [e, c] : terms_)
        if (e.te != 0) return true;
    return false;
}

const GaussQ& LaurentPoly::coeff(int pe, int te) const {
    auto it = terms_.find(Exp2{pe, te});
    return it == terms_.end() ? kZero : it->second;
}

void LaurentPoly::set_coeff(int pe, int te, const GaussQ& c) {
    if (c.is_zero()) terms_.erase(Exp2{pe, te});
    else terms_[Exp2{pe, te}] = c;
}

std::pair<Exp2, GaussQ> LaurentPoly::lead() const {
    assert(!terms_.empty());
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& b) {
    for (auto& [e, c] : b.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) terms_[e] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& b) {
    for (auto& [e, c] : b.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) terms_[e] = -c;
        else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    r += b;
    return r;
}
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    r -= b;
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [ea, ca] : a.terms_) {
        for (auto& [eb, cb] : b.terms_) {
            Exp2 e{ea.pe + eb.pe, ea.te + eb.te};
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) r.terms_[e] = ca * cb;
            else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

LaurentPoly LaurentPoly::scaled(const GaussQ& c) const {
    LaurentPoly r;
    if (c.is_zero()) return r;
    for (auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

LaurentPoly LaurentPoly::shifted(int dpe, int dte) const {
    LaurentPoly r;
    for (auto& [e, v] : terms_) r.terms_[Exp2{e.pe + dpe, e.te + dte}] = v;
    return r;
}

std::optional<GaussQ> LaurentPoly::eval(const GaussQ& p_val, const GaussQ& t_val) const {
    GaussQ acc;
    for (auto& [e, c] : terms_) {
        if ((e.pe < 0 && p_val.is_zero()) || (e.te < 0 && t_val.is_zero()))
            return std::nullopt;
        acc += c * p_val.pow(e.pe) * t_val.pow(e.te);
    }
    return acc;
}

LaurentPoly LaurentPoly::substitute_t(const GaussQ& t_val) const {
    LaurentPoly r;
    for (auto& [e, c] : terms_) {
        GaussQ v = c * t_val.pow(e.te);
        auto it = r.terms_.find(Exp2{e.pe, 0});
        if (it == r.terms_.end()) {
            if (!v.is_zero()) r.terms_[Exp2{e.pe, 0}] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::substitute_p(const GaussQ& p_val) const {
    LaurentPoly r;
    for (auto& [e, c] : terms_) {
        GaussQ v = c * p_val.pow(e.pe);
        auto it = r.terms_.find(Exp2{0, e.te});
        if (it == r.terms_.end()) {
            if (!v.is_zero()) r.terms_[Exp2{0, e.te}] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

std::string LaurentPoly::str(const char* pname, const char* tname) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending lex order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Exp2& e = it->first;
        const GaussQ& c = it->second;
        std::string cs = c.str();
        bool negated = false;
        if (c.is_real() && c.re() < 0) {
            cs = (-c).str();
            negated = true;
        }
        if (first) {
            if (negated) os << "-";
            first = false;
        } else {
            os << (negated ? " - " : " + ");
        }
        bool has_var = (e.pe != 0 || e.te != 0);
        bool coeff_is_one = (cs == "1");
        bool simple = (c.is_real() || c.re() == 0);
        if (!coeff_is_one || !has_var) {
            if (simple) os << cs;
            else os << "(" << cs << ")";
            if (has_var) os << "*";
        }
        if (e.pe != 0) {
            os << pname;
            if (e.pe != 1) os << "^" << e.pe;
            if (e.te != 0) os << "*";
        }
        if (e.te != 0) {
            os << tname;
            if (e.te != 1) os << "^" << e.te;
        }
    }
    return os.str();
}

namespace {

LaurentPoly normalize_poly_unit(const LaurentPoly& x) {
    if (x.is_zero()) return x;
    LaurentPoly y = x.shifted(-x.min_pe(), -x.min_te());
    return y.scaled(y.lead().second.inverse());
}

// registry of small factors; gcd trial-divides by these first
struct FactorRegistry {
    std::mutex mtx;
    std::vector<LaurentPoly> factors;
    bool contains(const LaurentPoly& f) {
        for (auto& g : factors)
            if (g == f) return true;
        return false;
    }
};
FactorRegistry& factor_registry() {
    static FactorRegistry reg;
    return reg;
}

} // namespace

LaurentPoly laurent_gcd_core(const LaurentPoly& a, const LaurentPoly& b);

void register_gcd_factor(const LaurentPoly& f) {
    LaurentPoly n = normalize_poly_unit(f);
    if (n.is_constant() || n.term_count() > 64) return;
    auto& reg = factor_registry();
    std::lock_guard<std::mutex> lock(reg.mtx);
    if (reg.factors.size() > 512) return;
    if (!reg.contains(n)) reg.factors.push_back(n);
}

std::optional<LaurentPoly> laurent_try_divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return std::nullopt;
    if (b.is_monomial()) {
        auto [e, c] = b.lead();
        return a.shifted(-e.pe, -e.te).scaled(c.inverse());
    }
    // degree screens
    if (a.max_pe() - a.min_pe() < b.max_pe() - b.min_pe()) return std::nullopt;
    if (a.max_te() - a.min_te() < b.max_te() - b.min_te()) return std::nullopt;
    // evaluation screen at T = 3 when applicable
    LaurentPoly at = a.substitute_t(GaussQ(3)), bt = b.substitute_t(GaussQ(3));
    if (!at.is_zero() && !bt.is_zero()) {
        Uni ua, ub;
        for (auto& [e, c] : at.terms()) ua[e.pe - at.min_pe()] = c;
        for (auto& [e, c] : bt.terms()) ub[e.pe - bt.min_pe()] = c;
        Uni q, r;
        uni_divmod(ua, ub, q, r);
        if (!r.empty()) return std::nullopt;
    }
    bool transpose = (a.max_te() - a.min_te()) < (a.max_pe() - a.min_pe());
    Bi ba = to_bi(a, -a.min_pe(), -a.min_te(), transpose);
    Bi bb = to_bi(b, -b.min_pe(), -b.min_te(), transpose);
    // full trial division in the main variable
    Bi q;
    int db = bi_deg_p(bb);
    const Uni& lb = bb.rbegin()->second;
    while (!ba.empty()) {
        int da = bi_deg_p(ba);
        if (da < db) return std::nullopt;
        Uni qc, rem;
        uni_divmod(ba.rbegin()->second, lb, qc, rem);
        if (!rem.empty()) return std::nullopt;
        q[da - db] = qc;
        bi_sub_shifted(ba, bb, qc, da - db);
        if (!ba.empty() && bi_deg_p(ba) >= da) return std::nullopt;
    }
    LaurentPoly result = from_bi(q, transpose);
    return result.shifted(a.min_pe() - b.min_pe(), a.min_te() - b.min_te());
}

bool laurent_less(const LaurentPoly& a, const LaurentPoly& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first < ib->first) return true;
        if (ib->first < ia->first) return false;
        if (ia->second < ib->second) return true;
        if (ib->second < ia->second) return false;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

LaurentPoly laurent_gcd(const LaurentPoly& a_in, const LaurentPoly& b_in) {
    auto normalize_poly = normalize_poly_unit;
    if (a_in.is_zero()) return normalize_poly(b_in);
    if (b_in.is_zero()) return normalize_poly(a_in);
    if (a_in.is_monomial() || b_in.is_monomial()) return LaurentPoly(GaussQ(1));

    // small operands: the remainder sequence beats every screen
    if (std::min(a_in.term_count(), b_in.term_count()) <= 8 ||
        a_in.term_count() * b_in.term_count() <= 64)
        return laurent_gcd_core(a_in, b_in);

    // trial division by the registered small factors
    LaurentPoly a = a_in, b = b_in, common(GaussQ(1));
    {
        auto& reg = factor_registry();
        std::lock_guard<std::mutex> lock(reg.mtx);
        for (auto& f : reg.factors) {
            while (true) {
                if (a.is_monomial() || b.is_monomial()) break;
                auto qa = laurent_try_divide(a, f);
                if (!qa) break;
                auto qb = laurent_try_divide(b, f);
                if (!qb) break;
                a = std::move(*qa);
                b = std::move(*qb);
                common = common * f;
            }
        }
    }
    if (a.is_monomial() || b.is_monomial()) return normalize_poly(common);
    LaurentPoly core = laurent_gcd_core(a, b);
    if (core.is_constant()) return normalize_poly(common);
    register_gcd_factor(core);
    return normalize_poly(common * core);
}

LaurentPoly laurent_gcd_core(const LaurentPoly& a, const LaurentPoly& b) {
    auto normalize_poly = normalize_poly_unit;
    if (a.is_zero()) return normalize_poly(b);
    if (b.is_zero()) return normalize_poly(a);
    if (a.is_monomial() || b.is_monomial()) return LaurentPoly(GaussQ(1));

    // fast path: both free of T -> univariate gcd in p
    if (!a.depends_on_t() && !b.depends_on_t()) {
        Uni ua, ub;
        for (auto& [e, c] : a.terms()) ua[e.pe - a.min_pe()] = c;
        for (auto& [e, c] : b.terms()) ub[e.pe - b.min_pe()] = c;
        Uni g = uni_gcd(ua, ub);
        LaurentPoly r;
        for (auto& [pe, c] : g) r.set_coeff(pe, 0, c);
        return normalize_poly(r);
    }

    // evaluation shortcut: if the gcd of the images at T = t0 is constant,
    // the bivariate gcd has p-degree 0 and reduces to a content gcd (and
    // symmetrically for the p-image)
    {
        LaurentPoly at = a.substitute_t(GaussQ(3)), bt = b.substitute_t(GaussQ(3));
        if (!at.is_zero() && !bt.is_zero()) {
            Uni ua, ub;
            for (auto& [e, c] : at.terms()) ua[e.pe - at.min_pe()] = c;
            for (auto& [e, c] : bt.terms()) ub[e.pe - bt.min_pe()] = c;
            Uni gi = uni_gcd(ua, ub);
            if (uni_deg(gi) == 0) {
                Bi ba = to_bi(a, -a.min_pe(), -a.min_te(), false);
                Bi bb = to_bi(b, -b.min_pe(), -b.min_te(), false);
                Uni g = uni_gcd(bi_content(ba), bi_content(bb));
                LaurentPoly r;
                for (auto& [te, c] : g) r.set_coeff(0, te, c);
                return normalize_poly(r);
            }
        }
        LaurentPoly ap = a.substitute_p(GaussQ(5)), bp = b.substitute_p(GaussQ(5));
        if (!ap.is_zero() && !bp.is_zero()) {
            Uni ua, ub;
            for (auto& [e, c] : ap.terms()) ua[e.te - ap.min_te()] = c;
            for (auto& [e, c] : bp.terms()) ub[e.te - bp.min_te()] = c;
            Uni gi = uni_gcd(ua, ub);
            if (uni_deg(gi) == 0) {
                Bi ba = to_bi(a, -a.min_pe(), -a.min_te(), true);
                Bi bb = to_bi(b, -b.min_pe(), -b.min_te(), true);
                Uni g = uni_gcd(bi_content(ba), bi_content(bb));
                LaurentPoly r;
                for (auto& [pe, c] : g) r.set_coeff(pe, 0, c);
                return normalize_poly(r);
            }
        }
    }

    // run the PRS in the variable of smaller degree span
    int p_span = std::max(a.max_pe() - a.min_pe(), b.max_pe() - b.min_pe());
    int t_span = std::max(a.max_te() - a.min_te(), b.max_te() - b.min_te());
    bool transpose = t_span < p_span;
    Bi ba = to_bi(a, -a.min_pe(), -a.min_te(), transpose);
    Bi bb = to_bi(b, -b.min_pe(), -b.min_te(), transpose);
    Bi g = bi_gcd(std::move(ba), std::move(bb));
    return normalize_poly(from_bi(g, transpose));
}

LaurentPoly laurent_divexact(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return a;
    assert(!b.is_zero());
    if (b.is_monomial()) {
        auto [e, c] = b.lead();
        return a.shifted(-e.pe, -e.te).scaled(c.inverse());
    }
    int p_span = std::max(a.max_pe() - a.min_pe(), b.max_pe() - b.min_pe());
    int t_span = std::max(a.max_te() - a.min_te(), b.max_te() - b.min_te());
    bool transpose = t_span < p_span;
    Bi ba = to_bi(a, -a.min_pe(), -a.min_te(), transpose);
    Bi bb = to_bi(b, -b.min_pe(), -b.min_te(), transpose);
    Bi q = bi_divexact(std::move(ba), bb);
    LaurentPoly r = from_bi(q, transpose);
    // restore the monomial unit stripped from numerator and denominator
    return r.shifted(a.min_pe() - b.min_pe(), a.min_te() - b.min_te());
}

} // namespace qorbit
