#include "qorbit/scalar.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

namespace qorbit {

Scalar::Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw division_error("scalar with zero denominator");
    if (num_.is_zero()) {
        den_ = LaurentPoly(GaussQ(1));
        return;
    }
    if (den_.is_monomial()) {
        auto [e, c] = den_.lead();
        num_ = num_.shifted(-e.pe, -e.te).scaled(c.inverse());
        den_ = LaurentPoly(GaussQ(1));
        return;
    }
    LaurentPoly g = laurent_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = laurent_divexact(num_, g);
        den_ = laurent_divexact(den_, g);
    }
    int sp = den_.min_pe(), st = den_.min_te();
    if (sp != 0 || st != 0) {
        den_ = den_.shifted(-sp, -st);
        num_ = num_.shifted(-sp, -st);
    }
    GaussQ lc = den_.lead().second;
    if (!lc.is_one()) {
        GaussQ inv = lc.inverse();
        den_ = den_.scaled(inv);
        num_ = num_.scaled(inv);
    }
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Scalar::Scalar(LaurentPoly num, LaurentPoly den, coprime_tag)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) {
        den_ = LaurentPoly(GaussQ(1));
        return;
    }
    if (den_.is_monomial()) {
        auto [e, c] = den_.lead();
        num_ = num_.shifted(-e.pe, -e.te).scaled(c.inverse());
        den_ = LaurentPoly(GaussQ(1));
        return;
    }
    int sp = den_.min_pe(), st = den_.min_te();
    if (sp != 0 || st != 0) {
        den_ = den_.shifted(-sp, -st);
        num_ = num_.shifted(-sp, -st);
    }
    GaussQ lc = den_.lead().second;
    if (!lc.is_one()) {
        GaussQ inv = lc.inverse();
        den_ = den_.scaled(inv);
        num_ = num_.scaled(inv);
    }
}

Scalar scalar_from_coprime(LaurentPoly num, LaurentPoly den) {
    return Scalar(std::move(num), std::move(den), Scalar::coprime_tag{});
}

namespace {

LaurentPoly div_by(const LaurentPoly& a, const LaurentPoly& g) {
    return g.is_constant() ? a.scaled(g.coeff(0, 0).inverse())
                           : laurent_divexact(a, g);
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        LaurentPoly t = a.num_ + b.num_;
        if (a.den_.is_constant() || t.is_zero()) return scalar_from_coprime(std::move(t), a.den_);
        LaurentPoly g = laurent_gcd(t, a.den_);
        return scalar_from_coprime(div_by(t, g), div_by(a.den_, g));
    }
    LaurentPoly d = laurent_gcd(a.den_, b.den_);
    if (d.is_constant()) {
        // coprime denominators: the sum is already reduced
        return scalar_from_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    LaurentPoly bdd = laurent_divexact(b.den_, d);
    LaurentPoly add = laurent_divexact(a.den_, d);
    LaurentPoly t = a.num_ * bdd + b.num_ * add;
    if (t.is_zero()) return Scalar();
    LaurentPoly g = laurent_gcd(t, d);
    return scalar_from_coprime(div_by(t, g), div_by(add * b.den_, g));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) return a;
    return a + (-b);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    LaurentPoly g1 = laurent_gcd(a.num_, b.den_);
    LaurentPoly g2 = laurent_gcd(b.num_, a.den_);
    return scalar_from_coprime(div_by(a.num_, g1) * div_by(b.num_, g2),
                               div_by(a.den_, g2) * div_by(b.den_, g1));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw division_error("scalar division by zero");
    if (a.is_zero()) return Scalar();
    LaurentPoly g1 = laurent_gcd(a.num_, b.num_);
    LaurentPoly g2 = laurent_gcd(b.den_, a.den_);
    return scalar_from_coprime(div_by(a.num_, g1) * div_by(b.den_, g2),
                               div_by(a.den_, g2) * div_by(b.num_, g1));
}

std::optional<Scalar> Scalar::try_div(const Scalar& b) const {
    if (b.is_zero()) return std::nullopt;
    return *this / b;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw division_error("inverse of zero scalar");
    return Scalar(den_, num_, coprime_tag{});
}

Scalar Scalar::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar acc(1);
    Scalar base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::optional<GaussQ> Scalar::eval_at(const GaussQ& p_val, const GaussQ& t_val) const {
    auto d = den_.eval(p_val, t_val);
    if (!d || d->is_zero()) return std::nullopt;
    auto n = num_.eval(p_val, t_val);
    if (!n) return std::nullopt;
    return *n / *d;
}

std::optional<Scalar> Scalar::substitute_t(const GaussQ& t_val) const {
    LaurentPoly d = den_.substitute_t(t_val);
    if (d.is_zero()) return std::nullopt;
    return Scalar(num_.substitute_t(t_val), std::move(d));
}

std::optional<Scalar> Scalar::substitute_p(const GaussQ& p_val) const {
    LaurentPoly d = den_.substitute_p(p_val);
    if (d.is_zero()) return std::nullopt;
    return Scalar(num_.substitute_p(p_val), std::move(d));
}

int Scalar::t_span() const {
    if (is_zero()) return 0;
    return (num_.max_te() - num_.min_te()) + (den_.max_te() - den_.min_te());
}

int Scalar::p_span() const {
    if (is_zero()) return 0;
    return (num_.max_pe() - num_.min_pe()) + (den_.max_pe() - den_.min_pe());
}

std::string Scalar::str(const char* pname, const char* tname) const {
    std::ostringstream os;
    os << "(" << num_.str(pname, tname) << ")";
    if (!den_.is_constant()) os << "/(" << den_.str(pname, tname) << ")";
    return os.str();
}

Scalar q_power(const ExpLin& z) {
    mpq_class two_c = z.c * 2;
    if (two_c.get_den() != 1)
        throw precondition_error("q-exponent is not half-integral");
    long pe = static_cast<long>(two_c.get_num().get_si());
    // q^z = p^(2c) * (i p^-1)^lam * T^(2t)
    GaussQ coeff = GaussQ::i().pow(z.lam);
    return Scalar(LaurentPoly::monomial(coeff, static_cast<int>(pe - z.lam),
                                        static_cast<int>(2 * z.t)));
}

Scalar p_power(const ExpLin& z) {
    if (z.c.get_den() != 1)
        throw precondition_error("p-exponent is not integral");
    if (z.lam % 2 != 0)
        throw precondition_error("p-exponent has an odd lambda part");
    long c = z.c.get_num().get_si();
    long half = z.lam / 2;
    GaussQ coeff = GaussQ::i().pow(half);
    return Scalar(LaurentPoly::monomial(coeff, static_cast<int>(c - half),
                                        static_cast<int>(z.t)));
}

namespace {
struct QnumKey {
    mpq_class c;
    long lam, t;
    int base;
    bool operator<(const QnumKey& o) const {
        if (base != o.base) return base < o.base;
        if (lam != o.lam) return lam < o.lam;
        if (t != o.t) return t < o.t;
        return c < o.c;
    }
};
} // namespace

Scalar qnum(const ExpLin& z, QBase base) {
    static std::map<QnumKey, Scalar> memo;
    static std::mutex memo_mtx;
    QnumKey key{z.c, z.lam, z.t, base == QBase::Q ? 0 : 1};
    {
        std::lock_guard<std::mutex> lock(memo_mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    Scalar bz = (base == QBase::Q) ? q_power(z) : p_power(z);
    Scalar bzi = (base == QBase::Q) ? q_power(-z) : p_power(-z);
    int u = (base == QBase::Q) ? 2 : 1;
    Scalar den = Scalar::p_power(u) - Scalar::p_power(-u);
    Scalar r = (bz - bzi) / den;
    // quantum integers are the atoms of every structure constant; remember
    // their factors so gcds can trial-divide instead of running remainder
    // sequences
    register_gcd_factor(r.num());
    register_gcd_factor(r.den());
    std::lock_guard<std::mutex> lock(memo_mtx);
    memo.emplace(std::move(key), r);
    return r;
}

Scalar qfact(long k, QBase base) {
    Scalar acc(1);
    for (long j = 2; j <= k; ++j) acc *= qnum(ExpLin(j), base);
    return acc;
}

Scalar qpow(const mpq_class& mu_pairing, long lambda_mult) {
    return q_power(ExpLin(mu_pairing, lambda_mult, 0));
}

} // namespace qorbit
