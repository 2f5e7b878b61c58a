#ifndef QORBIT_SCALAR_HPP
#define QORBIT_SCALAR_HPP

#include "qorbit/errors.hpp"
#include "qorbit/laurent.hpp"

#include <optional>
#include <string>

namespace qorbit {

// Exponent of q that is linear in the symbols the engine works with:
//
//   z = c + lam * (lambda, eps) + t * s
//
// c is a (half-)integer constant, lam counts the symbolic pairing with the
// base weight lambda (fixed by q^(lambda,eps) = i/p), and t counts the free
// shift parameter s (carried by the transcendental T = p^s).
struct ExpLin {
    mpq_class c = 0;
    long lam = 0;
    long t = 0;

    ExpLin() = default;
    ExpLin(mpq_class c_, long lam_ = 0, long t_ = 0) : c(std::move(c_)), lam(lam_), t(t_) {}
    ExpLin(long c_) : c(c_) {}
    ExpLin(int c_) : c(c_) {}

    ExpLin operator-() const { return ExpLin(-c, -lam, -t); }
    friend ExpLin operator+(const ExpLin& a, const ExpLin& b) {
        return ExpLin(a.c + b.c, a.lam + b.lam, a.t + b.t);
    }
    friend ExpLin operator-(const ExpLin& a, const ExpLin& b) {
        return ExpLin(a.c - b.c, a.lam - b.lam, a.t - b.t);
    }
    ExpLin scaled(long k) const { return ExpLin(c * k, lam * k, t * k); }
    friend bool operator==(const ExpLin& a, const ExpLin& b) {
        return a.c == b.c && a.lam == b.lam && a.t == b.t;
    }
};

enum class QBase { Q, P };

// Element of the exact coefficient field: a normalized rational function in
// (p, T) over the Gaussian rationals, q = p^2. Normal form: denominator is an
// ordinary polynomial with min exponents 0 and lex-leading coefficient 1, and
// gcd(numerator, denominator) = 1, so equality is syntactic.
class Scalar {
public:
    Scalar() : num_(), den_(GaussQ(1)) {}
    Scalar(long v) : num_(GaussQ(v)), den_(GaussQ(1)) {}
    Scalar(const GaussQ& c) : num_(c), den_(GaussQ(1)) {}
    Scalar(LaurentPoly num, LaurentPoly den);
    explicit Scalar(LaurentPoly num) : num_(std::move(num)), den_(GaussQ(1)) {}

    static Scalar p_power(int k) { return Scalar(LaurentPoly::p_power(k)); }
    static Scalar t_power(int k) { return Scalar(LaurentPoly::t_power(k)); }
    static Scalar imag() { return Scalar(GaussQ::i()); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.coeff(0, 0).is_one(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool depends_on_t() const { return num_.depends_on_t() || den_.depends_on_t(); }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b); // throws division_error on b == 0
    Scalar& operator+=(const Scalar& b) { *this = *this + b; return *this; }
    Scalar& operator-=(const Scalar& b) { *this = *this - b; return *this; }
    Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }
    Scalar& operator/=(const Scalar& b) { *this = *this / b; return *this; }

    std::optional<Scalar> try_div(const Scalar& b) const;
    Scalar inverse() const;
    Scalar pow(long k) const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Exact evaluation at p = p_val, T = t_val; nullopt signals a pole
    // (resample).
    std::optional<GaussQ> eval_at(const GaussQ& p_val, const GaussQ& t_val = GaussQ(1)) const;

    // Partial substitutions used by the multipoint verification regime.
    std::optional<Scalar> substitute_t(const GaussQ& t_val) const;
    std::optional<Scalar> substitute_p(const GaussQ& p_val) const;

    // Conservative degree data for multipoint certificates.
    int t_span() const;
    int p_span() const;

    // Canonical serialization "(<num>)/(<den>)"; "(<num>)" when den = 1.
    std::string str(const char* pname = "p", const char* tname = "T") const;

private:
    struct coprime_tag {};
    // Fast path for a pair already known to be coprime.
    Scalar(LaurentPoly num, LaurentPoly den, coprime_tag);
    friend Scalar scalar_from_coprime(LaurentPoly num, LaurentPoly den);

    LaurentPoly num_, den_;
};

// q^z for a linear exponent; requires 2*z.c integral.
Scalar q_power(const ExpLin& z);
// p^z; requires z.c integral and z.lam even.
Scalar p_power(const ExpLin& z);
// Quantum number [z]_base = (b^z - b^-z)/(b - b^-1).
Scalar qnum(const ExpLin& z, QBase base = QBase::Q);
// Quantum factorial [k]_base!.
Scalar qfact(long k, QBase base = QBase::Q);

// q^(mu_pairing) * (q^(lambda,eps))^lambda_mult with the fixed branch
// q^(lambda,eps) = i * p^-1.
Scalar qpow(const mpq_class& mu_pairing, long lambda_mult);

} // namespace qorbit

#endif
