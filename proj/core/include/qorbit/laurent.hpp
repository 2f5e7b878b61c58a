#ifndef QORBIT_LAURENT_HPP
#define QORBIT_LAURENT_HPP

#include "qorbit/gauss_rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace qorbit {

// Exponent of a monomial p^pe * T^te. Both exponents may be negative.
struct Exp2 {
    int pe = 0;
    int te = 0;
    friend bool operator<(const Exp2& a, const Exp2& b) {
        if (a.pe != b.pe) return a.pe < b.pe;
        return a.te < b.te;
    }
    friend bool operator==(const Exp2& a, const Exp2& b) {
        return a.pe == b.pe && a.te == b.te;
    }
};

// Sparse Laurent polynomial in (p, T) with Gaussian-rational coefficients.
// T stands for a free transcendental; identity suites read it as p^s, the
// reflection layer reads it as the solution parameter c.
class LaurentPoly {
public:
    using TermMap = std::map<Exp2, GaussQ>;

    LaurentPoly() = default;
    explicit LaurentPoly(const GaussQ& c) {
        if (!c.is_zero()) terms_[Exp2{0, 0}] = c;
    }
    LaurentPoly(long v) : LaurentPoly(GaussQ(v)) {}

    static LaurentPoly monomial(const GaussQ& c, int pe, int te = 0) {
        LaurentPoly r;
        if (!c.is_zero()) r.terms_[Exp2{pe, te}] = c;
        return r;
    }
    static LaurentPoly p_power(int k) { return monomial(GaussQ(1), k, 0); }
    static LaurentPoly t_power(int k) { return monomial(GaussQ(1), 0, k); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Exp2{0, 0});
    }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }

    // Degree data (0 on the zero polynomial).
    int min_pe() const;
    int max_pe() const;
    int min_te() const;
    int max_te() const;
    bool depends_on_t() const;

    const GaussQ& coeff(int pe, int te) const;
    void set_coeff(int pe, int te, const GaussQ& c);

    // Lex-leading term (max exponent pair).
    std::pair<Exp2, GaussQ> lead() const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator+=(const LaurentPoly& b);
    LaurentPoly& operator-=(const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& b) { *this = *this * b; return *this; }

    LaurentPoly scaled(const GaussQ& c) const;
    LaurentPoly shifted(int dpe, int dte) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // Exact evaluation. Returns nullopt only when p_val is zero and a negative
    // p-exponent occurs (same for t).
    std::optional<GaussQ> eval(const GaussQ& p_val, const GaussQ& t_val) const;

    // Substitute one variable by a constant, keeping the other symbolic.
    LaurentPoly substitute_t(const GaussQ& t_val) const;
    LaurentPoly substitute_p(const GaussQ& p_val) const;

    std::string str(const char* pname = "p", const char* tname = "T") const;

private:
    TermMap terms_; // zero coefficients never stored
};

// gcd of Laurent polynomials, defined up to a unit (monomial times constant).
// The result is an ordinary polynomial with min exponents 0 and lex-leading
// coefficient 1; gcd with a zero argument returns the other argument normalized.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Exact division; aborts if b does not divide a.
LaurentPoly laurent_divexact(const LaurentPoly& a, const LaurentPoly& b);

// Attempt a / b; nullopt when b does not divide a.
std::optional<LaurentPoly> laurent_try_divide(const LaurentPoly& a, const LaurentPoly& b);

// Deterministic total order (used for factor bookkeeping).
bool laurent_less(const LaurentPoly& a, const LaurentPoly& b);

// Register a polynomial as a known small factor; gcd trial-divides by the
// registered factors before falling back to remainder sequences. Quantum
// integers register their numerators automatically.
void register_gcd_factor(const LaurentPoly& f);

} // namespace qorbit

#endif
