#ifndef QORBIT_WEIGHT_HPP
#define QORBIT_WEIGHT_HPP

#include "qorbit/scalar.hpp"

#include <gmpxx.h>
#include <string>
#include <vector>

namespace qorbit {

// Weight in an orthonormal ambient basis (the eps-basis for type B), plus an
// integer multiple of the base weight lambda and an optional symbolic part
// s * t_coords (used for reference weights that must be generic at every
// depth). Pairings with lambda or s are never expanded numerically; they ride
// along symbolically until a q-power consumes them.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t dim) : coords_(dim, mpq_class(0)) {}
    Weight(std::vector<mpq_class> coords, long lambda_mult = 0)
        : coords_(std::move(coords)), lambda_mult_(lambda_mult) {
        for (auto& c : coords_) c.canonicalize();
    }
    Weight(std::vector<mpq_class> coords, long lambda_mult, std::vector<mpq_class> t_coords)
        : coords_(std::move(coords)), lambda_mult_(lambda_mult), t_coords_(std::move(t_coords)) {
        for (auto& c : coords_) c.canonicalize();
        normalize_t();
    }

    std::size_t dim() const { return coords_.size(); }
    const mpq_class& operator[](std::size_t i) const { return coords_[i]; }
    mpq_class& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<mpq_class>& coords() const { return coords_; }
    long lambda_mult() const { return lambda_mult_; }
    const std::vector<mpq_class>& t_coords() const { return t_coords_; }
    bool has_t() const { return !t_coords_.empty(); }

    bool is_zero() const;
    mpq_class coord_sum() const;

    friend Weight operator+(const Weight& a, const Weight& b);
    friend Weight operator-(const Weight& a, const Weight& b);
    Weight operator-() const;
    Weight scaled(const mpq_class& c) const;
    Weight& operator+=(const Weight& b) { *this = *this + b; return *this; }
    Weight& operator-=(const Weight& b) { *this = *this - b; return *this; }

    friend bool operator==(const Weight& a, const Weight& b) {
        return a.lambda_mult_ == b.lambda_mult_ && a.coords_ == b.coords_ &&
               a.t_coords_ == b.t_coords_;
    }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b);

    std::string str() const;

private:
    void normalize_t();
    std::vector<mpq_class> coords_;
    long lambda_mult_ = 0;
    std::vector<mpq_class> t_coords_; // empty means zero
};

// Result of pairing two weights: a rational part plus multiples of the
// symbolic pairings (lambda, eps) and s.
struct Pairing {
    mpq_class plain = 0;
    mpq_class lambda = 0;
    mpq_class tpart = 0;

    bool is_plain() const { return lambda == 0 && tpart == 0; }
    long lambda_int() const;
    ExpLin exp() const; // as a q-exponent
};

// Inner product in the orthonormal ambient basis; at most one operand may
// carry a lambda part.
Pairing inner(const Weight& a, const Weight& b);

// q^(a, b) through the fixed branch q^(lambda,eps) = i/p.
Scalar q_pairing_power(const Weight& a, const Weight& b);

} // namespace qorbit

#endif
