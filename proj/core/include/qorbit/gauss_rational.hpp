#ifndef QORBIT_GAUSS_RATIONAL_HPP
#define QORBIT_GAUSS_RATIONAL_HPP

#include <gmpxx.h>
#include <iosfwd>
#include <string>

namespace qorbit {

// Exact Gaussian rational a + b*i with i^2 = -1.
class GaussQ {
public:
    GaussQ() : re_(0), im_(0) {}
    GaussQ(long v) : re_(v), im_(0) {}
    GaussQ(const mpq_class& re) : re_(re), im_(0) { canonicalize(); }
    GaussQ(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) { canonicalize(); }
    GaussQ(long num, long den) : re_(mpq_class(num, den)), im_(0) { canonicalize(); }

    static GaussQ i() { return GaussQ(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussQ operator-() const { return GaussQ(-re_, -im_); }
    GaussQ conj() const { return GaussQ(re_, -im_); }

    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
        mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
        return GaussQ((a.re_ * b.re_ + a.im_ * b.im_) / n,
                      (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    GaussQ& operator+=(const GaussQ& b) { re_ += b.re_; im_ += b.im_; return *this; }
    GaussQ& operator-=(const GaussQ& b) { re_ -= b.re_; im_ -= b.im_; return *this; }
    GaussQ& operator*=(const GaussQ& b) { *this = *this * b; return *this; }
    GaussQ& operator/=(const GaussQ& b) { *this = *this / b; return *this; }

    GaussQ inverse() const {
        mpq_class n = re_ * re_ + im_ * im_;
        return GaussQ(re_ / n, -im_ / n);
    }

    GaussQ pow(long k) const;

    friend bool operator==(const GaussQ& a, const GaussQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
    friend bool operator<(const GaussQ& a, const GaussQ& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::string str() const;

private:
    void canonicalize() { re_.canonicalize(); im_.canonicalize(); }
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const GaussQ& g);

} // namespace qorbit

#endif
