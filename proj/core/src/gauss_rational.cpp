#include "qorbit/gauss_rational.hpp"

#include <ostream>
#include <sstream>

namespace qorbit {

GaussQ GaussQ::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    GaussQ acc(1);
    GaussQ base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string GaussQ::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussQ& g) {
    if (g.is_zero()) return os << "0";
    bool have_re = g.re() != 0;
    if (have_re) os << g.re();
    if (g.im() != 0) {
        if (have_re && g.im() > 0) os << "+";
        if (g.im() == -1) os << "-";
        else if (g.im() != 1) os << g.im() << "*";
        os << "i";
    }
    return os;
}

} // namespace qorbit
