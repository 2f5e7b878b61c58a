#include "qorbit/weight.hpp"

#include "qorbit/errors.hpp"

#include <sstream>

namespace qorbit {

void Weight::normalize_t() {
    bool all_zero = true;
    for (auto& c : t_coords_) {
        c.canonicalize();
        if (c != 0) all_zero = false;
    }
    if (all_zero) t_coords_.clear();
}

bool Weight::is_zero() const {
    if (lambda_mult_ != 0 || !t_coords_.empty()) return false;
    for (auto& c : coords_)
        if (c != 0) return false;
    return true;
}

mpq_class Weight::coord_sum() const {
    mpq_class s = 0;
    for (auto& c : coords_) s += c;
    return s;
}

namespace {

std::vector<mpq_class> add_t(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                             std::size_t dim, int sign) {
    if (a.empty() && b.empty()) return {};
    std::vector<mpq_class> r(dim, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
    return r;
}

} // namespace

Weight operator+(const Weight& a, const Weight& b) {
    if (a.dim() != b.dim()) throw precondition_error("weight rank mismatch");
    std::vector<mpq_class> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a.coords_[i] + b.coords_[i];
    return Weight(std::move(c), a.lambda_mult_ + b.lambda_mult_,
                  add_t(a.t_coords_, b.t_coords_, a.dim(), 1));
}

Weight operator-(const Weight& a, const Weight& b) {
    if (a.dim() != b.dim()) throw precondition_error("weight rank mismatch");
    std::vector<mpq_class> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a.coords_[i] - b.coords_[i];
    return Weight(std::move(c), a.lambda_mult_ - b.lambda_mult_,
                  add_t(a.t_coords_, b.t_coords_, a.dim(), -1));
}

Weight Weight::operator-() const {
    std::vector<mpq_class> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = -coords_[i];
    std::vector<mpq_class> t(t_coords_.size());
    for (std::size_t i = 0; i < t_coords_.size(); ++i) t[i] = -t_coords_[i];
    return Weight(std::move(c), -lambda_mult_, std::move(t));
}

Weight Weight::scaled(const mpq_class& k) const {
    if (k != 1 && lambda_mult_ != 0 && mpq_class(k * lambda_mult_).get_den() != 1)
        throw precondition_error("fractional lambda multiplicity");
    std::vector<mpq_class> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = coords_[i] * k;
    std::vector<mpq_class> t(t_coords_.size());
    for (std::size_t i = 0; i < t_coords_.size(); ++i) t[i] = t_coords_[i] * k;
    mpq_class lm = k * lambda_mult_;
    return Weight(std::move(c), lm.get_num().get_si(), std::move(t));
}

bool operator<(const Weight& a, const Weight& b) {
    if (a.lambda_mult_ != b.lambda_mult_) return a.lambda_mult_ < b.lambda_mult_;
    if (a.coords_.size() != b.coords_.size()) return a.coords_.size() < b.coords_.size();
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
        int c = cmp(a.coords_[i], b.coords_[i]);
        if (c != 0) return c < 0;
    }
    if (a.t_coords_.size() != b.t_coords_.size())
        return a.t_coords_.size() < b.t_coords_.size();
    for (std::size_t i = 0; i < a.t_coords_.size(); ++i) {
        int c = cmp(a.t_coords_[i], b.t_coords_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string Weight::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ",";
        os << coords_[i];
        if (i < t_coords_.size() && t_coords_[i] != 0) os << "+" << t_coords_[i] << "s";
    }
    if (lambda_mult_ == 1) os << "+L";
    else if (lambda_mult_ == -1) os << "-L";
    else if (lambda_mult_ != 0) os << (lambda_mult_ > 0 ? "+" : "") << lambda_mult_ << "L";
    return os.str();
}

long Pairing::lambda_int() const {
    if (lambda.get_den() != 1)
        throw precondition_error("fractional lambda pairing");
    return lambda.get_num().get_si();
}

ExpLin Pairing::exp() const {
    if (tpart.get_den() != 1)
        throw precondition_error("fractional symbolic pairing");
    return ExpLin(plain, lambda_int(), tpart.get_num().get_si());
}

Pairing inner(const Weight& a, const Weight& b) {
    if (a.dim() != b.dim()) throw precondition_error("weight rank mismatch");
    if (a.lambda_mult() != 0 && b.lambda_mult() != 0)
        throw precondition_error("pairing (lambda, lambda) is not defined");
    if (a.has_t() && b.has_t())
        throw precondition_error("pairing of two symbolic weights is not defined");
    Pairing r;
    for (std::size_t i = 0; i < a.dim(); ++i) r.plain += a[i] * b[i];
    r.plain.canonicalize();
    // (lambda, eps_i) carries the same symbol for every i
    r.lambda = mpq_class(a.lambda_mult()) * b.coord_sum() + mpq_class(b.lambda_mult()) * a.coord_sum();
    r.lambda.canonicalize();
    for (std::size_t i = 0; i < a.t_coords().size(); ++i) r.tpart += a.t_coords()[i] * b[i];
    for (std::size_t i = 0; i < b.t_coords().size(); ++i) r.tpart += b.t_coords()[i] * a[i];
    r.tpart.canonicalize();
    return r;
}

Scalar q_pairing_power(const Weight& a, const Weight& b) {
    return q_power(inner(a, b).exp());
}

} // namespace qorbit
