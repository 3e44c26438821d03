#include "pfcorr/useries.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "pfcorr/errors.hpp"

namespace pfcorr {

USeries USeries::monomial(GaussianRational coeff, long degree, int order) {
    USeries s(order);
    if (degree >= 0 && degree <= order) s.c_[degree] = std::move(coeff);
    return s;
}

bool USeries::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

int USeries::ord() const {
    for (int k = 0; k <= order_; ++k)
        if (!c_[k].is_zero()) return k;
    return order_ + 1;
}

const GaussianRational& USeries::coeff(int k) const {
    static const GaussianRational zero{};
    if (k < 0 || k > order_) return zero;
    return c_[k];
}

GaussianRational& USeries::coeff_mut(int k) {
    if (k < 0 || k > order_) throw IndexOutOfRange("series coefficient index");
    return c_[k];
}

USeries USeries::truncated(int order) const {
    USeries r(order);
    for (int k = 0; k <= std::min(order, order_); ++k) r.c_[k] = c_[k];
    return r;
}

USeries USeries::stretched(int s) const {
    USeries r(order_);
    for (int k = 0; k <= order_; ++k) {
        long d = static_cast<long>(k) * s;
        if (d > order_) break;
        r.c_[d] = c_[k];
    }
    return r;
}

USeries USeries::operator-() const {
    USeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = -c_[k];
    return r;
}

USeries& USeries::operator+=(const USeries& o) {
    if (o.order_ < order_) {
        order_ = o.order_;
        c_.resize(order_ + 1);
    }
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
}

USeries& USeries::operator-=(const USeries& o) {
    if (o.order_ < order_) {
        order_ = o.order_;
        c_.resize(order_ + 1);
    }
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
}

USeries operator+(const USeries& a, const USeries& b) {
    USeries r = a;
    r += b;
    return r;
}

USeries operator-(const USeries& a, const USeries& b) {
    USeries r = a;
    r -= b;
    return r;
}

USeries operator*(const USeries& a, const USeries& b) {
    int n = std::min(a.order_, b.order_);
    USeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

USeries USeries::scaled(const GaussianRational& c) const {
    USeries r(order_);
    if (c.is_zero()) return r;
    for (int k = 0; k <= order_; ++k)
        if (!c_[k].is_zero()) r.c_[k] = c_[k] * c;
    return r;
}

USeries USeries::inverted() const {
    if (c_[0].is_zero()) throw InvertNonUnit("series inverse: constant term is zero");
    USeries r(order_);
    GaussianRational inv0 = c_[0].inverse();
    r.c_[0] = inv0;
    for (int n = 1; n <= order_; ++n) {
        GaussianRational acc;
        for (int k = 1; k <= n; ++k) {
            if (c_[k].is_zero() || r.c_[n - k].is_zero()) continue;
            acc += c_[k] * r.c_[n - k];
        }
        r.c_[n] = -(acc * inv0);
    }
    return r;
}

USeries USeries::sqrt_with_constant(const GaussianRational& c0) const {
    if (c0 * c0 != c_[0]) throw Error("sqrt: prescribed constant term does not square to the series constant");
    if (c0.is_zero()) throw InvertNonUnit("sqrt: zero constant term");
    USeries g(order_);
    g.c_[0] = c0;
    GaussianRational half_inv = (GaussianRational(2) * c0).inverse();
    for (int n = 1; n <= order_; ++n) {
        GaussianRational acc = c_[n];
        for (int k = 1; k < n; ++k) acc -= g.c_[k] * g.c_[n - k];
        g.c_[n] = acc * half_inv;
    }
    return g;
}

bool operator==(const USeries& a, const USeries& b) {
    int n = std::min(a.order_, b.order_);
    for (int k = 0; k <= n; ++k)
        if (a.c_[k] != b.c_[k]) return false;
    return true;
}

std::string USeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
        if (c_[k].is_zero()) continue;
        GaussianRational c = c_[k];
        bool negated = false;
        if (c.is_real() && c.re.sign() < 0) {
            c = -c;
            negated = true;
        }
        if (first) {
            if (negated) os << "-";
            first = false;
        } else {
            os << (negated ? " - " : " + ");
        }
        std::string cs = c.str();
        if (k == 0) {
            os << cs;
        } else {
            if (cs != "1") os << cs;
            os << "u";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const USeries& s) {
    return os << s.str();
}

}  // namespace pfcorr
