#include "pfcorr/rational.hpp"

#include <cctype>
#include <ostream>

namespace pfcorr {

Rational::Rational(long num, long den) {
    if (den == 0) throw InvertNonUnit("rational with zero denominator");
    v_ = mpq_class(static_cast<signed long>(num), static_cast<signed long>(den));
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '+' && c != '/')
            throw ParseError("bad rational literal: " + s);
    }
    try {
        mpq_class v(s);
        if (v.get_den() == 0) throw ParseError("zero denominator in: " + s);
        v.canonicalize();
        Rational r;
        r.v_ = v;
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + s);
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InvertNonUnit("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw InvertNonUnit("inverse of zero rational");
    Rational r;
    r.v_ = 1 / v_;
    return r;
}

Rational Rational::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Rational acc(1), base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string Rational::str() const {
    return v_.get_str();
}

std::string Rational::numerator_str() const {
    return v_.get_num().get_str();
}

std::string Rational::denominator_str() const {
    return v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace pfcorr
