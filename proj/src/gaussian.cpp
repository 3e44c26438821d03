#include "pfcorr/gaussian.hpp"

#include <ostream>

namespace pfcorr {

std::string GaussianRational::str() const {
    if (im.is_zero()) return re.str();
    std::string imag = (im.is_one() ? std::string() : im == Rational(-1) ? std::string("-") : im.str()) + "i";
    if (re.is_zero()) return imag;
    std::string s = "(" + re.str();
    if (im.sign() > 0) s += "+";
    s += imag + ")";
    return s;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    return os << g.str();
}

GaussianRational i_power(long k) {
    long m = ((k % 4) + 4) % 4;
    switch (m) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::i();
        case 2: return GaussianRational(-1);
        default: return -GaussianRational::i();
    }
}

}  // namespace pfcorr
