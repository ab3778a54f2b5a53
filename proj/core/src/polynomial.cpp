#include "selmer/polynomial.hpp"

#include <sstream>

namespace selmer {

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RationalPoly RationalPoly::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return RationalPoly(v);
}

void RationalPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPoly::eval(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return RationalPoly(v);
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const { return *this + o * Rational(-1); }

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return RationalPoly(v);
}

RationalPoly RationalPoly::operator*(const Rational& k) const {
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= k;
    return RationalPoly(v);
}

std::string RationalPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        Rational a = c_[i];
        bool neg = a < 0;
        if (neg) a = -a;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        if (i == 0 || a != 1) os << to_string(a);
        if (i > 0) os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

}  // namespace selmer
