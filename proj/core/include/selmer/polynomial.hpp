#pragma once

#include "selmer/numeric.hpp"

#include <string>
#include <vector>

namespace selmer {

// Dense polynomial in t with rational coefficients; coeffs[i] multiplies t^i.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);
    static RationalPoly constant(const Rational& c) { return RationalPoly({c}); }
    static RationalPoly monomial(const Rational& c, int degree);

    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational eval(const Rational& t) const;

    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const Rational& k) const;
    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }
    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace selmer
