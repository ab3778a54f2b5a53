#include "selmer/numeric.hpp"

#include <numeric>

namespace selmer {

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t inv_mod(int64_t a, int64_t m) {
    a = mod_reduce(a, m);
    int64_t old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) throw std::domain_error("inv_mod: " + std::to_string(a) + " not a unit mod " + std::to_string(m));
    return mod_reduce(old_s, m);
}

int valuation(int64_t a, int64_t l, int K) {
    if (a == 0) return K;
    int v = 0;
    while (a % l == 0 && v < K) {
        a /= l;
        ++v;
    }
    return v;
}

int legendre(int64_t a, int64_t l) {
    a = mod_reduce(a, l);
    if (a == 0) return 0;
    return pow_mod(a, (l - 1) / 2, l) == 1 ? 1 : -1;
}

int square_class(int64_t a, int64_t l) {
    int s = legendre(a, l);
    if (s == 0) throw std::domain_error("square_class: non-unit");
    return s == 1 ? 0 : 1;
}

std::string to_string(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    return Rational(BigInt(s.substr(0, slash)), den);
}

BigInt big_pow(int64_t b, int64_t e) {
    if (e < 0) throw std::invalid_argument("big_pow: negative exponent");
    return boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(e));
}

Rational rat_pow(int64_t b, int64_t e) {
    if (e >= 0) return Rational(big_pow(b, e));
    return Rational(BigInt(1), big_pow(b, -e));
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace selmer
