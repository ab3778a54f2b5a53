#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selmer {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when an exhaustive computation would exceed its budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, BigInt estimate, BigInt budget)
        : std::runtime_error(what + " (estimate " + estimate.str() + " > budget " + budget.str() + ")"),
          estimate_(std::move(estimate)), budget_(std::move(budget)) {}
    const BigInt& estimate() const { return estimate_; }
    const BigInt& budget() const { return budget_; }

private:
    BigInt estimate_;
    BigInt budget_;
};

// A mathematical invariant failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline int64_t mod_reduce(int64_t a, int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
    if (static_cast<uint64_t>(a | b) < (uint64_t{1} << 31)) return a * b % m;
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

inline int64_t pow_mod(int64_t b, uint64_t e, int64_t m) {
    int64_t r = 1 % m;
    b = mod_reduce(b, m);
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

int64_t gcd64(int64_t a, int64_t b);

// Inverse of a modulo m; throws std::domain_error if a is not a unit.
int64_t inv_mod(int64_t a, int64_t m);

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// l-adic valuation of a residue modulo l^K (K when a == 0).
int valuation(int64_t a, int64_t l, int K);

// Legendre symbol (a/l) for odd prime l, via Euler's criterion: 0, 1 or -1.
int legendre(int64_t a, int64_t l);

// Square-class bit of a unit modulo odd prime l: 0 square, 1 nonsquare.
int square_class(int64_t a, int64_t l);

// Rationals as "p/q" (or "p" when integral).
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

BigInt big_pow(int64_t b, int64_t e);
Rational rat_pow(int64_t b, int64_t e);  // e may be negative
BigInt binomial(int n, int k);

std::vector<std::pair<int64_t, int>> factorize(int64_t n);

}  // namespace selmer
