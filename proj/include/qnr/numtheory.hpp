#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace qnr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// floor square root, n >= 0
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n, Int* root = nullptr);

bool is_prime(const Int& n);

// full factorization (trial division + Miller-Rabin + Pollard rho), n >= 1
std::map<Int, unsigned> factorize(Int n);

bool is_square_free(const Int& n);

// a + bi with integer a, b
struct GaussInt {
    Int re, im;
    GaussInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

GaussInt gauss_gcd(GaussInt a, GaussInt b);

// n = a^2 + b^2 over the integers, n >= 0; nullopt when no decomposition exists
// (some prime = 3 mod 4 divides n to an odd power).
std::optional<std::pair<Int, Int>> two_squares(const Int& n);

// n = a^2 + b^2 + c^2 + d^2, n >= 0 (always solvable)
std::array<Int, 4> four_squares(const Int& n);

// r with r^2 = -1 (mod p), for prime p = 1 (mod 4)
Int sqrt_minus_one_mod(const Int& p);

}  // namespace qnr
