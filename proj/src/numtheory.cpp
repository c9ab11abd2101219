#include "qnr/numtheory.hpp"

#include <stdexcept>

namespace qnr {

namespace {

Int powmod(Int base, Int exp, const Int& mod) {
    Int r = 1;
    base %= mod;
    while (exp > 0) {
        if (bit_test(exp, 0)) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned s) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;  // composite witness
}

Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    // Brent's cycle variant with deterministic restarts
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) { return (v * v + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    return sqrt(n);
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (!bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    // deterministic for n < 3.3e24 with this base set
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

std::map<Int, unsigned> factorize(Int n) {
    if (n < 1) throw std::domain_error("factorize requires n >= 1");
    std::map<Int, unsigned> out;
    for (int p : {2, 3, 5, 7, 11, 13}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    Int p = 17;
    while (p * p <= n && p < 100000) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
        p += 2;
    }
    factor_into(n, out);
    return out;
}

bool is_square_free(const Int& n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(abs(n)))
        if (e > 1) return false;
    return true;
}

GaussInt gauss_gcd(GaussInt a, GaussInt b) {
    auto floordiv = [](const Int& x, const Int& y) {  // y > 0
        Int q = x / y;
        if (x % y != 0 && x < 0) --q;
        return q;
    };
    while (b.norm() != 0) {
        Int n = b.norm();  // > 0
        GaussInt t = a * b.conj();
        // nearest-integer quotient keeps the remainder norm strictly below norm(b)
        GaussInt q{floordiv(2 * t.re + n, 2 * n), floordiv(2 * t.im + n, 2 * n)};
        GaussInt r{a.re - (q.re * b.re - q.im * b.im), a.im - (q.re * b.im + q.im * b.re)};
        a = b;
        b = r;
    }
    return a;
}

Int sqrt_minus_one_mod(const Int& p) {
    if (p % 4 != 1) throw std::domain_error("p must be 1 mod 4");
    for (Int c = 2;; ++c) {
        // Euler criterion: c is a non-residue iff c^((p-1)/2) = -1
        if (powmod(c, (p - 1) / 2, p) == p - 1) {
            return powmod(c, (p - 1) / 4, p);
        }
    }
}

std::optional<std::pair<Int, Int>> two_squares(const Int& n) {
    if (n < 0) return std::nullopt;
    if (n == 0) return std::make_pair(Int(0), Int(0));
    auto fac = factorize(n);
    GaussInt z{1, 0};
    Int square_part = 1;
    for (auto& [p, e] : fac) {
        if (p == 2) {
            GaussInt g{1, 1};
            for (unsigned i = 0; i < e; ++i) z = z * g;
        } else if (p % 4 == 1) {
            Int r = sqrt_minus_one_mod(p);
            GaussInt g = gauss_gcd({p, 0}, {r, 1});
            for (unsigned i = 0; i < e; ++i) z = z * g;
        } else {
            if (e % 2 != 0) return std::nullopt;
            for (unsigned i = 0; i < e / 2; ++i) square_part *= p;
        }
    }
    Int a = abs(z.re) * square_part, b = abs(z.im) * square_part;
    return std::make_pair(a, b);
}

std::array<Int, 4> four_squares(const Int& n) {
    if (n < 0) throw std::domain_error("four_squares requires n >= 0");
    if (n == 0) return {0, 0, 0, 0};
    for (Int a = isqrt(n); a >= 0; --a) {
        Int m = n - a * a;
        if (auto ts = two_squares(m)) return {a, ts->first, ts->second, 0};
        // m needs three squares; peel one more
        for (Int b = isqrt(m); b >= 0; --b) {
            if (auto ts = two_squares(m - b * b)) return {a, b, ts->first, ts->second};
        }
    }
    throw std::logic_error("four_squares: unreachable");
}

}  // namespace qnr
