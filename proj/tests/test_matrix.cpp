#include <doctest.h>

#include "qnr/matrix.hpp"
#include "qnr/rng.hpp"

using namespace qnr;

namespace {
ExtScalar qi(const Ctx& ctx, int64_t a, int64_t b) {
    return {KScalar::from_int(ctx, a), KScalar::from_int(ctx, b)};
}
MatrixL m2(const Ctx& ctx, ExtScalar a, ExtScalar b, ExtScalar c, ExtScalar d) {
    MatrixL m(ctx, 2);
    m.at(0, 0) = std::move(a);
    m.at(0, 1) = std::move(b);
    m.at(1, 0) = std::move(c);
    m.at(1, 1) = std::move(d);
    return m;
}
MatrixL random_rational(const Ctx& ctx, uint32_t n, Rng& rng) {
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) m.at(i, j) = qi(ctx, rng.range(-5, 5), rng.range(-5, 5));
    return m;
}
}  // namespace

TEST_CASE("dagger and hermitian tests") {
    Ctx q = FieldCtx::make_rational(-1);
    MatrixL d = m2(q, qi(q, 0, 1), qi(q, 0, 0), qi(q, 0, 0), qi(q, 0, 0));
    CHECK(d.dagger() == m2(q, qi(q, 0, -1), qi(q, 0, 0), qi(q, 0, 0), qi(q, 0, 0)));

    MatrixL h = m2(q, qi(q, 0, 0), qi(q, 0, 1), qi(q, 0, -1), qi(q, 1, 0));
    CHECK(is_hermitian(h));
    CHECK(h.dagger() == h);
    CHECK(!is_hermitian(m2(q, qi(q, 0, 0), qi(q, 1, 0), qi(q, 0, 0), qi(q, 0, 0))));

    // adjoint identity <u, Mv> = <M^dagger u, v> on random data
    Rng rng(23);
    for (int k = 0; k < 20; ++k) {
        MatrixL m = random_rational(q, 3, rng);
        VectorL u(q, {qi(q, rng.range(-4, 4), rng.range(-4, 4)),
                      qi(q, rng.range(-4, 4), rng.range(-4, 4)),
                      qi(q, rng.range(-4, 4), rng.range(-4, 4))});
        VectorL v(q, {qi(q, rng.range(-4, 4), rng.range(-4, 4)),
                      qi(q, rng.range(-4, 4), rng.range(-4, 4)),
                      qi(q, rng.range(-4, 4), rng.range(-4, 4))});
        CHECK(form(u, m.apply(v)) == form(m.dagger().apply(u), v));
    }
}

TEST_CASE("hermitian decomposition, both characteristics") {
    // char 2: exhaustive over all 256 matrices of M_{2,2}(F_4)
    Ctx f2 = FieldCtx::make_finite(2, 1);
    FiniteExt L(f2);
    ExtScalar beta2 = ExtScalar::beta(f2);
    for (uint32_t v = 0; v < 256; ++v) {
        MatrixL m = m2(f2, L.to_scalar(v & 3), L.to_scalar((v >> 2) & 3), L.to_scalar((v >> 4) & 3),
                       L.to_scalar((v >> 6) & 3));
        HermDecomp d = herm_decompose(m);
        CHECK(is_hermitian(d.plus));
        CHECK(is_hermitian(d.minus));
        CHECK(d.plus + d.minus.scaled(beta2) == m);
    }

    // char != 2 finite and rational, randomized
    Rng rng(31);
    Ctx f3 = FieldCtx::make_finite(3, 1);
    FiniteExt L3(f3);
    ExtScalar beta3 = ExtScalar::beta(f3);
    for (int k = 0; k < 200; ++k) {
        MatrixL m = m2(f3, L3.to_scalar(uint32_t(rng.below(9))), L3.to_scalar(uint32_t(rng.below(9))),
                       L3.to_scalar(uint32_t(rng.below(9))), L3.to_scalar(uint32_t(rng.below(9))));
        HermDecomp d = herm_decompose(m);
        CHECK(is_hermitian(d.plus));
        CHECK(is_hermitian(d.minus));
        CHECK(d.plus + d.minus.scaled(beta3) == m);
    }
    Ctx q = FieldCtx::make_rational(-1);
    MatrixL nil = m2(q, qi(q, 0, 0), qi(q, 1, 0), qi(q, 0, 0), qi(q, 0, 0));
    HermDecomp d = herm_decompose(nil);
    CHECK(d.plus == m2(q, qi(q, 0, 0), ExtScalar{KScalar::rational(q, Rat(1, 2)), KScalar::zero(q)},
                       ExtScalar{KScalar::rational(q, Rat(1, 2)), KScalar::zero(q)}, qi(q, 0, 0)));
    CHECK(is_hermitian(d.minus));

    // hermitian input decomposes as (M, 0)
    MatrixL h = m2(q, qi(q, 2, 0), qi(q, 1, 1), qi(q, 1, -1), qi(q, 3, 0));
    HermDecomp dh = herm_decompose(h);
    CHECK(dh.plus == h);
    CHECK(dh.minus == MatrixL(q, 2));
}

TEST_CASE("numerical map values") {
    Ctx q = FieldCtx::make_rational(-1);
    MatrixL c = MatrixL::identity(q, 2).scaled(qi(q, 2, 3));
    VectorL u(q, {qi(q, 1, 1), qi(q, 0, 2)});
    CHECK(nu(c, u) == qi(q, 2, 3) * form(u, u));

    // hermitian values live in K
    Rng rng(41);
    MatrixL h = m2(q, qi(q, 2, 0), qi(q, 1, 1), qi(q, 1, -1), qi(q, 3, 0));
    for (int k = 0; k < 20; ++k) {
        VectorL v(q, {qi(q, rng.range(-5, 5), rng.range(-5, 5)),
                      qi(q, rng.range(-5, 5), rng.range(-5, 5))});
        CHECK(nu(h, v).in_base());
    }
}

TEST_CASE("exact solvers") {
    Ctx q = FieldCtx::make_rational(-1);
    MatrixL m = m2(q, qi(q, 1, 1), qi(q, 2, 0), qi(q, 0, 1), qi(q, 1, 0));
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(m * *inv == MatrixL::identity(q, 2));

    VectorL b(q, {qi(q, 1, 0), qi(q, 0, 1)});
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m.apply(*x) == b);

    MatrixL sing = m2(q, qi(q, 1, 0), qi(q, 2, 0), qi(q, 2, 0), qi(q, 4, 0));
    CHECK(!inverse(sing));
    auto ker = kernel_basis(sing);
    REQUIRE(ker.size() == 1);
    CHECK(sing.apply(ker[0]) == VectorL::zero(q, 2));
}

TEST_CASE("characteristic polynomials and eigenpairs") {
    Ctx q = FieldCtx::make_rational(-1);
    MatrixL m = m2(q, qi(q, 0, 0), qi(q, 1, 0), qi(q, 0, 0), qi(q, 1, 0));
    auto cp = char_poly(m);  // t^2 - t
    CHECK(cp.size() == 3);
    CHECK(cp[0].is_zero());
    CHECK(cp[1] == qi(q, -1, 0));
    CHECK(cp[2] == ExtScalar::one(q));

    auto pairs = eigenpairs_exact(m);
    REQUIRE(pairs.size() == 2);
    for (const auto& [lam, vec] : pairs) CHECK(m.apply(vec) == vec.scaled(lam));

    // hermitian with rational eigen-data: eigenvalues fixed by sigma,
    // eigenvectors for distinct eigenvalues orthogonal
    MatrixL h = m2(q, qi(q, 2, 0), qi(q, 1, 1), qi(q, 1, -1), qi(q, 3, 0));
    auto hp = eigenpairs_exact(h);  // char poly t^2 - 5t + 4: eigenvalues 1, 4
    REQUIRE(hp.size() == 2);
    for (const auto& [lam, vec] : hp) {
        CHECK(conj(lam) == lam);
        CHECK(h.apply(vec) == vec.scaled(lam));
    }
    CHECK(form(hp[0].second, hp[1].second).is_zero());

    // finite contexts: root scan is complete, including char 2
    Ctx f2 = FieldCtx::make_finite(2, 1);
    FiniteExt L(f2);
    MatrixL fm = m2(f2, L.to_scalar(2), L.to_scalar(1), L.to_scalar(0), L.to_scalar(3));
    for (const auto& [lam, vec] : eigenpairs_exact(fm)) CHECK(fm.apply(vec) == vec.scaled(lam));

    // 3x3 with small rational roots
    MatrixL t3(q, 3);
    t3.at(0, 0) = qi(q, 1, 0);
    t3.at(1, 1) = qi(q, 2, 0);
    t3.at(2, 2) = qi(q, 0, 1);
    t3.at(0, 1) = qi(q, 1, 1);
    auto p3 = eigenpairs_exact(t3);
    CHECK(p3.size() == 3);
    for (const auto& [lam, vec] : p3) CHECK(t3.apply(vec) == vec.scaled(lam));
}

TEST_CASE("direct sums") {
    Ctx q = FieldCtx::make_rational(-1);
    MatrixL a = m2(q, qi(q, 1, 0), qi(q, 2, 0), qi(q, 3, 0), qi(q, 4, 0));
    MatrixL b = m2(q, qi(q, 0, 1), qi(q, 0, 0), qi(q, 0, 0), qi(q, 0, 2));
    MatrixL s = direct_sum(a, b);
    CHECK(s.n() == 4);
    CHECK(s.at(0, 1) == qi(q, 2, 0));
    CHECK(s.at(2, 2) == qi(q, 0, 1));
    CHECK(s.at(0, 2).is_zero());
    CHECK(s.at(3, 1).is_zero());
}
