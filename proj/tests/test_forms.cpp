#include <doctest.h>

#include <algorithm>

#include "qnr/forms.hpp"
#include "qnr/rng.hpp"

using namespace qnr;

namespace {
ExtScalar qi(const Ctx& ctx, int64_t a, int64_t b) {
    return {KScalar::from_int(ctx, a), KScalar::from_int(ctx, b)};
}
VectorL vec2(const Ctx& ctx, ExtScalar a, ExtScalar b) {
    return VectorL(ctx, {std::move(a), std::move(b)});
}
}  // namespace

TEST_CASE("sesquilinear form basics") {
    Ctx q = FieldCtx::make_rational(-1);
    VectorL u = vec2(q, qi(q, 1, 0), qi(q, 0, 1));  // (1, i)
    CHECK(form(u, u) == qi(q, 2, 0));
    CHECK(form(VectorL::basis(q, 2, 0), VectorL::basis(q, 2, 1)).is_zero());

    // <u,v> = sigma(<v,u>) on random vectors
    Rng rng(3);
    for (int k = 0; k < 25; ++k) {
        VectorL a = vec2(q, qi(q, rng.range(-6, 6), rng.range(-6, 6)),
                         qi(q, rng.range(-6, 6), rng.range(-6, 6)));
        VectorL b = vec2(q, qi(q, rng.range(-6, 6), rng.range(-6, 6)),
                         qi(q, rng.range(-6, 6), rng.range(-6, 6)));
        CHECK(form(a, b) == conj(form(b, a)));
        CHECK(form(a, a).in_base());
    }

    // over F_4: <u,u> = x^3 + y^3 for u = (x, y)
    Ctx f2 = FieldCtx::make_finite(2, 1);
    FiniteExt L(f2);
    for (uint32_t x = 0; x < 4; ++x)
        for (uint32_t y = 0; y < 4; ++y) {
            VectorL u4 = vec2(f2, L.to_scalar(x), L.to_scalar(y));
            ExtScalar expect = L.to_scalar(x).pow(3) + L.to_scalar(y).pow(3);
            CHECK(form(u4, u4) == expect);
        }
}

TEST_CASE("unit spheres") {
    Ctx f2 = FieldCtx::make_finite(2, 1);
    UnitSphere s2 = unit_sphere(f2, 2);
    CHECK(s2.size() == 6);  // the norm-1 units on each axis
    for (size_t i = 0; i < s2.size(); ++i) CHECK(form_norm(s2.vec(i)).is_one());

    UnitSphere s1 = unit_sphere(f2, 1);
    CHECK(s1.size() == 3);  // {1, beta, beta+1}

    Ctx f3 = FieldCtx::make_finite(3, 1);
    CHECK(unit_sphere(f3, 1).size() == 4);  // q + 1 norm-one elements
    CHECK(unit_sphere(f3, 2).size() == 24); // q^3 - q

    CHECK_THROWS_AS(unit_sphere(f3, 9, Budget{1000}), budget_error);
    CHECK_THROWS_AS(unit_sphere(FieldCtx::make_rational(-1), 2), std::invalid_argument);
}

TEST_CASE("definiteness decisions") {
    Ctx q = FieldCtx::make_rational(-1);
    for (uint32_t n : {1u, 2u, 3u, 5u}) CHECK(is_definite_up_to(q, n).definite);

    Ctx f2 = FieldCtx::make_finite(2, 1);
    auto r = is_definite_up_to(f2, 2);
    CHECK(!r.definite);
    REQUIRE(r.isotropic);
    CHECK(form_norm(*r.isotropic).is_zero());
    CHECK(!r.isotropic->is_zero());
    // the witness is deterministic: first in canonical scan order
    auto r_again = is_definite_up_to(f2, 2);
    CHECK(*r_again.isotropic == *r.isotropic);

    CHECK(is_definite_up_to(f2, 1).definite);

    Ctx r2 = FieldCtx::make_rational(2);
    CHECK(is_definite_up_to(r2, 1).definite);
    auto iso2 = is_definite_up_to(r2, 2);  // 2 = 1 + 1
    CHECK(!iso2.definite);
    CHECK(form_norm(*iso2.isotropic).is_zero());

    Ctx r3 = FieldCtx::make_rational(3);
    CHECK(is_definite_up_to(r3, 2).definite);  // 3 is not a sum of two squares
    auto iso3 = is_definite_up_to(r3, 3);
    CHECK(!iso3.definite);
    CHECK(form_norm(*iso3.isotropic).is_zero());

    Ctx r7 = FieldCtx::make_rational(7);  // 7 = 4^0(8*0+7): needs the B = 2 route
    auto iso7 = is_definite_up_to(r7, 3);
    CHECK(!iso7.definite);
    CHECK(form_norm(*iso7.isotropic).is_zero());

    Ctx rm5 = FieldCtx::make_rational(-5);
    CHECK(is_definite_up_to(rm5, 4).definite);
}

TEST_CASE("delta membership over Q(i)") {
    Ctx q = FieldCtx::make_rational(-1);
    auto d = [&](int64_t num, int64_t den) { return KScalar::rational(q, Rat(num, den)); };

    auto m5 = delta_membership(d(5, 1), 1);
    CHECK(m5.status == Membership::Member);
    CHECK(m5.reverify(d(5, 1)));

    CHECK(delta_membership(d(3, 1), 1).status == Membership::NonMember);
    CHECK(delta_membership(d(-2, 1), 3).status == Membership::NonMember);

    auto m32 = delta_membership(d(3, 1), 2);
    CHECK(m32.status == Membership::Member);
    CHECK(m32.reverify(d(3, 1)));

    auto half = delta_membership(d(1, 2), 1);
    CHECK(half.status == Membership::Member);
    CHECK(half.reverify(d(1, 2)));

    CHECK(delta_membership(d(0, 1), 1).status == Membership::Member);
}

TEST_CASE("delta membership agrees with a bounded-height brute force over Q(i)") {
    // independent oracle: num*den is a sum of two integer squares
    Ctx q = FieldCtx::make_rational(-1);
    for (int64_t num = 1; num <= 200; num += 13)
        for (int64_t den = 1; den <= 200; den += 17) {
            int64_t n = num * den;
            bool brute = false;
            for (int64_t a = 0; a * a <= n && !brute; ++a) {
                int64_t rest = n - a * a;
                int64_t b = int64_t(std::sqrt(double(rest)));
                for (int64_t bb = std::max<int64_t>(0, b - 1); bb <= b + 1; ++bb)
                    if (a * a + bb * bb == n) brute = true;
            }
            auto v = delta_membership(KScalar::rational(q, Rat(num, den)), 1);
            CHECK(v.status == (brute ? Membership::Member : Membership::NonMember));
            if (v.status == Membership::Member) CHECK(v.reverify(KScalar::rational(q, Rat(num, den))));
        }
}

TEST_CASE("delta membership over finite fields is trivial with witnesses") {
    for (const char* spec : {"finite:p=2,m=1", "finite:p=3,m=1", "finite:p=2,m=2"}) {
        Ctx ctx = FieldCtx::parse(spec);
        for (uint32_t d = 0; d < ctx->q(); ++d) {
            auto v = delta_membership(KScalar::finite(ctx, d), 1);
            CHECK(v.status == Membership::Member);
            CHECK(v.reverify(KScalar::finite(ctx, d)));
        }
    }
}

TEST_CASE("interval samples") {
    Ctx f3 = FieldCtx::make_finite(3, 1);
    auto s3 = delta_interval_sample(f3, 99);
    CHECK(s3.size() == 3);  // the whole of F_3
    for (const auto& s : s3) {
        CHECK(norm(s.x) == s.t);
        CHECK(norm(s.y) == KScalar::one(f3) - s.t);
    }

    Ctx q = FieldCtx::make_rational(-1);
    auto sq = delta_interval_sample(q, 40);
    CHECK(sq.size() == 40);
    bool has_half = false, has_925 = false;
    for (const auto& s : sq) {
        CHECK(norm(s.x) == s.t);
        CHECK(norm(s.y) == KScalar::one(q) - s.t);
        if (s.t == KScalar::rational(q, Rat(1, 2))) has_half = true;
        if (s.t == KScalar::rational(q, Rat(9, 25))) has_925 = true;
    }
    CHECK(has_half);
    CHECK(has_925);
    // all t distinct
    for (size_t i = 0; i < sq.size(); ++i)
        for (size_t j = i + 1; j < sq.size(); ++j) CHECK(sq[i].t != sq[j].t);
}

TEST_CASE("norm equation") {
    Ctx f3 = FieldCtx::make_finite(3, 1);
    auto r = norm_equation(KScalar::from_int(f3, 2));
    REQUIRE(r.status == Membership::Member);
    CHECK(norm(*r.t) == KScalar::from_int(f3, 2));
    CHECK(r.t->pow(4) == ExtScalar::from_int(f3, 2));  // norm is z^(q+1) = z^4

    Ctx q = FieldCtx::make_rational(-1);
    auto r2 = norm_equation(KScalar::from_int(q, 2));
    REQUIRE(r2.status == Membership::Member);
    CHECK(norm(*r2.t) == KScalar::from_int(q, 2));
    CHECK(norm_equation(KScalar::from_int(q, 3)).status == Membership::NonMember);
    CHECK_THROWS_AS(norm_equation(KScalar::zero(q)), std::domain_error);

    // rescaling always works over finite fields
    Ctx f5 = FieldCtx::make_finite(5, 1);
    FiniteExt L(f5);
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        VectorL u = vec2(f5, L.to_scalar(uint32_t(rng.below(25))), L.to_scalar(uint32_t(rng.below(25))));
        KScalar d = form_norm(u);
        if (d.is_zero()) continue;
        auto t = norm_equation(KScalar::one(f5) / d);
        REQUIRE(t.status == Membership::Member);
        CHECK(form_norm(u.scaled(*t.t)).is_one());
    }
}

TEST_CASE("gram-schmidt over the form") {
    Ctx q = FieldCtx::make_rational(-1);
    VectorL e1 = VectorL::basis(q, 2, 0), e2 = VectorL::basis(q, 2, 1);

    auto r = orthogonalize({e1, e1 + e2});
    CHECK(r.normalized);
    CHECK(r.frame.size() == 2);
    CHECK(r.frame[0] == e1);
    CHECK(r.frame[1] == e2);

    // single vector (1, i): normalized to <f,f> = 1
    auto r2 = orthogonalize({vec2(q, qi(q, 1, 0), qi(q, 0, 1))});
    CHECK(r2.normalized);
    CHECK(r2.frame.size() == 2);
    CHECK(form_norm(r2.frame[0]).is_one());
    CHECK(form_norm(r2.frame[1]).is_one());
    CHECK(form(r2.frame[0], r2.frame[1]).is_zero());

    // orthonormal input is unchanged
    auto r3 = orthogonalize({e1, e2});
    CHECK(r3.frame[0] == e1);
    CHECK(r3.frame[1] == e2);

    CHECK_THROWS_AS(orthogonalize({e1, e1}), std::invalid_argument);

    Ctx f2 = FieldCtx::make_finite(2, 1);
    VectorL iso = vec2(f2, ExtScalar::one(f2), ExtScalar::one(f2));
    CHECK_THROWS_AS(orthogonalize({iso}), isotropic_error);
}

TEST_CASE("gram-schmidt preserves spans") {
    Ctx q = FieldCtx::make_rational(-1);
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        VectorL w1 = vec2(q, qi(q, rng.range(-4, 4), rng.range(-4, 4)),
                          qi(q, rng.range(-4, 4), rng.range(-4, 4)));
        VectorL w2 = vec2(q, qi(q, rng.range(-4, 4), rng.range(-4, 4)),
                          qi(q, rng.range(-4, 4), rng.range(-4, 4)));
        if (rank_of({w1, w2}) < 2) continue;
        auto r = orthogonalize({w1, w2});
        CHECK(form(r.frame[0], r.frame[1]).is_zero());
        // same span: adding either original vector does not raise the rank
        CHECK(rank_of({r.frame[0], r.frame[1], w1}) == 2);
        CHECK(rank_of({r.frame[0], w1, w2}) == 2);
        CHECK(rank_of({r.frame[0], r.frame[1]}) == 2);
    }
}
