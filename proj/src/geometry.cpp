#include "qnr/geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qnr {

NumRangeSet hull_pair(const Ctx& ctx, const ExtScalar& a, const ExtScalar& b) {
    if (!ctx->finite()) throw std::invalid_argument("hull_pair is exact over finite contexts only");
    if (a == b) throw std::invalid_argument("hull endpoints must differ");
    const uint32_t q = ctx->q();
    std::vector<ExtScalar> pts;
    pts.reserve(q);
    for (uint32_t t = 0; t < q; ++t) {
        ExtScalar ts = ExtScalar::from_base(KScalar::finite(ctx, t));
        pts.push_back(ts * a + (ExtScalar::one(ctx) - ts) * b);
    }
    return make_range_set(ctx, std::move(pts), true);
}

std::vector<ExtScalar> hull_pair_sample(const Ctx& ctx, const ExtScalar& a, const ExtScalar& b,
                                        size_t count) {
    if (ctx->finite()) throw std::invalid_argument("use hull_pair for finite contexts");
    if (a == b) throw std::invalid_argument("hull endpoints must differ");
    std::vector<ExtScalar> out;
    for (const auto& s : delta_interval_sample(ctx, count)) {
        ExtScalar t = ExtScalar::from_base(s.t);
        out.push_back(t * a + (ExtScalar::one(ctx) - t) * b);
    }
    return out;
}

namespace {

// dense membership bitmap over L indices, finite contexts
struct IndexSet {
    const FiniteExt& L;
    std::vector<bool> in;
    explicit IndexSet(const FiniteExt& ext) : L(ext), in(ext.size(), false) {}
    void insert(uint32_t z) { in[z] = true; }
    bool contains(uint32_t z) const { return in[z]; }
};

}  // namespace

ConvexityResult is_delta_convex(const std::vector<ExtScalar>& s, const Ctx& ctx) {
    if (!ctx->finite())
        throw std::invalid_argument("delta-convexity testing is exact over finite contexts only");
    FiniteExt L(ctx);
    const SmallField& K = ctx->base();
    const uint32_t q = ctx->q();
    IndexSet set(L);
    std::vector<uint32_t> idx;
    for (const auto& z : s) {
        uint32_t i = L.from_scalar(z);
        if (!set.contains(i)) idx.push_back(i);
        set.insert(i);
    }
    for (uint32_t a : idx)
        for (uint32_t b : idx) {
            if (a == b) continue;
            for (uint32_t t = 0; t < q; ++t) {
                uint32_t pt = L.add(L.kmul(t, a), L.kmul(K.sub(K.from_int(1), t), b));
                if (!set.contains(pt)) {
                    ConvexityResult r;
                    r.convex = false;
                    r.a = L.to_scalar(a);
                    r.b = L.to_scalar(b);
                    r.t = KScalar::finite(ctx, t);
                    return r;
                }
            }
        }
    ConvexityResult r;
    r.convex = true;
    return r;
}

std::vector<ExtScalar> delta_convex_closure(std::vector<ExtScalar> s, const Ctx& ctx) {
    if (!ctx->finite())
        throw std::invalid_argument("closure computation is exact over finite contexts only");
    FiniteExt L(ctx);
    const SmallField& K = ctx->base();
    const uint32_t q = ctx->q();
    std::set<uint32_t> cur;
    for (const auto& z : s) cur.insert(L.from_scalar(z));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<uint32_t> items(cur.begin(), cur.end());
        for (uint32_t a : items)
            for (uint32_t b : items) {
                if (a == b) continue;
                for (uint32_t t = 0; t < q; ++t) {
                    uint32_t pt = L.add(L.kmul(t, a), L.kmul(K.sub(K.from_int(1), t), b));
                    if (cur.insert(pt).second) grew = true;
                }
            }
    }
    std::vector<ExtScalar> out;
    out.reserve(cur.size());
    for (uint32_t z : cur) out.push_back(L.to_scalar(z));
    std::sort(out.begin(), out.end(), ExtScalarLess{});
    return out;
}

EllipseSpec EllipseSpec::one_focus(const Ctx& ctx, KScalar delta1, KScalar delta2) {
    EllipseSpec e;
    e.kind = Kind::OneFocus;
    e.delta1 = std::move(delta1);
    e.delta2 = std::move(delta2);
    e.frame_a = ExtScalar::zero(ctx);
    e.frame_b = ExtScalar::one(ctx);
    return e;
}

EllipseSpec EllipseSpec::two_foci(const Ctx& ctx, KScalar delta1, KScalar delta2, ExtScalar d1,
                                  ExtScalar d2) {
    EllipseSpec e = one_focus(ctx, std::move(delta1), std::move(delta2));
    e.kind = Kind::TwoFoci;
    e.d1 = std::move(d1);
    e.d2 = std::move(d2);
    return e;
}

EllipseSpec EllipseSpec::with_frame(ExtScalar a, ExtScalar b) const {
    if (b.is_zero()) throw std::invalid_argument("frame scale must be nonzero");
    EllipseSpec e = *this;
    e.frame_a = std::move(a);
    e.frame_b = std::move(b);
    return e;
}

namespace {

void check_ellipse(const EllipseSpec& e) {
    if (e.delta1.is_zero() || e.delta2.is_zero())
        throw std::invalid_argument("ellipse parameters delta1, delta2 must be nonzero");
    if (e.kind == EllipseSpec::Kind::TwoFoci) {
        if (!e.d1 || !e.d2 || e.d1->is_zero() || e.d2->is_zero())
            throw std::invalid_argument("two-focus ellipses need nonzero d1, d2");
    }
    if (e.frame_b.is_zero()) throw std::invalid_argument("frame scale must be nonzero");
}

ExtScalar ellipse_value(const EllipseSpec& e, const ExtScalar& x, const ExtScalar& y) {
    ExtScalar v = e.kind == EllipseSpec::Kind::OneFocus
                      ? conj(x) * y
                      : *e.d1 * y * conj(x) + *e.d2 * y * conj(y);
    return e.frame_a + e.frame_b * v;
}

}  // namespace

std::pair<DeltaVerdict, DeltaVerdict> validate_ellipse_spec(const EllipseSpec& e) {
    check_ellipse(e);
    return {delta_membership(e.delta1, e.level), delta_membership(e.delta2, e.level)};
}

NumRangeSet ellipse_points(const EllipseSpec& e, const Ctx& ctx, const Budget& budget) {
    check_ellipse(e);
    if (!ctx->finite()) throw std::invalid_argument("use ellipse_sample for rational contexts");
    FiniteExt L(ctx);
    uint64_t total = L.size() * L.size();
    if (total > budget.max_vectors) throw budget_error(total, budget.max_vectors);
    const SmallField& K = ctx->base();
    const uint32_t one = K.from_int(1);
    const uint32_t D1 = e.delta1.idx(), D2 = e.delta2.idx();
    std::vector<ExtScalar> vals;
    for (uint32_t xi = 0; xi < L.size(); ++xi) {
        uint32_t nx = K.mul(D1, L.norm_k(xi));
        for (uint32_t yi = 0; yi < L.size(); ++yi) {
            if (K.add(nx, K.mul(D2, L.norm_k(yi))) != one) continue;
            vals.push_back(ellipse_value(e, L.to_scalar(xi), L.to_scalar(yi)));
        }
    }
    return make_range_set(ctx, std::move(vals), true);
}

std::vector<ExtScalar> ellipse_sample(const EllipseSpec& e, const Ctx& ctx, size_t count) {
    check_ellipse(e);
    if (ctx->finite()) throw std::invalid_argument("use ellipse_points for finite contexts");

    // base rational point of delta1 norm(x) + delta2 norm(y) = 1
    std::optional<std::array<Rat, 4>> base;
    auto try_axis = [&](const KScalar& delta, bool x_axis) {
        if (base) return;
        auto ne = norm_equation(KScalar::one(ctx) / delta);
        if (ne.status != Membership::Member) return;
        Rat r1 = ne.t->re().rat(), r2 = ne.t->im().rat();
        base = x_axis ? std::array<Rat, 4>{r1, r2, 0, 0} : std::array<Rat, 4>{0, 0, r1, r2};
    };
    try_axis(e.delta1, true);
    try_axis(e.delta2, false);
    if (!base) {
        // split 1 = t + (1-t) across the two slots, t over a small rational grid
        for (int den = 1; den <= 16 && !base; ++den)
            for (int num = 0; num <= den && !base; ++num) {
                KScalar t = KScalar::rational(ctx, Rat(num, den));
                KScalar rest = KScalar::one(ctx) - t;
                NormEqResult nx = t.is_zero()
                                      ? NormEqResult{Membership::Member, ExtScalar::zero(ctx)}
                                      : norm_equation(t / e.delta1);
                NormEqResult ny = rest.is_zero()
                                      ? NormEqResult{Membership::Member, ExtScalar::zero(ctx)}
                                      : norm_equation(rest / e.delta2);
                if (nx.status == Membership::Member && ny.status == Membership::Member)
                    base = std::array<Rat, 4>{nx.t->re().rat(), nx.t->im().rat(), ny.t->re().rat(),
                                              ny.t->im().rat()};
            }
    }
    if (!base) return {};

    Rat alpha(ctx->alpha());
    std::array<Rat, 4> coef{e.delta1.rat(), -e.delta1.rat() * alpha, e.delta2.rat(),
                            -e.delta2.rat() * alpha};
    std::vector<ExtScalar> out;
    std::vector<ExtScalar> seen;
    auto emit = [&](const std::array<Rat, 4>& p) {
        ExtScalar x{KScalar::rational(ctx, p[0]), KScalar::rational(ctx, p[1])};
        ExtScalar y{KScalar::rational(ctx, p[2]), KScalar::rational(ctx, p[3])};
        ExtScalar v = ellipse_value(e, x, y);
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) return;
        seen.push_back(v);
        out.push_back(std::move(v));
    };
    emit(*base);
    for (int r = 1; out.size() < count && r <= 40; ++r)
        for (int d1 = -r; d1 <= r && out.size() < count; ++d1)
            for (int d2 = -r; d2 <= r && out.size() < count; ++d2)
                for (int d3 = -r; d3 <= r && out.size() < count; ++d3)
                    for (int d4 = -r; d4 <= r && out.size() < count; ++d4) {
                        if (std::max({std::abs(d1), std::abs(d2), std::abs(d3), std::abs(d4)}) != r)
                            continue;
                        std::array<Rat, 4> D{Rat(d1), Rat(d2), Rat(d3), Rat(d4)};
                        Rat qD = 0, bPD = 0;
                        for (int i = 0; i < 4; ++i) {
                            qD += coef[i] * D[i] * D[i];
                            bPD += coef[i] * (*base)[i] * D[i];
                        }
                        if (qD == 0) continue;
                        Rat s = -2 * bPD / qD;
                        if (s == 0) continue;
                        std::array<Rat, 4> p;
                        for (int i = 0; i < 4; ++i) p[i] = (*base)[i] + s * D[i];
                        emit(p);
                    }
    return out;
}

}  // namespace qnr
