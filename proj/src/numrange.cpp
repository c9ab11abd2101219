#include "qnr/numrange.hpp"

#include <algorithm>
#include <stdexcept>

#include "qnr/rng.hpp"

namespace qnr {

namespace {

void sort_dedupe(std::vector<ExtScalar>& v) {
    std::sort(v.begin(), v.end(), ExtScalarLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

uint32_t nu_index(const FiniteExt& L, const std::vector<uint32_t>& mflat, uint32_t n,
                  const uint32_t* u) {
    uint32_t acc = 0;
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t mu = 0;
        for (uint32_t j = 0; j < n; ++j) mu = L.add(mu, L.mul(mflat[i * n + j], u[j]));
        acc = L.add(acc, L.mul(L.sigma(u[i]), mu));
    }
    return acc;
}

std::vector<uint32_t> flatten_matrix(const MatrixL& m, const FiniteExt& L) {
    std::vector<uint32_t> f(size_t(m.n()) * m.n());
    for (uint32_t i = 0; i < m.n(); ++i)
        for (uint32_t j = 0; j < m.n(); ++j) f[i * m.n() + j] = L.from_scalar(m.at(i, j));
    return f;
}

bool NumRangeSet::contains(const ExtScalar& z) const {
    return std::binary_search(points.begin(), points.end(), z, ExtScalarLess{});
}

NumRangeSet make_range_set(const Ctx& ctx, std::vector<ExtScalar> values, bool complete) {
    sort_dedupe(values);
    return NumRangeSet{ctx, std::move(values), complete};
}

NumRangeSet num_range_over(const MatrixL& m, const UnitSphere& sphere) {
    require_same_ctx(m.ctx(), sphere.ctx);
    if (m.n() != sphere.n) throw std::invalid_argument("matrix/sphere dimension mismatch");
    const FiniteExt& L = *sphere.ext;
    auto mflat = flatten_matrix(m, L);
    std::vector<uint32_t> vals;
    vals.reserve(sphere.size());
    for (size_t i = 0; i < sphere.size(); ++i)
        vals.push_back(nu_index(L, mflat, m.n(), sphere.point(i)));
    auto key = [&](uint32_t z) { return uint64_t(L.re(z)) * L.size() + L.im(z); };
    std::sort(vals.begin(), vals.end(), [&](uint32_t a, uint32_t b) { return key(a) < key(b); });
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<ExtScalar> pts;
    pts.reserve(vals.size());
    for (uint32_t z : vals) pts.push_back(L.to_scalar(z));
    return NumRangeSet{m.ctx(), std::move(pts), true};
}

NumRangeSet num_range_finite(const MatrixL& m, const Budget& budget) {
    return num_range_over(m, unit_sphere(m.ctx(), m.n(), budget));
}

std::vector<std::vector<ExtScalar>> joint_num_range_finite(const std::vector<MatrixL>& ms,
                                                           const Budget& budget) {
    if (ms.empty()) throw std::invalid_argument("joint range needs at least one matrix");
    const Ctx& ctx = ms[0].ctx();
    const uint32_t n = ms[0].n();
    for (const auto& m : ms) {
        require_same_ctx(ctx, m.ctx());
        if (m.n() != n) throw std::invalid_argument("matrices must share one size");
    }
    UnitSphere sphere = unit_sphere(ctx, n, budget);
    const FiniteExt& L = *sphere.ext;
    std::vector<std::vector<uint32_t>> flats;
    for (const auto& m : ms) flats.push_back(flatten_matrix(m, L));

    std::vector<std::vector<uint32_t>> tuples;
    tuples.reserve(sphere.size());
    for (size_t i = 0; i < sphere.size(); ++i) {
        std::vector<uint32_t> t;
        t.reserve(ms.size());
        for (const auto& f : flats) t.push_back(nu_index(L, f, n, sphere.point(i)));
        tuples.push_back(std::move(t));
    }
    auto key = [&](uint32_t z) { return uint64_t(L.re(z)) * L.size() + L.im(z); };
    std::sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (key(a[i]) != key(b[i])) return key(a[i]) < key(b[i]);
        }
        return false;
    });
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    std::vector<std::vector<ExtScalar>> out;
    out.reserve(tuples.size());
    for (const auto& t : tuples) {
        std::vector<ExtScalar> row;
        row.reserve(t.size());
        for (uint32_t z : t) row.push_back(L.to_scalar(z));
        out.push_back(std::move(row));
    }
    return out;
}

// ------------------------------------------------------------------ witnesses

namespace {

void check_eigenpair(const MatrixL& m, const VectorL& u, const ExtScalar& a, const char* who) {
    if (u.is_zero()) throw std::invalid_argument(std::string(who) + " is the zero vector");
    if (m.apply(u) != u.scaled(a))
        throw std::invalid_argument(std::string(who) + " is not an eigenvector for the given value");
}

// rescale an eigenvector to unit norm via the norm equation (Remark-style)
VectorL rescale_unit(const VectorL& u, const char* who) {
    KScalar d = form_norm(u);
    if (d.is_zero())
        throw isotropic_error(std::string(who) + " has <u,u> = 0; cannot rescale to the unit sphere");
    if (d.is_one()) return u;
    auto ne = norm_equation(KScalar::one(u.ctx()) / d);
    if (ne.status != Membership::Member)
        throw std::invalid_argument(std::string(who) + " has <u,u> = " + d.str() +
                                    ", which is not a norm; cannot rescale to the unit sphere");
    return u.scaled(*ne.t);
}

WitnessPoint certify(const MatrixL& m, VectorL vec, const ExtScalar& expected) {
    ExtScalar val = nu(m, vec);
    if (val != expected) throw std::logic_error("witness value recheck failed");
    if (!form_norm(vec).is_one()) throw std::logic_error("witness unit-norm recheck failed");
    return WitnessPoint{std::move(vec), std::move(val), true};
}

}  // namespace

std::vector<WitnessPoint> segment_witnesses(const MatrixL& m, const VectorL& u, const VectorL& v,
                                            const ExtScalar& a, const ExtScalar& b,
                                            const std::vector<IntervalSample>& ts) {
    if (a == b) throw std::invalid_argument("eigenvalues must be distinct");
    check_eigenpair(m, u, a, "u");
    check_eigenpair(m, v, b, "v");
    VectorL uu = rescale_unit(u, "u");
    VectorL vv = rescale_unit(v, "v");
    if (!form(uu, vv).is_zero())
        throw std::invalid_argument("eigenvectors are not orthogonal; use the ellipse construction");

    std::vector<WitnessPoint> out;
    out.reserve(ts.size());
    for (const auto& s : ts) {
        if (norm(s.x) != s.t || norm(s.y) != (KScalar::one(m.ctx()) - s.t))
            throw std::invalid_argument("interval sample does not certify t = " + s.t.str());
        VectorL mvec = uu.scaled(s.x) + vv.scaled(s.y);
        ExtScalar ts_ext = ExtScalar::from_base(s.t);
        ExtScalar expected = ts_ext * a + (ExtScalar::one(m.ctx()) - ts_ext) * b;
        out.push_back(certify(m, std::move(mvec), expected));
    }
    return out;
}

EllipseWitnessRun ellipse_witnesses(const MatrixL& m, const VectorL& u, const VectorL& v,
                                    const ExtScalar& a, const ExtScalar& b, size_t count,
                                    const Budget& budget) {
    if (a == b) throw std::invalid_argument("eigenvalues must be distinct");
    check_eigenpair(m, u, a, "u");
    check_eigenpair(m, v, b, "v");
    const Ctx& ctx = m.ctx();
    VectorL uu = rescale_unit(u, "u");
    VectorL vv = rescale_unit(v, "v");
    ExtScalar h = form(uu, vv);  // <u',v'>
    if (h.is_zero())
        throw std::invalid_argument("eigenvectors are orthogonal; use the segment construction");

    VectorL w = vv - uu.scaled(h);
    KScalar c = form(w, w).as_base();
    if (c.is_zero()) throw isotropic_error("w = v' - <u',v'>u' is isotropic");

    EllipseWitnessRun run{{}, c, delta_membership(c, m.n()), h};

    // value in the normalized model: h*sigma(x)*y + c*sigma(y)*y, mapped back
    // through z -> a + (b-a) z
    auto emit = [&](const ExtScalar& x, const ExtScalar& y) {
        ExtScalar model = h * conj(x) * y + ExtScalar::from_base(c) * conj(y) * y;
        ExtScalar expected = a + (b - a) * model;
        VectorL mv = uu.scaled(x) + w.scaled(y);
        run.points.push_back(certify(m, std::move(mv), expected));
    };
    auto constraint_ok = [&](const ExtScalar& x, const ExtScalar& y) {
        return (norm(x) + c * norm(y)).is_one();
    };

    std::vector<std::pair<ExtScalar, ExtScalar>> samples;
    // endpoints: (1,0) gives a; (h,1) gives b
    samples.emplace_back(ExtScalar::one(ctx), ExtScalar::zero(ctx));
    samples.emplace_back(h, ExtScalar::one(ctx));
    // x = 0 branch when 1/c is a norm
    if (auto ne = norm_equation(KScalar::one(ctx) / c); ne.status == Membership::Member)
        samples.emplace_back(ExtScalar::zero(ctx), *ne.t);

    if (ctx->finite()) {
        FiniteExt L(ctx);
        uint64_t total = L.size() * L.size();
        if (total > budget.max_vectors) throw budget_error(total, budget.max_vectors);
        uint32_t cidx = c.idx();
        const SmallField& K = ctx->base();
        for (uint32_t xi = 0; xi < L.size() && samples.size() < count + 3; ++xi)
            for (uint32_t yi = 0; yi < L.size() && samples.size() < count + 3; ++yi) {
                if (K.add(L.norm_k(xi), K.mul(cidx, L.norm_k(yi))) != K.from_int(1)) continue;
                samples.emplace_back(L.to_scalar(xi), L.to_scalar(yi));
            }
    } else {
        // rational points of norm(x) + c*norm(y) = 1 by sweeping lines through
        // the base point (x,y) = (1,0); quadric coefficients (1,-alpha,c,-c*alpha)
        Rat alpha(ctx->alpha());
        Rat cr = c.rat();
        std::array<Rat, 4> coef{1, -alpha, cr, -cr * alpha};
        std::array<Rat, 4> p0{1, 0, 0, 0};
        for (int r = 1; samples.size() < count + 3 && r <= 40; ++r) {
            for (int d1 = -r; d1 <= r && samples.size() < count + 3; ++d1)
                for (int d2 = -r; d2 <= r && samples.size() < count + 3; ++d2)
                    for (int d3 = -r; d3 <= r && samples.size() < count + 3; ++d3)
                        for (int d4 = -r; d4 <= r && samples.size() < count + 3; ++d4) {
                            if (std::max({std::abs(d1), std::abs(d2), std::abs(d3),
                                          std::abs(d4)}) != r)
                                continue;
                            std::array<Rat, 4> D{Rat(d1), Rat(d2), Rat(d3), Rat(d4)};
                            Rat qD = 0, bPD = 0;
                            for (int i = 0; i < 4; ++i) {
                                qD += coef[i] * D[i] * D[i];
                                bPD += coef[i] * p0[i] * D[i];
                            }
                            if (qD == 0) continue;
                            Rat s = -2 * bPD / qD;
                            if (s == 0) continue;
                            ExtScalar x{KScalar::rational(ctx, p0[0] + s * D[0]),
                                        KScalar::rational(ctx, p0[1] + s * D[1])};
                            ExtScalar y{KScalar::rational(ctx, p0[2] + s * D[2]),
                                        KScalar::rational(ctx, p0[3] + s * D[3])};
                            samples.emplace_back(std::move(x), std::move(y));
                        }
        }
    }

    std::vector<ExtScalar> seen;
    for (const auto& [x, y] : samples) {
        if (run.points.size() >= count) break;
        if (!constraint_ok(x, y)) throw std::logic_error("ellipse sample violates the constraint");
        ExtScalar model = h * conj(x) * y + ExtScalar::from_base(c) * conj(y) * y;
        if (std::find(seen.begin(), seen.end(), model) != seen.end()) continue;
        seen.push_back(model);
        emit(x, y);
    }
    return run;
}

EigMembership eigenvalue_membership(const MatrixL& m, const ExtScalar& a, const VectorL& u) {
    check_eigenpair(m, u, a, "u");
    const Ctx& ctx = m.ctx();
    KScalar d = form_norm(u);
    if (!d.is_zero()) {
        auto ne = norm_equation(KScalar::one(ctx) / d);
        if (ne.status == Membership::Member) {
            VectorL unit = u.scaled(*ne.t);
            return {Membership::Member, certify(m, std::move(unit), a), "rescaled eigenvector"};
        }
    }
    if (m.n() == 2 && !d.is_zero()) {
        // orthogonal-complement argument: with a second eigenpair (b', w),
        // w orthogonal to u and <w,w> != 0, the value a is attained iff
        // <u,u> is a norm.
        for (const auto& [lam, vec] : eigenpairs_exact(m)) {
            if (lam == a) continue;
            if (!form(vec, u).is_zero()) continue;
            if (form_norm(vec).is_zero()) continue;
            auto verdict = delta_membership(d, 1);
            if (verdict.status == Membership::NonMember)
                return {Membership::NonMember, std::nullopt,
                        "<u,u> = " + d.str() + " is not a norm (orthogonal-complement argument)"};
            if (verdict.status == Membership::Member) {
                // should have been caught by the rescale above
                auto ne = norm_equation(KScalar::one(ctx) / d);
                if (ne.status == Membership::Member)
                    return {Membership::Member, certify(m, u.scaled(*ne.t), a), "rescaled eigenvector"};
            }
            break;
        }
    }
    return {Membership::Unknown, std::nullopt, "no decision procedure applies"};
}

Compression compression_2x2(const MatrixL& m, const VectorL& u, const VectorL& v) {
    auto ortho = orthogonalize({u, v});
    if (!ortho.normalized)
        throw std::invalid_argument("orthonormalization failed: some <f,f> is not a norm");
    const Ctx& ctx = m.ctx();
    Compression out{MatrixL(ctx, 2), {ortho.frame[0], ortho.frame[1]}, };
    for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 2; ++j)
            out.two_by_two.at(i, j) = form(out.frame[i], m.apply(out.frame[j]));
    return out;
}

VectorL Compression::lift(const VectorL& w) const {
    if (w.size() != 2) throw std::invalid_argument("lift expects a 2-vector");
    return frame[0].scaled(w[0]) + frame[1].scaled(w[1]);
}

std::vector<VectorL> sample_unit_vectors(const Ctx& ctx, uint32_t n, size_t count, uint64_t seed) {
    if (ctx->finite()) throw std::invalid_argument("sample_unit_vectors is for infinite contexts");
    Rng rng(seed);
    std::vector<VectorL> out;
    size_t guard = 0;
    while (out.size() < count && ++guard < count * 200 + 1000) {
        std::vector<ExtScalar> e;
        bool zero = true;
        for (uint32_t i = 0; i < n; ++i) {
            int64_t a = rng.range(-5, 5), b = rng.range(-5, 5), c = rng.range(1, 4);
            if (a != 0 || b != 0) zero = false;
            e.push_back(ExtScalar{KScalar::rational(ctx, Rat(a, c)), KScalar::rational(ctx, Rat(b, c))});
        }
        if (zero) continue;
        VectorL v(ctx, std::move(e));
        KScalar d = form_norm(v);
        if (d.is_zero()) continue;
        auto ne = norm_equation(KScalar::one(ctx) / d);
        if (ne.status != Membership::Member) continue;
        out.push_back(v.scaled(*ne.t));
    }
    if (out.size() < count)
        throw std::runtime_error("could not sample enough unit vectors over " + ctx->spec());
    return out;
}

}  // namespace qnr
