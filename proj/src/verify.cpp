#include "qnr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qnr/approx.hpp"
#include "qnr/geometry.hpp"
#include "qnr/numrange.hpp"
#include "qnr/rng.hpp"

namespace qnr::verify {

void Report::check(const std::string& name, const std::string& expected, const std::string& actual) {
    assertions.push_back({name, expected, actual, expected == actual});
}

void Report::check_true(const std::string& name, bool ok, const std::string& detail) {
    assertions.push_back({name, "true", ok ? "true" : (detail.empty() ? "false" : detail), ok});
}

void Report::finalize() {
    if (status == "not_applicable") return;
    status = "pass";
    for (const auto& a : assertions)
        if (!a.pass) status = "fail";
}

std::string report_json(const Report& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["status"] = r.status;
    j["assertions"] = nlohmann::json::array();
    for (const auto& a : r.assertions)
        j["assertions"].push_back(
            {{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
    j["witnesses"] = r.witnesses;
    return j.dump(2);
}

namespace {

std::string set_str(const NumRangeSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.points.size(); ++i) {
        if (i) out += ", ";
        out += s.points[i].str();
    }
    return out + "}";
}

MatrixL random_matrix_finite(const FiniteExt& L, uint32_t n, Rng& rng) {
    const Ctx& ctx = L.ctx();
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            m.at(i, j) = L.to_scalar(uint32_t(rng.below(L.size())));
    return m;
}

MatrixL random_hermitian_finite(const FiniteExt& L, uint32_t n, Rng& rng) {
    const Ctx& ctx = L.ctx();
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i) {
        m.at(i, i) = ExtScalar::from_base(KScalar::finite(ctx, uint32_t(rng.below(ctx->q()))));
        for (uint32_t j = i + 1; j < n; ++j) {
            ExtScalar z = L.to_scalar(uint32_t(rng.below(L.size())));
            m.at(i, j) = z;
            m.at(j, i) = conj(z);
        }
    }
    return m;
}

MatrixL random_matrix_rational(const Ctx& ctx, uint32_t n, Rng& rng) {
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            m.at(i, j) = ExtScalar{KScalar::rational(ctx, Rat(rng.range(-9, 9), rng.range(1, 9))),
                                   KScalar::rational(ctx, Rat(rng.range(-9, 9), rng.range(1, 9)))};
    return m;
}

bool range_in_base(const NumRangeSet& s) {
    for (const auto& z : s.points)
        if (!z.in_base()) return false;
    return true;
}

// early-exit index-level scan: is nu(u) in K for every sphere point?
bool range_in_base_scan(const MatrixL& m, const UnitSphere& sphere) {
    const FiniteExt& L = *sphere.ext;
    auto mflat = flatten_matrix(m, L);
    for (size_t i = 0; i < sphere.size(); ++i)
        if (L.im(nu_index(L, mflat, m.n(), sphere.point(i))) != 0) return false;
    return true;
}

}  // namespace

// --------------------------------------------------------- diagonal_ranges_f4

Report diagonal_ranges_f4() {
    Report r;
    r.suite = "diagonal-ranges-f4";
    Ctx ctx = FieldCtx::make_finite(2, 1);
    FiniteExt L(ctx);

    UnitSphere sphere = unit_sphere(ctx, 2);
    // the norm map is 3-to-1 on units, so every (x,0) and (0,y) with x,y != 0
    // lies on the sphere: six points
    std::vector<std::string> expect_pts;
    for (uint32_t x = 1; x < 4; ++x) expect_pts.push_back("(" + L.to_scalar(x).str() + ", 0)");
    for (uint32_t y = 1; y < 4; ++y) expect_pts.push_back("(0, " + L.to_scalar(y).str() + ")");
    std::sort(expect_pts.begin(), expect_pts.end());
    std::vector<std::string> got_pts;
    for (size_t i = 0; i < sphere.size(); ++i) got_pts.push_back(sphere.vec(i).str());
    std::sort(got_pts.begin(), got_pts.end());
    std::string expect_str, got_str;
    for (const auto& s : expect_pts) expect_str += s + " ";
    for (const auto& s : got_pts) got_str += s + " ";
    r.check("unit_sphere_c2_f4", expect_str, got_str);
    r.check("unit_sphere_c2_f4_size", "6", std::to_string(sphere.size()));

    size_t diag_ok = 0, zero_range = 0, zero_range_hermitian = 0;
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b)
            for (uint32_t c = 0; c < 4; ++c)
                for (uint32_t d = 0; d < 4; ++d) {
                    MatrixL m(ctx, 2);
                    m.at(0, 0) = L.to_scalar(a);
                    m.at(0, 1) = L.to_scalar(b);
                    m.at(1, 0) = L.to_scalar(c);
                    m.at(1, 1) = L.to_scalar(d);
                    NumRangeSet range = num_range_over(m, sphere);
                    NumRangeSet diag = make_range_set(ctx, {m.at(0, 0), m.at(1, 1)}, true);
                    if (range == diag) ++diag_ok;
                    if (range.points.size() == 1 && range.points[0].is_zero()) {
                        ++zero_range;
                        if (is_hermitian(m)) ++zero_range_hermitian;
                    }
                }
    r.check("num_range_equals_diagonal_pair", "256/256", std::to_string(diag_ok) + "/256");
    r.check("matrices_with_range_zero", "16", std::to_string(zero_range));
    r.check("hermitian_matrices_with_range_zero", "4", std::to_string(zero_range_hermitian));
    r.finalize();
    return r;
}

// ------------------------------------------------------- hermitian_real_range

Report hermitian_real_range(const Ctx& base_ctx, size_t sample_size, uint64_t seed) {
    Report r;
    r.suite = "hermitian-real-range[" + base_ctx->spec() + "]";
    if (!base_ctx->finite()) throw std::invalid_argument("suite needs a finite context");
    const SmallField& K = base_ctx->base();

    if (base_ctx->char_two()) {
        if (K.q() != 2) {
            r.status = "not_applicable";
            r.witnesses.push_back("characteristic 2 with |K| > 2: hypotheses unavailable");
            return r;
        }
        // |K| = 2: the known exception. All 256 matrices, exact counts.
        Ctx ctx = base_ctx;
        FiniteExt L(ctx);
        UnitSphere sphere = unit_sphere(ctx, 2);
        size_t zero_range = 0, zero_range_nonherm = 0, herm_in_base = 0, herm_total = 0;
        for (uint32_t v = 0; v < 256; ++v) {
            MatrixL m(ctx, 2);
            m.at(0, 0) = L.to_scalar(v & 3);
            m.at(0, 1) = L.to_scalar((v >> 2) & 3);
            m.at(1, 0) = L.to_scalar((v >> 4) & 3);
            m.at(1, 1) = L.to_scalar((v >> 6) & 3);
            NumRangeSet range = num_range_over(m, sphere);
            bool herm = is_hermitian(m);
            if (herm) {
                ++herm_total;
                if (range_in_base(range)) ++herm_in_base;
            }
            if (range.points.size() == 1 && range.points[0].is_zero()) {
                ++zero_range;
                if (!herm) ++zero_range_nonherm;
            }
        }
        r.check("hermitian_implies_range_in_K", "16/16",
                std::to_string(herm_in_base) + "/" + std::to_string(herm_total));
        r.check("nonhermitian_with_range_zero", "12", std::to_string(zero_range_nonherm));
        r.check("matrices_with_range_zero", "16", std::to_string(zero_range));
        r.finalize();
        return r;
    }

    // hypothesis pair: delta in (Delta cap (1-Delta)) \ {0,1}, w outside K with
    // norm(w) = delta, delta and 1-delta squares in K
    const uint32_t one = K.from_int(1);
    std::optional<uint32_t> delta;
    for (uint32_t d = 0; d < K.q(); ++d) {
        if (d == 0 || d == one) continue;
        if (K.is_square(d) && K.is_square(K.sub(one, d))) {
            delta = d;
            break;
        }
    }
    if (!delta) {
        r.status = "not_applicable";
        r.witnesses.push_back("no delta with delta and 1-delta both squares outside {0,1} in " +
                              base_ctx->spec());
        return r;
    }
    FiniteExt L(base_ctx);
    std::optional<ExtScalar> w;
    for (uint64_t z = 0; z < L.size(); ++z) {
        if (L.im(uint32_t(z)) == 0) continue;
        if (L.norm_k(uint32_t(z)) == *delta) {
            w = L.to_scalar(uint32_t(z));
            break;
        }
    }
    r.check_true("hypothesis_pair_found", bool(w),
                 "no w outside K with norm " + KScalar::finite(base_ctx, *delta).str());
    if (w)
        r.witnesses.push_back("delta = " + KScalar::finite(base_ctx, *delta).str() + ", w = " +
                              w->str());

    UnitSphere sphere = unit_sphere(base_ctx, 2);
    Rng rng(seed);
    size_t violations = 0;
    for (size_t i = 0; i < sample_size; ++i) {
        MatrixL m = (i % 2 == 0) ? random_matrix_finite(*sphere.ext, 2, rng)
                                 : random_hermitian_finite(*sphere.ext, 2, rng);
        if (is_hermitian(m) != range_in_base_scan(m, sphere)) ++violations;
    }
    r.check("hermitian_iff_range_in_K_violations", "0", std::to_string(violations));
    r.check("samples", std::to_string(sample_size), std::to_string(sample_size));
    r.finalize();
    return r;
}

// --------------------------------------------------- segment_ellipse_witnesses

Report segment_ellipse_witnesses(uint64_t seed) {
    (void)seed;
    Report r;
    r.suite = "segment-ellipse-witnesses";

    {  // Q(i), diag(0,1): orthogonal unit eigenvectors, 20 certified t-samples
        Ctx ctx = FieldCtx::make_rational(-1);
        MatrixL m(ctx, 2);
        m.at(1, 1) = ExtScalar::one(ctx);
        VectorL u = VectorL::basis(ctx, 2, 0), v = VectorL::basis(ctx, 2, 1);
        auto samples = delta_interval_sample(ctx, 20);
        auto wits = segment_witnesses(m, u, v, ExtScalar::zero(ctx), ExtScalar::one(ctx), samples);
        size_t certified = 0;
        for (const auto& wp : wits)
            if (wp.unit_checked) ++certified;
        r.check("qi_segment_certified", "20/20", std::to_string(certified) + "/20");
        bool has_half = false;
        for (size_t i = 0; i < samples.size(); ++i)
            if (samples[i].t == KScalar::rational(ctx, Rat(1, 2))) has_half = true;
        r.check_true("qi_segment_contains_one_half", has_half);
    }
    {  // Q(i), [[0,1],[0,1]]: non-orthogonal eigenvectors, ellipse witnesses
        Ctx ctx = FieldCtx::make_rational(-1);
        MatrixL m(ctx, 2);
        m.at(0, 1) = ExtScalar::one(ctx);
        m.at(1, 1) = ExtScalar::one(ctx);
        VectorL u = VectorL::basis(ctx, 2, 0);
        VectorL v(ctx, {ExtScalar::one(ctx), ExtScalar::one(ctx)});
        auto run = ellipse_witnesses(m, u, v, ExtScalar::zero(ctx), ExtScalar::one(ctx), 12);
        size_t certified = 0;
        for (const auto& wp : run.points)
            if (wp.unit_checked) ++certified;
        r.check_true("qi_ellipse_at_least_10_points", certified >= 10,
                     std::to_string(certified) + " certified");
        bool has_a = false, has_b = false;
        for (const auto& wp : run.points) {
            if (wp.value == ExtScalar::zero(ctx)) has_a = true;
            if (wp.value == ExtScalar::one(ctx)) has_b = true;
        }
        r.check_true("qi_ellipse_contains_both_eigenvalues", has_a && has_b);
        r.witnesses.push_back("c = " + run.c.str() + ", c in Delta: " +
                              (run.c_verdict.status == Membership::Member
                                   ? "member"
                                   : run.c_verdict.status == Membership::NonMember ? "non_member"
                                                                                   : "unknown") +
                              " at level " + std::to_string(run.c_verdict.level));
        // record the level-2 verdict as well (c = <w,w> is a sum of two norms)
        auto v2 = delta_membership(run.c, 2);
        r.check_true("qi_ellipse_c_in_Delta2",
                     v2.status == Membership::Member && v2.reverify(run.c));
    }
    {  // L = F_9: the segment lands inside the enumerated range
        Ctx ctx = FieldCtx::make_finite(3, 1);
        MatrixL m(ctx, 2);
        m.at(1, 1) = ExtScalar::one(ctx);
        VectorL u = VectorL::basis(ctx, 2, 0), v = VectorL::basis(ctx, 2, 1);
        auto samples = delta_interval_sample(ctx, 3);
        auto wits = segment_witnesses(m, u, v, ExtScalar::zero(ctx), ExtScalar::one(ctx), samples);
        NumRangeSet range = num_range_finite(m);
        bool all_inside = true;
        std::vector<ExtScalar> vals;
        for (const auto& wp : wits) {
            all_inside = all_inside && range.contains(wp.value);
            vals.push_back(wp.value);
        }
        r.check_true("f9_segment_inside_range", all_inside);
        NumRangeSet seg = make_range_set(ctx, std::move(vals), false);
        NumRangeSet prime;  // F_3 inside F_9
        {
            std::vector<ExtScalar> p;
            for (uint32_t t = 0; t < 3; ++t)
                p.push_back(ExtScalar::from_base(KScalar::finite(ctx, t)));
            prime = make_range_set(ctx, std::move(p), false);
        }
        r.check("f9_segment_is_prime_subfield", set_str(prime), set_str(seg));
    }
    r.finalize();
    return r;
}

// --------------------------------------------------------- excluded_eigenvalue

Report excluded_eigenvalue() {
    Report r;
    r.suite = "excluded-eigenvalue";
    Ctx ctx = FieldCtx::make_rational(-1);
    auto qi = [&](int64_t a, int64_t b) {
        return ExtScalar{KScalar::rational(ctx, Rat(a)), KScalar::rational(ctx, Rat(b))};
    };

    KScalar delta = KScalar::rational(ctx, Rat(3));
    auto v1 = delta_membership(delta, 1);
    r.check_true("three_not_in_Delta", v1.status == Membership::NonMember);
    auto v2 = delta_membership(delta, 2);
    r.check_true("three_in_Delta2", v2.status == Membership::Member && v2.reverify(delta));
    if (v2.status == Membership::Member) {
        std::string w = "3 = ";
        for (size_t i = 0; i < v2.witness.size(); ++i) {
            if (i) w += " + ";
            w += "norm(" + v2.witness[i].str() + ")";
        }
        r.witnesses.push_back(w);
    }

    VectorL u(ctx, {qi(1, 1), qi(1, 0)});  // <u,u> = 3
    r.check("u_norm", "3", form_norm(u).str());
    VectorL mvec(ctx, {qi(1, 0), qi(-1, 1)});
    r.check("m_orthogonal_to_u", "0", form(mvec, u).str());
    r.check("m_norm", "3", form_norm(mvec).str());

    // the unique M with Mu = 0 and Mm = m
    MatrixL p(ctx, 2);
    p.at(0, 0) = u[0];
    p.at(1, 0) = u[1];
    p.at(0, 1) = mvec[0];
    p.at(1, 1) = mvec[1];
    MatrixL rhs(ctx, 2);
    rhs.at(0, 1) = mvec[0];
    rhs.at(1, 1) = mvec[1];
    auto pinv = inverse(p);
    if (!pinv) throw std::logic_error("basis change is singular");
    MatrixL m = rhs * *pinv;
    r.check_true("Mu_is_zero", m.apply(u) == VectorL::zero(ctx, 2));
    r.check_true("Mm_is_m", m.apply(mvec) == mvec);

    auto e0 = eigenvalue_membership(m, ExtScalar::zero(ctx), u);
    r.check_true("zero_not_attained", e0.status == Membership::NonMember, e0.reason);
    if (!e0.reason.empty()) r.witnesses.push_back("a=0: " + e0.reason);
    auto e1 = eigenvalue_membership(m, ExtScalar::one(ctx), mvec);
    r.check_true("one_not_attained", e1.status == Membership::NonMember, e1.reason);
    if (!e1.reason.empty()) r.witnesses.push_back("a=1: " + e1.reason);
    r.finalize();
    return r;
}

// ------------------------------------------------------------ direct_sum_hull

Report direct_sum_hull(const Ctx& ctx, size_t trials, uint64_t seed) {
    Report r;
    r.suite = "direct-sum-hull[" + ctx->spec() + "]";
    UnitSphere sphere4 = unit_sphere(ctx, 4);
    UnitSphere sphere2 = unit_sphere(ctx, 2);
    Rng rng(seed);

    {  // scalar sanity: A = B = cI gives {c}
        const FiniteExt& L = *sphere4.ext;
        ExtScalar c = L.to_scalar(uint32_t(rng.below(L.size())));
        MatrixL a = MatrixL::identity(ctx, 2).scaled(c);
        NumRangeSet range = num_range_over(direct_sum(a, a), sphere4);
        r.check("scalar_direct_sum", "{" + c.str() + "}", set_str(range));
    }

    size_t equal = 0;
    std::string first_fail;
    for (size_t i = 0; i < trials; ++i) {
        MatrixL a = random_matrix_finite(*sphere2.ext, 2, rng);
        MatrixL b = random_matrix_finite(*sphere2.ext, 2, rng);
        NumRangeSet lhs = num_range_over(direct_sum(a, b), sphere4);
        NumRangeSet ra = num_range_over(a, sphere2), rb = num_range_over(b, sphere2);
        std::vector<ExtScalar> uni = ra.points;
        uni.insert(uni.end(), rb.points.begin(), rb.points.end());
        NumRangeSet rhs = make_range_set(ctx, delta_convex_closure(std::move(uni), ctx), true);
        if (lhs == rhs) {
            ++equal;
        } else if (first_fail.empty()) {
            first_fail = "A = " + a.str() + ", B = " + b.str() + ": Num(A+B) = " + set_str(lhs) +
                         " vs closure = " + set_str(rhs);
        }
    }
    r.check("pairs_with_exact_equality", std::to_string(trials) + "/" + std::to_string(trials),
            std::to_string(equal) + "/" + std::to_string(trials));
    if (!first_fail.empty()) r.witnesses.push_back(first_fail);
    r.finalize();
    return r;
}

// -------------------------------------------------------------- ellipse_ranges

Report ellipse_ranges(const Ctx& ctx) {
    Report r;
    r.suite = "ellipse-ranges[" + ctx->spec() + "]";
    FiniteExt L(ctx);
    UnitSphere sphere = unit_sphere(ctx, 2);
    KScalar one = KScalar::one(ctx);

    size_t match = 0;
    const size_t cases = L.size() - 1;
    for (uint64_t bi = 1; bi < L.size(); ++bi) {
        ExtScalar b = L.to_scalar(uint32_t(bi));
        MatrixL m(ctx, 2);
        m.at(0, 1) = b;
        m.at(1, 1) = ExtScalar::one(ctx);
        NumRangeSet range = num_range_over(m, sphere);
        EllipseSpec spec = EllipseSpec::two_foci(ctx, one, one, b, ExtScalar::one(ctx));
        NumRangeSet ell = ellipse_points(spec, ctx);
        if (range == ell) ++match;
    }
    r.check("two_foci_matches_for_all_b", std::to_string(cases) + "/" + std::to_string(cases),
            std::to_string(match) + "/" + std::to_string(cases));

    MatrixL nil(ctx, 2);
    nil.at(0, 1) = ExtScalar::one(ctx);
    NumRangeSet range = num_range_over(nil, sphere);
    NumRangeSet ell = ellipse_points(EllipseSpec::one_focus(ctx, one, one), ctx);
    r.check("one_focus_matches_nilpotent", set_str(range), set_str(ell));
    r.finalize();
    return r;
}

// ------------------------------------------------------------ two_by_two_shapes

Report two_by_two_shapes() {
    Report r;
    r.suite = "two-by-two-shapes";
    Ctx ctx = FieldCtx::make_rational(-1);
    auto qi = [&](int64_t a, int64_t b) {
        return ExtScalar{KScalar::rational(ctx, Rat(a)), KScalar::rational(ctx, Rat(b))};
    };
    ExtScalar zero = ExtScalar::zero(ctx), one = ExtScalar::one(ctx);

    {  // nilpotent: unique eigenvalue 0, one-focus shape in the frame
        MatrixL m(ctx, 2);
        m.at(0, 1) = one;
        auto pairs = eigenpairs_exact(m);
        r.check("nilpotent_eigenvalue_count", "1", std::to_string(pairs.size()));
        VectorL u = pairs.at(0).second;
        Compression comp = compression_2x2(m, u, VectorL::basis(ctx, 2, 1));
        const MatrixL& n = comp.two_by_two;
        r.check_true("nilpotent_frame_shape",
                     n.at(0, 0).is_zero() && n.at(1, 0).is_zero() && n.at(1, 1).is_zero() &&
                         !n.at(0, 1).is_zero());
        // sampled range points certified against the one-focus parametrization
        auto units = sample_unit_vectors(ctx, 2, 25, 20240203);
        bool all_match = true;
        for (const auto& w : units) {
            VectorL lifted = comp.lift(w);
            ExtScalar direct = nu(m, lifted);
            ExtScalar param = conj(w[0]) * w[1] * n.at(0, 1);
            all_match = all_match && direct == param && form_norm(lifted).is_one();
        }
        r.check_true("nilpotent_one_focus_samples", all_match);
    }
    {  // diag(0,1): orthogonal eigenvectors, hull form (frame reproduces it)
        MatrixL m(ctx, 2);
        m.at(1, 1) = one;
        Compression comp = compression_2x2(m, VectorL::basis(ctx, 2, 0), VectorL::basis(ctx, 2, 1));
        r.check_true("diagonal_frame_is_diagonal",
                     comp.two_by_two.at(0, 1).is_zero() && comp.two_by_two.at(1, 0).is_zero());
        auto samples = delta_interval_sample(ctx, 10);
        auto wits = segment_witnesses(m, VectorL::basis(ctx, 2, 0), VectorL::basis(ctx, 2, 1), zero,
                                      one, samples);
        r.check("diagonal_hull_witnesses", "10", std::to_string(wits.size()));
    }
    {  // non-normal with two distinct eigenvalues: two-foci shape
        MatrixL m(ctx, 2);
        m.at(0, 1) = one;
        m.at(1, 1) = one;
        auto pairs = eigenpairs_exact(m);
        r.check("nonnormal_eigenvalue_count", "2", std::to_string(pairs.size()));
        // eigenvector for 0 is e1; frame shape has a21 = 0 and a11 = 0
        VectorL u = VectorL::basis(ctx, 2, 0);
        Compression comp = compression_2x2(m, u, VectorL::basis(ctx, 2, 1));
        const MatrixL& n = comp.two_by_two;
        r.check_true("nonnormal_frame_shape", n.at(0, 0).is_zero() && n.at(1, 0).is_zero() &&
                                                  !n.at(0, 1).is_zero() && !n.at(1, 1).is_zero());
        VectorL v(ctx, {one, one});
        auto run = ellipse_witnesses(m, u, v, zero, one, 10);
        r.check("nonnormal_two_foci_witnesses", "10", std::to_string(run.points.size()));
        r.witnesses.push_back("frame matrix " + n.str() + "; c = " + run.c.str());
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------- segment_fill

Report segment_fill(size_t trials, double tol, uint64_t seed) {
    using namespace approx;
    Report r;
    r.suite = "segment-fill";
    Rng rng(seed);

    size_t ok = 0, total = 0;
    double worst_value = 0, worst_norm = 0;
    for (size_t k = 0; k < trials; ++k) {
        size_t n = 2 + k % 4;
        ApproxMatrix m = random_matrix(n, rng.next());
        cvec u, v;
        cd a, b;
        do {
            u = random_unit(n, rng.next());
            v = random_unit(n, rng.next());
            a = nu(m, u);
            b = nu(m, v);
        } while (std::abs(a - b) < 1e-3);
        for (int si = 1; si <= 9; ++si) {
            double s = si / 10.0;
            cvec w = fill_segment(m, u, v, s, tol);
            cd target = (1.0 - s) * a + s * b;
            double value_res = std::abs(nu(m, w) - target);
            double norm_res = std::abs(norm2(w) - 1.0);
            worst_value = std::max(worst_value, value_res);
            worst_norm = std::max(worst_norm, norm_res);
            ++total;
            if (value_res <= tol && norm_res <= 1e-10) ++ok;
        }
    }
    r.check("fill_segment_success", std::to_string(total) + "/" + std::to_string(total),
            std::to_string(ok) + "/" + std::to_string(total));
    {
        std::ostringstream os;
        os << "worst value residual " << worst_value << ", worst unit-norm residual " << worst_norm;
        r.witnesses.push_back(os.str());
    }

    // real 2x2 trichotomy: point / segment / ellipse with one or two foci
    size_t classified = 0, points = 0, segments = 0, ellipses = 0;
    for (size_t k = 0; k < 50; ++k) {
        ApproxMatrix m(2);
        if (k == 0) {  // scalar
            m.at(0, 0) = m.at(1, 1) = 1.5;
        } else if (k % 3 == 0) {  // symmetric with distinct eigenvalues
            double x = rng.gauss(), y = rng.gauss(), z = rng.gauss();
            m.at(0, 0) = x;
            m.at(1, 1) = y;
            m.at(0, 1) = m.at(1, 0) = z + (std::abs(z) < 0.1 ? 0.5 : 0.0);
        } else {
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j) m.at(i, j) = rng.gauss();
        }
        // eigenvalues of the real 2x2
        double tr = m.at(0, 0).real() + m.at(1, 1).real();
        double det = (m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)).real();
        double disc = tr * tr / 4 - det;
        cd l1, l2;
        if (disc >= 0) {
            l1 = tr / 2 + std::sqrt(disc);
            l2 = tr / 2 - std::sqrt(disc);
        } else {
            l1 = cd(tr / 2, std::sqrt(-disc));
            l2 = std::conj(l1);
        }
        bool scalar = std::abs(m.at(0, 1)) < 1e-12 && std::abs(m.at(1, 0)) < 1e-12 &&
                      std::abs(m.at(0, 0) - m.at(1, 1)) < 1e-12;
        bool normal = std::abs((m * m.dagger() - m.dagger() * m).frob_norm()) < 1e-12;
        auto cloud = sample_range(m, 2000, rng.next());
        bool ok_case = true;
        if (scalar) {
            ++points;
            for (const cd& z : cloud) ok_case = ok_case && std::abs(z - m.at(0, 0)) < 1e-9;
        } else if (normal && disc > 0) {
            ++segments;  // Delta-segment between the eigenvalues
            double lo = std::min(l1.real(), l2.real()), hi = std::max(l1.real(), l2.real());
            for (const cd& z : cloud)
                ok_case = ok_case && std::abs(z.imag()) < 1e-9 && z.real() > lo - 1e-9 &&
                          z.real() < hi + 1e-9;
        } else {
            ++ellipses;  // one focus (disc == 0) or two foci
            // elliptical range law: minor semi-axis^2 = tr(M^dagger M) - |l1|^2 - |l2|^2
            double hs = 0;
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j) hs += std::norm(m.at(i, j));
            double minor2 = hs - std::norm(l1) - std::norm(l2);         // full minor axis, squared
            double major2 = minor2 + std::norm(l1 - l2);                // full major axis, squared
            double two_a = std::sqrt(std::max(major2, 0.0));            // focal-sum bound
            double reach = 0;
            for (const cd& z : cloud) {
                double d = std::abs(z - l1) + std::abs(z - l2);
                ok_case = ok_case && d <= two_a + 1e-8;
                reach = std::max(reach, d);
            }
            ok_case = ok_case && reach > 0.9 * two_a;  // boundary approached
        }
        if (ok_case) ++classified;
    }
    r.check("two_by_two_trichotomy", "50/50", std::to_string(classified) + "/50");
    r.witnesses.push_back("classes: " + std::to_string(points) + " point, " +
                          std::to_string(segments) + " segment, " + std::to_string(ellipses) +
                          " ellipse");
    r.finalize();
    return r;
}

// -------------------------------------------------------------------- registry

std::vector<std::string> suite_names() {
    return {"diagonal-ranges-f4", "hermitian-real-range", "segment-ellipse-witnesses",
            "excluded-eigenvalue", "direct-sum-hull",      "ellipse-ranges",
            "two-by-two-shapes",   "segment-fill"};
}

std::vector<Report> run_suites(const std::string& selector, uint64_t seed) {
    std::string key = selector;
    static const std::map<std::string, std::string> aliases{
        {"b102", "diagonal-ranges-f4"}, {"b100", "hermitian-real-range"},
        {"d2", "segment-ellipse-witnesses"}, {"d3", "excluded-eigenvalue"},
        {"bb1", "direct-sum-hull"}, {"aa5", "ellipse-ranges"},
        {"aa67", "two-by-two-shapes"}, {"i1", "segment-fill"}};
    if (auto it = aliases.find(key); it != aliases.end()) key = it->second;

    std::vector<Report> out;
    auto want = [&](const std::string& name) { return key == "all" || key == name; };
    if (want("diagonal-ranges-f4")) out.push_back(diagonal_ranges_f4());
    if (want("hermitian-real-range")) {
        out.push_back(hermitian_real_range(FieldCtx::make_finite(3, 2), 1000, seed));
        out.push_back(hermitian_real_range(FieldCtx::make_finite(5, 2), 1000, seed + 1));
        out.push_back(hermitian_real_range(FieldCtx::make_finite(2, 1), 0, seed));
    }
    if (want("segment-ellipse-witnesses")) out.push_back(segment_ellipse_witnesses(seed));
    if (want("excluded-eigenvalue")) out.push_back(excluded_eigenvalue());
    if (want("direct-sum-hull")) {
        out.push_back(direct_sum_hull(FieldCtx::make_finite(2, 1), 100, seed));
        out.push_back(direct_sum_hull(FieldCtx::make_finite(3, 1), 100, seed + 1));
    }
    if (want("ellipse-ranges")) {
        out.push_back(ellipse_ranges(FieldCtx::make_finite(3, 1)));
        out.push_back(ellipse_ranges(FieldCtx::make_finite(5, 1)));
    }
    if (want("two-by-two-shapes")) out.push_back(two_by_two_shapes());
    if (want("segment-fill")) out.push_back(segment_fill(100, 1e-8, seed));
    if (out.empty()) throw std::invalid_argument("unknown suite '" + selector + "'");
    return out;
}

}  // namespace qnr::verify
