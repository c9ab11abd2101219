// Acceptance checklist: one line per criterion, exact assertions, timed.
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qnr/geometry.hpp"
#include "qnr/numrange.hpp"
#include "qnr/rng.hpp"
#include "qnr/verify.hpp"

using namespace qnr;

namespace {

struct Criterion {
    std::string name;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

bool suite_pass(const verify::Report& r, std::string& detail) {
    if (r.status == "pass") return true;
    for (const auto& a : r.assertions)
        if (!a.pass) {
            detail += " [" + r.suite + "/" + a.name + ": expected " + a.expected + ", got " +
                      a.actual + "]";
        }
    return false;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"1. F_4 diagonal ranges and counts (unit sphere, 256 matrices, 16, 4)", 1.0,
                        [](std::string& d) { return suite_pass(verify::diagonal_ranges_f4(), d); }});

    criteria.push_back({"2. Delta = K and the norm map is (q+1)-to-1 for q in {2,3,4,5,7,8,9}", 1.0,
                        [](std::string& d) {
                            bool ok = true;
                            for (auto [p, m] : std::vector<std::pair<uint32_t, uint32_t>>{
                                     {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
                                Ctx ctx = FieldCtx::make_finite(p, m);
                                FiniteExt L(ctx);
                                const uint32_t q = ctx->q();
                                std::vector<uint32_t> fibers(q, 0);
                                for (uint64_t z = 1; z < L.size(); ++z)
                                    ++fibers[L.norm_k(uint32_t(z))];
                                if (fibers[0] != 0) ok = false;
                                for (uint32_t v = 1; v < q; ++v)
                                    if (fibers[v] != q + 1) {
                                        ok = false;
                                        d += " [q=" + std::to_string(q) + ", value " +
                                             std::to_string(v) + " has " +
                                             std::to_string(fibers[v]) + " preimages]";
                                    }
                            }
                            return ok;
                        }});

    criteria.push_back(
        {"3. F_9 Delta-convexity classification: exactly 22 convex subsets (9+12+1)", 5.0,
         [](std::string& d) {
             Ctx ctx = FieldCtx::make_finite(3, 1);
             FiniteExt L(ctx);
             size_t convex = 0, singles = 0, lines = 0, full = 0;
             for (uint32_t mask = 1; mask < 512; ++mask) {
                 std::vector<ExtScalar> s;
                 for (uint32_t z = 0; z < 9; ++z)
                     if (mask & (1u << z)) s.push_back(L.to_scalar(z));
                 if (!is_delta_convex(s, ctx).convex) continue;
                 ++convex;
                 if (s.size() == 1) ++singles;
                 else if (s.size() == 3) ++lines;
                 else if (s.size() == 9) ++full;
             }
             bool ok = convex == 22 && singles == 9 && lines == 12 && full == 1;
             if (!ok)
                 d += " [found " + std::to_string(convex) + " convex sets: " +
                      std::to_string(singles) + " singletons, " + std::to_string(lines) +
                      " lines, " + std::to_string(full) + " full]";
             return ok;
         }});

    criteria.push_back({"4. Ellipse point sets equal the matrix ranges over F_9 and F_25", 30.0,
                        [](std::string& d) {
                            bool ok = suite_pass(verify::ellipse_ranges(FieldCtx::make_finite(3, 1)), d);
                            ok = suite_pass(verify::ellipse_ranges(FieldCtx::make_finite(5, 1)), d) && ok;
                            return ok;
                        }});

    criteria.push_back(
        {"5. Direct sums: Num(A+B) equals the closure of Num(A) u Num(B), 100 pairs over F_4 and F_9",
         60.0, [](std::string& d) {
             bool ok = suite_pass(verify::direct_sum_hull(FieldCtx::make_finite(2, 1), 100, 42), d);
             ok = suite_pass(verify::direct_sum_hull(FieldCtx::make_finite(3, 1), 100, 43), d) && ok;
             return ok;
         }});

    criteria.push_back({"6. Segment and ellipse witness constructions (20 t-samples, >= 10 points)",
                        5.0, [](std::string& d) {
                            return suite_pass(verify::segment_ellipse_witnesses(42), d);
                        }});

    criteria.push_back({"7. Excluded eigenvalues: 3 in Delta_2 minus Delta; 0 and 1 not attained",
                        1.0, [](std::string& d) { return suite_pass(verify::excluded_eigenvalue(), d); }});

    criteria.push_back(
        {"8. Decomposition M = M+ + beta*M- with Hermitian parts (exhaustive F_4, random F_9/Q(i))",
         10.0, [](std::string& d) {
             bool ok = true;
             {  // exhaustive over M_{2,2}(F_4)
                 Ctx ctx = FieldCtx::make_finite(2, 1);
                 FiniteExt L(ctx);
                 ExtScalar beta = ExtScalar::beta(ctx);
                 for (uint32_t v = 0; v < 256 && ok; ++v) {
                     MatrixL m(ctx, 2);
                     m.at(0, 0) = L.to_scalar(v & 3);
                     m.at(0, 1) = L.to_scalar((v >> 2) & 3);
                     m.at(1, 0) = L.to_scalar((v >> 4) & 3);
                     m.at(1, 1) = L.to_scalar((v >> 6) & 3);
                     HermDecomp h = herm_decompose(m);
                     ok = is_hermitian(h.plus) && is_hermitian(h.minus) &&
                          h.plus + h.minus.scaled(beta) == m;
                 }
                 if (!ok) d += " [F_4 exhaustive failed]";
             }
             {  // 1000 random over L = F_9
                 Ctx ctx = FieldCtx::make_finite(3, 1);
                 FiniteExt L(ctx);
                 ExtScalar beta = ExtScalar::beta(ctx);
                 Rng rng(44);
                 for (int k = 0; k < 1000 && ok; ++k) {
                     MatrixL m(ctx, 2);
                     for (uint32_t i = 0; i < 2; ++i)
                         for (uint32_t j = 0; j < 2; ++j)
                             m.at(i, j) = L.to_scalar(uint32_t(rng.below(9)));
                     HermDecomp h = herm_decompose(m);
                     ok = is_hermitian(h.plus) && is_hermitian(h.minus) &&
                          h.plus + h.minus.scaled(beta) == m;
                 }
                 if (!ok) d += " [F_9 randomized failed]";
             }
             {  // 1000 random over Q(i)
                 Ctx ctx = FieldCtx::make_rational(-1);
                 ExtScalar beta = ExtScalar::beta(ctx);
                 Rng rng(45);
                 for (int k = 0; k < 1000 && ok; ++k) {
                     MatrixL m(ctx, 2);
                     for (uint32_t i = 0; i < 2; ++i)
                         for (uint32_t j = 0; j < 2; ++j)
                             m.at(i, j) = ExtScalar{
                                 KScalar::rational(ctx, Rat(rng.range(-9, 9), rng.range(1, 9))),
                                 KScalar::rational(ctx, Rat(rng.range(-9, 9), rng.range(1, 9)))};
                     HermDecomp h = herm_decompose(m);
                     ok = is_hermitian(h.plus) && is_hermitian(h.minus) &&
                          h.plus + h.minus.scaled(beta) == m;
                 }
                 if (!ok) d += " [Q(i) randomized failed]";
             }
             return ok;
         }});

    criteria.push_back(
        {"9. Hermitian iff range in K: 1000 samples over K=F_9 and K=F_25; 12 F_4 exceptions", 30.0,
         [](std::string& d) {
             bool ok = suite_pass(verify::hermitian_real_range(FieldCtx::make_finite(3, 2), 1000, 42), d);
             ok = suite_pass(verify::hermitian_real_range(FieldCtx::make_finite(5, 2), 1000, 43), d) && ok;
             ok = suite_pass(verify::hermitian_real_range(FieldCtx::make_finite(2, 1), 0, 42), d) && ok;
             return ok;
         }});

    criteria.push_back({"10. Segment filling in binary64: 100 matrices, s in {0.1..0.9}, 1e-8", 10.0,
                        [](std::string& d) {
                            return suite_pass(verify::segment_fill(100, 1e-8, 42), d);
                        }});

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string(" [exception: ") + e.what() + "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) {
            ok = false;
            detail += " [over time limit of " + std::to_string(c.limit_seconds) + "s]";
        }
        std::printf("[%s] %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), secs,
                    detail.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
