#include "qnr/forms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qnr {

namespace {

// q^(2n) with saturation
uint64_t pow_sat(uint64_t base, uint32_t exp, uint64_t cap) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// canonical scalar key: orders by (re, im)
uint64_t canonical_key(const FiniteExt& L, uint32_t z) {
    return uint64_t(L.re(z)) * L.size() + L.im(z);
}

}  // namespace

// -------------------------------------------------------------------- VectorL

VectorL::VectorL(Ctx ctx, std::vector<ExtScalar> entries) : ctx_(std::move(ctx)), e_(std::move(entries)) {
    if (e_.empty()) throw std::invalid_argument("vectors must have length >= 1");
    for (const auto& z : e_) require_same_ctx(ctx_, z.ctx());
}

VectorL VectorL::zero(const Ctx& ctx, uint32_t n) {
    return VectorL(ctx, std::vector<ExtScalar>(n, ExtScalar::zero(ctx)));
}

VectorL VectorL::basis(const Ctx& ctx, uint32_t n, uint32_t k) {
    VectorL v = zero(ctx, n);
    v[k] = ExtScalar::one(ctx);
    return v;
}

bool VectorL::is_zero() const {
    for (const auto& z : e_)
        if (!z.is_zero()) return false;
    return true;
}

VectorL VectorL::operator+(const VectorL& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (size() != o.size()) throw std::invalid_argument("vector dimension mismatch");
    std::vector<ExtScalar> out;
    out.reserve(size());
    for (uint32_t i = 0; i < size(); ++i) out.push_back(e_[i] + o.e_[i]);
    return VectorL(ctx_, std::move(out));
}

VectorL VectorL::operator-(const VectorL& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (size() != o.size()) throw std::invalid_argument("vector dimension mismatch");
    std::vector<ExtScalar> out;
    out.reserve(size());
    for (uint32_t i = 0; i < size(); ++i) out.push_back(e_[i] - o.e_[i]);
    return VectorL(ctx_, std::move(out));
}

VectorL VectorL::scaled(const ExtScalar& c) const {
    std::vector<ExtScalar> out;
    out.reserve(size());
    for (const auto& z : e_) out.push_back(z * c);
    return VectorL(ctx_, std::move(out));
}

bool VectorL::operator==(const VectorL& o) const {
    if (size() != o.size()) return false;
    for (uint32_t i = 0; i < size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

std::string VectorL::str() const {
    std::string s = "(";
    for (uint32_t i = 0; i < size(); ++i) {
        if (i) s += ", ";
        s += e_[i].str();
    }
    return s + ")";
}

ExtScalar form(const VectorL& u, const VectorL& v) {
    require_same_ctx(u.ctx(), v.ctx());
    if (u.size() != v.size()) throw std::invalid_argument("vector dimension mismatch");
    ExtScalar acc = ExtScalar::zero(u.ctx());
    for (uint32_t i = 0; i < u.size(); ++i) acc = acc + conj(u[i]) * v[i];
    return acc;
}

KScalar form_norm(const VectorL& u) { return form(u, u).as_base(); }

std::shared_ptr<const FiniteExt> make_ext(const Ctx& ctx) {
    return std::make_shared<const FiniteExt>(ctx);
}

// ----------------------------------------------------------------- UnitSphere

VectorL UnitSphere::vec(size_t i) const {
    std::vector<ExtScalar> e;
    e.reserve(n);
    const uint32_t* p = point(i);
    for (uint32_t k = 0; k < n; ++k) e.push_back(ext->to_scalar(p[k]));
    return VectorL(ctx, std::move(e));
}

namespace {

// enumerate all u in L^n with sum of entry norms == target (K index); calls
// sink(tuple). Tuples are generated in canonical ((re,im) per coordinate) order.
template <typename Sink>
void scan_norm_level_set(const FiniteExt& L, uint32_t n, uint32_t target, Sink&& sink) {
    const uint32_t Q = uint32_t(L.size());
    const SmallField& K = L.base();
    // elements in canonical order, plus their norms
    std::vector<uint32_t> order(Q);
    for (uint32_t x = 0; x < L.base().q(); ++x)
        for (uint32_t y = 0; y < L.base().q(); ++y) order[uint64_t(x) * L.base().q() + y] = L.enc(x, y);
    std::vector<uint32_t> nrm(Q);
    for (uint32_t z = 0; z < Q; ++z) nrm[z] = L.norm_k(z);

    std::vector<uint32_t> pos(n, 0), tuple(n, 0);
    std::vector<uint32_t> partial(n + 1, 0);  // partial[i] = sum of norms of tuple[0..i)
    uint32_t depth = 0;
    while (true) {
        if (pos[depth] == Q) {
            if (depth == 0) break;
            pos[depth] = 0;
            --depth;
            ++pos[depth];
            continue;
        }
        tuple[depth] = order[pos[depth]];
        partial[depth + 1] = K.add(partial[depth], nrm[tuple[depth]]);
        if (depth + 1 == n) {
            if (partial[n] == target) sink(tuple);
            ++pos[depth];
        } else {
            ++depth;
        }
    }
}

}  // namespace

UnitSphere unit_sphere(const Ctx& ctx, uint32_t n, const Budget& budget) {
    if (!ctx->finite()) throw std::invalid_argument("unit_sphere requires a finite context");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    UnitSphere s;
    s.ctx = ctx;
    s.n = n;
    s.ext = make_ext(ctx);
    uint64_t total = pow_sat(s.ext->size(), n, budget.max_vectors);
    if (total > budget.max_vectors) throw budget_error(total, budget.max_vectors);
    const uint32_t one = s.ext->base().from_int(1);
    scan_norm_level_set(*s.ext, n, one, [&](const std::vector<uint32_t>& t) {
        s.flat.insert(s.flat.end(), t.begin(), t.end());
    });
    return s;
}

// ------------------------------------------------------------- definiteness

namespace {

DefiniteResult definite_rational(const Ctx& ctx, uint32_t n) {
    const Int& alpha = ctx->alpha();
    auto mk = [&](std::vector<ExtScalar> head) {
        while (head.size() < n) head.push_back(ExtScalar::zero(ctx));
        return VectorL(ctx, std::move(head));
    };
    if (alpha < 0 || n == 1) return {true, std::nullopt};  // norms are (semi)definite / alpha non-square
    // alpha > 0, n >= 2: isotropic iff alpha is a sum of two squares; n >= 3 always isotropic.
    if (auto ts = two_squares(alpha)) {
        auto [A, B] = *ts;
        // norm(A) + norm(B + beta) = A^2 + B^2 - alpha = 0
        ExtScalar z1 = ExtScalar::from_base(KScalar::rational(ctx, Rat(A)));
        ExtScalar z2{KScalar::rational(ctx, Rat(B)), KScalar::one(ctx)};
        return {false, mk({z1, z2})};
    }
    if (n == 2) return {true, std::nullopt};
    // n >= 3: pick B in {1,2} with B and alpha*B both sums of three squares,
    // then sum x_i^2 = alpha * sum y_i^2 termwise.
    for (int B = 1; B <= 2; ++B) {
        Int target = alpha * B;
        for (Int a = isqrt(target); a >= 0; --a) {
            auto ts = two_squares(target - a * a);
            if (!ts) continue;
            std::array<Int, 3> xs{a, ts->first, ts->second};
            std::array<Int, 3> ys = B == 1 ? std::array<Int, 3>{1, 0, 0} : std::array<Int, 3>{1, 1, 0};
            std::vector<ExtScalar> head;
            for (int i = 0; i < 3; ++i)
                head.push_back(ExtScalar{KScalar::rational(ctx, Rat(xs[i])),
                                         KScalar::rational(ctx, Rat(ys[i]))});
            return {false, mk(std::move(head))};
        }
    }
    return {true, std::nullopt};  // unreachable: B=2 always works
}

}  // namespace

DefiniteResult is_definite_up_to(const Ctx& ctx, uint32_t n, const Budget& budget) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!ctx->finite()) return definite_rational(ctx, n);

    auto ext = make_ext(ctx);
    uint64_t total = pow_sat(ext->size(), n, budget.max_vectors);
    if (total > budget.max_vectors) throw budget_error(total, budget.max_vectors);
    std::optional<VectorL> witness;
    scan_norm_level_set(*ext, n, 0, [&](const std::vector<uint32_t>& t) {
        if (witness) return;
        bool zero = true;
        for (uint32_t z : t) zero = zero && z == 0;
        if (zero) return;
        std::vector<ExtScalar> e;
        for (uint32_t z : t) e.push_back(ext->to_scalar(z));
        witness = VectorL(ctx, std::move(e));
    });
    if (witness) return {false, witness};
    return {true, std::nullopt};
}

// -------------------------------------------------------------- Delta machinery

namespace {

// first z in canonical order with norm(z) = d; finite contexts (always exists)
ExtScalar norm_preimage_finite(const Ctx& ctx, uint32_t d) {
    FiniteExt L(ctx);
    const uint32_t q = ctx->q();
    for (uint32_t x = 0; x < q; ++x)
        for (uint32_t y = 0; y < q; ++y) {
            uint32_t z = L.enc(x, y);
            if (L.norm_k(z) == d) return L.to_scalar(z);
        }
    throw std::logic_error("norm map is onto K; unreachable");
}

// z = (a + b*beta)/c with norm(z) = d, |a|,|b| <= h, 1 <= c <= h
std::optional<ExtScalar> norm_repr_search(const Ctx& ctx, const Rat& d, int h) {
    const Int alpha = ctx->alpha();
    for (int c = 1; c <= h; ++c) {
        Rat t = d * c * c;
        if (denominator(t) != 1) continue;
        Int T = numerator(t);
        for (Int b = 0; b <= h; ++b) {
            Int aa = T + alpha * b * b;
            Int a;
            if (aa >= 0 && is_perfect_square(aa, &a)) {
                return ExtScalar{KScalar::rational(ctx, Rat(a, c)), KScalar::rational(ctx, Rat(b, c))};
            }
        }
    }
    return std::nullopt;
}

// Q(i): d = norm(t) exactly, via the two-squares decomposition of num*den
std::optional<ExtScalar> gaussian_norm_solution(const Ctx& ctx, const Rat& d) {
    if (d < 0) return std::nullopt;
    Int num = numerator(d), den = denominator(d);
    auto ts = two_squares(num * den);
    if (!ts) return std::nullopt;
    return ExtScalar{KScalar::rational(ctx, Rat(ts->first, den)),
                     KScalar::rational(ctx, Rat(ts->second, den))};
}

DeltaVerdict member1(const Ctx& ctx, ExtScalar w, uint32_t level) {
    DeltaVerdict v;
    v.status = Membership::Member;
    v.level = level;
    v.witness = {std::move(w)};
    return v;
}

}  // namespace

bool DeltaVerdict::reverify(const KScalar& d) const {
    if (status != Membership::Member) return false;
    if (witness.empty() || witness.size() > level) return false;
    KScalar acc = KScalar::zero(d.ctx());
    for (const auto& a : witness) acc = acc + norm(a);
    return acc == d;
}

DeltaVerdict delta_membership(const KScalar& d, uint32_t level) {
    if (level < 1) throw std::invalid_argument("level must be >= 1");
    const Ctx& ctx = d.ctx();
    if (ctx->finite()) {
        // Delta = K for finite fields; a preimage always exists
        return member1(ctx, norm_preimage_finite(ctx, d.idx()), level);
    }
    const Rat& r = d.rat();
    const Int& alpha = ctx->alpha();
    if (r == 0) return member1(ctx, ExtScalar::zero(ctx), level);
    if (alpha < 0 && r < 0) return {Membership::NonMember, {}, level};

    if (alpha == -1) {
        if (auto t = gaussian_norm_solution(ctx, r)) return member1(ctx, *t, level);
        if (level == 1 || r < 0) return {Membership::NonMember, {}, level};
        // level >= 2, r > 0: peel one square: num*den = a^2 + (two squares)
        Int num = numerator(r), den = denominator(r);
        Int N = num * den;
        for (Int a = isqrt(N); a >= 0; --a) {
            auto ts = two_squares(N - a * a);
            if (!ts) continue;
            DeltaVerdict v;
            v.status = Membership::Member;
            v.level = level;
            v.witness = {ExtScalar{KScalar::rational(ctx, Rat(a, den)),
                                   KScalar::rational(ctx, Rat(ts->first, den))},
                         ExtScalar::from_base(KScalar::rational(ctx, Rat(ts->second, den)))};
            return v;
        }
        // r > 0 is always a sum of four rational squares; unreachable
        throw std::logic_error("four-square descent failed");
    }

    // general quadratic field: bounded search only
    constexpr int kHeight = 40;
    if (auto t = norm_repr_search(ctx, r, kHeight)) return member1(ctx, *t, level);
    if (level >= 2) {
        // split d = norm(z1) + rest with a small first witness
        for (int c = 1; c <= 6; ++c)
            for (int a = -6; a <= 6; ++a)
                for (int b = 0; b <= 6; ++b) {
                    if (a == 0 && b == 0) continue;
                    Rat n1 = (Rat(a * a) - Rat(alpha) * (b * b)) / (c * c);
                    Rat rest = r - n1;
                    if (rest == 0) continue;
                    if (auto t2 = norm_repr_search(ctx, rest, kHeight)) {
                        DeltaVerdict v;
                        v.status = Membership::Member;
                        v.level = level;
                        v.witness = {ExtScalar{KScalar::rational(ctx, Rat(a, c)),
                                               KScalar::rational(ctx, Rat(b, c))},
                                     *t2};
                        return v;
                    }
                }
    }
    return {Membership::Unknown, {}, level};
}

std::vector<IntervalSample> delta_interval_sample(const Ctx& ctx, size_t count) {
    std::vector<IntervalSample> out;
    if (ctx->finite()) {
        // Delta cap (1 - Delta) = K, returned in full
        FiniteExt L(ctx);
        const uint32_t q = ctx->q();
        const SmallField& K = ctx->base();
        for (uint32_t t = 0; t < q; ++t) {
            IntervalSample s;
            s.t = KScalar::finite(ctx, t);
            s.x = norm_preimage_finite(ctx, t);
            s.y = norm_preimage_finite(ctx, K.sub(K.from_int(1), t));
            out.push_back(std::move(s));
        }
        return out;
    }
    if (ctx->alpha() == -1) {
        // rational points of the unit 3-sphere via inverse stereographic
        // projection of integer triples; t = |x|^2, 1-t = |y|^2
        std::map<Rat, bool> seen;
        for (int radius = 0; out.size() < count && radius <= 1000; ++radius) {
            for (int u = -radius; u <= radius && out.size() < count; ++u)
                for (int v = -radius; v <= radius && out.size() < count; ++v)
                    for (int w = -radius; w <= radius && out.size() < count; ++w) {
                        if (std::max({std::abs(u), std::abs(v), std::abs(w)}) != radius) continue;
                        Rat s = Rat(1) + u * u + v * v + w * w;
                        Rat t = Rat(4 * (u * u + v * v)) / (s * s);
                        if (seen.count(t)) continue;
                        seen[t] = true;
                        IntervalSample smp;
                        smp.t = KScalar::rational(ctx, t);
                        smp.x = ExtScalar{KScalar::rational(ctx, Rat(2 * u) / s),
                                          KScalar::rational(ctx, Rat(2 * v) / s)};
                        smp.y = ExtScalar{KScalar::rational(ctx, Rat(2 * w) / s),
                                          KScalar::rational(ctx, (s - 2) / s)};
                        out.push_back(std::move(smp));
                    }
        }
        return out;
    }
    // other quadratic fields: bounded search over small norms t with 1-t also a norm
    std::map<Rat, bool> seen;
    for (int c = 1; c <= 8 && out.size() < count; ++c)
        for (int a = -8; a <= 8 && out.size() < count; ++a)
            for (int b = 0; b <= 8 && out.size() < count; ++b) {
                Rat t = (Rat(a * a) - Rat(ctx->alpha()) * (b * b)) / (c * c);
                if (seen.count(t)) continue;
                auto y = norm_repr_search(ctx, Rat(1) - t, 24);
                if (!y) continue;
                seen[t] = true;
                out.push_back(IntervalSample{KScalar::rational(ctx, t),
                                             ExtScalar{KScalar::rational(ctx, Rat(a, c)),
                                                       KScalar::rational(ctx, Rat(b, c))},
                                             *y});
            }
    return out;
}

NormEqResult norm_equation(const KScalar& d) {
    const Ctx& ctx = d.ctx();
    if (d.is_zero()) throw std::domain_error("norm_equation requires d != 0");
    if (ctx->finite()) return {Membership::Member, norm_preimage_finite(ctx, d.idx())};
    auto v = delta_membership(d, 1);
    if (v.status == Membership::Member) return {Membership::Member, v.witness.at(0)};
    return {v.status, std::nullopt};
}

// --------------------------------------------------------------- Gram-Schmidt

OrthoResult orthogonalize(const std::vector<VectorL>& w) {
    if (w.empty()) throw std::invalid_argument("orthogonalize needs at least one vector");
    const Ctx& ctx = w[0].ctx();
    const uint32_t n = w[0].size();
    for (const auto& v : w) {
        require_same_ctx(ctx, v.ctx());
        if (v.size() != n) throw std::invalid_argument("vector dimension mismatch");
    }
    if (w.size() > n) throw std::invalid_argument("more vectors than the dimension");

    std::vector<VectorL> frame;
    std::vector<KScalar> norms;
    auto project_off = [&](VectorL v) {
        for (size_t j = 0; j < frame.size(); ++j) {
            ExtScalar c = form(frame[j], v) / ExtScalar::from_base(norms[j]);
            v = v - frame[j].scaled(c);
        }
        return v;
    };
    auto push = [&](VectorL v, bool from_input) -> bool {
        if (v.is_zero()) {
            if (from_input) throw std::invalid_argument("linearly dependent input");
            return false;
        }
        KScalar d = form(v, v).as_base();
        if (d.is_zero())
            throw isotropic_error("isotropic vector encountered: " + v.str() +
                                  " (the form is not definite here)");
        frame.push_back(std::move(v));
        norms.push_back(std::move(d));
        return true;
    };

    for (const auto& wi : w) push(project_off(wi), true);
    for (uint32_t k = 0; k < n && frame.size() < n; ++k)
        push(project_off(VectorL::basis(ctx, n, k)), false);
    if (frame.size() != n) throw std::logic_error("failed to extend to a full basis");

    // normalization pass: all-or-nothing
    std::vector<ExtScalar> scale;
    bool all = true;
    for (const auto& d : norms) {
        auto ne = norm_equation(KScalar::one(ctx) / d);
        if (ne.status != Membership::Member) {
            all = false;
            break;
        }
        scale.push_back(*ne.t);
    }
    if (all)
        for (size_t i = 0; i < frame.size(); ++i) frame[i] = frame[i].scaled(scale[i]);
    return {std::move(frame), all};
}

uint32_t rank_of(const std::vector<VectorL>& rows) {
    if (rows.empty()) return 0;
    const Ctx& ctx = rows[0].ctx();
    std::vector<std::vector<ExtScalar>> m;
    for (const auto& r : rows) m.push_back(r.entries());
    const uint32_t nc = uint32_t(m[0].size());
    uint32_t rank = 0;
    for (uint32_t col = 0; col < nc && rank < m.size(); ++col) {
        uint32_t pivot = rank;
        while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        ExtScalar inv = m[rank][col].inv();
        for (uint32_t j = col; j < nc; ++j) m[rank][j] = m[rank][j] * inv;
        for (uint32_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            ExtScalar f = m[i][col];
            for (uint32_t j = col; j < nc; ++j) m[i][j] = m[i][j] - f * m[rank][j];
        }
        ++rank;
    }
    (void)ctx;
    return rank;
}

}  // namespace qnr
