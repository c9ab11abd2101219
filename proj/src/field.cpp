#include "qnr/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace qnr {

namespace {

constexpr uint32_t kMaxQ = 1u << 20;       // largest supported |K|
constexpr uint64_t kKTableLimit = 1024;    // K multiplication table gate
constexpr uint64_t kLTableLimit = 4096;    // L multiplication table gate (|L| <= this)

std::vector<uint32_t> decode_poly(uint32_t idx, uint32_t p, uint32_t m) {
    std::vector<uint32_t> c(m);
    for (uint32_t i = 0; i < m; ++i) {
        c[i] = idx % p;
        idx /= p;
    }
    return c;
}

uint32_t encode_poly(const std::vector<uint32_t>& c, uint32_t p) {
    uint32_t idx = 0;
    for (size_t i = c.size(); i-- > 0;) idx = idx * p + c[i];
    return idx;
}

// remainder of a mod b over F_p, coefficients ascending, b monic
std::vector<uint32_t> poly_rem(std::vector<uint32_t> a, const std::vector<uint32_t>& b, uint32_t p) {
    size_t db = b.size() - 1;
    while (a.size() > db) {
        uint32_t lead = a.back();
        size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (size_t i = 0; i <= db; ++i) {
                uint64_t t = uint64_t(lead) * b[i] % p;
                a[shift + i] = uint32_t((a[shift + i] + p - t) % p);
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool poly_is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
    uint32_t m = uint32_t(f.size()) - 1;
    // trial division by all monic polynomials of degree 1..m/2
    for (uint32_t d = 1; 2 * d <= m; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t v = 0; v < count; ++v) {
            std::vector<uint32_t> g = decode_poly(uint32_t(v), p, d);
            g.push_back(1);  // monic
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

bool small_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool rational_sqrt(const Rat& r, Rat* out) {
    if (r < 0) return false;
    Int n = numerator(r), d = denominator(r);
    Int sn, sd;
    if (!is_perfect_square(n, &sn) || !is_perfect_square(d, &sd)) return false;
    if (out) *out = Rat(sn, sd);
    return true;
}

}  // namespace

// ---------------------------------------------------------------- SmallField

SmallField::SmallField(uint32_t p, uint32_t m) : p_(p), m_(m) {
    if (!small_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxQ) throw std::invalid_argument("field too large: p^m exceeds " + std::to_string(kMaxQ));
    }
    q_ = uint32_t(q);

    if (m == 1) {
        modulus_ = {0, 1};  // t
    } else {
        // lexicographically least monic irreducible of degree m
        bool found = false;
        for (uint32_t v = 0; v < q_; ++v) {
            std::vector<uint32_t> f = decode_poly(v, p_, m_);
            f.push_back(1);
            if (poly_is_irreducible(f, p_)) {
                modulus_ = f;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no irreducible polynomial found");  // cannot happen
    }

    if (uint64_t(q_) <= kKTableLimit) {
        mul_table_.resize(uint64_t(q_) * q_);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b <= a; ++b) {
                uint32_t v = mul_nocache(a, b);
                mul_table_[uint64_t(a) * q_ + b] = v;
                mul_table_[uint64_t(b) * q_ + a] = v;
            }
        inv_table_.assign(q_, 0);
        for (uint32_t a = 1; a < q_; ++a) inv_table_[a] = pow(a, q_ - 2);
    }
}

uint32_t SmallField::add(uint32_t a, uint32_t b) const {
    if (m_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t out = 0, mult = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

uint32_t SmallField::neg(uint32_t a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    uint32_t out = 0, mult = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        uint32_t d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
        a /= p_;
    }
    return out;
}

uint32_t SmallField::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t SmallField::mul_nocache(uint32_t a, uint32_t b) const {
    if (m_ == 1) return uint32_t(uint64_t(a) * b % p_);
    std::vector<uint32_t> ca = decode_poly(a, p_, m_), cb = decode_poly(b, p_, m_);
    std::vector<uint32_t> prod(2 * m_ - 1, 0);
    for (uint32_t i = 0; i < m_; ++i) {
        if (ca[i] == 0) continue;
        for (uint32_t j = 0; j < m_; ++j)
            prod[i + j] = uint32_t((prod[i + j] + uint64_t(ca[i]) * cb[j]) % p_);
    }
    while (!prod.empty() && prod.back() == 0) prod.pop_back();
    std::vector<uint32_t> r = poly_rem(std::move(prod), modulus_, p_);
    r.resize(m_, 0);
    return encode_poly(r, p_);
}

uint32_t SmallField::mul(uint32_t a, uint32_t b) const {
    if (!mul_table_.empty()) return mul_table_[uint64_t(a) * q_ + b];
    return mul_nocache(a, b);
}

uint32_t SmallField::pow(uint32_t a, uint64_t e) const {
    uint32_t r = from_int(1), base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

uint32_t SmallField::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (!inv_table_.empty()) return inv_table_[a];
    return pow(a, q_ - 2);
}

uint32_t SmallField::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

bool SmallField::is_square(uint32_t a) const {
    if (a == 0 || p_ == 2) return true;  // char 2: Frobenius is onto
    return pow(a, (q_ - 1) / 2) == from_int(1);
}

uint32_t SmallField::from_int(int64_t v) const {
    int64_t r = v % int64_t(p_);
    if (r < 0) r += p_;
    return uint32_t(r);
}

// ------------------------------------------------------------------ FieldCtx

Ctx FieldCtx::make_finite(uint32_t p, uint32_t m) {
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx);
    ctx->kind_ = FieldKind::Finite;
    ctx->base_ = std::make_unique<SmallField>(p, m);
    const SmallField& K = *ctx->base_;
    if (p == 2) {
        // least eps with t^2 + t + eps irreducible: no root in K
        bool found = false;
        for (uint32_t e = 0; e < K.q() && !found; ++e) {
            bool has_root = false;
            for (uint32_t x = 0; x < K.q(); ++x) {
                if (K.add(K.add(K.mul(x, x), x), e) == 0) {
                    has_root = true;
                    break;
                }
            }
            if (!has_root) {
                ctx->ext_param_ = e;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no irreducible t^2+t+eps found");  // cannot happen
    } else {
        // least non-square alpha in canonical order
        bool found = false;
        for (uint32_t a = 1; a < K.q(); ++a) {
            if (!K.is_square(a)) {
                ctx->ext_param_ = a;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no non-square found");  // cannot happen, q odd
    }
    return ctx;
}

Ctx FieldCtx::make_rational(const Int& alpha) {
    if (alpha == 0 || alpha == 1)
        throw std::invalid_argument("alpha must be a nonzero square-free integer != 1");
    if (!is_square_free(alpha))
        throw std::invalid_argument("alpha = " + alpha.str() + " is not square-free");
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx);
    ctx->kind_ = FieldKind::RationalQuadratic;
    ctx->alpha_ = alpha;
    return ctx;
}

Ctx FieldCtx::parse(const std::string& spec) {
    auto fail = [&]() -> Ctx {
        throw std::invalid_argument("bad field spec '" + spec +
                                    "' (expected finite:p=<prime>,m=<int> or rational:alpha=<int>)");
    };
    if (spec.rfind("finite:", 0) == 0) {
        const std::string body = spec.substr(7);
        auto comma = body.find(',');
        if (comma == std::string::npos) return fail();
        std::string ps = body.substr(0, comma), ms = body.substr(comma + 1);
        if (ps.rfind("p=", 0) != 0 || ms.rfind("m=", 0) != 0) return fail();
        uint32_t p = 0, m = 0;
        auto [pe, pec] = std::from_chars(ps.data() + 2, ps.data() + ps.size(), p);
        auto [me, mec] = std::from_chars(ms.data() + 2, ms.data() + ms.size(), m);
        if (pec != std::errc() || mec != std::errc() || pe != ps.data() + ps.size() ||
            me != ms.data() + ms.size())
            return fail();
        return make_finite(p, m);
    }
    if (spec.rfind("rational:alpha=", 0) == 0) {
        const std::string body = spec.substr(15);
        if (body.empty() || (!isdigit(body[0]) && body[0] != '-')) return fail();
        for (size_t i = 1; i < body.size(); ++i)
            if (!isdigit(body[i])) return fail();
        return make_rational(Int(body));
    }
    return fail();
}

std::string FieldCtx::spec() const {
    if (finite())
        return "finite:p=" + std::to_string(base_->p()) + ",m=" + std::to_string(base_->m());
    return "rational:alpha=" + alpha_.str();
}

bool FieldCtx::equals(const FieldCtx& o) const {
    if (kind_ != o.kind_) return false;
    if (finite()) return base_->p() == o.base_->p() && base_->m() == o.base_->m();
    return alpha_ == o.alpha_;
}

void require_same_ctx(const Ctx& a, const Ctx& b) {
    if (!a || !b || !a->equals(*b)) throw std::invalid_argument("field context mismatch");
}

// ------------------------------------------------------------------- KScalar

KScalar KScalar::finite(Ctx ctx, uint32_t idx) {
    KScalar s;
    s.ctx_ = std::move(ctx);
    s.idx_ = idx;
    return s;
}

KScalar KScalar::rational(Ctx ctx, Rat v) {
    KScalar s;
    s.ctx_ = std::move(ctx);
    s.rat_ = std::move(v);
    return s;
}

KScalar KScalar::zero(const Ctx& ctx) { return from_int(ctx, 0); }
KScalar KScalar::one(const Ctx& ctx) { return from_int(ctx, 1); }

KScalar KScalar::from_int(const Ctx& ctx, int64_t v) {
    if (ctx->finite()) return finite(ctx, ctx->base().from_int(v));
    return rational(ctx, Rat(v));
}

bool KScalar::is_zero() const { return ctx_->finite() ? idx_ == 0 : rat_ == 0; }
bool KScalar::is_one() const {
    return ctx_->finite() ? idx_ == ctx_->base().from_int(1) : rat_ == 1;
}

KScalar KScalar::operator+(const KScalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (ctx_->finite()) return finite(ctx_, ctx_->base().add(idx_, o.idx_));
    return rational(ctx_, rat_ + o.rat_);
}

KScalar KScalar::operator-(const KScalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (ctx_->finite()) return finite(ctx_, ctx_->base().sub(idx_, o.idx_));
    return rational(ctx_, rat_ - o.rat_);
}

KScalar KScalar::operator*(const KScalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (ctx_->finite()) return finite(ctx_, ctx_->base().mul(idx_, o.idx_));
    return rational(ctx_, rat_ * o.rat_);
}

KScalar KScalar::operator/(const KScalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (ctx_->finite()) return finite(ctx_, ctx_->base().div(idx_, o.idx_));
    return rational(ctx_, rat_ / o.rat_);
}

KScalar KScalar::operator-() const {
    if (ctx_->finite()) return finite(ctx_, ctx_->base().neg(idx_));
    return rational(ctx_, -rat_);
}

bool KScalar::operator==(const KScalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    return ctx_->finite() ? idx_ == o.idx_ : rat_ == o.rat_;
}

bool KScalar::canonical_less(const KScalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    return ctx_->finite() ? idx_ < o.idx_ : rat_ < o.rat_;
}

bool KScalar::is_square() const {
    if (ctx_->finite()) return ctx_->base().is_square(idx_);
    return rational_sqrt(rat_, nullptr);
}

std::optional<KScalar> KScalar::sqrt() const {
    if (ctx_->finite()) {
        const SmallField& K = ctx_->base();
        if (K.p() == 2) return finite(ctx_, K.pow(idx_, K.q() / 2));
        if (!K.is_square(idx_)) return std::nullopt;
        for (uint32_t x = 0; x < K.q(); ++x)
            if (K.mul(x, x) == idx_) return finite(ctx_, x);
        return std::nullopt;  // unreachable
    }
    Rat r;
    if (!rational_sqrt(rat_, &r)) return std::nullopt;
    return rational(ctx_, r);
}

std::string KScalar::str() const {
    if (!ctx_->finite()) {
        std::ostringstream os;
        os << rat_;
        return os.str();
    }
    const SmallField& K = ctx_->base();
    if (K.m() == 1) return std::to_string(idx_);
    auto c = decode_poly(idx_, K.p(), K.m());
    std::string out = "[";
    for (uint32_t i = 0; i < K.m(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out + "]";
}

KScalar KScalar::parse(const Ctx& ctx, const std::string& text) {
    auto fail = [&]() -> KScalar {
        throw std::invalid_argument("bad scalar '" + text + "' for field " + ctx->spec());
    };
    if (text.empty()) return fail();
    if (!ctx->finite()) {
        size_t i = text[0] == '-' ? 1 : 0;
        bool seen_slash = false, any = false;
        for (; i < text.size(); ++i) {
            if (text[i] == '/' && !seen_slash && any) {
                seen_slash = true;
                any = false;
            } else if (isdigit(static_cast<unsigned char>(text[i]))) {
                any = true;
            } else {
                return fail();
            }
        }
        if (!any) return fail();
        try {
            return rational(ctx, Rat(text));
        } catch (const std::exception&) {
            return fail();  // e.g. zero denominator
        }
    }
    const SmallField& K = ctx->base();
    if (text[0] == '[') {
        if (text.back() != ']') return fail();
        std::vector<uint32_t> c;
        std::string body = text.substr(1, text.size() - 2);
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            uint32_t v = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size() || v >= K.p()) return fail();
            c.push_back(v);
        }
        if (c.empty() || c.size() > K.m()) return fail();
        c.resize(K.m(), 0);
        return finite(ctx, encode_poly(c, K.p()));
    }
    uint32_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size() || v >= K.q()) return fail();
    if (K.m() > 1 && v >= K.p()) return fail();  // bare integers only name prime-subfield residues
    return finite(ctx, v);
}

// ------------------------------------------------------------------ ExtScalar

namespace {
// beta^2 = alpha (char != 2 / rational) or beta^2 = beta + eps (char 2)
KScalar ext_sq_param(const Ctx& ctx) {
    if (ctx->finite()) return KScalar::finite(ctx, ctx->ext_param());
    return KScalar::rational(ctx, Rat(ctx->alpha()));
}
}  // namespace

ExtScalar::ExtScalar(KScalar re, KScalar im) : re_(std::move(re)), im_(std::move(im)) {
    require_same_ctx(re_.ctx(), im_.ctx());
}

ExtScalar ExtScalar::from_base(const KScalar& x) { return {x, KScalar::zero(x.ctx())}; }
ExtScalar ExtScalar::zero(const Ctx& ctx) { return from_base(KScalar::zero(ctx)); }
ExtScalar ExtScalar::one(const Ctx& ctx) { return from_base(KScalar::one(ctx)); }
ExtScalar ExtScalar::beta(const Ctx& ctx) { return {KScalar::zero(ctx), KScalar::one(ctx)}; }
ExtScalar ExtScalar::from_int(const Ctx& ctx, int64_t v) {
    return from_base(KScalar::from_int(ctx, v));
}

KScalar ExtScalar::as_base() const {
    if (!im_.is_zero()) throw std::logic_error("value " + str() + " is not in the base field");
    return re_;
}

ExtScalar ExtScalar::operator+(const ExtScalar& o) const { return {re_ + o.re_, im_ + o.im_}; }
ExtScalar ExtScalar::operator-(const ExtScalar& o) const { return {re_ - o.re_, im_ - o.im_}; }
ExtScalar ExtScalar::operator-() const { return {-re_, -im_}; }

ExtScalar ExtScalar::operator*(const ExtScalar& o) const {
    const Ctx& c = ctx();
    require_same_ctx(c, o.ctx());
    KScalar x1x2 = re_ * o.re_, y1y2 = im_ * o.im_;
    KScalar cross = re_ * o.im_ + im_ * o.re_;
    KScalar par = ext_sq_param(c);
    if (c->char_two()) {
        // beta^2 = beta + eps
        return {x1x2 + par * y1y2, cross + y1y2};
    }
    return {x1x2 + par * y1y2, cross};
}

ExtScalar ExtScalar::inv() const {
    if (is_zero()) throw std::domain_error("division by zero");
    KScalar n = norm(*this);
    ExtScalar c = conj(*this);
    KScalar ninv = KScalar::one(ctx()) / n;
    return {c.re() * ninv, c.im() * ninv};
}

ExtScalar ExtScalar::operator/(const ExtScalar& o) const { return *this * o.inv(); }

ExtScalar ExtScalar::pow(uint64_t e) const {
    ExtScalar r = one(ctx()), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool ExtScalar::canonical_less(const ExtScalar& o) const {
    if (re_ != o.re_) return re_.canonical_less(o.re_);
    return im_.canonical_less(o.im_);
}

std::string ExtScalar::str() const {
    if (im_.is_zero()) return re_.str();
    std::string imp = im_.str();
    std::string tail;
    if (!imp.empty() && imp[0] == '-')
        tail = "-" + imp.substr(1) + "*b";
    else
        tail = "+" + imp + "*b";
    if (re_.is_zero()) return tail[0] == '+' ? tail.substr(1) : tail;
    return re_.str() + tail;
}

ExtScalar ExtScalar::parse(const Ctx& ctx, const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw std::invalid_argument("empty scalar");
    if (text == "b") return beta(ctx);
    if (text == "-b") return -beta(ctx);

    auto ends_with_b = text.size() >= 2 && text.compare(text.size() - 2, 2, "*b") == 0;
    if (!ends_with_b) return from_base(KScalar::parse(ctx, text));

    std::string body = text.substr(0, text.size() - 2);
    // separator: a '+' or '-' at bracket depth 0 past the leading sign
    size_t sep = std::string::npos;
    int depth = 0;
    for (size_t i = 0; i < body.size(); ++i) {
        char ch = body[i];
        if (ch == '[')
            ++depth;
        else if (ch == ']')
            --depth;
        else if (i > 0 && depth == 0 && (ch == '+' || ch == '-'))
            sep = i;  // last one wins: it binds the im part
    }
    if (sep == std::string::npos) {
        // pure imaginary: "<y>*b"
        return {KScalar::zero(ctx), KScalar::parse(ctx, body)};
    }
    KScalar re = KScalar::parse(ctx, body.substr(0, sep));
    KScalar im = KScalar::parse(ctx, body.substr(sep + 1));
    if (body[sep] == '-') im = -im;
    return {re, im};
}

std::optional<ExtScalar> ExtScalar::sqrt() const {
    const Ctx& c = ctx();
    if (c->finite()) {
        FiniteExt L(c);
        uint32_t target = L.from_scalar(*this);
        for (uint64_t w = 0; w < L.size(); ++w) {
            uint32_t ww = L.mul(uint32_t(w), uint32_t(w));
            if (ww == target) return L.to_scalar(uint32_t(w));
        }
        return std::nullopt;
    }
    // (x + y*beta)^2 = (x^2 + alpha y^2) + 2xy beta = a + b beta
    const Rat a = re_.rat(), b = im_.rat();
    const Rat alpha = Rat(c->alpha());
    auto mk = [&](const Rat& x, const Rat& y) {
        return ExtScalar{KScalar::rational(c, x), KScalar::rational(c, y)};
    };
    if (b == 0) {
        Rat r;
        if (rational_sqrt(a, &r)) return mk(r, 0);
        if (alpha != 0 && rational_sqrt(a / alpha, &r)) return mk(0, r);
        return std::nullopt;
    }
    // y = b/(2x), x^2 = (a +- s)/2 with s = sqrt(a^2 - alpha b^2)
    Rat s;
    if (!rational_sqrt(Rat(a * a - alpha * b * b), &s)) return std::nullopt;
    const Rat cands[2] = {Rat((a + s) / 2), Rat((a - s) / 2)};
    for (const Rat& cand : cands) {
        Rat x;
        if (cand > 0 && rational_sqrt(cand, &x)) {
            Rat y = b / (2 * x);
            return mk(x, y);
        }
    }
    return std::nullopt;
}

ExtScalar conj(const ExtScalar& z) {
    const Ctx& c = z.ctx();
    if (c->char_two()) return {z.re() + z.im(), z.im()};
    return {z.re(), -z.im()};
}

KScalar norm(const ExtScalar& z) { return (z * conj(z)).as_base(); }
KScalar trace(const ExtScalar& z) { return (z + conj(z)).as_base(); }
std::pair<KScalar, KScalar> re_im(const ExtScalar& z) { return {z.re(), z.im()}; }

// ------------------------------------------------------------------ FiniteExt

FiniteExt::FiniteExt(Ctx ctx) : ctx_(std::move(ctx)) {
    if (!ctx_->finite()) throw std::invalid_argument("FiniteExt needs a finite context");
    K_ = &ctx_->base();
    q_ = K_->q();
    char2_ = ctx_->char_two();
    par_ = ctx_->ext_param();
    if (size() <= kLTableLimit) {
        mul_.resize(size() * size());
        for (uint32_t a = 0; a < size(); ++a)
            for (uint32_t b = 0; b <= a; ++b) {
                uint32_t v = mul_nocache(a, b);
                mul_[uint64_t(a) * size() + b] = v;
                mul_[uint64_t(b) * size() + a] = v;
            }
    }
}

uint32_t FiniteExt::mul_nocache(uint32_t a, uint32_t b) const {
    uint32_t x1 = re(a), y1 = im(a), x2 = re(b), y2 = im(b);
    uint32_t xx = K_->mul(x1, x2), yy = K_->mul(y1, y2);
    uint32_t cross = K_->add(K_->mul(x1, y2), K_->mul(y1, x2));
    if (char2_) return enc(K_->add(xx, K_->mul(par_, yy)), K_->add(cross, yy));
    return enc(K_->add(xx, K_->mul(par_, yy)), cross);
}

uint32_t FiniteExt::sigma(uint32_t a) const {
    uint32_t x = re(a), y = im(a);
    if (char2_) return enc(K_->add(x, y), y);
    return enc(x, K_->neg(y));
}

uint32_t FiniteExt::norm_k(uint32_t a) const {
    uint32_t x = re(a), y = im(a);
    uint32_t yy = K_->mul(y, y);
    if (char2_) return K_->add(K_->add(K_->mul(x, x), K_->mul(x, y)), K_->mul(par_, yy));
    return K_->sub(K_->mul(x, x), K_->mul(par_, yy));
}

uint32_t FiniteExt::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    uint32_t n = norm_k(a);
    return kmul(K_->inv(n), sigma(a));
}

ExtScalar FiniteExt::to_scalar(uint32_t z) const {
    return {KScalar::finite(ctx_, re(z)), KScalar::finite(ctx_, im(z))};
}

uint32_t FiniteExt::from_scalar(const ExtScalar& z) const {
    require_same_ctx(ctx_, z.ctx());
    return enc(z.re().idx(), z.im().idx());
}

}  // namespace qnr
