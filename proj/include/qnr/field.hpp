#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qnr/numtheory.hpp"

namespace qnr {

class FieldCtx;
using Ctx = std::shared_ptr<const FieldCtx>;

// F_q with q = p^m, represented as F_p[t]/(f) for the lexicographically least
// monic irreducible f of degree m. An element is its index 0..q-1: the base-p
// encoding of the coefficient vector, constant term in the least significant
// digit. Index order therefore *is* the canonical enumeration order
// (lexicographic on coefficient vectors read highest degree first).
class SmallField {
  public:
    SmallField(uint32_t p, uint32_t m);

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }  // ascending, monic

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;
    bool is_square(uint32_t a) const;
    uint32_t from_int(int64_t v) const;  // embed via the prime subfield

  private:
    uint32_t mul_nocache(uint32_t a, uint32_t b) const;

    uint32_t p_, m_, q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> mul_table_;  // q*q, built when q <= 1024
    std::vector<uint32_t> inv_table_;
};

enum class FieldKind { Finite, RationalQuadratic };

// The pair (K, L, sigma, beta). Finite: K = F_q, L = K(beta) with beta^2 = alpha
// (char != 2, alpha the least non-square of K) or beta^2 = beta + eps (char 2,
// eps the least element making t^2+t+eps irreducible). Rational: K = Q,
// L = Q(sqrt(alpha)) for a square-free alpha != 0, 1.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
  public:
    // grammar: "finite:p=<prime>,m=<int>" | "rational:alpha=<int>"
    static Ctx parse(const std::string& spec);
    static Ctx make_finite(uint32_t p, uint32_t m);
    static Ctx make_rational(const Int& alpha);

    FieldKind kind() const { return kind_; }
    bool finite() const { return kind_ == FieldKind::Finite; }
    bool char_two() const { return finite() && base_->p() == 2; }

    const SmallField& base() const { return *base_; }  // finite only
    uint32_t q() const { return base_->q(); }
    uint32_t ext_param() const { return ext_param_; }  // alpha index (char != 2) or eps index (char 2)

    const Int& alpha() const { return alpha_; }  // rational only

    std::string spec() const;
    bool equals(const FieldCtx& o) const;

  private:
    FieldCtx() = default;

    FieldKind kind_ = FieldKind::Finite;
    std::unique_ptr<SmallField> base_;
    uint32_t ext_param_ = 0;
    Int alpha_;
};

void require_same_ctx(const Ctx& a, const Ctx& b);

// Element of K: a finite-field index or an exact rational, tagged by context.
class KScalar {
  public:
    KScalar() = default;  // empty; only assignment is valid afterwards
    static KScalar finite(Ctx ctx, uint32_t idx);
    static KScalar rational(Ctx ctx, Rat v);
    static KScalar zero(const Ctx& ctx);
    static KScalar one(const Ctx& ctx);
    static KScalar from_int(const Ctx& ctx, int64_t v);

    const Ctx& ctx() const { return ctx_; }
    bool is_zero() const;
    bool is_one() const;
    uint32_t idx() const { return idx_; }
    const Rat& rat() const { return rat_; }

    KScalar operator+(const KScalar& o) const;
    KScalar operator-(const KScalar& o) const;
    KScalar operator*(const KScalar& o) const;
    KScalar operator/(const KScalar& o) const;  // throws std::domain_error on zero divisor
    KScalar operator-() const;
    bool operator==(const KScalar& o) const;
    bool operator!=(const KScalar& o) const { return !(*this == o); }

    // canonical enumeration order (finite: index order; rational: numeric)
    bool canonical_less(const KScalar& o) const;

    bool is_square() const;
    std::optional<KScalar> sqrt() const;

    std::string str() const;
    static KScalar parse(const Ctx& ctx, const std::string& text);

  private:
    Ctx ctx_;
    uint32_t idx_ = 0;
    Rat rat_;
};

// Element x + y*beta of L.
class ExtScalar {
  public:
    ExtScalar() = default;
    ExtScalar(KScalar re, KScalar im);
    static ExtScalar from_base(const KScalar& x);
    static ExtScalar zero(const Ctx& ctx);
    static ExtScalar one(const Ctx& ctx);
    static ExtScalar beta(const Ctx& ctx);
    static ExtScalar from_int(const Ctx& ctx, int64_t v);

    const Ctx& ctx() const { return re_.ctx(); }
    const KScalar& re() const { return re_; }
    const KScalar& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool in_base() const { return im_.is_zero(); }
    // checked projection to K; throws std::logic_error if im != 0
    KScalar as_base() const;

    ExtScalar operator+(const ExtScalar& o) const;
    ExtScalar operator-(const ExtScalar& o) const;
    ExtScalar operator*(const ExtScalar& o) const;
    ExtScalar operator/(const ExtScalar& o) const;
    ExtScalar operator-() const;
    bool operator==(const ExtScalar& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const ExtScalar& o) const { return !(*this == o); }

    ExtScalar pow(uint64_t e) const;
    ExtScalar inv() const;

    bool canonical_less(const ExtScalar& o) const;  // by (re, im)
    std::string str() const;
    static ExtScalar parse(const Ctx& ctx, const std::string& text);

    std::optional<ExtScalar> sqrt() const;

  private:
    KScalar re_, im_;
};

// sigma, the nontrivial Galois automorphism of L/K
ExtScalar conj(const ExtScalar& z);
// z * sigma(z), lands in K
KScalar norm(const ExtScalar& z);
// z + sigma(z), lands in K
KScalar trace(const ExtScalar& z);
// (re, im) with z = re + im*beta
std::pair<KScalar, KScalar> re_im(const ExtScalar& z);

KScalar operator*(const KScalar& a, const ExtScalar& z) = delete;  // use ExtScalar::from_base

// Index arithmetic on L for finite contexts; z = x + y*beta is encoded as
// x + q*y. Backs every exhaustive enumeration kernel.
class FiniteExt {
  public:
    explicit FiniteExt(Ctx ctx);

    const Ctx& ctx() const { return ctx_; }
    uint32_t q() const { return q_; }
    uint64_t size() const { return uint64_t(q_) * q_; }  // |L|

    uint32_t re(uint32_t z) const { return z % q_; }
    uint32_t im(uint32_t z) const { return z / q_; }
    uint32_t enc(uint32_t x, uint32_t y) const { return x + q_ * y; }
    uint32_t embed(uint32_t k) const { return k; }
    uint32_t one() const { return 1; }

    uint32_t add(uint32_t a, uint32_t b) const {
        return enc(K_->add(re(a), re(b)), K_->add(im(a), im(b)));
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return enc(K_->sub(re(a), re(b)), K_->sub(im(a), im(b)));
    }
    uint32_t neg(uint32_t a) const { return enc(K_->neg(re(a)), K_->neg(im(a))); }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (!mul_.empty()) return mul_[uint64_t(a) * size() + b];
        return mul_nocache(a, b);
    }
    uint32_t sigma(uint32_t a) const;
    uint32_t norm_k(uint32_t a) const;  // K index
    uint32_t inv(uint32_t a) const;     // throws on zero
    uint32_t kmul(uint32_t k, uint32_t a) const {  // K scalar times L element
        return enc(K_->mul(k, re(a)), K_->mul(k, im(a)));
    }

    ExtScalar to_scalar(uint32_t z) const;
    uint32_t from_scalar(const ExtScalar& z) const;

    const SmallField& base() const { return *K_; }

  private:
    uint32_t mul_nocache(uint32_t a, uint32_t b) const;

    Ctx ctx_;
    const SmallField* K_;
    uint32_t q_;
    bool char2_;
    uint32_t par_;  // alpha or eps index
    std::vector<uint32_t> mul_;  // gated on |L|^2
};

// Canonical comparator objects for sorted containers.
struct ExtScalarLess {
    bool operator()(const ExtScalar& a, const ExtScalar& b) const { return a.canonical_less(b); }
};

}  // namespace qnr
