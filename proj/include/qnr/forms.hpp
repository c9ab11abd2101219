#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qnr/errors.hpp"
#include "qnr/field.hpp"

namespace qnr {

struct Budget {
    uint64_t max_vectors = 10'000'000;
};

// Vector over L with a uniform context.
class VectorL {
  public:
    VectorL() = default;
    VectorL(Ctx ctx, std::vector<ExtScalar> entries);
    static VectorL zero(const Ctx& ctx, uint32_t n);
    static VectorL basis(const Ctx& ctx, uint32_t n, uint32_t k);

    const Ctx& ctx() const { return ctx_; }
    uint32_t size() const { return uint32_t(e_.size()); }
    const ExtScalar& operator[](uint32_t i) const { return e_[i]; }
    ExtScalar& operator[](uint32_t i) { return e_[i]; }
    const std::vector<ExtScalar>& entries() const { return e_; }

    bool is_zero() const;
    VectorL operator+(const VectorL& o) const;
    VectorL operator-(const VectorL& o) const;
    VectorL scaled(const ExtScalar& c) const;
    bool operator==(const VectorL& o) const;
    bool operator!=(const VectorL& o) const { return !(*this == o); }

    std::string str() const;

  private:
    Ctx ctx_;
    std::vector<ExtScalar> e_;
};

// <u,v> = sum_i sigma(u_i) v_i ; sigma-linear in the first slot, linear in the second
ExtScalar form(const VectorL& u, const VectorL& v);
// <u,u>, which always lands in K
KScalar form_norm(const VectorL& u);

std::shared_ptr<const FiniteExt> make_ext(const Ctx& ctx);

// Complete enumeration of C_n(1) = { u in L^n : <u,u> = 1 }, finite contexts.
// Points are stored as flat L-index tuples in canonical order.
class UnitSphere {
  public:
    Ctx ctx;
    uint32_t n = 0;
    std::shared_ptr<const FiniteExt> ext;
    std::vector<uint32_t> flat;  // size() * n indices

    size_t size() const { return n == 0 ? 0 : flat.size() / n; }
    const uint32_t* point(size_t i) const { return flat.data() + i * n; }
    VectorL vec(size_t i) const;
};

UnitSphere unit_sphere(const Ctx& ctx, uint32_t n, const Budget& budget = {});

struct DefiniteResult {
    bool definite = false;
    std::optional<VectorL> isotropic;  // nonzero witness with <u,u> = 0
};

DefiniteResult is_definite_up_to(const Ctx& ctx, uint32_t n, const Budget& budget = {});

enum class Membership { Member, NonMember, Unknown };

// Verdict for d in Delta_n, with a witness a_1..a_k (k <= n) such that
// sum norm(a_i) = d when status is Member.
struct DeltaVerdict {
    Membership status = Membership::Unknown;
    std::vector<ExtScalar> witness;
    uint32_t level = 1;

    bool reverify(const KScalar& d) const;
};

DeltaVerdict delta_membership(const KScalar& d, uint32_t level);

// t in Delta cap (1 - Delta) along with certificates norm(x) = t, norm(y) = 1-t.
struct IntervalSample {
    KScalar t;
    ExtScalar x, y;
};

// Finite contexts return the full set (Delta = K); rational contexts produce
// `count` distinct deterministic samples (Q(i): always succeeds; other
// quadratic fields: best effort within a bounded search).
std::vector<IntervalSample> delta_interval_sample(const Ctx& ctx, size_t count);

struct NormEqResult {
    Membership status = Membership::Unknown;
    std::optional<ExtScalar> t;  // t * sigma(t) = d when Member
};

// Solve t*sigma(t) = d exactly; d must be nonzero.
NormEqResult norm_equation(const KScalar& d);

struct OrthoResult {
    std::vector<VectorL> frame;  // n mutually orthogonal vectors; first m span the input
    bool normalized = false;     // true iff every <f_i,f_i> could be scaled to 1
};

// Gram-Schmidt over the sesquilinear form, extended to a full orthogonal
// basis of L^n. Throws std::invalid_argument on dependent input and
// isotropic_error when a nonzero vector with <v,v> = 0 appears.
OrthoResult orthogonalize(const std::vector<VectorL>& w);

// exact rank of a list of vectors (Gaussian elimination over L)
uint32_t rank_of(const std::vector<VectorL>& rows);

}  // namespace qnr
