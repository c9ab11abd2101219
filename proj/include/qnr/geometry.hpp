#pragma once

#include <optional>
#include <vector>

#include "qnr/numrange.hpp"

namespace qnr {

// { t*a + (1-t)*b : t in Delta cap (1 - Delta) }, exact over finite contexts
NumRangeSet hull_pair(const Ctx& ctx, const ExtScalar& a, const ExtScalar& b);
// deterministic sampler for rational contexts
std::vector<ExtScalar> hull_pair_sample(const Ctx& ctx, const ExtScalar& a, const ExtScalar& b,
                                        size_t count);

struct ConvexityResult {
    bool convex = false;
    // counterexample: t*a + (1-t)*b escapes the set
    std::optional<ExtScalar> a, b;
    std::optional<KScalar> t;
};

ConvexityResult is_delta_convex(const std::vector<ExtScalar>& s, const Ctx& ctx);

// least Delta-convex superset (finite contexts)
std::vector<ExtScalar> delta_convex_closure(std::vector<ExtScalar> s, const Ctx& ctx);

// Algebraic ellipse value sets. one_focus: { sigma(x) y } over
// delta1 x sigma(x) + delta2 y sigma(y) = 1; two_foci: { d1 y sigma(x) + d2 y sigma(y) }
// over the same constraint. The frame maps the normalized set S to a + b*S.
struct EllipseSpec {
    enum class Kind { OneFocus, TwoFoci };
    Kind kind = Kind::OneFocus;
    KScalar delta1, delta2;
    std::optional<ExtScalar> d1, d2;  // TwoFoci only, both nonzero
    ExtScalar frame_a, frame_b;       // frame_b != 0
    uint32_t level = 1;

    static EllipseSpec one_focus(const Ctx& ctx, KScalar delta1, KScalar delta2);
    static EllipseSpec two_foci(const Ctx& ctx, KScalar delta1, KScalar delta2, ExtScalar d1,
                                ExtScalar d2);
    EllipseSpec with_frame(ExtScalar a, ExtScalar b) const;
};

// delta_1, delta_2 membership verdicts at the spec's level
std::pair<DeltaVerdict, DeltaVerdict> validate_ellipse_spec(const EllipseSpec& e);

// exhaustive point set, finite contexts
NumRangeSet ellipse_points(const EllipseSpec& e, const Ctx& ctx, const Budget& budget = {});
// deterministic sampler, rational contexts (may be empty when no rational
// point of the constraint is found within the search bound)
std::vector<ExtScalar> ellipse_sample(const EllipseSpec& e, const Ctx& ctx, size_t count);

}  // namespace qnr
