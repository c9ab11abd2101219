#include "qnr/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnr {

MatrixL::MatrixL(Ctx ctx, uint32_t n) : ctx_(std::move(ctx)), n_(n) {
    if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
    e_.assign(size_t(n) * n, ExtScalar::zero(ctx_));
}

MatrixL MatrixL::identity(const Ctx& ctx, uint32_t n) {
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = ExtScalar::one(ctx);
    return m;
}

MatrixL MatrixL::from_rows(const Ctx& ctx, const std::vector<std::vector<ExtScalar>>& rows) {
    uint32_t n = uint32_t(rows.size());
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("matrix must be square");
        for (uint32_t j = 0; j < n; ++j) {
            require_same_ctx(ctx, rows[i][j].ctx());
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

MatrixL MatrixL::operator+(const MatrixL& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
    MatrixL r(ctx_, n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

MatrixL MatrixL::operator-(const MatrixL& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
    MatrixL r(ctx_, n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

MatrixL MatrixL::operator*(const MatrixL& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
    MatrixL r(ctx_, n_);
    for (uint32_t i = 0; i < n_; ++i)
        for (uint32_t j = 0; j < n_; ++j) {
            ExtScalar acc = ExtScalar::zero(ctx_);
            for (uint32_t k = 0; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

MatrixL MatrixL::scaled(const ExtScalar& c) const {
    MatrixL r(ctx_, n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
    return r;
}

VectorL MatrixL::apply(const VectorL& u) const {
    require_same_ctx(ctx_, u.ctx());
    if (u.size() != n_) throw std::invalid_argument("matrix/vector dimension mismatch");
    std::vector<ExtScalar> out;
    out.reserve(n_);
    for (uint32_t i = 0; i < n_; ++i) {
        ExtScalar acc = ExtScalar::zero(ctx_);
        for (uint32_t j = 0; j < n_; ++j) acc = acc + at(i, j) * u[j];
        out.push_back(acc);
    }
    return VectorL(ctx_, std::move(out));
}

MatrixL MatrixL::dagger() const {
    MatrixL r(ctx_, n_);
    for (uint32_t i = 0; i < n_; ++i)
        for (uint32_t j = 0; j < n_; ++j) r.at(i, j) = conj(at(j, i));
    return r;
}

bool MatrixL::operator==(const MatrixL& o) const {
    if (n_ != o.n_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

std::string MatrixL::str() const {
    std::string s = "[";
    for (uint32_t i = 0; i < n_; ++i) {
        if (i) s += "; ";
        for (uint32_t j = 0; j < n_; ++j) {
            if (j) s += ", ";
            s += at(i, j).str();
        }
    }
    return s + "]";
}

MatrixL direct_sum(const MatrixL& a, const MatrixL& b) {
    require_same_ctx(a.ctx(), b.ctx());
    MatrixL r(a.ctx(), a.n() + b.n());
    for (uint32_t i = 0; i < a.n(); ++i)
        for (uint32_t j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j);
    for (uint32_t i = 0; i < b.n(); ++i)
        for (uint32_t j = 0; j < b.n(); ++j) r.at(a.n() + i, a.n() + j) = b.at(i, j);
    return r;
}

bool is_hermitian(const MatrixL& m) { return m == m.dagger(); }

HermDecomp herm_decompose(const MatrixL& m) {
    const Ctx& ctx = m.ctx();
    const ExtScalar beta = ExtScalar::beta(ctx);
    MatrixL plus(ctx, m.n()), minus(ctx, m.n());
    if (ctx->char_two()) {
        // M+ = (beta+1) M + beta M^dagger, M- = M + M^dagger
        MatrixL dag = m.dagger();
        plus = m.scaled(beta + ExtScalar::one(ctx)) + dag.scaled(beta);
        minus = m + dag;
    } else {
        MatrixL dag = m.dagger();
        ExtScalar half = ExtScalar::from_int(ctx, 2).inv();
        ExtScalar inv2beta = (ExtScalar::from_int(ctx, 2) * beta).inv();
        plus = (m + dag).scaled(half);
        minus = (m - dag).scaled(inv2beta);
    }
    // both parts Hermitian, recomposition exact
    if (!is_hermitian(plus) || !is_hermitian(minus))
        throw std::logic_error("decomposition parts are not Hermitian");
    if (plus + minus.scaled(beta) != m) throw std::logic_error("decomposition does not recompose");
    return {std::move(plus), std::move(minus)};
}

ExtScalar nu(const MatrixL& m, const VectorL& u) { return form(u, m.apply(u)); }

// --------------------------------------------------------- exact linear algebra

namespace {

// reduced row echelon form in place; returns pivot column per row
std::vector<uint32_t> rref(std::vector<std::vector<ExtScalar>>& m) {
    std::vector<uint32_t> pivots;
    if (m.empty()) return pivots;
    const uint32_t rows = uint32_t(m.size()), cols = uint32_t(m[0].size());
    uint32_t r = 0;
    for (uint32_t c = 0; c < cols && r < rows; ++c) {
        uint32_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        ExtScalar inv = m[r][c].inv();
        for (uint32_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (uint32_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            ExtScalar f = m[i][c];
            for (uint32_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::optional<MatrixL> inverse(const MatrixL& m) {
    const uint32_t n = m.n();
    std::vector<std::vector<ExtScalar>> aug(n);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) aug[i].push_back(m.at(i, j));
        for (uint32_t j = 0; j < n; ++j)
            aug[i].push_back(i == j ? ExtScalar::one(m.ctx()) : ExtScalar::zero(m.ctx()));
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    MatrixL r(m.ctx(), n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) r.at(i, j) = aug[i][n + j];
    return r;
}

std::optional<VectorL> solve(const MatrixL& a, const VectorL& b) {
    const uint32_t n = a.n();
    std::vector<std::vector<ExtScalar>> aug(n);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) aug[i].push_back(a.at(i, j));
        aug[i].push_back(b[i]);
    }
    auto pivots = rref(aug);
    // inconsistent when a pivot lands in the last column
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    VectorL x = VectorL::zero(a.ctx(), n);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][n];
    // verify (under-determined systems return one solution)
    if (a.apply(x) != b) return std::nullopt;
    return x;
}

std::vector<VectorL> kernel_basis(const MatrixL& a) {
    const uint32_t n = a.n();
    std::vector<std::vector<ExtScalar>> m(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) m[i].push_back(a.at(i, j));
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (uint32_t c : pivots) is_pivot[c] = true;
    std::vector<VectorL> basis;
    for (uint32_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        VectorL v = VectorL::zero(a.ctx(), n);
        v[free] = ExtScalar::one(a.ctx());
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<ExtScalar> char_poly(const MatrixL& m) {
    const uint32_t n = m.n();
    const Ctx& ctx = m.ctx();
    if (n > 4) throw std::invalid_argument("char_poly supports n <= 4");
    using Poly = std::vector<ExtScalar>;  // ascending coefficients
    auto pmul = [&](const Poly& a, const Poly& b) {
        Poly r(a.size() + b.size() - 1, ExtScalar::zero(ctx));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
        return r;
    };
    auto padd = [&](Poly a, const Poly& b) {
        if (a.size() < b.size()) a.resize(b.size(), ExtScalar::zero(ctx));
        for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
        return a;
    };
    // det(tI - M) by permutation expansion
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    Poly det{ExtScalar::zero(ctx)};
    do {
        // sign of permutation
        int inversions = 0;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Poly term{inversions % 2 == 0 ? ExtScalar::one(ctx) : -ExtScalar::one(ctx)};
        for (uint32_t i = 0; i < n; ++i) {
            uint32_t j = perm[i];
            Poly entry;
            if (i == j)
                entry = {-m.at(i, j), ExtScalar::one(ctx)};  // t - m_ii
            else
                entry = {-m.at(i, j)};
            term = pmul(term, entry);
        }
        det = padd(std::move(det), term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    det.resize(n + 1, ExtScalar::zero(ctx));
    return det;
}

namespace {

ExtScalar poly_eval(const std::vector<ExtScalar>& p, const ExtScalar& z) {
    ExtScalar acc = ExtScalar::zero(z.ctx());
    for (size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

// divide monic-rooted polynomial by (t - r); p must vanish at r
std::vector<ExtScalar> deflate(const std::vector<ExtScalar>& p, const ExtScalar& r) {
    std::vector<ExtScalar> q(p.size() - 1, ExtScalar::zero(r.ctx()));
    ExtScalar carry = ExtScalar::zero(r.ctx());
    for (size_t i = p.size(); i-- > 1;) {
        carry = p[i] + carry * r;
        q[i - 1] = carry;
    }
    return q;
}

// roots in L of a polynomial with coefficients in L (ascending, degree >= 1)
std::vector<ExtScalar> roots_in_L(const Ctx& ctx, std::vector<ExtScalar> p) {
    std::vector<ExtScalar> out;
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    if (p.size() <= 1) return out;

    if (p.size() == 2) {  // linear: a0 + a1 t
        out.push_back(-p[0] / p[1]);
        return out;
    }
    if (p.size() == 3 && !ctx->char_two()) {
        // quadratic formula with an exact square root in L
        ExtScalar a = p[2], b = p[1], c = p[0];
        ExtScalar two = ExtScalar::from_int(ctx, 2);
        ExtScalar disc = b * b - ExtScalar::from_int(ctx, 4) * a * c;
        auto s = disc.sqrt();
        if (!s) return out;
        ExtScalar r1 = (-b + *s) / (two * a);
        ExtScalar r2 = (-b - *s) / (two * a);
        out.push_back(r1);
        if (r2 != r1) out.push_back(r2);
        return out;
    }
    if (ctx->finite()) {
        FiniteExt L(ctx);
        for (uint64_t z = 0; z < L.size(); ++z) {
            ExtScalar cand = L.to_scalar(uint32_t(z));
            if (poly_eval(p, cand).is_zero()) {
                out.push_back(cand);
                auto rest = roots_in_L(ctx, deflate(p, cand));
                for (auto& r : rest)
                    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
                return out;
            }
        }
        return out;
    }
    // bounded-height scan over (a + b*beta)/c
    constexpr int H = 12;
    for (int c = 1; c <= H; ++c)
        for (int a = -H; a <= H; ++a)
            for (int b = -H; b <= H; ++b) {
                ExtScalar cand{KScalar::rational(ctx, Rat(a, c)), KScalar::rational(ctx, Rat(b, c))};
                if (poly_eval(p, cand).is_zero()) {
                    out.push_back(cand);
                    auto rest = roots_in_L(ctx, deflate(p, cand));
                    for (auto& r : rest)
                        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
                    return out;
                }
            }
    return out;
}

}  // namespace

std::vector<std::pair<ExtScalar, VectorL>> eigenpairs_exact(const MatrixL& m) {
    std::vector<std::pair<ExtScalar, VectorL>> out;
    auto cp = char_poly(m);
    for (const auto& lambda : roots_in_L(m.ctx(), cp)) {
        MatrixL shifted = m - MatrixL::identity(m.ctx(), m.n()).scaled(lambda);
        for (auto& v : kernel_basis(shifted)) out.emplace_back(lambda, std::move(v));
    }
    return out;
}

}  // namespace qnr
