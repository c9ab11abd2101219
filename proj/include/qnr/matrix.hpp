#pragma once

#include <optional>
#include <vector>

#include "qnr/forms.hpp"

namespace qnr {

// Dense square matrix over L.
class MatrixL {
  public:
    MatrixL() = default;
    MatrixL(Ctx ctx, uint32_t n);  // zero matrix
    static MatrixL identity(const Ctx& ctx, uint32_t n);
    static MatrixL from_rows(const Ctx& ctx, const std::vector<std::vector<ExtScalar>>& rows);

    const Ctx& ctx() const { return ctx_; }
    uint32_t n() const { return n_; }
    const ExtScalar& at(uint32_t i, uint32_t j) const { return e_[i * n_ + j]; }
    ExtScalar& at(uint32_t i, uint32_t j) { return e_[i * n_ + j]; }

    MatrixL operator+(const MatrixL& o) const;
    MatrixL operator-(const MatrixL& o) const;
    MatrixL operator*(const MatrixL& o) const;
    MatrixL scaled(const ExtScalar& c) const;
    VectorL apply(const VectorL& u) const;
    MatrixL dagger() const;  // conjugate transpose
    bool operator==(const MatrixL& o) const;
    bool operator!=(const MatrixL& o) const { return !(*this == o); }

    std::string str() const;

  private:
    Ctx ctx_;
    uint32_t n_ = 0;
    std::vector<ExtScalar> e_;
};

MatrixL direct_sum(const MatrixL& a, const MatrixL& b);

bool is_hermitian(const MatrixL& m);

struct HermDecomp {
    MatrixL plus, minus;  // M = plus + beta * minus, both Hermitian
};

HermDecomp herm_decompose(const MatrixL& m);

// numerical map: nu_M(u) = <u, Mu>
ExtScalar nu(const MatrixL& m, const VectorL& u);

// ----------------------------------------------------------- exact linear algebra

// inverse, or nullopt when singular
std::optional<MatrixL> inverse(const MatrixL& m);
// solve A x = b exactly; nullopt when inconsistent/singular
std::optional<VectorL> solve(const MatrixL& a, const VectorL& b);
// basis of the nullspace of A
std::vector<VectorL> kernel_basis(const MatrixL& a);

// characteristic polynomial det(tI - M), monic, coefficients ascending.
// Permutation expansion; intended for n <= 4.
std::vector<ExtScalar> char_poly(const MatrixL& m);

// all exact eigenpairs with eigenvalues in L. Complete for finite contexts
// (root scan over L) and for n <= 2 over rational contexts (exact square
// roots); n = 3,4 over rational contexts use a bounded-height root search
// with deflation and may miss non-rational eigen-data.
std::vector<std::pair<ExtScalar, VectorL>> eigenpairs_exact(const MatrixL& m);

}  // namespace qnr
