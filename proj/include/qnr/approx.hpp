#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qnr::approx {

using cd = std::complex<double>;
using cvec = std::vector<cd>;

struct TolPolicy {
    double tol = 1e-10;   // target residual for the eigensolver / path invariants
    int max_sweeps = 64;  // Jacobi sweeps
    int max_bisect = 200; // bisection iterations
};

// Dense complex matrix in binary64.
class ApproxMatrix {
  public:
    ApproxMatrix() = default;
    ApproxMatrix(size_t n, TolPolicy pol = {});

    size_t n() const { return n_; }
    const TolPolicy& policy() const { return pol_; }
    cd& at(size_t i, size_t j) { return a_[i * n_ + j]; }
    const cd& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

    cvec apply(const cvec& u) const;
    ApproxMatrix dagger() const;
    ApproxMatrix operator+(const ApproxMatrix& o) const;
    ApproxMatrix operator-(const ApproxMatrix& o) const;
    ApproxMatrix operator*(const ApproxMatrix& o) const;
    ApproxMatrix scaled(cd c) const;
    double frob_norm() const;
    double herm_defect() const;  // Frobenius norm of M - M^dagger

  private:
    size_t n_ = 0;
    std::vector<cd> a_;
    TolPolicy pol_;
};

cd dot(const cvec& u, const cvec& v);        // conj-linear in the first slot
double norm2(const cvec& u);                 // <u,u>, real
cvec normalized(cvec u);
cd nu(const ApproxMatrix& m, const cvec& u); // <u, Mu>

struct HermEig {
    std::vector<double> values;  // ascending
    ApproxMatrix vectors;        // columns are the eigenvectors
};

// Cyclic Jacobi for (numerically) Hermitian input. Throws std::invalid_argument
// when the input is not Hermitian and std::runtime_error on non-convergence.
HermEig herm_eig(const ApproxMatrix& a);

// M = M_plus + i*M_minus, both Hermitian
struct SplitHerm {
    ApproxMatrix plus, minus;
};
SplitHerm split_hermitian(const ApproxMatrix& m);

// Piecewise path inside { u : <u,u> = 1, <u, M_minus u> = 0 } built in the
// eigenframe of M_minus: phase alignment, sqrt-interpolation of magnitudes,
// phase restoration.
class FiberPath {
  public:
    cvec eval(double t) const;  // t in [0,1]
    size_t dim() const { return start_.size(); }
    const ApproxMatrix& frame() const { return frame_; }

  private:
    friend FiberPath connect_in_fiber(const ApproxMatrix&, const cvec&, const cvec&, double);
    ApproxMatrix frame_;                 // unitary, columns = eigenframe
    std::vector<double> mag_a_, mag_b_;  // coordinate magnitudes of the endpoints
    std::vector<double> pha_, phb_;      // coordinate phases
    cvec start_, end_;
};

FiberPath connect_in_fiber(const ApproxMatrix& m_minus, const cvec& u, const cvec& v, double tol);

// Unit vector w with nu_M(w) within tol of (1-s) nu_M(u) + s nu_M(v).
// Throws std::runtime_error (with bracketing data) if bisection stalls.
cvec fill_segment(const ApproxMatrix& m, const cvec& u, const cvec& v, double s, double tol);

std::vector<cd> sample_range(const ApproxMatrix& m, size_t count, uint64_t seed);
std::vector<std::pair<cd, cd>> sample_joint_range(const ApproxMatrix& m, const ApproxMatrix& n,
                                                  size_t count, uint64_t seed);

// deterministic random helpers used by the verification suites
ApproxMatrix random_matrix(size_t n, uint64_t seed);
ApproxMatrix random_hermitian(size_t n, uint64_t seed);
cvec random_unit(size_t n, uint64_t seed);

}  // namespace qnr::approx
