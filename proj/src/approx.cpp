#include "qnr/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qnr/rng.hpp"

namespace qnr::approx {

ApproxMatrix::ApproxMatrix(size_t n, TolPolicy pol) : n_(n), a_(n * n, cd(0, 0)), pol_(pol) {
    if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
}

cvec ApproxMatrix::apply(const cvec& u) const {
    if (u.size() != n_) throw std::invalid_argument("dimension mismatch");
    cvec out(n_, cd(0, 0));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) out[i] += at(i, j) * u[j];
    return out;
}

ApproxMatrix ApproxMatrix::dagger() const {
    ApproxMatrix r(n_, pol_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

ApproxMatrix ApproxMatrix::operator+(const ApproxMatrix& o) const {
    ApproxMatrix r(n_, pol_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ApproxMatrix ApproxMatrix::operator-(const ApproxMatrix& o) const {
    ApproxMatrix r(n_, pol_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ApproxMatrix ApproxMatrix::operator*(const ApproxMatrix& o) const {
    ApproxMatrix r(n_, pol_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            cd acc(0, 0);
            for (size_t k = 0; k < n_; ++k) acc += at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

ApproxMatrix ApproxMatrix::scaled(cd c) const {
    ApproxMatrix r(n_, pol_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

double ApproxMatrix::frob_norm() const {
    double s = 0;
    for (const cd& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ApproxMatrix::herm_defect() const { return (*this - dagger()).frob_norm(); }

cd dot(const cvec& u, const cvec& v) {
    cd s(0, 0);
    for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm2(const cvec& u) {
    double s = 0;
    for (const cd& z : u) s += std::norm(z);
    return s;
}

cvec normalized(cvec u) {
    double n = std::sqrt(norm2(u));
    for (cd& z : u) z /= n;
    return u;
}

cd nu(const ApproxMatrix& m, const cvec& u) { return dot(u, m.apply(u)); }

HermEig herm_eig(const ApproxMatrix& a) {
    const size_t n = a.n();
    const TolPolicy& pol = a.policy();
    double scale = std::max(a.frob_norm(), 1e-300);
    if (a.herm_defect() > pol.tol * std::max(1.0, scale))
        throw std::invalid_argument("herm_eig: input is not Hermitian within tolerance");

    ApproxMatrix w = a;
    ApproxMatrix u(n, pol);
    for (size_t i = 0; i < n; ++i) u.at(i, i) = 1;

    auto offdiag = [&]() {
        double s = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(w.at(i, j));
        return std::sqrt(s);
    };

    const double target = 1e-14 * std::max(1.0, scale);
    int sweep = 0;
    while (offdiag() > target) {
        if (++sweep > pol.max_sweeps)
            throw std::runtime_error("herm_eig: no convergence after " +
                                     std::to_string(pol.max_sweeps) + " sweeps");
        for (size_t p = 0; p + 1 < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                cd apq = w.at(p, q);
                double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                double app = w.at(p, p).real(), aqq = w.at(q, q).real();
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1.0 / std::sqrt(1 + t * t);
                double s = t * c;
                cd phase = apq / mag;

                // columns p, q of W and U: right-multiplication by the rotation
                for (size_t i = 0; i < n; ++i) {
                    cd wip = w.at(i, p), wiq = w.at(i, q);
                    w.at(i, p) = c * wip - s * std::conj(phase) * wiq;
                    w.at(i, q) = s * phase * wip + c * wiq;
                    cd uip = u.at(i, p), uiq = u.at(i, q);
                    u.at(i, p) = c * uip - s * std::conj(phase) * uiq;
                    u.at(i, q) = s * phase * uip + c * uiq;
                }
                // rows p, q of W: left-multiplication by the conjugate transpose
                for (size_t j = 0; j < n; ++j) {
                    cd wpj = w.at(p, j), wqj = w.at(q, j);
                    w.at(p, j) = c * wpj - s * phase * wqj;
                    w.at(q, j) = s * std::conj(phase) * wpj + c * wqj;
                }
            }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return w.at(i, i).real() < w.at(j, j).real(); });
    HermEig out;
    out.values.resize(n);
    out.vectors = ApproxMatrix(n, pol);
    for (size_t k = 0; k < n; ++k) {
        out.values[k] = w.at(order[k], order[k]).real();
        for (size_t i = 0; i < n; ++i) out.vectors.at(i, k) = u.at(i, order[k]);
    }
    return out;
}

SplitHerm split_hermitian(const ApproxMatrix& m) {
    ApproxMatrix dag = m.dagger();
    SplitHerm s{(m + dag).scaled(0.5), (m - dag).scaled(cd(0, -0.5))};
    return s;
}

namespace {

cvec to_frame(const ApproxMatrix& u, const cvec& x) {  // U^dagger x
    const size_t n = u.n();
    cvec out(n, cd(0, 0));
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) out[k] += std::conj(u.at(i, k)) * x[i];
    return out;
}

cvec from_frame(const ApproxMatrix& u, const cvec& c) {  // U c
    const size_t n = u.n();
    cvec out(n, cd(0, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) out[i] += u.at(i, k) * c[k];
    return out;
}

}  // namespace

cvec FiberPath::eval(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    const size_t n = dim();
    cvec coords(n);
    if (t <= 1.0 / 3.0) {
        double s = 3 * t;  // phases of a -> real magnitudes
        for (size_t j = 0; j < n; ++j)
            coords[j] = std::polar(mag_a_[j], pha_[j] * (1 - s));
    } else if (t <= 2.0 / 3.0) {
        double s = 3 * t - 1;  // sqrt-interpolation of magnitudes
        for (size_t j = 0; j < n; ++j)
            coords[j] = std::sqrt((1 - s) * mag_a_[j] * mag_a_[j] + s * mag_b_[j] * mag_b_[j]);
    } else {
        double s = 3 * t - 2;  // restore phases of b
        for (size_t j = 0; j < n; ++j)
            coords[j] = std::polar(mag_b_[j], phb_[j] * s);
    }
    return normalized(from_frame(frame_, coords));
}

FiberPath connect_in_fiber(const ApproxMatrix& m_minus, const cvec& u, const cvec& v, double tol) {
    if (std::abs(nu(m_minus, u)) > tol || std::abs(nu(m_minus, v)) > tol)
        throw std::invalid_argument("connect_in_fiber: endpoints are not in the zero fiber");
    HermEig eig = herm_eig(m_minus);
    FiberPath p;
    p.frame_ = eig.vectors;
    p.start_ = normalized(u);
    p.end_ = normalized(v);
    cvec ca = to_frame(p.frame_, p.start_), cb = to_frame(p.frame_, p.end_);
    const size_t n = ca.size();
    p.mag_a_.resize(n);
    p.mag_b_.resize(n);
    p.pha_.resize(n);
    p.phb_.resize(n);
    for (size_t j = 0; j < n; ++j) {
        p.mag_a_[j] = std::abs(ca[j]);
        p.mag_b_[j] = std::abs(cb[j]);
        p.pha_[j] = p.mag_a_[j] > 0 ? std::arg(ca[j]) : 0.0;
        p.phb_[j] = p.mag_b_[j] > 0 ? std::arg(cb[j]) : 0.0;
    }
    return p;
}

cvec fill_segment(const ApproxMatrix& m, const cvec& u, const cvec& v, double s, double tol) {
    cd a = nu(m, u), b = nu(m, v);
    if (std::abs(b - a) < 1e-14) throw std::invalid_argument("fill_segment: endpoint values coincide");
    if (s <= 0) return normalized(u);
    if (s >= 1) return normalized(v);

    // normalize to values 0 and 1: M' = (M - a I)/(b - a)
    ApproxMatrix shifted = m;
    for (size_t i = 0; i < m.n(); ++i) shifted.at(i, i) -= a;
    ApproxMatrix mprime = shifted.scaled(1.0 / (b - a));
    SplitHerm parts = split_hermitian(mprime);

    FiberPath path = connect_in_fiber(parts.minus, normalized(u), normalized(v), 1e-8);
    auto g = [&](double t) { return nu(parts.plus, path.eval(t)).real(); };

    double lo = 0, hi = 1;
    double glo = g(lo), ghi = g(hi);
    // endpoints carry values ~0 and ~1; orient the bracket
    if (glo > ghi) {
        std::swap(lo, hi);
        std::swap(glo, ghi);
    }
    const TolPolicy& pol = m.policy();
    double t = 0.5, gt = 0;
    for (int iter = 0;; ++iter) {
        t = 0.5 * (lo + hi);
        gt = g(t);
        if (std::abs(gt - s) <= tol / (2 * std::abs(b - a))) break;
        if (iter >= pol.max_bisect)
            throw std::runtime_error("fill_segment: bisection stalled, bracket [" +
                                     std::to_string(lo) + ", " + std::to_string(hi) + "], g = " +
                                     std::to_string(gt) + ", target " + std::to_string(s));
        if (gt < s)
            lo = t;
        else
            hi = t;
    }
    return path.eval(t);
}

std::vector<cd> sample_range(const ApproxMatrix& m, size_t count, uint64_t seed) {
    Rng rng(seed);
    std::vector<cd> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        cvec u(m.n());
        for (auto& z : u) z = cd(rng.gauss(), rng.gauss());
        out.push_back(nu(m, normalized(std::move(u))));
    }
    return out;
}

std::vector<std::pair<cd, cd>> sample_joint_range(const ApproxMatrix& m, const ApproxMatrix& n,
                                                  size_t count, uint64_t seed) {
    if (m.n() != n.n()) throw std::invalid_argument("joint sampling needs equal sizes");
    Rng rng(seed);
    std::vector<std::pair<cd, cd>> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        cvec u(m.n());
        for (auto& z : u) z = cd(rng.gauss(), rng.gauss());
        u = normalized(std::move(u));
        out.emplace_back(nu(m, u), nu(n, u));
    }
    return out;
}

ApproxMatrix random_matrix(size_t n, uint64_t seed) {
    Rng rng(seed);
    ApproxMatrix m(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = cd(rng.gauss(), rng.gauss());
    return m;
}

ApproxMatrix random_hermitian(size_t n, uint64_t seed) {
    ApproxMatrix m = random_matrix(n, seed);
    return (m + m.dagger()).scaled(0.5);
}

cvec random_unit(size_t n, uint64_t seed) {
    Rng rng(seed);
    cvec u(n);
    for (auto& z : u) z = cd(rng.gauss(), rng.gauss());
    return normalized(std::move(u));
}

}  // namespace qnr::approx
