#pragma once
// Likelihood/scattering critical equations: cleared systems, gradients,
// Cauchy-Binet Hessians, numeric solving with degeneracy detection.

#include "logdisc/arrangement.hpp"
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace logdisc {

struct ToleranceSet {
    double tau_res = 1e-10;
    double tau_wall = 1e-8;
    double tau_deg = 1e-8;
    double tau_collision = 1e-6;
};

// Cleared critical equations: for j = 1..d,
//   E_j = Σ_i a_ij u_i Π_{k≠i} ℓ_k(x),  polynomials in u0..un, x1..xd
// (numerators of the gradient after multiplying by ℓ_0⋯ℓ_n); linear in u.
std::vector<Poly> cleared_system(const Arrangement& arr);

// Numerator of the Cauchy-Binet Hessian determinant:
//   Σ_{|I|=d} det(A_I)^2 u^I Π_{k∉I} ℓ_k(x)^2   ( = det H · (ℓ_0⋯ℓ_n)^2 )
Poly hessian_numerator(const Arrangement& arr);

// exact gradient  A^T diag(1/ℓ(x)) u ; throws if x lies on a hyperplane
std::vector<Rat> gradient(const Arrangement& arr, const std::vector<Rat>& u,
                          const std::vector<Rat>& x);
std::vector<Cplx> gradient(const Arrangement& arr, const std::vector<Cplx>& u,
                           const std::vector<Cplx>& x);

// exact Hessian determinant via the Cauchy-Binet minor sum
Rat hessian_det(const Arrangement& arr, const std::vector<Rat>& u,
                const std::vector<Rat>& x);
Cplx hessian_det(const Arrangement& arr, const std::vector<Cplx>& u,
                 const std::vector<Cplx>& x);
// direct d x d determinant det(A^T diag(u_i/ℓ_i^2) A), oracle for the above
// sum of the absolute values of the Cauchy-Binet terms: the natural magnitude
// against which a near-zero Hessian determinant should be judged
double hessian_abs_scale(const Arrangement& arr, const std::vector<Cplx>& u,
                         const std::vector<Cplx>& x);

Rat hessian_det_direct(const Arrangement& arr, const std::vector<Rat>& u,
                       const std::vector<Rat>& x);

enum class PointStatus { certified, suspect };

struct CriticalSolutions {
    std::vector<std::vector<Cplx>> points;
    std::vector<double> residuals;          // max-norm of gradient
    std::vector<Cplx> hessdets;
    std::vector<double> min_wall_distance;  // min |ℓ_i(x)|
    std::vector<PointStatus> status;
    int count_expected = 0;                 // ml_degree
    std::string note;                       // "" or "incomplete(found k of r)"
    int certified_count() const;
};

// d <= 3; deterministic given seed
CriticalSolutions solve_critical(const Arrangement& arr, const std::vector<Cplx>& u,
                                 std::uint64_t seed, const ToleranceSet& tol = {});
CriticalSolutions solve_critical(const Arrangement& arr, const std::vector<Rat>& u,
                                 std::uint64_t seed, const ToleranceSet& tol = {});

// Many parameter vectors at once: one full solve at a random generic base,
// then parameter continuation to each target (with a per-target fallback to
// the full solver when tracking loses a point).
std::vector<CriticalSolutions> solve_critical_batch(
    const Arrangement& arr, const std::vector<std::vector<Cplx>>& targets,
    std::uint64_t seed, const ToleranceSet& tol = {});

enum class Verdict { outside, near_discriminant, incomplete };
std::string verdict_str(Verdict v);

Verdict membership_numeric(const Arrangement& arr, const std::vector<Cplx>& u,
                           std::uint64_t seed, const ToleranceSet& tol = {});
Verdict membership_numeric(const Arrangement& arr, const std::vector<Rat>& u,
                           std::uint64_t seed, const ToleranceSet& tol = {});

struct VarchenkoReport {
    bool pass = false;
    int real_count = 0;
    int expected = 0;
    double max_imag = 0.0;
    double min_hess_ratio = 0.0; // min |hessdet| / max |hessdet|
    std::string detail;
};

// all u_i > 0 on a real arrangement: critical points must be real, count
// (-1)^d chi(1), Hessians bounded away from zero
VarchenkoReport varchenko_check(const Arrangement& arr, const std::vector<Rat>& u,
                                std::uint64_t seed, const ToleranceSet& tol = {});

// Aberth-Ehrlich simultaneous root finder; coefficients low-to-high.
std::vector<Cplx> roots_univariate(std::vector<Cplx> coeffs, std::uint64_t seed);

} // namespace logdisc
