#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "kappaosc/context.hpp"
#include "kappaosc/osc_algebra.hpp"
#include "kappaosc/vec3.hpp"

namespace kappaosc {

/// 1-D momentum sample axis (vectors along x) with trapezoid quadrature weights.
/// Two-particle kernels live on the tensor square of the axis.
struct Grid2 {
    std::vector<Vec3> points;
    std::vector<double> weights;
    double delta_tol{1e-9};

    static Grid2 uniform_1d(int n, double kmin, double kmax, double delta_tol = 1e-9);

    int size() const { return static_cast<int>(points.size()); }
    double min_x() const;
    double max_x() const;
    double cell() const;
};

/// Two-particle kernel sampled on grid x grid, values(i, j) = f(p_i, q_j).
struct Amplitude2 {
    Eigen::MatrixXcd values;

    static Amplitude2 zero(const Grid2& grid);
    /// Sampled outer product f(p) g(q) of two one-particle profiles.
    static Amplitude2 product(const Grid2& grid,
                              const std::function<std::complex<double>(double)>& f,
                              const std::function<std::complex<double>(double)>& g);
};

class GridRangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponent convention for the cluster rescale map. The smeared relation is
/// printed with full e^{energy/kappa} factors while the binary product uses half
/// exponents; both are supported and selected explicitly.
enum class ExponentConvention { half, full };

/// Change-of-variables descriptor on the pair axis. exp_rescale maps
///   P = p e^{a omega(|q|)},  Q = q e^{b omega(|p|)},
/// which covers the cluster smearing and the flip-frame transforms.
///
/// `dim` is the dimensionality of the per-axis Jacobian block: 3 treats the
/// axis as a slice of the spatial measure (a pure scaling contributes
/// lambda^-3 per axis), 1 is the strictly one-dimensional measure under which
/// the grid quadrature sum is conserved.
struct MapDescriptor {
    enum class Kind { identity, scale, exp_rescale } kind{Kind::identity};
    double lambda_p{1.0}, lambda_q{1.0};  // scale
    double a{0.0}, b{0.0};                // exp_rescale coefficients
    int dim{3};

    static MapDescriptor identity();
    static MapDescriptor scaling(double lambda_p, double lambda_q);
    static MapDescriptor exp_rescale(double a, double b, int dim = 3);
    /// The cluster rescale for the chosen convention: a = +1/kappa', b = -1/kappa'
    /// with kappa' = kappa (full) or 2 kappa (half).
    static MapDescriptor smear_map(const KappaContext& ctx, ExponentConvention convention);
};

/// f~(P, Q) = J(P, Q) f(p(P, Q), q(P, Q)) resampled on the grid by inverse
/// mapping with piecewise-linear interpolation. The Jacobian is the full 3-D
/// determinant per pair axis (a pure scaling by lambda contributes lambda^-3).
///
/// Preconditions: the Jacobian determinant must be positive at every sample
/// point, otherwise std::invalid_argument("non-invertible map"). Lookups beyond
/// the grid hull are extrapolated up to one cell; farther out they contribute
/// zero when the kernel has decayed below 1e-12 of its peak there and raise
/// GridRangeError otherwise.
Amplitude2 jacobian_reweight(const Amplitude2& f2, const MapDescriptor& map, const Grid2& grid,
                             const KappaContext& ctx);

/// Effective cluster kernel in fixed oscillator labels: every grid sample is
/// pushed through the product rescale p -> p e^{+omega(q)/kappa'},
/// q -> q e^{-omega(p)/kappa'} and the result is resampled onto the grid with
/// Jacobian reweighting. Raises GridRangeError("grid range exceeded") when a
/// sample carrying significant amplitude lands beyond the hull plus one cell.
Amplitude2 smear_cluster(const Amplitude2& f2, const Grid2& grid, const KappaContext& ctx,
                         ExponentConvention convention = ExponentConvention::full);

/// 1 - sigma_1^2 / sum_k sigma_k^2 over the singular values; 0 iff the kernel
/// factorizes into a rank-1 product. Evaluated as tail/total to stay exact for
/// nearly factorizable kernels.
double factorizability_metric(const Amplitude2& f2);

/// Deformed two-particle ket constructor: creation pair on standard shells,
/// multiplied with the deformed binary product. Its composed total is the plain
/// Abelian sum (omega(p) + omega(q), p + q).
Monomial two_particle_state(const Vec3& p, const Vec3& q, const KappaContext& ctx);

/// Standard demo packet: a product of two smooth compactly supported bumps
/// whose support stays within reach of the default [-2, 2] grid for kappa >= 1
/// (massless context).
Amplitude2 default_packet_fixture(const Grid2& grid);

}  // namespace kappaosc
