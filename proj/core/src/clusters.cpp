#include "kappaosc/clusters.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "kappaosc/kinematics.hpp"
#include "solve2.hpp"

namespace kappaosc {

namespace {

constexpr double support_floor_ratio = 1e-9;

double omega_abs(double k, const KappaContext& ctx) {
    return omega_kappa(Vec3{k, 0.0, 0.0}, ctx);
}

/// |k| d omega / d|k|, the radial log-derivative entering the rescale Jacobian.
double radial_gain(double k, const KappaContext& ctx) {
    return std::fabs(k) * omega_kappa_radial_derivative(std::fabs(k), ctx);
}

struct MapPoint {
    double p, q;   // preimage coordinates
    double jac;    // det d(p,q)/d(P,Q) with dim-dimensional axis blocks
};

// Invert the descriptor at an output node (P, Q) and evaluate the Jacobian there.
MapPoint invert_map(const MapDescriptor& map, double P, double Q, const KappaContext& ctx) {
    switch (map.kind) {
        case MapDescriptor::Kind::identity:
            return {P, Q, 1.0};
        case MapDescriptor::Kind::scale: {
            const double p = P / map.lambda_p;
            const double q = Q / map.lambda_q;
            return {p, q, 1.0 / std::pow(map.lambda_p * map.lambda_q, map.dim)};
        }
        case MapDescriptor::Kind::exp_rescale: {
            auto target = [&](double p, double q) {
                return std::pair<double, double>{P * std::exp(-map.a * omega_abs(q, ctx)),
                                                 Q * std::exp(-map.b * omega_abs(p, ctx))};
            };
            const auto r = detail::solve_fixed_point_2d(target, P, Q, 1e-13, 200);
            if (!r.converged)
                throw GridRangeError("grid range exceeded: map inversion diverged");
            const double wq = omega_abs(r.b, ctx);
            const double wp = omega_abs(r.a, ctx);
            const double det_fwd = std::exp(map.dim * (map.a * wq + map.b * wp)) *
                                   (1.0 - map.a * map.b * radial_gain(r.a, ctx) * radial_gain(r.b, ctx));
            return {r.a, r.b, 1.0 / det_fwd};
        }
    }
    throw std::logic_error("unreachable map kind");
}

double forward_jacobian_det(const MapDescriptor& map, double p, double q,
                            const KappaContext& ctx) {
    switch (map.kind) {
        case MapDescriptor::Kind::identity:
            return 1.0;
        case MapDescriptor::Kind::scale:
            return std::pow(map.lambda_p * map.lambda_q, map.dim);
        case MapDescriptor::Kind::exp_rescale: {
            const double wq = omega_abs(q, ctx);
            const double wp = omega_abs(p, ctx);
            return std::exp(map.dim * (map.a * wq + map.b * wp)) *
                   (1.0 - map.a * map.b * radial_gain(p, ctx) * radial_gain(q, ctx));
        }
    }
    throw std::logic_error("unreachable map kind");
}

std::pair<double, double> forward_map(const MapDescriptor& map, double p, double q,
                                      const KappaContext& ctx) {
    switch (map.kind) {
        case MapDescriptor::Kind::identity:
            return {p, q};
        case MapDescriptor::Kind::scale:
            return {map.lambda_p * p, map.lambda_q * q};
        case MapDescriptor::Kind::exp_rescale:
            return {p * std::exp(map.a * omega_abs(q, ctx)),
                    q * std::exp(map.b * omega_abs(p, ctx))};
    }
    throw std::logic_error("unreachable map kind");
}

// Piecewise-linear sample of the kernel at scalar coordinates (p, q). Allows up
// to one cell of linear extrapolation; beyond that the value is zero when the
// clamped boundary value has decayed under `floor`, otherwise an error.
std::complex<double> sample_kernel(const Amplitude2& f2, const Grid2& grid, double p, double q,
                                   double floor) {
    const double lo = grid.min_x();
    const double hi = grid.max_x();
    const double cell = grid.cell();
    const int n = grid.size();

    auto locate = [&](double xcoord) {
        // fractional index, clamped to the valid cell range for extrapolation
        double t = (xcoord - lo) / cell;
        return std::clamp(t, 0.0, static_cast<double>(n - 1));
    };

    const bool far_out = p < lo - cell || p > hi + cell || q < lo - cell || q > hi + cell;
    if (far_out) {
        const double ti = locate(p);
        const double tj = locate(q);
        const auto clamped =
            f2.values(static_cast<int>(std::lround(ti)), static_cast<int>(std::lround(tj)));
        if (std::abs(clamped) <= floor) return {0.0, 0.0};
        throw GridRangeError("grid range exceeded: lookup outside grid hull");
    }

    // Bilinear with the cell index clamped; fractional offsets outside [0,1]
    // realize the one-cell linear extrapolation.
    const double ti = (p - lo) / cell;
    const double tj = (q - lo) / cell;
    const int i0 = std::clamp(static_cast<int>(std::floor(ti)), 0, n - 2);
    const int j0 = std::clamp(static_cast<int>(std::floor(tj)), 0, n - 2);
    const double u = ti - i0;
    const double v = tj - j0;

    const auto f00 = f2.values(i0, j0);
    const auto f10 = f2.values(i0 + 1, j0);
    const auto f01 = f2.values(i0, j0 + 1);
    const auto f11 = f2.values(i0 + 1, j0 + 1);
    return (1.0 - u) * (1.0 - v) * f00 + u * (1.0 - v) * f10 + (1.0 - u) * v * f01 +
           u * v * f11;
}

double peak_magnitude(const Amplitude2& f2) {
    double peak = 0.0;
    for (Eigen::Index i = 0; i < f2.values.rows(); ++i)
        for (Eigen::Index j = 0; j < f2.values.cols(); ++j)
            peak = std::fmax(peak, std::abs(f2.values(i, j)));
    return peak;
}

}  // namespace

Grid2 Grid2::uniform_1d(int n, double kmin, double kmax, double delta_tol) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(kmax > kmin)) throw std::invalid_argument("grid range must be increasing");
    Grid2 g;
    g.delta_tol = delta_tol;
    const double h = (kmax - kmin) / (n - 1);
    for (int i = 0; i < n; ++i) {
        g.points.push_back({kmin + i * h, 0.0, 0.0});
        g.weights.push_back((i == 0 || i == n - 1) ? h / 2.0 : h);
    }
    return g;
}

double Grid2::min_x() const { return points.front().x; }
double Grid2::max_x() const { return points.back().x; }
double Grid2::cell() const { return (max_x() - min_x()) / (size() - 1); }

Amplitude2 Amplitude2::zero(const Grid2& grid) {
    Amplitude2 a;
    a.values = Eigen::MatrixXcd::Zero(grid.size(), grid.size());
    return a;
}

Amplitude2 Amplitude2::product(const Grid2& grid,
                               const std::function<std::complex<double>(double)>& f,
                               const std::function<std::complex<double>(double)>& g) {
    Amplitude2 a = zero(grid);
    for (int i = 0; i < grid.size(); ++i)
        for (int j = 0; j < grid.size(); ++j)
            a.values(i, j) = f(grid.points[i].x) * g(grid.points[j].x);
    return a;
}

MapDescriptor MapDescriptor::identity() { return {}; }

MapDescriptor MapDescriptor::scaling(double lambda_p, double lambda_q) {
    MapDescriptor d;
    d.kind = Kind::scale;
    d.lambda_p = lambda_p;
    d.lambda_q = lambda_q;
    return d;
}

MapDescriptor MapDescriptor::exp_rescale(double a, double b, int dim) {
    MapDescriptor d;
    d.kind = Kind::exp_rescale;
    d.a = a;
    d.b = b;
    d.dim = dim;
    return d;
}

MapDescriptor MapDescriptor::smear_map(const KappaContext& ctx, ExponentConvention convention) {
    const double scale = convention == ExponentConvention::full ? ctx.kappa : 2.0 * ctx.kappa;
    return exp_rescale(+1.0 / scale, -1.0 / scale);
}

Amplitude2 jacobian_reweight(const Amplitude2& f2, const MapDescriptor& map, const Grid2& grid,
                             const KappaContext& ctx) {
    if (f2.values.rows() != grid.size() || f2.values.cols() != grid.size())
        throw std::invalid_argument("kernel dimensions do not match grid");

    for (const Vec3& pi : grid.points)
        for (const Vec3& qj : grid.points)
            if (!(forward_jacobian_det(map, pi.x, qj.x, ctx) > 0.0))
                throw std::invalid_argument("non-invertible map");

    const double floor = support_floor_ratio * peak_magnitude(f2);
    Amplitude2 out = Amplitude2::zero(grid);
    for (int i = 0; i < grid.size(); ++i) {
        for (int j = 0; j < grid.size(); ++j) {
            const MapPoint mp = invert_map(map, grid.points[i].x, grid.points[j].x, ctx);
            out.values(i, j) = mp.jac * sample_kernel(f2, grid, mp.p, mp.q, floor);
        }
    }
    return out;
}

Amplitude2 smear_cluster(const Amplitude2& f2, const Grid2& grid, const KappaContext& ctx,
                         ExponentConvention convention) {
    if (f2.values.rows() != grid.size() || f2.values.cols() != grid.size())
        throw std::invalid_argument("kernel dimensions do not match grid");
    const MapDescriptor map = MapDescriptor::smear_map(ctx, convention);

    // Samples carrying significant amplitude must stay within reach of the grid.
    const double floor = support_floor_ratio * peak_magnitude(f2);
    const double lo = grid.min_x() - grid.cell();
    const double hi = grid.max_x() + grid.cell();
    for (int i = 0; i < grid.size(); ++i) {
        for (int j = 0; j < grid.size(); ++j) {
            if (std::abs(f2.values(i, j)) <= floor) continue;
            const auto [P, Q] = forward_map(map, grid.points[i].x, grid.points[j].x, ctx);
            if (P < lo || P > hi || Q < lo || Q > hi)
                throw GridRangeError("grid range exceeded: rescaled sample left the hull");
        }
    }
    return jacobian_reweight(f2, map, grid, ctx);
}

double factorizability_metric(const Amplitude2& f2) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f2.values);
    const auto& sv = svd.singularValues();
    double total = 0.0, tail = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        total += sv[i] * sv[i];
        if (i > 0) tail += sv[i] * sv[i];
    }
    // tail/total rather than 1 - head/total: keeps precision for near-rank-1 input
    if (total == 0.0) return 0.0;
    return tail / total;
}

Monomial two_particle_state(const Vec3& p, const Vec3& q, const KappaContext& ctx) {
    return circ_binary(creation(p, omega_kappa(p, ctx)), creation(q, omega_kappa(q, ctx)), ctx);
}

Amplitude2 default_packet_fixture(const Grid2& grid) {
    // Smooth compactly supported bumps: the tails vanish identically inside the
    // grid, so the rescale map cannot push significant amplitude off the hull.
    const auto packet = [](double center, double width) {
        return [center, width](double k) {
            const double t = (k - center) / width;
            if (std::fabs(t) >= 1.0) return std::complex<double>{0.0, 0.0};
            return std::complex<double>{std::exp(1.0 - 1.0 / (1.0 - t * t)), 0.0};
        };
    };
    return Amplitude2::product(grid, packet(0.1, 1.1), packet(-0.05, 1.0));
}

}  // namespace kappaosc
