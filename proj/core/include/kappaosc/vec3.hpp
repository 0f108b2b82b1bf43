#pragma once

#include <cmath>
#include <cstddef>

namespace kappaosc {

/// Plain 3-vector of momentum components. Value type, no invariants.
struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend constexpr Vec3 operator*(Vec3 v, double s) { return s * v; }
    friend constexpr Vec3 operator-(Vec3 v) { return {-v.x, -v.y, -v.z}; }
    constexpr Vec3& operator+=(Vec3 o) { x += o.x; y += o.y; z += o.z; return *this; }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }

/// max_i |a_i - b_i| / max(1, |a_i|, |b_i|)
inline double relative_deviation(Vec3 a, Vec3 b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double scale = std::fmax(1.0, std::fmax(std::fabs(a[i]), std::fabs(b[i])));
        worst = std::fmax(worst, std::fabs(a[i] - b[i]) / scale);
    }
    return worst;
}

inline double relative_deviation(double a, double b) {
    return std::fabs(a - b) / std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
}

}  // namespace kappaosc
