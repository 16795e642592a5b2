#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttomo {

using Vec2 = std::array<double, 2>;
using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }

/// Right-handed perpendicular: perp((cos p, sin p)) = (-sin p, cos p).
inline Vec2 perp(const Vec2& a) { return {-a[1], a[0]}; }

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generated field fails the boundary-decay admissibility gate.
struct decay_gate_error : error {
    double boundary_ratio;
    decay_gate_error(const std::string& msg, double ratio)
        : error(msg), boundary_ratio(ratio) {}
};

/// Decomposition precondition violated: component means exceed tolerance.
struct mean_zero_error : error {
    std::vector<double> component_means;
    mean_zero_error(const std::string& msg, std::vector<double> means)
        : error(msg), component_means(std::move(means)) {}
};

}  // namespace ttomo
