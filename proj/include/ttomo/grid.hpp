#pragma once

#include <span>

#include "ttomo/core.hpp"

namespace ttomo {

/// Uniform periodic N x N grid over [-L, L)^2, N a power of two.
struct Grid2 {
    int n;
    double extent;

    Grid2(int n_, double extent_) : n(n_), extent(extent_) {
        if (n < 16 || (n & (n - 1)) != 0) throw error("Grid2: N must be a power of two >= 16");
        if (extent <= 0.0) throw error("Grid2: extent must be positive");
    }

    double spacing() const { return 2.0 * extent / n; }
    double coord(int a) const { return -extent + a * spacing(); }
    Vec2 point(int a, int b) const { return {coord(a), coord(b)}; }
    /// Frequency of lattice index k in {-N/2 .. N/2-1}.
    double freq(int k) const { return pi / extent * k; }
    int signed_index(int i) const { return i < n / 2 ? i : i - n; }

    bool operator==(const Grid2& o) const { return n == o.n && extent == o.extent; }
};

enum class FieldKind { scalar, vector, sym2, sym3, elastic2 };

inline int component_count(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return 1;
        case FieldKind::vector: return 2;
        case FieldKind::sym2: return 3;
        case FieldKind::sym3: return 4;
        case FieldKind::elastic2: return 6;
    }
    throw error("component_count: bad kind");
}

inline std::vector<std::string> component_names(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return {"v"};
        case FieldKind::vector: return {"u1", "u2"};
        case FieldKind::sym2: return {"f11", "f12", "f22"};
        case FieldKind::sym3: return {"f111", "f112", "f122", "f222"};
        case FieldKind::elastic2:
            return {"w1111", "w1112", "w1122", "w1212", "w1222", "w2222"};
    }
    throw error("component_names: bad kind");
}

/// Contraction weight of each stored component in the full-tensor inner product.
inline std::vector<int> component_weights(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return {1};
        case FieldKind::vector: return {1, 1};
        case FieldKind::sym2: return {1, 2, 1};
        case FieldKind::sym3: return {1, 3, 3, 1};
        case FieldKind::elastic2: return {1, 4, 2, 4, 4, 1};
    }
    throw error("component_weights: bad kind");
}

inline std::string kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return "scalar";
        case FieldKind::vector: return "vector";
        case FieldKind::sym2: return "sym2";
        case FieldKind::sym3: return "sym3";
        case FieldKind::elastic2: return "elastic2";
    }
    throw error("kind_name: bad kind");
}

inline FieldKind kind_from_name(const std::string& s) {
    if (s == "scalar") return FieldKind::scalar;
    if (s == "vector") return FieldKind::vector;
    if (s == "sym2") return FieldKind::sym2;
    if (s == "sym3") return FieldKind::sym3;
    if (s == "elastic2") return FieldKind::elastic2;
    throw error("kind_from_name: unknown kind '" + s + "'");
}

/// Sampled tensor field on a Grid2. Component arrays are row-major with x1
/// fastest: value at (a, b) sits at index b*N + a.
class GridField {
public:
    GridField(Grid2 grid, FieldKind kind)
        : grid_(grid), kind_(kind),
          comp_(component_count(kind), std::vector<double>(static_cast<std::size_t>(grid.n) * grid.n, 0.0)) {}

    const Grid2& grid() const { return grid_; }
    FieldKind kind() const { return kind_; }
    int components() const { return static_cast<int>(comp_.size()); }

    double& at(int c, int a, int b) { return comp_[c][static_cast<std::size_t>(b) * grid_.n + a]; }
    double at(int c, int a, int b) const { return comp_[c][static_cast<std::size_t>(b) * grid_.n + a]; }

    std::vector<double>& component(int c) { return comp_[c]; }
    const std::vector<double>& component(int c) const { return comp_[c]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& comp : comp_)
            for (double v : comp) m = std::max(m, std::abs(v));
        return m;
    }

    /// Largest |value| on the outermost ring of samples, over all components.
    double boundary_ring_max() const {
        double m = 0.0;
        int n = grid_.n;
        for (int c = 0; c < components(); ++c) {
            for (int a = 0; a < n; ++a) {
                m = std::max({m, std::abs(at(c, a, 0)), std::abs(at(c, a, n - 1))});
            }
            for (int b = 0; b < n; ++b) {
                m = std::max({m, std::abs(at(c, 0, b)), std::abs(at(c, n - 1, b))});
            }
        }
        return m;
    }

    /// Componentwise integral over the cell, h^2 * sum (the periodic-grid
    /// rectangle rule, which is the trapezoid rule here).
    std::vector<double> mean_integral() const {
        double h2 = grid_.spacing() * grid_.spacing();
        std::vector<double> out(components(), 0.0);
        for (int c = 0; c < components(); ++c) {
            double acc = 0.0;
            for (double v : comp_[c]) acc += v;
            out[c] = acc * h2;
        }
        return out;
    }

    /// Multiplicity-weighted L1 norm, h^2 sum_c w_c |f_c|.
    double l1_norm() const {
        auto w = component_weights(kind_);
        double acc = 0.0;
        for (int c = 0; c < components(); ++c) {
            double s = 0.0;
            for (double v : comp_[c]) s += std::abs(v);
            acc += w[c] * s;
        }
        return acc * grid_.spacing() * grid_.spacing();
    }

    GridField& operator+=(const GridField& o) {
        check_same(o);
        for (int c = 0; c < components(); ++c)
            for (std::size_t k = 0; k < comp_[c].size(); ++k) comp_[c][k] += o.comp_[c][k];
        return *this;
    }
    GridField& operator-=(const GridField& o) {
        check_same(o);
        for (int c = 0; c < components(); ++c)
            for (std::size_t k = 0; k < comp_[c].size(); ++k) comp_[c][k] -= o.comp_[c][k];
        return *this;
    }
    GridField& operator*=(double s) {
        for (auto& comp : comp_)
            for (auto& v : comp) v *= s;
        return *this;
    }
    friend GridField operator+(GridField a, const GridField& b) { return a += b; }
    friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
    friend GridField operator*(double s, GridField a) { return a *= s; }

private:
    void check_same(const GridField& o) const {
        if (!(grid_ == o.grid_) || kind_ != o.kind_) throw error("GridField: shape mismatch");
    }
    Grid2 grid_;
    FieldKind kind_;
    std::vector<std::vector<double>> comp_;
};

/// Grid quadrature inner product including component multiplicities.
inline double field_inner(const GridField& a, const GridField& b) {
    if (!(a.grid() == b.grid()) || a.kind() != b.kind()) throw error("field_inner: shape mismatch");
    auto w = component_weights(a.kind());
    double acc = 0.0;
    for (int c = 0; c < a.components(); ++c) {
        const auto& ac = a.component(c);
        const auto& bc = b.component(c);
        double s = 0.0;
        for (std::size_t k = 0; k < ac.size(); ++k) s += ac[k] * bc[k];
        acc += w[c] * s;
    }
    return acc * a.grid().spacing() * a.grid().spacing();
}

}  // namespace ttomo
