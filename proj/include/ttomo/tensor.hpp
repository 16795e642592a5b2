#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>

#include "ttomo/core.hpp"

namespace ttomo {

namespace detail {

inline int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

/// All non-decreasing index tuples of length m over {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> canonical_indices(int order, int dim) {
    std::vector<std::vector<int>> out;
    if (order == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> idx(order, 0);
    while (true) {
        out.push_back(idx);
        int p = order - 1;
        while (p >= 0 && idx[p] == dim - 1) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < order; ++q) idx[q] = idx[p];
    }
    return out;
}

/// Number of distinct permutations of a multiset index tuple.
inline int tuple_multiplicity(const std::vector<int>& idx, int dim) {
    int m = static_cast<int>(idx.size());
    long fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    for (int d = 0; d < dim; ++d) {
        int c = static_cast<int>(std::count(idx.begin(), idx.end(), d));
        for (int i = 2; i <= c; ++i) fact /= i;
    }
    return static_cast<int>(fact);
}

inline void for_each_tuple(int order, int dim, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(order, 0);
    if (order == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        int p = order - 1;
        while (p >= 0 && idx[p] == dim - 1) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < order; ++q) idx[q] = 0;
    }
}

}  // namespace detail

/// Dense symmetric m-tensor over R^n, m <= 3. Components are stored once per
/// canonical non-decreasing multi-index; expansion to any permutation of an
/// index tuple reads the same slot, so full symmetry holds by construction.
template <class T>
class SymTensor {
public:
    SymTensor(int order, int dim)
        : order_(order), dim_(dim), canon_(detail::canonical_indices(order, dim)),
          comp_(canon_.size(), T{}) {
        if (order < 0 || order > 3) throw error("SymTensor: order must be in 0..3");
        if (dim < 1) throw error("SymTensor: dimension must be positive");
    }

    int order() const { return order_; }
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(comp_.size()); }

    const std::vector<std::vector<int>>& canonical() const { return canon_; }

    T& operator[](int k) { return comp_[k]; }
    const T& operator[](int k) const { return comp_[k]; }

    int slot(std::vector<int> idx) const {
        std::sort(idx.begin(), idx.end());
        auto it = std::lower_bound(canon_.begin(), canon_.end(), idx);
        return static_cast<int>(it - canon_.begin());
    }

    T get(std::vector<int> idx) const { return comp_[slot(std::move(idx))]; }
    void set(std::vector<int> idx, T v) { comp_[slot(std::move(idx))] = v; }

    int multiplicity(int k) const { return detail::tuple_multiplicity(canon_[k], dim_); }

    SymTensor& operator+=(const SymTensor& o) {
        for (int k = 0; k < size(); ++k) comp_[k] += o.comp_[k];
        return *this;
    }
    SymTensor& operator-=(const SymTensor& o) {
        for (int k = 0; k < size(); ++k) comp_[k] -= o.comp_[k];
        return *this;
    }
    SymTensor& operator*=(T s) {
        for (auto& c : comp_) c *= s;
        return *this;
    }

    friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
    friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
    friend SymTensor operator*(T s, SymTensor a) { return a *= s; }

private:
    int order_, dim_;
    std::vector<std::vector<int>> canon_;
    std::vector<T> comp_;
};

/// Full symmetrization sigma of a raw m-tensor given as a flat [n]^m array,
/// last index fastest. Average over all index permutations.
template <class T>
SymTensor<T> sigma_project(const std::vector<T>& raw, int order, int dim) {
    if (order > 3) throw error("sigma_project: order > 3 unsupported");
    std::size_t want = 1;
    for (int i = 0; i < order; ++i) want *= dim;
    if (raw.size() != want) throw error("sigma_project: raw size mismatch");
    SymTensor<T> out(order, dim);
    for (int k = 0; k < out.size(); ++k) {
        std::vector<int> idx = out.canonical()[k];
        std::sort(idx.begin(), idx.end());
        T acc{};
        int count = 0;
        do {
            std::size_t flat = 0;
            for (int s = 0; s < order; ++s) flat = flat * dim + idx[s];
            acc += raw[flat];
            ++count;
        } while (std::next_permutation(idx.begin(), idx.end()));
        out[k] = acc * (T(1) / T(count));
    }
    return out;
}

template <class T>
std::vector<T> to_full(const SymTensor<T>& t) {
    int order = t.order(), dim = t.dim();
    std::size_t total = 1;
    for (int i = 0; i < order; ++i) total *= dim;
    std::vector<T> full(total);
    detail::for_each_tuple(order, dim, [&](const std::vector<int>& idx) {
        std::size_t flat = 0;
        for (int s = 0; s < order; ++s) flat = flat * dim + idx[s];
        full[flat] = t.get(idx);
    });
    return full;
}

/// Multiplicity-weighted inner product; equals the full-array contraction.
template <class T>
T inner(const SymTensor<T>& a, const SymTensor<T>& b) {
    T acc{};
    for (int k = 0; k < a.size(); ++k) acc += T(a.multiplicity(k)) * a[k] * b[k];
    return acc;
}

/// Symmetric multiplication i_x: order m -> m+1.
template <class T, class V>
SymTensor<T> i_x(const std::vector<V>& x, const SymTensor<T>& f) {
    int m = f.order(), n = f.dim();
    if (m + 1 > 3) throw error("i_x: resulting order exceeds 3");
    if (static_cast<int>(x.size()) != n) throw error("i_x: dimension mismatch");
    SymTensor<T> out(m + 1, n);
    for (int k = 0; k < out.size(); ++k) {
        const auto& idx = out.canonical()[k];
        T acc{};
        for (int s = 0; s <= m; ++s) {
            std::vector<int> rest;
            rest.reserve(m);
            for (int q = 0; q <= m; ++q)
                if (q != s) rest.push_back(idx[q]);
            acc += T(x[idx[s]]) * f.get(rest);
        }
        out[k] = acc * (T(1) / T(m + 1));
    }
    return out;
}

/// Convolution j_x: contract the last slot with x, order m -> m-1.
template <class T, class V>
SymTensor<T> j_x(const std::vector<V>& x, const SymTensor<T>& f) {
    int m = f.order(), n = f.dim();
    if (m < 1) throw error("j_x: order underflow");
    if (static_cast<int>(x.size()) != n) throw error("j_x: dimension mismatch");
    SymTensor<T> out(m - 1, n);
    for (int k = 0; k < out.size(); ++k) {
        std::vector<int> idx = out.canonical()[k];
        idx.push_back(0);
        T acc{};
        for (int j = 0; j < n; ++j) {
            idx.back() = j;
            acc += T(x[j]) * f.get(idx);
        }
        out[k] = acc;
    }
    return out;
}

template <class T, class V>
SymTensor<T> i_x_pow(const std::vector<V>& x, SymTensor<T> f, int k) {
    for (int i = 0; i < k; ++i) f = i_x(x, f);
    return f;
}

template <class T, class V>
SymTensor<T> j_x_pow(const std::vector<V>& x, SymTensor<T> f, int k) {
    for (int i = 0; i < k; ++i) f = j_x(x, f);
    return f;
}

/// Elastic 2-tensor: rank-4 with (ij)-, (kl)- and pair-swap symmetry, stored
/// as a symmetric matrix over canonical non-decreasing pair indices.
template <class T>
class ElasticTensor2 {
public:
    explicit ElasticTensor2(int dim = 2) : dim_(dim) {
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) pairs_.push_back({i, j});
        int p = static_cast<int>(pairs_.size());
        comp_.assign(p * (p + 1) / 2, T{});
    }

    int dim() const { return dim_; }
    int pair_count() const { return static_cast<int>(pairs_.size()); }
    int size() const { return static_cast<int>(comp_.size()); }
    const std::vector<std::array<int, 2>>& pairs() const { return pairs_; }

    int pair_slot(int i, int j) const {
        if (i > j) std::swap(i, j);
        // non-decreasing pairs in lexicographic order
        return i * dim_ - i * (i - 1) / 2 + (j - i);
    }

    int slot(int p, int q) const {
        if (p > q) std::swap(p, q);
        int np = pair_count();
        return p * np - p * (p - 1) / 2 + (q - p);
    }

    T& pair_at(int p, int q) { return comp_[slot(p, q)]; }
    const T& pair_at(int p, int q) const { return comp_[slot(p, q)]; }

    T get(int i, int j, int k, int l) const {
        return comp_[slot(pair_slot(i, j), pair_slot(k, l))];
    }
    void set(int i, int j, int k, int l, T v) {
        comp_[slot(pair_slot(i, j), pair_slot(k, l))] = v;
    }

    T& operator[](int k) { return comp_[k]; }
    const T& operator[](int k) const { return comp_[k]; }

    int pair_multiplicity(int p) const { return pairs_[p][0] == pairs_[p][1] ? 1 : 2; }

    /// Weight of a stored slot in the full 16-entry contraction.
    int slot_weight(int k) const {
        auto [p, q] = slot_pairs(k);
        return pair_multiplicity(p) * pair_multiplicity(q) * (p == q ? 1 : 2);
    }

    std::array<int, 2> slot_pairs(int k) const {
        int np = pair_count();
        for (int p = 0; p < np; ++p) {
            int base = p * np - p * (p - 1) / 2;
            if (k < base + (np - p)) return {p, p + (k - base)};
        }
        throw error("ElasticTensor2: bad slot");
    }

    ElasticTensor2& operator+=(const ElasticTensor2& o) {
        for (int k = 0; k < size(); ++k) comp_[k] += o.comp_[k];
        return *this;
    }
    ElasticTensor2& operator-=(const ElasticTensor2& o) {
        for (int k = 0; k < size(); ++k) comp_[k] -= o.comp_[k];
        return *this;
    }
    ElasticTensor2& operator*=(T s) {
        for (auto& c : comp_) c *= s;
        return *this;
    }
    friend ElasticTensor2 operator+(ElasticTensor2 a, const ElasticTensor2& b) { return a += b; }
    friend ElasticTensor2 operator-(ElasticTensor2 a, const ElasticTensor2& b) { return a -= b; }
    friend ElasticTensor2 operator*(T s, ElasticTensor2 a) { return a *= s; }

private:
    int dim_;
    std::vector<std::array<int, 2>> pairs_;
    std::vector<T> comp_;
};

/// Projection eps onto elastic 2-tensors: symmetrize in (i,j), in (k,l),
/// then average with the pair-swapped tensor. Raw input flat [n]^4.
template <class T>
ElasticTensor2<T> eps_project(const std::vector<T>& raw, int dim) {
    std::size_t want = static_cast<std::size_t>(dim) * dim * dim * dim;
    if (raw.size() != want) throw error("eps_project: raw size mismatch");
    auto at = [&](int i, int j, int k, int l) {
        return raw[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
    };
    ElasticTensor2<T> out(dim);
    for (int p = 0; p < out.pair_count(); ++p) {
        for (int q = p; q < out.pair_count(); ++q) {
            auto [i, j] = out.pairs()[p];
            auto [k, l] = out.pairs()[q];
            T sym = (at(i, j, k, l) + at(j, i, k, l) + at(i, j, l, k) + at(j, i, l, k)) * T(0.25);
            T swp = (at(k, l, i, j) + at(l, k, i, j) + at(k, l, j, i) + at(l, k, j, i)) * T(0.25);
            out.pair_at(p, q) = (sym + swp) * T(0.5);
        }
    }
    return out;
}

template <class T>
std::vector<T> to_full(const ElasticTensor2<T>& w) {
    int n = w.dim();
    std::vector<T> full(static_cast<std::size_t>(n) * n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    full[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = w.get(i, j, k, l);
    return full;
}

template <class T>
T inner(const ElasticTensor2<T>& a, const ElasticTensor2<T>& b) {
    T acc{};
    for (int k = 0; k < a.size(); ++k) acc += T(a.slot_weight(k)) * a[k] * b[k];
    return acc;
}

/// Line with polarization: unit direction xi, unit polarization zeta with
/// zeta in R*xi or zeta perpendicular to xi.
struct PolarizedRay {
    Vec2 point;
    Vec2 dir;
    Vec2 pol;

    PolarizedRay(Vec2 x, Vec2 xi, Vec2 zeta) : point(x), dir(xi), pol(zeta) {
        double nd = norm(dir);
        if (nd == 0.0) throw error("PolarizedRay: zero direction");
        dir = (1.0 / nd) * dir;
        double np = norm(pol);
        if (np == 0.0) throw error("PolarizedRay: zero polarization");
        pol = (1.0 / np) * pol;
        double c = std::abs(dot(dir, pol));
        if (c > 1e-12 && std::abs(c - 1.0) > 1e-12)
            throw error("PolarizedRay: polarization must lie in R*xi or xi-perp");
    }
};

/// Integrand contraction <f, (xi (x) zeta)^(x) m>: m=1 on sym-2, m=2 on elastic-2.
template <class T>
T contract_ray(const SymTensor<T>& f, const PolarizedRay& ray) {
    if (f.order() != 2 || f.dim() != 2) throw error("contract_ray: expected sym-2 in R^2");
    T acc{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            acc += f.get({i, j}) * T(ray.dir[i] * ray.pol[j]);
    return acc;
}

template <class T>
T contract_ray(const ElasticTensor2<T>& f, const PolarizedRay& ray) {
    if (f.dim() != 2) throw error("contract_ray: expected elastic tensor in R^2");
    T acc{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    acc += f.get(i, j, k, l) * T(ray.dir[i] * ray.pol[j] * ray.dir[k] * ray.pol[l]);
    return acc;
}

}  // namespace ttomo
