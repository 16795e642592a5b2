#pragma once

#include <map>

#include "ttomo/core.hpp"

namespace ttomo {

/// Polynomial in two variables, sparse monomial map (a,b) -> coeff of x1^a x2^b.
class Poly2 {
public:
    Poly2() = default;
    explicit Poly2(double c) {
        if (c != 0.0) c_[{0, 0}] = c;
    }

    static Poly2 monomial(int a, int b, double coeff = 1.0) {
        Poly2 p;
        if (coeff != 0.0) p.c_[{a, b}] = coeff;
        return p;
    }

    double eval(const Vec2& x) const {
        double acc = 0.0;
        for (const auto& [ab, c] : c_)
            acc += c * std::pow(x[0], ab.first) * std::pow(x[1], ab.second);
        return acc;
    }

    Poly2 derivative(int axis) const {
        Poly2 out;
        for (const auto& [ab, c] : c_) {
            int a = ab.first, b = ab.second;
            if (axis == 0 && a > 0) out.add_term(a - 1, b, c * a);
            if (axis == 1 && b > 0) out.add_term(a, b - 1, c * b);
        }
        return out;
    }

    Poly2& operator+=(const Poly2& o) {
        for (const auto& [ab, c] : o.c_) add_term(ab.first, ab.second, c);
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }

    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 out;
        for (const auto& [ab1, c1] : a.c_)
            for (const auto& [ab2, c2] : b.c_)
                out.add_term(ab1.first + ab2.first, ab1.second + ab2.second, c1 * c2);
        return out;
    }
    friend Poly2 operator*(double s, Poly2 a) {
        for (auto& [ab, c] : a.c_) c *= s;
        return a;
    }

    bool empty() const { return c_.empty(); }

private:
    void add_term(int a, int b, double c) {
        auto key = std::make_pair(a, b);
        auto it = c_.find(key);
        if (it == c_.end()) {
            if (c != 0.0) c_[key] = c;
        } else {
            it->second += c;
            if (it->second == 0.0) c_.erase(it);
        }
    }
    std::map<std::pair<int, int>, double> c_;
};

/// Sum of poly(x) * exp(-|x - center|^2 / width^2) terms. Closed under
/// differentiation, which is what the analytic generators need.
class AnalyticScalar {
public:
    AnalyticScalar() = default;

    static AnalyticScalar gaussian(Vec2 center, double width, Poly2 prefactor = Poly2(1.0)) {
        AnalyticScalar f;
        f.terms_.push_back({std::move(prefactor), center, width});
        return f;
    }

    double eval(const Vec2& x) const {
        double acc = 0.0;
        for (const auto& t : terms_) {
            Vec2 d = x - t.center;
            acc += t.poly.eval(x) * std::exp(-dot(d, d) / (t.width * t.width));
        }
        return acc;
    }

    AnalyticScalar derivative(int axis) const {
        AnalyticScalar out;
        for (const auto& t : terms_) {
            double s = 2.0 / (t.width * t.width);
            // d/dx_i [p e^(-|x-c|^2/w^2)] = (p' - p s (x_i - c_i)) e^(...)
            Poly2 shift = Poly2::monomial(axis == 0 ? 1 : 0, axis == 1 ? 1 : 0)
                          + Poly2(-t.center[axis]);
            Poly2 p = t.poly.derivative(axis) + (-s) * (t.poly * shift);
            if (!p.empty()) out.terms_.push_back({std::move(p), t.center, t.width});
        }
        return out;
    }

    AnalyticScalar& operator+=(const AnalyticScalar& o) {
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        return *this;
    }
    friend AnalyticScalar operator*(double s, AnalyticScalar f) {
        for (auto& t : f.terms_) t.poly = s * t.poly;
        return f;
    }

    bool empty() const { return terms_.empty(); }

private:
    struct Term {
        Poly2 poly;
        Vec2 center;
        double width;
    };
    std::vector<Term> terms_;
};

}  // namespace ttomo
