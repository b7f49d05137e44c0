#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace curv4 {

// Index of (i,j), i <= j, in a packed symmetric 4x4 upper triangle (10 slots).
constexpr int sym4_index(int i, int j) {
    if (i > j) { const int t = i; i = j; j = t; }
    return i * 4 + j - i * (i + 1) / 2;
}

/// Order-1 jet in 4 variables: value and gradient. Used where Hessians are
/// not needed (quadrature integrands).
struct Jet1 {
    double v = 0.0;
    std::array<double, 4> g{};

    Jet1() = default;
    Jet1(double value) : v(value) {}

    static Jet1 coordinate(double value, int axis) {
        Jet1 j(value);
        j.g[axis] = 1.0;
        return j;
    }

    Jet1 operator-() const {
        Jet1 r(-v);
        for (int i = 0; i < 4; ++i) r.g[i] = -g[i];
        return r;
    }
    friend Jet1 operator+(const Jet1& a, const Jet1& b) {
        Jet1 r(a.v + b.v);
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
        return r;
    }
    friend Jet1 operator-(const Jet1& a, const Jet1& b) {
        Jet1 r(a.v - b.v);
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
        return r;
    }
    friend Jet1 operator*(const Jet1& a, const Jet1& b) {
        Jet1 r(a.v * b.v);
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        return r;
    }
    // df(u): value f(u.v), derivative fp(u.v).
    static Jet1 chain(double f, double fp, const Jet1& u) {
        Jet1 r(f);
        for (int i = 0; i < 4; ++i) r.g[i] = fp * u.g[i];
        return r;
    }
    friend Jet1 operator/(const Jet1& a, const Jet1& b) {
        return a * chain(1.0 / b.v, -1.0 / (b.v * b.v), b);
    }
    bool has_derivative() const {
        for (int i = 0; i < 4; ++i)
            if (g[i] != 0.0) return true;
        return false;
    }
    bool all_finite() const {
        if (!std::isfinite(v)) return false;
        for (int i = 0; i < 4; ++i)
            if (!std::isfinite(g[i])) return false;
        return true;
    }
};

/// Order-2 jet in 4 variables: value, gradient, and symmetric Hessian
/// (packed, 10 entries). Product and chain rules are exact up to rounding,
/// so second derivatives of metric components carry no truncation error.
struct Jet2 {
    double v = 0.0;
    std::array<double, 4> g{};
    std::array<double, 10> h{};

    Jet2() = default;
    Jet2(double value) : v(value) {}

    static Jet2 coordinate(double value, int axis) {
        Jet2 j(value);
        j.g[axis] = 1.0;
        return j;
    }

    double hess(int i, int j) const { return h[sym4_index(i, j)]; }

    Jet2 operator-() const {
        Jet2 r(-v);
        for (int i = 0; i < 4; ++i) r.g[i] = -g[i];
        for (int k = 0; k < 10; ++k) r.h[k] = -h[k];
        return r;
    }
    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        Jet2 r(a.v + b.v);
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
        for (int k = 0; k < 10; ++k) r.h[k] = a.h[k] + b.h[k];
        return r;
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        Jet2 r(a.v - b.v);
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
        for (int k = 0; k < 10; ++k) r.h[k] = a.h[k] - b.h[k];
        return r;
    }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        Jet2 r(a.v * b.v);
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                const int k = sym4_index(i, j);
                r.h[k] = a.h[k] * b.v + a.v * b.h[k] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
            }
        return r;
    }
    // f(u): needs f(u.v), f'(u.v), f''(u.v).
    static Jet2 chain(double f, double fp, double fpp, const Jet2& u) {
        Jet2 r(f);
        for (int i = 0; i < 4; ++i) r.g[i] = fp * u.g[i];
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                r.h[sym4_index(i, j)] = fpp * u.g[i] * u.g[j] + fp * u.h[sym4_index(i, j)];
        return r;
    }
    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        const double iv = 1.0 / b.v;
        return a * chain(iv, -iv * iv, 2.0 * iv * iv * iv, b);
    }
    bool has_derivative() const {
        for (int i = 0; i < 4; ++i)
            if (g[i] != 0.0) return true;
        for (int k = 0; k < 10; ++k)
            if (h[k] != 0.0) return true;
        return false;
    }
    bool all_finite() const {
        if (!std::isfinite(v)) return false;
        for (int i = 0; i < 4; ++i)
            if (!std::isfinite(g[i])) return false;
        for (int k = 0; k < 10; ++k)
            if (!std::isfinite(h[k])) return false;
        return true;
    }
};

inline double value_of(double x) { return x; }
inline double value_of(const Jet1& x) { return x.v; }
inline double value_of(const Jet2& x) { return x.v; }

// Elementary functions lifted to jets. The double overloads let the
// expression evaluator be generic over the scalar type.

inline double jet_sin(double x) { return std::sin(x); }
inline double jet_cos(double x) { return std::cos(x); }
inline double jet_tan(double x) { return std::tan(x); }
inline double jet_exp(double x) { return std::exp(x); }
inline double jet_log(double x) { return std::log(x); }
inline double jet_sqrt(double x) { return std::sqrt(x); }
inline double jet_sinh(double x) { return std::sinh(x); }
inline double jet_cosh(double x) { return std::cosh(x); }
inline double jet_tanh(double x) { return std::tanh(x); }
inline double jet_atan(double x) { return std::atan(x); }

inline Jet1 jet_sin(const Jet1& u) { return Jet1::chain(std::sin(u.v), std::cos(u.v), u); }
inline Jet1 jet_cos(const Jet1& u) { return Jet1::chain(std::cos(u.v), -std::sin(u.v), u); }
inline Jet1 jet_tan(const Jet1& u) {
    const double t = std::tan(u.v);
    return Jet1::chain(t, 1.0 + t * t, u);
}
inline Jet1 jet_exp(const Jet1& u) {
    const double e = std::exp(u.v);
    return Jet1::chain(e, e, u);
}
inline Jet1 jet_log(const Jet1& u) { return Jet1::chain(std::log(u.v), 1.0 / u.v, u); }
inline Jet1 jet_sqrt(const Jet1& u) {
    const double s = std::sqrt(u.v);
    return Jet1::chain(s, 0.5 / s, u);
}
inline Jet1 jet_sinh(const Jet1& u) { return Jet1::chain(std::sinh(u.v), std::cosh(u.v), u); }
inline Jet1 jet_cosh(const Jet1& u) { return Jet1::chain(std::cosh(u.v), std::sinh(u.v), u); }
inline Jet1 jet_tanh(const Jet1& u) {
    const double t = std::tanh(u.v);
    return Jet1::chain(t, 1.0 - t * t, u);
}
inline Jet1 jet_atan(const Jet1& u) { return Jet1::chain(std::atan(u.v), 1.0 / (1.0 + u.v * u.v), u); }

inline Jet2 jet_sin(const Jet2& u) {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return Jet2::chain(s, c, -s, u);
}
inline Jet2 jet_cos(const Jet2& u) {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return Jet2::chain(c, -s, -c, u);
}
inline Jet2 jet_tan(const Jet2& u) {
    const double t = std::tan(u.v), d = 1.0 + t * t;
    return Jet2::chain(t, d, 2.0 * t * d, u);
}
inline Jet2 jet_exp(const Jet2& u) {
    const double e = std::exp(u.v);
    return Jet2::chain(e, e, e, u);
}
inline Jet2 jet_log(const Jet2& u) {
    const double iv = 1.0 / u.v;
    return Jet2::chain(std::log(u.v), iv, -iv * iv, u);
}
inline Jet2 jet_sqrt(const Jet2& u) {
    const double s = std::sqrt(u.v);
    return Jet2::chain(s, 0.5 / s, -0.25 / (s * u.v), u);
}
inline Jet2 jet_sinh(const Jet2& u) {
    const double s = std::sinh(u.v), c = std::cosh(u.v);
    return Jet2::chain(s, c, s, u);
}
inline Jet2 jet_cosh(const Jet2& u) {
    const double s = std::sinh(u.v), c = std::cosh(u.v);
    return Jet2::chain(c, s, c, u);
}
inline Jet2 jet_tanh(const Jet2& u) {
    const double t = std::tanh(u.v), d = 1.0 - t * t;
    return Jet2::chain(t, d, -2.0 * t * d, u);
}
inline Jet2 jet_atan(const Jet2& u) {
    const double d = 1.0 / (1.0 + u.v * u.v);
    return Jet2::chain(std::atan(u.v), d, -2.0 * u.v * d * d, u);
}

}  // namespace curv4
