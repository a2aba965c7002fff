#pragma once

// The cubic family f(z) = lambda*z + b*z^2 + z^3 and escape-time iteration.

#include <array>
#include <cmath>
#include <complex>
#include <optional>

namespace trilam {

using Complex = std::complex<double>;

struct CubicMap {
    Complex lambda{}; // multiplier of the fixed point 0
    Complex b{};      // quadratic coefficient

    Complex evaluate(Complex z) const { return ((z + b) * z + lambda) * z; }
    Complex derivative(Complex z) const { return (3.0 * z + 2.0 * b) * z + lambda; }

    // |f(z)| >= 2|z| whenever |z| >= R: from the triangle inequality,
    // |f(z)| >= |z|(|z|^2 - |b||z| - |lambda|), and at |z| = R with
    // R = max(2, 1+|lambda|+|b|) the bracket is >= R + |lambda|(R-1) >= 2.
    double escape_radius() const {
        return std::max(2.0, 1.0 + std::abs(lambda) + std::abs(b));
    }

    // roots of 3z^2 + 2bz + lambda, the double root twice when b^2 = 3*lambda
    std::array<Complex, 2> critical_points() const {
        Complex s = std::sqrt(b * b - 3.0 * lambda);
        if (s.real() * b.real() + s.imag() * b.imag() < 0.0) s = -s;
        Complex z1 = -(b + s) / 3.0;
        Complex z2 = z1 == Complex{} ? Complex{} : lambda / (3.0 * z1);
        return {z1, z2};
    }
};

enum class OrbitStatus { Escaped, Bounded };

struct OrbitResult {
    OrbitStatus status{};
    int iterations{}; // first escaping index, or the budget when bounded
    double last_modulus{};
};

// z0 counts as iterate 0; Escaped(n) means iterate n is the first past radius.
inline OrbitResult escape_test(const CubicMap& m, Complex z0, int max_iter, double radius) {
    Complex z = z0;
    for (int n = 0;; ++n) {
        double a = std::abs(z);
        if (a > radius) return {OrbitStatus::Escaped, n, a};
        if (n == max_iter) return {OrbitStatus::Bounded, max_iter, a};
        z = m.evaluate(z);
    }
}

inline OrbitResult escape_test(const CubicMap& m, Complex z0, int max_iter) {
    return escape_test(m, z0, max_iter, m.escape_radius());
}

// first iterate whose modulus drops below tol, if any within the budget
inline std::optional<int> iterations_to_converge(const CubicMap& m, Complex z, double tol,
                                                 int max_iter) {
    for (int n = 0; n <= max_iter; ++n) {
        if (std::abs(z) < tol) return n;
        z = m.evaluate(z);
    }
    return std::nullopt;
}

// Escape-rate potential 3^{-n} log|f^n(z)|, refined until the orbit clears
// 1e100 or the depth budget; 0 for orbits that never leave the escape radius.
inline double green_function(const CubicMap& m, Complex z, int depth) {
    const double R = m.escape_radius();
    int n = 0;
    while (n < depth && std::abs(z) <= 1e100) {
        z = m.evaluate(z);
        ++n;
    }
    double a = std::abs(z);
    if (a <= R) return 0.0;
    return std::log(a) * std::pow(3.0, -n);
}

} // namespace trilam
