#pragma once

// External ray tracing by backward Newton continuation. A ray at potential t
// is sampled by seeding the conjugate ray at a potential high enough for the
// asymptotic coordinate z ~ w - b/3 to hold, then pulling back one tripling
// at a time choosing the preimage branch nearest the previous level.

#include <trilam/angle.hpp>
#include <trilam/cubic.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace trilam {

struct RaySample {
    double potential{};
    Complex z{};
    bool newton_ok{true};
};

struct RayTrace {
    RationalAngle angle;
    std::vector<RaySample> samples; // potentials strictly decreasing
    bool diverged{false};
    int diverged_step{-1}; // sample index that could not be produced
};

namespace detail {

// Solve f(z) = target by damped Newton from guess; fail on budget overrun,
// a dead derivative, or a jump past the trust distance from the guess.
inline std::optional<Complex> newton_pullback(const CubicMap& m, Complex target, Complex guess,
                                              double trust) {
    Complex z = guess;
    for (int it = 0; it < 50; ++it) {
        Complex f = m.evaluate(z) - target;
        if (std::abs(f) <= 1e-13 * (1.0 + std::abs(target))) {
            if (std::abs(z - guess) > trust) return std::nullopt;
            return z;
        }
        Complex d = m.derivative(z);
        if (d == Complex{}) return std::nullopt;
        Complex dz = -f / d;
        double cap = 0.5 * std::max(std::abs(z), 1.0);
        double adz = std::abs(dz);
        if (adz > cap) dz *= cap / adz;
        z += dz;
    }
    return std::nullopt;
}

} // namespace detail

inline RayTrace trace_external_ray(const CubicMap& m, const RationalAngle& alpha,
                                   double t_start, double t_end, int steps) {
    if (!(t_start > t_end) || !(t_end > 0.0) || steps < 1)
        throw std::invalid_argument("ray schedule needs t_start > t_end > 0 and steps >= 1");
    if (std::exp(t_start) < m.escape_radius())
        throw std::invalid_argument("ray must start outside the escape radius");

    const double t_seed = std::log(1e10 * (1.0 + std::abs(m.lambda) + std::abs(m.b)));

    std::vector<double> user(steps + 1);
    for (int k = 0; k <= steps; ++k)
        user[k] = t_start * std::pow(t_end / t_start, static_cast<double>(k) / steps);
    user.front() = t_start;
    user.back() = t_end;

    // Internal schedule: every user level, plus enough intermediate levels
    // that the potential never drops by more than half per step. Then the
    // pullback depth grows by at most one per level, so every Newton solve
    // has either a direct seed or a previous-level point as its predictor.
    struct Level {
        double t;
        int emit; // user sample index, or -1 for an intermediate level
    };
    std::vector<Level> sched;
    double top = std::max(t_seed, t_start);
    if (top > t_start) {
        int n = static_cast<int>(std::ceil(std::log2(top / t_start)));
        for (int i = 0; i < n; ++i)
            sched.push_back({top * std::pow(t_start / top, static_cast<double>(i) / n), -1});
    }
    sched.push_back({user[0], 0});
    for (int k = 1; k <= steps; ++k) {
        int n = std::max(1, static_cast<int>(std::ceil(std::log2(user[k - 1] / user[k]))));
        for (int i = 1; i < n; ++i)
            sched.push_back(
                {user[k - 1] * std::pow(user[k] / user[k - 1], static_cast<double>(i) / n), -1});
        sched.push_back({user[k], k});
    }

    std::vector<RationalAngle> angles{alpha};
    auto angle_at = [&](std::size_t j) -> const RationalAngle& {
        while (angles.size() <= j) angles.push_back(sigma(3, angles.back()));
        return angles[j];
    };
    auto seed_at = [&](double pot, std::size_t j) {
        return std::polar(std::exp(pot), 2.0 * std::numbers::pi * to_double(angle_at(j))) -
               m.b / 3.0;
    };

    RayTrace out{alpha, {}, false, -1};
    std::vector<Complex> prev, prev2;
    for (const Level& lv : sched) {
        int depth = 0;
        double pot = lv.t;
        while (pot < t_seed && depth < 4000) {
            pot *= 3.0;
            ++depth;
        }
        std::vector<Complex> cur(static_cast<std::size_t>(depth) + 1);
        cur[depth] = seed_at(pot, depth);
        bool ok = true;
        for (int j = depth - 1; j >= 0; --j) {
            Complex guess = j < static_cast<int>(prev.size()) ? prev[j] : cur[j + 1];
            double trust = (j < static_cast<int>(prev.size()) && j < static_cast<int>(prev2.size()))
                               ? 10.0 * std::abs(prev[j] - prev2[j])
                               : std::numeric_limits<double>::infinity();
            auto z = detail::newton_pullback(m, cur[j + 1], guess, trust);
            if (!z) {
                ok = false;
                break;
            }
            cur[j] = *z;
        }
        if (!ok) {
            out.diverged = true;
            out.diverged_step = lv.emit >= 0 ? lv.emit : static_cast<int>(out.samples.size());
            break;
        }
        if (lv.emit >= 0) out.samples.push_back({lv.t, cur[0], true});
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return out;
}

struct Landing {
    Complex point{};
    bool converged{false};
};

// Last sample plus a Cauchy-style flag: converged when every sample in the
// last decade of potential stays within tol of the endpoint.
inline Landing landing_estimate(const RayTrace& t, double tol = 1e-6) {
    if (t.samples.empty()) return {Complex{}, false};
    const RaySample& last = t.samples.back();
    if (t.samples.size() < 2 || t.diverged) return {last.z, false};
    for (auto it = t.samples.rbegin();
         it != t.samples.rend() && it->potential <= 10.0 * last.potential; ++it)
        if (std::abs(it->z - last.z) > tol) return {last.z, false};
    return {last.z, true};
}

} // namespace trilam
