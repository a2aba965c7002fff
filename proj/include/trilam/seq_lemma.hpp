#pragma once

// Worst-case simulation of the backward-stability recursion: a positive
// sequence decays by q per step, except at a sparse set of bad subscripts
// where it takes the extremal kick s -> 2q*s + b. With gaps between bad
// subscripts eventually exceeding the contraction depth N (q^N < 1/8 and
// q^(N-1) b < eps), consecutive bad values satisfy s' <= s/4 + eps.

#include <trilam/result.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace trilam {

struct SeqSpec {
    double q{};
    double b{};
    double s0{};
    std::vector<long> bad_subscripts; // strictly increasing, >= 0
    long n_max{};
};

inline void validate(const SeqSpec& spec) {
    if (!(spec.q > 0.0) || !(spec.q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
    if (!(spec.b > 0.0)) throw std::invalid_argument("b must be positive");
    if (!(spec.s0 > 0.0)) throw std::invalid_argument("s0 must be positive");
    if (spec.n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    for (std::size_t i = 0; i < spec.bad_subscripts.size(); ++i) {
        if (spec.bad_subscripts[i] < 0)
            throw std::invalid_argument("bad subscripts must be nonnegative");
        if (i > 0 && spec.bad_subscripts[i] <= spec.bad_subscripts[i - 1])
            throw std::invalid_argument("bad subscripts must increase strictly");
    }
}

inline std::vector<double> simulate(const SeqSpec& spec) {
    validate(spec);
    std::vector<double> s(static_cast<std::size_t>(spec.n_max) + 1);
    s[0] = spec.s0;
    std::size_t next_bad = 0;
    for (long n = 0; n < spec.n_max; ++n) {
        while (next_bad < spec.bad_subscripts.size() && spec.bad_subscripts[next_bad] < n)
            ++next_bad;
        bool bad = next_bad < spec.bad_subscripts.size() && spec.bad_subscripts[next_bad] == n;
        double cur = s[static_cast<std::size_t>(n)];
        s[static_cast<std::size_t>(n) + 1] = bad ? 2.0 * spec.q * cur + spec.b : spec.q * cur;
    }
    return s;
}

// Minimal N with q^N < 1/8 and q^(N-1) * b < eps.
inline int contraction_depth(double q, double b, double eps) {
    if (!(q > 0.0) || !(q < 1.0) || !(b > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("need q in (0,1), b > 0, eps > 0");
    int n = 1;
    double qn = q;     // q^n
    double qprev = 1.0; // q^(n-1)
    while (!(qn < 0.125 && qprev * b < eps)) {
        qprev = qn;
        qn *= q;
        ++n;
        if (n > (1 << 20)) throw std::invalid_argument("contraction depth overflow");
    }
    return n;
}

struct PairCheck {
    std::size_t index{}; // position of the pair in the bad list
    long n_from{};
    long n_to{};
    long gap{};
    double s_from{};
    double s_to{};
    double bound{}; // s_from / 4 + eps
    bool holds{};
};

struct ContractionReport {
    int n_required{};
    double eps{};
    std::vector<PairCheck> pairs;
    bool all_hold{true};
};

struct SeqError {
    std::size_t pair_index{}; // first consecutive bad pair whose gap is below N
    long gap{};
    int n_required{};
};

inline Result<ContractionReport, SeqError> check_contraction(const SeqSpec& spec, double eps) {
    using Out = Result<ContractionReport, SeqError>;
    validate(spec);
    ContractionReport report;
    report.n_required = contraction_depth(spec.q, spec.b, eps);
    report.eps = eps;

    std::vector<long> bads;
    for (long n : spec.bad_subscripts)
        if (n <= spec.n_max) bads.push_back(n);
    for (std::size_t i = 0; i + 1 < bads.size(); ++i) {
        long gap = bads[i + 1] - bads[i];
        if (gap < report.n_required) return Out(SeqError{i, gap, report.n_required});
    }

    std::vector<double> s = simulate(spec);
    for (std::size_t i = 0; i + 1 < bads.size(); ++i) {
        PairCheck pc;
        pc.index = i;
        pc.n_from = bads[i];
        pc.n_to = bads[i + 1];
        pc.gap = pc.n_to - pc.n_from;
        pc.s_from = s[static_cast<std::size_t>(pc.n_from)];
        pc.s_to = s[static_cast<std::size_t>(pc.n_to)];
        pc.bound = pc.s_from / 4.0 + eps;
        pc.holds = pc.s_to <= pc.bound;
        report.all_hold = report.all_hold && pc.holds;
        report.pairs.push_back(pc);
    }
    return Out(std::move(report));
}

// Ready-made bad-subscript schedules for the CLI and tests.
inline std::vector<long> quadratic_schedule(long n_max) {
    std::vector<long> out;
    for (long i = 1; i * i <= n_max; ++i) out.push_back(i * i);
    return out;
}

inline std::vector<long> exponential_schedule(long n_max) {
    std::vector<long> out;
    for (long v = 2; v <= n_max; v *= 2) out.push_back(v);
    return out;
}

} // namespace trilam
