#pragma once

// Command-line front end. Parsing is CLI11; structured reports are JSON.
// Exit codes: 0 success, 2 usage error, 1 domain error with a
// machine-readable reason on the diagnostic stream.

#include <trilam/angle.hpp>
#include <trilam/cubic.hpp>
#include <trilam/julia.hpp>
#include <trilam/lamination.hpp>
#include <trilam/parallel.hpp>
#include <trilam/raster.hpp>
#include <trilam/rays.hpp>
#include <trilam/seq_lemma.hpp>
#include <trilam/slice.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace trilam::cli {

namespace detail {

struct UsageError {
    std::string message;
};

struct DomainError {
    std::string reason;
};

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_complex(Complex z) {
    return fmt_double(z.real()) + "," + fmt_double(z.imag());
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string::npos ? p : p - start));
        if (p == std::string::npos) return out;
        start = p + 1;
    }
}

inline double parse_double(const std::string& flag, const std::string& s) {
    try {
        std::size_t idx = 0;
        double v = std::stod(s, &idx);
        if (idx != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError{flag + ": not a number: '" + s + "'"};
    }
}

inline int parse_int(const std::string& flag, const std::string& s) {
    try {
        std::size_t idx = 0;
        int v = std::stoi(s, &idx);
        if (idx != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError{flag + ": not an integer: '" + s + "'"};
    }
}

inline Complex parse_complex(const std::string& flag, const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw UsageError{flag + ": expected re,im"};
    return {parse_double(flag, parts[0]), parse_double(flag, parts[1])};
}

inline Window parse_window(const std::string& flag, const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 4) throw UsageError{flag + ": expected cx,cy,w,h"};
    Window w{parse_double(flag, parts[0]), parse_double(flag, parts[1]),
             parse_double(flag, parts[2]), parse_double(flag, parts[3])};
    if (!(w.width > 0.0) || !(w.height > 0.0))
        throw UsageError{flag + ": width and height must be positive"};
    return w;
}

inline std::pair<int, int> parse_res(const std::string& flag, const std::string& s) {
    auto parts = split(s, 'x');
    if (parts.size() != 2) throw UsageError{flag + ": expected WxH"};
    int w = parse_int(flag, parts[0]);
    int h = parse_int(flag, parts[1]);
    if (w < 1 || h < 1) throw UsageError{flag + ": resolution must be at least 1x1"};
    return {w, h};
}

inline RationalAngle parse_angle(const std::string& flag, const std::string& s) {
    try {
        return RationalAngle::parse(s);
    } catch (const std::exception& e) {
        throw UsageError{flag + ": " + e.what()};
    }
}

inline std::pair<RationalAngle, RationalAngle> parse_angle_pair(const std::string& flag,
                                                                const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw UsageError{flag + ": expected two angles as p/q,r/s"};
    return {parse_angle(flag, parts[0]), parse_angle(flag, parts[1])};
}

using FlagList = std::vector<std::pair<std::string, std::string>>;

inline std::string flags_line(const std::string& cmd, const FlagList& flags) {
    std::string s = cmd;
    for (const auto& [k, v] : flags) {
        s += " --" + k + " " + v;
    }
    return s;
}

inline nlohmann::json flags_json(const std::string& cmd, const FlagList& flags) {
    nlohmann::json o = nlohmann::json::object();
    o["command"] = cmd;
    for (const auto& [k, v] : flags) o[k] = v;
    return o;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError{"CannotOpenOutput " + path};
    return f;
}

// shared gap construction for the gap and tau subcommands
inline QuadGap build_gap(const std::string& major_s, const std::string& hole_s) {
    auto [ca, cb] = parse_angle_pair("--major", major_s);
    auto [hs, he] = parse_angle_pair("--hole", hole_s);
    if (ca == cb) throw DomainError{"InvalidChord"};
    Chord chord{ca, cb};
    bool hole_matches = (hs == chord.a && he == chord.b) || (hs == chord.b && he == chord.a);
    if (!hole_matches) throw UsageError{"--hole: endpoints must match --major"};
    auto major = classify_major(chord, Arc{hs, he});
    if (!major.ok()) throw DomainError{to_string(major.error())};
    auto gap = QuadGap::analyze(major.value());
    if (!gap.ok()) throw DomainError{to_string(gap.error())};
    return gap.value();
}

inline Rgb slice_pixel(const SliceCell& c, int max_iter, bool phd_layer) {
    if (phd_layer && c.phd) return Rgb{40, 90, 200};
    if (c.classification() == SliceClass::BothBounded) return Rgb{0, 0, 0};
    double t = static_cast<double>(max_iter - c.fast_iter) / max_iter;
    int v = 55 + static_cast<int>(200.0 * t + 0.5);
    auto ch = static_cast<unsigned char>(std::clamp(v, 0, 255));
    return Rgb{ch, ch, ch};
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    using nlohmann::json;

    CLI::App app{"cubic-family toolkit: laminations, external rays, parameter slices"};
    app.name("trilam");
    app.require_subcommand(1);

    // orbit
    auto* orbit_cmd = app.add_subcommand("orbit", "Orbit structure of an angle under x -> d*x mod 1");
    unsigned orbit_d = 3;
    std::string orbit_angle;
    orbit_cmd->add_option("--d", orbit_d, "multiplier of the angle map")
        ->required()
        ->check(CLI::Range(1u, 1000000u));
    orbit_cmd->add_option("--angle", orbit_angle, "rational angle p/q")->required();

    // gap
    auto* gap_cmd = app.add_subcommand("gap", "Analyze the invariant quadratic gap of a major chord");
    std::string gap_major, gap_hole, gap_json_path;
    unsigned gap_den_bound = 27;
    gap_cmd->add_option("--major", gap_major, "major chord endpoints p/q,r/s")->required();
    gap_cmd->add_option("--hole", gap_hole, "designated hole arc start,end (endpoints of the major)")
        ->required();
    gap_cmd->add_option("--den-bound", gap_den_bound,
                        "list basis angles with denominator up to this bound");
    gap_cmd->add_option("--json", gap_json_path, "write the JSON report to this file");

    // tau
    auto* tau_cmd = app.add_subcommand("tau", "Quadratic argument of one gap-basis angle");
    std::string tau_major, tau_hole, tau_angle;
    tau_cmd->add_option("--major", tau_major, "major chord endpoints p/q,r/s")->required();
    tau_cmd->add_option("--hole", tau_hole, "designated hole arc start,end")->required();
    tau_cmd->add_option("--angle", tau_angle, "rational angle p/q")->required();

    // render-julia
    auto* julia_cmd = app.add_subcommand("render-julia", "Escape-time image of one cubic Julia set");
    std::string jl_lambda, jl_b = "0,0", jl_window, jl_res, jl_out;
    int jl_max_iter = 0;
    unsigned jl_threads = 0;
    julia_cmd->add_option("--lambda", jl_lambda, "multiplier at 0, as re,im")->required();
    julia_cmd->add_option("--b", jl_b, "quadratic coefficient, as re,im");
    julia_cmd->add_option("--window", jl_window, "view rectangle cx,cy,w,h")->required();
    julia_cmd->add_option("--res", jl_res, "image size WxH")->required();
    julia_cmd->add_option("--max-iter", jl_max_iter, "orbit iteration budget")
        ->required()
        ->check(CLI::Range(1, 100000000));
    julia_cmd->add_option("--out", jl_out, "output PPM path")->required();
    julia_cmd->add_option("--threads", jl_threads,
                          "worker threads (0 = TRILAM_THREADS or hardware)");

    // render-slice
    auto* slice_cmd =
        app.add_subcommand("render-slice", "Parameter slice at fixed lambda in the a = b^2 plane");
    std::string sl_lambda, sl_window, sl_res, sl_out, sl_csv;
    std::string sl_layer = "escape", sl_plane = "a";
    int sl_max_iter = 0;
    unsigned sl_threads = 0;
    slice_cmd->add_option("--lambda", sl_lambda, "multiplier at 0, as re,im")->required();
    slice_cmd->add_option("--window", sl_window, "view rectangle cx,cy,w,h")->required();
    slice_cmd->add_option("--res", sl_res, "image size WxH")->required();
    slice_cmd->add_option("--max-iter", sl_max_iter, "orbit iteration budget")
        ->required()
        ->check(CLI::Range(1, 100000000));
    slice_cmd->add_option("--out", sl_out, "output PPM path")->required();
    slice_cmd->add_option("--layer", sl_layer, "escape | phd | imr (phd and imr need |lambda| < 1)")
        ->check(CLI::IsMember({"escape", "phd", "imr"}));
    slice_cmd->add_option("--plane", sl_plane, "a (default) or b (debug: pixel is b itself)")
        ->check(CLI::IsMember({"a", "b"}));
    slice_cmd->add_option("--csv", sl_csv, "also write the classification grid as CSV codes");
    slice_cmd->add_option("--threads", sl_threads,
                          "worker threads (0 = TRILAM_THREADS or hardware)");

    // trace-ray
    auto* ray_cmd = app.add_subcommand("trace-ray", "External ray polyline as CSV");
    std::string ry_lambda, ry_b = "0,0", ry_angle, ry_out;
    double ry_t_start = 3.0, ry_t_end = 1e-6;
    int ry_steps = 200;
    ray_cmd->add_option("--lambda", ry_lambda, "multiplier at 0, as re,im")->required();
    ray_cmd->add_option("--b", ry_b, "quadratic coefficient, as re,im");
    ray_cmd->add_option("--angle", ry_angle, "external argument p/q")->required();
    ray_cmd->add_option("--t-start", ry_t_start, "starting potential (e^t outside escape radius)");
    ray_cmd->add_option("--t-end", ry_t_end, "final potential");
    ray_cmd->add_option("--steps", ry_steps, "number of geometric potential steps")
        ->check(CLI::Range(1, 10000000));
    ray_cmd->add_option("--out", ry_out, "output CSV path (default stdout)");

    // check-seq
    auto* seq_cmd =
        app.add_subcommand("check-seq", "Worst-case decay recursion and its contraction check");
    double sq_q = 0.0, sq_b = 0.0, sq_s0 = 1.0, sq_eps = 0.0;
    long sq_n_max = 400;
    std::string sq_schedule = "quadratic", sq_json_path;
    seq_cmd->add_option("--q", sq_q, "decay factor in (0,1)")->required();
    seq_cmd->add_option("--b", sq_b, "additive kick at bad steps")->required();
    seq_cmd->add_option("--s0", sq_s0, "initial value");
    seq_cmd->add_option("--bad-schedule", sq_schedule, "quadratic | exp | list:n1,n2,...");
    seq_cmd->add_option("--n-max", sq_n_max, "horizon")->check(CLI::Range(0l, 100000000l));
    seq_cmd->add_option("--eps", sq_eps, "slack in the contraction inequality")->required();
    seq_cmd->add_option("--json", sq_json_path, "write the JSON report to this file");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (orbit_cmd->parsed()) {
            RationalAngle a = parse_angle("--angle", orbit_angle);
            FlagList flags{{"d", std::to_string(orbit_d)}, {"angle", a.str()}};
            OrbitStructure os = orbit_structure(orbit_d, a);
            out << "# flags: " << flags_line("orbit", flags) << '\n';
            out << "preperiod " << os.preperiod << " period " << os.period << " orbit";
            for (const RationalAngle& p : os.points) out << ' ' << p.str();
            out << '\n';
            return 0;
        }

        if (gap_cmd->parsed()) {
            QuadGap gap = build_gap(gap_major, gap_hole);
            const Major& major = gap.major();
            FlagList flags{{"major", major.chord.a.str() + "," + major.chord.b.str()},
                           {"hole", major.hole.start.str() + "," + major.hole.end.str()},
                           {"den-bound", std::to_string(gap_den_bound)}};
            if (!gap_json_path.empty()) flags.emplace_back("json", gap_json_path);

            json doc;
            doc["schema"] = "cubic-gap/1";
            doc["flags"] = flags_json("gap", flags);
            json mj;
            mj["endpoints"] = {major.chord.a.str(), major.chord.b.str()};
            mj["hole"] = {major.hole.start.str(), major.hole.end.str()};
            mj["kind"] = to_string(major.kind);
            if (major.kind == MajorKind::Periodic) mj["period"] = major.period;
            doc["major"] = mj;
            json basis = json::array();
            json table = json::array();
            for (const RationalAngle& g : gap_basis_members(major, gap_den_bound)) {
                basis.push_back(g.str());
                auto image = gap.tau(g);
                table.push_back({g.str(), image.value().str()});
            }
            doc["basis"] = basis;
            doc["tau_table"] = table;

            if (gap_json_path.empty()) {
                out << doc.dump(2) << '\n';
            } else {
                std::ofstream f = open_output(gap_json_path);
                f << doc.dump(2) << '\n';
            }
            return 0;
        }

        if (tau_cmd->parsed()) {
            QuadGap gap = build_gap(tau_major, tau_hole);
            RationalAngle a = parse_angle("--angle", tau_angle);
            auto image = gap.tau(a);
            if (!image.ok()) throw DomainError{to_string(image.error())};
            FlagList flags{{"major", tau_major}, {"hole", tau_hole}, {"angle", a.str()}};
            out << "# flags: " << flags_line("tau", flags) << '\n';
            out << image.value().str() << '\n';
            return 0;
        }

        if (julia_cmd->parsed()) {
            Complex lambda = parse_complex("--lambda", jl_lambda);
            Complex b = parse_complex("--b", jl_b);
            Window win = parse_window("--window", jl_window);
            auto [w, h] = parse_res("--res", jl_res);
            FlagList flags{{"lambda", fmt_complex(lambda)},
                           {"b", fmt_complex(b)},
                           {"window", fmt_double(win.cx) + "," + fmt_double(win.cy) + "," +
                                          fmt_double(win.width) + "," + fmt_double(win.height)},
                           {"res", std::to_string(w) + "x" + std::to_string(h)},
                           {"max-iter", std::to_string(jl_max_iter)},
                           {"threads", std::to_string(jl_threads)},
                           {"out", jl_out}};
            CubicMap m{lambda, b};
            Raster<std::int32_t> codes = julia_raster(m, win, w, h, jl_max_iter, jl_threads);
            Raster<Rgb> img = colorize(codes, jl_max_iter);
            std::ofstream f = open_output(jl_out);
            write_ppm(f, img, "flags: " + flags_line("render-julia", flags));
            return 0;
        }

        if (slice_cmd->parsed()) {
            Complex lambda = parse_complex("--lambda", sl_lambda);
            Window win = parse_window("--window", sl_window);
            auto [w, h] = parse_res("--res", sl_res);
            FlagList flags{{"lambda", fmt_complex(lambda)},
                           {"window", fmt_double(win.cx) + "," + fmt_double(win.cy) + "," +
                                          fmt_double(win.width) + "," + fmt_double(win.height)},
                           {"res", std::to_string(w) + "x" + std::to_string(h)},
                           {"max-iter", std::to_string(sl_max_iter)},
                           {"layer", sl_layer},
                           {"plane", sl_plane},
                           {"threads", std::to_string(sl_threads)},
                           {"out", sl_out}};
            if (!sl_csv.empty()) flags.emplace_back("csv", sl_csv);

            bool wants_phd = sl_layer == "phd" || sl_layer == "imr";
            if (wants_phd && !(std::abs(lambda) < 1.0)) throw DomainError{"PhdLayerUnavailable"};

            SliceSpec spec{lambda, win, w, h, sl_max_iter,
                           sl_plane == "a" ? SlicePlane::A : SlicePlane::B};
            Raster<SliceCell> cells = render_slice(spec, sl_threads);

            Raster<std::uint8_t> marked;
            if (sl_layer == "imr") {
                auto res = imr_heuristic(cells);
                if (!res.ok()) throw DomainError{to_string(res.error())};
                marked = res.value();
            }

            Raster<Rgb> img = Raster<Rgb>::create(win, w, h);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    Rgb px = slice_pixel(cells.at(x, y), sl_max_iter, wants_phd);
                    if (sl_layer == "imr" && marked.at(x, y) && (((x + y) >> 2) & 1))
                        px = Rgb{230, 60, 60};
                    img.at(x, y) = px;
                }
            std::ofstream f = open_output(sl_out);
            std::string comment = "flags: " + flags_line("render-slice", flags);
            write_ppm(f, img, comment);
            if (!sl_csv.empty()) {
                std::ofstream c = open_output(sl_csv);
                write_csv(c, cells, comment, [](const SliceCell& cell) {
                    return static_cast<int>(cell.classification());
                });
            }
            return 0;
        }

        if (ray_cmd->parsed()) {
            Complex lambda = parse_complex("--lambda", ry_lambda);
            Complex b = parse_complex("--b", ry_b);
            RationalAngle a = parse_angle("--angle", ry_angle);
            FlagList flags{{"lambda", fmt_complex(lambda)}, {"b", fmt_complex(b)},
                           {"angle", a.str()},              {"t-start", fmt_double(ry_t_start)},
                           {"t-end", fmt_double(ry_t_end)}, {"steps", std::to_string(ry_steps)}};
            if (!ry_out.empty()) flags.emplace_back("out", ry_out);
            CubicMap m{lambda, b};
            RayTrace trace;
            try {
                trace = trace_external_ray(m, a, ry_t_start, ry_t_end, ry_steps);
            } catch (const std::invalid_argument& e) {
                throw UsageError{std::string("--t-start/--t-end/--steps: ") + e.what()};
            }
            std::ofstream file;
            std::ostream* os = &out;
            if (!ry_out.empty()) {
                file = open_output(ry_out);
                os = &file;
            }
            *os << "# flags: " << flags_line("trace-ray", flags) << '\n';
            *os << "step,potential,re,im,converged_flag\n";
            for (std::size_t k = 0; k < trace.samples.size(); ++k) {
                const RaySample& s = trace.samples[k];
                *os << k << ',' << fmt_double(s.potential) << ',' << fmt_double(s.z.real()) << ','
                    << fmt_double(s.z.imag()) << ',' << (s.newton_ok ? 1 : 0) << '\n';
            }
            if (trace.diverged)
                *os << "# newton_divergence at step " << trace.diverged_step << '\n';
            return 0;
        }

        if (seq_cmd->parsed()) {
            SeqSpec spec;
            spec.q = sq_q;
            spec.b = sq_b;
            spec.s0 = sq_s0;
            spec.n_max = sq_n_max;
            if (sq_schedule == "quadratic") {
                spec.bad_subscripts = quadratic_schedule(sq_n_max);
            } else if (sq_schedule == "exp") {
                spec.bad_subscripts = exponential_schedule(sq_n_max);
            } else if (sq_schedule.rfind("list:", 0) == 0) {
                for (const std::string& piece : split(sq_schedule.substr(5), ','))
                    spec.bad_subscripts.push_back(parse_int("--bad-schedule", piece));
            } else {
                throw UsageError{"--bad-schedule: expected quadratic, exp, or list:n1,n2,..."};
            }
            FlagList flags{{"q", fmt_double(sq_q)},
                           {"b", fmt_double(sq_b)},
                           {"s0", fmt_double(sq_s0)},
                           {"bad-schedule", sq_schedule},
                           {"n-max", std::to_string(sq_n_max)},
                           {"eps", fmt_double(sq_eps)}};
            if (!sq_json_path.empty()) flags.emplace_back("json", sq_json_path);

            std::vector<double> s;
            Result<ContractionReport, SeqError> checked = [&] {
                try {
                    s = simulate(spec);
                    return check_contraction(spec, sq_eps);
                } catch (const std::invalid_argument& e) {
                    throw UsageError{std::string("--q/--b/--s0/--eps: ") + e.what()};
                }
            }();
            if (!checked.ok()) {
                const SeqError& e = checked.error();
                err << "error: GapTooSmall pair " << e.pair_index << " gap " << e.gap
                    << " needs " << e.n_required << '\n';
                return 1;
            }
            const ContractionReport& report = checked.value();

            if (!sq_json_path.empty()) {
                json doc;
                doc["schema"] = "cubic-seq/1";
                doc["flags"] = flags_json("check-seq", flags);
                doc["n_required"] = report.n_required;
                doc["eps"] = report.eps;
                doc["s_final"] = s.back();
                json pairs = json::array();
                for (const PairCheck& pc : report.pairs)
                    pairs.push_back({{"index", pc.index},
                                     {"n_from", pc.n_from},
                                     {"n_to", pc.n_to},
                                     {"gap", pc.gap},
                                     {"s_from", pc.s_from},
                                     {"s_to", pc.s_to},
                                     {"bound", pc.bound},
                                     {"holds", pc.holds}});
                doc["pairs"] = pairs;
                doc["all_hold"] = report.all_hold;
                std::ofstream f = open_output(sq_json_path);
                f << doc.dump(2) << '\n';
            }
            out << "# flags: " << flags_line("check-seq", flags) << '\n';
            out << "n_required " << report.n_required << '\n';
            out << "bad_count " << spec.bad_subscripts.size() << '\n';
            out << "s_final " << fmt_double(s.back()) << '\n';
            for (const PairCheck& pc : report.pairs)
                out << "pair " << pc.index << " n " << pc.n_from << " -> " << pc.n_to << " gap "
                    << pc.gap << " s " << fmt_double(pc.s_from) << " -> " << fmt_double(pc.s_to)
                    << " bound " << fmt_double(pc.bound) << (pc.holds ? " holds" : " violated")
                    << '\n';
            out << "all_hold " << (report.all_hold ? "true" : "false") << '\n';
            return 0;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.message << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.reason << '\n';
        return 1;
    }
    return 2;
}

} // namespace trilam::cli
