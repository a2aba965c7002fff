#pragma once

// Parameter-plane slices at fixed lambda. Pixels live in the a = b^2 plane
// (the sign of b is dynamically irrelevant), each cell classifying the two
// critical orbits, plus a heuristic marking of cells whose map looks
// immediately renormalizable: everything grid-connected to the window edge
// through the complement of the "both critical orbits attracted to 0" region.

#include <trilam/cubic.hpp>
#include <trilam/parallel.hpp>
#include <trilam/raster.hpp>
#include <trilam/result.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace trilam {

enum class SliceClass : std::uint8_t {
    BothBounded = 0,
    OneEscapes = 1,
    BothEscape = 2,
};

// Escape iteration counts of the two critical orbits, stored sorted by
// escape speed (-1 means bounded and sorts last). Sorting erases the
// artificial ordering of the critical points, so a cell is bit-identical
// whichever square root of a is used.
struct SliceCell {
    std::int32_t fast_iter{-1};
    std::int32_t slow_iter{-1};
    std::uint8_t phd{0}; // both critical orbits converge to the fixed point 0

    SliceClass classification() const {
        if (fast_iter < 0) return SliceClass::BothBounded;
        if (slow_iter < 0) return SliceClass::OneEscapes;
        return SliceClass::BothEscape;
    }
    bool operator==(const SliceCell&) const = default;
};

enum class SlicePlane : std::uint8_t {
    A, // pixel is a, map uses b = principal sqrt(a)
    B, // pixel is b directly (debugging aid)
};

struct SliceSpec {
    Complex lambda{};
    Window window{};
    int width_px{0};
    int height_px{0};
    int max_iter{0};
    SlicePlane plane{SlicePlane::A};
};

constexpr double phd_tolerance = 1e-8;

inline SliceCell slice_cell(Complex lambda, Complex b, int max_iter) {
    CubicMap m{lambda, b};
    auto [c1, c2] = m.critical_points();
    OrbitResult r1 = escape_test(m, c1, max_iter);
    OrbitResult r2 = escape_test(m, c2, max_iter);
    std::int32_t i1 = r1.status == OrbitStatus::Escaped ? r1.iterations : -1;
    std::int32_t i2 = r2.status == OrbitStatus::Escaped ? r2.iterations : -1;
    // bounded (-1) must sort after any escape count
    if (i2 >= 0 && (i1 < 0 || i2 < i1)) std::swap(i1, i2);
    SliceCell cell{i1, i2, 0};
    // the attraction test only makes sense while 0 is attracting
    if (std::abs(lambda) < 1.0 && cell.classification() == SliceClass::BothBounded &&
        iterations_to_converge(m, c1, phd_tolerance, max_iter) &&
        iterations_to_converge(m, c2, phd_tolerance, max_iter))
        cell.phd = 1;
    return cell;
}

inline Raster<SliceCell> render_slice(const SliceSpec& spec, unsigned workers = 0) {
    if (spec.width_px < 1 || spec.height_px < 1 || spec.max_iter < 1)
        throw std::invalid_argument("slice needs positive resolution and max_iter");
    Raster<SliceCell> img = Raster<SliceCell>::create(spec.window, spec.width_px, spec.height_px);
    unsigned n = resolve_workers(workers);
    par_for(img.cells.size(), n, [&](std::size_t i) {
        int x = static_cast<int>(i) % spec.width_px;
        int y = static_cast<int>(i) / spec.width_px;
        Complex p = img.point_at(x, y);
        Complex b = spec.plane == SlicePlane::A ? std::sqrt(p) : p;
        img.cells[i] = slice_cell(spec.lambda, b, spec.max_iter);
    });
    return img;
}

enum class SliceError {
    WindowTooSmall, // the attracted region leaks off the window edge
};

inline const char* to_string(SliceError e) {
    switch (e) {
        case SliceError::WindowTooSmall: return "WindowTooSmall";
    }
    return "?";
}

// Flood the complement of the phd region from the window edge with
// 4-neighbor steps. Marked cells sit in a complementary component that is
// unbounded as far as this window can tell; that only means anything when
// the phd region itself stays clear of the edge.
inline Result<Raster<std::uint8_t>, SliceError> imr_heuristic(const Raster<SliceCell>& slice) {
    using Out = Result<Raster<std::uint8_t>, SliceError>;
    const int w = slice.width_px;
    const int h = slice.height_px;
    for (int x = 0; x < w; ++x)
        if (slice.at(x, 0).phd || slice.at(x, h - 1).phd) return Out(SliceError::WindowTooSmall);
    for (int y = 0; y < h; ++y)
        if (slice.at(0, y).phd || slice.at(w - 1, y).phd) return Out(SliceError::WindowTooSmall);

    Raster<std::uint8_t> marked = Raster<std::uint8_t>::create(slice.window, w, h);
    std::vector<std::pair<int, int>> stack;
    auto push = [&](int x, int y) {
        if (x < 0 || x >= w || y < 0 || y >= h) return;
        std::uint8_t& cell = marked.at(x, y);
        if (cell || slice.at(x, y).phd) return;
        cell = 1;
        stack.emplace_back(x, y);
    };
    for (int x = 0; x < w; ++x) {
        push(x, 0);
        push(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push(0, y);
        push(w - 1, y);
    }
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        push(x - 1, y);
        push(x + 1, y);
        push(x, y - 1);
        push(x, y + 1);
    }
    return Out(std::move(marked));
}

} // namespace trilam
