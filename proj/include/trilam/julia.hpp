#pragma once

// Escape-time rasters of filled Julia sets for the cubic family.

#include <trilam/cubic.hpp>
#include <trilam/parallel.hpp>
#include <trilam/raster.hpp>

#include <cstdint>

namespace trilam {

// Per-pixel first escaping iterate, or -1 when bounded through max_iter.
inline Raster<std::int32_t> julia_raster(const CubicMap& m, const Window& w, int wpx, int hpx,
                                         int max_iter, unsigned workers = 0) {
    auto img = Raster<std::int32_t>::create(w, wpx, hpx);
    const double radius = m.escape_radius();
    par_for(img.cells.size(), workers, [&](std::size_t i) {
        int x = static_cast<int>(i % wpx);
        int y = static_cast<int>(i / wpx);
        OrbitResult r = escape_test(m, img.point_at(x, y), max_iter, radius);
        img.cells[i] = r.status == OrbitStatus::Escaped ? static_cast<std::int32_t>(r.iterations)
                                                        : -1;
    });
    return img;
}

// Bounded pixels are black; escaping pixels fade from white (fast escape)
// down to a dim gray at the boundary.
inline Rgb julia_palette(std::int32_t code, int max_iter) {
    if (code < 0) return {0, 0, 0};
    int g = 55 + static_cast<int>(200.0 * (max_iter - code) / max_iter + 0.5);
    if (g > 255) g = 255;
    auto v = static_cast<std::uint8_t>(g);
    return {v, v, v};
}

inline Raster<Rgb> colorize(const Raster<std::int32_t>& codes, int max_iter) {
    auto img = Raster<Rgb>::create(codes.window, codes.width_px, codes.height_px);
    for (std::size_t i = 0; i < codes.cells.size(); ++i)
        img.cells[i] = julia_palette(codes.cells[i], max_iter);
    return img;
}

} // namespace trilam
