#pragma once

// Pixel grids over rectangular windows of the complex plane, with PPM and
// CSV serialization.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace trilam {

struct Window {
    double cx{}, cy{};         // center
    double width{}, height{};  // extent
};

template <class Cell>
struct Raster {
    Window window{};
    int width_px{};
    int height_px{};
    std::vector<Cell> cells; // row-major, row 0 at the top

    static Raster create(const Window& w, int wpx, int hpx) {
        return {w, wpx, hpx, std::vector<Cell>(static_cast<std::size_t>(wpx) * hpx)};
    }

    Cell& at(int x, int y) { return cells[static_cast<std::size_t>(y) * width_px + x]; }
    const Cell& at(int x, int y) const {
        return cells[static_cast<std::size_t>(y) * width_px + x];
    }

    // Pixel centers. For a window centered at 0 the map is odd: pixel
    // (W-1-x, H-1-y) lands exactly on the negation of pixel (x, y).
    std::complex<double> point_at(int x, int y) const {
        double re = window.cx + (x + 0.5 - width_px / 2.0) * (window.width / width_px);
        double im = window.cy + (height_px / 2.0 - y - 0.5) * (window.height / height_px);
        return {re, im};
    }
};

struct Rgb {
    std::uint8_t r{}, g{}, b{};
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace detail {

inline void write_hash_comment(std::ostream& os, const std::string& text) {
    std::size_t start = 0;
    for (;;) {
        std::size_t nl = text.find('\n', start);
        os << "# " << text.substr(start, nl == std::string::npos ? nl : nl - start) << "\n";
        if (nl == std::string::npos) return;
        start = nl + 1;
    }
}

} // namespace detail

inline void write_ppm(std::ostream& os, const Raster<Rgb>& img, const std::string& comment = {}) {
    os << "P6\n";
    if (!comment.empty()) detail::write_hash_comment(os, comment);
    os << img.width_px << " " << img.height_px << "\n255\n";
    for (const Rgb& c : img.cells) {
        os.put(static_cast<char>(c.r));
        os.put(static_cast<char>(c.g));
        os.put(static_cast<char>(c.b));
    }
}

// One row of integer codes per pixel row; comment lines start with '#'.
template <class Cell, class Fn>
void write_csv(std::ostream& os, const Raster<Cell>& img, const std::string& comment, Fn code) {
    if (!comment.empty()) detail::write_hash_comment(os, comment);
    for (int y = 0; y < img.height_px; ++y) {
        for (int x = 0; x < img.width_px; ++x) {
            if (x) os << ',';
            os << code(img.at(x, y));
        }
        os << '\n';
    }
}

} // namespace trilam
