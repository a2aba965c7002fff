// Renders three parameter slices to PPM files in the working directory:
// the two reference slices at lambda = 1 and lambda = -1, and the
// lambda = 0.5 slice with the attracted region and the renormalizability
// overlay. Optional argument: resolution (default 256).

#include <trilam/trilam.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using namespace trilam;

namespace {

Rgb escape_shade(const SliceCell& c, int max_iter) {
    if (c.classification() == SliceClass::BothBounded) return {0, 0, 0};
    double t = static_cast<double>(max_iter - c.fast_iter) / max_iter;
    auto v = static_cast<unsigned char>(55 + static_cast<int>(200.0 * t + 0.5));
    return {v, v, v};
}

void write(const std::string& name, const Raster<Rgb>& img) {
    std::ofstream f(name, std::ios::binary);
    write_ppm(f, img, "demo: " + name);
    std::printf("wrote %s (%dx%d)\n", name.c_str(), img.width_px, img.height_px);
}

} // namespace

int main(int argc, char** argv) {
    int res = argc > 1 ? std::atoi(argv[1]) : 256;
    if (res < 16) res = 16;
    const Window win{0.0, 0.0, 8.0, 8.0};
    const int max_iter = 400;

    for (double lam : {1.0, -1.0}) {
        SliceSpec spec{Complex(lam, 0.0), win, res, res, max_iter, SlicePlane::A};
        Raster<SliceCell> cells = render_slice(spec);
        Raster<Rgb> img = Raster<Rgb>::create(win, res, res);
        for (int y = 0; y < res; ++y)
            for (int x = 0; x < res; ++x) img.at(x, y) = escape_shade(cells.at(x, y), max_iter);
        write(lam > 0 ? "slice_lambda_plus1.ppm" : "slice_lambda_minus1.ppm", img);
    }

    SliceSpec spec{Complex(0.5, 0.0), win, res, res, max_iter, SlicePlane::A};
    Raster<SliceCell> cells = render_slice(spec);
    auto marked = imr_heuristic(cells);
    Raster<Rgb> img = Raster<Rgb>::create(win, res, res);
    for (int y = 0; y < res; ++y)
        for (int x = 0; x < res; ++x) {
            const SliceCell& c = cells.at(x, y);
            Rgb px = c.phd ? Rgb{40, 90, 200} : escape_shade(c, max_iter);
            if (marked.ok() && marked.value().at(x, y) && (((x + y) >> 2) & 1))
                px = Rgb{230, 60, 60};
            img.at(x, y) = px;
        }
    write("slice_lambda_half_imr.ppm", img);
    return 0;
}
