// Walks the two reference invariant gaps and prints their basis angles with
// quadratic arguments, showing the lamination API end to end.

#include <trilam/trilam.hpp>

#include <cstdio>

using namespace trilam;

namespace {

void show(const char* title, const Chord& chord, const Arc& hole, unsigned den_bound) {
    std::printf("%s\n", title);
    auto major = classify_major(chord, hole);
    if (!major.ok()) {
        std::printf("  rejected: %s\n", to_string(major.error()));
        return;
    }
    const Major& m = major.value();
    std::printf("  kind %s", to_string(m.kind));
    if (m.kind == MajorKind::Periodic) std::printf(" period %d", m.period);
    std::printf(", hole length %s\n", arc_length(m.hole).str().c_str());

    auto gap = QuadGap::analyze(m);
    if (!gap.ok()) {
        std::printf("  no invariant gap: %s\n", to_string(gap.error()));
        return;
    }
    const QuadGap& g = gap.value();
    for (const RationalAngle& x : gap_basis_members(m, den_bound))
        std::printf("  tau(%6s) = %s\n", x.str().c_str(), g.tau(x).value().str().c_str());
}

} // namespace

int main() {
    show("critical major {1/3, 2/3}", Chord{RationalAngle(1, 3), RationalAngle(2, 3)},
         Arc{RationalAngle(1, 3), RationalAngle(2, 3)}, 27);
    show("periodic major {3/13, 15/26}", Chord{RationalAngle(3, 13), RationalAngle(15, 26)},
         Arc{RationalAngle(3, 13), RationalAngle(15, 26)}, 26);
    show("gate-only major {7/26, 21/26}", Chord{RationalAngle(7, 26), RationalAngle(21, 26)},
         Arc{RationalAngle(21, 26), RationalAngle(7, 26)}, 26);
    return 0;
}
