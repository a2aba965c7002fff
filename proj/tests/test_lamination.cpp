#include "helpers.hpp"

#include <trilam/lamination.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <variant>

using namespace trilam;

namespace {

Major make_major(const char* a, const char* b, const char* hs, const char* he) {
    auto r = classify_major(Chord(ang(a), ang(b)), Arc{ang(hs), ang(he)});
    REQUIRE(r.ok());
    return r.value();
}

QuadGap make_gap(const char* a, const char* b, const char* hs, const char* he) {
    auto g = QuadGap::analyze(make_major(a, b, hs, he));
    REQUIRE(g.ok());
    return g.value();
}

RationalAngle tau_at(const QuadGap& g, const char* a) {
    auto r = g.tau(ang(a));
    REQUIRE(r.ok());
    return r.value();
}

} // namespace

TEST_CASE("chords normalize and reject degenerate input") {
    Chord c(ang("2/3"), ang("1/3"));
    REQUIRE(c.a == ang("1/3"));
    REQUIRE(c.b == ang("2/3"));
    REQUIRE(c == Chord(ang("1/3"), ang("2/3")));
    REQUIRE_THROWS_AS(Chord(ang("1/2"), ang("1/2")), std::invalid_argument);
}

TEST_CASE("chord_image maps endpoints and detects critical chords") {
    REQUIRE(chord_image(Chord(ang("1/3"), ang("2/3"))) == ChordImage(ang("0")));
    REQUIRE(chord_image(Chord(ang("1/4"), ang("3/4"))) ==
            ChordImage(Chord(ang("1/4"), ang("3/4"))));
    REQUIRE(chord_image(Chord(ang("7/26"), ang("21/26"))) ==
            ChordImage(Chord(ang("21/26"), ang("11/26"))));
}

TEST_CASE("classify_major gates hole length then types the chord") {
    auto crit = classify_major(Chord(ang("1/3"), ang("2/3")), {ang("1/3"), ang("2/3")});
    REQUIRE(crit.ok());
    REQUIRE(crit.value().kind == MajorKind::RegularCritical);
    REQUIRE(arc_length(crit.value().hole) == Fraction(1, 3));

    auto per = classify_major(Chord(ang("7/26"), ang("21/26")), {ang("21/26"), ang("7/26")});
    REQUIRE(per.ok());
    REQUIRE(per.value().kind == MajorKind::Periodic);
    REQUIRE(per.value().period == 3);
    REQUIRE(arc_length(per.value().hole) == Fraction(6, 13));

    auto diam = classify_major(Chord(ang("0"), ang("1/2")), {ang("0"), ang("1/2")});
    REQUIRE(diam.ok());
    REQUIRE(diam.value().kind == MajorKind::Periodic);
    REQUIRE(diam.value().period == 1);

    auto sh = classify_major(Chord(ang("0"), ang("1/10")), {ang("0"), ang("1/10")});
    REQUIRE_FALSE(sh.ok());
    REQUIRE(sh.error() == MajorError::HoleTooShort);

    auto lo = classify_major(Chord(ang("0"), ang("2/3")), {ang("0"), ang("2/3")});
    REQUIRE_FALSE(lo.ok());
    REQUIRE(lo.error() == MajorError::HoleTooLong);

    // hole length 5/12 is in range, but the chord orbit never returns
    auto nt = classify_major(Chord(ang("0"), ang("5/12")), {ang("0"), ang("5/12")});
    REQUIRE_FALSE(nt.ok());
    REQUIRE(nt.error() == MajorError::NotCriticalNotPeriodic);

    REQUIRE_THROWS_AS(
        classify_major(Chord(ang("1/3"), ang("2/3")), Arc{ang("1/3"), ang("1/2")}),
        std::invalid_argument);
}

TEST_CASE("classify_major rejects every random chord with an out-of-range hole") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> den(2, 97), num(0, 96);
    int out_of_range = 0;
    for (int i = 0; i < 2000; ++i) {
        RationalAngle a(num(rng), den(rng)), b(num(rng), den(rng));
        if (a == b) continue;
        Arc hole{a, b};
        auto r = classify_major(Chord(a, b), hole);
        Fraction len = arc_length(hole);
        if (len < Fraction(1, 3)) {
            ++out_of_range;
            REQUIRE_FALSE(r.ok());
            REQUIRE(r.error() == MajorError::HoleTooShort);
        } else if (Fraction(1, 2) < len) {
            ++out_of_range;
            REQUIRE_FALSE(r.ok());
            REQUIRE(r.error() == MajorError::HoleTooLong);
        }
    }
    REQUIRE(out_of_range > 1000);
}

TEST_CASE("gap basis membership follows orbit avoidance") {
    Major crit = make_major("1/3", "2/3", "1/3", "2/3");
    REQUIRE(in_gap_basis(crit, ang("1/4")));
    REQUIRE_FALSE(in_gap_basis(crit, ang("1/2")));
    REQUIRE(in_gap_basis(crit, ang("1/3")));

    // independent characterization: exactly the angles with a ternary
    // expansion avoiding digit 1
    for (int q = 1; q <= 40; ++q)
        for (int p = 0; p < q; ++p) {
            RationalAngle a(p, q);
            REQUIRE(in_gap_basis(crit, a) == ternary_tau_oracle(a).has_value());
        }
}

TEST_CASE("gap_basis_members enumerates denominator-bounded basis angles") {
    Major crit = make_major("1/3", "2/3", "1/3", "2/3");
    REQUIRE(gap_basis_members(crit, 4) ==
            std::vector<RationalAngle>{ang("0"), ang("1/4"), ang("1/3"), ang("2/3"), ang("3/4")});
    REQUIRE(gap_basis_members(crit, 1) == std::vector<RationalAngle>{ang("0")});

    Major per = make_major("7/26", "21/26", "21/26", "7/26");
    REQUIRE(gap_basis_members(per, 26) ==
            std::vector<RationalAngle>{ang("7/26"), ang("11/26"), ang("1/2"), ang("21/26")});
}

TEST_CASE("critical gap tau matches the ternary digit substitution oracle") {
    QuadGap g = make_gap("1/3", "2/3", "1/3", "2/3");
    REQUIRE(g.major().kind == MajorKind::RegularCritical);
    REQUIRE(g.zero_fiber().lo == ang("0"));
    REQUIRE(g.zero_fiber().point());
    REQUIRE(g.half_fiber().lo == ang("1/3"));
    REQUIRE(g.half_fiber().hi == ang("2/3"));

    REQUIRE(tau_at(g, "0") == ang("0"));
    REQUIRE(tau_at(g, "1/4") == ang("1/3"));
    REQUIRE(tau_at(g, "1/3") == ang("1/2"));
    REQUIRE(tau_at(g, "2/3") == ang("1/2"));
    REQUIRE(tau_at(g, "3/4") == ang("2/3"));

    auto bad = g.tau(ang("1/2"));
    REQUIRE_FALSE(bad.ok());
    REQUIRE(bad.error() == TauError::NotInBasis);

    for (const RationalAngle& a : g.basis_members(40)) {
        auto got = g.tau(a);
        auto want = ternary_tau_oracle(a);
        REQUIRE(got.ok());
        REQUIRE(want.has_value());
        REQUIRE(got.value() == *want);
        REQUIRE(g.tau(sigma(3, a)).value() == sigma(2, got.value()));
    }
}

TEST_CASE("periodic gap with a three-cycle major has the expected tau table") {
    QuadGap g = make_gap("3/13", "15/26", "3/13", "15/26");
    REQUIRE(g.major().kind == MajorKind::Periodic);
    REQUIRE(g.major().period == 3);
    REQUIRE(g.zero_fiber().point());
    REQUIRE(g.zero_fiber().lo == ang("0"));
    REQUIRE(g.half_fiber().point());
    REQUIRE(g.half_fiber().lo == ang("2/3"));

    REQUIRE(tau_at(g, "0") == ang("0"));
    REQUIRE(tau_at(g, "2/3") == ang("1/2"));
    REQUIRE(tau_at(g, "3/13") == ang("2/7"));
    REQUIRE(tau_at(g, "15/26") == ang("2/7"));
    REQUIRE(tau_at(g, "1/13") == ang("1/7"));
    REQUIRE(tau_at(g, "5/26") == ang("1/7"));
    REQUIRE(tau_at(g, "9/13") == ang("4/7"));
    REQUIRE(tau_at(g, "19/26") == ang("4/7"));
    REQUIRE(tau_at(g, "17/26") == ang("3/7"));
    REQUIRE(tau_at(g, "23/26") == ang("5/7"));
    REQUIRE(tau_at(g, "25/26") == ang("6/7"));
}

TEST_CASE("invariant diameter majors are fibers of their own gaps") {
    QuadGap g = make_gap("0", "1/2", "0", "1/2");
    REQUIRE(g.major().period == 1);
    REQUIRE(g.zero_fiber().lo == ang("0"));
    REQUIRE(g.zero_fiber().hi == ang("1/2"));
    REQUIRE(g.half_fiber().lo == ang("2/3"));
    REQUIRE(g.half_fiber().hi == ang("5/6"));
    REQUIRE(tau_at(g, "0") == ang("0"));
    REQUIRE(tau_at(g, "1/2") == ang("0"));
    REQUIRE(tau_at(g, "2/3") == ang("1/2"));
    REQUIRE(tau_at(g, "5/6") == ang("1/2"));
    REQUIRE(tau_at(g, "13/24") == ang("1/6"));

    // same chord, opposite hole designation
    QuadGap h = make_gap("0", "1/2", "1/2", "0");
    REQUIRE(h.zero_fiber().lo == ang("1/2"));
    REQUIRE(h.zero_fiber().hi == ang("0"));
    REQUIRE(h.half_fiber().lo == ang("1/6"));
    REQUIRE(h.half_fiber().hi == ang("1/3"));
    REQUIRE(tau_at(h, "1/6") == ang("1/2"));
    REQUIRE(tau_at(h, "1/8") == ang("1/3"));
}

TEST_CASE("analyze reports the reason when no invariant gap exists") {
    auto no_sibling = QuadGap::analyze(make_major("7/26", "21/26", "21/26", "7/26"));
    REQUIRE_FALSE(no_sibling.ok());
    REQUIRE(no_sibling.error() == GapError::NoSiblingFiber);

    auto two_fixed = QuadGap::analyze(make_major("1/4", "3/4", "1/4", "3/4"));
    REQUIRE_FALSE(two_fixed.ok());
    REQUIRE(two_fixed.error() == GapError::MultipleFixedFibers);

    auto collapse1 = QuadGap::analyze(make_major("0", "2/3", "2/3", "0"));
    REQUIRE_FALSE(collapse1.ok());
    REQUIRE(collapse1.error() == GapError::EdgeCollapseViolation);

    auto collapse2 = QuadGap::analyze(make_major("1/6", "1/2", "1/6", "1/2"));
    REQUIRE_FALSE(collapse2.ok());
    REQUIRE(collapse2.error() == GapError::EdgeCollapseViolation);
}

TEST_CASE("sigma3 maps basis members back into the basis") {
    for (const QuadGap& g : {make_gap("1/3", "2/3", "1/3", "2/3"),
                             make_gap("3/13", "15/26", "3/13", "15/26")}) {
        for (const RationalAngle& a : g.basis_members(30))
            REQUIRE(g.in_basis(sigma(3, a)));
    }
}

TEST_CASE("quadratic ray arguments double under sigma3") {
    std::mt19937 rng(7);
    for (const QuadGap& g : {make_gap("1/3", "2/3", "1/3", "2/3"),
                             make_gap("3/13", "15/26", "3/13", "15/26")}) {
        auto members = g.basis_members(50);
        REQUIRE(members.size() > 10);
        std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
        for (int i = 0; i < 50; ++i) {
            const RationalAngle& gamma = members[pick(rng)];
            auto lhs = g.ray_quadratic_argument(sigma(3, gamma));
            auto rhs = g.ray_quadratic_argument(gamma);
            REQUIRE(lhs.ok());
            REQUIRE(rhs.ok());
            REQUIRE(lhs.value() == sigma(2, rhs.value()));
        }
    }
}
