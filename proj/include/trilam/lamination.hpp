#pragma once

// Chords of the circle, majors of sigma3-invariant quadratic gaps, the gap
// basis (angles whose forward orbit avoids the open major hole), and the
// monotone degree-one map tau that collapses gap edges and semiconjugates
// sigma3 on the basis with sigma2.

#include <trilam/angle.hpp>
#include <trilam/result.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace trilam {

enum class MajorKind { RegularCritical, Periodic };
enum class MajorError { HoleTooShort, HoleTooLong, NotCriticalNotPeriodic };
enum class GapError {
    MajorOrbitEntersHole,
    NoFixedFiber,
    MultipleFixedFibers,
    NoSiblingFiber,
    BlockOverlap,
    BasisPointInsideBlock,
    SemiconjugacyFailed,
    EdgeCollapseViolation,
    MonotonicityViolation,
};
enum class TauError { NotInBasis };

inline const char* to_string(MajorKind k) {
    return k == MajorKind::RegularCritical ? "RegularCritical" : "Periodic";
}

inline const char* to_string(MajorError e) {
    switch (e) {
        case MajorError::HoleTooShort: return "HoleTooShort";
        case MajorError::HoleTooLong: return "HoleTooLong";
        default: return "NotCriticalNotPeriodic";
    }
}

inline const char* to_string(GapError e) {
    switch (e) {
        case GapError::MajorOrbitEntersHole: return "MajorOrbitEntersHole";
        case GapError::NoFixedFiber: return "NoFixedFiber";
        case GapError::MultipleFixedFibers: return "MultipleFixedFibers";
        case GapError::NoSiblingFiber: return "NoSiblingFiber";
        case GapError::BlockOverlap: return "BlockOverlap";
        case GapError::BasisPointInsideBlock: return "BasisPointInsideBlock";
        case GapError::SemiconjugacyFailed: return "SemiconjugacyFailed";
        case GapError::EdgeCollapseViolation: return "EdgeCollapseViolation";
        default: return "MonotonicityViolation";
    }
}

inline const char* to_string(TauError) { return "NotInBasis"; }

struct Chord {
    RationalAngle a, b; // normalized so that a < b

    Chord(RationalAngle x, RationalAngle y) : a(std::move(x)), b(std::move(y)) {
        if (a == b) throw std::invalid_argument("chord endpoints must be distinct");
        if (b < a) std::swap(a, b);
    }

    friend bool operator==(const Chord&, const Chord&) = default;
    friend auto operator<=>(const Chord&, const Chord&) = default;
};

// sigma3 of a chord: the chord of the endpoint images, or the single image
// point when the chord is critical.
using ChordImage = std::variant<Chord, RationalAngle>;

inline ChordImage chord_image(const Chord& c) {
    RationalAngle ia = sigma(3, c.a), ib = sigma(3, c.b);
    if (ia == ib) return ia;
    return Chord(ia, ib);
}

struct Major {
    Chord chord;
    Arc hole;         // the designated major hole; endpoints match the chord's
    MajorKind kind;
    std::size_t period; // 0 unless kind == Periodic
};

// Gate and type classification for a candidate major. The hole must be
// designated explicitly by the caller; when both complementary arcs have
// length 1/2 this is the only way to break the tie.
inline Result<Major, MajorError> classify_major(const Chord& c, const Arc& hole) {
    bool endpoints_match = (hole.start == c.a && hole.end == c.b) ||
                           (hole.start == c.b && hole.end == c.a);
    if (!endpoints_match)
        throw std::invalid_argument("hole endpoints must coincide with the chord endpoints");
    Fraction len = arc_length(hole);
    if (len < Fraction(1, 3)) return MajorError::HoleTooShort;
    if (Fraction(1, 2) < len) return MajorError::HoleTooLong;
    if (sigma(3, c.a) == sigma(3, c.b))
        return Major{c, hole, MajorKind::RegularCritical, 0};
    std::vector<Chord> seen{c};
    Chord x = c;
    for (;;) {
        ChordImage img = chord_image(x);
        if (std::holds_alternative<RationalAngle>(img))
            return MajorError::NotCriticalNotPeriodic;
        x = std::get<Chord>(img);
        if (x == c) return Major{c, hole, MajorKind::Periodic, seen.size()};
        if (std::find(seen.begin(), seen.end(), x) != seen.end())
            return MajorError::NotCriticalNotPeriodic;
        seen.push_back(x);
    }
}

// Basis membership: the forward orbit (finite for rational angles) must
// avoid the open major hole.
inline bool in_gap_basis(const Major& m, const RationalAngle& a) {
    for (const RationalAngle& p : orbit_structure(3, a).points)
        if (in_open_arc(p, m.hole)) return false;
    return true;
}

// All basis angles with reduced denominator <= bound, ascending from 0.
inline std::vector<RationalAngle> gap_basis_members(const Major& m, unsigned bound) {
    std::vector<RationalAngle> out;
    for (unsigned q = 1; q <= bound; ++q)
        for (unsigned p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            RationalAngle a(p, q);
            if (in_gap_basis(m, a)) out.push_back(a);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Closed positively-oriented arc [lo -> hi] that tau collapses to a single
// binary point; lo == hi for one-point fibers.
struct FiberBlock {
    RationalAngle lo, hi;

    bool point() const { return lo == hi; }
    bool strictly_inside(const RationalAngle& x) const {
        return !point() && in_open_arc(x, Arc{lo, hi});
    }
    bool contains(const RationalAngle& x) const {
        return x == lo || x == hi || strictly_inside(x);
    }
};

// Invariant quadratic gap built from a valid major. Construction locates the
// tau-fibers over the two sigma2-preimages of 0 (the blocks Z over 0 and Z'
// over 1/2), splits the rest of the circle into the two itinerary arcs, fixes
// the digit labeling by the semiconjugacy test on the major endpoints, and
// validates the whole construction on a denominator-bounded basis sample.
// Any failure is reported as a machine-readable reason.
class QuadGap {
public:
    static Result<QuadGap, GapError> analyze(const Major& m, unsigned validation_den = 30);

    const Major& major() const { return major_; }
    const FiberBlock& zero_fiber() const { return zero_; }
    const FiberBlock& half_fiber() const { return half_; }

    bool in_basis(const RationalAngle& a) const { return in_gap_basis(major_, a); }
    std::vector<RationalAngle> basis_members(unsigned bound) const {
        return gap_basis_members(major_, bound);
    }

    Result<RationalAngle, TauError> tau(const RationalAngle& a) const {
        if (!in_basis(a)) return TauError::NotInBasis;
        Eval v = value(a, arc0_digit_);
        if (!std::holds_alternative<RationalAngle>(v))
            throw std::logic_error("tau evaluation failed on a validated gap");
        return std::get<RationalAngle>(v);
    }

    // Quadratic argument of the ray with argument a: identical to tau.
    Result<RationalAngle, TauError> ray_quadratic_argument(const RationalAngle& a) const {
        return tau(a);
    }

private:
    enum class Fail { MidBlock, SidedMismatch };
    enum class Side { Plus, Minus };
    using Eval = std::variant<RationalAngle, Fail>;

    QuadGap(Major m, FiberBlock zero, FiberBlock half, int arc0_digit)
        : major_(std::move(m)),
          zero_(std::move(zero)),
          half_(std::move(half)),
          arc0_{zero_.hi, half_.lo},
          arc1_{half_.hi, zero_.lo},
          arc0_digit_(arc0_digit) {}

    struct Step {
        RationalAngle norm;
        int digit;
    };

    // Resolve one itinerary step: points on a fiber block are normalized to
    // the block endpoint matching the chosen side, interior points keep their
    // arc digit, and a point strictly inside a block has no itinerary.
    std::optional<Step> normalize_step(const RationalAngle& y, Side s, int d0) const {
        int d1 = 1 - d0;
        if (y == zero_.lo || y == zero_.hi) {
            if (zero_.point()) return Step{zero_.lo, s == Side::Plus ? d0 : d1};
            return s == Side::Plus ? Step{zero_.hi, d0} : Step{zero_.lo, d1};
        }
        if (y == half_.lo || y == half_.hi) {
            if (half_.point()) return Step{half_.lo, s == Side::Plus ? d1 : d0};
            return s == Side::Plus ? Step{half_.hi, d1} : Step{half_.lo, d0};
        }
        if (zero_.strictly_inside(y) || half_.strictly_inside(y)) return std::nullopt;
        if (in_open_arc(y, arc0_)) return Step{y, d0};
        return Step{y, d1};
    }

    static RationalAngle value_from_digits(const std::vector<int>& digits, std::size_t cut) {
        BigInt prefix = 0, cycle = 0;
        for (std::size_t i = 0; i < cut; ++i) prefix = 2 * prefix + digits[i];
        for (std::size_t i = cut; i < digits.size(); ++i) cycle = 2 * cycle + digits[i];
        std::size_t k = digits.size() - cut;
        BigInt cycle_den = (BigInt(1) << k) - 1;
        return RationalAngle(prefix * cycle_den + cycle, (BigInt(1) << cut) * cycle_den);
    }

    Eval sided_value(const RationalAngle& x, Side s, int d0) const {
        std::map<RationalAngle, std::size_t> index;
        std::vector<int> digits;
        RationalAngle y = x;
        for (;;) {
            std::optional<Step> st = normalize_step(y, s, d0);
            if (!st) return Fail::MidBlock;
            auto [it, fresh] = index.emplace(st->norm, digits.size());
            if (!fresh) return value_from_digits(digits, it->second);
            digits.push_back(st->digit);
            y = sigma(3, st->norm);
        }
    }

    // The one-sided itineraries approach x from either side of every fiber
    // block it meets; a well-formed gap gives both sides the same value.
    Eval value(const RationalAngle& x, int d0) const {
        Eval plus = sided_value(x, Side::Plus, d0);
        Eval minus = sided_value(x, Side::Minus, d0);
        if (std::holds_alternative<Fail>(plus)) return plus;
        if (std::holds_alternative<Fail>(minus)) return minus;
        if (!(std::get<RationalAngle>(plus) == std::get<RationalAngle>(minus)))
            return Fail::SidedMismatch;
        return plus;
    }

    // Does the unordered pair {x, y} iterate onto the major chord before its
    // orbit repeats or degenerates? Collapsed edges must.
    bool pair_reaches_major(const RationalAngle& x, const RationalAngle& y) const {
        std::set<Chord> seen;
        Chord c(x, y);
        for (;;) {
            if (c == major_.chord) return true;
            if (!seen.insert(c).second) return false;
            ChordImage img = chord_image(c);
            if (std::holds_alternative<RationalAngle>(img)) return false;
            c = std::get<Chord>(img);
        }
    }

    std::optional<GapError> validate(unsigned den_bound) const;

    Major major_;
    FiberBlock zero_, half_;
    Arc arc0_, arc1_;
    int arc0_digit_;
};

inline std::optional<GapError> QuadGap::validate(unsigned den_bound) const {
    const RationalAngle& ha = major_.chord.a;
    const RationalAngle& hb = major_.chord.b;

    // digit labeling must make the major endpoints collapse and semiconjugate
    Eval va = value(ha, arc0_digit_);
    Eval vb = value(hb, arc0_digit_);
    for (const Eval* v : {&va, &vb}) {
        if (std::holds_alternative<Fail>(*v))
            return std::get<Fail>(*v) == Fail::MidBlock ? GapError::BasisPointInsideBlock
                                                        : GapError::SemiconjugacyFailed;
    }
    if (!(std::get<RationalAngle>(va) == std::get<RationalAngle>(vb)))
        return GapError::SemiconjugacyFailed;

    auto check_semiconjugacy = [&](const RationalAngle& x, const RationalAngle& tx)
        -> std::optional<GapError> {
        Eval img = value(sigma(3, x), arc0_digit_);
        if (std::holds_alternative<Fail>(img))
            return std::get<Fail>(img) == Fail::MidBlock ? GapError::BasisPointInsideBlock
                                                         : GapError::SemiconjugacyFailed;
        if (!(std::get<RationalAngle>(img) == sigma(2, tx)))
            return GapError::SemiconjugacyFailed;
        return std::nullopt;
    };
    if (auto e = check_semiconjugacy(ha, std::get<RationalAngle>(va))) return e;
    if (auto e = check_semiconjugacy(hb, std::get<RationalAngle>(vb))) return e;

    std::vector<RationalAngle> members = gap_basis_members(major_, den_bound);
    std::vector<RationalAngle> tau_of(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (zero_.strictly_inside(members[i]) || half_.strictly_inside(members[i]))
            return GapError::BasisPointInsideBlock;
        Eval v = value(members[i], arc0_digit_);
        if (std::holds_alternative<Fail>(v))
            return std::get<Fail>(v) == Fail::MidBlock ? GapError::BasisPointInsideBlock
                                                       : GapError::SemiconjugacyFailed;
        tau_of[i] = std::get<RationalAngle>(v);
        if (auto e = check_semiconjugacy(members[i], tau_of[i])) return e;
    }

    // tau may identify exactly the endpoint pairs of iterated major pullbacks
    std::map<RationalAngle, std::vector<RationalAngle>> fibers;
    for (std::size_t i = 0; i < members.size(); ++i)
        fibers[tau_of[i]].push_back(members[i]);
    for (const auto& [t, pts] : fibers) {
        if (pts.size() == 1) continue;
        if (pts.size() > 2) return GapError::EdgeCollapseViolation;
        if (!pair_reaches_major(pts[0], pts[1])) return GapError::EdgeCollapseViolation;
    }

    // cyclic monotonicity with degree one: the sampled tau values must wind
    // around the circle exactly once
    if (members.size() >= 2) {
        Fraction total(0, 1);
        for (std::size_t i = 0; i < members.size(); ++i) {
            RationalAngle inc = tau_of[(i + 1) % members.size()] - tau_of[i];
            total = Fraction(total.num * inc.den + inc.num * total.den, total.den * inc.den);
        }
        if (!(total == Fraction(1, 1))) return GapError::MonotonicityViolation;
    }
    return std::nullopt;
}

inline Result<QuadGap, GapError> QuadGap::analyze(const Major& m, unsigned validation_den) {
    if (!in_gap_basis(m, m.chord.a) || !in_gap_basis(m, m.chord.b))
        return GapError::MajorOrbitEntersHole;

    const RationalAngle zero(0, 1), half(1, 2), third(1, 3), two_thirds(2, 3);

    // locate Z, the fiber over 0: an invariant major is itself the fiber,
    // otherwise exactly one sigma3-fixed point must survive in the basis
    ChordImage img = chord_image(m.chord);
    bool invariant = std::holds_alternative<Chord>(img) && std::get<Chord>(img) == m.chord;
    std::optional<FiberBlock> z;
    if (invariant) {
        z = FiberBlock{m.hole.start, m.hole.end};
        for (const RationalAngle& f : {zero, half})
            if (f != m.chord.a && f != m.chord.b && in_gap_basis(m, f))
                return GapError::MultipleFixedFibers;
    } else {
        std::vector<RationalAngle> fixed;
        for (const RationalAngle& f : {zero, half})
            if (f != m.chord.a && f != m.chord.b && in_gap_basis(m, f)) fixed.push_back(f);
        if (fixed.empty()) return GapError::NoFixedFiber;
        if (fixed.size() > 1) return GapError::MultipleFixedFibers;
        z = FiberBlock{fixed[0], fixed[0]};
    }

    // locate Z', the sibling fiber over 1/2, among the sigma3-preimages of
    // the Z endpoints on the far side of the circle
    std::optional<FiberBlock> zp;
    if (invariant) {
        RationalAngle lo = m.hole.start + two_thirds, hi = m.hole.end + third;
        if (!in_gap_basis(m, lo) || !in_gap_basis(m, hi)) return GapError::NoSiblingFiber;
        zp = FiberBlock{lo, hi};
    } else {
        RationalAngle p1 = z->lo + third, p2 = z->lo + two_thirds;
        bool b1 = in_gap_basis(m, p1), b2 = in_gap_basis(m, p2);
        if (b1 && b2) zp = FiberBlock{p1, p2};
        else if (b1) zp = FiberBlock{p1, p1};
        else if (b2) zp = FiberBlock{p2, p2};
        else return GapError::NoSiblingFiber;
    }

    if (z->contains(zp->lo) || z->contains(zp->hi) || zp->contains(z->lo) ||
        zp->contains(z->hi))
        return GapError::BlockOverlap;

    unsigned den = validation_den;
    for (const BigInt& d : {m.chord.a.den, m.chord.b.den})
        if (d <= 100) den = std::max(den, 3 * d.convert_to<unsigned>());

    QuadGap g0(m, *z, *zp, 0);
    std::optional<GapError> e0 = g0.validate(den);
    if (!e0) return g0;
    QuadGap g1(m, *z, *zp, 1);
    std::optional<GapError> e1 = g1.validate(den);
    if (!e1) return g1;
    if (*e0 == GapError::SemiconjugacyFailed && *e1 != GapError::SemiconjugacyFailed)
        return *e1;
    return *e0;
}

} // namespace trilam
