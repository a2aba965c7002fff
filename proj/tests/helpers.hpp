#pragma once

#include <trilam/angle.hpp>

#include <map>
#include <optional>
#include <string_view>
#include <vector>

inline trilam::RationalAngle ang(std::string_view s) {
    return trilam::RationalAngle::parse(s);
}

// Independent tau oracle for the critical gap of {1/3, 2/3}: expand x in
// ternary using digits {0, 2} only (working in [0, 1], so a remainder of
// exactly 1 keeps emitting 2s), substitute 0 -> 0 and 2 -> 1, and read the
// eventually periodic result as a binary expansion. Returns nothing when x
// has no such expansion, i.e. when its orbit enters the open middle third.
inline std::optional<trilam::RationalAngle> ternary_tau_oracle(const trilam::RationalAngle& x) {
    using trilam::BigInt;
    const BigInt den = x.den;
    BigInt num = x.num;
    std::map<BigInt, std::size_t> seen;
    std::vector<int> bits;
    for (;;) {
        auto [it, fresh] = seen.emplace(num, bits.size());
        if (!fresh) {
            std::size_t cut = it->second;
            BigInt prefix = 0, cycle = 0;
            for (std::size_t i = 0; i < cut; ++i) prefix = 2 * prefix + bits[i];
            for (std::size_t i = cut; i < bits.size(); ++i) cycle = 2 * cycle + bits[i];
            BigInt cycle_den = (BigInt(1) << (bits.size() - cut)) - 1;
            return trilam::RationalAngle(prefix * cycle_den + cycle,
                                         (BigInt(1) << cut) * cycle_den);
        }
        if (3 * num <= den) {
            bits.push_back(0);
            num = 3 * num;
        } else if (3 * num >= 2 * den) {
            bits.push_back(1);
            num = 3 * num - 2 * den;
        } else {
            return std::nullopt;
        }
    }
}
