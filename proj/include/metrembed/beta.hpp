#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "metrembed/errors.hpp"

namespace metrembed {

// Monotone threshold schedule beta : {1, 2, ...} -> N driving the
// meta-embedding's level sets S_i = { x_j : j <= beta(i) }.
struct BetaSchedule {
    enum class Kind { exponential, doubly_exponential, custom };

    Kind kind = Kind::exponential;
    int t = 1;                          // exponential: beta(i) = 2^(t*i)
    std::vector<std::uint64_t> table;   // custom, 1-based via table[i-1]

    static constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

    // Saturates instead of overflowing; callers only compare against ranks.
    std::uint64_t eval(int i) const {
        if (i < 1) throw bad_parameter("beta is defined for levels i >= 1");
        switch (kind) {
            case Kind::exponential: {
                std::int64_t e = static_cast<std::int64_t>(t) * i;
                return e >= 63 ? kSaturated : (1ull << e);
            }
            case Kind::doubly_exponential: {
                if (i >= 6) return kSaturated;  // 2^(2^6) overflows 64 bits
                return 1ull << (1ull << i);
            }
            case Kind::custom:
                if (i > static_cast<int>(table.size()))
                    throw schedule_exhausted("custom schedule has " + std::to_string(table.size()) +
                                             " levels, asked for " + std::to_string(i));
                return table[i - 1];
        }
        return 0;
    }

    // Largest defined level, or -1 when unbounded.
    int max_level() const { return kind == Kind::custom ? static_cast<int>(table.size()) : -1; }

    std::string describe() const {
        switch (kind) {
            case Kind::exponential: return "2^(" + std::to_string(t) + "i)";
            case Kind::doubly_exponential: return "2^(2^i)";
            case Kind::custom: return "custom[" + std::to_string(table.size()) + "]";
        }
        return "?";
    }
};

// kind: "exp" (beta(i) = 2^(t*i)) or "doubly-exp" (beta(i) = 2^(2^i)).
inline BetaSchedule preset_beta(const std::string& kind, int t = 1) {
    BetaSchedule b;
    if (kind == "exp" || kind == "exponential") {
        if (t < 1) throw bad_parameter("exponential schedule needs t >= 1");
        b.kind = BetaSchedule::Kind::exponential;
        b.t = t;
    } else if (kind == "doubly-exp" || kind == "doubly-exponential") {
        b.kind = BetaSchedule::Kind::doubly_exponential;
    } else {
        throw bad_parameter("unknown beta kind '" + kind + "'");
    }
    return b;
}

inline BetaSchedule custom_beta(std::vector<std::uint64_t> table) {
    for (size_t i = 0; i < table.size(); ++i) {
        if (table[i] < 1) throw bad_parameter("beta values must be >= 1");
        if (i > 0 && table[i] < table[i - 1]) throw bad_parameter("beta must be nondecreasing");
    }
    BetaSchedule b;
    b.kind = BetaSchedule::Kind::custom;
    b.table = std::move(table);
    return b;
}

// Minimal level i >= 1 with beta(i) >= j. chi(1) = 1 for every schedule
// since beta maps into the positive integers.
inline int chi(const BetaSchedule& beta, std::int64_t j) {
    if (j < 1) throw bad_parameter("chi is defined for ranks j >= 1");
    for (int i = 1;; ++i) {
        if (beta.max_level() >= 0 && i > beta.max_level())
            throw schedule_exhausted("beta never reaches rank " + std::to_string(j));
        if (beta.eval(i) >= static_cast<std::uint64_t>(j)) return i;
    }
}

}  // namespace metrembed
