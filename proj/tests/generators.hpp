#pragma once

// Small seeded generators for property tests.

#include <cstdint>
#include <random>

#include "ncm/exact_arith.hpp"

namespace gen {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0xC0FFEE);
    return engine;
}

inline long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline long nonzero(long bound) {
    long x = integer(-bound, bound - 1);
    return x >= 0 ? x + 1 : x;
}

inline ncm::Rational rational(long num_bound = 300, long den_bound = 40) {
    return ncm::make_rational(nonzero(num_bound), integer(1, den_bound));
}

inline ncm::QSqrt2 qsqrt2(long bound = 20) {
    return ncm::QSqrt2(ncm::make_rational(integer(-bound, bound), integer(1, 6)),
                       ncm::make_rational(integer(-bound, bound), integer(1, 6)));
}

}  // namespace gen
