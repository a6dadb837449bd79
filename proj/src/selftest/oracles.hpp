#pragma once

// Brute-force reference computations. None of these call into the
// algorithms they check; they exist only for tests and the self-test.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ncm/exact_arith.hpp"
#include "ncm/free_groups.hpp"

namespace ncm::oracle {

/// Legendre symbol by enumerating all squares mod p.
int legendre(long long u, std::uint64_t p);

/// Smallest r in [0, p) with r^2 = u mod p, by enumeration.
std::optional<std::uint64_t> sqrt_mod(long long u, std::uint64_t p);

/// Does x^4 = 2 (mod p) have a solution, by enumeration.
bool two_is_fourth_power(std::uint64_t p);

/// Any (x, y) with p = x^2 + 64 y^2, by exhaustive search over both.
bool has_x2_plus_64y2(std::uint64_t p);

/// Solvability of a x^2 + b y^2 = z^2 over Q_p, odd p: rescale a, b by
/// squares to valuations 0 or 1, then search a primitive solution mod p^2.
int hilbert_odd_p(const Rational& a, const Rational& b, std::uint64_t p);

/// Same over Q_2, with a primitive solution search mod 2^6.
int hilbert_dyadic(const Rational& a, const Rational& b);

/// Every transitive pair of permutations of k points, deduplicated up to
/// basepoint-preserving relabeling by an explicit search over all
/// relabelings. Returns one representative per subgroup.
std::vector<std::pair<Permutation, Permutation>> subgroups_brute_force(std::size_t k);

}  // namespace ncm::oracle
