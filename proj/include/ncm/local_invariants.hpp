#pragma once

// Hilbert symbols at every place of Q, Hasse-Witt invariants, discriminant
// classes and the local equivalence test for diagonal forms over Q.

#include <cstdint>
#include <span>
#include <string>

#include "ncm/exact_arith.hpp"
#include "ncm/quadratic_form.hpp"

namespace ncm {

class Place {
public:
    enum class Kind { real, odd_prime, dyadic };

    static Place real() { return Place(Kind::real, 0); }
    static Place dyadic() { return Place(Kind::dyadic, 2); }
    /// p must be an odd prime.
    static Place odd_prime(std::uint64_t p);

    Kind kind() const { return kind_; }
    /// 0 for the real place, 2 for the dyadic place.
    std::uint64_t prime() const { return prime_; }

    friend bool operator==(const Place&, const Place&) = default;

private:
    Place(Kind kind, std::uint64_t prime) : kind_(kind), prime_(prime) {}
    Kind kind_;
    std::uint64_t prime_;
};

std::string to_string(const Place& place);

int hilbert_real(const Rational& a, const Rational& b);
int hilbert_odd_p(const Rational& a, const Rational& b, std::uint64_t p);
int hilbert_dyadic(const Rational& a, const Rational& b);
int hilbert(const Rational& a, const Rational& b, const Place& place);

/// Hilbert symbol in Q_p of the images of a, b in Q(sqrt 2) under the
/// embedding selected by root (root^2 = 2 mod p, p odd).
int hilbert_embedded(const QSqrt2& a, const QSqrt2& b, std::uint64_t p, std::uint64_t root);

/// Product of (a_i, a_j) over i < j. Empty and singleton lists give 1.
int hasse_witt(std::span<const Rational> coefficients, const Place& place);
int hasse_witt_embedded(std::span<const QSqrt2> coefficients, std::uint64_t p, std::uint64_t root);

/// Square-free representative of prod a_i modulo (Q*)^2.
Integer discriminant_class(std::span<const Rational> coefficients);

/// Class of x in Q_v* / (Q_v*)^2 as a pair of small integers:
/// real -> (sign, 0); odd p -> (v mod 2, legendre of unit); dyadic -> (v mod 2, unit mod 8).
std::pair<int, int> local_square_class(const Rational& x, const Place& place);

struct LocalInvariantRecord {
    std::size_t rank = 0;
    Integer discriminant_class;
    int epsilon = 1;
};

LocalInvariantRecord local_invariants(const QuadraticForm& form, const Place& place);

/// Same rank, same discriminant in Q_v*/(Q_v*)^2 and same epsilon.
bool locally_equivalent(const QuadraticForm& q1, const QuadraticForm& q2, const Place& place);

}  // namespace ncm
