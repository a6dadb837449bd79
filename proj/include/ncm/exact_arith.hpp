#pragma once

// Exact arithmetic over Q and Q(sqrt 2), p-adic valuations and residues
// modulo small primes. No floating point is used anywhere in ncm.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ncm {

using Integer = mpz_class;
/// Always canonical: lowest terms, positive denominator, zero is 0/1.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

int sign(const Integer& x);
int sign(const Rational& x);

/// Element rational_part + sqrt2_part * sqrt(2) of Q(sqrt 2).
class QSqrt2 {
public:
    QSqrt2() = default;
    QSqrt2(Rational rational_part, Rational sqrt2_part = 0);  // NOLINT: implicit from Q is intended
    QSqrt2(long value) : QSqrt2(Rational(value)) {}           // NOLINT

    static QSqrt2 sqrt2() { return {0, 1}; }

    const Rational& rational_part() const { return r_; }
    const Rational& sqrt2_part() const { return s_; }

    bool is_zero() const { return sgn(r_) == 0 && sgn(s_) == 0; }
    bool is_rational() const { return sgn(s_) == 0; }

    /// r^2 - 2 s^2; zero iff the element is zero.
    Rational norm() const;
    QSqrt2 conjugate() const { return {r_, -s_}; }

    /// Sign under sqrt2 -> +1.414.. (or -1.414.. when `conjugate_embedding`).
    int real_sign(bool conjugate_embedding = false) const;

    QSqrt2 operator-() const { return {-r_, -s_}; }
    QSqrt2& operator+=(const QSqrt2& o);
    QSqrt2& operator-=(const QSqrt2& o);
    QSqrt2& operator*=(const QSqrt2& o);
    QSqrt2& operator/=(const QSqrt2& o);

    friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
    friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
    friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
    friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
    friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.r_ == y.r_ && x.s_ == y.s_; }
    friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }

private:
    Rational r_{0};
    Rational s_{0};
};

std::string to_string(const QSqrt2& x);

// --- primes and residues -------------------------------------------------

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Rejects n that does not fit in 64 bits.
bool is_prime(const Integer& n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least non-negative residue of x modulo m.
std::uint64_t mod_u64(const Integer& x, std::uint64_t m);

/// Residue of a p-integral rational; throws when p divides the denominator.
std::uint64_t residue_mod_p(const Rational& x, std::uint64_t p);

/// Euler's criterion. p must be an odd prime.
int legendre_symbol(const Integer& u, std::uint64_t p);

/// Tonelli-Shanks. Returns the smaller root, 0 for u = 0 mod p,
/// nothing for non-residues.
std::optional<std::uint64_t> sqrt_mod(const Integer& u, std::uint64_t p);

struct ValuationDecomposition {
    long exponent = 0;
    Rational unit_part;  // v_p(unit_part) == 0

    friend bool operator==(const ValuationDecomposition&, const ValuationDecomposition&) = default;
};

/// x = p^exponent * unit_part exactly. x must be nonzero, p prime.
ValuationDecomposition padic_valuation(const Rational& x, std::uint64_t p);

/// v_p of a nonzero integer.
long valuation(const Integer& x, std::uint64_t p);

/// Residue of x under the embedding Q(sqrt 2) -> Q_p fixed by `root`
/// (root^2 = 2 mod p). The image must be a unit: decompose first otherwise.
std::uint64_t embed_sqrt2_mod_p(const QSqrt2& x, std::uint64_t p, std::uint64_t root);

/// Valuation and unit residue of x at the prime P above a split odd prime p,
/// where P is the kernel of the residue map selected by `root`.
struct SplitPrimeDecomposition {
    long exponent = 0;
    std::uint64_t unit_residue = 0;  // nonzero mod p
};
SplitPrimeDecomposition decompose_at_split_prime(const QSqrt2& x, std::uint64_t p,
                                                 std::uint64_t root);

/// c + d sqrt2 with c^2 - 2 d^2 = +-p and c + d*root = 0 mod p.
QSqrt2 split_prime_uniformizer(std::uint64_t p, std::uint64_t root);

// --- factorization and square classes --------------------------------------

/// Prime factorization of |n|, n != 0, ascending primes.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

/// Distinct odd primes dividing numerator or denominator, ascending.
std::vector<std::uint64_t> odd_prime_support(const Rational& x);

/// Signed square-free s with n = s * m^2.
Integer squarefree_part(const Integer& n);

/// Square-free integer representing x modulo (Q*)^2.
Integer squarefree_class(const Rational& x);

bool is_square(const Integer& n);
bool is_square(const Rational& x);

/// A rational c is a square in Q(sqrt 2) iff c or 2c is a square in Q.
bool is_square_in_qsqrt2(const Rational& c);

}  // namespace ncm
