#pragma once

// The two one-parameter families of signature (n,1) forms
//
//   q_a = a x1^2 + x2^2 + ... + xn^2 - 2 x_{n+1}^2          over Q
//   r_a = a x1^2 + x2^2 + ... + xn^2 - sqrt2 x_{n+1}^2      over Q(sqrt 2)
//
// together with the local invariants that separate their commensurability
// classes and the prime searches producing the parameters.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ncm/exact_arith.hpp"
#include "ncm/quadratic_form.hpp"

namespace ncm {

QuadraticForm make_q(const Integer& a, int n);
QuadraticForm make_r(const Integer& a, int n);

/// Drops the first coefficient (the hyperplane x1 = 0).
QuadraticForm restrict_to_hyperplane(const QuadraticForm& form);

/// Isotropy of q_a is guaranteed for n >= 4 even when the bounded search
/// finds nothing.
struct MeyerGuaranteed {};
using IsotropyWitness = std::variant<std::vector<Integer>, MeyerGuaranteed>;

inline constexpr int kIsotropySearchBound = 10;

IsotropyWitness isotropy_witness_q(const Integer& a, int n);

struct EpsilonResult {
    int value = 1;
    /// False when the closed form's congruence conditions failed and the
    /// value came from the generic Hasse-Witt product alone.
    bool closed_form = true;
};

/// epsilon of q_a at an odd prime p. Closed form (-1)^{v_p(a)} applies when
/// (-1/p) = 1 and (2/p) = -1; always cross-checked against hasse_witt.
EpsilonResult epsilon_q_at(const Integer& a, int n, std::uint64_t p);

/// epsilon of r_a in Q_p for p = 1 mod 8, with Q(sqrt 2) embedded by root.
int epsilon_r_at(const Integer& a, int n, std::uint64_t p, std::uint64_t root);

enum class CertificateMethod { discriminant_ratio, epsilon_at_prime };

std::string to_string(CertificateMethod method);

/// Proof that f1 is not isometric to lambda*f2 for any scalar lambda.
struct NonCommensurabilityCertificate {
    CertificateMethod method = CertificateMethod::epsilon_at_prime;
    std::optional<std::uint64_t> witness_prime;
    /// epsilon_at_prime: the two epsilon values at the witness prime.
    /// discriminant_ratio: square-free classes of the two first coefficients
    /// (the discriminants relative to the shared hyperplane restriction).
    std::pair<Integer, Integer> detail;
    /// Square-free class of the discriminant ratio (discriminant_ratio only).
    Integer ratio_class = 1;
};

/// One-sided: returns a certificate or nothing (inconclusive). Both forms
/// must come from the same family (same field, same hyperplane restriction).
std::optional<NonCommensurabilityCertificate> noncommensurability_certificate(const QuadraticForm& f1,
                                                                              const QuadraticForm& f2);

struct PrimeSearchReport {
    std::uint64_t prime = 0;
    std::map<std::string, int> conditions;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> gauss_representation;
};

/// First `count` primes p = 5 mod 8.
std::vector<PrimeSearchReport> search_primes_isotropic(std::size_t count);

/// First `count` primes p = 1 mod 8 for which 2 is not a fourth power mod p.
std::vector<PrimeSearchReport> search_primes_anisotropic(std::size_t count);

/// 2^((p-1)/4) = 1 mod p. p must be a prime = 1 mod 4.
bool two_is_fourth_power(std::uint64_t p);

/// (x, y) with p = x^2 + 64 y^2, x, y >= 0, or nothing.
std::optional<std::pair<std::uint64_t, std::uint64_t>> gauss_representation(std::uint64_t p);

/// The explicit parameter lists used for the building blocks.
inline const std::vector<std::uint64_t> kIsotropicPrimes{5, 13, 29, 37, 53, 61};
inline const std::vector<std::uint64_t> kAnisotropicPrimes{17, 41, 97, 137, 193, 241};

}  // namespace ncm
