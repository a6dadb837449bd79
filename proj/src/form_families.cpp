#include "ncm/form_families.hpp"

#include <algorithm>

#include "ncm/errors.hpp"
#include "ncm/local_invariants.hpp"

namespace ncm {

namespace {

std::vector<QSqrt2> family_coefficients(const Integer& a, int n, const QSqrt2& last) {
    require(sgn(a) > 0, "family parameter must be a positive integer");
    require(n >= 3, "dimension n must be at least 3");
    std::vector<QSqrt2> cs;
    cs.reserve(static_cast<std::size_t>(n) + 1);
    cs.emplace_back(Rational(a));
    for (int i = 1; i < n; ++i) cs.emplace_back(1);
    cs.push_back(last);
    return cs;
}

// Value order 0, 1, -1, 2, -2, ...
long coordinate_value(int index) { return index % 2 ? (index + 1) / 2 : -(index / 2); }

// Odometer over [-bound, bound]^len with the first coordinate running
// fastest, restricted to vectors of max-norm exactly `bound`.
std::optional<std::vector<Integer>> search_shell(const QuadraticForm& form, std::size_t offset, int bound) {
    const std::size_t len = form.rank() - offset;
    const int values = 2 * bound + 1;
    std::vector<int> idx(len, 0);
    std::vector<Integer> x(form.rank(), 0);
    for (;;) {
        bool on_shell = false;
        for (std::size_t i = 0; i < len; ++i) {
            long v = coordinate_value(idx[i]);
            x[offset + i] = v;
            on_shell = on_shell || v == bound || v == -bound;
        }
        if (on_shell && form.evaluate(x).is_zero()) return x;
        std::size_t i = 0;
        while (i < len && ++idx[i] == values) idx[i++] = 0;
        if (i == len) return std::nullopt;
    }
}

}  // namespace

QuadraticForm make_q(const Integer& a, int n) {
    return {FieldTag::rational, family_coefficients(a, n, QSqrt2(-2))};
}

QuadraticForm make_r(const Integer& a, int n) {
    return {FieldTag::q_sqrt2, family_coefficients(a, n, -QSqrt2::sqrt2())};
}

QuadraticForm restrict_to_hyperplane(const QuadraticForm& form) {
    require(form.rank() >= 2, "cannot restrict a rank-1 form");
    std::vector<QSqrt2> cs(form.coefficients().begin() + 1, form.coefficients().end());
    return {form.field(), std::move(cs)};
}

IsotropyWitness isotropy_witness_q(const Integer& a, int n) {
    QuadraticForm q = make_q(a, n);
    if (n == 3) {
        std::vector<Integer> v{0, 1, 1, 1};
        ensure(q.evaluate(v).is_zero(), "q_a(0,1,1,1) != 0");
        return v;
    }
    // The hyperplane x1 = 0 first: the restricted form does not depend on a.
    for (std::size_t offset : {std::size_t{1}, std::size_t{0}}) {
        for (int bound = 1; bound <= kIsotropySearchBound; ++bound) {
            if (auto v = search_shell(q, offset, bound)) {
                ensure(q.evaluate(*v).is_zero(), "isotropy witness does not evaluate to zero");
                return *v;
            }
        }
    }
    return MeyerGuaranteed{};
}

EpsilonResult epsilon_q_at(const Integer& a, int n, std::uint64_t p) {
    Place place = Place::odd_prime(p);
    auto cs = make_q(a, n).rational_coefficients();
    int generic = hasse_witt(cs, place);
    if (legendre_symbol(-1, p) != 1 || legendre_symbol(2, p) != -1) return {generic, false};
    long m = valuation(a, p);
    int closed = (m % 2) ? -1 : 1;
    ensure(closed == generic, "closed-form epsilon of q_a disagrees with the Hasse-Witt product at p = " +
                                  std::to_string(p));
    return {generic, true};
}

int epsilon_r_at(const Integer& a, int n, std::uint64_t p, std::uint64_t root) {
    require(is_prime(p) && p % 8 == 1, "epsilon_r_at needs a prime p = 1 mod 8");
    require(root < p && mul_mod(root, root, p) == 2, "root is not a square root of 2 mod p");
    QuadraticForm r = make_r(a, n);
    int generic = hasse_witt_embedded(r.coefficients(), p, root);
    int sqrt2_symbol = legendre_symbol(Integer(static_cast<unsigned long>(root)), p);
    long m = valuation(a, p);
    int closed = (sqrt2_symbol < 0 && m % 2) ? -1 : 1;
    ensure(closed == generic, "closed-form epsilon of r_a disagrees with the Hasse-Witt product at p = " +
                                  std::to_string(p));
    return generic;
}

std::string to_string(CertificateMethod method) {
    return method == CertificateMethod::discriminant_ratio ? "discriminant_ratio" : "epsilon_at_prime";
}

std::optional<NonCommensurabilityCertificate> noncommensurability_certificate(const QuadraticForm& f1,
                                                                              const QuadraticForm& f2) {
    require(f1.field() == f2.field(), "forms from different families");
    require(f1.rank() == f2.rank(), "forms of different rank");
    require(f1.rank() >= 2, "certificates need rank at least 2");
    require(restrict_to_hyperplane(f1) == restrict_to_hyperplane(f2),
            "forms from different families (hyperplane restrictions differ)");
    const QSqrt2& c1 = f1.coefficients().front();
    const QSqrt2& c2 = f2.coefficients().front();
    require(c1.is_rational() && c2.is_rational(), "family parameters must be rational");
    const Rational a1 = c1.rational_part();
    const Rational a2 = c2.rational_part();
    const bool over_q = f1.field() == FieldTag::rational;

    if (f1.rank() % 2 == 0) {
        // Even rank: the discriminant survives scaling, and D(f1)/D(f2) = a1/a2.
        Rational ratio = a1 / a2;
        bool square = over_q ? is_square(ratio) : is_square_in_qsqrt2(ratio);
        if (square) return std::nullopt;
        NonCommensurabilityCertificate cert;
        cert.method = CertificateMethod::discriminant_ratio;
        cert.detail = {squarefree_class(a1), squarefree_class(a2)};
        cert.ratio_class = squarefree_class(ratio);
        return cert;
    }

    // Odd rank: epsilon at a prime with (-1/p) = 1 is scale invariant.
    std::vector<std::uint64_t> candidates = odd_prime_support(a1);
    for (std::uint64_t p : odd_prime_support(a2)) {
        if (std::find(candidates.begin(), candidates.end(), p) == candidates.end()) candidates.push_back(p);
    }
    for (std::uint64_t p : candidates) {
        int e1 = 0;
        int e2 = 0;
        if (over_q) {
            if (p % 4 != 1) continue;
            Place place = Place::odd_prime(p);
            e1 = hasse_witt(f1.rational_coefficients(), place);
            e2 = hasse_witt(f2.rational_coefficients(), place);
        } else {
            if (p % 8 != 1) continue;
            std::uint64_t root = *sqrt_mod(2, p);
            e1 = hasse_witt_embedded(f1.coefficients(), p, root);
            e2 = hasse_witt_embedded(f2.coefficients(), p, root);
        }
        ensure(legendre_symbol(-1, p) == 1, "witness prime fails (-1/p) = 1");
        if (e1 != e2) {
            NonCommensurabilityCertificate cert;
            cert.method = CertificateMethod::epsilon_at_prime;
            cert.witness_prime = p;
            cert.detail = {e1, e2};
            return cert;
        }
    }
    return std::nullopt;
}

bool two_is_fourth_power(std::uint64_t p) {
    require(is_prime(p) && p % 4 == 1, "fourth-power test needs a prime p = 1 mod 4");
    return pow_mod(2, (p - 1) / 4, p) == 1;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> gauss_representation(std::uint64_t p) {
    for (std::uint64_t y = 0; 64 * y * y <= p; ++y) {
        Integer rest = Integer(static_cast<unsigned long>(p - 64 * y * y));
        if (is_square(rest)) return std::make_pair(Integer(sqrt(rest)).get_ui(), y);
    }
    return std::nullopt;
}

std::vector<PrimeSearchReport> search_primes_isotropic(std::size_t count) {
    require(count >= 1, "count must be at least 1");
    std::vector<PrimeSearchReport> out;
    for (std::uint64_t p = 5; out.size() < count; p += 8) {
        if (!is_prime(p)) continue;
        PrimeSearchReport report;
        report.prime = p;
        report.conditions["(-1/p)"] = legendre_symbol(-1, p);
        report.conditions["(2/p)"] = legendre_symbol(2, p);
        ensure(report.conditions["(-1/p)"] == 1 && report.conditions["(2/p)"] == -1,
               "p = 5 mod 8 violates the residue conditions");
        out.push_back(std::move(report));
    }
    return out;
}

std::vector<PrimeSearchReport> search_primes_anisotropic(std::size_t count) {
    require(count >= 1, "count must be at least 1");
    std::vector<PrimeSearchReport> out;
    for (std::uint64_t p = 17; out.size() < count; p += 8) {
        if (!is_prime(p)) continue;
        bool fourth = two_is_fourth_power(p);
        auto rep = gauss_representation(p);
        ensure(fourth == rep.has_value(),
               "fourth-power test and x^2 + 64y^2 criterion disagree at p = " + std::to_string(p));
        if (fourth) continue;
        std::uint64_t root = *sqrt_mod(2, p);
        PrimeSearchReport report;
        report.prime = p;
        report.conditions["(-1/p)"] = legendre_symbol(-1, p);
        report.conditions["(2/p)"] = legendre_symbol(2, p);
        report.conditions["(sqrt2/p)"] = legendre_symbol(Integer(static_cast<unsigned long>(root)), p);
        ensure(report.conditions["(-1/p)"] == 1 && report.conditions["(2/p)"] == 1 &&
                   report.conditions["(sqrt2/p)"] == -1,
               "anisotropic prime violates the residue conditions");
        report.gauss_representation = rep;
        out.push_back(std::move(report));
    }
    return out;
}

}  // namespace ncm
