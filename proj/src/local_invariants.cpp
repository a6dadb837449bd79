#include "ncm/local_invariants.hpp"

#include "ncm/errors.hpp"

namespace ncm {

namespace {

bool odd(long n) { return n % 2 != 0; }

int legendre_of_unit(const Rational& unit, std::uint64_t p) {
    return legendre_symbol(Integer(static_cast<unsigned long>(residue_mod_p(unit, p))), p);
}

// unit mod 8 for a rational with odd numerator and denominator
unsigned unit_mod8(const Rational& u) {
    return static_cast<unsigned>(mul_mod(mod_u64(u.get_num(), 8), mod_u64(u.get_den(), 8), 8));
}

int symbol_from_valuations(long n, int u_legendre, long m, int v_legendre, int minus_one_legendre) {
    int s = 1;
    if (odd(n) && odd(m) && minus_one_legendre < 0) s = -s;
    if (odd(m)) s *= u_legendre;
    if (odd(n)) s *= v_legendre;
    return s;
}

}  // namespace

Place Place::odd_prime(std::uint64_t p) {
    require(p != 2 && is_prime(p), "odd place needs an odd prime, got " + std::to_string(p));
    return Place(Kind::odd_prime, p);
}

std::string to_string(const Place& place) {
    switch (place.kind()) {
        case Place::Kind::real: return "real";
        case Place::Kind::dyadic: return "2";
        case Place::Kind::odd_prime: return std::to_string(place.prime());
    }
    return "?";
}

int hilbert_real(const Rational& a, const Rational& b) {
    require(sgn(a) != 0 && sgn(b) != 0, "Hilbert symbol of zero");
    return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
}

int hilbert_odd_p(const Rational& a, const Rational& b, std::uint64_t p) {
    require(sgn(a) != 0 && sgn(b) != 0, "Hilbert symbol of zero");
    require(p != 2 && is_prime(p), "hilbert_odd_p needs an odd prime");
    auto [n, u] = padic_valuation(a, p);
    auto [m, v] = padic_valuation(b, p);
    return symbol_from_valuations(n, legendre_of_unit(u, p), m, legendre_of_unit(v, p),
                                  legendre_symbol(-1, p));
}

int hilbert_dyadic(const Rational& a, const Rational& b) {
    require(sgn(a) != 0 && sgn(b) != 0, "Hilbert symbol of zero");
    auto [n, u] = padic_valuation(a, 2);
    auto [m, v] = padic_valuation(b, 2);
    unsigned u8 = unit_mod8(u);
    unsigned v8 = unit_mod8(v);
    auto eps = [](unsigned w) { return (w % 4 == 3) ? 1 : 0; };
    auto omega = [](unsigned w) { return (w == 3 || w == 5) ? 1 : 0; };
    int e = eps(u8) * eps(v8) + (odd(n) ? omega(v8) : 0) + (odd(m) ? omega(u8) : 0);
    return e % 2 ? -1 : 1;
}

int hilbert(const Rational& a, const Rational& b, const Place& place) {
    switch (place.kind()) {
        case Place::Kind::real: return hilbert_real(a, b);
        case Place::Kind::dyadic: return hilbert_dyadic(a, b);
        case Place::Kind::odd_prime: return hilbert_odd_p(a, b, place.prime());
    }
    throw InvariantViolation("unknown place");
}

int hilbert_embedded(const QSqrt2& a, const QSqrt2& b, std::uint64_t p, std::uint64_t root) {
    auto da = decompose_at_split_prime(a, p, root);
    auto db = decompose_at_split_prime(b, p, root);
    auto leg = [&](std::uint64_t r) { return legendre_symbol(Integer(static_cast<unsigned long>(r)), p); };
    return symbol_from_valuations(da.exponent, leg(da.unit_residue), db.exponent, leg(db.unit_residue),
                                  legendre_symbol(-1, p));
}

int hasse_witt(std::span<const Rational> coefficients, const Place& place) {
    for (const auto& c : coefficients) require(sgn(c) != 0, "zero coefficient in Hasse-Witt invariant");
    int e = 1;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        for (std::size_t j = i + 1; j < coefficients.size(); ++j) {
            e *= hilbert(coefficients[i], coefficients[j], place);
        }
    }
    return e;
}

int hasse_witt_embedded(std::span<const QSqrt2> coefficients, std::uint64_t p, std::uint64_t root) {
    for (const auto& c : coefficients) require(!c.is_zero(), "zero coefficient in Hasse-Witt invariant");
    int e = 1;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        for (std::size_t j = i + 1; j < coefficients.size(); ++j) {
            e *= hilbert_embedded(coefficients[i], coefficients[j], p, root);
        }
    }
    return e;
}

Integer discriminant_class(std::span<const Rational> coefficients) {
    Rational prod = 1;
    for (const auto& c : coefficients) {
        require(sgn(c) != 0, "zero coefficient in discriminant");
        prod *= c;
    }
    return squarefree_class(prod);
}

std::pair<int, int> local_square_class(const Rational& x, const Place& place) {
    require(sgn(x) != 0, "square class of zero");
    switch (place.kind()) {
        case Place::Kind::real: return {sgn(x), 0};
        case Place::Kind::odd_prime: {
            auto [v, u] = padic_valuation(x, place.prime());
            return {odd(v) ? 1 : 0, legendre_of_unit(u, place.prime())};
        }
        case Place::Kind::dyadic: {
            auto [v, u] = padic_valuation(x, 2);
            return {odd(v) ? 1 : 0, static_cast<int>(unit_mod8(u))};
        }
    }
    throw InvariantViolation("unknown place");
}

LocalInvariantRecord local_invariants(const QuadraticForm& form, const Place& place) {
    auto cs = form.rational_coefficients();
    return {form.rank(), discriminant_class(cs), hasse_witt(cs, place)};
}

bool locally_equivalent(const QuadraticForm& q1, const QuadraticForm& q2, const Place& place) {
    require(q1.field() == FieldTag::rational && q2.field() == FieldTag::rational,
            "local equivalence is decided for forms over Q only");
    if (q1.rank() != q2.rank()) return false;
    auto c1 = q1.rational_coefficients();
    auto c2 = q2.rational_coefficients();
    Rational d1 = 1;
    Rational d2 = 1;
    for (const auto& c : c1) d1 *= c;
    for (const auto& c : c2) d2 *= c;
    if (local_square_class(d1, place) != local_square_class(d2, place)) return false;
    return hasse_witt(c1, place) == hasse_witt(c2, place);
}

}  // namespace ncm
