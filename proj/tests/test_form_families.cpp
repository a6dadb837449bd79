#include "doctest.h"

#include "generators.hpp"
#include "ncm/errors.hpp"
#include "ncm/form_families.hpp"
#include "ncm/local_invariants.hpp"
#include "oracles.hpp"

using namespace ncm;

namespace {

std::vector<QSqrt2> qs(std::initializer_list<long> xs) {
    std::vector<QSqrt2> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("family constructors") {
    CHECK(make_q(5, 4).coefficients() == qs({5, 1, 1, 1, -2}));
    CHECK(make_q(1, 3).coefficients() == qs({1, 1, 1, -2}));
    CHECK(make_q(13, 4).signature() == std::make_pair(4, 1));
    auto r = make_r(17, 4);
    CHECK(r.field() == FieldTag::q_sqrt2);
    CHECK(r.coefficients().back() == -QSqrt2::sqrt2());
    CHECK(r.signature() == std::make_pair(4, 1));
    CHECK(r.signature(true) == std::make_pair(5, 0));
    CHECK(make_r(1, 3).rank() == 4);
    CHECK_THROWS_AS(make_q(5, 2), PreconditionError);
    CHECK_THROWS_AS(make_q(0, 4), PreconditionError);
    CHECK_THROWS_AS(make_r(-3, 4), PreconditionError);
}

TEST_CASE("hyperplane restriction is independent of the parameter") {
    CHECK(restrict_to_hyperplane(make_q(5, 4)) == restrict_to_hyperplane(make_q(13, 4)));
    CHECK(restrict_to_hyperplane(make_q(5, 4)).coefficients() == qs({1, 1, 1, -2}));
    auto rr = restrict_to_hyperplane(make_r(17, 4));
    CHECK(rr.rank() == 4);
    CHECK(rr.coefficients().back() == -QSqrt2::sqrt2());
    for (int n = 3; n <= 6; ++n) {
        for (long a = 1; a <= 100; ++a) {
            REQUIRE(restrict_to_hyperplane(make_q(a, n)) == restrict_to_hyperplane(make_q(1, n)));
            REQUIRE(restrict_to_hyperplane(make_r(a, n)) == restrict_to_hyperplane(make_r(1, n)));
        }
    }
}

TEST_CASE("isotropy witnesses") {
    auto w3 = isotropy_witness_q(7, 3);
    REQUIRE(std::holds_alternative<std::vector<Integer>>(w3));
    CHECK(std::get<std::vector<Integer>>(w3) == std::vector<Integer>{0, 1, 1, 1});
    auto w4 = isotropy_witness_q(1, 4);
    REQUIRE(std::holds_alternative<std::vector<Integer>>(w4));
    CHECK(std::get<std::vector<Integer>>(w4) == std::vector<Integer>{0, 1, 1, 0, 1});
    for (long a = 1; a <= 60; ++a) {
        for (int n = 3; n <= 6; ++n) {
            auto w = isotropy_witness_q(a, n);
            if (auto* v = std::get_if<std::vector<Integer>>(&w)) {
                REQUIRE(make_q(a, n).evaluate(*v).is_zero());
                bool nonzero = false;
                for (const auto& x : *v) nonzero = nonzero || x != 0;
                REQUIRE(nonzero);
            }
        }
    }
}

TEST_CASE("epsilon of the q family") {
    CHECK(epsilon_q_at(5, 4, 5).value == -1);
    CHECK(epsilon_q_at(5, 4, 5).closed_form);
    CHECK(epsilon_q_at(13, 4, 5).value == 1);
    CHECK(epsilon_q_at(25, 4, 5).value == 1);
    CHECK(epsilon_q_at(125, 4, 5).value == -1);
    CHECK_FALSE(epsilon_q_at(17, 4, 17).closed_form);  // (2/17) = 1
    CHECK_FALSE(epsilon_q_at(5, 4, 7).closed_form);  // (-1/7) = -1
    CHECK(epsilon_q_at(5, 4, 7).value == hasse_witt(std::vector<Rational>{5, 1, 1, 1, -2}, Place::odd_prime(7)));
    CHECK_THROWS_AS(epsilon_q_at(5, 4, 9), PreconditionError);
    for (std::uint64_t p : kIsotropicPrimes) {
        for (long a = 1; a <= 200; ++a) {
            auto e = epsilon_q_at(a, 4, p);
            std::vector<Rational> cs{a, 1, 1, 1, -2};
            REQUIRE(e.closed_form);
            REQUIRE(e.value == hasse_witt(cs, Place::odd_prime(p)));
        }
    }
}

TEST_CASE("epsilon of the r family") {
    std::uint64_t root = *sqrt_mod(2, 17);
    CHECK(epsilon_r_at(17, 4, 17, root) == -1);
    CHECK(epsilon_r_at(41, 4, 17, root) == 1);
    CHECK(epsilon_r_at(17, 4, 17, 17 - root) == -1);
    CHECK_THROWS_AS(epsilon_r_at(17, 4, 13, 5), PreconditionError);
    CHECK_THROWS_AS(epsilon_r_at(17, 4, 17, 5), PreconditionError);
    for (std::uint64_t p : kAnisotropicPrimes) {
        std::uint64_t r = *sqrt_mod(2, p);
        for (long a = 1; a <= 200; ++a) {
            REQUIRE(epsilon_r_at(a, 4, p, r) == epsilon_r_at(a, 4, p, p - r));
        }
    }
}

TEST_CASE("certificates") {
    auto c = noncommensurability_certificate(make_q(5, 4), make_q(13, 4));
    REQUIRE(c);
    CHECK(c->method == CertificateMethod::epsilon_at_prime);
    CHECK(c->witness_prime == std::optional<std::uint64_t>(5));
    CHECK(c->detail == std::make_pair(Integer(-1), Integer(1)));
    CHECK_FALSE(noncommensurability_certificate(make_q(5, 4), make_q(5, 4)));
    auto d = noncommensurability_certificate(make_q(5, 5), make_q(13, 5));
    REQUIRE(d);
    CHECK(d->method == CertificateMethod::discriminant_ratio);
    CHECK(d->ratio_class == 65);
    CHECK_FALSE(noncommensurability_certificate(make_q(5, 5), make_q(20, 5)));  // 20/5 is a square
    CHECK_FALSE(noncommensurability_certificate(make_r(17, 5), make_r(34, 5)));  // 2 is a square in Q(sqrt 2)
    CHECK(noncommensurability_certificate(make_r(17, 5), make_r(41, 5)));
    CHECK_THROWS_AS(noncommensurability_certificate(make_q(5, 4), make_q(5, 5)), PreconditionError);
    CHECK_THROWS_AS(noncommensurability_certificate(make_q(5, 4), make_r(17, 4)), PreconditionError);
}

TEST_CASE("certificate existence is symmetric") {
    for (int i = 0; i < 300; ++i) {
        long a = gen::integer(1, 400), b = gen::integer(1, 400);
        int n = static_cast<int>(gen::integer(3, 6));
        bool compact = gen::integer(0, 1) == 1;
        auto f = compact ? make_r(a, n) : make_q(a, n);
        auto g = compact ? make_r(b, n) : make_q(b, n);
        REQUIRE(noncommensurability_certificate(f, g).has_value() == noncommensurability_certificate(g, f).has_value());
    }
}

TEST_CASE("prime searches") {
    auto iso = search_primes_isotropic(6);
    auto aniso = search_primes_anisotropic(6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(iso[i].prime == kIsotropicPrimes[i]);
        CHECK(aniso[i].prime == kAnisotropicPrimes[i]);
        CHECK(iso[i].prime % 8 == 5);
        CHECK(aniso[i].prime % 8 == 1);
    }
    CHECK(search_primes_isotropic(1).front().prime == 5);
    CHECK_THROWS_AS(search_primes_isotropic(0), PreconditionError);
    CHECK(two_is_fourth_power(73));
    CHECK(gauss_representation(73) == std::make_optional(std::make_pair<std::uint64_t, std::uint64_t>(3, 1)));
    for (const auto& r : aniso) CHECK(r.prime != 73);
}

TEST_CASE("Gauss criterion below 10^4") {
    for (std::uint64_t p = 17; p < 10000; p += 8) {
        if (!is_prime(p)) continue;
        bool fourth = two_is_fourth_power(p);
        REQUIRE(fourth == gauss_representation(p).has_value());
        REQUIRE(fourth == oracle::two_is_fourth_power(p));
    }
}
