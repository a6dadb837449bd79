#include "doctest.h"

#include <algorithm>

#include "generators.hpp"
#include "ncm/errors.hpp"
#include "ncm/form_families.hpp"
#include "ncm/local_invariants.hpp"
#include "oracles.hpp"

using namespace ncm;

TEST_CASE("real Hilbert symbol") {
    CHECK(hilbert_real(-1, -1) == -1);
    CHECK(hilbert_real(1, -7) == 1);
    CHECK(hilbert_real(-3, 5) == 1);
    CHECK_THROWS_AS(hilbert_real(0, 1), PreconditionError);
}

TEST_CASE("odd-p Hilbert symbol") {
    CHECK(hilbert_odd_p(5, -2, 5) == -1);
    CHECK(hilbert_odd_p(3, 7, 5) == 1);  // units
    CHECK_THROWS_AS(hilbert_odd_p(1, 1, 9), PreconditionError);
    for (std::uint64_t p : {5, 13, 17, 29}) {
        for (int i = 0; i < 100; ++i) {
            Rational u = gen::rational(50, 10);
            long m = gen::integer(-3, 3);
            Rational lambda = u;
            for (long e = 0; e < std::abs(m); ++e) lambda = m > 0 ? Rational(lambda * static_cast<long>(p)) : Rational(lambda / static_cast<long>(p));
            REQUIRE(hilbert_odd_p(lambda, lambda, p) == 1);
        }
    }
}

TEST_CASE("dyadic Hilbert symbol") {
    CHECK(hilbert_dyadic(1, 7) == 1);
    CHECK(hilbert_dyadic(2, 7) == 1);
    CHECK(hilbert_dyadic(-1, -1) == -1);
    CHECK(hilbert_dyadic(2, 3) == -1);
    CHECK(hilbert_dyadic(2, 5) == -1);
}

TEST_CASE("dyadic symbol agrees with the mod 64 oracle on all square classes") {
    // representatives of Q_2*/(Q_2*)^2
    const long reps[] = {1, 3, 5, 7, 2, 6, 10, 14};
    for (long a : reps) {
        for (long b : reps) {
            CAPTURE(a);
            CAPTURE(b);
            CHECK(hilbert_dyadic(a, b) == oracle::hilbert_dyadic(a, b));
            CHECK(hilbert_dyadic(-a, b) == oracle::hilbert_dyadic(-a, b));
        }
    }
}

TEST_CASE("odd-p symbol agrees with the mod p^2 oracle") {
    for (std::uint64_t p : {3, 5, 7}) {
        for (long a = -12; a <= 12; ++a) {
            for (long b = -12; b <= 12; ++b) {
                if (a == 0 || b == 0) continue;
                REQUIRE(hilbert_odd_p(a, b, p) == oracle::hilbert_odd_p(a, b, p));
            }
        }
    }
}

TEST_CASE("Hilbert symbol identities at every place") {
    std::vector<Place> places{Place::real(), Place::dyadic(), Place::odd_prime(3), Place::odd_prime(5),
                              Place::odd_prime(7), Place::odd_prime(101)};
    for (const auto& v : places) {
        for (int i = 0; i < 300; ++i) {
            Rational a = gen::rational(), b = gen::rational(), c = gen::rational();
            REQUIRE(hilbert(Rational(a * c), b, v) == hilbert(a, b, v) * hilbert(c, b, v));
            REQUIRE(hilbert(a, b, v) == hilbert(b, a, v));
            REQUIRE(hilbert(Rational(a * a), b, v) == 1);
            REQUIRE(hilbert(a, Rational(-a * b), v) == hilbert(a, b, v));
            REQUIRE(hilbert(a, Rational(-a), v) == 1);
        }
    }
}

TEST_CASE("product formula") {
    for (int i = 0; i < 500; ++i) {
        Rational a = gen::rational(100000, 1000), b = gen::rational(100000, 1000);
        int product = hilbert_real(a, b) * hilbert_dyadic(a, b);
        auto support = odd_prime_support(a);
        for (auto p : odd_prime_support(b)) support.push_back(p);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        for (auto p : support) product *= hilbert_odd_p(a, b, p);
        REQUIRE(product == 1);
    }
}

TEST_CASE("Hasse-Witt invariant") {
    std::vector<Rational> q5{5, 1, 1, 1, -2}, q13{13, 1, 1, 1, -2};
    CHECK(hasse_witt(q5, Place::odd_prime(5)) == -1);
    CHECK(hasse_witt(q13, Place::odd_prime(5)) == 1);
    std::vector<Rational> single{-7};
    CHECK(hasse_witt(single, Place::dyadic()) == 1);
    CHECK(hasse_witt(std::span<const Rational>{}, Place::real()) == 1);
}

TEST_CASE("Hasse-Witt invariant ignores coefficient order") {
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> cs;
        int rank = static_cast<int>(gen::integer(2, 4));
        for (int j = 0; j < rank; ++j) cs.push_back(gen::rational(60, 6));
        std::sort(cs.begin(), cs.end());
        for (const auto& v : {Place::real(), Place::dyadic(), Place::odd_prime(3), Place::odd_prime(5)}) {
            int e = hasse_witt(cs, v);
            auto perm = cs;
            do {
                REQUIRE(hasse_witt(perm, v) == e);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
}

TEST_CASE("scaling invariance in odd rank") {
    for (int i = 0; i < 300; ++i) {
        std::vector<Rational> cs;
        int rank = 2 * static_cast<int>(gen::integer(0, 3)) + 1;
        for (int j = 0; j < rank; ++j) cs.push_back(gen::rational());
        Rational lambda = gen::rational();
        for (std::uint64_t p : {5, 13, 17, 29, 37}) {
            Place v = Place::odd_prime(p);
            REQUIRE(hilbert(lambda, lambda, v) == 1);
            std::vector<Rational> scaled;
            for (const auto& c : cs) scaled.push_back(lambda * c);
            REQUIRE(hasse_witt(scaled, v) == hasse_witt(cs, v));
        }
    }
}

TEST_CASE("discriminant classes") {
    std::vector<Rational> q{7, 1, 1, 1, -2}, squares{4, 9}, neg{12, -3};
    CHECK(discriminant_class(q) == -14);
    CHECK(discriminant_class(squares) == 1);
    CHECK(discriminant_class(neg) == -1);
}

TEST_CASE("local square classes") {
    CHECK(local_square_class(5, Place::odd_prime(5)) == std::make_pair(1, 1));
    CHECK(local_square_class(10, Place::odd_prime(5)) == std::make_pair(1, -1));
    CHECK(local_square_class(make_rational(1, 25), Place::odd_prime(5)) == std::make_pair(0, 1));
    CHECK(local_square_class(-3, Place::real()) == std::make_pair(-1, 0));
    CHECK(local_square_class(12, Place::dyadic()) == std::make_pair(0, 3));
    CHECK(local_square_class(17, Place::dyadic()) == local_square_class(1, Place::dyadic()));
}

TEST_CASE("local equivalence") {
    auto q5 = make_q(5, 4), q13 = make_q(13, 4);
    for (const auto& v : {Place::real(), Place::dyadic(), Place::odd_prime(5), Place::odd_prime(7)}) {
        CHECK(locally_equivalent(q5, q5, v));
    }
    CHECK_FALSE(locally_equivalent(q5, q13, Place::odd_prime(5)));
    auto f = QuadraticForm::over_q({1, -2}), g = QuadraticForm::over_q({2, -1});
    CHECK(locally_equivalent(f, g, Place::real()));
    CHECK_FALSE(locally_equivalent(QuadraticForm::over_q({1, 1}), QuadraticForm::over_q({1, 1, 1}), Place::real()));
    CHECK_THROWS_AS(locally_equivalent(make_r(17, 4), make_r(17, 4), Place::real()), PreconditionError);
}

TEST_CASE("local invariant record") {
    auto rec = local_invariants(make_q(5, 4), Place::odd_prime(5));
    CHECK(rec.rank == 5);
    CHECK(rec.discriminant_class == -10);
    CHECK(rec.epsilon == -1);
}
