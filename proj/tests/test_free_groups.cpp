#include "doctest.h"

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "ncm/errors.hpp"
#include "ncm/free_groups.hpp"
#include "oracles.hpp"

using namespace ncm;

namespace {

Word random_word(std::size_t length) {
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < length; ++i) letters.push_back(kLetters[gen::integer(0, 3)]);
    return Word(letters);
}

}  // namespace

TEST_CASE("words") {
    Word w = Word::parse("aAbB");
    CHECK(w.size() == 4);
    CHECK_FALSE(w.is_reduced());
    CHECK(w.reduced().empty());
    CHECK(Word::parse("abAB").is_reduced());
    CHECK(to_string(Word::parse("abAB")) == "abAB");
    CHECK(Word::parse("aabBA").reduced() == Word::parse("a"));
    CHECK_THROWS_AS(Word::parse("abc"), PreconditionError);
}

TEST_CASE("subgroup tables validate input") {
    CHECK_THROWS_AS(SubgroupTable({0, 0}, {1, 0}), PreconditionError);
    CHECK_THROWS_AS(SubgroupTable({0, 1}, {0, 1}), PreconditionError);  // not transitive
    CHECK_THROWS_AS(SubgroupTable({0}, {0, 1}), PreconditionError);
    CHECK_NOTHROW(SubgroupTable({1, 0}, {0, 1}));
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_subgroups(1).size() == 1);
    CHECK(enumerate_subgroups(2).size() == 3);
    CHECK(enumerate_subgroups(3).size() == 13);
    const long expected[] = {1, 3, 13, 71, 461, 3447};
    for (std::size_t k = 1; k <= 6; ++k) {
        auto tables = enumerate_subgroups(k);
        CHECK(tables.size() == static_cast<std::size_t>(expected[k - 1]));
        CHECK(hall_count(k) == expected[k - 1]);
        for (const auto& t : tables) REQUIRE(t.is_canonical());
    }
    CHECK(hall_count(7) == 29093);
    CHECK_THROWS_AS(enumerate_subgroups(8), CapacityError);
    CHECK_THROWS_AS(enumerate_subgroups(0), PreconditionError);
}

TEST_CASE("enumeration matches the brute-force oracle") {
    for (std::size_t k = 1; k <= 5; ++k) {
        std::set<std::pair<Permutation, Permutation>> fast, slow;
        for (const auto& t : enumerate_subgroups(k)) {
            auto c = t.canonical();
            fast.insert({c.perm_a(), c.perm_b()});
        }
        for (const auto& [a, b] : oracle::subgroups_brute_force(k)) {
            auto c = SubgroupTable(a, b).canonical();
            slow.insert({c.perm_a(), c.perm_b()});
        }
        CHECK(fast.size() == hall_count(k));
        CHECK(fast == slow);
    }
}

TEST_CASE("subgroup growth bound") {
    for (std::size_t k = 1; k <= 40; ++k) {
        Integer kk;
        mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
        Integer a = hall_count(k);
        REQUIRE(a * a >= kk);
    }
    CHECK(hall_count(6) >= 216);
}

TEST_CASE("canonicalization") {
    SubgroupTable t({2, 0, 1}, {1, 0, 2});
    CHECK(t.canonical().canonical().perm_a() == t.canonical().perm_a());
    CHECK(t.canonical() == t);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (const auto& t2 : enumerate_subgroups(k)) {
            REQUIRE(t2.canonical().perm_a() == t2.perm_a());
            REQUIRE(t2.canonical().perm_b() == t2.perm_b());
        }
    }
}

TEST_CASE("word membership") {
    SubgroupTable sign({1, 0}, {1, 0});
    CHECK(word_membership(sign, Word()));
    CHECK(word_membership(sign, Word::parse("aB")));
    CHECK_FALSE(word_membership(sign, Word::parse("a")));
    for (std::size_t k = 1; k <= 4; ++k) {
        for (const auto& h : enumerate_subgroups(k)) {
            for (int i = 0; i < 10; ++i) {
                Word w = random_word(static_cast<std::size_t>(gen::integer(0, 8)));
                // insert a cancelling pair at a random position
                auto letters = w.letters();
                Letter x = kLetters[gen::integer(0, 3)];
                auto pos = letters.begin() + gen::integer(0, static_cast<long>(letters.size()));
                pos = letters.insert(pos, inverse(x));
                letters.insert(pos, x);
                REQUIRE(word_membership(h, Word(letters)) == word_membership(h, w));
                REQUIRE(word_membership(h, w.reduced()) == word_membership(h, w));
            }
        }
    }
}

TEST_CASE("distinguishing words") {
    SubgroupTable swap_a({1, 0}, {0, 1}), swap_b({0, 1}, {1, 0});
    auto w = distinguishing_word(swap_a, swap_b);
    REQUIRE(w);
    CHECK(w->size() == 1);
    CHECK(*w == Word::parse("a"));
    CHECK_FALSE(distinguishing_word(swap_a, swap_a));
    // subgroups of different index are compared in the same way
    CHECK(distinguishing_word(swap_a, SubgroupTable({0}, {0})) == std::optional<Word>(Word::parse("a")));
}

TEST_CASE("distinguishing words exist exactly for distinct subgroups") {
    for (std::size_t k = 1; k <= 4; ++k) {
        auto tables = enumerate_subgroups(k);
        for (std::size_t i = 0; i < tables.size(); ++i) {
            for (std::size_t j = 0; j < tables.size(); ++j) {
                auto w = distinguishing_word(tables[i], tables[j]);
                REQUIRE(w.has_value() == (i != j));
                if (!w) continue;
                REQUIRE(w->is_reduced());
                REQUIRE(word_membership(tables[i], *w) != word_membership(tables[j], *w));
            }
        }
    }
}

TEST_CASE("distinguishing words are shortest") {
    // brute force over all reduced words up to the found length
    auto tables = enumerate_subgroups(3);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            auto w = distinguishing_word(tables[i], tables[j]);
            REQUIRE(w);
            std::vector<Word> layer{Word()};
            for (std::size_t len = 1; len < w->size(); ++len) {
                std::vector<Word> next;
                for (const auto& u : layer) {
                    for (Letter x : kLetters) {
                        auto letters = u.letters();
                        if (!letters.empty() && letters.back() == inverse(x)) continue;
                        letters.push_back(x);
                        Word v(letters);
                        REQUIRE(word_membership(tables[i], v) == word_membership(tables[j], v));
                        next.push_back(v);
                    }
                }
                layer = next;
            }
        }
    }
}
