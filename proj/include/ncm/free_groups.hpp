#pragma once

// Finite-index subgroups of the free group F = F(a, b), represented by the
// action of a and b on the cosets H\F (a transitive pair of permutations
// with the coset H as basepoint 0).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncm/exact_arith.hpp"

namespace ncm {

using Vertex = std::uint32_t;
using Permutation = std::vector<Vertex>;

/// Letters in tie-break order: a < a^-1 < b < b^-1.
enum class Letter : std::uint8_t { a = 0, a_inv = 1, b = 2, b_inv = 3 };

inline constexpr Letter kLetters[4] = {Letter::a, Letter::a_inv, Letter::b, Letter::b_inv};

Letter inverse(Letter x);
char letter_char(Letter x);  // a, A, b, B

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    /// Parses letters from "aAbB" (capital = inverse).
    static Word parse(const std::string& text);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    bool is_reduced() const;
    Word reduced() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

std::string to_string(const Word& w);

bool is_permutation(const Permutation& p);
Permutation inverse(const Permutation& p);

/// Image of `from` under one letter of the pair (perm_a, perm_b).
Vertex step(const Permutation& perm_a, const Permutation& perm_b, const Permutation& inv_a,
            const Permutation& inv_b, Vertex from, Letter x);

class SubgroupTable {
public:
    /// Validates both permutations and transitivity; basepoint is 0.
    SubgroupTable(Permutation perm_a, Permutation perm_b);

    std::size_t degree() const { return perm_a_.size(); }
    const Permutation& perm_a() const { return perm_a_; }
    const Permutation& perm_b() const { return perm_b_; }
    static constexpr Vertex basepoint() { return 0; }

    Vertex act(Vertex v, Letter x) const;
    Vertex trace(Vertex start, const Word& w) const;

    /// Relabeling by breadth-first order from the basepoint, letters in
    /// order a, a^-1, b, b^-1.
    SubgroupTable canonical() const;
    bool is_canonical() const;

    /// Equality as subgroups of F.
    friend bool operator==(const SubgroupTable& x, const SubgroupTable& y);

private:
    Permutation perm_a_, perm_b_, inv_a_, inv_b_;
};

std::string to_string(const SubgroupTable& t);

inline constexpr std::size_t kMaxEnumerationIndex = 7;

/// One canonical table per index-k subgroup, in generation order.
/// Throws CapacityError beyond kMaxEnumerationIndex.
std::vector<SubgroupTable> enumerate_subgroups(std::size_t k);

/// Number of index-k subgroups of F_2 (Hall's recursion).
Integer hall_count(std::size_t k);

bool word_membership(const SubgroupTable& h, const Word& w);

/// A shortest word lying in exactly one of the two subgroups, ties broken
/// lexicographically; nothing iff the subgroups are equal.
std::optional<Word> distinguishing_word(const SubgroupTable& h1, const SubgroupTable& h2);

}  // namespace ncm
