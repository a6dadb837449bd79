#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ncm::oracle {

namespace {

std::uint64_t reduce(long long u, std::uint64_t m) {
    long long r = u % static_cast<long long>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
}

// Integer with the same square class as x and v_p in {0, 1}, reduced mod m.
std::uint64_t normalized_residue(const Rational& x, std::uint64_t p, std::uint64_t m) {
    Integer n = x.get_num() * x.get_den();
    Integer p2 = Integer(static_cast<unsigned long>(p * p));
    while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) n /= p2;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), m);
    return r.get_ui();
}

// Primitive (x, y, z) mod m with a x^2 + b y^2 = z^2, where primitive
// means not all divisible by p.
int primitive_solution_exists(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t m) {
    std::vector<std::vector<std::uint64_t>> roots_of(m);
    for (std::uint64_t z = 0; z < m; ++z) roots_of[z * z % m].push_back(z);
    for (std::uint64_t x = 0; x < m; ++x) {
        for (std::uint64_t y = 0; y < m; ++y) {
            std::uint64_t rhs = (a * (x * x % m) + b * (y * y % m)) % m;
            for (std::uint64_t z : roots_of[rhs]) {
                if (x % p || y % p || z % p) return 1;
            }
        }
    }
    return -1;
}

bool transitive(const Permutation& a, const Permutation& b) {
    std::vector<bool> seen(a.size(), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        std::vector<Vertex> next{a[u], b[u]};
        for (Vertex w = 0; w < a.size(); ++w) {
            if (a[w] == u || b[w] == u) next.push_back(w);
        }
        for (Vertex w : next) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == a.size();
}

}  // namespace

int legendre(long long u, std::uint64_t p) {
    std::uint64_t r = reduce(u, p);
    if (r == 0) return 0;
    for (std::uint64_t x = 1; x < p; ++x) {
        if (x * x % p == r) return 1;
    }
    return -1;
}

std::optional<std::uint64_t> sqrt_mod(long long u, std::uint64_t p) {
    std::uint64_t r = reduce(u, p);
    for (std::uint64_t x = 0; x < p; ++x) {
        if (x * x % p == r) return x;
    }
    return std::nullopt;
}

bool two_is_fourth_power(std::uint64_t p) {
    for (std::uint64_t x = 1; x < p; ++x) {
        std::uint64_t x2 = x * x % p;
        if (x2 * x2 % p == 2 % p) return true;
    }
    return false;
}

bool has_x2_plus_64y2(std::uint64_t p) {
    for (std::uint64_t x = 0; x * x <= p; ++x) {
        for (std::uint64_t y = 0; x * x + 64 * y * y <= p; ++y) {
            if (x * x + 64 * y * y == p) return true;
        }
    }
    return false;
}

int hilbert_odd_p(const Rational& a, const Rational& b, std::uint64_t p) {
    const std::uint64_t m = p * p;
    return primitive_solution_exists(normalized_residue(a, p, m), normalized_residue(b, p, m), p, m);
}

int hilbert_dyadic(const Rational& a, const Rational& b) {
    const std::uint64_t m = 64;
    return primitive_solution_exists(normalized_residue(a, 2, m), normalized_residue(b, 2, m), 2, m);
}

std::vector<std::pair<Permutation, Permutation>> subgroups_brute_force(std::size_t k) {
    Permutation id(k);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Permutation> all;
    Permutation p = id;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::vector<Permutation> relabelings;
    for (const auto& s : all) {
        if (s[0] == 0) relabelings.push_back(s);
    }

    std::set<std::pair<Permutation, Permutation>> seen;
    std::vector<std::pair<Permutation, Permutation>> out;
    for (const auto& a : all) {
        for (const auto& b : all) {
            if (!transitive(a, b)) continue;
            std::pair<Permutation, Permutation> best;
            bool first = true;
            for (const auto& s : relabelings) {
                Permutation ra(k), rb(k);
                for (std::size_t v = 0; v < k; ++v) {
                    ra[s[v]] = s[a[v]];
                    rb[s[v]] = s[b[v]];
                }
                auto key = std::make_pair(ra, rb);
                if (first || key < best) best = key;
                first = false;
            }
            if (seen.insert(best).second) out.push_back(best);
        }
    }
    return out;
}

}  // namespace ncm::oracle
