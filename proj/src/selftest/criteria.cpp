#include "criteria.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ncm/assembler.hpp"
#include "ncm/decorated_graphs.hpp"
#include "ncm/errors.hpp"
#include "ncm/form_families.hpp"
#include "ncm/free_groups.hpp"
#include "ncm/local_invariants.hpp"
#include "oracles.hpp"

namespace ncm::selftest {

namespace {

class Failures {
public:
    void check(bool ok, const std::string& what) {
        if (!ok && ++count_ <= 5) msg_ += (msg_.empty() ? "" : "; ") + what;
    }
    std::string message() const {
        if (count_ == 0) return {};
        return std::to_string(count_) + " failure(s): " + msg_;
    }

private:
    std::size_t count_ = 0;
    std::string msg_;
};

Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound - 1);
    std::uniform_int_distribution<long> den(1, den_bound);
    long n = num(rng);
    if (n >= 0) ++n;  // skip zero
    return make_rational(n, den(rng));
}

std::vector<Place> hilbert_places() {
    std::vector<Place> places{Place::real(), Place::dyadic()};
    for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) places.push_back(Place::odd_prime(p));
    return places;
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound, std::uint64_t modulus, std::uint64_t residue) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p < bound; ++p) {
        if (p % modulus == residue && is_prime(p)) out.push_back(p);
    }
    return out;
}

std::vector<SubgroupTable> subgroups_up_to(std::size_t k) {
    std::vector<SubgroupTable> all;
    for (std::size_t i = 1; i <= k; ++i) {
        auto t = enumerate_subgroups(i);
        all.insert(all.end(), t.begin(), t.end());
    }
    return all;
}

// --- 1 ------------------------------------------------------------------------------

std::string prime_lists(std::string& detail) {
    Failures f;
    auto iso = search_primes_isotropic(6);
    auto aniso = search_primes_anisotropic(6);
    std::ostringstream s;
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& r = iso[i];
        f.check(r.prime == kIsotropicPrimes[i], "isotropic prime " + std::to_string(i) + " = " + std::to_string(r.prime));
        f.check(r.prime % 8 == 5, "isotropic prime not 5 mod 8");
        f.check(r.conditions.at("(-1/p)") == 1 && oracle::legendre(-1, r.prime) == 1, "(-1/p) != 1");
        f.check(r.conditions.at("(2/p)") == -1 && oracle::legendre(2, r.prime) == -1, "(2/p) != -1");
    }
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& r = aniso[i];
        std::uint64_t p = r.prime;
        f.check(p == kAnisotropicPrimes[i], "anisotropic prime " + std::to_string(i) + " = " + std::to_string(p));
        f.check(p % 8 == 1, "anisotropic prime not 1 mod 8");
        f.check(r.conditions.at("(-1/p)") == 1 && oracle::legendre(-1, p) == 1, "(-1/p) != 1");
        f.check(r.conditions.at("(2/p)") == 1 && oracle::legendre(2, p) == 1, "(2/p) != 1");
        auto root = oracle::sqrt_mod(2, p);
        f.check(root && r.conditions.at("(sqrt2/p)") == -1 && oracle::legendre(static_cast<long long>(*root), p) == -1,
                "(sqrt2/p) != -1 at " + std::to_string(p));
        f.check(!oracle::two_is_fourth_power(p) && !r.gauss_representation, "2 is a fourth power mod " + std::to_string(p));
    }
    s << "isotropic";
    for (const auto& r : iso) s << ' ' << r.prime;
    s << "; anisotropic";
    for (const auto& r : aniso) s << ' ' << r.prime;
    detail = s.str();
    return f.message();
}

// --- 2 ------------------------------------------------------------------------------

std::string gauss_criterion(std::string& detail) {
    Failures f;
    auto primes = primes_below(10000, 8, 1);
    std::size_t fourth = 0;
    for (std::uint64_t p : primes) {
        bool euler = two_is_fourth_power(p);
        bool rep = gauss_representation(p).has_value();
        f.check(euler == rep, "disagreement at p = " + std::to_string(p));
        f.check(euler == oracle::two_is_fourth_power(p), "Euler test wrong at p = " + std::to_string(p));
        f.check(rep == oracle::has_x2_plus_64y2(p), "representation search wrong at p = " + std::to_string(p));
        if (auto xy = gauss_representation(p)) {
            f.check(xy->first * xy->first + 64 * xy->second * xy->second == p, "representation does not rebuild p");
        }
        fourth += euler;
    }
    detail = std::to_string(primes.size()) + " primes p = 1 mod 8 below 10^4, " + std::to_string(fourth) +
             " with 2 a fourth power, 0 disagreements expected";
    return f.message();
}

// --- 3 ------------------------------------------------------------------------------

std::string hilbert_suite(std::uint64_t seed, std::string& detail) {
    Failures f;
    std::mt19937_64 rng(seed);
    std::size_t checks = 0;
    for (const Place& v : hilbert_places()) {
        for (int i = 0; i < 1000; ++i) {
            Rational a = random_rational(rng, 200, 30);
            Rational b = random_rational(rng, 200, 30);
            Rational c = random_rational(rng, 200, 30);
            std::string at = " at " + to_string(v) + " for " + to_string(a) + ", " + to_string(b);
            f.check(hilbert(Rational(a * c), b, v) == hilbert(a, b, v) * hilbert(c, b, v), "bilinearity" + at);
            f.check(hilbert(Rational(a * a), b, v) == 1, "(a^2,b) != 1" + at);
            f.check(hilbert(a, Rational(-a * b), v) == hilbert(a, b, v), "(a,-ab) != (a,b)" + at);
            f.check(hilbert(a, b, v) == hilbert(b, a, v), "symmetry" + at);
            checks += 4;
        }
    }
    for (int i = 0; i < 1000; ++i) {
        Rational a = random_rational(rng, 5000, 500);
        Rational b = random_rational(rng, 5000, 500);
        int product = hilbert_real(a, b) * hilbert_dyadic(a, b);
        std::vector<std::uint64_t> support = odd_prime_support(a);
        for (std::uint64_t p : odd_prime_support(b)) support.push_back(p);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        for (std::uint64_t p : support) product *= hilbert_odd_p(a, b, p);
        f.check(product == 1, "product formula fails for " + to_string(a) + ", " + to_string(b));
        ++checks;
    }
    const std::uint64_t small_primes[] = {3, 5, 7, 11, 13};
    for (int i = 0; i < 200; ++i) {
        std::uint64_t p = small_primes[i % 5];
        Rational a = random_rational(rng, 60, 6);
        Rational b = random_rational(rng, 60, 6);
        f.check(hilbert_odd_p(a, b, p) == oracle::hilbert_odd_p(a, b, p),
                "odd-p formula disagrees with solvability mod p^2 at p = " + std::to_string(p) + " for " +
                    to_string(a) + ", " + to_string(b));
        ++checks;
    }
    detail = std::to_string(checks) + " symbol identities over " + std::to_string(hilbert_places().size()) +
             " places, 1000 product-formula pairs, 200 oracle instances";
    return f.message();
}

// --- 4 ------------------------------------------------------------------------------

std::string scaling_invariance(std::uint64_t seed, std::string& detail) {
    Failures f;
    std::mt19937_64 rng(seed ^ 0x4);
    auto primes = primes_below(200, 4, 1);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<int> half_rank(0, 4);
    std::size_t nontrivial = 0;
    for (int i = 0; i < 500; ++i) {
        std::size_t rank = 2 * static_cast<std::size_t>(half_rank(rng)) + 1;
        std::vector<Rational> cs;
        for (std::size_t j = 0; j < rank; ++j) cs.push_back(random_rational(rng, 500, 50));
        // bias lambda towards multiples of p so valuations are exercised
        std::uint64_t p = primes[pick(rng)];
        Rational lambda = random_rational(rng, 500, 50);
        if (i % 2) lambda *= Rational(static_cast<long>(p));
        Place place = Place::odd_prime(p);
        f.check(hilbert(lambda, lambda, place) == 1, "(lambda,lambda)_p != 1 for p = 1 mod 4");
        std::vector<Rational> scaled;
        for (const auto& c : cs) scaled.push_back(lambda * c);
        int before = hasse_witt(cs, place);
        int after = hasse_witt(scaled, place);
        f.check(before == after, "epsilon changed under scaling at p = " + std::to_string(p));
        nontrivial += before == -1;
    }
    detail = "500 odd-rank forms, primes = 1 mod 4 below 200, " + std::to_string(nontrivial) + " with epsilon = -1";
    return f.message();
}

// --- 5 ------------------------------------------------------------------------------

std::string certificate_matrices(std::string& detail) {
    Failures f;
    std::size_t certified = 0;
    auto check_matrix = [&](bool compact, int n) {
        const auto& params = compact ? kAnisotropicPrimes : kIsotropicPrimes;
        const bool odd_rank = (n + 1) % 2 == 1;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                Integer ai = static_cast<unsigned long>(params[i]);
                Integer aj = static_cast<unsigned long>(params[j]);
                auto fi = compact ? make_r(ai, n) : make_q(ai, n);
                auto fj = compact ? make_r(aj, n) : make_q(aj, n);
                auto cert = noncommensurability_certificate(fi, fj);
                std::string at = std::string(compact ? " r" : " q") + "-family n=" + std::to_string(n) + " (" +
                                 std::to_string(params[i]) + "," + std::to_string(params[j]) + ")";
                if (i == j) {
                    f.check(!cert, "diagonal certified" + at);
                    continue;
                }
                f.check(cert.has_value(), "inconclusive" + at);
                if (!cert) continue;
                ++certified;
                if (!odd_rank) {
                    f.check(cert->method == CertificateMethod::discriminant_ratio, "wrong method" + at);
                    continue;
                }
                f.check(cert->method == CertificateMethod::epsilon_at_prime && cert->witness_prime == params[i],
                        "witness is not the row prime" + at);
                f.check(cert->detail == std::make_pair(Integer(-1), Integer(1)), "epsilon values not (-1, +1)" + at);
            }
        }
        if (!odd_rank) return;
        // epsilon pattern: -1 exactly on the diagonal
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                Integer a = static_cast<unsigned long>(params[j]);
                std::uint64_t p = params[i];
                int expected = i == j ? -1 : 1;
                if (compact) {
                    std::uint64_t root = *sqrt_mod(2, p);
                    f.check(epsilon_r_at(a, n, p, root) == expected && epsilon_r_at(a, n, p, p - root) == expected,
                            "epsilon(r) pattern broken at " + std::to_string(p));
                } else {
                    auto e = epsilon_q_at(a, n, p);
                    f.check(e.value == expected && e.closed_form, "epsilon(q) pattern broken at " + std::to_string(p));
                }
            }
        }
    };
    check_matrix(false, 4);
    check_matrix(false, 5);
    check_matrix(true, 4);
    detail = std::to_string(certified) + " of 90 off-diagonal entries certified (q n=4 epsilon, q n=5 discriminant, r n=4 epsilon)";
    return f.message();
}

// --- 6 ------------------------------------------------------------------------------

std::string subgroup_counts(std::string& detail) {
    Failures f;
    const long expected[] = {1, 3, 13, 71, 461, 3447};
    for (std::size_t k = 1; k <= 6; ++k) {
        f.check(oracle::subgroups_brute_force(k).size() == static_cast<std::size_t>(expected[k - 1]),
                "brute force a_" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= 6; ++k) {
        auto tables = enumerate_subgroups(k);
        f.check(tables.size() == static_cast<std::size_t>(expected[k - 1]), "enumeration a_" + std::to_string(k));
        f.check(hall_count(k) == expected[k - 1], "Hall recursion a_" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= 40; ++k) {
        Integer kk;
        mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
        Integer a = hall_count(k);
        f.check(a * a >= kk, "a_k < k^{k/2} at k = " + std::to_string(k));
    }
    detail = "a_1..a_6 = 1 3 13 71 461 3447 by brute force, enumeration and recursion; a_k^2 >= k^k for k <= 40";
    return f.message();
}

// --- 7 ------------------------------------------------------------------------------

std::string no_common_covers(std::string& detail) {
    Failures f;
    auto all = subgroups_up_to(4);
    std::vector<DecoratedGraph> graphs;
    for (const auto& h : all) graphs.push_back(from_subgroup(h));
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto self = has_common_decorated_cover(graphs[i], graphs[i]);
        f.check(self.has_value(), "no witness cover for an identical pair");
        f.check(is_isomorphic(graphs[i], graphs[i]), "graph not isomorphic to itself");
        for (std::size_t j = i + 1; j < graphs.size(); ++j) {
            f.check(!has_common_decorated_cover(graphs[i], graphs[j]),
                    "common cover for distinct subgroups " + std::to_string(i) + ", " + std::to_string(j));
            f.check(!is_isomorphic(graphs[i], graphs[j]), "distinct subgroups give isomorphic graphs");
            ++pairs;
        }
    }
    detail = std::to_string(all.size()) + " subgroups of index <= 4, " + std::to_string(pairs) +
             " distinct pairs without common decorated cover, " + std::to_string(all.size()) + " self-pairs with witness";
    return f.message();
}

// --- 8 ------------------------------------------------------------------------------

std::string tracing_skeleton(std::string& detail) {
    Failures f;
    auto all = subgroups_up_to(4);
    Parcel parcel = default_parcel(4, false);
    std::vector<ManifoldDescriptor> descriptors;
    for (const auto& h : all) descriptors.push_back(assemble(from_subgroup(h), parcel));
    std::size_t pairs = 0;
    std::size_t crossings = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            auto w = distinguishing_word(all[i], all[j]);
            f.check(w.has_value(), "no distinguishing word");
            if (!w) continue;
            // orient so that w lies in the first subgroup
            bool in_i = word_membership(all[i], *w);
            const auto& inside = in_i ? descriptors[i] : descriptors[j];
            const auto& outside = in_i ? descriptors[j] : descriptors[i];
            auto t1 = trace_word(inside, *w);
            auto t2 = trace_word(outside, *w);
            f.check(t1.terminal == BlockKind::V1 && t2.terminal == BlockKind::V0,
                    "terminal blocks not V1/V0 for word " + to_string(*w));
            f.check(t1.crossings == 3 * w->size() && t2.crossings == 3 * w->size(), "crossing count != 3|w|");
            crossings += t1.crossings + t2.crossings;
            ++pairs;
        }
    }
    detail = std::to_string(pairs) + " pairs traced, V1 vs V0 terminals, " + std::to_string(crossings) +
             " boundary crossings at 3 per letter";
    return f.message();
}

// --- 9 ------------------------------------------------------------------------------

std::string counting_pipeline(std::string& detail) {
    Failures f;
    Parcel parcel = default_parcel(4, false);
    CountReport r = count_lower_bound(30, parcel);
    f.check(r.k == 6 && r.descriptor_count == 3447 && r.floor_bound == 216, "count --v 30 report");
    auto descriptors = assemble_all(r.k, parcel);
    f.check(descriptors.size() == 3447, "assembled descriptor count");
    for (const auto& d : descriptors) {
        f.check(is_closed(d), "descriptor not closed");
        f.check(volume_bound(d, parcel) == 30 && d.volume_bound == 30, "volume bound != 5k");
    }

    CountReport r25 = count_lower_bound(25, parcel);
    f.check(r25.k == 5 && r25.descriptor_count == 461, "count --v 25 report");
    auto dir = std::filesystem::temp_directory_path() /
               ("ncm-selftest-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    std::size_t written = emit_descriptors(dir, r25.k, parcel);
    f.check(written == 461, "emitted " + std::to_string(written) + " descriptors");
    std::size_t reread = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        auto d = descriptor_from_json(nlohmann::ordered_json::parse(buf.str()));
        f.check(is_closed(d) && volume_bound(d, parcel) == 25, "emitted descriptor invalid: " + entry.path().string());
        f.check(to_json(d).dump(2) + "\n" == buf.str(), "descriptor round trip not byte-exact");
        ++reread;
    }
    f.check(reread == 461, "re-read " + std::to_string(reread) + " descriptors");
    std::filesystem::remove_all(dir);
    detail = "k=6, 3447 descriptors >= 216, all closed with volume 30; v=25 emitted and re-read 461 descriptors";
    return f.message();
}

}  // namespace

std::vector<Criterion> criteria(std::uint64_t seed) {
    return {
        {1, "prime lists", 1.0, prime_lists},
        {2, "Gauss criterion cross-check", 5.0, gauss_criterion},
        {3, "Hilbert symbol suite", 10.0, [seed](std::string& d) { return hilbert_suite(seed, d); }},
        {4, "scaling invariance of epsilon", 5.0, [seed](std::string& d) { return scaling_invariance(seed, d); }},
        {5, "non-commensurability matrices", 2.0, certificate_matrices},
        {6, "subgroup counts", 30.0, subgroup_counts},
        {7, "no common decorated covers", 60.0, no_common_covers},
        {8, "path-tracing skeleton", 60.0, tracing_skeleton},
        {9, "counting pipeline", 120.0, counting_pipeline},
    };
}

CriterionResult run(const Criterion& c) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget_seconds;
    auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
        failure = c.check(r.detail);
    } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.checks_passed = failure.empty();
    if (!failure.empty()) r.detail = failure;
    return r;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << (r.passed() ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << r.seconds << " s, budget "
      << r.budget_seconds << " s): " << r.detail;
    if (r.checks_passed && !r.passed()) s << " -- over time budget";
    return s.str();
}

}  // namespace ncm::selftest
