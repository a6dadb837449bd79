#include "ncm/exact_arith.hpp"

#include <algorithm>
#include <map>

#include "ncm/errors.hpp"

namespace ncm {

Rational make_rational(const Integer& num, const Integer& den) {
    require(sgn(den) != 0, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        Integer z;
        require(!s.empty() && z.set_str(s, 10) == 0, "not a rational number: '" + text + "'");
        return z;
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const Rational& x) { return x.get_str(); }

int sign(const Integer& x) { return sgn(x); }
int sign(const Rational& x) { return sgn(x); }

// --- QSqrt2 ------------------------------------------------------------------

QSqrt2::QSqrt2(Rational rational_part, Rational sqrt2_part)
    : r_(std::move(rational_part)), s_(std::move(sqrt2_part)) {
    r_.canonicalize();
    s_.canonicalize();
}

Rational QSqrt2::norm() const { return Rational(r_ * r_ - 2 * s_ * s_); }

int QSqrt2::real_sign(bool conjugate_embedding) const {
    int rs = sgn(r_);
    int ss = conjugate_embedding ? -sgn(s_) : sgn(s_);
    if (ss == 0) return rs;
    if (rs == 0 || rs == ss) return ss;
    // opposite signs: compare r^2 with 2 s^2
    int c = cmp(Rational(r_ * r_), Rational(2 * s_ * s_));
    return c > 0 ? rs : ss;
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
    r_ += o.r_;
    s_ += o.s_;
    return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
    r_ -= o.r_;
    s_ -= o.s_;
    return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
    Rational r = r_ * o.r_ + 2 * s_ * o.s_;
    Rational s = r_ * o.s_ + s_ * o.r_;
    r_ = std::move(r);
    s_ = std::move(s);
    return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
    require(!o.is_zero(), "division by zero in Q(sqrt 2)");
    Rational n = o.norm();
    *this *= o.conjugate();
    r_ /= n;
    s_ /= n;
    return *this;
}

std::string to_string(const QSqrt2& x) {
    if (x.is_rational()) return to_string(x.rational_part());
    std::string s;
    if (sgn(x.rational_part()) != 0) {
        s = to_string(x.rational_part());
        s += sgn(x.sqrt2_part()) < 0 ? "-" : "+";
    } else if (sgn(x.sqrt2_part()) < 0) {
        s = "-";
    }
    Rational c = abs(x.sqrt2_part());
    if (c != 1) s += to_string(c) + "*";
    return s + "sqrt2";
}

// --- primes and residues -----------------------------------------------------

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a proven deterministic set below 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const Integer& n) {
    require(sgn(n) >= 0 && mpz_fits_ulong_p(n.get_mpz_t()), "primality test limited to 64-bit inputs");
    return is_prime(static_cast<std::uint64_t>(n.get_ui()));
}

std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
    require(m > 0, "zero modulus");
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
    return r.get_ui();
}

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0 mod p
    return pow_mod(a, p - 2, p);
}

void require_odd_prime(std::uint64_t p) {
    require(p != 2, "p = 2 is not an odd prime");
    require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
}

}  // namespace

std::uint64_t residue_mod_p(const Rational& x, std::uint64_t p) {
    std::uint64_t den = mod_u64(x.get_den(), p);
    require(den != 0, "p divides the denominator");
    return mul_mod(mod_u64(x.get_num(), p), inverse_mod(den, p), p);
}

int legendre_symbol(const Integer& u, std::uint64_t p) {
    require_odd_prime(p);
    std::uint64_t r = mod_u64(u, p);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod(const Integer& u, std::uint64_t p) {
    int ls = legendre_symbol(u, p);
    std::uint64_t n = mod_u64(u, p);
    if (ls == 0) return 0;
    if (ls < 0) return std::nullopt;

    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;

    std::uint64_t m = static_cast<std::uint64_t>(s);
    std::uint64_t c = pow_mod(z, q, p);
    std::uint64_t t = pow_mod(n, q, p);
    std::uint64_t r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mul_mod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    ensure(mul_mod(r, r, p) == n, "Tonelli-Shanks produced a wrong root");
    return std::min(r, p - r);
}

long valuation(const Integer& x, std::uint64_t p) {
    require(sgn(x) != 0, "valuation of zero");
    Integer y = x;
    long v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
        ++v;
    }
    return v;
}

ValuationDecomposition padic_valuation(const Rational& x, std::uint64_t p) {
    require(sgn(x) != 0, "p-adic valuation of zero");
    require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
    long vn = valuation(x.get_num(), p);
    long vd = valuation(x.get_den(), p);
    Integer pn, pd;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(vn));
    mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(vd));
    Rational unit = make_rational(Integer(x.get_num() / pn), Integer(x.get_den() / pd));
    return {vn - vd, unit};
}

std::uint64_t embed_sqrt2_mod_p(const QSqrt2& x, std::uint64_t p, std::uint64_t root) {
    require_odd_prime(p);
    require(root < p && mul_mod(root, root, p) == 2 % p, "root is not a square root of 2 mod p");
    std::uint64_t r = residue_mod_p(x.rational_part(), p);
    std::uint64_t s = residue_mod_p(x.sqrt2_part(), p);
    std::uint64_t image = (r + mul_mod(s, root, p)) % p;
    require(image != 0, "element has positive valuation at the chosen prime; decompose it first");
    return image;
}

QSqrt2 split_prime_uniformizer(std::uint64_t p, std::uint64_t root) {
    require_odd_prime(p);
    require(root < p && mul_mod(root, root, p) == 2, "root is not a square root of 2 mod p");
    for (std::uint64_t d = 0; d <= p; ++d) {
        Integer twod2 = Integer(2) * d * d;
        for (int norm_sign : {1, -1}) {
            Integer c2 = twod2 + norm_sign * Integer(static_cast<unsigned long>(p));
            if (sgn(c2) < 0 || !is_square(c2)) continue;
            Integer c = sqrt(c2);
            for (int ds : {1, -1}) {
                QSqrt2 pi(Rational(c), Rational(ds * Integer(static_cast<unsigned long>(d))));
                std::uint64_t res = (mod_u64(pi.rational_part().get_num(), p) +
                                     mul_mod(mod_u64(pi.sqrt2_part().get_num(), p), root, p)) % p;
                if (res == 0) return pi;
            }
        }
    }
    throw PreconditionError("p = " + std::to_string(p) + " does not split in Q(sqrt 2)");
}

SplitPrimeDecomposition decompose_at_split_prime(const QSqrt2& x, std::uint64_t p,
                                                 std::uint64_t root) {
    require(!x.is_zero(), "valuation of zero");
    require_odd_prime(p);
    require(root < p && mul_mod(root, root, p) == 2, "root is not a square root of 2 mod p");

    // Scale by a power of p (a uniformizer times its coprime conjugate)
    // so both coordinates are p-integral and not both divisible by p.
    long shift = 0;
    bool first = true;
    for (const Rational* part : {&x.rational_part(), &x.sqrt2_part()}) {
        if (sgn(*part) == 0) continue;
        long v = padic_valuation(*part, p).exponent;
        shift = first ? v : std::min(shift, v);
        first = false;
    }
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    QSqrt2 y = shift < 0 ? x * QSqrt2(Rational(pk)) : x / QSqrt2(Rational(pk));

    long exponent = shift;
    std::optional<QSqrt2> pi;
    for (;;) {
        std::uint64_t image = (residue_mod_p(y.rational_part(), p) +
                               mul_mod(residue_mod_p(y.sqrt2_part(), p), root, p)) % p;
        if (image != 0) return {exponent, image};
        if (!pi) pi = split_prime_uniformizer(p, root);
        y /= *pi;
        ++exponent;
    }
}

// --- factorization -------------------------------------------------------------

namespace {

Integer pollard_brent(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 64;
        auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(Integer(x - y))) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(Integer(x - ys)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        ++out[n];
        return;
    }
    if (is_square(n)) {
        Integer r = sqrt(n);
        split_into(r, out);
        split_into(r, out);
        return;
    }
    Integer d = pollard_brent(n);
    split_into(d, out);
    split_into(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
    require(sgn(n) != 0, "cannot factor zero");
    Integer m = abs(n);
    std::map<Integer, unsigned> found;
    for (unsigned long d = 2; d < 1u << 16; d += (d == 2 ? 1 : 2)) {
        if (Integer(d) * d > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
            ++found[Integer(d)];
        }
    }
    split_into(m, found);
    return {found.begin(), found.end()};
}

std::vector<std::uint64_t> odd_prime_support(const Rational& x) {
    require(sgn(x) != 0, "prime support of zero");
    std::vector<std::uint64_t> primes;
    for (const Integer* part : {&x.get_num(), &x.get_den()}) {
        for (const auto& [q, e] : factorize(*part)) {
            require(mpz_fits_ulong_p(q.get_mpz_t()), "prime factor exceeds 64 bits");
            if (q != 2) primes.push_back(q.get_ui());
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

Integer squarefree_part(const Integer& n) {
    Integer s = sgn(n) < 0 ? -1 : 1;
    for (const auto& [q, e] : factorize(n)) {
        if (e % 2 == 1) s *= q;
    }
    return s;
}

Integer squarefree_class(const Rational& x) {
    require(sgn(x) != 0, "square class of zero");
    return squarefree_part(Integer(x.get_num() * x.get_den()));
}

bool is_square(const Integer& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool is_square(const Rational& x) { return is_square(x.get_num()) && is_square(x.get_den()); }

bool is_square_in_qsqrt2(const Rational& c) {
    return is_square(c) || is_square(Rational(2 * c));
}

}  // namespace ncm
