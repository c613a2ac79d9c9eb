#include "polyrep/arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polyrep {

int ord_p(const Integer& x, unsigned long p) {
    if (x == 0) return kInfiniteOrd;
    Integer y = x;
    int k = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
        ++k;
    }
    return k;
}

int ord_p(const Rational& x, unsigned long p) {
    if (x == 0) return kInfiniteOrd;
    return ord_p(Integer(x.get_num()), p) - ord_p(Integer(x.get_den()), p);
}

Integer unit_part(const Integer& x, unsigned long p) {
    if (x == 0) return 0;
    Integer y = x;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    return y;
}

Integer ipow(const Integer& b, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& b, int e) {
    if (e >= 0) {
        Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
        r.canonicalize();
        return r;
    }
    if (b == 0) throw std::domain_error("zero to a negative power");
    Rational r(ipow(b.get_den(), -e), ipow(b.get_num(), -e));
    r.canonicalize();
    return r;
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int legendre(const Integer& a, unsigned long p) {
    Integer pp = p;
    return mpz_kronecker(a.get_mpz_t(), pp.get_mpz_t());
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 rho_u64(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_u64(u64 n, std::map<Integer, int>& out) {
    if (n == 1) return;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        while (n % p == 0) {
            out[Integer(static_cast<unsigned long>(p))]++;
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[Integer(static_cast<unsigned long>(n))]++;
        return;
    }
    u64 d = rho_u64(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

Integer rho_mpz(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, g = 1;
        while (g == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Integer diff = abs(x - y);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (g != n) return g;
    }
}

void factor_mpz(const Integer& n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        factor_u64(n.get_ui(), out);
        return;
    }
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    Integer d = rho_mpz(n);
    factor_mpz(d, out);
    factor_mpz(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these bases are deterministic below 2^64
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::map<Integer, int> factor(const Integer& n) {
    if (n == 0) throw std::domain_error("factor(0)");
    std::map<Integer, int> out;
    factor_mpz(abs(n), out);
    return out;
}

std::vector<unsigned long> prime_divisors(const Integer& n) {
    std::vector<unsigned long> ps;
    for (auto& [p, e] : factor(n)) {
        if (!mpz_fits_ulong_p(p.get_mpz_t())) throw std::overflow_error("prime divisor exceeds 64 bits");
        ps.push_back(p.get_ui());
    }
    return ps;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<unsigned long> ps;
    if (n < 2) return ps;
    std::vector<bool> comp(n + 1, false);
    for (unsigned long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        ps.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) comp[j] = true;
    }
    return ps;
}

bool is_squarefree(const Integer& n) {
    for (auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

int prime_factor_count(const Integer& x, FactorCountMode mode) {
    if (x == 0) return -1;
    int c = 0;
    for (auto& [p, e] : factor(x)) c += (mode == FactorCountMode::with_multiplicity) ? e : 1;
    return c;
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw UsageError("not a rational: " + s);
    if (q.get_den() == 0) throw UsageError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

Real to_real(const Integer& z) { return Real(z.get_str()); }

Real to_real(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

Integer lcm4(const std::array<Integer, 4>& v) {
    Integer l = 1;
    for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
    return l;
}

}  // namespace polyrep
