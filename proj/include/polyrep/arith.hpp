#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace polyrep {

using Integer = mpz_class;
using Rational = mpq_class;
// 60 decimal digits; callers print 50
using Real = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<60>>;

using Quad = std::array<long, 4>;

// error kinds map to CLI exit codes 1/2/3
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ObstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kInfiniteOrd = std::numeric_limits<int>::max();

int ord_p(const Integer& x, unsigned long p);   // kInfiniteOrd for x == 0
int ord_p(const Rational& x, unsigned long p);
Integer unit_part(const Integer& x, unsigned long p);
Integer ipow(const Integer& b, unsigned e);
Rational rpow(const Rational& b, int e);

// Jacobi/Kronecker with arbitrary sign of a and n >= 1
int kronecker(const Integer& a, const Integer& n);
int legendre(const Integer& a, unsigned long p);

bool is_prime_u64(std::uint64_t n);
bool is_prime(const Integer& n);
std::map<Integer, int> factor(const Integer& n);   // |n| >= 1
std::vector<unsigned long> prime_divisors(const Integer& n);
std::vector<unsigned long> primes_up_to(unsigned long n);
bool is_squarefree(const Integer& n);

// Omega (with multiplicity) or omega (distinct); x == 0 gives -1
enum class FactorCountMode { with_multiplicity, distinct };
int prime_factor_count(const Integer& x, FactorCountMode mode = FactorCountMode::with_multiplicity);

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);   // "num/den", den always present
std::string to_string(const Integer& z);
std::string to_string(const Real& x, int digits = 50);

Real to_real(const Integer& z);
Real to_real(const Rational& q);

Integer lcm4(const std::array<Integer, 4>& v);

}  // namespace polyrep
