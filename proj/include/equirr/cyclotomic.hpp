#pragma once

#include "equirr/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace equirr {

// Largest root-of-unity order we agree to work with.
inline constexpr long kMaxConductor = 10000;

long euler_phi(long n);

// Coefficients of the n-th cyclotomic polynomial, ascending degree, monic.
// Computed once per conductor and cached.
const std::vector<BigInt>& cyclotomic_polynomial(long n);

// An exact element of Q(zeta_N): sum c_i * zeta_N^i over the power basis
// {zeta_N^i : 0 <= i < phi(N)}, reduced modulo the N-th cyclotomic
// polynomial. The reduced coefficient vector is unique for a fixed
// conductor; values at different conductors compare by lifting both to the
// lcm. No floating point anywhere.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1), coeffs_(1) {}
    Cyclotomic(Rational r) : conductor_(1), coeffs_{std::move(r)} {}
    Cyclotomic(long long v) : Cyclotomic(Rational(v)) {}

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    // Defined iff the value is fixed by the whole Galois group; in the power
    // basis that is exactly "only the degree-0 coefficient survives".
    std::optional<Rational> as_rational() const;

    // Image under zeta_N -> zeta_N^k; requires gcd(k, N) = 1, else throws
    // ValidationError("not a Galois element"). A ring automorphism.
    Cyclotomic galois(long k) const;
    Cyclotomic conj() const; // galois(-1)

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }

    Cyclotomic inverse() const; // throws ValidationError("division by zero") on 0
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    Cyclotomic& operator*=(const Rational& r);
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }

    // Re-express at a conductor that is a multiple of the current one.
    Cyclotomic lifted(long conductor) const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return compare(a, b) != 0; }

    // Total order on values of a common conductor (lex on reduced
    // coefficients after lifting both sides to the lcm). Used for
    // deterministic sorting; lift a whole value set to one conductor first
    // when transitivity across mixed conductors matters.
    static int compare(const Cyclotomic& a, const Cyclotomic& b);

    // Display form "a0 + a1*z7 + ..."; rational values print as plain
    // fractions.
    std::string str() const;

private:
    long conductor_;
    std::vector<Rational> coeffs_; // size phi(conductor_)

    // Reduce an arbitrary-degree polynomial in zeta_N.
    static std::vector<Rational> reduce(long n, std::vector<Rational> poly);
    static Cyclotomic make(long n, std::vector<Rational> poly);

    friend Cyclotomic zeta(long n, long k);
};

// zeta_N^k in canonical form; zeta(N, 0) = 1. Throws
// ValidationError("conductor too large") beyond kMaxConductor.
Cyclotomic zeta(long n, long k);

} // namespace equirr
