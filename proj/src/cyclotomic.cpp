#include "equirr/cyclotomic.hpp"
#include "equirr/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace equirr {

long euler_phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// Exact division of integer polynomials, requires the divisor to be monic
// and the division to be exact (always the case in the cyclotomic chain).
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<BigInt> quot(dn - dd + 1);
    for (size_t k = dn - dd + 1; k-- > 0;) {
        BigInt c = num[k + dd];
        quot[k] = c;
        if (!c.is_zero()) {
            for (size_t i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
        }
    }
    return quot;
}

std::vector<BigInt> compute_cyclotomic(long n);

std::map<long, std::vector<BigInt>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

// Phi_n = (x^n - 1) / prod of Phi_d over proper divisors d of n.
// Callers must have the proper divisors in the cache already.
std::vector<BigInt> compute_cyclotomic(long n) {
    if (n == 1) return {BigInt(-1), BigInt(1)};
    std::vector<BigInt> num(n + 1);
    num[0] = BigInt(-1);
    num[n] = BigInt(1);
    for (long d = 1; d < n; ++d) {
        if (n % d == 0) num = poly_div_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

} // namespace

const std::vector<BigInt>& cyclotomic_polynomial(long n) {
    if (n < 1) throw ValidationError("conductor must be positive");
    {
        std::lock_guard<std::mutex> lock(g_cyclo_mutex);
        auto it = g_cyclo_cache.find(n);
        if (it != g_cyclo_cache.end()) return it->second;
    }
    // Fill the cache bottom-up over divisors so the recursive computation
    // only ever reads entries that are already present.
    for (long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            bool have;
            {
                std::lock_guard<std::mutex> lock(g_cyclo_mutex);
                have = g_cyclo_cache.count(d) != 0;
            }
            if (!have) {
                auto poly = compute_cyclotomic(d);
                std::lock_guard<std::mutex> lock(g_cyclo_mutex);
                g_cyclo_cache.emplace(d, std::move(poly));
            }
        }
    }
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    return g_cyclo_cache.at(n);
}

std::vector<Rational> Cyclotomic::reduce(long n, std::vector<Rational> poly) {
    const std::vector<BigInt>& phi = cyclotomic_polynomial(n);
    size_t deg_phi = phi.size() - 1; // = euler_phi(n)
    if (poly.size() < deg_phi) poly.resize(deg_phi);
    for (size_t d = poly.size(); d-- > deg_phi;) {
        Rational c = poly[d];
        if (!c.is_zero()) {
            poly[d] = Rational(0);
            for (size_t i = 0; i < deg_phi; ++i) {
                poly[d - deg_phi + i] -= c * Rational(phi[i]);
            }
        }
    }
    poly.resize(deg_phi);
    return poly;
}

Cyclotomic Cyclotomic::make(long n, std::vector<Rational> poly) {
    Cyclotomic c;
    c.conductor_ = n;
    c.coeffs_ = reduce(n, std::move(poly));
    return c;
}

Cyclotomic zeta(long n, long k) {
    if (n < 1) throw ValidationError("conductor must be positive");
    if (n > kMaxConductor) throw ValidationError("conductor too large");
    long e = ((k % n) + n) % n;
    std::vector<Rational> poly(e + 1);
    poly[e] = Rational(1);
    return Cyclotomic::make(n, std::move(poly));
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return std::nullopt;
    return coeffs_[0];
}

Cyclotomic Cyclotomic::lifted(long conductor) const {
    if (conductor == conductor_) return *this;
    if (conductor % conductor_ != 0)
        throw ValidationError("cannot lift to a non-multiple conductor");
    long step = conductor / conductor_;
    std::vector<Rational> poly(static_cast<size_t>((coeffs_.size() - 1) * step + 1));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) poly[i * step] = coeffs_[i];
    }
    return make(conductor, std::move(poly));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    long n = std::lcm(conductor_, o.conductor_);
    Cyclotomic a = lifted(n), b = o.lifted(n);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    *this = std::move(a);
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    return *this += -o;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    long n = std::lcm(conductor_, o.conductor_);
    Cyclotomic a = lifted(n), b = o.lifted(n);
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    *this = make(n, std::move(prod));
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
}

Cyclotomic Cyclotomic::galois(long k) const {
    long n = conductor_;
    long kr = ((k % n) + n) % n;
    if (std::gcd(kr == 0 ? n : kr, n) != 1) throw ValidationError("not a Galois element");
    if (n == 1) return *this;
    std::vector<Rational> poly(n);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) poly[(i * kr) % n] += coeffs_[i];
    }
    return make(n, std::move(poly));
}

Cyclotomic Cyclotomic::conj() const {
    return galois(conductor_ - 1 == 0 ? 1 : conductor_ - 1);
}

// Extended Euclid against the cyclotomic polynomial; the polynomial is
// irreducible over Q, so any nonzero value is invertible.
Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw ValidationError("division by zero");
    if (auto r = as_rational()) {
        Cyclotomic result;
        result.conductor_ = conductor_;
        result.coeffs_.assign(coeffs_.size(), Rational(0));
        result.coeffs_[0] = Rational(1) / *r;
        return result;
    }
    using Poly = std::vector<Rational>;
    auto degree = [](const Poly& p) -> long {
        for (size_t i = p.size(); i-- > 0;)
            if (!p[i].is_zero()) return static_cast<long>(i);
        return -1;
    };
    const std::vector<BigInt>& phi_int = cyclotomic_polynomial(conductor_);
    Poly r0(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rational(phi_int[i]);
    Poly r1 = coeffs_;
    Poly s0{Rational(0)}, s1{Rational(1)}; // coefficients of the value in r_i = t_i*phi + s_i*value
    while (degree(r1) > 0) {
        // divide r0 by r1
        Poly rem = r0;
        long d1 = degree(r1);
        Rational lead = r1[d1];
        Poly q(std::max<long>(degree(r0) - d1 + 1, 1));
        for (long d = degree(rem); d >= d1; d = degree(rem)) {
            Rational f = rem[d] / lead;
            q[d - d1] = f;
            for (long i = 0; i <= d1; ++i) rem[d - d1 + i] -= f * r1[i];
        }
        // s_{i+1} = s_{i-1} - q * s_i
        Poly s2(std::max(s0.size(), q.size() + s1.size()));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    long d = degree(r1);
    if (d < 0) throw ConsistencyError("cyclotomic inverse: value not coprime to the cyclotomic polynomial");
    Rational unit = r1[0]; // constant gcd
    for (auto& c : s1) c /= unit;
    return make(conductor_, std::move(s1));
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
    long n = std::lcm(a.conductor_, b.conductor_);
    Cyclotomic x = a.lifted(n), y = b.lifted(n);
    for (size_t i = 0; i < x.coeffs_.size(); ++i) {
        int c = Rational::cmp(x.coeffs_[i], y.coeffs_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Cyclotomic::str() const {
    if (auto r = as_rational()) return r->str();
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (c.is_zero()) continue;
        Rational mag = c.is_negative() ? -c : c;
        if (first) {
            if (c.is_negative()) out << "-";
            first = false;
        } else {
            out << (c.is_negative() ? " - " : " + ");
        }
        bool unit_coeff = mag == Rational(1) && i != 0;
        if (!unit_coeff) out << mag.str();
        if (i != 0) {
            if (!unit_coeff) out << "*";
            out << "z" << conductor_;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

} // namespace equirr
