#include "equirr/rational.hpp"
#include "equirr/errors.hpp"

namespace equirr {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("division by zero");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (!den_.is_one()) {
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ /= g;
            den_ /= g;
        }
    }
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt::parse(s));
    BigInt num = BigInt::parse(s.substr(0, slash));
    BigInt den = BigInt::parse(s.substr(slash + 1));
    if (den.is_zero()) throw ValidationError("division by zero");
    return Rational(std::move(num), std::move(den));
}

BigInt Rational::as_integer() const {
    if (!is_integer()) throw ValidationError("not an integer: " + str());
    return num_;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_.is_zero()) throw ValidationError("division by zero");
    BigInt new_num = num_ * o.den_;
    BigInt new_den = den_ * o.num_; // read o before writing, o may alias *this
    num_ = std::move(new_num);
    den_ = std::move(new_den);
    reduce();
    return *this;
}

int Rational::cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

std::string Rational::str() const {
    if (den_.is_one()) return num_.str();
    return num_.str() + "/" + den_.str();
}

} // namespace equirr
