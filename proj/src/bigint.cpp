#include "equirr/bigint.hpp"
#include "equirr/errors.hpp"

#include <algorithm>
#include <limits>

namespace equirr {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid overflow negating LLONG_MIN
    unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                 : static_cast<unsigned long long>(v);
    while (u != 0) {
        mag_.push_back(static_cast<uint32_t>(u & 0xffffffffULL));
        u >>= 32;
    }
}

void BigInt::normalize() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

bool BigInt::is_one() const {
    return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(x.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0);
        r[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[x.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t d = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry != 0) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Binary long division on magnitudes. Numbers here stay a few hundred bits,
// so the O(bits * limbs) cost is irrelevant.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.assign(a.size(), 0);
    r.clear();
    for (size_t limb = a.size(); limb-- > 0;) {
        for (int bit = 31; bit >= 0; --bit) {
            // r = r*2 + next bit of a
            uint32_t carry = (a[limb] >> bit) & 1u;
            for (size_t i = 0; i < r.size(); ++i) {
                uint32_t next = r[i] >> 31;
                r[i] = (r[i] << 1) | carry;
                carry = next;
            }
            if (carry) r.push_back(carry);
            if (cmp_mag(r, b) >= 0) {
                r = sub_mag(r, b);
                q[limb] |= (1u << bit);
            }
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw ValidationError("division by zero");
    if (a.sign_ == 0) {
        q = BigInt();
        r = BigInt();
        return;
    }
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) {
        *this = o;
        return *this;
    }
    if (sign_ == o.sign_) {
        mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) {
            sign_ = 0;
            mag_.clear();
        } else if (c > 0) {
            mag_ = sub_mag(mag_, o.mag_);
        } else {
            mag_ = sub_mag(o.mag_, mag_);
            sign_ = o.sign_;
        }
    }
    normalize();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
    return *this += -o;
}

BigInt& BigInt::operator*=(const BigInt& o) {
    sign_ *= o.sign_;
    mag_ = mul_mag(mag_, o.mag_);
    normalize();
    return *this;
}

BigInt& BigInt::operator/=(const BigInt& o) {
    BigInt q, r;
    divmod(*this, o, q, r);
    *this = std::move(q);
    return *this;
}

BigInt& BigInt::operator%=(const BigInt& o) {
    BigInt q, r;
    divmod(*this, o, q, r);
    *this = std::move(r);
    return *this;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs(), y = b.abs();
    while (!y.is_zero()) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

BigInt BigInt::lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return (a.abs() / gcd(a, b)) * b.abs();
}

BigInt BigInt::parse(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw ValidationError("invalid integer: '" + s + "'");
    BigInt r;
    BigInt ten(10);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ValidationError("invalid integer: '" + s + "'");
        r *= ten;
        r += BigInt(s[i] - '0');
    }
    if (neg) r = -r;
    return r;
}

std::string BigInt::str() const {
    if (sign_ == 0) return "0";
    std::string digits;
    BigInt x = abs();
    BigInt chunk(1000000000LL);
    while (!x.is_zero()) {
        BigInt q, r;
        divmod(x, chunk, q, r);
        unsigned long long part = r.mag_.empty() ? 0ULL : r.mag_[0];
        if (r.mag_.size() > 1) part |= static_cast<unsigned long long>(r.mag_[1]) << 32;
        std::string p = std::to_string(part);
        if (!q.is_zero()) p = std::string(9 - p.size(), '0') + p;
        digits = p + digits;
        x = std::move(q);
    }
    return sign_ < 0 ? "-" + digits : digits;
}

bool BigInt::fits_int64() const {
    if (mag_.size() < 2) return true;
    if (mag_.size() > 2) return false;
    uint64_t v = (static_cast<uint64_t>(mag_[1]) << 32) | mag_[0];
    if (sign_ > 0) return v <= static_cast<uint64_t>(std::numeric_limits<long long>::max());
    return v <= static_cast<uint64_t>(std::numeric_limits<long long>::max()) + 1ULL;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw ValidationError("integer out of 64-bit range: " + str());
    if (sign_ == 0) return 0;
    uint64_t v = mag_[0];
    if (mag_.size() > 1) v |= static_cast<uint64_t>(mag_[1]) << 32;
    if (sign_ > 0) return static_cast<long long>(v);
    return static_cast<long long>(~v + 1ULL);
}

} // namespace equirr
