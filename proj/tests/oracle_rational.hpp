#pragma once
#include <cmath>

// Exact rational arithmetic for re-checking closure witnesses, independent of
// the floating-point plane engine. Only add/sub/mul/compare are needed, so
// rationals stay unnormalized and integers never divide.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

struct BigInt {
    int sign = 0;                   // -1, 0, +1
    std::vector<std::uint32_t> mag; // little-endian base 2^32

    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) {
            sign = -1;
            v = -v;
        } else if (v > 0) {
            sign = 1;
        }
        while (v) {
            mag.push_back(static_cast<std::uint32_t>(v & 0xffffffffULL));
            v >>= 32;
        }
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r;
        std::uint64_t carry = 0;
        for (size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
            std::uint64_t s = carry;
            if (i < a.size()) s += a[i];
            if (i < b.size()) s += b[i];
            r.push_back(static_cast<std::uint32_t>(s & 0xffffffffULL));
            carry = s >> 32;
        }
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            std::int64_t s = static_cast<std::int64_t>(r[i]) - borrow -
                             (i < b.size() ? b[i] : 0);
            borrow = 0;
            if (s < 0) {
                s += (1LL << 32);
                borrow = 1;
            }
            r[i] = static_cast<std::uint32_t>(s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        BigInt r;
        if (a.sign == b.sign) {
            r.sign = a.sign;
            r.mag = add_mag(a.mag, b.mag);
        } else {
            int c = cmp_mag(a.mag, b.mag);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.sign = a.sign;
                r.mag = sub_mag(a.mag, b.mag);
            } else {
                r.sign = b.sign;
                r.mag = sub_mag(b.mag, a.mag);
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign = -r.sign;
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign == 0 || b.sign == 0) return BigInt();
        BigInt r;
        r.sign = a.sign * b.sign;
        r.mag.assign(a.mag.size() + b.mag.size(), 0);
        for (size_t i = 0; i < a.mag.size(); ++i) {
            std::uint64_t carry = 0;
            for (size_t j = 0; j < b.mag.size() || carry; ++j) {
                std::uint64_t cur = r.mag[i + j] + carry;
                if (j < b.mag.size())
                    cur += static_cast<std::uint64_t>(a.mag[i]) * b.mag[j];
                r.mag[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
            }
        }
        while (!r.mag.empty() && r.mag.back() == 0) r.mag.pop_back();
        return r;
    }

    friend int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
        int c = cmp_mag(a.mag, b.mag);
        return a.sign >= 0 ? c : -c;
    }
};

struct Rat {
    BigInt num;
    BigInt den; // > 0

    Rat() : num(0), den(1) {}
    Rat(long long n, long long d = 1) : num(n), den(d) {
        if (d <= 0) throw std::runtime_error("nonpositive denominator");
    }

    static Rat make(BigInt n, BigInt d) {
        Rat r;
        if (d.sign == 0) throw std::runtime_error("division by zero");
        if (d.sign < 0) {
            n = -n;
            d = -d;
        }
        r.num = n;
        r.den = d;
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(a.num * b.num, a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        return make(a.num * b.den, a.den * b.num);
    }
    friend int cmp(const Rat& a, const Rat& b) { return cmp(a.num * b.den, b.num * a.den); }
    bool negative() const { return num.sign < 0; }
    bool zero() const { return num.sign == 0; }
    Rat abs() const {
        Rat r = *this;
        r.num.sign = r.num.sign == 0 ? 0 : 1;
        return r;
    }
};

// the piecewise product of the flat plane with slope constant k (exact)
inline Rat moulton_mul(const Rat& s, const Rat& x, const Rat& k) {
    if (s.negative() && x.negative()) return s * k * x;
    return s * x;
}

struct RatPoint {
    Rat x, y;
};
struct RatLine {
    bool vertical = false;
    Rat s, t; // vertical: s is the foot
};

inline RatLine moulton_join(const RatPoint& p, const RatPoint& q, const Rat& k) {
    RatLine l;
    if (cmp(p.x, q.x) == 0) {
        l.vertical = true;
        l.s = p.x;
        return l;
    }
    Rat straight = (p.y - q.y) / (p.x - q.x);
    if (!straight.negative()) {
        l.s = straight;
        l.t = p.y - moulton_mul(l.s, p.x, k);
        return l;
    }
    auto m = [&](const Rat& x) { return x.negative() ? k * x : x; };
    l.s = (p.y - q.y) / (m(p.x) - m(q.x));
    l.t = p.y - moulton_mul(l.s, p.x, k);
    return l;
}

inline RatPoint moulton_meet(const RatLine& a, const RatLine& b, const Rat& k) {
    if (a.vertical) {
        return {a.s, moulton_mul(b.s, a.s, k) + b.t};
    }
    if (b.vertical) {
        return {b.s, moulton_mul(a.s, b.s, k) + a.t};
    }
    Rat xplus = (b.t - a.t) / (a.s - b.s);
    if (!xplus.negative()) return {xplus, a.s * xplus + a.t};
    auto eff = [&](const Rat& s) { return s.negative() ? k * s : s; };
    Rat xneg = (b.t - a.t) / (eff(a.s) - eff(b.s));
    return {xneg, moulton_mul(a.s, xneg, k) + a.t};
}

inline Rat snap(double v, long long den = 1024) {
    return Rat(static_cast<long long>(v * static_cast<double>(den)), den);
}

inline double to_double(const Rat& r) {
    // top 96 bits of each side plus an exponent difference; reporting only,
    // comparisons stay exact
    auto top = [](const BigInt& b, long& exp2) {
        double v = 0;
        size_t n = b.mag.size();
        size_t take = n > 3 ? 3 : n;
        for (size_t i = 0; i < take; ++i)
            v = v * 4294967296.0 + b.mag[n - 1 - i];
        exp2 = static_cast<long>(32 * (n - take));
        return v;
    };
    if (r.num.sign == 0) return 0.0;
    long en = 0, ed = 0;
    double n = top(r.num, en), d = top(r.den, ed);
    double v = (n / d) * std::pow(2.0, static_cast<double>(en - ed));
    return r.num.sign < 0 ? -v : v;
}

} // namespace oracle
