#pragma once

// Signed arbitrary-precision integers on 64-bit limbs. Schoolbook
// multiplication and Knuth division are plenty for the operand sizes this
// library sees (a few hundred limbs at the very worst, single digits
// typically).

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ellq {

class Bigint {
public:
    Bigint() = default;
    template <std::integral T>
    Bigint(T v) {
        if (v == 0) return;
        std::uint64_t m;
        if constexpr (std::is_signed_v<T>) {
            sign_ = v > 0 ? 1 : -1;
            long long w = v;
            m = w > 0 ? static_cast<std::uint64_t>(w)
                      : ~static_cast<std::uint64_t>(w) + 1;
        } else {
            sign_ = 1;
            m = static_cast<std::uint64_t>(v);
        }
        d_.push_back(m);
    }
    explicit Bigint(std::string_view s) { *this = from_string(s); }

    static Bigint from_string(std::string_view s) {
        Bigint r;
        std::size_t i = 0;
        int sgn = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sgn = -1;
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("Bigint: empty literal");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Bigint: bad digit");
            r.mul_small_inplace(10);
            r.add_small_inplace(static_cast<std::uint64_t>(s[i] - '0'));
        }
        if (!r.d_.empty()) r.sign_ = sgn;
        return r;
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && d_.size() == 1 && d_[0] == 1; }
    bool odd() const { return !d_.empty() && (d_[0] & 1); }
    bool even() const { return !odd(); }

    bool fits_u64() const { return d_.size() <= 1 && sign_ >= 0; }
    bool fits_i64() const {
        if (d_.size() > 1) return false;
        if (d_.empty()) return true;
        if (sign_ > 0) return d_[0] <= 0x7fffffffffffffffULL;
        return d_[0] <= 0x8000000000000000ULL;
    }
    std::uint64_t to_u64() const {
        if (sign_ < 0 || d_.size() > 1) throw std::overflow_error("Bigint: to_u64");
        return d_.empty() ? 0 : d_[0];
    }
    long long to_i64() const {
        if (!fits_i64()) throw std::overflow_error("Bigint: to_i64");
        if (d_.empty()) return 0;
        return sign_ > 0 ? static_cast<long long>(d_[0])
                         : -static_cast<long long>(d_[0] - 1) - 1;
    }

    std::size_t bit_length() const {
        if (d_.empty()) return 0;
        return 64 * (d_.size() - 1) + (64 - static_cast<std::size_t>(__builtin_clzll(d_.back())));
    }

    // -- comparison ---------------------------------------------------------

    static int cmp_abs(const Bigint& a, const Bigint& b) {
        if (a.d_.size() != b.d_.size()) return a.d_.size() < b.d_.size() ? -1 : 1;
        for (std::size_t i = a.d_.size(); i-- > 0;)
            if (a.d_[i] != b.d_[i]) return a.d_[i] < b.d_[i] ? -1 : 1;
        return 0;
    }
    static int cmp(const Bigint& a, const Bigint& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_abs(a, b);
        return a.sign_ >= 0 ? c : -c;
    }
    friend bool operator==(const Bigint& a, const Bigint& b) { return cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Bigint& a, const Bigint& b) {
        int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    // -- arithmetic ---------------------------------------------------------

    Bigint operator-() const {
        Bigint r = *this;
        r.sign_ = -r.sign_;
        return r;
    }
    Bigint abs() const {
        Bigint r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend Bigint operator+(const Bigint& a, const Bigint& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        Bigint r;
        if (a.sign_ == b.sign_) {
            r.d_ = add_mag(a.d_, b.d_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_abs(a, b);
            if (c == 0) return r;
            if (c > 0) { r.d_ = sub_mag(a.d_, b.d_); r.sign_ = a.sign_; }
            else       { r.d_ = sub_mag(b.d_, a.d_); r.sign_ = b.sign_; }
        }
        return r;
    }
    friend Bigint operator-(const Bigint& a, const Bigint& b) { return a + (-b); }

    friend Bigint operator*(const Bigint& a, const Bigint& b) {
        Bigint r;
        if (a.sign_ == 0 || b.sign_ == 0) return r;
        r.d_.assign(a.d_.size() + b.d_.size(), 0);
        for (std::size_t i = 0; i < a.d_.size(); ++i) {
            unsigned __int128 carry = 0;
            std::uint64_t ai = a.d_[i];
            for (std::size_t j = 0; j < b.d_.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(ai) * b.d_[j] +
                                        r.d_[i + j] + carry;
                r.d_[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            std::size_t k = i + b.d_.size();
            while (carry) {
                unsigned __int128 cur = static_cast<unsigned __int128>(r.d_[k]) + carry;
                r.d_[k] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    Bigint& operator+=(const Bigint& o) { *this = *this + o; return *this; }
    Bigint& operator-=(const Bigint& o) { *this = *this - o; return *this; }
    Bigint& operator*=(const Bigint& o) { *this = *this * o; return *this; }

    // Truncated division (C semantics: quotient rounds toward zero,
    // remainder has the sign of the dividend).
    static void divmod(const Bigint& a, const Bigint& b, Bigint& q, Bigint& r) {
        if (b.sign_ == 0) throw std::domain_error("Bigint: division by zero");
        divmod_mag(a, b, q, r);
        q.sign_ = q.d_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.d_.empty() ? 0 : a.sign_;
    }
    friend Bigint operator/(const Bigint& a, const Bigint& b) {
        Bigint q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend Bigint operator%(const Bigint& a, const Bigint& b) {
        Bigint q, r;
        divmod(a, b, q, r);
        return r;
    }

    // Nonnegative residue in [0, |m|).
    Bigint mod(const Bigint& m) const {
        Bigint r = *this % m;
        if (r.sign_ < 0) r = r + m.abs();
        return r;
    }

    bool divisible_by(const Bigint& b) const { return (*this % b).is_zero(); }

    // Exact division; use when divisibility is known.
    Bigint divexact(const Bigint& b) const {
        Bigint q, r;
        divmod(*this, b, q, r);
        if (!r.is_zero()) throw std::logic_error("Bigint: divexact with remainder");
        return q;
    }

    Bigint pow(std::uint64_t e) const {
        Bigint r(1), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    static Bigint gcd(Bigint a, Bigint b) {
        a.sign_ = a.d_.empty() ? 0 : 1;
        b.sign_ = b.d_.empty() ? 0 : 1;
        if (a.fits_u64() && b.fits_u64()) return Bigint(gcd_u64(a.to_u64(), b.to_u64()));
        while (!b.is_zero()) {
            Bigint r = a % b;
            a = std::move(b);
            b = std::move(r);
            if (a.fits_u64() && b.fits_u64()) return Bigint(gcd_u64(a.to_u64(), b.to_u64()));
        }
        return a;
    }

    // Floor of the k-th root of a nonnegative integer.
    Bigint nth_root(unsigned k) const {
        if (sign_ < 0) throw std::domain_error("Bigint: nth_root of negative");
        if (k == 0) throw std::invalid_argument("Bigint: 0th root");
        if (is_zero() || is_one() || k == 1) return *this;
        std::size_t bits = bit_length();
        Bigint lo(1), hi(1);
        hi <<= (bits / k + 1);
        while (lo < hi - Bigint(1)) {
            Bigint mid = (lo + hi) >> 1;
            if (mid.pow(k) <= *this) lo = mid;
            else hi = mid;
        }
        return lo;
    }

    bool is_perfect_power(unsigned k, Bigint* root = nullptr) const {
        if (sign_ < 0) {
            if (k % 2 == 0) return false;
            Bigint r = (-*this).nth_root(k);
            if (r.pow(k) == -*this) { if (root) *root = -r; return true; }
            return false;
        }
        Bigint r = nth_root(k);
        if (r.pow(k) == *this) { if (root) *root = r; return true; }
        return false;
    }

    Bigint operator<<(std::size_t bits) const { Bigint r = *this; r <<= bits; return r; }
    Bigint operator>>(std::size_t bits) const { Bigint r = *this; r >>= bits; return r; }
    Bigint& operator<<=(std::size_t bits) {
        if (is_zero() || bits == 0) return *this;
        std::size_t limbs = bits / 64, sh = bits % 64;
        if (sh) {
            std::uint64_t carry = 0;
            for (auto& w : d_) {
                std::uint64_t nw = (w << sh) | carry;
                carry = w >> (64 - sh);
                w = nw;
            }
            if (carry) d_.push_back(carry);
        }
        d_.insert(d_.begin(), limbs, 0);
        return *this;
    }
    Bigint& operator>>=(std::size_t bits) {
        std::size_t limbs = bits / 64, sh = bits % 64;
        if (limbs >= d_.size()) { d_.clear(); sign_ = 0; return *this; }
        d_.erase(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(limbs));
        if (sh) {
            for (std::size_t i = 0; i + 1 < d_.size(); ++i)
                d_[i] = (d_[i] >> sh) | (d_[i + 1] << (64 - sh));
            d_.back() >>= sh;
        }
        trim();
        if (d_.empty()) sign_ = 0;
        return *this;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint64_t> mag = d_;
        std::string out;
        while (!mag.empty()) {
            // divide magnitude by 10^19 in place
            unsigned __int128 rem = 0;
            for (std::size_t i = mag.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | mag[i];
                mag[i] = static_cast<std::uint64_t>(cur / TEN19);
                rem = cur % TEN19;
            }
            while (!mag.empty() && mag.back() == 0) mag.pop_back();
            std::uint64_t chunk = static_cast<std::uint64_t>(rem);
            for (int i = 0; i < 19; ++i) {
                out.push_back(static_cast<char>('0' + chunk % 10));
                chunk /= 10;
            }
        }
        while (out.size() > 1 && out.back() == '0') out.pop_back();
        if (sign_ < 0) out.push_back('-');
        std::reverse(out.begin(), out.end());
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Bigint& x) {
        return os << x.to_string();
    }

    // Natural log of the absolute value; |x| must be nonzero.
    double log_abs() const {
        if (is_zero()) throw std::domain_error("Bigint: log of zero");
        std::size_t n = d_.size();
        std::size_t lo = n >= 3 ? n - 3 : 0;
        double top = 0;
        for (std::size_t i = n; i-- > lo;)
            top = top * 18446744073709551616.0 + static_cast<double>(d_[i]);
        return std::log(top) + 64.0 * std::log(2.0) * static_cast<double>(lo);
    }

    double to_double() const {
        double v = 0;
        for (std::size_t i = d_.size(); i-- > 0;)
            v = v * 18446744073709551616.0 + static_cast<double>(d_[i]);
        return sign_ < 0 ? -v : v;
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(sign_ + 2);
        for (auto w : d_) h = h * 0x9e3779b97f4a7c15ULL ^ w;
        return h;
    }

    const std::vector<std::uint64_t>& limbs() const { return d_; }

private:
    static constexpr std::uint64_t TEN19 = 10000000000000000000ULL;

    int sign_ = 0;
    std::vector<std::uint64_t> d_;  // little-endian magnitude, trimmed

    void trim() {
        while (!d_.empty() && d_.back() == 0) d_.pop_back();
        if (d_.empty()) sign_ = 0;
    }

    void mul_small_inplace(std::uint64_t m) {
        unsigned __int128 carry = 0;
        for (auto& w : d_) {
            unsigned __int128 cur = static_cast<unsigned __int128>(w) * m + carry;
            w = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        if (carry) d_.push_back(static_cast<std::uint64_t>(carry));
        trim();
    }
    void add_small_inplace(std::uint64_t v) {
        if (!v) return;
        if (d_.empty()) { d_.push_back(v); sign_ = 1; return; }
        unsigned __int128 cur = static_cast<unsigned __int128>(d_[0]) + v;
        d_[0] = static_cast<std::uint64_t>(cur);
        std::uint64_t carry = static_cast<std::uint64_t>(cur >> 64);
        for (std::size_t i = 1; carry && i < d_.size(); ++i) {
            cur = static_cast<unsigned __int128>(d_[i]) + carry;
            d_[i] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        if (carry) d_.push_back(carry);
    }

    static std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
        while (b) { std::uint64_t t = a % b; a = b; b = t; }
        return a;
    }

    static std::vector<std::uint64_t> add_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint64_t> r = big;
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < small.size(); ++i) {
            unsigned __int128 cur = static_cast<unsigned __int128>(r[i]) + small[i] + carry;
            r[i] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        for (std::size_t i = small.size(); carry && i < r.size(); ++i) {
            unsigned __int128 cur = static_cast<unsigned __int128>(r[i]) + carry;
            r[i] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        if (carry) r.push_back(static_cast<std::uint64_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint64_t> sub_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> r = a;
        std::uint64_t borrow = 0;
        for (std::size_t i = 0; i < b.size() || borrow; ++i) {
            std::uint64_t sub = (i < b.size() ? b[i] : 0);
            std::uint64_t cur = r[i] - sub - borrow;
            borrow = (r[i] < sub + borrow) || (sub == UINT64_MAX && borrow);
            r[i] = cur;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static void divmod_mag(const Bigint& a, const Bigint& b, Bigint& q, Bigint& r) {
        q = Bigint();
        r = Bigint();
        if (cmp_abs(a, b) < 0) {
            r.d_ = a.d_;
            r.sign_ = r.d_.empty() ? 0 : 1;
            return;
        }
        if (b.d_.size() == 1) {
            std::uint64_t d = b.d_[0];
            q.d_.assign(a.d_.size(), 0);
            unsigned __int128 rem = 0;
            for (std::size_t i = a.d_.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | a.d_[i];
                q.d_[i] = static_cast<std::uint64_t>(cur / d);
                rem = cur % d;
            }
            q.trim();
            if (!q.d_.empty()) q.sign_ = 1;
            if (rem) { r.d_.push_back(static_cast<std::uint64_t>(rem)); r.sign_ = 1; }
            return;
        }
        // Knuth algorithm D
        int shift = __builtin_clzll(b.d_.back());
        Bigint u = a.abs() << static_cast<std::size_t>(shift);
        Bigint v = b.abs() << static_cast<std::size_t>(shift);
        std::size_t n = v.d_.size(), m = u.d_.size() - n;
        u.d_.push_back(0);
        q.d_.assign(m + 1, 0);
        std::uint64_t vtop = v.d_[n - 1], vsec = v.d_[n - 2];
        for (std::size_t j = m + 1; j-- > 0;) {
            unsigned __int128 num = (static_cast<unsigned __int128>(u.d_[j + n]) << 64) |
                                    u.d_[j + n - 1];
            unsigned __int128 qhat = num / vtop;
            unsigned __int128 rhat = num % vtop;
            while (qhat >= (static_cast<unsigned __int128>(1) << 64) ||
                   qhat * vsec > ((rhat << 64) | u.d_[j + n - 2])) {
                --qhat;
                rhat += vtop;
                if (rhat >= (static_cast<unsigned __int128>(1) << 64)) break;
            }
            // multiply-subtract
            unsigned __int128 borrow = 0, carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                unsigned __int128 p = qhat * v.d_[i] + carry;
                carry = p >> 64;
                std::uint64_t plo = static_cast<std::uint64_t>(p);
                std::uint64_t ui = u.d_[j + i];
                std::uint64_t diff = ui - plo - static_cast<std::uint64_t>(borrow);
                borrow = (ui < plo + borrow) || (plo == UINT64_MAX && borrow);
                u.d_[j + i] = diff;
            }
            std::uint64_t utop = u.d_[j + n];
            std::uint64_t diff = utop - static_cast<std::uint64_t>(carry) -
                                 static_cast<std::uint64_t>(borrow);
            bool neg = static_cast<unsigned __int128>(utop) < carry + borrow;
            u.d_[j + n] = diff;
            if (neg) {
                // qhat one too large: add back
                --qhat;
                unsigned __int128 c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    unsigned __int128 cur = static_cast<unsigned __int128>(u.d_[j + i]) +
                                            v.d_[i] + c2;
                    u.d_[j + i] = static_cast<std::uint64_t>(cur);
                    c2 = cur >> 64;
                }
                u.d_[j + n] += static_cast<std::uint64_t>(c2);
            }
            q.d_[j] = static_cast<std::uint64_t>(qhat);
        }
        q.trim();
        if (!q.d_.empty()) q.sign_ = 1;
        u.d_.resize(n);
        u.trim();
        r.d_ = std::move(u.d_);
        r.sign_ = r.d_.empty() ? 0 : 1;
        if (shift) r >>= static_cast<std::size_t>(shift);
        r.trim();
        if (r.d_.empty()) r.sign_ = 0;
    }
};

inline Bigint operator""_Z(const char* s, std::size_t n) {
    return Bigint(std::string_view(s, n));
}
inline Bigint operator""_Z(const char* s) { return Bigint(std::string_view(s)); }

}  // namespace ellq
