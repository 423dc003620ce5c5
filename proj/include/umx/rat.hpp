#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "umx/errors.hpp"

namespace umx {

/// Arbitrary-precision natural number (unsigned), base 2^32 limbs.
///
/// Only the operations the rational layer needs: comparison, addition,
/// multiplication, division with remainder, gcd, and strict decimal I/O.
class Natural {
public:
    Natural() = default;

    explicit Natural(std::uint64_t v) {
        if (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
            if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
        }
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
    bool single_limb() const { return limbs_.size() <= 1; }

    /// Value of the low limb; only meaningful when single_limb().
    std::uint32_t low_u32() const { return limbs_.empty() ? 0u : limbs_[0]; }

    static int cmp(const Natural& a, const Natural& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
        return 0;
    }

    friend bool operator==(const Natural& a, const Natural& b) { return cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        const int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend Natural operator+(const Natural& a, const Natural& b) {
        Natural r;
        const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
        r.limbs_.resize(n, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t s = carry;
            if (i < a.limbs_.size()) s += a.limbs_[i];
            if (i < b.limbs_.size()) s += b.limbs_[i];
            r.limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
            carry = s >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    /// Difference a - b; requires a >= b.
    friend Natural operator-(const Natural& a, const Natural& b) {
        Natural r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
            std::int64_t v = static_cast<std::int64_t>(r.limbs_[i]) - borrow -
                             (i < b.limbs_.size() ? static_cast<std::int64_t>(b.limbs_[i]) : 0);
            borrow = 0;
            if (v < 0) {
                v += (std::int64_t{1} << 32);
                borrow = 1;
            }
            r.limbs_[i] = static_cast<std::uint32_t>(v);
        }
        r.trim();
        return r;
    }

    friend Natural operator*(const Natural& a, const Natural& b) {
        if (a.is_zero() || b.is_zero()) return Natural{};
        Natural r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                // (2^32-1)^2 + 2*(2^32-1) = 2^64-1, so this never overflows.
                const std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                          r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                const std::uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Natural, Natural> divmod(const Natural& a, const Natural& b) {
        if (b.is_zero()) throw Error("Natural::divmod: division by zero");
        if (cmp(a, b) < 0) return {Natural{}, a};
        if (b.single_limb()) {
            Natural q;
            q.limbs_.resize(a.limbs_.size());
            const std::uint64_t d = b.limbs_[0];
            std::uint64_t rem = 0;
            for (std::size_t i = a.limbs_.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | a.limbs_[i];
                q.limbs_[i] = static_cast<std::uint32_t>(cur / d);
                rem = cur % d;
            }
            q.trim();
            return {q, Natural{rem}};
        }
        // Shift-subtract long division over the dividend's bits.
        Natural q, rem;
        q.limbs_.assign(a.limbs_.size(), 0);
        for (std::size_t bit = a.bit_count(); bit-- > 0;) {
            rem.shl1();
            if (a.get_bit(bit)) rem.set_bit0();
            if (cmp(rem, b) >= 0) {
                rem = rem - b;
                q.limbs_[bit / 32] |= (std::uint32_t{1} << (bit % 32));
            }
        }
        q.trim();
        return {q, rem};
    }

    friend Natural operator/(const Natural& a, const Natural& b) { return divmod(a, b).first; }
    friend Natural operator%(const Natural& a, const Natural& b) { return divmod(a, b).second; }

    static Natural gcd(Natural a, Natural b) {
        while (!b.is_zero()) {
            Natural r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    /// Strict decimal parse: digits only, no sign, no leading zero except "0".
    static Natural parse_decimal(std::string_view s) {
        if (s.empty()) throw ParseError("empty integer literal");
        for (char c : s)
            if (c < '0' || c > '9')
                throw ParseError("invalid integer literal \"" + std::string(s) + "\"");
        if (s.size() > 1 && s[0] == '0')
            throw ParseError("integer literal \"" + std::string(s) + "\" has a leading zero");
        Natural r;
        for (char c : s) {
            r.mul_u32(10);
            r.add_u32(static_cast<std::uint32_t>(c - '0'));
        }
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> chunks;  // base 10^9, little endian
        Natural rest = *this;
        const Natural billion{1000000000u};
        while (!rest.is_zero()) {
            auto [q, r] = divmod(rest, billion);
            chunks.push_back(r.low_u32());
            rest = std::move(q);
        }
        std::string out = std::to_string(chunks.back());
        for (std::size_t i = chunks.size() - 1; i-- > 0;) {
            std::string part = std::to_string(chunks[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

private:
    std::vector<std::uint32_t> limbs_;  // little endian, no trailing zero limb

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::size_t bit_count() const {
        if (limbs_.empty()) return 0;
        std::size_t bits = limbs_.size() * 32;
        std::uint32_t top = limbs_.back();
        while (!(top & 0x80000000u)) {
            top <<= 1;
            --bits;
        }
        return bits;
    }

    bool get_bit(std::size_t i) const {
        return (limbs_[i / 32] >> (i % 32)) & 1u;
    }

    void shl1() {
        std::uint32_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) limbs_.push_back(carry);
    }

    void set_bit0() {
        if (limbs_.empty()) limbs_.push_back(1);
        else limbs_[0] |= 1u;
    }

    void mul_u32(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        trim();
    }

    void add_u32(std::uint32_t v) {
        std::uint64_t carry = v;
        for (std::size_t i = 0; i < limbs_.size() && carry; ++i) {
            std::uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }
};

/// Exact nonnegative rational in lowest terms. Every distance, radius and
/// diameter in the library is a Rat; no floating point appears anywhere,
/// so equalities like d(a,b) == dist(A,B) are decidable.
class Rat {
public:
    Rat() : num_(), den_(1) {}

    Rat(std::uint64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose

    Rat(std::uint64_t n, std::uint64_t d) : Rat(Natural{n}, Natural{d}) {}

    Rat(Natural n, Natural d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw ParseError("rational with zero denominator");
        reduce();
    }

    const Natural& num() const { return num_; }
    const Natural& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    static int cmp(const Rat& a, const Rat& b) {
        // Cross-multiplied compare; u64 fast path when every part fits a limb.
        if (a.num_.single_limb() && a.den_.single_limb() &&
            b.num_.single_limb() && b.den_.single_limb()) {
            const std::uint64_t lhs = static_cast<std::uint64_t>(a.num_.low_u32()) * b.den_.low_u32();
            const std::uint64_t rhs = static_cast<std::uint64_t>(b.num_.low_u32()) * a.den_.low_u32();
            return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
        }
        return Natural::cmp(a.num_ * b.den_, b.num_ * a.den_);
    }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }

    /// Strict parse of the wire format: "p" or "p/q", canonical only.
    /// Rejects non-reduced fractions ("2/4"), zero denominators, signs,
    /// leading zeros, and anything else that str() never produces.
    static Rat parse(std::string_view s) {
        const auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            return Rat(Natural::parse_decimal(s), Natural{1});
        }
        if (s.find('/', slash + 1) != std::string_view::npos)
            throw ParseError("invalid rational \"" + std::string(s) + "\"");
        Natural n = Natural::parse_decimal(s.substr(0, slash));
        Natural d = Natural::parse_decimal(s.substr(slash + 1));
        if (d.is_zero()) throw ParseError("rational \"" + std::string(s) + "\" has zero denominator");
        if (!(Natural::gcd(n, d).is_one()))
            throw ParseError("non-canonical rational \"" + std::string(s) + "\": reduce to lowest terms");
        return Rat(std::move(n), std::move(d));
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    Natural num_;
    Natural den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = Natural{1};
            return;
        }
        Natural g = Natural::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace umx
