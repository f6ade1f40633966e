#pragma once

// Unsigned arbitrary-precision integers, sized for DAG-counting work
// (a_60 has ~1800 bits). Supports exactly the operations the counting
// recurrences and the uniform sampler need: add, subtract (minuend >=
// subtrahend), multiply, compare, power, shifts, decimal rendering and
// uniform random draws below a bound.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gin/rng.hpp"

namespace gin {

class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {  // NOLINT: implicit on purpose
        if (v != 0) limbs_.push_back(v);
    }

    static BigUint one() { return BigUint(1); }

    bool is_zero() const { return limbs_.empty(); }

    friend int cmp(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
        return 0;
    }
    friend bool operator==(const BigUint& a, const BigUint& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

    friend BigUint operator+(const BigUint& a, const BigUint& b) {
        BigUint r;
        const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
        r.limbs_.resize(n, 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned __int128 s = carry;
            if (i < a.limbs_.size()) s += a.limbs_[i];
            if (i < b.limbs_.size()) s += b.limbs_[i];
            r.limbs_[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint64_t>(carry));
        return r;
    }

    /// Requires a >= b.
    friend BigUint operator-(const BigUint& a, const BigUint& b) {
        if (a < b) throw std::underflow_error("BigUint subtraction underflow");
        BigUint r;
        r.limbs_.resize(a.limbs_.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 av = a.limbs_[i];
            unsigned __int128 bv = (i < b.limbs_.size()) ? b.limbs_[i] : 0;
            bv += static_cast<unsigned __int128>(borrow);
            if (av >= bv) {
                r.limbs_[i] = static_cast<std::uint64_t>(av - bv);
                borrow = 0;
            } else {
                r.limbs_[i] = static_cast<std::uint64_t>((av + (static_cast<unsigned __int128>(1) << 64)) - bv);
                borrow = 1;
            }
        }
        r.trim();
        return r;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        if (a.is_zero() || b.is_zero()) return BigUint();
        BigUint r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j] +
                                        r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                unsigned __int128 cur = static_cast<unsigned __int128>(r.limbs_[k]) + carry;
                r.limbs_[k] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    BigUint& operator+=(const BigUint& o) { return *this = *this + o; }
    BigUint& operator-=(const BigUint& o) { return *this = *this - o; }
    BigUint& operator*=(const BigUint& o) { return *this = *this * o; }

    static BigUint pow2(unsigned k) {
        BigUint r;
        r.limbs_.assign(k / 64 + 1, 0);
        r.limbs_[k / 64] = 1ULL << (k % 64);
        return r;
    }

    static BigUint pow(const BigUint& base, unsigned e) {
        BigUint r = one();
        BigUint b = base;
        while (e) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        std::size_t bits = (limbs_.size() - 1) * 64;
        std::uint64_t top = limbs_.back();
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    /// Uniform draw in [0, *this), *this > 0. Rejection on the bit length.
    BigUint sample_below(Rng& rng) const {
        if (is_zero()) throw std::invalid_argument("sample_below: zero bound");
        const std::size_t bits = bit_length();
        const std::size_t n_limbs = (bits + 63) / 64;
        const unsigned top_bits = static_cast<unsigned>(bits - (n_limbs - 1) * 64);
        const std::uint64_t top_mask =
            top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1ULL);
        for (;;) {
            BigUint candidate;
            candidate.limbs_.resize(n_limbs);
            for (std::size_t i = 0; i < n_limbs; ++i) candidate.limbs_[i] = rng.next_u64();
            candidate.limbs_.back() &= top_mask;
            candidate.trim();
            if (candidate < *this) return candidate;
        }
    }

    double to_double() const {
        double r = 0.0;
        for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 0x1.0p64 + static_cast<double>(limbs_[i]);
        return r;
    }

    std::uint64_t to_u64() const {
        if (limbs_.size() > 1) throw std::overflow_error("BigUint does not fit u64");
        return limbs_.empty() ? 0 : limbs_[0];
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint64_t> work(limbs_);
        std::string out;
        while (!work.empty()) {
            // Long division by 10^18, one limb pass.
            constexpr std::uint64_t kChunk = 1000000000000000000ULL;
            unsigned __int128 rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | work[i];
                work[i] = static_cast<std::uint64_t>(cur / kChunk);
                rem = cur % kChunk;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string part = std::to_string(static_cast<std::uint64_t>(rem));
            if (!work.empty()) part.insert(0, 18 - part.size(), '0');
            out.insert(0, part);
        }
        return out;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    // Little-endian 64-bit limbs; empty means zero.
    std::vector<std::uint64_t> limbs_;
};

}  // namespace gin
