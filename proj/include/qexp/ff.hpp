#ifndef QEXP_FF_HPP
#define QEXP_FF_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qexp {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;

/// Moduli are bounded so that a product of two residues fits in 128 bits
/// with room to spare for the additive reductions.
inline constexpr u64 kMaxModulus = u64{1} << 61;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin; this base set is exact for all 64-bit n.
inline bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

class FieldElement;

/// The prime field F_p. Cheap to copy; carries only the modulus.
class PrimeField {
public:
    explicit PrimeField(u64 p) : p_(p) {
        if (p < 2 || p >= kMaxModulus) {
            throw std::invalid_argument("PrimeField: modulus must satisfy 2 <= p < 2^61, got " +
                                        std::to_string(p));
        }
        if (!detail::is_prime(p)) {
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
        }
    }

    u64 modulus() const noexcept { return p_; }
    bool is_char2() const noexcept { return p_ == 2; }

    u64 reduce(i64 v) const noexcept {
        i64 r = v % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }

    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept {
        if (p_ < (u64{1} << 32)) return a * b % p_;
        return detail::mulmod(a, b, p_);
    }
    u64 pow(u64 a, u64 e) const noexcept { return detail::powmod(a, e, p_); }
    u64 inv(u64 a) const {
        if (a % p_ == 0) throw std::domain_error("PrimeField: division by zero");
        return detail::powmod(a, p_ - 2, p_);
    }
    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

    FieldElement element(i64 v) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    u64 p_;
};

/// A residue together with its modulus. Mixing moduli throws.
class FieldElement {
public:
    FieldElement(const PrimeField& field, i64 v) : value_(field.reduce(v)), modulus_(field.modulus()) {}

    static FieldElement from_residue(const PrimeField& field, u64 residue) {
        FieldElement e(field, 0);
        e.value_ = residue % field.modulus();
        return e;
    }

    u64 value() const noexcept { return value_; }
    u64 modulus() const noexcept { return modulus_; }
    PrimeField field() const { return PrimeField(modulus_); }
    bool is_zero() const noexcept { return value_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return make(a.modulus_, a.value_ + b.value_ >= a.modulus_ ? a.value_ + b.value_ - a.modulus_
                                                                   : a.value_ + b.value_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return make(a.modulus_, a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_);
    }
    friend FieldElement operator-(const FieldElement& a) { return make(a.modulus_, a.value_ ? a.modulus_ - a.value_ : 0); }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return make(a.modulus_, detail::mulmod(a.value_, b.value_, a.modulus_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        if (b.value_ == 0) throw std::domain_error("FieldElement: division by zero");
        return make(a.modulus_, detail::mulmod(a.value_, detail::powmod(b.value_, b.modulus_ - 2, b.modulus_),
                                               a.modulus_));
    }
    FieldElement pow(u64 e) const { return make(modulus_, detail::powmod(value_, e, modulus_)); }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.value_; }

private:
    FieldElement() = default;

    static FieldElement make(u64 modulus, u64 value) {
        FieldElement e;
        e.modulus_ = modulus;
        e.value_ = value;
        return e;
    }
    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (a.modulus_ != b.modulus_) {
            throw std::invalid_argument("FieldElement: modulus mismatch (" + std::to_string(a.modulus_) + " vs " +
                                        std::to_string(b.modulus_) + ")");
        }
    }

    u64 value_ = 0;
    u64 modulus_ = 2;
};

inline FieldElement PrimeField::element(i64 v) const { return FieldElement(*this, v); }

/// Quadratic character by Euler's criterion. Odd p only: over F_2 the
/// symbol of a quadratic form comes from its splitting type instead
/// (see quadratic_symbol in factor.hpp).
inline int legendre(const FieldElement& a) {
    if (a.modulus() == 2) {
        throw std::domain_error("legendre: undefined for p = 2; classify the quadratic form by splitting type");
    }
    if (a.is_zero()) return 0;
    u64 e = detail::powmod(a.value(), (a.modulus() - 1) / 2, a.modulus());
    return e == 1 ? 1 : -1;
}

/// Square root by Tonelli-Shanks (identity on F_2). Of the two roots the
/// smaller residue is returned.
inline std::optional<FieldElement> sqrt(const FieldElement& a) {
    const u64 p = a.modulus();
    const PrimeField field(p);
    if (p == 2 || a.is_zero()) return a;
    if (legendre(a) != 1) return std::nullopt;

    u64 q = p - 1;
    u64 s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (detail::powmod(z, (p - 1) / 2, p) != p - 1) ++z;

    u64 m = s;
    u64 c = field.pow(z, q);
    u64 t = field.pow(a.value(), q);
    u64 r = field.pow(a.value(), (q + 1) / 2);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = field.mul(tt, tt);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = field.mul(b, b);
        m = i;
        c = field.mul(b, b);
        t = field.mul(t, c);
        r = field.mul(r, b);
    }
    u64 other = field.neg(r);
    return FieldElement::from_residue(field, r < other ? r : other);
}

}  // namespace qexp

#endif  // QEXP_FF_HPP
