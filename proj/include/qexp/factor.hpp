#ifndef QEXP_FACTOR_HPP
#define QEXP_FACTOR_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forms.hpp"

namespace qexp {

/// Multiset of (factor degree, multiplicity) pairs, stored sorted by
/// descending multiplicity, then descending degree.
class SplittingType {
public:
    struct Part {
        unsigned degree;
        unsigned multiplicity;
        friend bool operator==(const Part&, const Part&) = default;
    };

    SplittingType() = default;
    SplittingType(std::initializer_list<Part> parts) : parts_(parts) { normalize(); }
    explicit SplittingType(std::vector<Part> parts) : parts_(std::move(parts)) { normalize(); }

    const std::vector<Part>& parts() const noexcept { return parts_; }
    bool empty() const noexcept { return parts_.empty(); }

    unsigned total_degree() const noexcept {
        unsigned t = 0;
        for (const auto& p : parts_) t += p.degree * p.multiplicity;
        return t;
    }

    bool has_multiple_factor() const noexcept {
        return std::any_of(parts_.begin(), parts_.end(), [](const Part& p) { return p.multiplicity > 1; });
    }

    /// "<1^2,1>"; the empty type prints as "<>".
    std::string to_string() const {
        std::string s = "<";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i].degree);
            if (parts_[i].multiplicity > 1) s += "^" + std::to_string(parts_[i].multiplicity);
        }
        return s + ">";
    }

    friend bool operator==(const SplittingType&, const SplittingType&) = default;
    friend bool operator<(const SplittingType& a, const SplittingType& b) { return a.to_string() < b.to_string(); }

private:
    void normalize() {
        for (const auto& p : parts_) {
            if (p.degree == 0 || p.multiplicity == 0) throw std::invalid_argument("SplittingType: zero part");
        }
        std::sort(parts_.begin(), parts_.end(), [](const Part& a, const Part& b) {
            if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
            return a.degree > b.degree;
        });
    }

    std::vector<Part> parts_;
};

namespace upoly {

// Dense univariate polynomials over F_p, ascending powers of x, trimmed so
// the last entry is nonzero (the zero polynomial is empty).
using Poly = std::vector<u64>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly monic(const PrimeField& F, Poly f) {
    trim(f);
    if (f.empty()) return f;
    u64 inv = F.inv(f.back());
    for (auto& c : f) c = F.mul(c, inv);
    return f;
}

inline Poly sub(const PrimeField& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

inline Poly mul(const PrimeField& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const PrimeField& F, Poly a, const Poly& b) {
    if (b.empty()) throw std::domain_error("upoly::divmod: division by zero polynomial");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    const u64 lead_inv = F.inv(b.back());
    Poly q(a.size() - b.size() + 1, 0);
    for (std::size_t k = a.size(); k-- >= b.size();) {
        u64 c = F.mul(a[k], lead_inv);
        q[k - (b.size() - 1)] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::size_t idx = k - (b.size() - 1) + i;
            a[idx] = F.sub(a[idx], F.mul(c, b[i]));
        }
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly mod(const PrimeField& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

inline Poly exact_quotient(const PrimeField& F, const Poly& a, const Poly& b) {
    auto [q, r] = divmod(F, a, b);
    if (!r.empty()) throw std::logic_error("upoly::exact_quotient: nonzero remainder");
    return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(const PrimeField& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline Poly derivative(const PrimeField& F, const Poly& f) {
    if (f.size() <= 1) return {};
    Poly d(f.size() - 1, 0);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = F.mul(F.reduce(static_cast<i64>(i % F.modulus())), f[i]);
    trim(d);
    return d;
}

/// h with h(x)^p = f(x), valid when f' = 0 over the prime field (then
/// f(x) = h(x^p) = h(x)^p since coefficients are fixed by Frobenius).
inline Poly pth_root(const PrimeField& F, const Poly& f) {
    const std::size_t p = F.modulus();
    Poly h;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i % p == 0) {
            h.push_back(f[i]);
        } else if (f[i] != 0) {
            throw std::logic_error("upoly::pth_root: polynomial is not a p-th power");
        }
    }
    trim(h);
    return h;
}

/// base^e mod m by repeated squaring.
inline Poly powmod(const PrimeField& F, Poly base, u64 e, const Poly& m) {
    Poly result = mod(F, Poly{1}, m);
    base = mod(F, base, m);
    while (e) {
        if (e & 1) result = mod(F, mul(F, result, base), m);
        e >>= 1;
        if (e) base = mod(F, mul(F, base, base), m);
    }
    return result;
}

struct SquarefreePart {
    Poly factor;  // monic, squarefree, nonconstant
    unsigned multiplicity;
};

/// f = prod factor^multiplicity for monic nonconstant f, with the
/// characteristic-p collapse handled by p-th root recursion.
inline std::vector<SquarefreePart> squarefree_decomposition(const PrimeField& F, const Poly& f_in) {
    Poly f = monic(F, f_in);
    std::vector<SquarefreePart> out;
    if (deg(f) < 1) return out;
    const unsigned p = static_cast<unsigned>(F.modulus());
    auto lift = [&](const Poly& c) {
        for (auto& part : squarefree_decomposition(F, pth_root(F, c))) {
            out.push_back({part.factor, part.multiplicity * p});
        }
    };

    Poly df = derivative(F, f);
    if (df.empty()) {
        lift(f);
        return out;
    }
    Poly c = gcd(F, f, df);
    Poly w = exact_quotient(F, f, c);
    unsigned i = 1;
    while (deg(w) > 0) {
        Poly y = gcd(F, w, c);
        Poly z = exact_quotient(F, w, y);
        if (deg(z) > 0) out.push_back({z, i});
        ++i;
        w = y;
        c = exact_quotient(F, c, y);
    }
    if (deg(c) > 0) lift(c);
    return out;
}

/// Degrees of the irreducible factors of a monic squarefree polynomial,
/// by gcd with x^{p^d} - x.
inline std::vector<unsigned> distinct_degree_factor_degrees(const PrimeField& F, Poly g) {
    std::vector<unsigned> degrees;
    const u64 p = F.modulus();
    Poly h = {0, 1};
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(deg(g)); ++d) {
        h = powmod(F, h, p, g);
        Poly part = gcd(F, g, sub(F, h, Poly{0, 1}));
        int pd = deg(part);
        if (pd > 0) {
            for (int k = 0; k < pd / static_cast<int>(d); ++k) degrees.push_back(d);
            g = exact_quotient(F, g, part);
            h = mod(F, h, g);
        }
    }
    if (deg(g) > 0) degrees.push_back(static_cast<unsigned>(deg(g)));
    return degrees;
}

}  // namespace upoly

namespace detail {

// f(x, 1) and the exponent e of the y^e factor of a nonzero form f.
inline std::pair<upoly::Poly, unsigned> dehomogenize(const BinaryForm& f) {
    const std::size_t n = f.degree();
    const std::size_t e = f.leading_index();
    upoly::Poly g(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) g[n - i] = f[i];
    upoly::trim(g);
    return {g, static_cast<unsigned>(e)};
}

inline void require_nonzero(const BinaryForm& f, const char* what) {
    if (f.is_zero()) throw std::invalid_argument(std::string(what) + ": zero form");
}

}  // namespace detail

inline SplittingType splitting_type(const BinaryForm& f) {
    detail::require_nonzero(f, "splitting_type");
    const PrimeField& F = f.field();
    auto [g, e] = detail::dehomogenize(f);
    std::vector<SplittingType::Part> parts;
    if (e > 0) parts.push_back({1, e});
    for (const auto& sq : upoly::squarefree_decomposition(F, g)) {
        for (unsigned d : upoly::distinct_degree_factor_degrees(F, sq.factor)) parts.push_back({d, sq.multiplicity});
    }
    return SplittingType(std::move(parts));
}

/// True iff f has a repeated irreducible factor.
inline bool is_singular(const BinaryForm& f) {
    detail::require_nonzero(f, "is_singular");
    auto [g, e] = detail::dehomogenize(f);
    if (e >= 2) return true;
    if (upoly::deg(g) < 1) return false;
    return upoly::deg(upoly::gcd(f.field(), g, upoly::derivative(f.field(), g))) > 0;
}

/// +1 for split <1,1>, 0 for ramified <1^2>, -1 for inert <2>; valid in
/// every characteristic.
inline int quadratic_symbol(const BinaryForm& q) {
    if (q.degree() != 2) throw std::invalid_argument("quadratic_symbol: expected a quadratic form");
    detail::require_nonzero(q, "quadratic_symbol");
    SplittingType t = splitting_type(q);
    if (t == SplittingType{{1, 1}, {1, 1}}) return 1;
    if (t == SplittingType{{1, 2}}) return 0;
    return -1;
}

}  // namespace qexp

#endif  // QEXP_FACTOR_HPP
