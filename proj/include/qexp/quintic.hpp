#ifndef QEXP_QUINTIC_HPP
#define QEXP_QUINTIC_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apolar.hpp"
#include "factor.hpp"
#include "forms.hpp"

namespace qexp {

/// Largest modulus for which p^5 + p^4 fits in a signed 64-bit S.
inline constexpr u64 kMaxQuinticModulus = 6000;

/// (Ñ_{1^2,3}, Ñ_{2^2,1}, Ñ_{1^2,1^2,1}).
struct NTilde {
    i64 n1_2_3 = 0;
    i64 n2_2_1 = 0;
    i64 n1_2_1_2_1 = 0;
    friend bool operator==(const NTilde&, const NTilde&) = default;
};

/// S = p^6 * Phi-hat(w) together with how it was classified.
struct ExpSumValue {
    u64 modulus = 0;
    i64 S = 0;
    WaringType waring;
    std::optional<int> c_value;
    NTilde n_tilde;
};

namespace detail {

inline i64 ipow(i64 b, unsigned e) {
    i64 r = 1;
    while (e--) r *= b;
    return r;
}

inline void require_quintic(const DualForm& w, const char* what) {
    if (w.degree() != 5) throw std::invalid_argument(std::string(what) + ": expected a quintic dual form");
}

inline void require_quintic_modulus(const DualForm& w, const char* what) {
    require_quintic(w, what);
    if (w.modulus() >= kMaxQuinticModulus) {
        throw std::out_of_range(std::string(what) + ": modulus " + std::to_string(w.modulus()) +
                                " too large, need p < " + std::to_string(kMaxQuinticModulus));
    }
}

// Position of a canonical representative in the projective enumeration order.
inline u64 counter_key(const Residues& c, u64 p) {
    u64 k = 0;
    for (std::size_t i = c.size(); i-- > 0;) k = k * p + c[i];
    return k;
}

inline bool pairs_to_zero(const DualForm& w, const BinaryForm& v) {
    return pair(w, v).is_zero();
}

// Allocation-free kernels for the O(p^2) enumerations. All residues are
// below p < 2^13, so short sums of products fit in 64 bits unreduced.
using Quad = std::array<u64, 3>;
using Quartic = std::array<u64, 5>;

inline Quartic square_quadric(const Quad& s, u64 p) {
    return {s[0] * s[0] % p, 2 * s[0] * s[1] % p, (s[1] * s[1] + 2 * s[0] * s[2]) % p, 2 * s[1] * s[2] % p,
            s[2] * s[2] % p};
}

inline Quartic multiply_quadrics(const Quad& a, const Quad& b, u64 p) {
    return {a[0] * b[0] % p, (a[0] * b[1] + a[1] * b[0]) % p, (a[0] * b[2] + a[1] * b[1] + a[2] * b[0]) % p,
            (a[1] * b[2] + a[2] * b[1]) % p, a[2] * b[2] % p};
}

// (w, x g) = (w, y g) = 0 for a quartic g.
inline bool quartic_apolar(const DualForm& w, const Quartic& g, u64 p) {
    u64 sx = 0, sy = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        sx += g[i] * w[i];
        sy += g[i] * w[i + 1];
    }
    return sx % p == 0 && sy % p == 0;
}

inline std::vector<Quad> line_squares(u64 p) {
    std::vector<Quad> out;
    auto sq = [p](u64 a, u64 b) { return Quad{a * a % p, 2 * a * b % p, b * b % p}; };
    for (u64 b = 0; b < p; ++b) out.push_back(sq(1, b));  // x + b y
    out.push_back(sq(0, 1));                               // y
    return out;
}

}  // namespace detail

/// Canonical quadrics [f] in P(V_2^*) with f^2 in w^perp, in projective
/// enumeration order. Odd p tests the two quadratic conditions
/// (w, x f^2) = (w, y f^2) = 0 pointwise. Over F_2 squaring is additive,
/// so the conditions become s0 a0 + s1 a2 + s2 a4 = s0 a1 + s1 a3 + s2 a5 = 0.
inline std::vector<BinaryForm> apolar_square_quadrics(const DualForm& w) {
    detail::require_quintic(w, "apolar_square_quadrics");
    const PrimeField& F = w.field();
    std::vector<BinaryForm> out;
    if (F.is_char2()) {
        MatrixFp m = MatrixFp::from_rows(F, {{w[0], w[2], w[4]}, {w[1], w[3], w[5]}});
        auto kernel = rank_and_kernel(m);
        const std::size_t k = kernel.basis.size();
        for (u64 mask = 1; mask < (u64{1} << k); ++mask) {
            Residues v(3, 0);
            for (std::size_t b = 0; b < k; ++b)
                if (mask >> b & 1)
                    for (std::size_t j = 0; j < 3; ++j) v[j] ^= kernel.basis[b][j];
            out.push_back(BinaryForm::from_residues(F, v));
        }
        std::sort(out.begin(), out.end(), [](const BinaryForm& a, const BinaryForm& b) {
            return detail::counter_key(a.residues(), 2) < detail::counter_key(b.residues(), 2);
        });
        return out;
    }
    const u64 p = F.modulus();
    for_each_projective_point(2, F, [&](const Residues& s) {
        if (detail::quartic_apolar(w, detail::square_quadric({s[0], s[1], s[2]}, p), p)) {
            out.push_back(BinaryForm::from_residues(F, s));
        }
    });
    return out;
}

/// C(w) = -sum of quadratic_symbol(f) over the apolar square quadrics.
inline int c_value(const DualForm& w) {
    detail::require_quintic(w, "c_value");
    if (catalecticant_rank(w) < 2) throw std::invalid_argument("c_value: needs catalecticant rank >= 2");
    int c = 0;
    for (const auto& f : apolar_square_quadrics(w)) c -= quadratic_symbol(f);
    return c;
}

/// Ñ_{1^2,3} by enumeration of P(V_1^*), asserted against the trichotomy:
/// p + 1 for w = 0, 1 for rank 1 or type <1^2>, else 0.
inline i64 count_apolar_line_squares(const DualForm& w) {
    // Lines are few (p + 1), so the generic pairing is fine here.
    const PrimeField& F = w.field();
    i64 n = 0;
    for_each_projective_point(1, F, [&](const Residues& l) {
        BinaryForm ell = BinaryForm::from_residues(F, l);
        if (detail::pairs_to_zero(w, multiply(ell, ell))) ++n;
    });
    return n;
}

/// Ñ_{1^2,1^2,1}: ordered pairs ([l1], [l2]) with l1^2 l2^2 in w^perp.
inline i64 count_apolar_line_pairs(const DualForm& w) {
    const u64 p = w.modulus();
    const auto squares = detail::line_squares(p);
    i64 n = 0;
    for (const auto& a : squares)
        for (const auto& b : squares)
            if (detail::quartic_apolar(w, detail::multiply_quadrics(a, b, p), p)) ++n;
    return n;
}

inline NTilde n_tilde_counts(const DualForm& w) {
    detail::require_quintic(w, "n_tilde_counts");
    const i64 p = static_cast<i64>(w.modulus());
    NTilde t;
    t.n1_2_3 = count_apolar_line_squares(w);
    t.n2_2_1 = static_cast<i64>(apolar_square_quadrics(w).size());
    t.n1_2_1_2_1 = count_apolar_line_pairs(w);

    i64 expected = 0;
    if (w.is_zero()) {
        expected = p + 1;
    } else {
        WaringType wt = waring_type(w);
        if (wt.rank == 1 || wt.type == SplittingType{{1, 2}}) expected = 1;
    }
    if (t.n1_2_3 != expected) {
        throw std::logic_error("n_tilde_counts: enumerated N~_{1^2,3} = " + std::to_string(t.n1_2_3) +
                               " but the Waring type predicts " + std::to_string(expected));
    }
    return t;
}

/// Values of C(w) that occur for each Waring type of rank >= 2, as confirmed
/// by exhaustive sweeps (odd p in 3..7 and p = 2). Types absent from the
/// list have no C value.
inline std::vector<int> admissible_c_values(const SplittingType& type, bool char2) {
    using ST = SplittingType;
    if (type == ST{{1, 1}, {1, 1}}) return {-1};
    if (type == ST{{2, 1}}) return {1};
    if (type == ST{{1, 2}} || type.total_degree() < 2) return {};
    if (type == ST{{1, 3}}) return char2 ? std::vector<int>{0} : std::vector<int>{-1, 0, 1};
    if (type == ST{{1, 2}, {1, 1}}) return char2 ? std::vector<int>{-1, 0} : std::vector<int>{-3, -2, -1, 0, 1};
    return char2 ? std::vector<int>{-1, 0, 1} : std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3, 4};
}

inline bool has_c_value(const WaringType& t) {
    return t.rank >= 2 && !(t.type == SplittingType{{1, 2}});
}

/// S(w) = p^6 Phi-hat(w), computed from the Ñ counts and from the Waring
/// type; the two must agree.
inline ExpSumValue exp_sum(const DualForm& w) {
    detail::require_quintic_modulus(w, "exp_sum");
    const i64 p = static_cast<i64>(w.modulus());
    ExpSumValue out;
    out.modulus = w.modulus();
    out.waring = w.is_zero() ? WaringType{} : waring_type(w);
    out.n_tilde = n_tilde_counts(w);

    const i64 p2 = p * p;
    const i64 p3 = p2 * p;
    const i64 p4 = p3 * p;
    const i64 by_counts = p4 * out.n_tilde.n1_2_3 + p2 * (out.n_tilde.n2_2_1 - out.n_tilde.n1_2_1_2_1);

    i64 by_type = 0;
    if (out.waring.rank == 0) {
        by_type = p4 * p + p4 - p3;
    } else if (!has_c_value(out.waring)) {
        by_type = p4 - p3;  // rank 1 and type <1^2>
    } else {
        const int c = c_value(w);
        auto allowed = admissible_c_values(out.waring.type, w.field().is_char2());
        if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) {
            throw std::logic_error("exp_sum: C(w) = " + std::to_string(c) + " not admissible for type " +
                                   out.waring.to_string());
        }
        out.c_value = c;
        by_type = c * p2;
    }
    if (by_counts != by_type) {
        throw std::logic_error("exp_sum: N~ formula gives " + std::to_string(by_counts) +
                               " but the Waring-type value is " + std::to_string(by_type));
    }
    out.S = by_counts;
    return out;
}

/// S / p^6 as a reduced fraction, e.g. "-1/2401".
inline std::string render_fraction(i64 S, u64 p) {
    const i64 den = detail::ipow(static_cast<i64>(p), 6);
    if (S == 0) return "0";
    const i64 g = std::gcd(S < 0 ? -S : S, den);
    const i64 num = S / g;
    const i64 d = den / g;
    return d == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(d);
}

/// Phi-hat(w) as powers of p, following the Waring-type case split.
inline std::string render_p_powers(const ExpSumValue& v) {
    if (v.waring.rank == 0) return "p^-1 + p^-2 - p^-3";
    if (!v.c_value) return "p^-2 - p^-3";
    const int c = *v.c_value;
    if (c == 0) return "0";
    if (c == 1) return "p^-4";
    if (c == -1) return "-p^-4";
    return std::to_string(c) + "*p^-4";
}

/// The dual form (1/a^2)(x^5)* + (1/b^2)(y^5)* - (1/c^2) * sum of all six
/// dual basis vectors, over odd p.
inline DualForm example_family(const FieldElement& alpha, const FieldElement& beta, const FieldElement& gamma) {
    const PrimeField F = alpha.field();
    if (beta.modulus() != F.modulus() || gamma.modulus() != F.modulus()) {
        throw std::invalid_argument("example_family: modulus mismatch");
    }
    if (F.is_char2()) throw std::invalid_argument("example_family: needs odd p");
    if (alpha.is_zero() || beta.is_zero() || gamma.is_zero()) {
        throw std::invalid_argument("example_family: parameters must be nonzero");
    }
    const FieldElement one(F, 1);
    const u64 ia = (one / (alpha * alpha)).value();
    const u64 ib = (one / (beta * beta)).value();
    const u64 ig = (one / (gamma * gamma)).value();
    DualForm w(F, 5);
    for (std::size_t i = 0; i <= 5; ++i) w[i] = F.neg(ig);
    w[0] = F.add(w[0], ia);
    w[5] = F.add(w[5], ib);
    return w;
}

inline i64 family_discriminant(i64 a, i64 b, i64 c) {
    return a * a + b * b + c * c - 2 * a * b - 2 * b * c - 2 * c * a;
}

struct SignedDiscriminant {
    std::array<i64, 3> params;
    i64 value;  // over the integers
    int symbol; // Legendre symbol mod p
};

/// D at (a, b, c), (a, b, -c), (a, -b, c), (a, -b, -c), with residue symbols.
inline std::array<SignedDiscriminant, 4> family_discriminants(i64 a, i64 b, i64 c, const PrimeField& F) {
    if (F.is_char2()) throw std::invalid_argument("family_discriminants: needs odd p");
    std::array<SignedDiscriminant, 4> out{};
    const std::array<std::array<i64, 2>, 4> signs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    for (std::size_t k = 0; k < 4; ++k) {
        const i64 bb = signs[k][0] * b;
        const i64 cc = signs[k][1] * c;
        const i64 d = family_discriminant(a, bb, cc);
        out[k] = {{a, bb, cc}, d, legendre(F.element(d))};
    }
    return out;
}

/// "+", "-" or "0" per entry, in family_discriminants order.
inline std::string residue_grid(const std::array<SignedDiscriminant, 4>& ds) {
    std::string s;
    for (const auto& d : ds) s += d.symbol > 0 ? '+' : d.symbol < 0 ? '-' : '0';
    return s;
}

}  // namespace qexp

#endif  // QEXP_QUINTIC_HPP
