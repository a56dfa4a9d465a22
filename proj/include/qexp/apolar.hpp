#ifndef QEXP_APOLAR_HPP
#define QEXP_APOLAR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "forms.hpp"

namespace qexp {

/// Catalecticant rank and the splitting type of the minimal apolar
/// generator (empty for w = 0).
struct WaringType {
    unsigned rank = 0;
    SplittingType type;

    std::string to_string() const { return rank == 0 ? std::string("<>") : type.to_string(); }
    friend bool operator==(const WaringType&, const WaringType&) = default;
};

/// Basis (reduced echelon) of (w^perp)_m: forms v of degree m with
/// pair(w, v) = 0, i.e. the kernel of A_{m, n-m; 0}(w).
inline std::vector<BinaryForm> apolar_space(const DualForm& w, std::size_t m) {
    if (m > w.degree()) {
        throw std::out_of_range("apolar_space: degree " + std::to_string(m) + " outside 0.." +
                                std::to_string(w.degree()));
    }
    auto kernel = rank_and_kernel(catalecticant_matrix(w, m, w.degree() - m, 0));
    std::vector<BinaryForm> out;
    out.reserve(kernel.basis.size());
    for (auto& v : kernel.basis) out.push_back(BinaryForm::from_residues(w.field(), std::move(v)));
    return out;
}

namespace detail {

inline void require_odd_degree(const DualForm& w, const char* what) {
    if (w.degree() % 2 == 0) throw std::invalid_argument(std::string(what) + ": needs odd degree");
}

}  // namespace detail

/// rank A_{m+1, m; 0}(w) for w of odd degree 2m + 1.
inline unsigned catalecticant_rank(const DualForm& w) {
    detail::require_odd_degree(w, "catalecticant_rank");
    const std::size_t m = w.degree() / 2;
    return static_cast<unsigned>(rank(catalecticant_matrix(w, m + 1, m, 0)));
}

inline BinaryForm minimal_generator(const DualForm& w) {
    if (w.is_zero()) throw std::invalid_argument("minimal_generator: w = 0 has no minimal generator");
    const unsigned s = catalecticant_rank(w);
    if (s >= 1 && !apolar_space(w, s - 1).empty()) {
        throw std::logic_error("minimal_generator: apolar forms below the catalecticant rank");
    }
    auto basis = apolar_space(w, s);
    if (basis.size() != 1) {
        throw std::logic_error("minimal_generator: (w^perp)_" + std::to_string(s) + " has dimension " +
                               std::to_string(basis.size()) + ", expected 1");
    }
    return basis.front();
}

/// Determinant of a square matrix whose entries are binary forms of
/// matching degree, by cofactor expansion along the first row.
inline BinaryForm form_determinant(const std::vector<std::vector<BinaryForm>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("form_determinant: empty matrix");
    const PrimeField& F = m[0][0].field();
    if (n == 1) return m[0][0];
    BinaryForm acc(F, m[0][0].degree() * n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<BinaryForm>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<BinaryForm> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        BinaryForm term = multiply(m[0][j], form_determinant(minor));
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Cat_{m,m}(x, y : w) = det(A_{m,m;1}(w) x - A_{m,m;0}(w) y) for w of odd
/// degree 2m + 1; a form of degree m + 1.
inline BinaryForm catalecticant_covariant(const DualForm& w) {
    detail::require_odd_degree(w, "catalecticant_covariant");
    const std::size_t m = w.degree() / 2;
    const PrimeField& F = w.field();
    const MatrixFp upper = catalecticant_matrix(w, m, m, 1);
    const MatrixFp lower = catalecticant_matrix(w, m, m, 0);
    std::vector<std::vector<BinaryForm>> entries(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j)
            entries[i].push_back(BinaryForm::from_residues(F, {upper.at(i, j), F.neg(lower.at(i, j))}));
    return form_determinant(entries);
}

/// Cat_{2,2}(x, y : w) for a quintic.
inline BinaryForm cat_covariant(const DualForm& w) {
    if (w.degree() != 5) throw std::invalid_argument("cat_covariant: expected a quintic dual form");
    return catalecticant_covariant(w);
}

/// det A_{m,m;0}(w) for w of even degree 2m.
inline u64 catalecticant_invariant(const DualForm& w) {
    if (w.degree() % 2 != 0) throw std::invalid_argument("catalecticant_invariant: needs even degree");
    const std::size_t m = w.degree() / 2;
    MatrixFp a = catalecticant_matrix(w, m, m, 0);
    const PrimeField& F = w.field();
    auto pivots = rref(a);
    if (pivots.size() < m + 1) return 0;
    // Nonzero is all that genericity needs; recompute the value by elimination.
    MatrixFp b = catalecticant_matrix(w, m, m, 0);
    u64 det = 1;
    for (std::size_t col = 0; col <= m; ++col) {
        std::size_t sel = col;
        while (b.at(sel, col) == 0) ++sel;
        if (sel != col) {
            for (std::size_t j = 0; j <= m; ++j) std::swap(b.at(sel, j), b.at(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, b.at(col, col));
        u64 inv = F.inv(b.at(col, col));
        for (std::size_t i = col + 1; i <= m; ++i) {
            u64 factor = F.mul(b.at(i, col), inv);
            for (std::size_t j = col; j <= m; ++j) b.at(i, j) = F.sub(b.at(i, j), F.mul(factor, b.at(col, j)));
        }
    }
    return det;
}

inline bool proportional(const BinaryForm& a, const BinaryForm& b) {
    return a.degree() == b.degree() && !a.is_zero() && !b.is_zero() && a.canonical() == b.canonical();
}

inline WaringType waring_type(const DualForm& w) {
    if (w.degree() != 5) throw std::invalid_argument("waring_type: expected a quintic dual form");
    WaringType out;
    out.rank = catalecticant_rank(w);
    if (out.rank == 0) return out;
    if (out.rank <= 2) {
        out.type = splitting_type(minimal_generator(w));
        return out;
    }
    BinaryForm cov = cat_covariant(w);
    if (cov.is_zero()) {
        throw std::logic_error("waring_type: catalecticant rank 3 but the covariant vanishes");
    }
    if (!proportional(cov, minimal_generator(w))) {
        throw std::logic_error("waring_type: covariant not proportional to the cubic apolar generator");
    }
    out.type = splitting_type(cov);
    return out;
}

/// The span of f * (all monomials of degree k), in coordinates of V_{deg f + k}^*.
inline std::vector<Residues> multiples(const BinaryForm& f, std::size_t k) {
    std::vector<Residues> out;
    for (std::size_t i = 0; i <= k; ++i) out.push_back(multiply(f, BinaryForm::basis(f.field(), k, i)).residues());
    return out;
}

struct CompleteIntersection {
    BinaryForm low;   // phi_s
    BinaryForm high;  // phi_{n+2-s}
};

/// Generators of w^perp for w of degree 5: phi_s and a canonical
/// complement representative of phi_s * V_{7-2s}^* inside (w^perp)_{7-s}.
inline CompleteIntersection ci_generators(const DualForm& w) {
    if (w.degree() != 5) throw std::invalid_argument("ci_generators: expected a quintic dual form");
    if (w.is_zero()) throw std::invalid_argument("ci_generators: w = 0");
    const PrimeField& F = w.field();
    const std::size_t n = w.degree();
    BinaryForm low = minimal_generator(w);
    const std::size_t s = low.degree();
    const std::size_t hd = n + 2 - s;

    // Degrees above n pair to zero, so everything is apolar there.
    std::vector<Residues> ambient;
    if (hd > n) {
        for (std::size_t i = 0; i <= hd; ++i) ambient.push_back(BinaryForm::basis(F, hd, i).residues());
    } else {
        for (auto& v : apolar_space(w, hd)) ambient.push_back(v.residues());
    }
    auto sub = echelon_basis(F, multiples(low, hd - s), hd + 1);

    std::optional<BinaryForm> high;
    for (const auto& v : ambient) {
        Residues r = v;
        for (const auto& row : sub) {
            std::size_t piv = 0;
            while (row[piv] == 0) ++piv;
            u64 c = r[piv];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= hd; ++j) r[j] = F.sub(r[j], F.mul(c, row[j]));
        }
        BinaryForm cand = BinaryForm::from_residues(F, r);
        if (!cand.is_zero()) {
            high = cand.canonical();
            break;
        }
    }
    if (!high) throw std::logic_error("ci_generators: no generator outside phi_s * V^*");

    // No further generators up to degree n + 2 - s.
    for (std::size_t deg = 0; deg <= hd; ++deg) {
        std::vector<Residues> gens;
        if (deg >= s)
            for (auto& v : multiples(low, deg - s)) gens.push_back(v);
        if (deg >= hd)
            for (auto& v : multiples(*high, deg - hd)) gens.push_back(v);
        std::size_t generated = echelon_basis(F, gens, deg + 1).size();
        std::size_t expected = deg > n ? deg + 1 : apolar_space(w, deg).size();
        if (generated != expected) {
            throw std::logic_error("ci_generators: generators do not span (w^perp)_" + std::to_string(deg));
        }
    }
    return {low, *high};
}

/// (^perp f)_m: dual vectors u of degree m with (u, x^{m-n-j} y^j f) = 0
/// for all j, where n = deg f <= m.
inline std::vector<DualForm> inverse_apolar_space(const BinaryForm& f, std::size_t m) {
    if (f.degree() > m) throw std::invalid_argument("inverse_apolar_space: deg f exceeds m");
    const PrimeField& F = f.field();
    auto rows = multiples(f, m - f.degree());
    MatrixFp a = MatrixFp::from_rows(F, rows);
    auto kernel = rank_and_kernel(a);
    std::vector<DualForm> out;
    for (auto& v : kernel.basis) out.push_back(DualForm::from_residues(F, std::move(v)));
    return out;
}

}  // namespace qexp

#endif  // QEXP_APOLAR_HPP
