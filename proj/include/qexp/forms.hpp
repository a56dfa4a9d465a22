#ifndef QEXP_FORMS_HPP
#define QEXP_FORMS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ff.hpp"

namespace qexp {

using Residues = std::vector<u64>;

struct FormTag {};
struct DualTag {};

/// A vector in a graded piece of k[x, y] (FormTag: V_n^*, coefficients of
/// x^{n-i} y^i) or of its dual (DualTag: V_n, coefficients of (x^{n-i} y^i)^*).
/// Coefficient i always belongs to the exponent pair (n-i, i). The degree is
/// explicit and independent of the support.
template <class Tag>
class Graded {
public:
    Graded(PrimeField field, std::size_t degree) : field_(field), c_(degree + 1, 0) {}

    Graded(PrimeField field, std::initializer_list<i64> coeffs) : Graded(field, std::vector<i64>(coeffs)) {}

    Graded(PrimeField field, const std::vector<i64>& coeffs) : field_(field) {
        if (coeffs.empty()) throw std::invalid_argument("Graded: need at least one coefficient");
        c_.reserve(coeffs.size());
        for (i64 v : coeffs) c_.push_back(field.reduce(v));
    }

    static Graded from_residues(PrimeField field, Residues residues) {
        if (residues.empty()) throw std::invalid_argument("Graded: need at least one coefficient");
        Graded g(field, residues.size() - 1);
        for (std::size_t i = 0; i < residues.size(); ++i) g.c_[i] = residues[i] % field.modulus();
        return g;
    }

    /// x^{n-i} y^i, or its dual basis vector.
    static Graded basis(PrimeField field, std::size_t degree, std::size_t i) {
        if (i > degree) throw std::out_of_range("Graded::basis: index exceeds degree");
        Graded g(field, degree);
        g.c_[i] = 1;
        return g;
    }

    const PrimeField& field() const noexcept { return field_; }
    u64 modulus() const noexcept { return field_.modulus(); }
    std::size_t degree() const noexcept { return c_.size() - 1; }
    std::size_t size() const noexcept { return c_.size(); }

    u64 operator[](std::size_t i) const noexcept { return c_[i]; }
    u64& operator[](std::size_t i) noexcept { return c_[i]; }
    FieldElement coeff(std::size_t i) const { return FieldElement::from_residue(field_, c_.at(i)); }
    const Residues& residues() const noexcept { return c_; }

    bool is_zero() const noexcept {
        return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
    }

    /// Index of the first nonzero coefficient, or size() for the zero vector.
    std::size_t leading_index() const noexcept {
        std::size_t i = 0;
        while (i < c_.size() && c_[i] == 0) ++i;
        return i;
    }

    /// Projective representative: first nonzero coefficient scaled to 1.
    Graded canonical() const {
        Graded g = *this;
        std::size_t lead = leading_index();
        if (lead == c_.size()) return g;
        u64 s = field_.inv(c_[lead]);
        for (auto& v : g.c_) v = field_.mul(v, s);
        return g;
    }

    Graded scaled(u64 s) const {
        Graded g = *this;
        for (auto& v : g.c_) v = field_.mul(v, s % field_.modulus());
        return g;
    }

    friend Graded operator+(const Graded& a, const Graded& b) {
        check_compatible(a, b);
        Graded r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.add(a.c_[i], b.c_[i]);
        return r;
    }
    friend Graded operator-(const Graded& a, const Graded& b) {
        check_compatible(a, b);
        Graded r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.sub(a.c_[i], b.c_[i]);
        return r;
    }

    friend bool operator==(const Graded&, const Graded&) = default;

    std::string to_string() const;

private:
    static void check_compatible(const Graded& a, const Graded& b) {
        if (a.field_ != b.field_) throw std::invalid_argument("Graded: modulus mismatch");
        if (a.c_.size() != b.c_.size()) throw std::invalid_argument("Graded: degree mismatch");
    }

    PrimeField field_;
    Residues c_;
};

using BinaryForm = Graded<FormTag>;
using DualForm = Graded<DualTag>;

namespace detail {

inline std::string monomial_text(std::size_t xe, std::size_t ye) {
    std::string s;
    if (xe) s += xe == 1 ? "x" : "x^" + std::to_string(xe);
    if (xe && ye) s += "*";
    if (ye) s += ye == 1 ? "y" : "y^" + std::to_string(ye);
    return s;
}

}  // namespace detail

template <class Tag>
std::string Graded<Tag>::to_string() const {
    const std::size_t n = degree();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i <= n; ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        std::string mono = detail::monomial_text(n - i, i);
        if constexpr (std::is_same_v<Tag, DualTag>) {
            mono = "(" + (mono.empty() ? std::string("1") : mono) + ")*";
            if (c_[i] != 1) os << c_[i] << "*";
            os << mono;
        } else {
            if (mono.empty()) {
                os << c_[i];
            } else {
                if (c_[i] != 1) os << c_[i] << "*";
                os << mono;
            }
        }
    }
    if (first) os << "0";
    return os.str();
}

inline void check_same_field(const PrimeField& a, const PrimeField& b) {
    if (a != b) throw std::invalid_argument("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                                            std::to_string(b.modulus()));
}

/// Product in the symmetric algebra; degrees add.
inline BinaryForm multiply(const BinaryForm& f, const BinaryForm& g) {
    check_same_field(f.field(), g.field());
    const PrimeField& F = f.field();
    BinaryForm r(F, f.degree() + g.degree());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    }
    return r;
}

inline BinaryForm power(const BinaryForm& f, unsigned k) {
    BinaryForm r = BinaryForm::basis(f.field(), 0, 0);
    for (unsigned i = 0; i < k; ++i) r = multiply(r, f);
    return r;
}

inline BinaryForm linear_form(const PrimeField& field, i64 x_coeff, i64 y_coeff) {
    return BinaryForm(field, {x_coeff, y_coeff});
}

/// Polar pairing V_n x V_m^* -> V_{n-m}: component j of the result is
/// (w, v * x^{n-m-j} y^j) = sum_i v_i a_{i+j}. For m = n this is the scalar (w, v).
inline DualForm pair(const DualForm& w, const BinaryForm& v) {
    check_same_field(w.field(), v.field());
    if (v.degree() > w.degree()) {
        throw std::invalid_argument("pair: form degree " + std::to_string(v.degree()) + " exceeds dual degree " +
                                    std::to_string(w.degree()));
    }
    const PrimeField& F = w.field();
    const std::size_t out = w.degree() - v.degree();
    DualForm u(F, out);
    for (std::size_t j = 0; j <= out; ++j) {
        u64 acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i) acc = F.add(acc, F.mul(v[i], w[i + j]));
        u[j] = acc;
    }
    return u;
}

/// Scalar pairing of equal-degree vectors.
inline u64 pair_scalar(const DualForm& w, const BinaryForm& v) {
    if (w.degree() != v.degree()) throw std::invalid_argument("pair_scalar: degree mismatch");
    return pair(w, v)[0];
}

/// Dense matrix over F_p, row-major.
class MatrixFp {
public:
    MatrixFp(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static MatrixFp from_rows(PrimeField field, const std::vector<Residues>& rows) {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        MatrixFp m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("MatrixFp: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j] % field.modulus();
        }
        return m;
    }

    static MatrixFp identity(PrimeField field, std::size_t n) {
        MatrixFp m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    u64& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    u64 at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    MatrixFp transpose() const {
        MatrixFp t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Residues apply(std::span<const u64> v) const {
        if (v.size() != cols_) throw std::invalid_argument("MatrixFp::apply: dimension mismatch");
        Residues r(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
        return r;
    }

    friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    Residues data_;
};

/// A_{s,t;r}(w): (t+1) x (s+1) Hankel block with entry (i, j) = a_{r+i+j}.
inline MatrixFp catalecticant_matrix(const DualForm& w, std::size_t s, std::size_t t, std::size_t r) {
    if (r + s + t > w.degree()) {
        throw std::out_of_range("catalecticant_matrix: r + s + t = " + std::to_string(r + s + t) +
                                " exceeds degree " + std::to_string(w.degree()));
    }
    MatrixFp m(w.field(), t + 1, s + 1);
    for (std::size_t i = 0; i <= t; ++i)
        for (std::size_t j = 0; j <= s; ++j) m.at(i, j) = w[r + i + j];
    return m;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(MatrixFp& m) {
    const PrimeField& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        u64 inv = F.inv(m.at(row, col));
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) = F.mul(m.at(row, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            u64 factor = m.at(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Reduced echelon basis of span(vectors); zero vectors dropped.
inline std::vector<Residues> echelon_basis(const PrimeField& field, const std::vector<Residues>& vectors,
                                           std::size_t dim) {
    if (vectors.empty()) return {};
    MatrixFp m = MatrixFp::from_rows(field, vectors);
    if (m.cols() != dim) throw std::invalid_argument("echelon_basis: dimension mismatch");
    auto pivots = rref(m);
    std::vector<Residues> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Residues r(dim);
        for (std::size_t j = 0; j < dim; ++j) r[j] = m.at(i, j);
        out.push_back(std::move(r));
    }
    return out;
}

struct KernelResult {
    std::size_t rank = 0;
    std::vector<Residues> basis;  // reduced echelon, one row per vector
};

inline KernelResult rank_and_kernel(const MatrixFp& matrix) {
    MatrixFp m = matrix;
    auto pivots = rref(m);
    const PrimeField& F = m.field();
    KernelResult out;
    out.rank = pivots.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Residues> raw;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Residues v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(m.at(i, free));
        raw.push_back(std::move(v));
    }
    out.basis = echelon_basis(F, raw, m.cols());
    return out;
}

inline std::size_t rank(const MatrixFp& matrix) {
    MatrixFp m = matrix;
    return rref(m).size();
}

/// Number of points of P(V_n^*) = (p^{n+1} - 1) / (p - 1).
inline u64 projective_count(std::size_t n, u64 p) {
    u64 total = 0;
    u64 pk = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        total += pk;
        pk *= p;
    }
    return total;
}

/// Visits canonical representatives of P(V_n^*) in counter order
/// k = sum_i c_i p^i, k = 1 .. p^{n+1} - 1, keeping those whose first
/// nonzero coefficient is 1.
template <class Fn>
void for_each_projective_point(std::size_t n, const PrimeField& field, Fn&& fn) {
    // Write k = c_0 + p H. In counter order each upper part H yields (0, H)
    // when H is itself canonical, then (1, H); H is canonical exactly when
    // its last incremented digit became 1.
    const u64 p = field.modulus();
    Residues c(n + 1, 0);
    c[0] = 1;
    fn(static_cast<const Residues&>(c));
    while (true) {
        std::size_t i = 1;
        while (i <= n && c[i] == p - 1) c[i++] = 0;
        if (i > n) return;
        ++c[i];
        if (c[i] == 1) {
            c[0] = 0;
            fn(static_cast<const Residues&>(c));
        }
        c[0] = 1;
        fn(static_cast<const Residues&>(c));
    }
}

template <class Fn>
void for_each_vector(std::size_t dim, const PrimeField& field, Fn&& fn) {
    const u64 p = field.modulus();
    Residues c(dim, 0);
    fn(static_cast<const Residues&>(c));
    while (true) {
        std::size_t i = 0;
        while (i < dim && c[i] == p - 1) c[i++] = 0;
        if (i == dim) return;
        ++c[i];
        fn(static_cast<const Residues&>(c));
    }
}

inline std::vector<BinaryForm> projective_points(std::size_t n, const PrimeField& field) {
    std::vector<BinaryForm> out;
    out.reserve(projective_count(n, field.modulus()));
    for_each_projective_point(n, field, [&](const Residues& c) { out.push_back(BinaryForm::from_residues(field, c)); });
    return out;
}

/// s1^2 - 4 s0 s2.
inline FieldElement disc_quadratic(const BinaryForm& q) {
    if (q.degree() != 2) throw std::invalid_argument("disc_quadratic: expected degree 2, got " +
                                                     std::to_string(q.degree()));
    const PrimeField& F = q.field();
    u64 d = F.sub(F.mul(q[1], q[1]), F.mul(F.reduce(4), F.mul(q[0], q[2])));
    return FieldElement::from_residue(F, d);
}

/// f = d * g exactly; returns g, or nothing when d does not divide f.
inline std::optional<BinaryForm> exact_divide(const BinaryForm& f, const BinaryForm& d) {
    check_same_field(f.field(), d.field());
    if (d.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
    if (d.degree() > f.degree()) return std::nullopt;
    const PrimeField& F = f.field();
    const std::size_t n = f.degree();
    const std::size_t m = d.degree();
    const std::size_t shift = d.leading_index();
    for (std::size_t i = 0; i < shift; ++i)
        if (f[i] != 0) return std::nullopt;
    // Remove the common y^shift; divide from the x-heavy end.
    const std::size_t dm = m - shift;
    const std::size_t gdeg = n - m;
    const u64 lead_inv = F.inv(d[shift]);
    Residues rem(f.residues().begin() + shift, f.residues().end());
    BinaryForm g(F, gdeg);
    for (std::size_t k = 0; k <= gdeg; ++k) {
        u64 gk = F.mul(rem[k], lead_inv);
        g[k] = gk;
        if (gk == 0) continue;
        for (std::size_t i = 0; i <= dm; ++i) rem[k + i] = F.sub(rem[k + i], F.mul(gk, d[shift + i]));
    }
    for (u64 v : rem)
        if (v != 0) return std::nullopt;
    return g;
}

/// 2x2 matrix [[a, b], [c, d]] acting by the substitution
/// f(x, y) -> f(a x + b y, c x + d y).
struct Substitution {
    i64 a, b, c, d;
};

inline BinaryForm substitute(const BinaryForm& f, const Substitution& g) {
    const PrimeField& F = f.field();
    const std::size_t n = f.degree();
    BinaryForm X = linear_form(F, g.a, g.b);
    BinaryForm Y = linear_form(F, g.c, g.d);
    BinaryForm r(F, n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (f[i] == 0) continue;
        BinaryForm term = multiply(power(X, static_cast<unsigned>(n - i)), power(Y, static_cast<unsigned>(i)));
        r = r + term.scaled(f[i]);
    }
    return r;
}

/// The transpose action on V_n: (g * w, v) = (w, substitute(v, g)).
inline DualForm dual_action(const DualForm& w, const Substitution& g) {
    const PrimeField& F = w.field();
    const std::size_t n = w.degree();
    DualForm r(F, n);
    for (std::size_t i = 0; i <= n; ++i) r[i] = pair_scalar(w, substitute(BinaryForm::basis(F, n, i), g));
    return r;
}

}  // namespace qexp

#endif  // QEXP_FORMS_HPP
