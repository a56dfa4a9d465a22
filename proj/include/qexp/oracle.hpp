#ifndef QEXP_ORACLE_HPP
#define QEXP_ORACLE_HPP

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apolar.hpp"
#include "factor.hpp"
#include "forms.hpp"
#include "quintic.hpp"

namespace qexp {

/// Thrown instead of starting an enumeration larger than the configured cap.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double required, double budget)
        : std::runtime_error(what + ": needs about " + format(required) + " enumeration steps, budget is " +
                             format(budget)),
          required_(required),
          budget_(budget) {}

    double required() const noexcept { return required_; }
    double budget() const noexcept { return budget_; }

private:
    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }

    double required_;
    double budget_;
};

inline constexpr double kDefaultBudget = 1e9;

/// The enumeration cap: QEXP_BUDGET if set to a positive number, else 1e9.
inline double default_budget() {
    if (const char* env = std::getenv("QEXP_BUDGET")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return kDefaultBudget;
}

inline void check_budget(const char* what, double required, double budget) {
    if (required > budget) throw BudgetExceeded(what, required, budget);
}

/// Fiber sizes of psi_{1^2,3}, psi_{1^2,1^2,1} and psi_{2^2,1} over one point
/// (or summed over a set of points).
struct FiberCounts {
    i64 psi_1_2_3 = 0;
    i64 psi_1_2_1_2_1 = 0;
    i64 psi_2_2_1 = 0;

    i64 alternating_sum() const noexcept { return psi_1_2_3 - psi_1_2_1_2_1 + psi_2_2_1; }
    FiberCounts& operator+=(const FiberCounts& o) noexcept {
        psi_1_2_3 += o.psi_1_2_3;
        psi_1_2_1_2_1 += o.psi_1_2_1_2_1;
        psi_2_2_1 += o.psi_2_2_1;
        return *this;
    }
    friend bool operator==(const FiberCounts&, const FiberCounts&) = default;
};

/// Canonical representatives of the singular points of P(V_n^*) in
/// enumeration order, stored flat for fast pairing. For n = 5 the fiber
/// counts of every singular point are precomputed as well.
struct SingularLocus {
    std::size_t degree = 0;
    u64 modulus = 0;
    Residues flat;                    // (degree + 1) residues per point
    std::vector<FiberCounts> fibers;  // n = 5 only, aligned with points
    std::unordered_map<u64, std::size_t> index;

    std::size_t size() const noexcept { return flat.size() / (degree + 1); }

    BinaryForm point(std::size_t i) const {
        Residues c(flat.begin() + static_cast<std::ptrdiff_t>(i * (degree + 1)),
                   flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * (degree + 1)));
        return BinaryForm::from_residues(PrimeField(modulus), std::move(c));
    }

    std::vector<BinaryForm> points() const {
        std::vector<BinaryForm> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
        return out;
    }
};

namespace detail {

inline void forward_fibers(SingularLocus& locus, const PrimeField& F) {
    const u64 p = F.modulus();
    locus.fibers.assign(locus.size(), FiberCounts{});
    auto bump = [&](const BinaryForm& v, i64 FiberCounts::*field) {
        auto it = locus.index.find(counter_key(v.canonical().residues(), p));
        if (it == locus.index.end()) throw std::logic_error("singular_locus: image of a psi map is not singular");
        locus.fibers[it->second].*field += 1;
    };
    auto lines = projective_points(1, F);
    std::vector<BinaryForm> line_squares;
    for (const auto& l : lines) line_squares.push_back(multiply(l, l));
    for (const auto& l2 : line_squares)
        for_each_projective_point(3, F, [&](const Residues& c) {
            bump(multiply(l2, BinaryForm::from_residues(F, c)), &FiberCounts::psi_1_2_3);
        });
    for_each_projective_point(2, F, [&](const Residues& q) {
        BinaryForm f = BinaryForm::from_residues(F, q);
        BinaryForm q2 = multiply(f, f);
        for (const auto& l : lines) bump(multiply(q2, l), &FiberCounts::psi_2_2_1);
    });
    for (const auto& a : line_squares)
        for (const auto& b : line_squares) {
            BinaryForm ab = multiply(a, b);
            for (const auto& l : lines) bump(multiply(ab, l), &FiberCounts::psi_1_2_1_2_1);
        }
}

inline std::shared_ptr<const SingularLocus> build_singular_locus(std::size_t n, const PrimeField& F) {
    auto locus = std::make_shared<SingularLocus>();
    locus->degree = n;
    locus->modulus = F.modulus();
    for_each_projective_point(n, F, [&](const Residues& c) {
        if (is_singular(BinaryForm::from_residues(F, c))) {
            locus->index.emplace(counter_key(c, F.modulus()), locus->size());
            locus->flat.insert(locus->flat.end(), c.begin(), c.end());
        }
    });
    if (n == 5) forward_fibers(*locus, F);
    return locus;
}

}  // namespace detail

/// Cached per (n, p); safe to call from several threads.
inline std::shared_ptr<const SingularLocus> singular_locus(std::size_t n, const PrimeField& F,
                                                           double budget = default_budget()) {
    if (n < 2) throw std::invalid_argument("singular_locus: degree must be at least 2");
    check_budget("singular_locus", static_cast<double>(projective_count(n, F.modulus())), budget);
    static std::mutex mu;
    static std::map<std::pair<std::size_t, u64>, std::shared_ptr<std::once_flag>> flags;
    static std::map<std::pair<std::size_t, u64>, std::shared_ptr<const SingularLocus>> cache;
    const auto key = std::make_pair(n, F.modulus());
    std::shared_ptr<std::once_flag> flag;
    {
        std::lock_guard lock(mu);
        auto& slot = flags[key];
        if (!slot) slot = std::make_shared<std::once_flag>();
        flag = slot;
    }
    std::call_once(*flag, [&] {
        auto built = detail::build_singular_locus(n, F);
        std::lock_guard lock(mu);
        cache[key] = std::move(built);
    });
    std::lock_guard lock(mu);
    return cache.at(key);
}

/// p^4 + 2p^3 + p^2 + p + 1, the number of singular points of P(V_5^*).
inline i64 n0_quintic(i64 p) { return p * p * p * p + 2 * p * p * p + p * p + p + 1; }

namespace detail {

inline u64 dot(const PrimeField& F, const Residues& w, const u64* v, std::size_t len) {
    u128 acc = 0;
    for (std::size_t i = 0; i < len; ++i) acc += static_cast<u128>(w[i]) * v[i];
    return static_cast<u64>(acc % F.modulus());
}

}  // namespace detail

/// #{[v] singular : (w, v) = 0}.
inline i64 n_w(const DualForm& w, double budget = default_budget()) {
    auto locus = singular_locus(w.degree(), w.field(), budget);
    const std::size_t len = w.degree() + 1;
    i64 n = 0;
    for (std::size_t i = 0; i < locus->size(); ++i)
        if (detail::dot(w.field(), w.residues(), locus->flat.data() + i * len, len) == 0) ++n;
    return n;
}

/// M_j = #{v in V_n^* singular or zero : (w, v) = j}.
struct ResidueProfile {
    u64 modulus = 0;
    std::vector<i64> counts;

    i64 total() const {
        i64 t = 0;
        for (i64 c : counts) t += c;
        return t;
    }
};

/// Histogram over the affine singular locus, v = 0 included, visiting every
/// nonzero scalar multiple of every projective representative.
inline ResidueProfile residue_profile(const DualForm& w, double budget = default_budget()) {
    const PrimeField& F = w.field();
    const u64 p = F.modulus();
    auto locus = singular_locus(w.degree(), F, budget);
    check_budget("residue_profile", static_cast<double>(locus->size()) * static_cast<double>(p), budget);
    const std::size_t len = w.degree() + 1;
    ResidueProfile prof{p, std::vector<i64>(p, 0)};
    prof.counts[0] = 1;  // v = 0
    for (std::size_t i = 0; i < locus->size(); ++i) {
        const u64 t = detail::dot(F, w.residues(), locus->flat.data() + i * len, len);
        for (u64 lambda = 1; lambda < p; ++lambda) ++prof.counts[F.mul(lambda, t)];
    }
    for (u64 j = 2; j < p; ++j) {
        if (prof.counts[j] != prof.counts[1]) {
            throw std::logic_error("residue_profile: M_" + std::to_string(j) + " != M_1");
        }
    }
    return prof;
}

struct OracleValue {
    i64 contraction = 0;  // 1 + p N_w - N_0
    i64 histogram = 0;    // M_0 - M_1
    i64 n_w = 0;
    i64 n_0 = 0;
};

/// S(w) = p^{n+1} Phi-hat(w) by brute force, two ways, asserted equal.
inline OracleValue exp_sum_oracle_detail(const DualForm& w, double budget = default_budget()) {
    if (w.degree() < 2) throw std::invalid_argument("exp_sum_oracle: degree must be at least 2");
    const i64 p = static_cast<i64>(w.modulus());
    auto locus = singular_locus(w.degree(), w.field(), budget);
    OracleValue out;
    out.n_0 = static_cast<i64>(locus->size());
    out.n_w = n_w(w, budget);
    out.contraction = 1 + p * out.n_w - out.n_0;
    ResidueProfile prof = residue_profile(w, budget);
    out.histogram = prof.counts[0] - (p > 1 ? prof.counts[1] : 0);
    if (out.contraction != out.histogram) {
        throw std::logic_error("exp_sum_oracle: contraction " + std::to_string(out.contraction) +
                               " != histogram " + std::to_string(out.histogram));
    }
    return out;
}

inline i64 exp_sum_oracle(const DualForm& w, double budget = default_budget()) {
    return exp_sum_oracle_detail(w, budget).contraction;
}

/// Contraction route only; used by sweeps that check the histogram elsewhere.
inline i64 exp_sum_contraction(const DualForm& w, const SingularLocus& locus) {
    const i64 p = static_cast<i64>(w.modulus());
    const std::size_t len = w.degree() + 1;
    i64 nw = 0;
    for (std::size_t i = 0; i < locus.size(); ++i)
        if (detail::dot(w.field(), w.residues(), locus.flat.data() + i * len, len) == 0) ++nw;
    return 1 + p * nw - static_cast<i64>(locus.size());
}

/// Fiber sizes over [v] by divisibility: #{[l] : l^2 | v},
/// #{([l1],[l2]) : l1^2 l2^2 | v}, #{[q] : q^2 | v}.
inline FiberCounts fiber_counts(const BinaryForm& v) {
    if (v.degree() != 5) throw std::invalid_argument("fiber_counts: expected a quintic form");
    if (v.is_zero()) throw std::invalid_argument("fiber_counts: zero form");
    const PrimeField& F = v.field();
    FiberCounts out;
    auto lines = projective_points(1, F);
    std::vector<BinaryForm> squares;
    for (const auto& l : lines) squares.push_back(multiply(l, l));
    for (const auto& s : squares)
        if (exact_divide(v, s)) ++out.psi_1_2_3;
    for (const auto& a : squares)
        for (const auto& b : squares)
            if (exact_divide(v, multiply(a, b))) ++out.psi_1_2_1_2_1;
    for_each_projective_point(2, F, [&](const Residues& q) {
        BinaryForm f = BinaryForm::from_residues(F, q);
        if (exact_divide(v, multiply(f, f))) ++out.psi_2_2_1;
    });
    return out;
}

struct ApolarFiberSums {
    FiberCounts totals;
    NTilde recovered;
    i64 n_w = 0;
};

namespace detail {

inline NTilde recover_n_tilde(const FiberCounts& t, i64 p) {
    auto take = [](i64 total, i64 base, i64 scale, const char* name) {
        if ((total - base) % scale != 0) {
            throw std::logic_error(std::string("fiber_sums_over_apolar: ") + name + " total not in the expected form");
        }
        return (total - base) / scale;
    };
    NTilde n;
    n.n1_2_3 = take(t.psi_1_2_3, (p + 1) * (p * p + p + 1), p * p * p, "psi_{1^2,3}");
    n.n2_2_1 = take(t.psi_2_2_1, p * p + p + 1, p, "psi_{2^2,1}");
    n.n1_2_1_2_1 = take(t.psi_1_2_1_2_1, (p + 1) * (p + 1), p, "psi_{1^2,1^2,1}");
    return n;
}

}  // namespace detail

/// Sums the fiber counts over [w^perp]_5 and inverts the affine formulas
/// for the Ñ values. Points off the singular locus have empty fibers, so
/// only singular points of [w^perp]_5 are visited.
inline ApolarFiberSums fiber_sums_over_apolar(const DualForm& w, double budget = default_budget()) {
    if (w.degree() != 5) throw std::invalid_argument("fiber_sums_over_apolar: expected a quintic dual form");
    const PrimeField& F = w.field();
    auto locus = singular_locus(5, F, budget);
    ApolarFiberSums out;
    for (std::size_t i = 0; i < locus->size(); ++i) {
        if (detail::dot(F, w.residues(), locus->flat.data() + i * 6, 6) != 0) continue;
        out.totals += locus->fibers[i];
        ++out.n_w;
    }
    if (out.totals.alternating_sum() != out.n_w) {
        throw std::logic_error("fiber_sums_over_apolar: alternating fiber sum " +
                               std::to_string(out.totals.alternating_sum()) + " != N_w " + std::to_string(out.n_w));
    }
    out.recovered = detail::recover_n_tilde(out.totals, static_cast<i64>(F.modulus()));
    return out;
}

/// The same sums by enumerating every projective point of [w^perp]_5 and
/// computing its fibers by divisibility. Slow; for cross-checks.
inline ApolarFiberSums fiber_sums_over_apolar_literal(const DualForm& w) {
    if (w.degree() != 5) throw std::invalid_argument("fiber_sums_over_apolar: expected a quintic dual form");
    const PrimeField& F = w.field();
    ApolarFiberSums out;
    for_each_projective_point(5, F, [&](const Residues& c) {
        BinaryForm v = BinaryForm::from_residues(F, c);
        if (pair_scalar(w, v) != 0) return;
        out.totals += fiber_counts(v);
        if (is_singular(v)) ++out.n_w;
    });
    out.recovered = detail::recover_n_tilde(out.totals, static_cast<i64>(F.modulus()));
    return out;
}

/// Genericity used by the scan: a nonzero middle catalecticant determinant
/// for even n, a nonsingular catalecticant covariant for odd n.
inline bool is_generic(const DualForm& w) {
    if (w.degree() % 2 == 0) return catalecticant_invariant(w) != 0;
    BinaryForm cov = catalecticant_covariant(w);
    return !cov.is_zero() && !is_singular(cov);
}

struct ScanConfig {
    std::size_t degree = 5;
    u64 modulus = 3;
    double budget = kDefaultBudget;
    u64 exhaustive_limit = 200000;  // sweep V_n completely when p^{n+1} is at most this
    u64 samples = 20000;
    u64 seed = 1;
};

struct ScanReport {
    std::size_t degree = 0;
    u64 modulus = 0;
    bool exhaustive = false;
    std::string genericity;
    u64 evaluated = 0;
    u64 generic = 0;
    i64 max_abs_generic = 0;
    i64 max_abs_all = 0;
    u64 covariant_nonzero = 0;      // odd n only
    i64 max_abs_covariant_nonzero = 0;
    double normalized = 0;          // max |S| / p^{(n-1)/2} over generic w
    double exponent = 0;            // max log_p |Phi-hat| over generic w
    std::map<i64, u64> generic_histogram;
};

inline ScanReport conjecture_scan(const ScanConfig& cfg) {
    if (cfg.degree < 3 || cfg.degree > 7) throw std::invalid_argument("conjecture_scan: degree must be in 3..7");
    const PrimeField F(cfg.modulus);
    const std::size_t n = cfg.degree;
    const double space = std::pow(static_cast<double>(cfg.modulus), static_cast<double>(n + 1));
    ScanReport r;
    r.degree = n;
    r.modulus = cfg.modulus;
    r.genericity = n % 2 == 0 ? "catalecticant invariant nonzero" : "catalecticant covariant nonsingular";
    r.exhaustive = space <= static_cast<double>(cfg.exhaustive_limit);

    auto locus = singular_locus(n, F, cfg.budget);
    const double per_w = static_cast<double>(locus->size());
    const double count = r.exhaustive ? space : static_cast<double>(cfg.samples);
    check_budget("conjecture_scan", count * per_w, cfg.budget);

    auto visit = [&](const Residues& a) {
        DualForm w = DualForm::from_residues(F, a);
        const i64 S = exp_sum_contraction(w, *locus);
        const i64 mag = S < 0 ? -S : S;
        ++r.evaluated;
        r.max_abs_all = std::max(r.max_abs_all, mag);
        if (n % 2 == 1 && !catalecticant_covariant(w).is_zero()) {
            ++r.covariant_nonzero;
            r.max_abs_covariant_nonzero = std::max(r.max_abs_covariant_nonzero, mag);
        }
        if (is_generic(w)) {
            ++r.generic;
            r.max_abs_generic = std::max(r.max_abs_generic, mag);
            ++r.generic_histogram[S];
        }
    };
    if (r.exhaustive) {
        for_each_vector(n + 1, F, visit);
    } else {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<u64> coeff(0, cfg.modulus - 1);
        Residues a(n + 1);
        for (u64 k = 0; k < cfg.samples; ++k) {
            for (auto& v : a) v = coeff(rng);
            visit(a);
        }
    }
    const double p = static_cast<double>(cfg.modulus);
    r.normalized = static_cast<double>(r.max_abs_generic) / std::pow(p, (static_cast<double>(n) - 1) / 2);
    r.exponent = r.max_abs_generic > 0
                     ? std::log(static_cast<double>(r.max_abs_generic)) / std::log(p) - static_cast<double>(n + 1)
                     : -INFINITY;
    return r;
}

}  // namespace qexp

#endif  // QEXP_ORACLE_HPP
