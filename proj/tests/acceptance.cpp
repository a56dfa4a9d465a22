// Acceptance suite: one PASS/FAIL line per criterion. Published values are
// compared as printed; disagreements fail and are explained in the details.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qexp/apolar.hpp"
#include "qexp/oracle.hpp"
#include "qexp/quintic.hpp"
#include "qexp/reference.hpp"

using namespace qexp;

namespace {

// Pinned limits (seconds) and sample sizes.
constexpr double kLimitCriterion1SmallP = 1.0;
constexpr double kLimitCriterion1P5 = 30.0;
constexpr double kLimitCriterion2 = 1.0;
constexpr double kLimitCriterion3 = 60.0;
constexpr double kLimitCriterion5 = 10.0;
constexpr double kLimitCriterion6 = 30.0;
constexpr double kLimitCriterion7 = 120.0;
constexpr int kCriterion5Samples = 10000;
constexpr u64 kCriterion5MaxPrime = 97;
constexpr int kCriterion8Samples = 100000;
constexpr i64 kBoundFactor = 4;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        details.push_back(std::string(ok ? "ok: " : "failed: ") + what);
    }
    void info(const std::string& what) { details.push_back("info: " + what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_time(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

std::string set_text(const std::set<int>& s) {
    std::string out = "{";
    for (int v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
    return out + "}";
}

DualForm random_dual(const PrimeField& F, std::mt19937_64& rng) {
    Residues r(6);
    for (auto& v : r) v = rng() % F.modulus();
    return DualForm::from_residues(F, r);
}

DualForm reversed(const DualForm& w) {
    Residues r(w.residues().rbegin(), w.residues().rend());
    return DualForm::from_residues(w.field(), r);
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p <= n; ++p)
        if (detail::is_prime(p)) out.push_back(p);
    return out;
}

// 1. Closed form equals the oracle for every w at p = 2, 3, 5.
Outcome criterion1() {
    Outcome o;
    for (u64 p : {2, 3, 5}) {
        const PrimeField F(p);
        auto t0 = std::chrono::steady_clock::now();
        auto locus = singular_locus(5, F);
        u64 total = 0, agree = 0;
        for_each_vector(6, F, [&](const Residues& a) {
            const DualForm w = DualForm::from_residues(F, a);
            ++total;
            if (exp_sum(w).S == exp_sum_contraction(w, *locus)) ++agree;
        });
        const double dt = seconds_since(t0);
        const double limit = p <= 3 ? kLimitCriterion1SmallP : kLimitCriterion1P5;
        o.require(agree == total, "p = " + std::to_string(p) + ": " + std::to_string(agree) + "/" +
                                      std::to_string(total) + " agree");
        o.require(dt < limit, "p = " + std::to_string(p) + " in " + fmt_time(dt) + " (limit " + fmt_time(limit) + ")");
    }
    return o;
}

// 2. The D(alpha, beta, gamma) table: C values and residue grids as printed.
Outcome criterion2() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& row : published::family_rows()) {
        const PrimeField F(row.p);
        const DualForm w = example_family(F.element(row.alpha), F.element(row.beta), F.element(row.gamma));
        const ExpSumValue v = exp_sum(w);
        const int c = v.c_value.value_or(0);
        const std::string grid = residue_grid(family_discriminants(row.alpha, row.beta, row.gamma, F));
        const std::string label = "(" + std::to_string(row.alpha) + "," + std::to_string(row.beta) + "," +
                                  std::to_string(row.gamma) + ") at p = " + std::to_string(row.p);
        o.require(c == row.c, label + ": C = " + std::to_string(c) + ", printed " + std::to_string(row.c));
        o.require(grid == row.grid, label + ": grid " + grid + ", printed " + row.grid);
    }
    for (const auto& h : published::family_headers()) {
        const std::array<i64, 4> d = {family_discriminant(h.alpha, h.beta, h.gamma),
                                      family_discriminant(h.alpha, h.beta, -h.gamma),
                                      family_discriminant(h.alpha, -h.beta, h.gamma),
                                      family_discriminant(h.alpha, -h.beta, -h.gamma)};
        if (d != h.d) {
            o.info("header (" + std::to_string(h.alpha) + "," + std::to_string(h.beta) + "," +
                   std::to_string(h.gamma) + "): computed D = " + std::to_string(d[0]) + "," + std::to_string(d[1]) +
                   "," + std::to_string(d[2]) + "," + std::to_string(d[3]) + ", printed " + std::to_string(h.d[0]) +
                   "," + std::to_string(h.d[1]) + "," + std::to_string(h.d[2]) + "," + std::to_string(h.d[3]));
        }
    }
    const double dt = seconds_since(t0);
    o.require(dt < kLimitCriterion2, "all rows in " + fmt_time(dt));
    return o;
}

// 3. Worked examples: printed quadrics recovered, bare C confirmed by the oracle.
Outcome criterion3() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& ex : published::quadric_examples()) {
        const PrimeField F(ex.p);
        const DualForm w(F, ex.coeffs);
        std::set<Residues> printed, computed, computed_direct;
        for (const auto& q : ex.quadrics) printed.insert(BinaryForm(F, {q[0], q[1], q[2]}).canonical().residues());
        for (const auto& q : apolar_square_quadrics(reversed(w))) computed.insert(q.residues());
        for (const auto& q : apolar_square_quadrics(w)) computed_direct.insert(q.residues());
        const std::string label = ex.type + " " + w.to_string() + " over F_" + std::to_string(ex.p);
        o.require(waring_type(w).to_string() == ex.type, label + ": type");
        o.require(computed == printed, label + ": printed quadrics recovered (x<->y reversed w)");
        if (computed_direct != printed) o.info(label + ": printed quadrics belong to the reversed w");
        const int c = c_value(w);
        o.require(c == ex.label, label + ": bare C = " + std::to_string(c));
        const i64 S = exp_sum_oracle(w);
        o.require(S == static_cast<i64>(ex.label) * static_cast<i64>(ex.p * ex.p),
                  label + ": oracle S = " + std::to_string(S) + " = C p^2");
    }
    o.info("labels are printed as C(w) = k*p; C(w) is the bare k and S = k p^2");
    const double dt = seconds_since(t0);
    o.require(dt < kLimitCriterion3, "examples in " + fmt_time(dt));
    return o;
}

// 4. p = 2: value table as printed, and the three characteristic-two examples.
Outcome criterion4() {
    Outcome o;
    const PrimeField F(2);
    std::map<std::string, std::set<int>> seen;
    bool routes = true;
    auto locus = singular_locus(5, F);
    for_each_vector(6, F, [&](const Residues& a) {
        const DualForm w = DualForm::from_residues(F, a);
        const ExpSumValue v = exp_sum(w);
        routes = routes && v.S == exp_sum_contraction(w, *locus);
        if (!v.c_value) return;
        std::string key = v.waring.to_string();
        if (v.waring.rank == 3 && key != "<1^3>" && key != "<1^2,1>") key = "other";
        seen[key].insert(*v.c_value);
    });
    o.require(routes, "closed form = oracle on all 64 w");
    for (const auto& set : published::c_sets(true)) {
        const std::set<int> printed(set.values.begin(), set.values.end());
        o.require(seen[set.type] == printed,
                  set.type + ": computed " + set_text(seen[set.type]) + ", printed " + set_text(printed));
    }
    for (const auto& ex : published::char2_examples()) {
        const DualForm w(F, ex.coeffs);
        const auto qs = apolar_square_quadrics(w);
        const bool ok = waring_type(w).to_string() == ex.type && qs.size() == 1 &&
                        qs[0] == BinaryForm(F, {ex.quadric[0], ex.quadric[1], ex.quadric[2]}) &&
                        quadratic_symbol(qs[0]) == ex.symbol;
        o.require(ok, w.to_string() + ": type " + ex.type + ", symbol " + std::to_string(ex.symbol));
    }
    return o;
}

// 5. Covariant apolarity, covariant vanishing below rank 3, unique minimal generator.
Outcome criterion5() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    u64 tested = 0, apolar = 0, vanishing_ok = 0, unique = 0;
    auto visit = [&](const DualForm& w) {
        ++tested;
        const BinaryForm cov = cat_covariant(w);
        const unsigned rank = catalecticant_rank(w);
        if (pair(w, cov).is_zero()) ++apolar;
        if (!cov.is_zero() || rank <= 2) ++vanishing_ok;
        if (w.is_zero() || apolar_space(w, rank).size() == 1) ++unique;
    };
    for (u64 p : {2, 3}) {
        const PrimeField F(p);
        for_each_vector(6, F, [&](const Residues& a) { visit(DualForm::from_residues(F, a)); });
    }
    std::mt19937_64 rng(5);
    const auto primes = primes_up_to(kCriterion5MaxPrime);
    for (int k = 0; k < kCriterion5Samples; ++k) visit(random_dual(PrimeField(primes[rng() % primes.size()]), rng));
    const double dt = seconds_since(t0);
    o.require(apolar == tested, "pair(w, Cat) = 0 on " + std::to_string(apolar) + "/" + std::to_string(tested));
    o.require(vanishing_ok == tested, "Cat = 0 implies rank <= 2 on " + std::to_string(vanishing_ok) + "/" +
                                          std::to_string(tested));
    o.require(unique == tested, "dim (w^perp)_rank = 1 on " + std::to_string(unique) + "/" + std::to_string(tested));
    o.require(dt < kLimitCriterion5, "in " + fmt_time(dt));
    return o;
}

// Factorization f = c * prod q_i^{e_i} into coprime prime powers by trial
// division against irreducibles of degree <= 5.
std::vector<BinaryForm> prime_power_parts(BinaryForm f, const std::vector<BinaryForm>& irreducibles) {
    std::vector<BinaryForm> parts;
    for (const auto& q : irreducibles) {
        if (q.degree() > f.degree()) continue;
        BinaryForm power(f.field(), {1});
        for (;;) {
            auto r = exact_divide(f, q);
            if (!r) break;
            f = *r;
            power = multiply(power, q);
        }
        if (power.degree() > 0) parts.push_back(power);
        if (f.degree() == 0) break;
    }
    if (f.degree() > 0) throw std::logic_error("prime_power_parts: unfactored cofactor " + f.to_string());
    return parts;
}

// 6. dim (^perp f)_5 = deg f, and the prime-power summands form a direct sum.
Outcome criterion6() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    u64 forms = 0, dims_ok = 0, composite = 0, direct_ok = 0;
    for (u64 p : {2, 3, 5}) {
        const PrimeField F(p);
        std::vector<BinaryForm> irreducibles;
        for (std::size_t d = 1; d <= 5; ++d)
            for (const auto& f : projective_points(d, F))
                if (splitting_type(f) == SplittingType{{static_cast<unsigned>(d), 1}}) irreducibles.push_back(f);
        for (std::size_t d = 1; d <= 5; ++d) {
            for (const auto& f : projective_points(d, F)) {
                ++forms;
                const auto space = inverse_apolar_space(f, 5);
                if (space.size() == d) ++dims_ok;
                const auto parts = prime_power_parts(f, irreducibles);
                if (parts.size() < 2) continue;
                ++composite;
                std::vector<Residues> all;
                std::size_t sum = 0;
                bool contained = true;
                for (const auto& part : parts) {
                    const auto sub = inverse_apolar_space(part, 5);
                    sum += sub.size();
                    contained = contained && sub.size() == part.degree();
                    for (const auto& u : sub) {
                        contained = contained && pair(u, f).is_zero();
                        all.push_back(u.residues());
                    }
                }
                if (contained && sum == d && echelon_basis(F, all, 6).size() == sum) ++direct_ok;
            }
        }
    }
    const double dt = seconds_since(t0);
    o.require(dims_ok == forms, "dim = deg f on " + std::to_string(dims_ok) + "/" + std::to_string(forms));
    o.require(direct_ok == composite,
              "direct sums on " + std::to_string(direct_ok) + "/" + std::to_string(composite) + " composite f");
    o.require(dt < kLimitCriterion6, "in " + fmt_time(dt));
    return o;
}

// 7. Fiber table as a function of splitting type; alternating sum = indicator.
Outcome criterion7() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::map<std::string, std::array<i64, 4>> table;
    for (const auto& row : published::fiber_rows()) table[row.type.empty() ? "nonsingular" : row.type.to_string()] = row.values;
    for (u64 p : {2, 3, 5}) {
        const PrimeField F(p);
        u64 points = 0, match = 0, indicator = 0;
        std::set<std::string> unknown;
        for_each_projective_point(5, F, [&](const Residues& c) {
            const BinaryForm v = BinaryForm::from_residues(F, c);
            ++points;
            const bool sing = is_singular(v);
            const std::string key = sing ? splitting_type(v).to_string() : "nonsingular";
            const FiberCounts fc = fiber_counts(v);
            if (fc.alternating_sum() == (sing ? 1 : 0)) ++indicator;
            auto it = table.find(key);
            if (it == table.end()) {
                unknown.insert(key);
                return;
            }
            if (std::array<i64, 4>{fc.psi_1_2_3, fc.psi_1_2_1_2_1, fc.psi_2_2_1, fc.alternating_sum()} == it->second)
                ++match;
        });
        const std::string at = "p = " + std::to_string(p);
        o.require(unknown.empty(), at + ": every splitting type is in the table");
        o.require(match == points, at + ": rows match on " + std::to_string(match) + "/" + std::to_string(points));
        o.require(indicator == points, at + ": alternating sum = indicator on " + std::to_string(indicator) + "/" +
                                           std::to_string(points));
    }
    const double dt = seconds_since(t0);
    o.require(dt < kLimitCriterion7, "in " + fmt_time(dt));
    return o;
}

// 8(a). |S| <= 4 p^2 whenever the covariant is nonzero, by the oracle.
Outcome criterion8a() {
    Outcome o;
    for (u64 p : {3, 5, 7}) {
        const PrimeField F(p);
        const i64 bound = kBoundFactor * static_cast<i64>(p * p);
        auto locus = singular_locus(5, F);
        u64 population = 0, within = 0;
        i64 worst = 0;
        auto visit = [&](const DualForm& w) {
            if (cat_covariant(w).is_zero()) return;
            ++population;
            const i64 S = exp_sum_contraction(w, *locus);
            worst = std::max(worst, S < 0 ? -S : S);
            if ((S < 0 ? -S : S) <= bound) ++within;
        };
        if (p <= 5) {
            for_each_vector(6, F, [&](const Residues& a) { visit(DualForm::from_residues(F, a)); });
        } else {
            std::mt19937_64 rng(8);
            for (int k = 0; k < kCriterion8Samples; ++k) visit(random_dual(F, rng));
        }
        o.require(within == population, "p = " + std::to_string(p) + (p <= 5 ? " exhaustive" : " sampled") + ": " +
                                            std::to_string(within) + "/" + std::to_string(population) +
                                            " within, max |S| = " + std::to_string(worst) + " <= " +
                                            std::to_string(bound));
    }
    return o;
}

// 8(b). Every C in {-4..4} is attained by criterion 2's witnesses.
Outcome criterion8b() {
    Outcome o;
    std::set<int> attained;
    for (const auto& row : published::family_rows()) {
        const PrimeField F(row.p);
        attained.insert(c_value(example_family(F.element(row.alpha), F.element(row.beta), F.element(row.gamma))));
    }
    std::set<int> missing;
    for (int c = -4; c <= 4; ++c)
        if (!attained.count(c)) missing.insert(c);
    o.require(missing.empty(), "criterion 2 witnesses attain " + set_text(attained) + ", missing " + set_text(missing));
    // Supplementary: search the family, then the worked examples, for the missing values.
    for (int c : missing) {
        std::string witness;
        for (u64 p : primes_up_to(337)) {
            if (p < 5 || !witness.empty()) continue;
            const PrimeField F(p);
            for (i64 b = 2; b <= 4 && witness.empty(); ++b)
                for (i64 g = b + 1; g <= 30 && witness.empty(); ++g) {
                    if (F.reduce(b) == 0 || F.reduce(g) == 0) continue;
                    const DualForm w = example_family(F.element(1), F.element(b), F.element(g));
                    if (waring_type(w).rank == 3 && c_value(w) == c)
                        witness = "(1," + std::to_string(b) + "," + std::to_string(g) + ") at p = " + std::to_string(p);
                }
        }
        for (const auto& ex : published::quadric_examples())
            if (witness.empty() && ex.label == c)
                witness = "the " + ex.type + " worked example at p = " + std::to_string(ex.p);
        o.info("C = " + std::to_string(c) + (witness.empty() ? ": no witness found" : " attained by " + witness));
    }
    return o;
}

// 9. Large p rests on O(p^2) evaluation at p = 337 and invariants there.
Outcome criterion9() {
    Outcome o;
    const PrimeField F(337);
    auto t0 = std::chrono::steady_clock::now();
    const ExpSumValue v = exp_sum(example_family(F.element(1), F.element(2), F.element(3)));
    const double dt = seconds_since(t0);
    o.require(dt < kLimitCriterion2, "closed form at p = 337 in " + fmt_time(dt) + ", S = " + std::to_string(v.S));
    std::mt19937_64 rng(9);
    u64 ok = 0;
    const int trials = 200;
    for (int k = 0; k < trials; ++k) {
        const DualForm w = random_dual(F, rng);
        const Substitution g{static_cast<i64>(rng() % 337), 1, 1, 0};  // det = -1
        const ExpSumValue a = exp_sum(w), b = exp_sum(dual_action(w, g));
        const bool bound = a.waring.rank < 3 || std::abs(a.S) <= kBoundFactor * 337 * 337;
        if (a.S == b.S && a.waring == b.waring && pair(w, cat_covariant(w)).is_zero() && bound) ++ok;
    }
    o.require(ok == static_cast<u64>(trials), "invariants at p = 337 (both routes, GL2, apolarity, bound) on " +
                                                  std::to_string(ok) + "/" + std::to_string(trials));
    o.info("the statement for arbitrary large p is not reproducible by enumeration; "
           "this evaluation and the invariant suites stand in for it");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 exhaustive closed form = oracle (p = 2, 3, 5)", criterion1},
        {"2 D(alpha, beta, gamma) table", criterion2},
        {"3 worked quadric examples", criterion3},
        {"4 characteristic-two value table", criterion4},
        {"5 covariant apolarity and minimal generator", criterion5},
        {"6 generalized Waring decomposition", criterion6},
        {"7 fiber table", criterion7},
        {"8a bound |S| <= 4p^2 for nonzero covariant", criterion8a},
        {"8b every C in -4..4 attained by table witnesses", criterion8b},
        {"9 large-p substitute", criterion9},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.details.push_back(std::string("exception: ") + e.what());
        }
        std::printf("%s criterion %s\n", o.pass ? "PASS" : "FAIL", name.c_str());
        for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
