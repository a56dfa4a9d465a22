#include <gtest/gtest.h>

#include <map>
#include <random>

#include "qexp/factor.hpp"

using namespace qexp;

namespace {

// Irreducible binary forms of degree 1..3 up to scaling: for degree <= 3,
// irreducible means no linear factor.
std::vector<BinaryForm> small_irreducibles(const PrimeField& F) {
    std::vector<BinaryForm> linear = projective_points(1, F);
    std::vector<BinaryForm> out = linear;
    for (std::size_t d = 2; d <= 3; ++d) {
        for (const auto& f : projective_points(d, F)) {
            bool reducible = false;
            for (const auto& l : linear) reducible = reducible || exact_divide(f, l).has_value();
            if (!reducible) out.push_back(f);
        }
    }
    return out;
}

// Splitting type by trial division. Valid for degree <= 7, where a
// cofactor without factors of degree <= 3 is irreducible.
SplittingType trial_division_type(BinaryForm f, const std::vector<BinaryForm>& irreducibles) {
    std::vector<SplittingType::Part> parts;
    for (const auto& q : irreducibles) {
        unsigned mult = 0;
        while (f.degree() >= q.degree()) {
            auto r = exact_divide(f, q);
            if (!r) break;
            f = *r;
            ++mult;
        }
        if (mult) parts.push_back({static_cast<unsigned>(q.degree()), mult});
    }
    if (f.degree() > 0) parts.push_back({static_cast<unsigned>(f.degree()), 1});
    return SplittingType(std::move(parts));
}

}  // namespace

TEST(SplittingType, Examples) {
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(11), {1, 0, 1})).to_string(), "<2>");
    PrimeField F5(5);
    EXPECT_EQ(splitting_type(BinaryForm(F5, {1, 0, 0, 0, 0, 0})).to_string(), "<1^5>");
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(2), {1, 1, 1})).to_string(), "<2>");
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(7), {0, 1, 0})).to_string(), "<1,1>");
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(3), {1, 0})).to_string(), "<1>");
    EXPECT_THROW(splitting_type(BinaryForm(F5, 3)), std::invalid_argument);
}

TEST(SplittingType, NormalizesPartOrder) {
    SplittingType t{{1, 1}, {2, 1}, {1, 2}};
    EXPECT_EQ(t.to_string(), "<1^2,2,1>");
    EXPECT_EQ(t.total_degree(), 5u);
    EXPECT_TRUE(t.has_multiple_factor());
    EXPECT_EQ(SplittingType{}.to_string(), "<>");
}

TEST(SplittingType, InseparableCollapseInSmallCharacteristic) {
    // x^4 + y^4 = (x + y)^4 over F_2, x^3 + y^3 = (x + y)^3 over F_3.
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(2), {1, 0, 0, 0, 1})).to_string(), "<1^4>");
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(3), {1, 0, 0, 1})).to_string(), "<1^3>");
    // (x^2 + xy + y^2)^2 over F_2.
    EXPECT_EQ(splitting_type(BinaryForm(PrimeField(2), {1, 0, 1, 0, 1})).to_string(), "<2^2>");
}

TEST(SplittingType, MatchesTrialDivisionExhaustively) {
    for (u64 p : {2, 3, 5}) {
        PrimeField F(p);
        auto irr = small_irreducibles(F);
        for (std::size_t n = 1; n <= (p == 5 ? 5u : 6u); ++n) {
            for_each_projective_point(n, F, [&](const Residues& c) {
                BinaryForm f = BinaryForm::from_residues(F, c);
                SplittingType expected = trial_division_type(f, irr);
                ASSERT_EQ(splitting_type(f), expected) << f.to_string() << " over F_" << p;
                EXPECT_EQ(is_singular(f), expected.has_multiple_factor()) << f.to_string();
            });
        }
    }
}

TEST(SplittingType, MatchesTrialDivisionOnRandomForms) {
    std::mt19937_64 rng(2024);
    for (u64 p : {7, 11, 13, 23}) {
        PrimeField F(p);
        auto irr = small_irreducibles(F);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 1 + rng() % 7;
            Residues c(n + 1);
            for (auto& v : c) v = rng() % p;
            BinaryForm f = BinaryForm::from_residues(F, c);
            if (f.is_zero()) continue;
            EXPECT_EQ(splitting_type(f), trial_division_type(f, irr)) << f.to_string() << " over F_" << p;
        }
    }
}

TEST(SplittingType, ConstructedProductsHaveTheBuiltType) {
    std::mt19937_64 rng(77);
    for (u64 p : {3, 7, 31}) {
        PrimeField F(p);
        auto irr = small_irreducibles(F);
        for (int trial = 0; trial < 200; ++trial) {
            // Distinct irreducible factors with random multiplicities.
            std::map<std::size_t, unsigned> chosen;
            unsigned total = 0;
            while (total < 5) {
                std::size_t k = rng() % irr.size();
                unsigned room = 7 - total;
                if (irr[k].degree() > room) break;
                chosen[k] += 1;
                total += static_cast<unsigned>(irr[k].degree());
            }
            BinaryForm f(F, {static_cast<i64>(1 + rng() % (p - 1))});
            std::vector<SplittingType::Part> parts;
            for (auto [k, m] : chosen) {
                f = multiply(f, power(irr[k], m));
                parts.push_back({static_cast<unsigned>(irr[k].degree()), m});
            }
            EXPECT_EQ(splitting_type(f), SplittingType(parts)) << f.to_string();
        }
    }
}

TEST(QuadraticSymbol, MatchesLegendreOfDiscriminantForOddP) {
    for (u64 p : {3, 5, 7, 11}) {
        PrimeField F(p);
        for_each_projective_point(2, F, [&](const Residues& c) {
            BinaryForm q = BinaryForm::from_residues(F, c);
            EXPECT_EQ(quadratic_symbol(q), legendre(disc_quadratic(q))) << q.to_string();
        });
    }
}

TEST(QuadraticSymbol, CharacteristicTwo) {
    PrimeField F(2);
    EXPECT_EQ(quadratic_symbol(BinaryForm(F, {0, 1, 0})), 1);   // xy
    EXPECT_EQ(quadratic_symbol(BinaryForm(F, {1, 0, 1})), 0);   // (x + y)^2
    EXPECT_EQ(quadratic_symbol(BinaryForm(F, {1, 1, 1})), -1);  // irreducible
    EXPECT_EQ(quadratic_symbol(BinaryForm(F, {0, 0, 1})), 0);   // y^2
    EXPECT_THROW(quadratic_symbol(BinaryForm(F, {1, 1})), std::invalid_argument);
}

TEST(SingularCount, QuinticsOverSmallFields) {
    for (u64 p : {2, 3}) {
        PrimeField F(p);
        auto irr = small_irreducibles(F);
        u64 singular = 0;
        for_each_projective_point(5, F, [&](const Residues& c) {
            if (trial_division_type(BinaryForm::from_residues(F, c), irr).has_multiple_factor()) ++singular;
        });
        u64 fast = 0;
        for_each_projective_point(5, F, [&](const Residues& c) { fast += is_singular(BinaryForm::from_residues(F, c)); });
        EXPECT_EQ(fast, singular);
        // p^n - p^{n-2} squarefree classes in degree n >= 3.
        EXPECT_EQ(projective_count(5, p) - singular, p * p * p * p * p - p * p * p);
    }
}
