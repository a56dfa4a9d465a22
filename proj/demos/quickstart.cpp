// Evaluates S(w) = p^6 Phi-hat(w) for a few quintic dual forms and checks
// each against brute force.

#include <iostream>
#include <string>
#include <vector>

#include "qexp/oracle.hpp"
#include "qexp/quintic.hpp"

int main() {
    using namespace qexp;
    struct Input {
        u64 p;
        std::vector<i64> a;
    };
    const std::vector<Input> inputs = {
        {3, {0, 0, 0, 0, 0, 0}},
        {7, {1, 0, 0, 0, 0, 1}},
        {7, {0, 0, 0, 1, 1, -2}},
        {19, {-1, 0, 0, 0, 1, 2}},
    };
    for (const auto& in : inputs) {
        PrimeField F(in.p);
        DualForm w(F, in.a);
        ExpSumValue v = exp_sum(w);
        const std::string frac = render_fraction(v.S, in.p);
        const std::string powers = render_p_powers(v);
        std::cout << "p = " << in.p << "  w = " << w.to_string() << "\n"
                  << "  Waring type " << v.waring.to_string() << ", S = " << v.S << ", Phi-hat = " << frac
                  << (powers == frac ? "" : " = " + powers) << "\n"
                  << "  oracle S = " << exp_sum_oracle(w) << "\n";
    }
}
