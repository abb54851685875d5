// Classify one member of each family and cross-check the closed-form table
// against the full algorithm.

#include <cinttypes>

#include <cstdio>

#include "ellq/classifier.hpp"
#include "ellq/tate.hpp"

using namespace ellq;

int main() {
    ParamSpec specs[] = {
        {Family::C3, Bigint(24), Bigint(1)},
        {Family::C3_0, Bigint(5), Bigint(0)},
        {Family::C5, Bigint(3), Bigint(2)},
        {Family::C7, Bigint(2), Bigint(1)},
    };
    for (const ParamSpec& s : specs) {
        auto g = classify_global(s);
        auto pair = build_pair(s);
        auto oracle = global_tamagawa(pair.e_tilde);
        std::printf("%-10s c = %-4s c~ = %-4s (quotient curve via Tate: %s)\n",
                    s.to_string().c_str(), g.c.to_string().c_str(),
                    g.c_tilde.to_string().c_str(), oracle.first.to_string().c_str());
        for (const auto& lp : g.breakdown)
            std::printf("    p = %-6s (%" PRIu64 ", %" PRIu64 ")  %s\n",
                        lp.p.to_string().c_str(), lp.c_p, lp.c_tilde_p, lp.rule.c_str());
    }
    return 0;
}
