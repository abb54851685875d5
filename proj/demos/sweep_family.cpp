// Small height-cutoff sweep over the 5-torsion family, printing the
// divisibility statistic per cutoff.

#include <cstdio>

#include "ellq/survey.hpp"

using namespace ellq;

int main() {
    SurveyOptions opt;
    opt.jobs = 2;
    std::vector<SurveyRow> rows;
    for (double X : {2.0, 3.0, 4.0}) {
        rows.push_back(tilde_stats(5, X, opt));
        const auto& r = rows.back();
        std::printf("X = %-3g  N = %-6llu G = %-6llu  %.2f%%\n", r.X,
                    static_cast<unsigned long long>(r.N),
                    static_cast<unsigned long long>(r.G), r.percent);
    }
    auto [g, n] = ratio_table(rows);
    for (std::size_t i = 0; i < g.size(); ++i)
        std::printf("step %zu: G ratio %.4f, N ratio %.4f\n", i, g[i], n[i]);
    return 0;
}
