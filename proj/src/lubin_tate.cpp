#include <ltpol/lubin_tate.hpp>

#include <algorithm>

namespace ltpol
{

std::vector<std::vector<mpz_class>> pascal_rows(int n, int width)
{
    std::vector<std::vector<mpz_class>> rows(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const int w = std::min(j, width);
        auto &row = rows[j];
        row.resize(static_cast<std::size_t>(w) + 1);
        row[0] = 1;
        for (int i = 1; i <= w; ++i) {
            const auto &prev = rows[j - 1];
            row[i] = prev[i - 1] + (i < static_cast<int>(prev.size()) ? prev[i] : mpz_class(0));
        }
    }
    return rows;
}

} // namespace ltpol
