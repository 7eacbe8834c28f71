#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <ltpol/carleman.hpp>
#include <ltpol/errors.hpp>
#include <ltpol/lubin_tate.hpp>
#include <ltpol/padic.hpp>
#include <ltpol/parallel.hpp>
#include <ltpol/psi_kernel.hpp>

namespace ltpol
{

// w_q(n) = sum_{k >= 1} floor(n / q^k). -w_q(n) is the smallest possible
// valuation of the leading coefficient of a degree-n integer-valued
// polynomial on o_F.
long wq(long n, long q);

enum class insert_outcome { new_pivot, swapped, reduced_to_zero };

// Triangular basis of an o-module of polynomials in T: at most one stored row
// per degree n, whose leading coefficient has the minimal valuation among
// module elements of exact degree n.
template <padic_scalar S>
class echelon_state
{
public:
    struct pivot {
        std::vector<S> coeffs; // degree n row, coeffs.size() == n + 1
        val_t valuation = kInfinity;
        S lc_inverse;
    };

    // enforce_floor: reject any pivot with valuation below -w_q(n).
    echelon_state(std::size_t max_degree, long q, bool enforce_floor = true)
        : m_q(q), m_enforce_floor(enforce_floor), m_pivots(max_degree + 1)
    {
    }

    std::size_t max_degree() const noexcept { return m_pivots.size() - 1; }
    bool has_pivot(std::size_t n) const { return n < m_pivots.size() && m_pivots[n].has_value(); }
    val_t pivot_valuation(std::size_t n) const { return has_pivot(n) ? m_pivots[n]->valuation : kInfinity; }
    const std::vector<S> &pivot_row(std::size_t n) const { return m_pivots.at(n).value().coeffs; }
    std::size_t rank() const
    {
        std::size_t r = 0;
        for (const auto &pv : m_pivots) {
            r += pv.has_value();
        }
        return r;
    }

    // Smallest absolute precision among stored coefficients (kInfinity when
    // exact).
    val_t worst_precision() const noexcept { return m_worst_precision; }
    // Rows whose residue vanished only to precision, and the smallest
    // absolute precision seen among such residues.
    std::size_t fuzzy_discards() const noexcept { return m_fuzzy_discards; }
    val_t worst_discard_precision() const noexcept { return m_worst_discard; }

    // Reduce `row` against the stored pivots from the top degree down,
    // swapping whenever the incoming leading coefficient has smaller
    // valuation than the stored one.
    insert_outcome insert_row(std::vector<S> row)
    {
        insert_outcome outcome = insert_outcome::reduced_to_zero;
        while (true) {
            const long d = top_degree(row);
            if (d < 0) {
                return outcome;
            }
            if (static_cast<std::size_t>(d) >= m_pivots.size()) {
                throw arithmetic_error("row of degree " + std::to_string(d) + " exceeds the echelon bound");
            }
            row.resize(static_cast<std::size_t>(d) + 1);
            const val_t v = row[d].valuation();
            if (m_enforce_floor && v < -wq(d, m_q)) {
                throw invariant_violation("pivot valuation " + std::to_string(v) + " at degree "
                                          + std::to_string(d) + " is below the integer-valued floor -"
                                          + std::to_string(wq(d, m_q)) + " (precision corruption)");
            }
            auto &slot = m_pivots[d];
            if (!slot) {
                store(slot, std::move(row), v);
                return outcome == insert_outcome::swapped ? outcome : insert_outcome::new_pivot;
            }
            if (v < slot->valuation) {
                std::swap(row, slot->coeffs);
                store(slot, std::move(slot->coeffs), v);
                outcome = insert_outcome::swapped;
            }
            // v(row[d]) >= v(pivot lc): clear degree d with an integral multiplier.
            const S m = row[d] * slot->lc_inverse;
            const auto &pc = slot->coeffs;
            for (long k = 0; k < d; ++k) {
                if (!pc[k].is_exact_zero()) {
                    row[k].sub_mul(m, pc[k]);
                }
            }
            row.pop_back();
        }
    }

private:
    // Top nonzero degree, -1 if the row is zero (exactly or to precision).
    long top_degree(const std::vector<S> &row)
    {
        for (std::size_t k = row.size(); k-- > 0;) {
            const S &c = row[k];
            if (c.is_exact_zero()) {
                continue;
            }
            if (!c.is_precision_zero()) {
                return static_cast<long>(k);
            }
            // Precision-zero on top: only a row that is zero to precision all
            // the way down can be discarded.
            val_t worst = c.abs_precision();
            for (std::size_t j = 0; j < k; ++j) {
                if (!row[j].is_zero()) {
                    throw precision_error("uncertifiable pivot at degree " + std::to_string(k)
                                          + ": coefficient known only modulo p^" + std::to_string(c.abs_precision())
                                          + " above a nonzero coefficient of degree " + std::to_string(j));
                }
                if (row[j].is_precision_zero()) {
                    worst = std::min(worst, row[j].abs_precision());
                }
            }
            ++m_fuzzy_discards;
            m_worst_discard = std::min(m_worst_discard, worst);
            return -1;
        }
        return -1;
    }

    void store(std::optional<pivot> &slot, std::vector<S> coeffs, val_t v)
    {
        for (const auto &c : coeffs) {
            if (!c.is_exact_zero()) {
                m_worst_precision = std::min<val_t>(m_worst_precision, c.abs_precision());
            }
        }
        S inv = scalar_one<S>(coeffs.back().ring()) / coeffs.back();
        slot = pivot{std::move(coeffs), v, std::move(inv)};
    }

    long m_q;
    bool m_enforce_floor;
    std::vector<std::optional<pivot>> m_pivots;
    val_t m_worst_precision = kInfinity;
    std::size_t m_fuzzy_discards = 0;
    val_t m_worst_discard = kInfinity;
};

struct s0_result {
    long p = 0;
    int n_max = 0;
    val_t precision = kInfinity;
    backend_kind backend = backend_kind::exact;
    // s0[n] in {n .. N} or -1.
    std::vector<int> s0;
    std::vector<long> w;
    // Pivot valuations after the last stage (kInfinity where absent).
    std::vector<val_t> final_pivot_valuations;
    val_t worst_precision = kInfinity;
    std::size_t fuzzy_discards = 0;
    val_t worst_discard_precision = kInfinity;
    double seconds = 0.0;
};

struct scan_options {
    int threads = 1;
    // Permute the psi=0 generators before elimination.
    std::optional<std::uint64_t> shuffle_seed;
    // Called after every stage s with the pivot valuations at degrees 0..N.
    std::function<void(int stage, std::span<const val_t> pivot_valuations)> on_stage;
};

// (B * Dinv)[i][k] = sum_{l=i}^{k} B[i][l] Dinv[l][k]: row i holds the
// coefficients of b_i(exp(Y)) in Y, so that
//   c_{b_i,m}(T) = sum_k (B * Dinv)[i][k] D[k][m] T^k.
template <padic_scalar S>
matrix<S> basis_in_log_coordinates(const matrix<S> &b, const matrix<S> &dinv, int threads)
{
    const std::size_t n = b.dim();
    const padic_ring &r = b(0, 0).ring();
    matrix<S> out(n, r);
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t k = i; k < n; ++k) {
            S acc = scalar_zero<S>(r);
            for (std::size_t l = i; l <= k; ++l) {
                if (!b(i, l).is_exact_zero() && !dinv(l, k).is_exact_zero()) {
                    acc += b(i, l) * dinv(l, k);
                }
            }
            out(i, k) = std::move(acc);
        }
    });
    return out;
}

// Coefficient vector (T-degree 0..m) of c_{b_i,m}.
template <padic_scalar S>
std::vector<S> c_b_row(const matrix<S> &be, const matrix<S> &d, std::size_t i, std::size_t m)
{
    const padic_ring &r = d(0, 0).ring();
    std::vector<S> row(m + 1, scalar_zero<S>(r));
    for (std::size_t k = i; k <= m; ++k) {
        if (!be(i, k).is_exact_zero() && !d(k, m).is_exact_zero()) {
            row[k] = be(i, k) * d(k, m);
        }
    }
    return row;
}

// s0(n) for all n <= N. Stage s feeds c_{b_i,s} (i <= s) and c_{b_s,m}
// (m <= s) into the echelon; s0[n] is the first stage whose pivot at degree
// n has valuation exactly -w_q(n).
template <padic_scalar S>
s0_result s0_scan(const arithmetic_context &ctx, const scan_options &opts = {})
{
    const auto t0 = std::chrono::steady_clock::now();
    const int n_max = ctx.n_max;
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;

    const auto log = log_series<S>(ctx);
    const auto d = carleman_matrix(log);
    const auto dinv = invert_unitriangular(d, opts.threads);
    basis_options bopts;
    bopts.shuffle_seed = opts.shuffle_seed;
    const auto basis = psi_kernel_basis<S>(ctx, bopts);
    const auto be = basis_in_log_coordinates(basis.rows, dinv, opts.threads);

    s0_result res;
    res.p = ctx.p;
    res.n_max = n_max;
    res.precision = ctx.precision;
    res.backend = S::backend;
    res.s0.assign(dim, -1);
    for (std::size_t n = 0; n < dim; ++n) {
        res.w.push_back(wq(static_cast<long>(n), ctx.q));
    }

    echelon_state<S> state(dim - 1, ctx.q);
    std::vector<val_t> pivots(dim, kInfinity);
    for (std::size_t s = 0; s < dim; ++s) {
        // Rows of this stage in insertion order: i ascending, then m ascending.
        std::vector<std::pair<std::size_t, std::size_t>> index;
        for (std::size_t i = 0; i <= s; ++i) {
            index.emplace_back(i, s);
        }
        for (std::size_t m = 0; m < s; ++m) {
            index.emplace_back(s, m);
        }
        std::vector<std::vector<S>> rows(index.size());
        parallel_for(index.size(), opts.threads,
                     [&](std::size_t t) { rows[t] = c_b_row(be, d, index[t].first, index[t].second); });
        for (std::size_t t = 0; t < rows.size(); ++t) {
            try {
                state.insert_row(std::move(rows[t]));
            } catch (const precision_error &e) {
                throw precision_error("stage " + std::to_string(s) + ", row c_{b_" + std::to_string(index[t].first)
                                      + "," + std::to_string(index[t].second) + "}: " + e.what());
            } catch (const invariant_violation &e) {
                throw invariant_violation("stage " + std::to_string(s) + ": " + e.what());
            }
        }
        for (std::size_t n = 0; n <= s; ++n) {
            const val_t v = state.pivot_valuation(n);
            if (v > pivots[n]) {
                throw invariant_violation("pivot valuation increased at degree " + std::to_string(n));
            }
            pivots[n] = v;
            if (res.s0[n] == -1 && v == -res.w[n]) {
                res.s0[n] = static_cast<int>(s);
            }
        }
        if (opts.on_stage) {
            opts.on_stage(static_cast<int>(s), pivots);
        }
    }
    res.final_pivot_valuations = pivots;
    res.worst_precision = state.worst_precision();
    res.fuzzy_discards = state.fuzzy_discards();
    res.worst_discard_precision = state.worst_discard_precision();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// Runtime backend dispatch.
s0_result run_s0_scan(const arithmetic_context &ctx, const scan_options &opts = {});

} // namespace ltpol
