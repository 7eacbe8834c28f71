#include <ltpol/s0_engine.hpp>

namespace ltpol
{

long wq(long n, long q)
{
    if (n < 0 || q < 2) {
        throw arithmetic_error("wq needs n >= 0 and q >= 2");
    }
    long sum = 0;
    for (long qk = q; qk <= n; qk *= q) {
        sum += n / qk;
        if (qk > n / q) {
            break;
        }
    }
    return sum;
}

s0_result run_s0_scan(const arithmetic_context &ctx, const scan_options &opts)
{
    if (ctx.backend == backend_kind::exact) {
        return s0_scan<exact_scalar>(ctx, opts);
    }
    return s0_scan<capped_scalar>(ctx, opts);
}

} // namespace ltpol
