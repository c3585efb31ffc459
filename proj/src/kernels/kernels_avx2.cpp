/* AVX2 variants of the conv kernels. Each output lane accumulates in the
 * same (ky, kx, ci) order as the scalar reference and uses separate
 * mul/add (no FMA), so results are bit-identical to the scalar table. */

#include "dogm/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DOGM_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#endif

namespace dogm::kernels {

#ifdef DOGM_HAVE_AVX2_BUILD

namespace {

constexpr int kLanes = 8;

inline void madd_span(const float* wc, float v, float* acc, int n) {
    /* acc[0..n) += v * wc[0..n), vector head + scalar tail, per-lane order
     * equal to the scalar loop. */
    const __m256 vv = _mm256_set1_ps(v);
    int co = 0;
    for (; co + kLanes <= n; co += kLanes) {
        const __m256 prod = _mm256_mul_ps(vv, _mm256_loadu_ps(wc + co));
        _mm256_storeu_ps(acc + co, _mm256_add_ps(_mm256_loadu_ps(acc + co), prod));
    }
    for (; co < n; ++co)
        acc[co] += v * wc[co];
}

void conv2d_fwd_avx2(const ConvGeom& g, const float* in, const float* w,
                     const float* bias, float* out) {
    const std::size_t wstride = static_cast<std::size_t>(g.in_c) * g.out_c;
    for (int oy = 0; oy < g.out_h; ++oy) {
        for (int ox = 0; ox < g.out_w; ++ox) {
            float* op = out + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
            if (bias) {
                int co = 0;
                for (; co + kLanes <= g.out_c; co += kLanes)
                    _mm256_storeu_ps(op + co, _mm256_loadu_ps(bias + co));
                for (; co < g.out_c; ++co)
                    op[co] = bias[co];
            } else {
                for (int co = 0; co < g.out_c; ++co)
                    op[co] = 0.0f;
            }
            for (int ky = 0; ky < g.k; ++ky) {
                const int iy = oy * g.stride + ky - g.pad;
                if (iy < 0 || iy >= g.in_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ix = ox * g.stride + kx - g.pad;
                    if (ix < 0 || ix >= g.in_w)
                        continue;
                    const float* ip = in + (static_cast<std::size_t>(iy) * g.in_w + ix) * g.in_c;
                    const float* wp = w + (static_cast<std::size_t>(ky) * g.k + kx) * wstride;
                    for (int ci = 0; ci < g.in_c; ++ci)
                        madd_span(wp + static_cast<std::size_t>(ci) * g.out_c, ip[ci],
                                  op, g.out_c);
                }
            }
        }
    }
}

void conv2d_bwd_data_avx2(const ConvGeom& g, const float* dout, const float* w_t,
                          float* din) {
    const std::size_t wstride = static_cast<std::size_t>(g.in_c) * g.out_c;
    for (int oy = 0; oy < g.out_h; ++oy) {
        for (int ox = 0; ox < g.out_w; ++ox) {
            const float* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int iy = oy * g.stride + ky - g.pad;
                if (iy < 0 || iy >= g.in_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ix = ox * g.stride + kx - g.pad;
                    if (ix < 0 || ix >= g.in_w)
                        continue;
                    float* ip = din + (static_cast<std::size_t>(iy) * g.in_w + ix) * g.in_c;
                    const float* wp = w_t + (static_cast<std::size_t>(ky) * g.k + kx) * wstride;
                    for (int co = 0; co < g.out_c; ++co)
                        madd_span(wp + static_cast<std::size_t>(co) * g.in_c, dp[co],
                                  ip, g.in_c);
                }
            }
        }
    }
}

void conv2d_bwd_wb_avx2(const ConvGeom& g, const float* in, const float* dout,
                        float* dw, float* db) {
    const std::size_t wstride = static_cast<std::size_t>(g.in_c) * g.out_c;
    for (int oy = 0; oy < g.out_h; ++oy) {
        for (int ox = 0; ox < g.out_w; ++ox) {
            const float* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
            if (db) {
                int co = 0;
                for (; co + kLanes <= g.out_c; co += kLanes)
                    _mm256_storeu_ps(db + co, _mm256_add_ps(_mm256_loadu_ps(db + co),
                                                            _mm256_loadu_ps(dp + co)));
                for (; co < g.out_c; ++co)
                    db[co] += dp[co];
            }
            for (int ky = 0; ky < g.k; ++ky) {
                const int iy = oy * g.stride + ky - g.pad;
                if (iy < 0 || iy >= g.in_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ix = ox * g.stride + kx - g.pad;
                    if (ix < 0 || ix >= g.in_w)
                        continue;
                    const float* ip = in + (static_cast<std::size_t>(iy) * g.in_w + ix) * g.in_c;
                    float* wp = dw + (static_cast<std::size_t>(ky) * g.k + kx) * wstride;
                    for (int ci = 0; ci < g.in_c; ++ci)
                        madd_span(dp, ip[ci], wp + static_cast<std::size_t>(ci) * g.out_c,
                                  g.out_c);
                }
            }
        }
    }
}

void tconv2d_fwd_avx2(const TConvGeom& g, const float* in, const float* w,
                      const float* bias, float* out) {
    for (int oy = 0; oy < g.out_h; ++oy) {
        float* op = out + static_cast<std::size_t>(oy) * g.out_w * g.out_c;
        for (int ox = 0; ox < g.out_w; ++ox)
            for (int co = 0; co < g.out_c; ++co)
                op[static_cast<std::size_t>(ox) * g.out_c + co] = bias ? bias[co] : 0.0f;
    }
    const std::size_t wstride = static_cast<std::size_t>(g.in_c) * g.out_c;
    for (int y = 0; y < g.in_h; ++y) {
        for (int x = 0; x < g.in_w; ++x) {
            const float* ip = in + (static_cast<std::size_t>(y) * g.in_w + x) * g.in_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int oy = y * g.stride + ky - g.pad;
                if (oy < 0 || oy >= g.out_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ox = x * g.stride + kx - g.pad;
                    if (ox < 0 || ox >= g.out_w)
                        continue;
                    float* op = out + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                    const float* wp = w + (static_cast<std::size_t>(ky) * g.k + kx) * wstride;
                    for (int ci = 0; ci < g.in_c; ++ci)
                        madd_span(wp + static_cast<std::size_t>(ci) * g.out_c, ip[ci],
                                  op, g.out_c);
                }
            }
        }
    }
}

void tconv2d_bwd_data_avx2(const TConvGeom& g, const float* dout, const float* w_t,
                           float* din) {
    const std::size_t wstride = static_cast<std::size_t>(g.in_c) * g.out_c;
    for (int y = 0; y < g.in_h; ++y) {
        for (int x = 0; x < g.in_w; ++x) {
            float* ip = din + (static_cast<std::size_t>(y) * g.in_w + x) * g.in_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int oy = y * g.stride + ky - g.pad;
                if (oy < 0 || oy >= g.out_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ox = x * g.stride + kx - g.pad;
                    if (ox < 0 || ox >= g.out_w)
                        continue;
                    const float* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                    const float* wp = w_t + (static_cast<std::size_t>(ky) * g.k + kx) * wstride;
                    for (int co = 0; co < g.out_c; ++co)
                        madd_span(wp + static_cast<std::size_t>(co) * g.in_c, dp[co],
                                  ip, g.in_c);
                }
            }
        }
    }
}

void tconv2d_bwd_wb_avx2(const TConvGeom& g, const float* in, const float* dout,
                         float* dw, float* db) {
    if (db) {
        for (int oy = 0; oy < g.out_h; ++oy)
            for (int ox = 0; ox < g.out_w; ++ox) {
                const float* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                int co = 0;
                for (; co + kLanes <= g.out_c; co += kLanes)
                    _mm256_storeu_ps(db + co, _mm256_add_ps(_mm256_loadu_ps(db + co),
                                                            _mm256_loadu_ps(dp + co)));
                for (; co < g.out_c; ++co)
                    db[co] += dp[co];
            }
    }
    const std::size_t wstride = static_cast<std::size_t>(g.in_c) * g.out_c;
    for (int y = 0; y < g.in_h; ++y) {
        for (int x = 0; x < g.in_w; ++x) {
            const float* ip = in + (static_cast<std::size_t>(y) * g.in_w + x) * g.in_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int oy = y * g.stride + ky - g.pad;
                if (oy < 0 || oy >= g.out_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ox = x * g.stride + kx - g.pad;
                    if (ox < 0 || ox >= g.out_w)
                        continue;
                    const float* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                    float* wp = dw + (static_cast<std::size_t>(ky) * g.k + kx) * wstride;
                    for (int ci = 0; ci < g.in_c; ++ci)
                        madd_span(dp, ip[ci], wp + static_cast<std::size_t>(ci) * g.out_c,
                                  g.out_c);
                }
            }
        }
    }
}

} // namespace

const KernelTable* avx2_table() {
    if (!__builtin_cpu_supports("avx2"))
        return nullptr;
    static const KernelTable table = {
        "avx2",
        &conv2d_fwd_avx2,
        &conv2d_bwd_data_avx2,
        &conv2d_bwd_wb_avx2,
        &tconv2d_fwd_avx2,
        &tconv2d_bwd_data_avx2,
        &tconv2d_bwd_wb_avx2,
    };
    return &table;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif // DOGM_HAVE_AVX2_BUILD

} // namespace dogm::kernels
