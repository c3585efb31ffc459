#include "dogm/kernels/kernels.hpp"

#include <cmath>

namespace dogm::kernels {

int conv_out_extent(int in, int k, int stride, int pad, bool ceil_mode) {
    const int span = in + 2 * pad - k;
    if (span < 0)
        return 1;
    if (ceil_mode)
        return (span + stride - 1) / stride + 1;
    return span / stride + 1;
}

template <typename T>
void conv2d_fwd_scalar(const ConvGeom& g, const T* in, const T* w,
                       const T* bias, T* out) {
    for (int oy = 0; oy < g.out_h; ++oy) {
        for (int ox = 0; ox < g.out_w; ++ox) {
            T* op = out + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
            for (int co = 0; co < g.out_c; ++co)
                op[co] = bias ? bias[co] : T(0);
            for (int ky = 0; ky < g.k; ++ky) {
                const int iy = oy * g.stride + ky - g.pad;
                if (iy < 0 || iy >= g.in_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ix = ox * g.stride + kx - g.pad;
                    if (ix < 0 || ix >= g.in_w)
                        continue;
                    const T* ip = in + (static_cast<std::size_t>(iy) * g.in_w + ix) * g.in_c;
                    const T* wp = w + (static_cast<std::size_t>(ky) * g.k + kx) * g.in_c * g.out_c;
                    for (int ci = 0; ci < g.in_c; ++ci) {
                        const T v = ip[ci];
                        const T* wc = wp + static_cast<std::size_t>(ci) * g.out_c;
                        for (int co = 0; co < g.out_c; ++co)
                            op[co] += v * wc[co];
                    }
                }
            }
        }
    }
}

template <typename T>
void conv2d_bwd_data_scalar(const ConvGeom& g, const T* dout, const T* w_t, T* din) {
    for (int oy = 0; oy < g.out_h; ++oy) {
        for (int ox = 0; ox < g.out_w; ++ox) {
            const T* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int iy = oy * g.stride + ky - g.pad;
                if (iy < 0 || iy >= g.in_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ix = ox * g.stride + kx - g.pad;
                    if (ix < 0 || ix >= g.in_w)
                        continue;
                    T* ip = din + (static_cast<std::size_t>(iy) * g.in_w + ix) * g.in_c;
                    const T* wp = w_t + (static_cast<std::size_t>(ky) * g.k + kx) * g.in_c * g.out_c;
                    for (int co = 0; co < g.out_c; ++co) {
                        const T d = dp[co];
                        const T* wc = wp + static_cast<std::size_t>(co) * g.in_c;
                        for (int ci = 0; ci < g.in_c; ++ci)
                            ip[ci] += d * wc[ci];
                    }
                }
            }
        }
    }
}

template <typename T>
void conv2d_bwd_wb_scalar(const ConvGeom& g, const T* in, const T* dout,
                          T* dw, T* db) {
    for (int oy = 0; oy < g.out_h; ++oy) {
        for (int ox = 0; ox < g.out_w; ++ox) {
            const T* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
            if (db)
                for (int co = 0; co < g.out_c; ++co)
                    db[co] += dp[co];
            for (int ky = 0; ky < g.k; ++ky) {
                const int iy = oy * g.stride + ky - g.pad;
                if (iy < 0 || iy >= g.in_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ix = ox * g.stride + kx - g.pad;
                    if (ix < 0 || ix >= g.in_w)
                        continue;
                    const T* ip = in + (static_cast<std::size_t>(iy) * g.in_w + ix) * g.in_c;
                    T* wp = dw + (static_cast<std::size_t>(ky) * g.k + kx) * g.in_c * g.out_c;
                    for (int ci = 0; ci < g.in_c; ++ci) {
                        const T v = ip[ci];
                        T* wc = wp + static_cast<std::size_t>(ci) * g.out_c;
                        for (int co = 0; co < g.out_c; ++co)
                            wc[co] += v * dp[co];
                    }
                }
            }
        }
    }
}

template <typename T>
void tconv2d_fwd_scalar(const TConvGeom& g, const T* in, const T* w,
                        const T* bias, T* out) {
    for (int oy = 0; oy < g.out_h; ++oy) {
        T* op = out + static_cast<std::size_t>(oy) * g.out_w * g.out_c;
        for (int ox = 0; ox < g.out_w; ++ox)
            for (int co = 0; co < g.out_c; ++co)
                op[static_cast<std::size_t>(ox) * g.out_c + co] = bias ? bias[co] : T(0);
    }
    for (int y = 0; y < g.in_h; ++y) {
        for (int x = 0; x < g.in_w; ++x) {
            const T* ip = in + (static_cast<std::size_t>(y) * g.in_w + x) * g.in_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int oy = y * g.stride + ky - g.pad;
                if (oy < 0 || oy >= g.out_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ox = x * g.stride + kx - g.pad;
                    if (ox < 0 || ox >= g.out_w)
                        continue;
                    T* op = out + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                    const T* wp = w + (static_cast<std::size_t>(ky) * g.k + kx) * g.in_c * g.out_c;
                    for (int ci = 0; ci < g.in_c; ++ci) {
                        const T v = ip[ci];
                        const T* wc = wp + static_cast<std::size_t>(ci) * g.out_c;
                        for (int co = 0; co < g.out_c; ++co)
                            op[co] += v * wc[co];
                    }
                }
            }
        }
    }
}

template <typename T>
void tconv2d_bwd_data_scalar(const TConvGeom& g, const T* dout, const T* w_t, T* din) {
    for (int y = 0; y < g.in_h; ++y) {
        for (int x = 0; x < g.in_w; ++x) {
            T* ip = din + (static_cast<std::size_t>(y) * g.in_w + x) * g.in_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int oy = y * g.stride + ky - g.pad;
                if (oy < 0 || oy >= g.out_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ox = x * g.stride + kx - g.pad;
                    if (ox < 0 || ox >= g.out_w)
                        continue;
                    const T* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                    const T* wp = w_t + (static_cast<std::size_t>(ky) * g.k + kx) * g.in_c * g.out_c;
                    for (int co = 0; co < g.out_c; ++co) {
                        const T d = dp[co];
                        const T* wc = wp + static_cast<std::size_t>(co) * g.in_c;
                        for (int ci = 0; ci < g.in_c; ++ci)
                            ip[ci] += d * wc[ci];
                    }
                }
            }
        }
    }
}

template <typename T>
void tconv2d_bwd_wb_scalar(const TConvGeom& g, const T* in, const T* dout,
                           T* dw, T* db) {
    if (db) {
        for (int oy = 0; oy < g.out_h; ++oy)
            for (int ox = 0; ox < g.out_w; ++ox) {
                const T* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                for (int co = 0; co < g.out_c; ++co)
                    db[co] += dp[co];
            }
    }
    for (int y = 0; y < g.in_h; ++y) {
        for (int x = 0; x < g.in_w; ++x) {
            const T* ip = in + (static_cast<std::size_t>(y) * g.in_w + x) * g.in_c;
            for (int ky = 0; ky < g.k; ++ky) {
                const int oy = y * g.stride + ky - g.pad;
                if (oy < 0 || oy >= g.out_h)
                    continue;
                for (int kx = 0; kx < g.k; ++kx) {
                    const int ox = x * g.stride + kx - g.pad;
                    if (ox < 0 || ox >= g.out_w)
                        continue;
                    const T* dp = dout + (static_cast<std::size_t>(oy) * g.out_w + ox) * g.out_c;
                    T* wp = dw + (static_cast<std::size_t>(ky) * g.k + kx) * g.in_c * g.out_c;
                    for (int ci = 0; ci < g.in_c; ++ci) {
                        const T v = ip[ci];
                        T* wc = wp + static_cast<std::size_t>(ci) * g.out_c;
                        for (int co = 0; co < g.out_c; ++co)
                            wc[co] += v * dp[co];
                    }
                }
            }
        }
    }
}

template <typename T>
void transpose_weights(const T* w, int k, int ci, int co, T* w_t) {
    for (int ky = 0; ky < k; ++ky)
        for (int kx = 0; kx < k; ++kx) {
            const T* wp = w + (static_cast<std::size_t>(ky) * k + kx) * ci * co;
            T* tp = w_t + (static_cast<std::size_t>(ky) * k + kx) * ci * co;
            for (int i = 0; i < ci; ++i)
                for (int o = 0; o < co; ++o)
                    tp[static_cast<std::size_t>(o) * ci + i] = wp[static_cast<std::size_t>(i) * co + o];
        }
}

template void conv2d_fwd_scalar<float>(const ConvGeom&, const float*, const float*, const float*, float*);
template void conv2d_fwd_scalar<double>(const ConvGeom&, const double*, const double*, const double*, double*);
template void conv2d_bwd_data_scalar<float>(const ConvGeom&, const float*, const float*, float*);
template void conv2d_bwd_data_scalar<double>(const ConvGeom&, const double*, const double*, double*);
template void conv2d_bwd_wb_scalar<float>(const ConvGeom&, const float*, const float*, float*, float*);
template void conv2d_bwd_wb_scalar<double>(const ConvGeom&, const double*, const double*, double*, double*);
template void tconv2d_fwd_scalar<float>(const TConvGeom&, const float*, const float*, const float*, float*);
template void tconv2d_fwd_scalar<double>(const TConvGeom&, const double*, const double*, const double*, double*);
template void tconv2d_bwd_data_scalar<float>(const TConvGeom&, const float*, const float*, float*);
template void tconv2d_bwd_data_scalar<double>(const TConvGeom&, const double*, const double*, double*);
template void tconv2d_bwd_wb_scalar<float>(const TConvGeom&, const float*, const float*, float*, float*);
template void tconv2d_bwd_wb_scalar<double>(const TConvGeom&, const double*, const double*, double*, double*);
template void transpose_weights<float>(const float*, int, int, int, float*);
template void transpose_weights<double>(const double*, int, int, int, double*);

const KernelTable& scalar_table() {
    static const KernelTable table = {
        "scalar",
        &conv2d_fwd_scalar<float>,
        &conv2d_bwd_data_scalar<float>,
        &conv2d_bwd_wb_scalar<float>,
        &tconv2d_fwd_scalar<float>,
        &tconv2d_bwd_data_scalar<float>,
        &tconv2d_bwd_wb_scalar<float>,
    };
    return table;
}

} // namespace dogm::kernels
