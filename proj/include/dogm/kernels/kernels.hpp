#pragma once

#include <string>

namespace dogm::kernels {

/* Dense convolution kernels on row-major channel-last tensors.
 *
 * Weight layout is [ky][kx][ci][co] (co fastest) for the forward and
 * weight-gradient directions, and the co/ci-transposed copy [ky][kx][co][ci]
 * for the data-gradient direction. Every variant accumulates each output
 * value in the same (ky, kx, ci) order, so the scalar and SIMD tables
 * produce bit-identical results (builds use -ffp-contract=off).
 *
 * out extent = ceil or floor of (in + 2*pad - k)/stride + 1; callers pass
 * the extents explicitly. Reads outside the padded input are treated as
 * zero, which covers ceil-mode stride-3 geometry. */

struct ConvGeom {
    int in_h, in_w, in_c;
    int out_h, out_w, out_c;
    int k, stride, pad;
};

/* Transposed convolution: out[y*s + ky - pad, x*s + kx - pad] gathers from
 * in[y, x]. Callers pass out extents (in*s for the supported pad = (k-s)/2). */
struct TConvGeom {
    int in_h, in_w, in_c;
    int out_h, out_w, out_c;
    int k, stride, pad;
};

struct KernelTable {
    const char* name;

    void (*conv2d_fwd)(const ConvGeom& g, const float* in, const float* w,
                       const float* bias, float* out);
    /* din += grad; w_t is the [ky][kx][co][ci] transposed weight copy. */
    void (*conv2d_bwd_data)(const ConvGeom& g, const float* dout,
                            const float* w_t, float* din);
    /* dw/db += grad. */
    void (*conv2d_bwd_wb)(const ConvGeom& g, const float* in, const float* dout,
                          float* dw, float* db);

    void (*tconv2d_fwd)(const TConvGeom& g, const float* in, const float* w,
                        const float* bias, float* out);
    void (*tconv2d_bwd_data)(const TConvGeom& g, const float* dout,
                             const float* w_t, float* din);
    void (*tconv2d_bwd_wb)(const TConvGeom& g, const float* in, const float* dout,
                           float* dw, float* db);
};

const KernelTable& scalar_table();
/* nullptr when the CPU lacks AVX2. */
const KernelTable* avx2_table();
/* AVX2 when available unless DOGM_KERNELS=scalar is set in the environment. */
const KernelTable& active_table();

int conv_out_extent(int in, int k, int stride, int pad, bool ceil_mode);

/* Scalar reference, also instantiated for double (gradient-check mode). */
template <typename T>
void conv2d_fwd_scalar(const ConvGeom& g, const T* in, const T* w,
                       const T* bias, T* out);
template <typename T>
void conv2d_bwd_data_scalar(const ConvGeom& g, const T* dout, const T* w_t, T* din);
template <typename T>
void conv2d_bwd_wb_scalar(const ConvGeom& g, const T* in, const T* dout,
                          T* dw, T* db);
template <typename T>
void tconv2d_fwd_scalar(const TConvGeom& g, const T* in, const T* w,
                        const T* bias, T* out);
template <typename T>
void tconv2d_bwd_data_scalar(const TConvGeom& g, const T* dout, const T* w_t, T* din);
template <typename T>
void tconv2d_bwd_wb_scalar(const TConvGeom& g, const T* in, const T* dout,
                           T* dw, T* db);

/* Build the [ky][kx][co][ci] copy used by the data-gradient kernels. */
template <typename T>
void transpose_weights(const T* w, int k, int ci, int co, T* w_t);

} // namespace dogm::kernels
