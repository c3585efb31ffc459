#pragma once

#include <cmath>
#include <random>

#include "dogm/kernels/kernels.hpp"
#include "dogm/mathutil.hpp"
#include "dogm/tensor.hpp"

namespace dogm {

/* Kernel table shim: float goes through the runtime-dispatched table,
 * double through the scalar reference (gradient-check mode). */
template <typename T>
struct Kern;

template <>
struct Kern<float> {
    static void conv_fwd(const kernels::ConvGeom& g, const float* in, const float* w,
                         const float* b, float* out) {
        kernels::active_table().conv2d_fwd(g, in, w, b, out);
    }
    static void conv_bwd_data(const kernels::ConvGeom& g, const float* dout,
                              const float* wt, float* din) {
        kernels::active_table().conv2d_bwd_data(g, dout, wt, din);
    }
    static void conv_bwd_wb(const kernels::ConvGeom& g, const float* in,
                            const float* dout, float* dw, float* db) {
        kernels::active_table().conv2d_bwd_wb(g, in, dout, dw, db);
    }
    static void tconv_fwd(const kernels::TConvGeom& g, const float* in, const float* w,
                          const float* b, float* out) {
        kernels::active_table().tconv2d_fwd(g, in, w, b, out);
    }
    static void tconv_bwd_data(const kernels::TConvGeom& g, const float* dout,
                               const float* wt, float* din) {
        kernels::active_table().tconv2d_bwd_data(g, dout, wt, din);
    }
    static void tconv_bwd_wb(const kernels::TConvGeom& g, const float* in,
                             const float* dout, float* dw, float* db) {
        kernels::active_table().tconv2d_bwd_wb(g, in, dout, dw, db);
    }
};

template <>
struct Kern<double> {
    static void conv_fwd(const kernels::ConvGeom& g, const double* in, const double* w,
                         const double* b, double* out) {
        kernels::conv2d_fwd_scalar(g, in, w, b, out);
    }
    static void conv_bwd_data(const kernels::ConvGeom& g, const double* dout,
                              const double* wt, double* din) {
        kernels::conv2d_bwd_data_scalar(g, dout, wt, din);
    }
    static void conv_bwd_wb(const kernels::ConvGeom& g, const double* in,
                            const double* dout, double* dw, double* db) {
        kernels::conv2d_bwd_wb_scalar(g, in, dout, dw, db);
    }
    static void tconv_fwd(const kernels::TConvGeom& g, const double* in, const double* w,
                          const double* b, double* out) {
        kernels::tconv2d_fwd_scalar(g, in, w, b, out);
    }
    static void tconv_bwd_data(const kernels::TConvGeom& g, const double* dout,
                               const double* wt, double* din) {
        kernels::tconv2d_bwd_data_scalar(g, dout, wt, din);
    }
    static void tconv_bwd_wb(const kernels::TConvGeom& g, const double* in,
                             const double* dout, double* dw, double* db) {
        kernels::tconv2d_bwd_wb_scalar(g, in, dout, dw, db);
    }
};

template <typename T>
void leaky_relu_inplace(Tensor<T>& t, double slope) {
    const T s = static_cast<T>(slope);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const T v = t.data()[i];
        t.data()[i] = v > T(0) ? v : s * v;
    }
}

/* dz = dout * lrelu'(z), recovered from the post-activation value (the sign
 * of the output equals the sign of the pre-activation for slope > 0). */
template <typename T>
void leaky_relu_backward_inplace(Tensor<T>& dout, const Tensor<T>& act, double slope) {
    const T s = static_cast<T>(slope);
    for (std::size_t i = 0; i < dout.size(); ++i)
        if (!(act.data()[i] > T(0)))
            dout.data()[i] *= s;
}

template <typename T>
struct Conv2d {
    int k = 3, in_c = 0, out_c = 0, stride = 1, pad = 1;
    bool has_bias = true;
    std::vector<T> w, b, dw, db;

    void configure(int kernel, int ci, int co, int s, int p, bool bias = true) {
        k = kernel;
        in_c = ci;
        out_c = co;
        stride = s;
        pad = p;
        has_bias = bias;
        w.assign(static_cast<std::size_t>(k) * k * ci * co, T(0));
        b.assign(bias ? co : 0, T(0));
        dw.assign(w.size(), T(0));
        db.assign(b.size(), T(0));
    }

    void init_uniform(std::mt19937_64& rng, double bound) {
        std::uniform_real_distribution<double> d(-bound, bound);
        for (T& v : w)
            v = static_cast<T>(d(rng));
    }

    std::size_t param_count() const { return w.size() + b.size(); }

    kernels::ConvGeom geom(int in_h, int in_w) const {
        kernels::ConvGeom g;
        g.in_h = in_h;
        g.in_w = in_w;
        g.in_c = in_c;
        g.out_c = out_c;
        g.k = k;
        g.stride = stride;
        g.pad = pad;
        g.out_h = kernels::conv_out_extent(in_h, k, stride, pad, true);
        g.out_w = kernels::conv_out_extent(in_w, k, stride, pad, true);
        return g;
    }

    Tensor<T> forward(const Tensor<T>& in) const {
        const kernels::ConvGeom g = geom(in.height(), in.width());
        Tensor<T> out(g.out_h, g.out_w, out_c);
        Kern<T>::conv_fwd(g, in.data(), w.data(), has_bias ? b.data() : nullptr,
                          out.data());
        return out;
    }

    /* Accumulates dw/db; accumulates into *din when given. */
    void backward(const Tensor<T>& in, const Tensor<T>& dout, Tensor<T>* din) {
        const kernels::ConvGeom g = geom(in.height(), in.width());
        Kern<T>::conv_bwd_wb(g, in.data(), dout.data(), dw.data(),
                             has_bias ? db.data() : nullptr);
        if (din) {
            std::vector<T> wt(w.size());
            kernels::transpose_weights(w.data(), k, in_c, out_c, wt.data());
            Kern<T>::conv_bwd_data(g, dout.data(), wt.data(), din->data());
        }
    }

    void zero_grad() {
        std::fill(dw.begin(), dw.end(), T(0));
        std::fill(db.begin(), db.end(), T(0));
    }
};

template <typename T>
struct TConv2d {
    int k = 3, in_c = 0, out_c = 0, stride = 3, pad = 0;
    bool has_bias = true;
    std::vector<T> w, b, dw, db;  // w layout [ky][kx][ci][co]

    void configure(int kernel, int ci, int co, int s, int p, bool bias = true) {
        k = kernel;
        in_c = ci;
        out_c = co;
        stride = s;
        pad = p;
        has_bias = bias;
        w.assign(static_cast<std::size_t>(k) * k * ci * co, T(0));
        b.assign(bias ? co : 0, T(0));
        dw.assign(w.size(), T(0));
        db.assign(b.size(), T(0));
    }

    void init_uniform(std::mt19937_64& rng, double bound) {
        std::uniform_real_distribution<double> d(-bound, bound);
        for (T& v : w)
            v = static_cast<T>(d(rng));
    }

    std::size_t param_count() const { return w.size() + b.size(); }

    kernels::TConvGeom geom(int in_h, int in_w, int out_h, int out_w) const {
        return {in_h, in_w, in_c, out_h, out_w, out_c, k, stride, pad};
    }

    Tensor<T> forward(const Tensor<T>& in, int out_h, int out_w) const {
        const kernels::TConvGeom g = geom(in.height(), in.width(), out_h, out_w);
        Tensor<T> out(out_h, out_w, out_c);
        Kern<T>::tconv_fwd(g, in.data(), w.data(), has_bias ? b.data() : nullptr,
                           out.data());
        return out;
    }

    void backward(const Tensor<T>& in, const Tensor<T>& dout, Tensor<T>* din) {
        const kernels::TConvGeom g =
            geom(in.height(), in.width(), dout.height(), dout.width());
        Kern<T>::tconv_bwd_wb(g, in.data(), dout.data(), dw.data(),
                              has_bias ? db.data() : nullptr);
        if (din) {
            std::vector<T> wt(w.size());
            kernels::transpose_weights(w.data(), k, in_c, out_c, wt.data());
            Kern<T>::tconv_bwd_data(g, dout.data(), wt.data(), din->data());
        }
    }

    void zero_grad() {
        std::fill(dw.begin(), dw.end(), T(0));
        std::fill(db.begin(), db.end(), T(0));
    }
};

/* ConvLSTM with convolutional gate transforms, gate order i, f, o, g in
 * channel blocks of state_c. No peepholes. Dropout (inverted) applies to
 * the non-recurrent input-to-gate path only. */
template <typename T>
struct ConvLSTM {
    int in_c = 0, state_c = 0;
    Conv2d<T> wx;  // in_c -> 4*state_c, carries the bias
    Conv2d<T> wh;  // state_c -> 4*state_c, no bias

    void configure(int kernel, int ci, int sc) {
        in_c = ci;
        state_c = sc;
        const int p = (kernel - 1) / 2;
        wx.configure(kernel, ci, 4 * sc, 1, p, true);
        wh.configure(kernel, sc, 4 * sc, 1, p, false);
    }

    void init(std::mt19937_64& rng) {
        const double bx = std::sqrt(6.0 / (wx.k * wx.k * (in_c + state_c)));
        wx.init_uniform(rng, bx);
        wh.init_uniform(rng, bx);
        /* Forget-gate bias starts at one. */
        for (int s = 0; s < state_c; ++s)
            wx.b[state_c + s] = T(1);
    }

    struct Tape {
        Tensor<T> x;       // input as fed to wx (after dropout)
        Tensor<T> mask;    // dropout keep mask scaled by 1/(1-rate); empty if off
        Tensor<T> h_prev;
        Tensor<T> c_prev;
        Tensor<T> gates;   // post-activation [H, W, 4*state_c]
        Tensor<T> c;       // updated cell state
    };

    void forward(const Tensor<T>& x_in, const Tensor<T>& h_prev, const Tensor<T>& c_prev,
                 Tensor<T>& h_out, Tensor<T>& c_out, Tape* tape,
                 double dropout_rate, std::mt19937_64* rng) const {
        Tensor<T> x = x_in;
        Tensor<T> mask;
        if (dropout_rate > 0.0 && rng) {
            mask = Tensor<T>(x.height(), x.width(), x.channels());
            std::uniform_real_distribution<double> u(0.0, 1.0);
            const T scale = static_cast<T>(1.0 / (1.0 - dropout_rate));
            for (std::size_t i = 0; i < mask.size(); ++i)
                mask.data()[i] = u(*rng) < dropout_rate ? T(0) : scale;
            for (std::size_t i = 0; i < x.size(); ++i)
                x.data()[i] *= mask.data()[i];
        }

        Tensor<T> z = wx.forward(x);
        {
            const Tensor<T> zh = wh.forward(h_prev);
            for (std::size_t i = 0; i < z.size(); ++i)
                z.data()[i] += zh.data()[i];
        }

        const int hgt = z.height(), wid = z.width(), sc = state_c;
        h_out = Tensor<T>(hgt, wid, sc);
        c_out = Tensor<T>(hgt, wid, sc);
        for (int y = 0; y < hgt; ++y)
            for (int xx = 0; xx < wid; ++xx) {
                T* zp = &z.at(y, xx, 0);
                const T* cp = &c_prev.at(y, xx, 0);
                T* hp = &h_out.at(y, xx, 0);
                T* cn = &c_out.at(y, xx, 0);
                for (int s = 0; s < sc; ++s) {
                    const T i_g = sigmoid(zp[s]);
                    const T f_g = sigmoid(zp[sc + s]);
                    const T o_g = sigmoid(zp[2 * sc + s]);
                    const T g_g = std::tanh(zp[3 * sc + s]);
                    const T c_new = f_g * cp[s] + i_g * g_g;
                    cn[s] = c_new;
                    hp[s] = o_g * std::tanh(c_new);
                    zp[s] = i_g;  // reuse z as post-activation gate storage
                    zp[sc + s] = f_g;
                    zp[2 * sc + s] = o_g;
                    zp[3 * sc + s] = g_g;
                }
            }

        if (tape) {
            tape->x = std::move(x);
            tape->mask = std::move(mask);
            tape->h_prev = h_prev;
            tape->c_prev = c_prev;
            tape->gates = std::move(z);
            tape->c = c_out;
        }
    }

    /* dh/dc: incoming gradients for this step's outputs. Accumulates dw/db,
     * accumulates *dx when given, and writes the gradients flowing to the
     * previous step's (already shifted) states. dh_prev/dc_prev may alias
     * the incoming tensors; results are built in locals first. */
    void backward(const Tape& tape, const Tensor<T>& dh, const Tensor<T>& dc_in,
                  Tensor<T>* dx, Tensor<T>& dh_prev, Tensor<T>& dc_prev) {
        const int hgt = tape.gates.height(), wid = tape.gates.width(), sc = state_c;
        Tensor<T> dz(hgt, wid, 4 * sc);
        Tensor<T> dc_prev_out(hgt, wid, sc);
        for (int y = 0; y < hgt; ++y)
            for (int xx = 0; xx < wid; ++xx) {
                const T* gp = &tape.gates.at(y, xx, 0);
                const T* cp = &tape.c_prev.at(y, xx, 0);
                const T* cn = &tape.c.at(y, xx, 0);
                const T* dhp = &dh.at(y, xx, 0);
                const T* dcp = dc_in.empty() ? nullptr : &dc_in.at(y, xx, 0);
                T* dzp = &dz.at(y, xx, 0);
                T* dcq = &dc_prev_out.at(y, xx, 0);
                for (int s = 0; s < sc; ++s) {
                    const T i_g = gp[s], f_g = gp[sc + s], o_g = gp[2 * sc + s],
                            g_g = gp[3 * sc + s];
                    const T tc = std::tanh(cn[s]);
                    const T dho = dhp[s];
                    const T d_o = dho * tc;
                    T d_c = dho * o_g * (T(1) - tc * tc);
                    if (dcp)
                        d_c += dcp[s];
                    const T d_i = d_c * g_g;
                    const T d_f = d_c * cp[s];
                    const T d_g = d_c * i_g;
                    dcq[s] = d_c * f_g;
                    dzp[s] = d_i * i_g * (T(1) - i_g);
                    dzp[sc + s] = d_f * f_g * (T(1) - f_g);
                    dzp[2 * sc + s] = d_o * o_g * (T(1) - o_g);
                    dzp[3 * sc + s] = d_g * (T(1) - g_g * g_g);
                }
            }

        Tensor<T> dh_prev_out(hgt, wid, sc);
        wh.backward(tape.h_prev, dz, &dh_prev_out);
        if (dx) {
            Tensor<T> dxd(hgt, wid, in_c);
            wx.backward(tape.x, dz, &dxd);
            if (!tape.mask.empty())
                for (std::size_t i = 0; i < dxd.size(); ++i)
                    dxd.data()[i] *= tape.mask.data()[i];
            for (std::size_t i = 0; i < dx->size(); ++i)
                dx->data()[i] += dxd.data()[i];
        } else {
            wx.backward(tape.x, dz, nullptr);
        }
        dh_prev = std::move(dh_prev_out);
        dc_prev = std::move(dc_prev_out);
    }

    void zero_grad() {
        wx.zero_grad();
        wh.zero_grad();
    }
};

} // namespace dogm
