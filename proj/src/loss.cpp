#include "dogm/loss.hpp"

#include <cmath>

#include "dogm/mathutil.hpp"

namespace dogm {

template <typename T>
LossResult<T> composite_loss(const Tensor<T>& pred, const Tensor<T>& label,
                             const LossWeights& w) {
    if (!pred.same_shape(label) || pred.channels() != kDogmChannels)
        throw ContractViolation("composite_loss: prediction/label shape mismatch");

    const int H = pred.height(), W = pred.width();
    const std::int64_t n_all = static_cast<std::int64_t>(H) * W;
    const T delta = static_cast<T>(w.huber_delta);

    std::vector<T> occ_terms, vel_terms_e, vel_terms_n, dyn_terms;
    occ_terms.reserve(n_all);

    LossResult<T> out;
    out.grad = Tensor<T>(H, W, kDogmChannels);

    std::int64_t n_mask = 0;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const T* pp = &pred.at(y, x, 0);
            const T* lp = &label.at(y, x, 0);
            const T e = pp[kChanOcc] - lp[kChanOcc];
            if (std::abs(e) <= delta)
                occ_terms.push_back(T(0.5) * e * e);
            else
                occ_terms.push_back(delta * (std::abs(e) - T(0.5) * delta));
            if (lp[kChanOcc] > static_cast<T>(w.occ_mask_threshold)) {
                ++n_mask;
                const T ee = pp[kChanVelE] - lp[kChanVelE];
                const T en = pp[kChanVelN] - lp[kChanVelN];
                const T ed = pp[kChanDyn] - lp[kChanDyn];
                vel_terms_e.push_back(ee * ee);
                vel_terms_n.push_back(en * en);
                dyn_terms.push_back(ed * ed);
            }
        }

    const T l_po = pairwise_sum(occ_terms) / static_cast<T>(n_all);
    const T l_ve = n_mask ? pairwise_sum(vel_terms_e) / static_cast<T>(n_mask) : T(0);
    const T l_vn = n_mask ? pairwise_sum(vel_terms_n) / static_cast<T>(n_mask) : T(0);
    const T l_pd = n_mask ? pairwise_sum(dyn_terms) / static_cast<T>(n_mask) : T(0);

    out.occ_term = l_po;
    out.vel_term = l_ve + l_vn;
    out.dyn_term = l_pd;
    out.masked_cells = n_mask;
    out.value = static_cast<T>(w.alpha_p) * l_po +
                static_cast<T>(w.alpha_v) * (l_ve + l_vn) +
                static_cast<T>(w.alpha_d) * l_pd;

    /* Analytic gradients. */
    const T g_occ_scale = static_cast<T>(w.alpha_p) / static_cast<T>(n_all);
    const T g_vel_scale =
        n_mask ? static_cast<T>(2.0 * w.alpha_v) / static_cast<T>(n_mask) : T(0);
    const T g_dyn_scale =
        n_mask ? static_cast<T>(2.0 * w.alpha_d) / static_cast<T>(n_mask) : T(0);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const T* pp = &pred.at(y, x, 0);
            const T* lp = &label.at(y, x, 0);
            T* gp = &out.grad.at(y, x, 0);
            const T e = pp[kChanOcc] - lp[kChanOcc];
            gp[kChanOcc] = g_occ_scale *
                           (std::abs(e) <= delta ? e : (e > T(0) ? delta : -delta));
            if (lp[kChanOcc] > static_cast<T>(w.occ_mask_threshold)) {
                gp[kChanVelE] = g_vel_scale * (pp[kChanVelE] - lp[kChanVelE]);
                gp[kChanVelN] = g_vel_scale * (pp[kChanVelN] - lp[kChanVelN]);
                gp[kChanDyn] = g_dyn_scale * (pp[kChanDyn] - lp[kChanDyn]);
            }
        }
    return out;
}

template LossResult<float> composite_loss<float>(const Tensor<float>&,
                                                 const Tensor<float>&,
                                                 const LossWeights&);
template LossResult<double> composite_loss<double>(const Tensor<double>&,
                                                   const Tensor<double>&,
                                                   const LossWeights&);

} // namespace dogm
