#include "dogm/rnn/network.hpp"

#include <algorithm>

namespace dogm {

template <typename T>
Tensor<T> concat_channels(const Tensor<T>& a, const Tensor<T>& b) {
    Tensor<T> out(a.height(), a.width(), a.channels() + b.channels());
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) {
            T* op = &out.at(y, x, 0);
            const T* ap = &a.at(y, x, 0);
            const T* bp = &b.at(y, x, 0);
            std::copy(ap, ap + a.channels(), op);
            std::copy(bp, bp + b.channels(), op + a.channels());
        }
    return out;
}

template <typename T>
Tensor<T> crop_tensor(const Tensor<T>& t, int y0, int x0, int h, int w) {
    Tensor<T> out(h, w, t.channels());
    for (int y = 0; y < h; ++y) {
        const T* src = &t.at(y0 + y, x0, 0);
        std::copy(src, src + static_cast<std::size_t>(w) * t.channels(),
                  &out.at(y, 0, 0));
    }
    return out;
}

namespace {

template <typename T>
Tensor<T> pad_tensor(const Tensor<T>& t, int h, int w) {
    Tensor<T> out(h, w, t.channels(), T(0));
    for (int y = 0; y < t.height(); ++y) {
        const T* src = &t.at(y, 0, 0);
        std::copy(src, src + static_cast<std::size_t>(t.width()) * t.channels(),
                  &out.at(y, 0, 0));
    }
    return out;
}

/* Gradient split of concat_channels, accumulating into both halves. */
template <typename T>
void split_channels_add(const Tensor<T>& d, Tensor<T>& da, Tensor<T>& db) {
    for (int y = 0; y < d.height(); ++y)
        for (int x = 0; x < d.width(); ++x) {
            const T* dp = &d.at(y, x, 0);
            T* ap = &da.at(y, x, 0);
            T* bp = &db.at(y, x, 0);
            for (int c = 0; c < da.channels(); ++c)
                ap[c] += dp[c];
            for (int c = 0; c < db.channels(); ++c)
                bp[c] += dp[da.channels() + c];
        }
}

template <typename T>
void add_into(Tensor<T>& dst, const Tensor<T>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst.data()[i] += src.data()[i];
}

} // namespace

template <typename T>
Network<T>::Network(NetConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    build();
    init_params();
}

template <typename T>
void Network<T>::build() {
    const int L = cfg_.levels();
    const int k = cfg_.kernel_size;
    const int bc = cfg_.bottleneck();

    ext_h_.assign(L, 0);
    ext_w_.assign(L, 0);
    ext_h_[0] = cfg_.input_height;
    ext_w_[0] = cfg_.input_width;
    for (int l = 1; l < L; ++l) {
        ext_h_[l] = kernels::conv_out_extent(ext_h_[l - 1], k, 3, (k - 3) / 2, true);
        ext_w_[l] = kernels::conv_out_extent(ext_w_[l - 1], k, 3, (k - 3) / 2, true);
    }

    enc_.resize(L);
    enc_[0].configure(k, 1, cfg_.level_channels[0], 1, (k - 1) / 2);
    for (int l = 1; l < L; ++l)
        enc_[l].configure(k, cfg_.level_channels[l - 1], cfg_.level_channels[l], 3,
                          (k - 3) / 2);

    skip_.resize(L - 1);
    for (int l = 0; l < L - 1; ++l)
        skip_[l].configure(k, cfg_.level_channels[l], cfg_.skip_state_channels[l]);
    b1_.configure(k, cfg_.level_channels[L - 1], bc);
    b2_.configure(k, bc, bc);

    const auto build_decoder = [&](std::vector<TConv2d<T>>& ups,
                                   std::vector<Conv2d<T>>& refines, Conv2d<T>& head,
                                   int head_channels) {
        ups.resize(L - 1);
        refines.resize(L - 1);
        for (int l = 1; l <= L - 1; ++l) {
            const int src_c = (l + 1 == L) ? bc : cfg_.level_channels[l];
            ups[l - 1].configure(k, src_c, cfg_.level_channels[l - 1], 3, (k - 3) / 2);
            refines[l - 1].configure(k,
                                     cfg_.level_channels[l - 1] +
                                         cfg_.skip_state_channels[l - 1],
                                     cfg_.level_channels[l - 1], 1, (k - 1) / 2);
        }
        head.configure(1, cfg_.level_channels[0], head_channels, 1, 0);
    };
    build_decoder(occ_up_, occ_ref_, occ_head_, 1);
    build_decoder(vel_up_, vel_ref_, vel_head_, 3);
}

template <typename T>
void Network<T>::init_params() {
    std::mt19937_64 rng(cfg_.seed);
    const auto he = [](int k, int ci) { return std::sqrt(6.0 / (k * k * ci)); };
    for (Conv2d<T>& c : enc_)
        c.init_uniform(rng, he(c.k, c.in_c));
    for (ConvLSTM<T>& s : skip_)
        s.init(rng);
    b1_.init(rng);
    b2_.init(rng);
    for (auto* dec : {&occ_up_, &vel_up_})
        for (TConv2d<T>& u : *dec)
            u.init_uniform(rng, he(u.k, u.in_c) / 3.0);
    for (auto* dec : {&occ_ref_, &vel_ref_})
        for (Conv2d<T>& r : *dec)
            r.init_uniform(rng, he(r.k, r.in_c));
    occ_head_.init_uniform(rng, he(1, occ_head_.in_c));
    vel_head_.init_uniform(rng, he(1, vel_head_.in_c));
}

template <typename T>
std::vector<RecurrentState<T>> Network<T>::initial_states() const {
    const int L = cfg_.levels();
    std::vector<RecurrentState<T>> states;
    for (int l = 1; l <= L - 1; ++l)
        states.push_back({l,
                          Tensor<T>(ext_h_[l - 1], ext_w_[l - 1],
                                    cfg_.skip_state_channels[l - 1]),
                          Tensor<T>(ext_h_[l - 1], ext_w_[l - 1],
                                    cfg_.skip_state_channels[l - 1])});
    for (int i = 0; i < 2; ++i)
        states.push_back({L, Tensor<T>(ext_h_[L - 1], ext_w_[L - 1], cfg_.bottleneck()),
                          Tensor<T>(ext_h_[L - 1], ext_w_[L - 1], cfg_.bottleneck())});
    return states;
}

template <typename T>
Tensor<T> Network<T>::decode(const std::vector<TConv2d<T>>& ups,
                             const std::vector<Conv2d<T>>& refines,
                             const Conv2d<T>& head, const Tensor<T>& bottom,
                             const std::vector<Tensor<T>>& skip_h,
                             DecoderTape* tape) const {
    const int L = cfg_.levels();
    if (tape) {
        tape->up.assign(L - 1, {});
        tape->cat.assign(L - 1, {});
        tape->ref.assign(L - 1, {});
    }
    Tensor<T> cur = bottom;
    for (int l = L - 1; l >= 1; --l) {
        Tensor<T> u = ups[l - 1].forward(cur, cur.height() * 3, cur.width() * 3);
        if (u.height() != ext_h_[l - 1] || u.width() != ext_w_[l - 1])
            u = crop_tensor(u, 0, 0, ext_h_[l - 1], ext_w_[l - 1]);
        leaky_relu_inplace(u, cfg_.lrelu_slope);
        Tensor<T> cat = concat_channels(u, skip_h[l - 1]);
        Tensor<T> r = refines[l - 1].forward(cat);
        leaky_relu_inplace(r, cfg_.lrelu_slope);
        if (tape) {
            tape->up[l - 1] = std::move(u);
            tape->cat[l - 1] = std::move(cat);
            tape->ref[l - 1] = r;
        }
        cur = std::move(r);
    }
    return head.forward(cur);
}

template <typename T>
Tensor<T> Network<T>::decode_backward(
    std::vector<TConv2d<T>>& ups, std::vector<Conv2d<T>>& refines, Conv2d<T>& head,
    const Tensor<T>& bottom, const DecoderTape& tape,
    const std::vector<typename ConvLSTM<T>::Tape>& skips, const Tensor<T>& d_head_post,
    bool head_all_sigmoid, std::vector<Tensor<T>>& d_skip_h) {
    const int L = cfg_.levels();

    /* Head activation backward from the stored post-activation values. */
    Tensor<T> d_pre = d_head_post;
    for (int y = 0; y < d_pre.height(); ++y)
        for (int x = 0; x < d_pre.width(); ++x)
            for (int c = 0; c < d_pre.channels(); ++c) {
                if (head_all_sigmoid || c == 2) {
                    const T p = tape.head_post.at(y, x, c);
                    d_pre.at(y, x, c) *= p * (T(1) - p);
                }
            }

    Tensor<T> d_cur(ext_h_[0], ext_w_[0], cfg_.level_channels[0]);
    head.backward(tape.ref[0], d_pre, &d_cur);

    for (int l = 1; l <= L - 1; ++l) {
        leaky_relu_backward_inplace(d_cur, tape.ref[l - 1], cfg_.lrelu_slope);
        Tensor<T> d_cat(d_cur.height(), d_cur.width(),
                        refines[l - 1].in_c);
        refines[l - 1].backward(tape.cat[l - 1], d_cur, &d_cat);

        Tensor<T> d_u(d_cur.height(), d_cur.width(), cfg_.level_channels[l - 1]);
        split_channels_add(d_cat, d_u, d_skip_h[l - 1]);
        leaky_relu_backward_inplace(d_u, tape.up[l - 1], cfg_.lrelu_slope);

        const Tensor<T>& src = (l + 1 == L) ? bottom : tape.ref[l];
        const int full_h = src.height() * 3, full_w = src.width() * 3;
        if (d_u.height() != full_h || d_u.width() != full_w)
            d_u = pad_tensor(d_u, full_h, full_w);
        Tensor<T> d_src(src.height(), src.width(), src.channels());
        ups[l - 1].backward(src, d_u, &d_src);
        d_cur = std::move(d_src);
    }
    return d_cur;  // gradient w.r.t. the bottleneck output
}

template <typename T>
Tensor<T> Network<T>::step(const Tensor<T>& canvas, Vec2i crop_off, int crop_w,
                           int crop_h, std::vector<RecurrentState<T>>& states,
                           StepTape* tape, bool train, std::mt19937_64* rng) {
    const int L = cfg_.levels();
    if (canvas.height() != cfg_.input_height || canvas.width() != cfg_.input_width ||
        canvas.channels() != 1)
        throw ContractViolation("step: canvas does not match the configured input");
    if (static_cast<int>(states.size()) != state_count())
        throw ContractViolation("step: wrong number of recurrent states");
    for (int i = 0; i < state_count(); ++i) {
        const int lvl = i < L - 1 ? i + 1 : L;
        if (states[i].level != lvl ||
            states[i].hidden.height() != ext_h_[lvl - 1] ||
            states[i].hidden.width() != ext_w_[lvl - 1] ||
            !states[i].hidden.same_shape(states[i].cell))
            throw ContractViolation("step: recurrent state shape mismatch");
    }
    if (crop_off.east < 0 || crop_off.north < 0 || crop_w < 1 || crop_h < 1 ||
        crop_off.east + crop_w > cfg_.input_width ||
        crop_off.north + crop_h > cfg_.input_height)
        throw ContractViolation("step: crop window outside the canvas");

    const double rate = train ? cfg_.dropout_rate : 0.0;

    /* Encoder. */
    std::vector<Tensor<T>> enc(L);
    enc[0] = enc_[0].forward(canvas);
    leaky_relu_inplace(enc[0], cfg_.lrelu_slope);
    for (int l = 1; l < L; ++l) {
        enc[l] = enc_[l].forward(enc[l - 1]);
        leaky_relu_inplace(enc[l], cfg_.lrelu_slope);
    }

    /* Recurrent layers. */
    if (tape)
        tape->skip.resize(L - 1);
    std::vector<Tensor<T>> skip_h(L - 1);
    for (int l = 0; l < L - 1; ++l) {
        Tensor<T> h, c;
        skip_[l].forward(enc[l], states[l].hidden, states[l].cell, h, c,
                         tape ? &tape->skip[l] : nullptr, rate, rng);
        skip_h[l] = h;
        states[l].hidden = std::move(h);
        states[l].cell = std::move(c);
    }
    Tensor<T> hb1, cb1, hb2, cb2;
    b1_.forward(enc[L - 1], states[L - 1].hidden, states[L - 1].cell, hb1, cb1,
                tape ? &tape->b1 : nullptr, rate, rng);
    b2_.forward(hb1, states[L].hidden, states[L].cell, hb2, cb2,
                tape ? &tape->b2 : nullptr, rate, rng);
    states[L - 1].hidden = hb1;
    states[L - 1].cell = std::move(cb1);
    states[L].hidden = hb2;
    states[L].cell = std::move(cb2);

    /* Decoders and bounded heads. */
    Tensor<T> occ_post = decode(occ_up_, occ_ref_, occ_head_, hb2, skip_h,
                                tape ? &tape->occ : nullptr);
    for (std::size_t i = 0; i < occ_post.size(); ++i)
        occ_post.data()[i] = sigmoid(occ_post.data()[i]);
    Tensor<T> vel_post = decode(vel_up_, vel_ref_, vel_head_, hb2, skip_h,
                                tape ? &tape->vel : nullptr);
    for (int y = 0; y < vel_post.height(); ++y)
        for (int x = 0; x < vel_post.width(); ++x)
            vel_post.at(y, x, 2) = sigmoid(vel_post.at(y, x, 2));

    Tensor<T> out(crop_h, crop_w, kDogmChannels);
    const int ox = static_cast<int>(crop_off.east);
    const int oy = static_cast<int>(crop_off.north);
    for (int y = 0; y < crop_h; ++y)
        for (int x = 0; x < crop_w; ++x) {
            T* op = &out.at(y, x, 0);
            op[kChanOcc] = occ_post.at(oy + y, ox + x, 0);
            op[kChanVelE] = vel_post.at(oy + y, ox + x, 0);
            op[kChanVelN] = vel_post.at(oy + y, ox + x, 1);
            op[kChanDyn] = vel_post.at(oy + y, ox + x, 2);
        }

    if (tape) {
        tape->canvas = canvas;
        tape->enc = std::move(enc);
        tape->hb1 = std::move(hb1);
        tape->hb2 = std::move(hb2);
        tape->occ.head_post = std::move(occ_post);
        tape->vel.head_post = std::move(vel_post);
        tape->crop_off = crop_off;
        tape->crop_w = crop_w;
        tape->crop_h = crop_h;
        if (tape->gd.empty())
            tape->gd.assign(L, Vec2i{0, 0});
    }
    return out;
}

template <typename T>
std::vector<Tensor<T>> Network<T>::forward_sequence(
    const std::vector<SeqInput>& inputs, const std::vector<ShiftPlan>& plans,
    const LevelPyramid& pyramid, std::vector<RecurrentState<T>>& states,
    SeqTape* tape, int record_last, bool train, std::mt19937_64* rng) {
    if (inputs.size() != plans.size())
        throw ContractViolation("forward_sequence: inputs/plans length mismatch");
    const int n = static_cast<int>(inputs.size());
    std::vector<Tensor<T>> outputs;
    outputs.reserve(n);
    for (int t = 0; t < n; ++t) {
        if (plans[t].any_shift())
            states = shift_all(states, plans[t], pyramid);
        const bool record = tape && record_last > 0 && t >= n - record_last;
        StepTape* st = nullptr;
        if (record) {
            tape->steps.emplace_back();
            st = &tape->steps.back();
            st->gd = plans[t].gd;
            while (static_cast<int>(tape->steps.size()) > record_last)
                tape->steps.pop_front();
            st = &tape->steps.back();
        }
        outputs.push_back(step(inputs[t].canvas, inputs[t].crop_off, inputs[t].crop_w,
                               inputs[t].crop_h, states, st, train, rng));
    }
    return outputs;
}

template <typename T>
void Network<T>::step_backward(const StepTape& tape, const Tensor<T>& d_out,
                               std::vector<Tensor<T>>& dh, std::vector<Tensor<T>>& dc) {
    const int L = cfg_.levels();
    const int H = cfg_.input_height, W = cfg_.input_width;

    /* Lazy-allocate incoming state gradients as zeros. */
    for (int i = 0; i < state_count(); ++i) {
        const int lvl = i < L - 1 ? i + 1 : L;
        const int ch = i < L - 1 ? cfg_.skip_state_channels[i] : cfg_.bottleneck();
        if (dh[i].empty())
            dh[i] = Tensor<T>(ext_h_[lvl - 1], ext_w_[lvl - 1], ch);
        if (dc[i].empty())
            dc[i] = Tensor<T>(ext_h_[lvl - 1], ext_w_[lvl - 1], ch);
    }

    /* Embed the cropped output gradient into full-canvas head gradients. */
    Tensor<T> d_occ_post(H, W, 1);
    Tensor<T> d_vel_post(H, W, 3);
    if (!d_out.empty()) {
        const int ox = static_cast<int>(tape.crop_off.east);
        const int oy = static_cast<int>(tape.crop_off.north);
        for (int y = 0; y < tape.crop_h; ++y)
            for (int x = 0; x < tape.crop_w; ++x) {
                const T* dp = &d_out.at(y, x, 0);
                d_occ_post.at(oy + y, ox + x, 0) = dp[kChanOcc];
                d_vel_post.at(oy + y, ox + x, 0) = dp[kChanVelE];
                d_vel_post.at(oy + y, ox + x, 1) = dp[kChanVelN];
                d_vel_post.at(oy + y, ox + x, 2) = dp[kChanDyn];
            }
    }

    std::vector<Tensor<T>> d_skip_h(L - 1);
    for (int l = 0; l < L - 1; ++l)
        d_skip_h[l] = Tensor<T>(ext_h_[l], ext_w_[l], cfg_.skip_state_channels[l]);

    Tensor<T> d_hb2 = decode_backward(occ_up_, occ_ref_, occ_head_, tape.hb2, tape.occ,
                                      tape.skip, d_occ_post, true, d_skip_h);
    add_into(d_hb2, decode_backward(vel_up_, vel_ref_, vel_head_, tape.hb2, tape.vel,
                                    tape.skip, d_vel_post, false, d_skip_h));

    /* Bottleneck backward, newest layer first. */
    add_into(d_hb2, dh[L]);
    Tensor<T> d_hb1(ext_h_[L - 1], ext_w_[L - 1], cfg_.bottleneck());
    b2_.backward(tape.b2, d_hb2, dc[L], &d_hb1, dh[L], dc[L]);

    add_into(d_hb1, dh[L - 1]);
    std::vector<Tensor<T>> d_enc(L);
    d_enc[L - 1] = Tensor<T>(ext_h_[L - 1], ext_w_[L - 1], cfg_.level_channels[L - 1]);
    b1_.backward(tape.b1, d_hb1, dc[L - 1], &d_enc[L - 1], dh[L - 1], dc[L - 1]);

    /* Skip ConvLSTMs. */
    for (int l = 0; l < L - 1; ++l) {
        add_into(d_skip_h[l], dh[l]);
        d_enc[l] = Tensor<T>(ext_h_[l], ext_w_[l], cfg_.level_channels[l]);
        skip_[l].backward(tape.skip[l], d_skip_h[l], dc[l], &d_enc[l], dh[l], dc[l]);
    }

    /* Encoder chain. */
    for (int l = L - 1; l >= 0; --l) {
        leaky_relu_backward_inplace(d_enc[l], tape.enc[l], cfg_.lrelu_slope);
        enc_[l].backward(l == 0 ? tape.canvas : tape.enc[l - 1], d_enc[l],
                         l == 0 ? nullptr : &d_enc[l - 1]);
    }
}

template <typename T>
void Network<T>::backward(const SeqTape& tape, const std::vector<Tensor<T>>& loss_grads,
                          int tbptt_window) {
    if (tape.steps.empty())
        throw ContractViolation("backward: no recorded forward tape");
    if (loss_grads.size() != tape.steps.size())
        throw ContractViolation("backward: loss_grads/tape length mismatch");
    if (tbptt_window < 1)
        throw ContractViolation("backward: window must be >= 1");

    zero_grad();
    std::vector<Tensor<T>> dh(state_count()), dc(state_count());
    const int n = static_cast<int>(tape.steps.size());
    const int first = std::max(0, n - tbptt_window);
    for (int t = n - 1; t >= first; --t) {
        step_backward(tape.steps[t], loss_grads[t], dh, dc);
        if (t > first) {
            /* Adjoint of the pre-step shift: shift gradients back. */
            const std::vector<Vec2i>& gd = tape.steps[t].gd;
            for (int i = 0; i < state_count(); ++i) {
                const int lvl = i < cfg_.levels() - 1 ? i + 1 : cfg_.levels();
                const Vec2i g = gd[lvl - 1];
                if (g.east != 0 || g.north != 0) {
                    dh[i] = shift_state(dh[i], {-g.east, -g.north}, T(0));
                    dc[i] = shift_state(dc[i], {-g.east, -g.north}, T(0));
                }
            }
        }
    }
}

template <typename T>
std::vector<ParamRef<T>> Network<T>::param_refs() {
    std::vector<ParamRef<T>> refs;
    const auto add_conv = [&](const std::string& name, Conv2d<T>& c) {
        refs.push_back({name + ".w", &c.w, &c.dw});
        if (c.has_bias)
            refs.push_back({name + ".b", &c.b, &c.db});
    };
    const auto add_tconv = [&](const std::string& name, TConv2d<T>& c) {
        refs.push_back({name + ".w", &c.w, &c.dw});
        if (c.has_bias)
            refs.push_back({name + ".b", &c.b, &c.db});
    };
    const auto add_lstm = [&](const std::string& name, ConvLSTM<T>& s) {
        add_conv(name + ".wx", s.wx);
        add_conv(name + ".wh", s.wh);
    };
    for (std::size_t i = 0; i < enc_.size(); ++i)
        add_conv("enc" + std::to_string(i), enc_[i]);
    for (std::size_t i = 0; i < skip_.size(); ++i)
        add_lstm("skip" + std::to_string(i + 1), skip_[i]);
    add_lstm("bottleneck1", b1_);
    add_lstm("bottleneck2", b2_);
    for (std::size_t i = 0; i < occ_up_.size(); ++i)
        add_tconv("occ_up" + std::to_string(i + 1), occ_up_[i]);
    for (std::size_t i = 0; i < occ_ref_.size(); ++i)
        add_conv("occ_ref" + std::to_string(i + 1), occ_ref_[i]);
    add_conv("occ_head", occ_head_);
    for (std::size_t i = 0; i < vel_up_.size(); ++i)
        add_tconv("vel_up" + std::to_string(i + 1), vel_up_[i]);
    for (std::size_t i = 0; i < vel_ref_.size(); ++i)
        add_conv("vel_ref" + std::to_string(i + 1), vel_ref_[i]);
    add_conv("vel_head", vel_head_);
    return refs;
}

template <typename T>
std::size_t Network<T>::param_count() const {
    std::size_t n = 0;
    for (const Conv2d<T>& c : enc_)
        n += c.param_count();
    for (const ConvLSTM<T>& s : skip_)
        n += s.wx.param_count() + s.wh.param_count();
    n += b1_.wx.param_count() + b1_.wh.param_count();
    n += b2_.wx.param_count() + b2_.wh.param_count();
    for (const TConv2d<T>& c : occ_up_)
        n += c.param_count();
    for (const Conv2d<T>& c : occ_ref_)
        n += c.param_count();
    n += occ_head_.param_count();
    for (const TConv2d<T>& c : vel_up_)
        n += c.param_count();
    for (const Conv2d<T>& c : vel_ref_)
        n += c.param_count();
    n += vel_head_.param_count();
    return n;
}

template <typename T>
void Network<T>::zero_grad() {
    for (Conv2d<T>& c : enc_)
        c.zero_grad();
    for (ConvLSTM<T>& s : skip_)
        s.zero_grad();
    b1_.zero_grad();
    b2_.zero_grad();
    for (TConv2d<T>& c : occ_up_)
        c.zero_grad();
    for (Conv2d<T>& c : occ_ref_)
        c.zero_grad();
    occ_head_.zero_grad();
    for (TConv2d<T>& c : vel_up_)
        c.zero_grad();
    for (Conv2d<T>& c : vel_ref_)
        c.zero_grad();
    vel_head_.zero_grad();
}

template <typename T>
template <typename U>
Network<U> Network<T>::cast() const {
    Network<U> out(cfg_);
    Network<T>& self = const_cast<Network<T>&>(*this);
    auto src = self.param_refs();
    auto dst = out.param_refs();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i].value->resize(src[i].value->size());
        for (std::size_t j = 0; j < src[i].value->size(); ++j)
            (*dst[i].value)[j] = static_cast<U>((*src[i].value)[j]);
    }
    return out;
}

template Tensor<float> concat_channels<float>(const Tensor<float>&, const Tensor<float>&);
template Tensor<double> concat_channels<double>(const Tensor<double>&, const Tensor<double>&);
template Tensor<float> crop_tensor<float>(const Tensor<float>&, int, int, int, int);
template Tensor<double> crop_tensor<double>(const Tensor<double>&, int, int, int, int);

template class Network<float>;
template class Network<double>;
template Network<double> Network<float>::cast<double>() const;
template Network<float> Network<double>::cast<float>() const;
template Network<float> Network<float>::cast<float>() const;

} // namespace dogm
