#pragma once

#include <deque>
#include <random>
#include <string>
#include <vector>

#include "dogm/egomotion.hpp"
#include "dogm/rnn/config.hpp"
#include "dogm/rnn/layers.hpp"
#include "dogm/rnn/state.hpp"

namespace dogm {

/* Output channel order of a predicted dynamic grid map. */
enum DogmChannel : int {
    kChanOcc = 0,
    kChanVelE = 1,
    kChanVelN = 2,
    kChanDyn = 3,
};
constexpr int kDogmChannels = 4;

template <typename T>
Tensor<T> concat_channels(const Tensor<T>& a, const Tensor<T>& b);

template <typename T>
Tensor<T> crop_tensor(const Tensor<T>& t, int y0, int x0, int h, int w);

template <typename T>
struct ParamRef {
    std::string name;
    std::vector<T>* value;
    std::vector<T>* grad;
};

/* The recurrent encoder/decoder grid network. Owns parameters only; all
 * per-sequence recurrent state is held by the caller, so one network can
 * serve any number of streams during inference. */
template <typename T>
class Network {
public:
    explicit Network(NetConfig cfg);

    const NetConfig& config() const { return cfg_; }
    int levels() const { return cfg_.levels(); }
    /* Spatial extent of pyramid level l (1-based) for the configured input. */
    int level_height(int l) const { return ext_h_[l - 1]; }
    int level_width(int l) const { return ext_w_[l - 1]; }
    int state_count() const { return cfg_.levels() + 1; }

    std::vector<RecurrentState<T>> initial_states() const;

    struct DecoderTape {
        std::vector<Tensor<T>> up;   // post-lrelu upsampled features per level 1..L-1
        std::vector<Tensor<T>> cat;  // refine-conv inputs
        std::vector<Tensor<T>> ref;  // post-lrelu refined features
        Tensor<T> head_post;         // head output after bounded activations
    };

    struct StepTape {
        Tensor<T> canvas;
        std::vector<Tensor<T>> enc;  // post-lrelu encoder features per level
        std::vector<typename ConvLSTM<T>::Tape> skip;
        typename ConvLSTM<T>::Tape b1, b2;
        Tensor<T> hb1, hb2;
        DecoderTape occ, vel;
        Vec2i crop_off;
        int crop_w = 0, crop_h = 0;
        std::vector<Vec2i> gd;  // state shifts applied before this step
    };

    /* One forward step on a placed canvas. `states` is consumed (post-shift
     * states of the previous step) and replaced with this step's states.
     * Returns the prediction cropped to the uncompensated window. */
    Tensor<T> step(const Tensor<T>& canvas, Vec2i crop_off, int crop_w, int crop_h,
                   std::vector<RecurrentState<T>>& states, StepTape* tape = nullptr,
                   bool train = false, std::mt19937_64* rng = nullptr);

    struct SeqInput {
        Tensor<T> canvas;
        Vec2i crop_off;
        int crop_w = 0, crop_h = 0;
    };

    struct SeqTape {
        std::deque<StepTape> steps;  // tail of the sequence, oldest first
    };

    /* Runs shift_all per plan, then step, for every input. Records tapes of
     * the last `record_last` steps (0 = none). */
    std::vector<Tensor<T>> forward_sequence(const std::vector<SeqInput>& inputs,
                                            const std::vector<ShiftPlan>& plans,
                                            const LevelPyramid& pyramid,
                                            std::vector<RecurrentState<T>>& states,
                                            SeqTape* tape, int record_last,
                                            bool train = false,
                                            std::mt19937_64* rng = nullptr);

    /* Truncated BPTT over the recorded tape tail. loss_grads aligns with
     * tape.steps; empty tensors mean no loss at that step. Parameter
     * gradients are zeroed first, then accumulated. Gradients flow back at
     * most tbptt_window steps from the sequence end; shifts backpropagate
     * as fixed linear maps (border gradients drop). */
    void backward(const SeqTape& tape, const std::vector<Tensor<T>>& loss_grads,
                  int tbptt_window);

    std::vector<ParamRef<T>> param_refs();
    std::size_t param_count() const;
    void zero_grad();

    template <typename U>
    Network<U> cast() const;

private:
    void build();
    void init_params();
    Tensor<T> decode(const std::vector<TConv2d<T>>& ups,
                     const std::vector<Conv2d<T>>& refines, const Conv2d<T>& head,
                     const Tensor<T>& bottom, const std::vector<Tensor<T>>& skip_h,
                     DecoderTape* tape) const;
    /* Returns the gradient w.r.t. the decoder's bottleneck input and
     * accumulates skip gradients. */
    Tensor<T> decode_backward(std::vector<TConv2d<T>>& ups,
                              std::vector<Conv2d<T>>& refines, Conv2d<T>& head,
                              const Tensor<T>& bottom, const DecoderTape& tape,
                              const std::vector<typename ConvLSTM<T>::Tape>& skips,
                              const Tensor<T>& d_head_post, bool head_all_sigmoid,
                              std::vector<Tensor<T>>& d_skip_h);
    void step_backward(const StepTape& tape, const Tensor<T>& d_out,
                       std::vector<Tensor<T>>& dh, std::vector<Tensor<T>>& dc);

    NetConfig cfg_;
    std::vector<int> ext_h_, ext_w_;  // per level, index 0 = level 1

    std::vector<Conv2d<T>> enc_;         // [0]: stride 1; [1..L-1]: stride 3
    std::vector<ConvLSTM<T>> skip_;      // levels 1..L-1
    ConvLSTM<T> b1_, b2_;                // bottleneck, level L
    std::vector<TConv2d<T>> occ_up_, vel_up_;      // index l-1: level l+1 -> l
    std::vector<Conv2d<T>> occ_ref_, vel_ref_;     // refine at level l
    Conv2d<T> occ_head_, vel_head_;

    template <typename U>
    friend class Network;
};

using NetworkF = Network<float>;
using NetworkD = Network<double>;

} // namespace dogm
