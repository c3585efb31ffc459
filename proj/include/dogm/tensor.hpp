#pragma once

#include <cstddef>
#include <vector>

#include "dogm/error.hpp"

namespace dogm {

/* Dense H x W x C tensor, row-major, channel-last.
 * Row index y counts north from the grid origin, column index x counts east. */
template <typename T>
class Tensor {
public:
    Tensor() = default;

    Tensor(int height, int width, int channels, T fill = T(0))
        : h_(height), w_(width), c_(channels),
          v_(static_cast<std::size_t>(height) * width * channels, fill) {
        if (height < 0 || width < 0 || channels < 0)
            throw ContractViolation("Tensor: negative extent");
    }

    int height() const { return h_; }
    int width() const { return w_; }
    int channels() const { return c_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    bool same_shape(const Tensor& o) const {
        return h_ == o.h_ && w_ == o.w_ && c_ == o.c_;
    }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }

    T& at(int y, int x, int ch) {
        return v_[idx(y, x, ch)];
    }
    const T& at(int y, int x, int ch) const {
        return v_[idx(y, x, ch)];
    }

    std::size_t idx(int y, int x, int ch) const {
        return (static_cast<std::size_t>(y) * w_ + x) * c_ + ch;
    }

    void fill(T value) { v_.assign(v_.size(), value); }

    std::vector<T>& raw() { return v_; }
    const std::vector<T>& raw() const { return v_; }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out(h_, w_, c_);
        for (std::size_t i = 0; i < v_.size(); ++i)
            out.data()[i] = static_cast<U>(v_[i]);
        return out;
    }

    bool operator==(const Tensor& o) const {
        return h_ == o.h_ && w_ == o.w_ && c_ == o.c_ && v_ == o.v_;
    }

private:
    int h_ = 0, w_ = 0, c_ = 0;
    std::vector<T> v_;
};

} // namespace dogm
