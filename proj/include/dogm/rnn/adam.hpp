#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dogm/error.hpp"
#include "dogm/rnn/network.hpp"

namespace dogm {

struct AdamConfig {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    /* Learning rate halves every this many iterations. */
    std::int64_t lr_halve_every = 100000;
};

template <typename T>
class Adam {
public:
    Adam() = default;

    Adam(AdamConfig cfg, const std::vector<ParamRef<T>>& refs) : cfg_(cfg) {
        m_.reserve(refs.size());
        v_.reserve(refs.size());
        for (const ParamRef<T>& r : refs) {
            m_.emplace_back(r.value->size(), T(0));
            v_.emplace_back(r.value->size(), T(0));
        }
    }

    const AdamConfig& config() const { return cfg_; }
    std::int64_t iteration() const { return it_; }

    double lr_at(std::int64_t iteration) const {
        return cfg_.lr * std::pow(0.5, static_cast<double>(iteration / cfg_.lr_halve_every));
    }
    double current_lr() const { return lr_at(it_); }

    /* One update from the gradients currently held by the refs. */
    void step(const std::vector<ParamRef<T>>& refs) {
        if (refs.size() != m_.size())
            throw ContractViolation("Adam: parameter registry mismatch");
        const double lr = current_lr();
        const double t = static_cast<double>(it_ + 1);
        const double bc1 = 1.0 - std::pow(cfg_.beta1, t);
        const double bc2 = 1.0 - std::pow(cfg_.beta2, t);
        for (std::size_t i = 0; i < refs.size(); ++i) {
            std::vector<T>& p = *refs[i].value;
            const std::vector<T>& g = *refs[i].grad;
            std::vector<T>& m = m_[i];
            std::vector<T>& v = v_[i];
            for (std::size_t j = 0; j < p.size(); ++j) {
                const double gj = g[j];
                const double mj = cfg_.beta1 * m[j] + (1.0 - cfg_.beta1) * gj;
                const double vj = cfg_.beta2 * v[j] + (1.0 - cfg_.beta2) * gj * gj;
                m[j] = static_cast<T>(mj);
                v[j] = static_cast<T>(vj);
                p[j] -= static_cast<T>(lr * (mj / bc1) / (std::sqrt(vj / bc2) + cfg_.eps));
            }
        }
        ++it_;
    }

    /* Checkpoint access. */
    std::vector<std::vector<T>>& moment1() { return m_; }
    std::vector<std::vector<T>>& moment2() { return v_; }
    const std::vector<std::vector<T>>& moment1() const { return m_; }
    const std::vector<std::vector<T>>& moment2() const { return v_; }
    void set_iteration(std::int64_t it) { it_ = it; }

private:
    AdamConfig cfg_;
    std::int64_t it_ = 0;
    std::vector<std::vector<T>> m_, v_;
};

} // namespace dogm
