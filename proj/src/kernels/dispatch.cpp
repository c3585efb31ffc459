#include "dogm/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dogm::kernels {

const KernelTable& active_table() {
    static const KernelTable* selected = [] {
        const char* force = std::getenv("DOGM_KERNELS");
        if (force && std::strcmp(force, "scalar") == 0)
            return &scalar_table();
        if (const KernelTable* avx2 = avx2_table())
            return avx2;
        return &scalar_table();
    }();
    return *selected;
}

} // namespace dogm::kernels
