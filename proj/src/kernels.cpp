#include "avn/kernels.hpp"

#include <cstdlib>
#include <string>

namespace avn::kern {

#ifndef AVN_HAVE_AVX2
const Ops* avx2_ops() { return nullptr; }
#endif

namespace {

const Ops* lookup(std::string_view name) {
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2") return avx2_ops();
    return nullptr;
}

const Ops* initial_backend() {
    if (const char* env = std::getenv("AVN_KERNEL")) {
        if (const Ops* forced = lookup(env)) return forced;
    }
    if (const Ops* simd = avx2_ops()) return simd;
    return &scalar_ops();
}

const Ops*& active_slot() {
    static const Ops* slot = initial_backend();
    return slot;
}

}  // namespace

const Ops& active() { return *active_slot(); }

bool select(std::string_view name) {
    const Ops* ops = lookup(name);
    if (!ops) return false;
    active_slot() = ops;
    return true;
}

std::vector<const Ops*> available() {
    std::vector<const Ops*> out{&scalar_ops()};
    if (const Ops* simd = avx2_ops()) out.push_back(simd);
    return out;
}

}  // namespace avn::kern
