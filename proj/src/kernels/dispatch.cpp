#include <cstdlib>

#include "boxzeta/kernels.hpp"

namespace boxzeta::kernels {

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    return std::nullopt;
}

bool available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(BOXZETA_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
        if (available(isa)) out.push_back(isa);
    }
    return out;
}

Isa active() {
    static const Isa chosen = [] {
        if (const char* forced = std::getenv("BOXZETA_KERNEL")) {
            if (auto isa = parse_isa(forced); isa && available(*isa)) return *isa;
        }
        return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return chosen;
}

std::uint64_t surface_cone_sum(const PrimeContext& ctx, Isa isa) {
#if defined(BOXZETA_HAVE_AVX2)
    if (isa == Isa::avx2 && available(Isa::avx2)) return avx2::surface_cone_sum(ctx);
#endif
    (void)isa;
    return scalar::surface_cone_sum(ctx);
}

std::uint64_t curve_cone_sum(const PrimeContext& ctx, Isa isa) {
#if defined(BOXZETA_HAVE_AVX2)
    if (isa == Isa::avx2 && available(Isa::avx2)) return avx2::curve_cone_sum(ctx);
#endif
    (void)isa;
    return scalar::curve_cone_sum(ctx);
}

}  // namespace boxzeta::kernels
