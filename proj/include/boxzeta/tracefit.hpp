#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boxzeta/cmforms.hpp"
#include "boxzeta/counting.hpp"

namespace boxzeta {

// Trace functions of the seven candidate summands of H^2 of the cuboid surface:
//   a_p(h16), a_p(h32), a_p(h8), p, chi_m4(p) p, chi_m8(p) p, chi_8(p) p.
inline constexpr std::size_t kBasisSize = 7;
using MultiplicityVector = std::array<std::int64_t, kBasisSize>;
using BasisTraces = std::array<std::int64_t, kBasisSize>;

inline constexpr MultiplicityVector kReferenceMultiplicities{3, 1, 3, 10, 2, 1, 3};

std::string_view basis_name(std::size_t i);
BasisTraces basis_traces(std::uint32_t p, const Conventions& conv = {});

// p^2 + 1 + sum_i m_i t_i(p).
std::int64_t trace_rhs(std::uint32_t p, const MultiplicityVector& m, const Conventions& conv = {});

// 2 (m1 + m2 + m3) + (m4 + ... + m7): rank of H^2 of the singular surface.
std::int64_t h2_rank(const MultiplicityVector& m);
inline constexpr std::int64_t kSingularPointCount = 48;

// Supplies #S-bar(F_p); lets callers route counts through a cache.
using SurfaceCounter = std::function<std::int64_t(std::uint32_t)>;
SurfaceCounter fast_surface_counter();

struct PicardSplit {
    std::int64_t trivial = 0;
    std::int64_t chi_m4 = 0;  // Q(sqrt -1)
    std::int64_t chi_m8 = 0;  // Q(sqrt -2)
    std::int64_t chi_8 = 0;   // Q(sqrt 2)
    std::int64_t total() const { return trivial + chi_m4 + chi_m8 + chi_8; }
    friend bool operator==(const PicardSplit&, const PicardSplit&) = default;
};

PicardSplit picard_split(const MultiplicityVector& m, ExceptionalHypothesis h);

struct ExceptionalComparison {
    std::int64_t paper = 0;        // predicted #S(F_p), literal exceptional module 24 Q(-1) + 24 chi_m4(-1)
    std::int64_t permutation = 0;  // predicted #S(F_p), Galois permutation of singular points
};

struct FitReport {
    MultiplicityVector multiplicities{};
    Conventions conventions;
    std::map<std::uint32_t, std::int64_t> surface_counts;
    std::map<std::uint32_t, std::int64_t> residuals;
    std::map<std::uint32_t, ExceptionalComparison> resolved_counts;
    PicardSplit picard_paper;
    PicardSplit picard_permutation;

    bool success() const;
    std::vector<std::uint32_t> nonzero_residual_primes() const;
};

// Residual #S-bar(F_p) - trace_rhs(p, m) for each odd prime 3 <= p <= pmax.
FitReport verify_identity(std::uint32_t pmax, const MultiplicityVector& m, const Conventions& conv = {},
                          const SurfaceCounter& counter = fast_surface_counter(), unsigned jobs = 1);

class FitError : public std::runtime_error {
public:
    enum class Kind { too_few_primes, rank_deficient, inconsistent, non_integral, negative, rank_constraint, held_out };

    FitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct FitOutcome {
    MultiplicityVector multiplicities{};
    std::vector<std::uint32_t> fit_primes;
    std::size_t design_rank = 0;
    std::map<std::uint32_t, std::int64_t> held_out_residuals;
};

// Exact solve of sum_i m_i t_i(p) = #S-bar(F_p) - p^2 - 1 over `primes`, then
// validation on `held_out`. Throws FitError.
FitOutcome fit_multiplicities(const std::vector<std::uint32_t>& primes, const std::vector<std::uint32_t>& held_out = {},
                              const Conventions& conv = {}, const SurfaceCounter& counter = fast_surface_counter(),
                              unsigned jobs = 1);

std::size_t design_rank(const std::vector<std::uint32_t>& primes, const Conventions& conv = {});

nlohmann::ordered_json to_json(const FitReport& report);
nlohmann::ordered_json to_json(const PicardSplit& split);
nlohmann::ordered_json to_json(const FitOutcome& outcome);

}  // namespace boxzeta
