#include <doctest.h>

#include <atomic>

#include "boxzeta/tracefit.hpp"
#include "oracles.hpp"

using namespace boxzeta;

namespace {
std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
    std::vector<std::uint32_t> out;
    for (auto p : odd_primes_up_to(hi))
        if (p >= lo) out.push_back(p);
    return out;
}
SurfaceCounter frozen_counter() {
    return [](std::uint32_t p) { return oracle::surface_counts().at(p); };
}
}  // namespace

TEST_CASE("trace_rhs examples") {
    const auto m = kReferenceMultiplicities;
    CHECK(trace_rhs(3, m) == 24);
    CHECK(trace_rhs(5, m) == 48);
    CHECK(trace_rhs(7, m) == 120);
    CHECK(trace_rhs(5, {}) == 26);
    CHECK_THROWS_AS(trace_rhs(2, m), BadPrimeError);
}

TEST_CASE("verify_identity") {
    auto report = verify_identity(97, kReferenceMultiplicities);
    CHECK(report.success());
    CHECK(report.residuals.size() == 24);
    for (const auto& [p, r] : report.residuals) CHECK(r == 0);
    for (const auto& [p, n] : report.surface_counts) CHECK(n == oracle::surface_counts().at(p));

    auto zero = verify_identity(5, {});
    CHECK(zero.residuals.at(5) == 22);
    CHECK_FALSE(zero.success());

    // The alternative h16 value at inert primes shifts every p = 3 (mod 4) residual by 6p.
    auto alt = verify_identity(97, kReferenceMultiplicities, {H16InertConvention::minus_2p});
    for (const auto& [p, r] : alt.residuals) CHECK(r == (p % 4 == 3 ? 6 * std::int64_t(p) : 0));
    CHECK(alt.nonzero_residual_primes().size() == 13);
}

TEST_CASE("verify_identity in parallel gives the same report") {
    auto a = verify_identity(97, kReferenceMultiplicities, {}, fast_surface_counter(), 1);
    auto b = verify_identity(97, kReferenceMultiplicities, {}, fast_surface_counter(), 4);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("fit on primes up to 50 recovers the multiplicities and predicts the rest") {
    auto outcome = fit_multiplicities(odd_primes_up_to(50), primes_between(53, 97));
    CHECK(outcome.multiplicities == kReferenceMultiplicities);
    CHECK(outcome.design_rank == 7);
    CHECK(outcome.held_out_residuals.size() == 10);
    for (const auto& [p, r] : outcome.held_out_residuals) CHECK(r == 0);
    CHECK(h2_rank(outcome.multiplicities) == 30);
    CHECK(h2_rank(outcome.multiplicities) + kSingularPointCount == 78);
}

TEST_CASE("the first ten odd primes do not determine the fit") {
    auto first10 = odd_primes_up_to(31);
    REQUIRE(first10.size() == 10);
    CHECK(design_rank(first10) == 6);
    CHECK(design_rank(odd_primes_up_to(37)) == 6);
    CHECK(design_rank(odd_primes_up_to(41)) == 7);
    try {
        fit_multiplicities(first10);
        FAIL("expected rank deficiency");
    } catch (const FitError& e) {
        CHECK(e.kind() == FitError::Kind::rank_deficient);
    }
    CHECK(fit_multiplicities(odd_primes_up_to(41)).multiplicities == kReferenceMultiplicities);
}

TEST_CASE("fit failures are reported, not hidden") {
    CHECK_THROWS_AS(fit_multiplicities({3, 5, 7}), FitError);
    // A corrupted count makes the overdetermined system inconsistent.
    SurfaceCounter bad = [](std::uint32_t p) { return oracle::surface_counts().at(p) + (p == 43 ? 1 : 0); };
    try {
        fit_multiplicities(odd_primes_up_to(50), {}, {}, bad);
        FAIL("expected inconsistency");
    } catch (const FitError& e) {
        CHECK(e.kind() == FitError::Kind::inconsistent);
    }
    // Held-out failure.
    SurfaceCounter late = [](std::uint32_t p) { return oracle::surface_counts().at(p) + (p == 89 ? 1 : 0); };
    try {
        fit_multiplicities(odd_primes_up_to(50), primes_between(53, 97), {}, late);
        FAIL("expected held-out failure");
    } catch (const FitError& e) {
        CHECK(e.kind() == FitError::Kind::held_out);
    }
}

TEST_CASE("fit uses the supplied counter") {
    std::atomic<int> calls{0};
    SurfaceCounter counting = [&](std::uint32_t p) {
        ++calls;
        return oracle::surface_counts().at(p);
    };
    auto outcome = fit_multiplicities(odd_primes_up_to(50), {}, {}, counting, 3);
    CHECK(outcome.multiplicities == kReferenceMultiplicities);
    CHECK(calls.load() == 14);
    CHECK(fit_multiplicities(odd_primes_up_to(97), {}, {}, frozen_counter()).multiplicities ==
          kReferenceMultiplicities);
}

TEST_CASE("Picard splits") {
    auto paper = picard_split(kReferenceMultiplicities, ExceptionalHypothesis::paper);
    auto perm = picard_split(kReferenceMultiplicities, ExceptionalHypothesis::permutation);
    CHECK(paper == PicardSplit{34, 26, 1, 3});
    CHECK(perm == PicardSplit{46, 14, 1, 3});
    CHECK(paper.total() == 64);
    CHECK(perm.total() == 64);
}

TEST_CASE("report JSON is ordered and complete") {
    auto j = to_json(verify_identity(13, kReferenceMultiplicities));
    CHECK(j["success"] == true);
    CHECK(j["residuals"].size() == 5);
    CHECK(j.dump().find("\"excluded\"") != std::string::npos);
    CHECK(j["picard_splits"]["paper"]["trivial"] == 34);
}
