#include "boxzeta/tracefit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "boxzeta/exact.hpp"
#include "boxzeta/parallel.hpp"

namespace boxzeta {
namespace {

std::string join_primes(const std::vector<std::uint32_t>& ps) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ps.size(); ++i) out << (i ? "," : "") << ps[i];
    return out.str();
}

std::map<std::uint32_t, std::int64_t> gather_counts(const std::vector<std::uint32_t>& primes,
                                                     const SurfaceCounter& counter, unsigned jobs) {
    auto counts = parallel_map(primes, jobs, [&](std::uint32_t p) { return counter(p); });
    std::map<std::uint32_t, std::int64_t> out;
    for (std::size_t i = 0; i < primes.size(); ++i) out.emplace(primes[i], counts[i]);
    return out;
}

}  // namespace

std::string_view basis_name(std::size_t i) {
    static constexpr std::array<std::string_view, kBasisSize> names = {
        "h16", "h32", "h8", "trivial", "chi_m4", "chi_m8", "chi_8"};
    return names.at(i);
}

BasisTraces basis_traces(std::uint32_t p, const Conventions& conv) {
    const std::int64_t pp = p;
    return {ap(FormId::h16, p, conv),
            ap(FormId::h32, p, conv),
            ap(FormId::h8, p, conv),
            pp,
            character_value(QuadraticCharacter::chi_m4, pp) * pp,
            character_value(QuadraticCharacter::chi_m8, pp) * pp,
            character_value(QuadraticCharacter::chi_8, pp) * pp};
}

std::int64_t trace_rhs(std::uint32_t p, const MultiplicityVector& m, const Conventions& conv) {
    const auto t = basis_traces(p, conv);
    const std::int64_t pp = p;
    return pp * pp + 1 + std::inner_product(m.begin(), m.end(), t.begin(), std::int64_t{0});
}

std::int64_t h2_rank(const MultiplicityVector& m) {
    return 2 * (m[0] + m[1] + m[2]) + m[3] + m[4] + m[5] + m[6];
}

SurfaceCounter fast_surface_counter() {
    return [](std::uint32_t p) { return count_surface_fast(p).count; };
}

PicardSplit picard_split(const MultiplicityVector& m, ExceptionalHypothesis h) {
    // Exceptional curves: the literal module is 24 trivial + 24 chi_m4; the
    // permutation module of 24 rational points and 12 conjugate pairs is 36 + 12.
    if (h == ExceptionalHypothesis::paper) return {m[3] + 24, m[4] + 24, m[5], m[6]};
    return {m[3] + 36, m[4] + 12, m[5], m[6]};
}

bool FitReport::success() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const auto& kv) { return kv.second == 0; });
}

std::vector<std::uint32_t> FitReport::nonzero_residual_primes() const {
    std::vector<std::uint32_t> out;
    for (const auto& [p, r] : residuals) {
        if (r != 0) out.push_back(p);
    }
    return out;
}

FitReport verify_identity(std::uint32_t pmax, const MultiplicityVector& m, const Conventions& conv,
                          const SurfaceCounter& counter, unsigned jobs) {
    if (pmax < 3) throw std::invalid_argument("verify_identity: pmax must be >= 3");
    const auto primes = odd_primes_up_to(pmax);
    FitReport report;
    report.multiplicities = m;
    report.conventions = conv;
    report.surface_counts = gather_counts(primes, counter, jobs);
    for (auto p : primes) {
        const auto count = report.surface_counts.at(p);
        report.residuals[p] = count - trace_rhs(p, m, conv);
        report.resolved_counts[p] = {model_resolved_count(p, count, ExceptionalHypothesis::paper),
                                     model_resolved_count(p, count, ExceptionalHypothesis::permutation)};
    }
    report.picard_paper = picard_split(m, ExceptionalHypothesis::paper);
    report.picard_permutation = picard_split(m, ExceptionalHypothesis::permutation);
    return report;
}

std::size_t design_rank(const std::vector<std::uint32_t>& primes, const Conventions& conv) {
    exact::IntMatrix a;
    for (auto p : primes) {
        const auto t = basis_traces(p, conv);
        a.emplace_back(t.begin(), t.end());
    }
    return exact::rank(std::move(a));
}

FitOutcome fit_multiplicities(const std::vector<std::uint32_t>& primes, const std::vector<std::uint32_t>& held_out,
                              const Conventions& conv, const SurfaceCounter& counter, unsigned jobs) {
    using Kind = FitError::Kind;
    if (primes.size() < 8) {
        throw FitError(Kind::too_few_primes, "fit_multiplicities: need at least 8 primes, got " +
                                                 std::to_string(primes.size()));
    }
    std::vector<std::uint32_t> all = primes;
    all.insert(all.end(), held_out.begin(), held_out.end());
    const auto counts = gather_counts(all, counter, jobs);

    exact::IntMatrix a;
    std::vector<exact::Integer> b;
    for (auto p : primes) {
        const auto t = basis_traces(p, conv);
        a.emplace_back(t.begin(), t.end());
        const std::int64_t pp = p;
        b.emplace_back(counts.at(p) - pp * pp - 1);
    }
    const auto result = exact::solve(a, b);
    if (result.status == exact::SolveStatus::rank_deficient) {
        throw FitError(Kind::rank_deficient, "fit_multiplicities: design matrix has rank " +
                                                 std::to_string(result.rank) + " < 7 on primes " + join_primes(primes));
    }
    if (result.status == exact::SolveStatus::inconsistent) {
        throw FitError(Kind::inconsistent, "fit_multiplicities: no exact solution on primes " + join_primes(primes) +
                                               " (h16 inert convention " +
                                               std::string(to_string(conv.h16_inert)) + ")");
    }

    FitOutcome out;
    out.fit_primes = primes;
    out.design_rank = result.rank;
    for (std::size_t i = 0; i < kBasisSize; ++i) {
        const auto& x = result.solution[i];
        if (boost::multiprecision::denominator(x) != 1) {
            std::ostringstream msg;
            msg << "fit_multiplicities: non-integral multiplicity " << x << " for " << basis_name(i);
            throw FitError(Kind::non_integral, msg.str());
        }
        out.multiplicities[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(x));
        if (out.multiplicities[i] < 0) {
            throw FitError(Kind::negative, "fit_multiplicities: negative multiplicity for " +
                                               std::string(basis_name(i)));
        }
    }
    if (h2_rank(out.multiplicities) != 30) {
        throw FitError(Kind::rank_constraint,
                       "fit_multiplicities: fitted rank " + std::to_string(h2_rank(out.multiplicities)) + " != 30");
    }
    std::vector<std::uint32_t> failed;
    for (auto p : held_out) {
        const auto r = counts.at(p) - trace_rhs(p, out.multiplicities, conv);
        out.held_out_residuals[p] = r;
        if (r != 0) failed.push_back(p);
    }
    if (!failed.empty()) {
        throw FitError(Kind::held_out, "fit_multiplicities: held-out residuals nonzero at " + join_primes(failed));
    }
    return out;
}

nlohmann::ordered_json to_json(const PicardSplit& split) {
    return {{"trivial", split.trivial},
            {"chi_m4", split.chi_m4},
            {"chi_m8", split.chi_m8},
            {"chi_8", split.chi_8},
            {"total", split.total()}};
}

nlohmann::ordered_json to_json(const FitReport& report) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json m;
    for (std::size_t i = 0; i < kBasisSize; ++i) m[std::string(basis_name(i))] = report.multiplicities[i];
    j["multiplicities"] = m;
    j["conventions"] = {{"h16_inert", std::string(to_string(report.conventions.h16_inert))}};
    j["success"] = report.success();
    nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    nlohmann::ordered_json resolved = nlohmann::ordered_json::object();
    for (const auto& [p, r] : report.residuals) {
        const auto key = std::to_string(p);
        residuals[key] = r;
        counts[key] = report.surface_counts.at(p);
        const auto& cmp = report.resolved_counts.at(p);
        resolved[key] = {{"paper", cmp.paper}, {"permutation", cmp.permutation}};
    }
    j["residuals"] = residuals;
    j["surface_counts"] = counts;
    j["resolved_counts"] = resolved;
    j["picard_splits"] = {{"paper", to_json(report.picard_paper)},
                          {"permutation", to_json(report.picard_permutation)}};
    j["excluded"] = {{"p", 2}, {"reason", "bad prime: every level is a power of 2"}};
    return j;
}

nlohmann::ordered_json to_json(const FitOutcome& outcome) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json m;
    for (std::size_t i = 0; i < kBasisSize; ++i) m[std::string(basis_name(i))] = outcome.multiplicities[i];
    j["multiplicities"] = m;
    j["fit_primes"] = outcome.fit_primes;
    j["design_rank"] = outcome.design_rank;
    j["h2_rank"] = h2_rank(outcome.multiplicities);
    j["h2_rank_resolved"] = h2_rank(outcome.multiplicities) + kSingularPointCount;
    nlohmann::ordered_json held = nlohmann::ordered_json::object();
    for (const auto& [p, r] : outcome.held_out_residuals) held[std::to_string(p)] = r;
    j["held_out_residuals"] = held;
    j["picard_splits"] = {{"paper", to_json(picard_split(outcome.multiplicities, ExceptionalHypothesis::paper))},
                          {"permutation",
                           to_json(picard_split(outcome.multiplicities, ExceptionalHypothesis::permutation))}};
    return j;
}

}  // namespace boxzeta
