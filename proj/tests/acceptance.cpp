// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "boxzeta/cmforms.hpp"
#include "boxzeta/counting.hpp"
#include "boxzeta/lfunc.hpp"
#include "boxzeta/tracefit.hpp"

using namespace boxzeta;

namespace {

// Tolerances and budgets.
constexpr double kIdentitySeconds = 60.0;
constexpr double kOracleSeconds = 300.0;
constexpr double kPurityTolerance = 1e-9;
constexpr std::int64_t kExactTolerance = 0;

struct Check {
    bool ok = true;
    std::ostringstream why;
    void require(bool cond, const std::string& msg) {
        if (!cond && ok) why << msg;
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %d. %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs, c.ok ? "" : ": ",
                c.why.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
    std::vector<std::uint32_t> out;
    for (auto p : odd_primes_up_to(hi))
        if (p >= lo) out.push_back(p);
    return out;
}

std::int64_t int_coeff(const std::vector<QCoefficient>& a, std::uint32_t n) {
    auto v = a.at(n).integer();
    if (!v) throw std::runtime_error("a_" + std::to_string(n) + " is not an integer");
    return *v;
}

}  // namespace

int main() {
    criterion(1, "trace identity, every odd prime 3..97, zero residual, under 60 s", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto report = verify_identity(97, kReferenceMultiplicities);
        const double secs = elapsed(t0);
        c.require(report.residuals.size() == 24, "expected 24 primes");
        for (const auto& [p, r] : report.residuals) {
            c.require(std::llabs(r) <= kExactTolerance, "residual " + std::to_string(r) + " at p=" + std::to_string(p));
        }
        c.require(secs < kIdentitySeconds, "too slow: " + std::to_string(secs) + " s");
    });

    criterion(2, "multiplicity fit on p <= 50 gives (3,1,3,10,2,1,3) and predicts 53..97 exactly", [](Check& c) {
        const auto outcome = fit_multiplicities(odd_primes_up_to(50), primes_between(53, 97));
        c.require(outcome.multiplicities == kReferenceMultiplicities, "fitted vector differs");
        c.require(outcome.held_out_residuals.size() == 10, "expected 10 held-out primes");
        for (const auto& [p, r] : outcome.held_out_residuals) {
            c.require(r == 0, "held-out residual at p=" + std::to_string(p));
        }
    });

    criterion(3, "rank bookkeeping: H^2(Sbar) 30, H^2(S) 78, Picard rank 64 under both hypotheses", [](Check& c) {
        const auto m = fit_multiplicities(odd_primes_up_to(50)).multiplicities;
        c.require(h2_rank(m) == 30, "H^2(Sbar) rank " + std::to_string(h2_rank(m)));
        c.require(h2_rank(m) + kSingularPointCount == 78, "H^2(S) rank");
        const auto paper = picard_split(m, ExceptionalHypothesis::paper);
        const auto perm = picard_split(m, ExceptionalHypothesis::permutation);
        c.require(paper.total() == 64, "paper-hypothesis Picard total");
        c.require(perm.total() == 64, "permutation-hypothesis Picard total");
        c.require(paper == PicardSplit{34, 26, 1, 3}, "paper-hypothesis split");
        c.require(preset_sbar().degree() == 30 && preset_s_paper().degree() == 78 && preset_s_perm().degree() == 78,
                  "L-function preset degrees");
    });

    criterion(4, "q-expansion golden values for f32, f64 and the g pair", [](Check& c) {
        const auto f32 = qexp(FormId::f32, 25);
        const auto f64 = qexp(FormId::f64, 25);
        const std::uint32_t idx[] = {5, 9, 13, 17, 25};
        const std::int64_t want32[] = {-2, -3, 6, 2, -1};
        const std::int64_t want64[] = {2, -3, -6, 2, -1};
        for (int i = 0; i < 5; ++i) {
            c.require(int_coeff(f32, idx[i]) == want32[i], "f32 a_" + std::to_string(idx[i]));
            c.require(int_coeff(f64, idx[i]) == want64[i], "f64 a_" + std::to_string(idx[i]));
        }
        c.require(extract_g_pair(3) == CoeffPair(GaussianInt{0, 2}), "g pair at 3");
        c.require(extract_g_pair(11) == CoeffPair(GaussianInt{0, 6}), "g pair at 11");
        c.require(extract_g_pair(17) == CoeffPair::real(-6), "g pair at 17");
        c.require(extract_g_pair(19) == CoeffPair(GaussianInt{0, 2}), "g pair at 19");
        const auto g = qexp(FormId::g64_pair, 25);
        c.require(int_coeff(g, 9) == -1, "g a_9");
        c.require(int_coeff(g, 25) == 5, "g a_25");
    });

    criterion(5, "oracles: brute surface counts, elliptic counts p <= 1000, eta product through q^1000", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
            c.require(count_surface_brute(p).count == count_surface_fast(p).count,
                      "brute vs fast at p=" + std::to_string(p));
        }
        for (auto p : odd_primes_up_to(1000)) {
            c.require(ap(FormId::f32, p) == count_elliptic(VarietyId::e32, p), "f32 vs E32 at p=" + std::to_string(p));
            c.require(ap(FormId::f64, p) == count_elliptic(VarietyId::e64, p), "f64 vs E64 at p=" + std::to_string(p));
        }
        const auto eta = eta_oracle_h16(1000);
        const auto h16 = qexp(FormId::h16, 1000);
        for (std::uint32_t n = 1; n <= 1000; n += 2) {
            const std::int64_t want = h16[n].integer().value_or(INT64_MIN);
            c.require(eta[n] == want, "eta vs h16 at n=" + std::to_string(n));
        }
        for (std::uint32_t n = 2; n <= 1000; n += 2) c.require(eta[n] == 0, "eta nonzero at even n");
        const double secs = elapsed(t0);
        c.require(secs < kOracleSeconds, "too slow: " + std::to_string(secs) + " s");
    });

    criterion(6, "Hasse-Weil and Weil bounds for p <= 200, Euler-factor purity to 1e-9 for p <= 97", [](Check& c) {
        for (auto p : odd_primes_up_to(200)) {
            const double x = double(count_curve_x(p, 1).count);
            c.require(std::abs(x - p - 1) <= 10.0 * std::sqrt(double(p)), "Hasse-Weil at p=" + std::to_string(p));
            const double s = double(count_surface_fast(p).count);
            c.require(std::abs(s - double(p) * p - 1) <= 30.0 * p, "surface bound at p=" + std::to_string(p));
        }
        for (const auto& spec : {preset_sbar(), preset_s_paper(), preset_s_perm()}) {
            for (auto p : odd_primes_up_to(97)) {
                const auto purity = check_purity(spec, p);
                c.require(purity.pure(kPurityTolerance),
                          spec.name + " not pure at p=" + std::to_string(p) +
                              " (deviation " + std::to_string(purity.max_relative_deviation) + ")");
            }
        }
    });

    criterion(7, "Galois-theoretic statements: substituted by exact fit, rank bookkeeping and dual Picard report",
              [](Check& c) {
                  // Not computable directly. The substitute evidence: the fit is unique
                  // (full design rank), integral and non-negative, and the two
                  // exceptional hypotheses are reported side by side.
                  c.require(design_rank(odd_primes_up_to(50)) == kBasisSize, "design matrix not of full rank");
                  const auto m = fit_multiplicities(odd_primes_up_to(97)).multiplicities;
                  for (auto v : m) c.require(v >= 0, "negative multiplicity");
                  const auto paper = picard_split(m, ExceptionalHypothesis::paper);
                  const auto perm = picard_split(m, ExceptionalHypothesis::permutation);
                  c.require(!(paper == perm), "hypotheses expected to differ");
                  c.require(model_resolved_count(7, ExceptionalHypothesis::paper) !=
                                model_resolved_count(7, ExceptionalHypothesis::permutation),
                            "resolved counts expected to differ at p = 3 mod 4");
              });

    std::printf("%d of 7 criteria failed\n", failures);
    return failures;
}
