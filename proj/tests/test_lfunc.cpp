#include <doctest.h>

#include <cmath>
#include <numeric>
#include <fstream>
#include <sstream>

#include "boxzeta/lfunc.hpp"
#include "oracles.hpp"

using namespace boxzeta;

namespace {
std::vector<BigInt> poly(std::initializer_list<long long> c) {
    std::vector<BigInt> out;
    for (auto v : c) out.emplace_back(v);
    return out;
}
}  // namespace

TEST_CASE("presets") {
    CHECK(preset_sbar().degree() == 30);
    CHECK(preset_s_paper().degree() == 78);
    CHECK(preset_s_perm().degree() == 78);
    CHECK(preset("sbar").has_value());
    CHECK(preset("s-paper")->degree() == 78);
    CHECK_FALSE(preset("nope").has_value());
    for (auto p : odd_primes_up_to(97)) {
        CHECK(aggregate_factor(preset_sbar(), p).degree() == 30);
        CHECK(aggregate_factor(preset_s_perm(), p).degree() == 78);
    }
}

TEST_CASE("single Euler factors") {
    CHECK(euler_factor(Component::h8, 0, 3).coeffs == poly({1, 2, 9}));
    CHECK(euler_factor(Component::chi_m4, 1, 3).coeffs == poly({1, 3}));
    CHECK(euler_factor(Component::zeta, 1, 5).coeffs == poly({1, -5}));
    auto ex = euler_factor(Component::h16, 0, 2);
    CHECK(ex.excluded);
    CHECK(ex.coeffs == poly({1}));
    CHECK(aggregate_factor(preset_sbar(), 2).excluded);
}

TEST_CASE("aggregate factor linear term is minus the Frobenius trace") {
    for (auto p : odd_primes_up_to(97)) {
        const auto f = aggregate_factor(preset_sbar(), p);
        const auto trace = oracle::surface_counts().at(p) - std::int64_t(p) * p - 1;
        REQUIRE(f.coeffs[1] == BigInt(-trace));
    }
}

TEST_CASE("purity of reciprocal roots") {
    for (const auto& spec : {preset_sbar(), preset_s_paper(), preset_s_perm()}) {
        for (auto p : odd_primes_up_to(97)) {
            auto check = check_purity(spec, p);
            INFO(spec.name << " p=" << p);
            REQUIRE(check.factorization_exact);
            REQUIRE(check.root_count == static_cast<std::size_t>(spec.degree()));
            REQUIRE(check.pure(1e-9));
        }
    }
}

TEST_CASE("Dirichlet coefficients") {
    auto a = dirichlet_coeffs(preset_sbar(), 200);
    CHECK(a[1].value == 1);
    CHECK(a[3].value == 14);
    CHECK(a[2].excluded);
    for (auto p : odd_primes_up_to(97)) {
        const auto trace = oracle::surface_counts().at(p) - std::int64_t(p) * p - 1;
        REQUIRE(a[p].value == BigInt(trace));
    }
    // multiplicative on coprime odd indices
    for (std::uint32_t m = 3; m < 200; m += 2)
        for (std::uint32_t n = m + 2; m * n <= 200; n += 2)
            if (std::gcd(m, n) == 1) REQUIRE(a[m * n].value == a[m].value * a[n].value);
    auto empty = dirichlet_coeffs(LSpec{"empty", {}}, 10);
    CHECK(empty[1].value == 1);
    CHECK(empty[9].value == 0);
}

TEST_CASE("partial Euler products") {
    const LSpec empty{"empty", {}};
    CHECK(evaluate_partial(empty, 4, 97).value == 1);
    // pmax = 3: single factor, recomputed by hand
    const auto f3 = aggregate_factor(preset_sbar(), 3);
    long double direct = 0, x = std::pow(3.0L, -4.0L), xp = 1;
    for (const auto& c : f3.coeffs) {
        direct += static_cast<long double>(c) * xp;
        xp *= x;
    }
    CHECK(std::abs(evaluate_partial(preset_sbar(), 4, 3).value - 1 / direct) < 1e-15L);
    const auto v97 = evaluate_partial(preset_sbar(), 4, 97);
    const auto v89 = evaluate_partial(preset_sbar(), 4, 89);
    CHECK(std::abs(v97.value - v89.value) < 30 * std::pow(89.0L, -3.0L) * 2);
    CHECK(v89.tail_bound > 0);
    CHECK_THROWS(evaluate_partial(preset_sbar(), 3, 97));
}

TEST_CASE("export table") {
    auto rows = export_table(31);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].p == 3);
    CHECK(rows[0].count_surface == 24);
    CHECK(rows[1].a_f32 == -2);
    CHECK(rows[0].g_pair == CoeffPair(GaussianInt{0, 2}));
    std::ostringstream csv;
    write_csv(csv, rows);
    const auto text = csv.str();
    CHECK(text.rfind("# excluded: p=2", 0) == 0);
    CHECK(text.find("\n3,0,0,0,2,-2,0,2,24,4,1,-14,") != std::string::npos);
    auto j = to_json(rows);
    CHECK(j["rows"].size() == 10);
    CHECK(j["rows"][0]["euler_factor"][1] == "-14");
    CHECK(j["excluded"]["p"] == 2);
    CHECK_THROWS(export_table(211));
    CHECK_THROWS_WITH(export_table_to_file("/nonexistent-dir/x.csv", "csv", rows),
                      doctest::Contains("/nonexistent-dir/x.csv"));
}

TEST_CASE("export table is the same in parallel") {
    std::ostringstream a, b;
    write_csv(a, export_table(97, {}, direct_sources(), 1));
    write_csv(b, export_table(97, {}, direct_sources(), 3));
    CHECK(a.str() == b.str());
}
