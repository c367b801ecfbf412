#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boxzeta/cmforms.hpp"
#include "boxzeta/exact.hpp"

namespace boxzeta {

using BigInt = exact::Integer;

enum class Component { h16, h32, h8, zeta, chi_m4, chi_m8, chi_8 };

std::string_view to_string(Component c);

struct LTerm {
    Component component;
    int multiplicity;
    int shift;  // s -> s - shift; only the abelian components use it
};

struct LSpec {
    std::string name;
    std::vector<LTerm> terms;

    // sum of 2 * (newform multiplicity) + (abelian multiplicity)
    int degree() const;
};

// H^2 of the singular surface.
LSpec preset_sbar();
// H^2 of the resolution with the exceptional module 24 Q(-1) + 24 chi_m4(-1).
LSpec preset_s_paper();
// H^2 of the resolution with the permutation module 36 Q(-1) + 12 chi_m4(-1).
LSpec preset_s_perm();
std::optional<LSpec> preset(std::string_view name);

/// Local factor det(1 - Frob_p T) with integer coefficients, constant term 1.
struct EulerFactor {
    std::uint32_t p = 0;
    std::vector<BigInt> coeffs{1};
    bool excluded = false;  // p = 2: factor set to 1, never computed

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Throws for an unknown combination; p = 2 returns the excluded unit factor.
EulerFactor euler_factor(Component c, int shift, std::uint32_t p, const Conventions& conv = {});
EulerFactor aggregate_factor(const LSpec& spec, std::uint32_t p, const Conventions& conv = {});

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

struct PurityCheck {
    std::uint32_t p = 0;
    double max_relative_deviation = 0;  // max | |alpha| / p - 1 | over reciprocal roots
    std::size_t root_count = 0;
    bool factorization_exact = false;   // aggregate == product of component factors
    bool pure(double tol) const { return factorization_exact && max_relative_deviation <= tol; }
};

// Reciprocal roots come from the degree <= 2 component factors; the aggregate
// is divided exactly by each of them to confirm they account for all roots.
PurityCheck check_purity(const LSpec& spec, std::uint32_t p, const Conventions& conv = {});

struct DirichletCoefficient {
    bool excluded = false;  // even n
    BigInt value = 0;
};

// a_1..a_N of prod_p EulerFactor_p(p^-s)^{-1}; index 0 unused.
std::vector<DirichletCoefficient> dirichlet_coeffs(const LSpec& spec, std::uint32_t limit, const Conventions& conv = {});

struct PartialProduct {
    long double value = 1;
    long double tail_bound = 0;  // sum_{n > pmax} degree * n^{1-s}, bounded by an integral
    std::uint32_t pmax = 0;
};

// prod over odd primes 3 <= p <= pmax of 1 / F_p(p^-s); s must exceed 3.
PartialProduct evaluate_partial(const LSpec& spec, double s, std::uint32_t pmax, const Conventions& conv = {});

struct ExportRow {
    std::uint32_t p = 0;
    std::int64_t a_f32 = 0, a_f64 = 0;
    CoeffPair g_pair;
    std::int64_t a_h8 = 0, a_h16 = 0, a_h32 = 0;
    std::int64_t count_surface = 0, count_x = 0;
    EulerFactor factor;  // H^2 of the singular surface
};

using CountLookup = std::function<std::int64_t(std::uint32_t)>;

struct ExportSources {
    CountLookup surface;
    CountLookup curve_x;
    std::function<CoeffPair(std::uint32_t)> g_pair;
};

ExportSources direct_sources();

// pmax <= 200 (g pair extraction limit).
std::vector<ExportRow> export_table(std::uint32_t pmax, const Conventions& conv = {},
                                    const ExportSources& sources = direct_sources(), unsigned jobs = 1);

void write_csv(std::ostream& out, const std::vector<ExportRow>& rows);
nlohmann::ordered_json to_json(const std::vector<ExportRow>& rows);

// Writes the table to `path` (CSV or JSON by `format`); IO failures throw
// std::runtime_error naming the path.
void export_table_to_file(const std::string& path, std::string_view format, const std::vector<ExportRow>& rows);

}  // namespace boxzeta
