#include "boxzeta/lfunc.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <stdexcept>

#include "boxzeta/counting.hpp"
#include "boxzeta/parallel.hpp"

namespace boxzeta {
namespace {

bool is_newform(Component c) { return c == Component::h16 || c == Component::h32 || c == Component::h8; }

FormId form_of(Component c) {
    switch (c) {
        case Component::h16: return FormId::h16;
        case Component::h32: return FormId::h32;
        case Component::h8: return FormId::h8;
        default: break;
    }
    throw std::logic_error("component is not a newform");
}

int character_of(Component c, std::int64_t p) {
    switch (c) {
        case Component::zeta: return 1;
        case Component::chi_m4: return character_value(QuadraticCharacter::chi_m4, p);
        case Component::chi_m8: return character_value(QuadraticCharacter::chi_m8, p);
        case Component::chi_8: return character_value(QuadraticCharacter::chi_8, p);
        default: break;
    }
    throw std::logic_error("component is not a Dirichlet character");
}

BigInt big_pow(std::int64_t base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Divides a by b in ascending powers of T; b has constant term 1.
std::optional<std::vector<BigInt>> divide_exact(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    if (b.empty() || b[0] != 1 || a.size() < b.size()) return std::nullopt;
    std::vector<BigInt> rem = a;
    std::vector<BigInt> quot(a.size() - b.size() + 1, 0);
    for (std::size_t k = 0; k < quot.size(); ++k) {
        quot[k] = rem[k];
        if (quot[k] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= quot[k] * b[j];
    }
    for (const auto& r : rem) {
        if (r != 0) return std::nullopt;
    }
    return quot;
}

long double to_ld(const BigInt& x) { return x.convert_to<long double>(); }

std::string big_to_string(const BigInt& x) { return x.str(); }

}  // namespace

std::string_view to_string(Component c) {
    switch (c) {
        case Component::h16: return "h16";
        case Component::h32: return "h32";
        case Component::h8: return "h8";
        case Component::zeta: return "zeta";
        case Component::chi_m4: return "chi_m4";
        case Component::chi_m8: return "chi_m8";
        case Component::chi_8: return "chi_8";
    }
    return "?";
}

int LSpec::degree() const {
    int d = 0;
    for (const auto& t : terms) d += (is_newform(t.component) ? 2 : 1) * t.multiplicity;
    return d;
}

LSpec preset_sbar() {
    return {"sbar",
            {{Component::h16, 3, 0},
             {Component::h32, 1, 0},
             {Component::h8, 3, 0},
             {Component::zeta, 10, 1},
             {Component::chi_m4, 2, 1},
             {Component::chi_m8, 1, 1},
             {Component::chi_8, 3, 1}}};
}

LSpec preset_s_paper() {
    auto spec = preset_sbar();
    spec.name = "s-paper";
    spec.terms.push_back({Component::zeta, 24, 1});
    spec.terms.push_back({Component::chi_m4, 24, 1});
    return spec;
}

LSpec preset_s_perm() {
    auto spec = preset_sbar();
    spec.name = "s-perm";
    spec.terms.push_back({Component::zeta, 36, 1});
    spec.terms.push_back({Component::chi_m4, 12, 1});
    return spec;
}

std::optional<LSpec> preset(std::string_view name) {
    if (name == "sbar") return preset_sbar();
    if (name == "s-paper") return preset_s_paper();
    if (name == "s-perm") return preset_s_perm();
    return std::nullopt;
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<BigInt> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

EulerFactor euler_factor(Component c, int shift, std::uint32_t p, const Conventions& conv) {
    if (p == 2) return {2, {1}, true};
    require_odd_prime(p);
    const std::int64_t pp = p;
    EulerFactor f;
    f.p = p;
    if (is_newform(c)) {
        if (shift != 0) throw std::invalid_argument("euler_factor: newform components take no shift");
        const FormId form = form_of(c);
        const int weight = form_info(form).weight;
        f.coeffs = {1, BigInt(-ap(form, p, conv)), nebentypus_value(form, pp) * big_pow(pp, weight - 1)};
        return f;
    }
    if (shift < 0) throw std::invalid_argument("euler_factor: negative shift");
    f.coeffs = {1, -character_of(c, pp) * big_pow(pp, shift)};
    return f;
}

EulerFactor aggregate_factor(const LSpec& spec, std::uint32_t p, const Conventions& conv) {
    if (p == 2) return {2, {1}, true};
    EulerFactor out;
    out.p = p;
    for (const auto& term : spec.terms) {
        const auto local = euler_factor(term.component, term.shift, p, conv);
        for (int k = 0; k < term.multiplicity; ++k) out.coeffs = poly_mul(out.coeffs, local.coeffs);
    }
    return out;
}

PurityCheck check_purity(const LSpec& spec, std::uint32_t p, const Conventions& conv) {
    PurityCheck check;
    check.p = p;
    const auto aggregate = aggregate_factor(spec, p, conv);
    std::vector<BigInt> remaining = aggregate.coeffs;
    bool exact = true;
    const double pd = static_cast<double>(p);

    for (const auto& term : spec.terms) {
        const auto local = euler_factor(term.component, term.shift, p, conv);
        // Reciprocal roots: zeros of z^d - c1 z^{d-1} + ... for 1 + c1 T + c2 T^2.
        std::vector<std::complex<double>> roots;
        if (local.degree() == 1) {
            roots.emplace_back(-local.coeffs[1].convert_to<double>(), 0.0);
        } else if (local.degree() == 2) {
            const double b = local.coeffs[1].convert_to<double>();
            const double c = local.coeffs[2].convert_to<double>();
            const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4 * c, 0.0));
            roots.push_back((-b + disc) / 2.0);
            roots.push_back((-b - disc) / 2.0);
        }
        for (int k = 0; k < term.multiplicity; ++k) {
            for (const auto& r : roots) {
                check.max_relative_deviation = std::max(check.max_relative_deviation, std::abs(std::abs(r) / pd - 1.0));
                ++check.root_count;
            }
            if (exact) {
                auto q = divide_exact(remaining, local.coeffs);
                if (q) {
                    remaining = std::move(*q);
                } else {
                    exact = false;
                }
            }
        }
    }
    check.factorization_exact = exact && remaining.size() == 1 && remaining[0] == 1 &&
                                check.root_count == static_cast<std::size_t>(aggregate.degree());
    return check;
}

std::vector<DirichletCoefficient> dirichlet_coeffs(const LSpec& spec, std::uint32_t limit, const Conventions& conv) {
    if (limit > 100000) throw std::invalid_argument("dirichlet_coeffs: limit <= 1e5");
    std::vector<DirichletCoefficient> out(limit + 1);
    if (limit == 0) return out;

    // Local series 1 / F_p(T) = sum_k b_k T^k for p^k <= limit.
    std::map<std::uint32_t, std::vector<BigInt>> local;
    for (auto p : odd_primes_up_to(limit)) {
        const auto f = aggregate_factor(spec, p, conv);
        std::vector<BigInt> b{1};
        for (std::uint64_t pk = p; pk <= limit; pk *= p) {
            const std::size_t k = b.size();
            BigInt acc = 0;
            for (std::size_t j = 1; j < f.coeffs.size() && j <= k; ++j) acc -= f.coeffs[j] * b[k - j];
            b.push_back(std::move(acc));
        }
        local.emplace(p, std::move(b));
    }

    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint32_t j = i; j <= limit; j += i) {
            if (spf[j] == 0) spf[j] = i;
        }
    }
    for (std::uint32_t n = 1; n <= limit; ++n) {
        if (n % 2 == 0) {
            out[n].excluded = true;
            continue;
        }
        BigInt value = 1;
        std::uint32_t rest = n;
        while (rest > 1) {
            const auto p = spf[rest];
            std::size_t k = 0;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            value *= local.at(p)[k];
        }
        out[n].value = std::move(value);
    }
    return out;
}

PartialProduct evaluate_partial(const LSpec& spec, double s, std::uint32_t pmax, const Conventions& conv) {
    if (!(s > 3.0)) throw std::invalid_argument("evaluate_partial: s must exceed 3");
    PartialProduct out;
    out.pmax = pmax;
    for (auto p : odd_primes_up_to(pmax)) {
        const auto f = aggregate_factor(spec, p, conv);
        const long double x = std::pow(static_cast<long double>(p), -static_cast<long double>(s));
        long double fx = 0;
        for (std::size_t k = f.coeffs.size(); k-- > 0;) fx = fx * x + to_ld(f.coeffs[k]);
        out.value /= fx;
    }
    const long double n0 = std::max<long double>(pmax, 2);
    out.tail_bound = spec.degree() * std::pow(n0, 2.0L - s) / (s - 2.0L);
    return out;
}

ExportSources direct_sources() {
    return {[](std::uint32_t p) { return count_surface_fast(p).count; },
            [](std::uint32_t p) { return count_curve_x(p, 1).count; },
            [](std::uint32_t p) { return extract_g_pair(p); }};
}

std::vector<ExportRow> export_table(std::uint32_t pmax, const Conventions& conv, const ExportSources& sources,
                                    unsigned jobs) {
    if (pmax > 200) throw std::invalid_argument("export_table: pmax <= 200 (g pair extraction limit)");
    const auto primes = odd_primes_up_to(pmax);
    const auto sbar = preset_sbar();
    return parallel_map(primes, jobs, [&](std::uint32_t p) {
        ExportRow row;
        row.p = p;
        row.a_f32 = ap(FormId::f32, p, conv);
        row.a_f64 = ap(FormId::f64, p, conv);
        row.g_pair = sources.g_pair(p);
        row.a_h8 = ap(FormId::h8, p, conv);
        row.a_h16 = ap(FormId::h16, p, conv);
        row.a_h32 = ap(FormId::h32, p, conv);
        row.count_surface = sources.surface(p);
        row.count_x = sources.curve_x(p);
        row.factor = aggregate_factor(sbar, p, conv);
        return row;
    });
}

void write_csv(std::ostream& out, const std::vector<ExportRow>& rows) {
    std::size_t max_degree = 0;
    for (const auto& r : rows) max_degree = std::max<std::size_t>(max_degree, r.factor.coeffs.size() - 1);
    out << "# excluded: p=2 (bad prime; every level is a power of 2) and all even-index coefficients\n";
    out << "p,a_f32,a_f64,g_pair_re,g_pair_im,a_h8,a_h16,a_h32,count_surface,count_X";
    for (std::size_t k = 0; k <= max_degree; ++k) out << ",factor_c" << k;
    out << "\n";
    for (const auto& r : rows) {
        out << r.p << ',' << r.a_f32 << ',' << r.a_f64 << ',' << r.g_pair.first().re << ',' << r.g_pair.first().im
            << ',' << r.a_h8 << ',' << r.a_h16 << ',' << r.a_h32 << ',' << r.count_surface << ',' << r.count_x;
        for (std::size_t k = 0; k <= max_degree; ++k) {
            out << ',' << (k < r.factor.coeffs.size() ? big_to_string(r.factor.coeffs[k]) : std::string("0"));
        }
        out << "\n";
    }
}

nlohmann::ordered_json to_json(const std::vector<ExportRow>& rows) {
    nlohmann::ordered_json j;
    j["excluded"] = {{"p", 2}, {"reason", "bad prime; every level is a power of 2"}, {"even_indices", true}};
    j["factor_encoding"] = "decimal strings, coefficient of T^k at index k";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["p"] = r.p;
        row["a"] = {{"f32", r.a_f32}, {"f64", r.a_f64}, {"h8", r.a_h8}, {"h16", r.a_h16}, {"h32", r.a_h32}};
        row["g_pair"] = {{r.g_pair.first().re, r.g_pair.first().im}, {r.g_pair.second().re, r.g_pair.second().im}};
        row["count_surface"] = r.count_surface;
        row["count_X"] = r.count_x;
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (const auto& c : r.factor.coeffs) coeffs.push_back(big_to_string(c));
        row["euler_factor"] = coeffs;
        arr.push_back(row);
    }
    j["rows"] = arr;
    return j;
}

void export_table_to_file(const std::string& path, std::string_view format, const std::vector<ExportRow>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("export: cannot open " + path + " for writing");
    if (format == "csv") {
        write_csv(out, rows);
    } else if (format == "json") {
        out << to_json(rows).dump(2) << "\n";
    } else {
        throw std::invalid_argument("export: unknown format " + std::string(format));
    }
    out.flush();
    if (!out) throw std::runtime_error("export: write failed for " + path);
}

}  // namespace boxzeta
