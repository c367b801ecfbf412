#include "boxzeta/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxzeta/cmforms.hpp"
#include "boxzeta/counting.hpp"
#include "boxzeta/lfunc.hpp"
#include "boxzeta/store.hpp"
#include "boxzeta/tracefit.hpp"

namespace boxzeta::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Globals {
    std::string format = "table";
    std::optional<std::string> cache_dir;
    unsigned jobs = 1;
    std::unique_ptr<Store> store;

    Store* cache() {
        if (!store) {
            if (auto dir = Store::resolve_dir(cache_dir)) store = std::make_unique<Store>(*dir);
        }
        return store.get();
    }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Conventions conventions_from(const std::string& h16_inert) {
    auto c = parse_h16_inert(h16_inert);
    if (!c) throw UsageError("--h16-inert must be zero or minus2p");
    return {*c};
}

void check_prime_arg(std::int64_t p) {
    if (p == 2) throw BadPrimeError("bad prime excluded: p = 2 divides every level");
    if (p < 3 || !is_prime(p)) throw UsageError("--prime must be an odd prime, got " + std::to_string(p));
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---- count -------------------------------------------------------------

int cmd_count(Globals& g, const std::string& variety, std::int64_t p, int degree, bool brute, std::ostream& out) {
    check_prime_arg(p);
    const auto prime = static_cast<std::uint32_t>(p);
    if (degree != 1 && degree != 2) throw UsageError("--degree must be 1 or 2");

    std::int64_t count = 0;
    CountMethod method = brute ? CountMethod::brute : CountMethod::fast;
    if (variety == "surface") {
        if (degree != 1) throw UsageError("surface counts are over F_p only");
        count = brute ? count_surface_brute(prime).count : cached_surface_counter(g.cache())(prime);
    } else if (variety == "curve-x") {
        count = brute ? count_curve_x_brute(prime, degree).count : cached_curve_x_counter(g.cache(), degree)(prime);
    } else if (variety == "singular") {
        if (degree != 1) throw UsageError("singular-point counts are over F_p only");
        count = count_singular(prime);
    } else {
        throw UsageError("--variety must be surface, curve-x or singular");
    }

    if (g.format == "json") {
        print_json(out, {{"variety", variety}, {"p", prime}, {"degree", degree}, {"count", count},
                         {"method", std::string(to_string(method))}});
    } else if (g.format == "csv") {
        out << "variety,p,degree,count,method\n"
            << variety << ',' << prime << ',' << degree << ',' << count << ',' << to_string(method) << "\n";
    } else {
        out << count << "  (variety=" << variety << " p=" << prime << " degree=" << degree
            << " method=" << to_string(method) << ")\n";
    }
    return ok;
}

// ---- ap / gpair / qexp --------------------------------------------------

int cmd_ap(Globals& g, const std::string& form_name, std::int64_t p, const Conventions& conv, std::ostream& out) {
    check_prime_arg(p);
    auto form = parse_form(form_name);
    if (!form || *form == FormId::g64_pair) throw UsageError("--form must be one of f32, f64, h8, h16, h32");
    const auto value = ap(*form, static_cast<std::uint32_t>(p), conv);
    if (g.format == "json") {
        print_json(out, {{"form", form_name}, {"p", p}, {"a_p", value},
                         {"conventions", {{"h16_inert", std::string(to_string(conv.h16_inert))}}}});
    } else if (g.format == "csv") {
        out << "form,p,a_p\n" << form_name << ',' << p << ',' << value << "\n";
    } else {
        out << value << "\n";
    }
    return ok;
}

int cmd_gpair(Globals& g, std::int64_t p, std::ostream& out) {
    check_prime_arg(p);
    const auto pair = cached_g_pair(g.cache())(static_cast<std::uint32_t>(p));
    if (g.format == "json") {
        print_json(out, {{"p", p},
                         {"pair", {{pair.first().re, pair.first().im}, {pair.second().re, pair.second().im}}}});
    } else if (g.format == "csv") {
        out << "p,g_pair_re,g_pair_im\n" << p << ',' << pair.first().re << ',' << pair.first().im << "\n";
    } else {
        out << to_string(pair) << "\n";
    }
    return ok;
}

std::string describe(const QCoefficient& c) {
    switch (c.status) {
        case QStatus::excluded: return "excluded";
        case QStatus::undetermined: return "undetermined";
        case QStatus::value: break;
    }
    if (auto v = c.integer()) return std::to_string(*v);
    return to_string(c.pair);
}

int cmd_qexp(Globals& g, const std::string& form_name, std::uint32_t limit, const Conventions& conv,
             std::ostream& out) {
    auto form = parse_form(form_name);
    if (!form) throw UsageError("--form must be one of f32, f64, g64, h8, h16, h32");
    if (limit < 1) throw UsageError("--limit must be >= 1");
    const auto coeffs = qexp(*form, limit, conv);
    if (g.format == "json") {
        Json arr = Json::array();
        for (std::uint32_t n = 1; n <= limit; ++n) {
            const auto& c = coeffs[n];
            Json e{{"n", n}};
            if (c.status == QStatus::excluded) {
                e["status"] = "excluded";
            } else if (c.status == QStatus::undetermined) {
                e["status"] = "undetermined";
            } else if (auto v = c.integer()) {
                e["value"] = *v;
            } else {
                e["pair"] = {{c.pair.first().re, c.pair.first().im}, {c.pair.second().re, c.pair.second().im}};
            }
            arr.push_back(e);
        }
        print_json(out, {{"form", form_name}, {"limit", limit}, {"coefficients", arr}});
    } else if (g.format == "csv") {
        out << "n,a_n\n";
        for (std::uint32_t n = 1; n <= limit; ++n) out << n << ",\"" << describe(coeffs[n]) << "\"\n";
    } else {
        for (std::uint32_t n = 1; n <= limit; ++n) out << "a_" << n << " = " << describe(coeffs[n]) << "\n";
    }
    return ok;
}

// ---- verify / fit ------------------------------------------------------

int cmd_verify(Globals& g, std::uint32_t pmax, const Conventions& conv, std::ostream& out, std::ostream& err) {
    if (pmax < 3) throw UsageError("--pmax must be >= 3");
    const auto report = verify_identity(pmax, kReferenceMultiplicities, conv, cached_surface_counter(g.cache()), g.jobs);
    if (g.format == "json") {
        print_json(out, to_json(report));
    } else if (g.format == "csv") {
        out << "p,count_surface,trace_rhs,residual\n";
        for (const auto& [p, r] : report.residuals) {
            out << p << ',' << report.surface_counts.at(p) << ',' << report.surface_counts.at(p) - r << ',' << r << "\n";
        }
    } else {
        out << "p      #Sbar(F_p)   p^2+1+tr     residual\n";
        for (const auto& [p, r] : report.residuals) {
            const auto c = report.surface_counts.at(p);
            out << std::left << std::setw(7) << p << std::setw(13) << c << std::setw(13) << c - r << r << "\n";
        }
        out << (report.success() ? "all residuals zero" : "NONZERO RESIDUALS") << " (h16 inert convention "
            << to_string(conv.h16_inert) << ")\n";
    }
    if (!report.success()) {
        err << "verification failed at " << report.nonzero_residual_primes().size() << " primes\n";
        return verification_failed;
    }
    return ok;
}

std::vector<std::uint32_t> primes_in(std::uint32_t lo_exclusive, std::uint32_t hi) {
    std::vector<std::uint32_t> out;
    for (auto p : odd_primes_up_to(hi)) {
        if (p > lo_exclusive) out.push_back(p);
    }
    return out;
}

int cmd_fit(Globals& g, std::uint32_t pmax, std::uint32_t fit_max, const Conventions& conv, std::ostream& out,
            std::ostream& err) {
    if (g.format == "csv") throw UsageError("fit supports --format table or json");
    fit_max = std::min(fit_max, pmax);
    const auto fit_primes = odd_primes_up_to(fit_max);
    const auto held_out = primes_in(fit_max, pmax);
    const auto counter = cached_surface_counter(g.cache());
    try {
        const auto outcome = fit_multiplicities(fit_primes, held_out, conv, counter, g.jobs);
        if (g.format == "json") {
            auto j = to_json(outcome);
            j["status"] = "ok";
            j["conventions"] = {{"h16_inert", std::string(to_string(conv.h16_inert))}};
            print_json(out, j);
        } else {
            out << "fitted on " << fit_primes.size() << " primes <= " << fit_max << " (design rank "
                << outcome.design_rank << "), held out " << held_out.size() << " primes\n";
            for (std::size_t i = 0; i < kBasisSize; ++i) {
                out << "  " << std::left << std::setw(8) << basis_name(i) << outcome.multiplicities[i] << "\n";
            }
            out << "rank H^2(Sbar) = " << h2_rank(outcome.multiplicities)
                << ", rank H^2(S) = " << h2_rank(outcome.multiplicities) + kSingularPointCount << "\n";
            out << "held-out residuals all zero\n";
        }
        return ok;
    } catch (const FitError& e) {
        err << e.what() << "\n";
        const auto pattern = verify_identity(pmax, kReferenceMultiplicities, conv, counter, g.jobs);
        if (g.format == "json") {
            Json j{{"status", "failed"}, {"error", e.what()}};
            j["residuals_with_reference_vector"] = to_json(pattern)["residuals"];
            print_json(out, j);
        } else {
            out << "fit failed: " << e.what() << "\nresiduals with the reference vector:\n";
            for (const auto& [p, r] : pattern.residuals) out << "  " << p << ": " << r << "\n";
        }
        return verification_failed;
    }
}

// ---- euler ---------------------------------------------------------------

int cmd_euler(Globals& g, const std::string& preset_name, std::uint32_t pmax, const Conventions& conv,
              std::ostream& out) {
    auto spec = preset(preset_name);
    if (!spec) throw UsageError("--preset must be sbar, s-paper or s-perm");
    const auto primes = odd_primes_up_to(pmax);
    Json rows = Json::array();
    bool all_pure = true;
    if (g.format == "csv") out << "p,degree,pure,coefficients\n";
    if (g.format == "table") out << "preset " << spec->name << ": degree " << spec->degree() << "\n";
    for (auto p : primes) {
        const auto f = aggregate_factor(*spec, p, conv);
        const auto purity = check_purity(*spec, p, conv);
        const bool pure = purity.pure(1e-9);
        all_pure = all_pure && pure;
        std::ostringstream coeffs;
        for (std::size_t k = 0; k < f.coeffs.size(); ++k) coeffs << (k ? " " : "") << f.coeffs[k];
        if (g.format == "json") {
            Json c = Json::array();
            for (const auto& x : f.coeffs) c.push_back(x.str());
            rows.push_back({{"p", p}, {"degree", f.degree()}, {"pure", pure}, {"coefficients", c}});
        } else if (g.format == "csv") {
            out << p << ',' << f.degree() << ',' << (pure ? "true" : "false") << ",\"" << coeffs.str() << "\"\n";
        } else {
            out << "p=" << p << " degree=" << f.degree() << (pure ? " pure" : " NOT PURE") << "\n  " << coeffs.str()
                << "\n";
        }
    }
    if (g.format == "json") {
        print_json(out, {{"preset", spec->name},
                         {"degree", spec->degree()},
                         {"excluded", {{"p", 2}, {"factor", "1"}}},
                         {"all_pure", all_pure},
                         {"factors", rows}});
    }
    return ok;
}

// ---- report ------------------------------------------------------------

int cmd_report(Globals& g, std::uint32_t pmax, const Conventions& conv, std::ostream& out, std::ostream& err) {
    if (g.format == "csv") throw UsageError("report supports --format table or json");
    if (pmax < 3) throw UsageError("--pmax must be >= 3");
    const auto counter = cached_surface_counter(g.cache());
    const auto verification = verify_identity(pmax, kReferenceMultiplicities, conv, counter, g.jobs);

    Conventions alt = conv;
    alt.h16_inert = conv.h16_inert == H16InertConvention::zero ? H16InertConvention::minus_2p : H16InertConvention::zero;
    const auto alt_verification = verify_identity(pmax, kReferenceMultiplicities, alt, counter, g.jobs);

    const std::uint32_t fit_max = std::min<std::uint32_t>(50, pmax);
    std::optional<FitOutcome> fit;
    std::string fit_error;
    try {
        fit = fit_multiplicities(odd_primes_up_to(fit_max), primes_in(fit_max, pmax), conv, counter, g.jobs);
    } catch (const FitError& e) {
        fit_error = e.what();
    }
    const MultiplicityVector m = fit ? fit->multiplicities : kReferenceMultiplicities;
    const auto paper = picard_split(m, ExceptionalHypothesis::paper);
    const auto perm = picard_split(m, ExceptionalHypothesis::permutation);
    const bool discrepancy = !(paper == perm);
    const bool matches_reference = fit && fit->multiplicities == kReferenceMultiplicities;
    const bool success = verification.success() && fit.has_value() && matches_reference;

    if (g.format == "json") {
        Json j;
        j["pmax"] = pmax;
        j["conventions"] = {{"h16_inert", std::string(to_string(conv.h16_inert))}};
        j["identity"] = {{"success", verification.success()},
                         {"nonzero_residual_primes", verification.nonzero_residual_primes()}};
        j["alternative_h16_convention"] = {{"h16_inert", std::string(to_string(alt.h16_inert))},
                                           {"nonzero_residual_primes", alt_verification.nonzero_residual_primes()}};
        if (fit) {
            j["fit"] = to_json(*fit);
        } else {
            j["fit"] = {{"status", "failed"}, {"error", fit_error}};
        }
        j["matches_reference_multiplicities"] = matches_reference;
        j["picard_splits"] = {{"paper", to_json(paper)}, {"permutation", to_json(perm)}};
        j["exceptional_hypotheses_disagree"] = discrepancy;
        j["l_function_degrees"] = {{"sbar", preset_sbar().degree()},
                                   {"s-paper", preset_s_paper().degree()},
                                   {"s-perm", preset_s_perm().degree()}};
        print_json(out, j);
    } else {
        out << "Trace identity, 3 <= p <= " << pmax << " (h16 inert " << to_string(conv.h16_inert) << "): "
            << (verification.success() ? "all residuals zero" : "NONZERO RESIDUALS") << "\n";
        out << "Alternative h16 convention (" << to_string(alt.h16_inert) << "): "
            << alt_verification.nonzero_residual_primes().size() << " primes with nonzero residual\n";
        if (fit) {
            out << "Multiplicities fitted on p <= " << fit_max << ":";
            for (std::size_t i = 0; i < kBasisSize; ++i) out << " " << basis_name(i) << "=" << fit->multiplicities[i];
            out << (matches_reference ? "  (matches reference vector)" : "  (DIFFERS from reference vector)") << "\n";
            out << "rank H^2(Sbar) = " << h2_rank(m) << ", rank H^2(S) = " << h2_rank(m) + kSingularPointCount << "\n";
        } else {
            out << "Multiplicity fit failed: " << fit_error << "\n";
        }
        auto line = [&](const char* name, const PicardSplit& s) {
            out << "  " << std::left << std::setw(12) << name << "Q: " << s.trivial << "  Q(sqrt-1): " << s.chi_m4
                << "  Q(sqrt-2): " << s.chi_m8 << "  Q(sqrt2): " << s.chi_8 << "  total: " << s.total() << "\n";
        };
        out << "Picard group of the resolution:\n";
        line("paper", paper);
        line("permutation", perm);
        if (discrepancy) {
            out << "*** DISCREPANCY: the two exceptional-curve hypotheses give different Galois splits;\n"
                << "*** they differ in #S(F_p) at every p = 3 mod 4 and cannot be separated without equations for S.\n";
        }
        out << "L-function degrees: H^2(Sbar) " << preset_sbar().degree() << ", H^2(S) " << preset_s_paper().degree()
            << " (paper) / " << preset_s_perm().degree() << " (permutation)\n";
    }
    if (!success) {
        err << "report: reproduction failed\n";
        return verification_failed;
    }
    return ok;
}

// ---- export ------------------------------------------------------------

int cmd_export(Globals& g, std::uint32_t pmax, const std::string& output, const Conventions& conv,
               std::ostream& out) {
    if (g.format == "table") g.format = "csv";
    const auto rows = export_table(pmax, conv, cached_sources(g.cache()), g.jobs);
    if (output.empty() || output == "-") {
        if (g.format == "json") {
            print_json(out, to_json(rows));
        } else {
            write_csv(out, rows);
        }
    } else {
        export_table_to_file(output, g.format, rows);
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Point counts, CM coefficients and L-function factors for the cuboid surface", "boxzeta"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--cache-dir", g.cache_dir, "Cache directory (overrides BOXZETA_CACHE)");
    app.add_option("--jobs", g.jobs, "Parallel primes")->check(CLI::Range(1U, 1024U));

    std::int64_t prime = 0;
    std::uint32_t pmax = 97;
    std::uint32_t limit = 25;
    std::uint32_t fit_max = 50;
    int degree = 1;
    bool brute = false;
    std::string variety;
    std::string form;
    std::string h16_inert = "zero";
    std::string preset_name = "sbar";
    std::string output;

    auto* count = app.add_subcommand("count", "Count points over F_p or F_{p^2}");
    count->add_option("--variety", variety)->required();
    count->add_option("--prime", prime)->required();
    count->add_option("--degree", degree);
    count->add_flag("--brute", brute, "Use the exhaustive enumeration oracle");

    auto* ap_cmd = app.add_subcommand("ap", "Fourier coefficient a_p of a newform");
    ap_cmd->add_option("--form", form)->required();
    ap_cmd->add_option("--prime", prime)->required();
    ap_cmd->add_option("--h16-inert", h16_inert);

    auto* gpair = app.add_subcommand("gpair", "Coefficient pair of the level-64 forms with character");
    gpair->add_option("--prime", prime)->required();

    auto* qexp_cmd = app.add_subcommand("qexp", "q-expansion a_1..a_N");
    qexp_cmd->add_option("--form", form)->required();
    qexp_cmd->add_option("--limit", limit)->required();
    qexp_cmd->add_option("--h16-inert", h16_inert);

    auto* verify = app.add_subcommand("verify", "Check the Lefschetz trace identity prime by prime");
    verify->add_option("--pmax", pmax);
    verify->add_option("--h16-inert", h16_inert);

    auto* fit = app.add_subcommand("fit", "Re-derive the seven multiplicities by exact linear algebra");
    fit->add_option("--pmax", pmax);
    fit->add_option("--fit-max", fit_max, "Fit on primes up to this bound, validate on the rest");
    fit->add_option("--h16-inert", h16_inert);

    auto* euler = app.add_subcommand("euler", "Euler factors of an L-function preset");
    euler->add_option("--preset", preset_name);
    euler->add_option("--pmax", pmax);
    euler->add_option("--h16-inert", h16_inert);

    auto* report = app.add_subcommand("report", "Full reproduction: identity, fit, Picard splits, L-degrees");
    report->add_option("--pmax", pmax);
    report->add_option("--h16-inert", h16_inert);

    auto* export_cmd = app.add_subcommand("export", "Per-prime table of coefficients, counts and factors");
    export_cmd->add_option("--pmax", pmax);
    export_cmd->add_option("--output", output, "File path; stdout when omitted");
    export_cmd->add_option("--h16-inert", h16_inert);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return usage_error;
    }

    try {
        const Conventions conv = conventions_from(h16_inert);
        if (count->parsed()) return cmd_count(g, variety, prime, degree, brute, out);
        if (ap_cmd->parsed()) return cmd_ap(g, form, prime, conv, out);
        if (gpair->parsed()) return cmd_gpair(g, prime, out);
        if (qexp_cmd->parsed()) return cmd_qexp(g, form, limit, conv, out);
        if (verify->parsed()) return cmd_verify(g, pmax, conv, out, err);
        if (fit->parsed()) return cmd_fit(g, pmax, fit_max, conv, out, err);
        if (euler->parsed()) return cmd_euler(g, preset_name, pmax, conv, out);
        if (report->parsed()) return cmd_report(g, pmax, conv, out, err);
        if (export_cmd->parsed()) return cmd_export(g, pmax, output, conv, out);
    } catch (const BadPrimeError& e) {
        err << e.what() << "\n";
        return usage_error;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

}  // namespace boxzeta::cli
