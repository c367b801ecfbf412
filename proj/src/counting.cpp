#include "boxzeta/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace boxzeta {
namespace {

// Singular locus as listed for the cuboid surface, written with i = sqrt(-1).
constexpr std::array<std::string_view, 48> kSingularTable = {
    "0:0:-1:-1:-1:0:1",   "0:0:-1:-1:1:0:1",    "0:0:-1:1:-1:0:1",    "0:0:-1:1:1:0:1",
    "0:0:1:-1:-1:0:1",    "0:0:1:-1:1:0:1",     "0:0:1:1:-1:0:1",     "0:0:1:1:1:0:1",
    "0:-1:0:-1:0:-1:1",   "0:-1:0:-1:0:1:1",    "0:-1:0:1:0:-1:1",    "0:-1:0:1:0:1:1",
    "0:1:0:-1:0:-1:1",    "0:1:0:-1:0:1:1",     "0:1:0:1:0:-1:1",     "0:1:0:1:0:1:1",
    "-1:0:0:0:-1:-1:1",   "-1:0:0:0:-1:1:1",    "-1:0:0:0:1:-1:1",    "-1:0:0:0:1:1:1",
    "1:0:0:0:-1:-1:1",    "1:0:0:0:-1:1:1",     "1:0:0:0:1:-1:1",     "1:0:0:0:1:1:1",
    "0:-1:-i:0:-i:1:0",   "0:-1:-i:0:i:1:0",    "0:-1:i:0:-i:1:0",    "0:-1:i:0:i:1:0",
    "0:1:-i:0:-i:1:0",    "0:1:-i:0:i:1:0",     "0:1:i:0:-i:1:0",     "0:1:i:0:i:1:0",
    "-1:0:-i:-i:0:1:0",   "-1:0:-i:i:0:1:0",    "-1:0:i:-i:0:1:0",    "-1:0:i:i:0:1:0",
    "1:0:-i:-i:0:1:0",    "1:0:-i:i:0:1:0",     "1:0:i:-i:0:1:0",     "1:0:i:i:0:1:0",
    "-1:-i:0:-i:1:0:0",   "-1:-i:0:i:1:0:0",    "-1:i:0:-i:1:0:0",    "-1:i:0:i:1:0:0",
    "1:-i:0:-i:1:0:0",    "1:-i:0:i:1:0:0",     "1:i:0:-i:1:0:0",     "1:i:0:i:1:0:0",
};

SymbolicCoord parse_coord(std::string_view tok) {
    if (tok == "0") return {0, 0};
    if (tok == "1") return {1, 0};
    if (tok == "-1") return {-1, 0};
    if (tok == "i") return {0, 1};
    if (tok == "-i") return {0, -1};
    throw std::logic_error("bad singular-point coordinate: " + std::string(tok));
}

std::vector<SingularPoint> parse_table() {
    std::vector<SingularPoint> out;
    out.reserve(kSingularTable.size());
    for (auto row : kSingularTable) {
        SingularPoint pt{};
        std::size_t start = 0;
        for (std::size_t k = 0; k < 7; ++k) {
            auto end = row.find(':', start);
            pt.coords[k] = parse_coord(row.substr(start, end == std::string_view::npos ? row.size() - start : end - start));
            start = end + 1;
        }
        pt.rationality = std::any_of(pt.coords.begin(), pt.coords.end(), [](auto c) { return c.imag != 0; })
                             ? Rationality::q_i
                             : Rationality::q;
        out.push_back(pt);
    }
    return out;
}

// (re, im) squared in Z[i].
std::pair<int, int> gauss_square(SymbolicCoord z) {
    return {z.real * z.real - z.imag * z.imag, 2 * z.real * z.imag};
}

std::int64_t checked_projective(std::uint64_t cone, std::uint64_t q, VarietyId v, std::uint32_t p) {
    if (cone == 0 || (cone - 1) % (q - 1) != 0) {
        std::ostringstream msg;
        msg << "internal error: cone count " << cone << " for " << to_string(v) << " at p=" << p
            << " is not 1 mod " << (q - 1);
        throw std::logic_error(msg.str());
    }
    return static_cast<std::int64_t>((cone - 1) / (q - 1));
}

std::uint32_t sqrt_minus_one(std::uint32_t p) {
    for (std::uint64_t x = 2; x < p; ++x) {
        if (x * x % p == p - 1) return static_cast<std::uint32_t>(x);
    }
    throw std::logic_error("no square root of -1 mod " + std::to_string(p));
}

}  // namespace

std::string_view to_string(VarietyId v) {
    switch (v) {
        case VarietyId::cuboid_surface: return "surface";
        case VarietyId::curve_x: return "curve-x";
        case VarietyId::singular_locus: return "singular";
        case VarietyId::e32: return "e32";
        case VarietyId::e64: return "e64";
    }
    return "?";
}

std::string_view to_string(CountMethod m) { return m == CountMethod::fast ? "fast" : "brute"; }

std::string_view to_string(ExceptionalHypothesis h) {
    return h == ExceptionalHypothesis::paper ? "paper" : "permutation";
}

const std::vector<SingularPoint>& singular_points() {
    static const std::vector<SingularPoint> table = parse_table();
    return table;
}

bool satisfies_surface_equations(const SingularPoint& pt) {
    std::array<std::pair<int, int>, 7> sq{};
    for (std::size_t k = 0; k < 7; ++k) sq[k] = gauss_square(pt.coords[k]);
    auto zero = [](std::pair<int, int> a) { return a.first == 0 && a.second == 0; };
    auto sum = [](std::initializer_list<std::pair<int, int>> xs) {
        std::pair<int, int> acc{0, 0};
        for (auto x : xs) {
            acc.first += x.first;
            acc.second += x.second;
        }
        return acc;
    };
    auto neg = [](std::pair<int, int> a) { return std::pair<int, int>{-a.first, -a.second}; };
    const auto& [a1, a2, a3, b1, b2, b3, c] = sq;
    return zero(sum({a1, b1, neg(c)})) && zero(sum({a2, b2, neg(c)})) && zero(sum({a3, b3, neg(c)})) &&
           zero(sum({a1, a2, a3, neg(c)}));
}

CountRecord count_surface_fast(std::uint32_t p, kernels::Isa isa) {
    PrimeContext ctx(p);
    auto cone = kernels::surface_cone_sum(ctx, isa);
    return {VarietyId::cuboid_surface, p, 1, checked_projective(cone, p, VarietyId::cuboid_surface, p),
            CountMethod::fast};
}

CountRecord count_surface_brute(std::uint32_t p) {
    require_odd_prime(p);
    if (p > 13) throw std::invalid_argument("count_surface_brute: p^7 enumeration refused for p > 13");
    PrimeContext ctx(p);
    const auto& sq = ctx.squares();
    std::uint64_t cone = 0;
    for (std::uint32_t a1 = 0; a1 < p; ++a1)
        for (std::uint32_t a2 = 0; a2 < p; ++a2)
            for (std::uint32_t a3 = 0; a3 < p; ++a3)
                for (std::uint32_t c = 0; c < p; ++c) {
                    const std::uint32_t c2 = sq[c];
                    if ((sq[a1] + sq[a2] + sq[a3]) % p != c2) continue;
                    for (std::uint32_t b1 = 0; b1 < p; ++b1) {
                        if ((sq[a1] + sq[b1]) % p != c2) continue;
                        for (std::uint32_t b2 = 0; b2 < p; ++b2) {
                            if ((sq[a2] + sq[b2]) % p != c2) continue;
                            for (std::uint32_t b3 = 0; b3 < p; ++b3) {
                                if ((sq[a3] + sq[b3]) % p == c2) ++cone;
                            }
                        }
                    }
                }
    // cone includes the zero vector
    return {VarietyId::cuboid_surface, p, 1, checked_projective(cone, p, VarietyId::cuboid_surface, p),
            CountMethod::brute};
}

CountRecord count_curve_x(std::uint32_t p, int degree, kernels::Isa isa) {
    require_odd_prime(p);
    if (degree == 1) {
        PrimeContext ctx(p);
        auto cone = kernels::curve_cone_sum(ctx, isa);
        return {VarietyId::curve_x, p, 1, checked_projective(cone, p, VarietyId::curve_x, p), CountMethod::fast};
    }
    if (degree != 2) throw std::invalid_argument("count_curve_x: degree must be 1 or 2");
    if (p > 200) throw std::invalid_argument("count_curve_x: degree 2 limited to p <= 200");

    PrimeContext ctx(p);
    QuadraticExtension ext(ctx);
    const auto T = ext.sqrt_count_table();
    const std::uint64_t q = ext.order();
    const QuadExtElement one{1, 0};
    const QuadExtElement two{2 % p, 0};

    // The summand is invariant under (x, y) -> (lx, ly), l != 0, because every
    // argument scales by the square l^2. Rows x != 0 all equal the x = 1 row
    // after y = x t.
    std::uint64_t zero_row = 0;
    std::uint64_t unit_row = 0;
    for (std::uint32_t idx = 0; idx < q; ++idx) {
        const QuadExtElement t = ext.element(idx);
        const QuadExtElement t2 = ext.mul(t, t);
        const QuadExtElement minus_t2 = ext.sub(QuadExtElement{}, t2);
        zero_row += static_cast<std::uint64_t>(T[0] * T[ext.index(minus_t2)] * T[ext.index(t2)]);
        unit_row += static_cast<std::uint64_t>(T[ext.index(ext.mul(two, t))] * T[ext.index(ext.sub(one, t2))] *
                                               T[ext.index(ext.add(one, t2))]);
    }
    const std::uint64_t cone = zero_row + (q - 1) * unit_row;
    return {VarietyId::curve_x, p, 2, checked_projective(cone, q, VarietyId::curve_x, p), CountMethod::fast};
}

std::int64_t count_curve_x_deg2_direct(std::uint32_t p) {
    require_odd_prime(p);
    if (p > 200) throw std::invalid_argument("count_curve_x_deg2_direct: p <= 200 required");
    PrimeContext ctx(p);
    QuadraticExtension ext(ctx);
    const auto T = ext.sqrt_count_table();
    const auto q = static_cast<std::uint32_t>(ext.order());
    std::vector<QuadExtElement> squares(q);
    for (std::uint32_t i = 0; i < q; ++i) squares[i] = ext.mul(ext.element(i), ext.element(i));
    const QuadExtElement two{2 % p, 0};
    std::uint64_t cone = 0;
    for (std::uint32_t xi = 0; xi < q; ++xi) {
        const QuadExtElement two_x = ext.mul(two, ext.element(xi));
        const QuadExtElement x2 = squares[xi];
        for (std::uint32_t yi = 0; yi < q; ++yi) {
            const QuadExtElement y = ext.element(yi);
            cone += static_cast<std::uint64_t>(T[ext.index(ext.mul(two_x, y))] *
                                               T[ext.index(ext.sub(x2, squares[yi]))] *
                                               T[ext.index(ext.add(x2, squares[yi]))]);
        }
    }
    return checked_projective(cone, q, VarietyId::curve_x, p);
}

CountRecord count_curve_x_brute(std::uint32_t p, int degree) {
    require_odd_prime(p);
    if (degree != 1 && degree != 2) throw std::invalid_argument("count_curve_x_brute: degree must be 1 or 2");
    PrimeContext ctx(p);
    QuadraticExtension ext(ctx);
    const std::uint64_t q = degree == 1 ? p : ext.order();
    if (q * q * q * q * q > 30'000'000ULL) throw std::invalid_argument("count_curve_x_brute: q^5 too large");

    // Field elements as dense indices; degree 1 uses the F_p subfield {x0 + 0w}.
    auto elem = [&](std::uint64_t i) { return degree == 1 ? QuadExtElement{static_cast<std::uint32_t>(i), 0} : ext.element(static_cast<std::uint32_t>(i)); };
    std::vector<QuadExtElement> els(q), sq(q);
    for (std::uint64_t i = 0; i < q; ++i) {
        els[i] = elem(i);
        sq[i] = ext.mul(els[i], els[i]);
    }
    const QuadExtElement two{2 % p, 0};
    std::uint64_t cone = 0;
    for (std::uint64_t xi = 0; xi < q; ++xi)
        for (std::uint64_t yi = 0; yi < q; ++yi) {
            const QuadExtElement rhs_u = ext.mul(two, ext.mul(els[xi], els[yi]));
            const QuadExtElement rhs_v = ext.sub(sq[xi], sq[yi]);
            const QuadExtElement rhs_w = ext.add(sq[xi], sq[yi]);
            for (std::uint64_t ui = 0; ui < q; ++ui) {
                if (!(sq[ui] == rhs_u)) continue;
                for (std::uint64_t vi = 0; vi < q; ++vi) {
                    if (!(sq[vi] == rhs_v)) continue;
                    for (std::uint64_t wi = 0; wi < q; ++wi) {
                        if (sq[wi] == rhs_w) ++cone;
                    }
                }
            }
        }
    return {VarietyId::curve_x, p, degree, checked_projective(cone, q, VarietyId::curve_x, p), CountMethod::brute};
}

int count_singular(std::uint32_t p) {
    require_odd_prime(p);
    const bool has_i = p % 4 == 1;
    const std::uint32_t i_mod_p = has_i ? sqrt_minus_one(p) : 0;
    PrimeContext ctx(p);

    std::vector<std::array<std::uint32_t, 7>> reduced;
    for (const auto& pt : singular_points()) {
        if (pt.rationality == Rationality::q_i && !has_i) continue;
        std::array<std::uint32_t, 7> v{};
        for (std::size_t k = 0; k < 7; ++k) {
            const auto& c = pt.coords[k];
            v[k] = ctx.reduce(std::int64_t{c.real} + std::int64_t{c.imag} * i_mod_p);
        }
        // Scale so the last nonzero coordinate is 1.
        auto last = std::find_if(v.rbegin(), v.rend(), [](auto x) { return x != 0; });
        if (last == v.rend()) throw std::logic_error("singular point reduces to zero vector");
        const auto inv = static_cast<std::uint32_t>(mod_pow(*last, p - 2, p));
        for (auto& x : v) x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % p);

        const auto& s = ctx.squares();
        const auto c2 = s[v[6]];
        const bool on_surface = (s[v[0]] + s[v[3]]) % p == c2 && (s[v[1]] + s[v[4]]) % p == c2 &&
                                (s[v[2]] + s[v[5]]) % p == c2 && (s[v[0]] + s[v[1]] + s[v[2]]) % p == c2;
        if (!on_surface) throw std::logic_error("singular point not on surface mod " + std::to_string(p));
        reduced.push_back(v);
    }
    std::sort(reduced.begin(), reduced.end());
    if (std::adjacent_find(reduced.begin(), reduced.end()) != reduced.end()) {
        throw std::logic_error("singular points collide mod " + std::to_string(p));
    }
    return static_cast<int>(reduced.size());
}

std::int64_t model_resolved_count(std::uint32_t p, std::int64_t surface_count, ExceptionalHypothesis h) {
    require_odd_prime(p);
    const std::int64_t pp = p;
    if (h == ExceptionalHypothesis::permutation) return surface_count + pp * count_singular(p);
    return surface_count + 24 * pp + 24 * character_value(QuadraticCharacter::chi_m4, p) * pp;
}

std::int64_t model_resolved_count(std::uint32_t p, ExceptionalHypothesis h) {
    return model_resolved_count(p, count_surface_fast(p).count, h);
}

std::int64_t count_elliptic(VarietyId curve, std::uint32_t p) {
    if (curve != VarietyId::e32 && curve != VarietyId::e64) {
        throw std::invalid_argument("count_elliptic: curve must be e32 or e64");
    }
    PrimeContext ctx(p);
    const std::int64_t sign = curve == VarietyId::e32 ? -1 : 1;
    std::int64_t points = 1;  // point at infinity
    for (std::int64_t x = 0; x < p; ++x) {
        points += ctx.sqrt_count(ctx.reduce(x * x % p * x + sign * x));
    }
    return static_cast<std::int64_t>(p) + 1 - points;
}

}  // namespace boxzeta
