#include "cli.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hblocks/asymptotics.hpp"
#include "hblocks/combinatorics.hpp"
#include "hblocks/hblock.hpp"

namespace hblocks::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { json, csv, text };

struct CommonOpts {
    std::vector<long long> p;
    std::vector<long long> q;
    int digits = 50;
    std::string format = "json";
};

Format parse_format(const std::string& f) {
    if (f == "json") return Format::json;
    if (f == "csv") return Format::csv;
    if (f == "text") return Format::text;
    throw CLI::ValidationError("--format", "expected json|csv|text");
}

SeifertData resolve_data(const CommonOpts& c) {
    if (c.q.empty()) return make_seifert(c.p);
    return validate_seifert(c.p, c.q);
}

std::string real_str(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

ordered_json cplx_json(const Cplx& z, int digits) {
    return ordered_json{{"re", real_str(z.re, digits)}, {"im", real_str(z.im, digits)}};
}

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

ordered_json data_json(const SeifertData& data) {
    ordered_json j;
    j["n"] = data.n;
    j["p"] = data.p;
    j["q"] = data.q;
    j["P"] = data.P;
    j["theta0"] = rat_str(data.theta0);
    return j;
}

ordered_json series_json(const RationalQSeries& s, int digits) {
    (void)digits;
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(ordered_json{{"exponent", rat_str(e)}, {"coefficient", rat_str(c)}});
    ordered_json j;
    j["denominator"] = s.denom();
    j["terms"] = terms;
    return j;
}

void emit(const ordered_json& j, Format format, std::ostream& out) {
    if (format == Format::json) {
        out << j.dump(2) << "\n";
        return;
    }
    if (format == Format::text) {
        // flat key: value rendering, stable order
        std::function<void(const ordered_json&, const std::string&)> walk =
            [&](const ordered_json& node, const std::string& prefix) {
                if (node.is_object()) {
                    for (auto it = node.begin(); it != node.end(); ++it)
                        walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
                } else if (node.is_array()) {
                    std::size_t i = 0;
                    for (const auto& item : node) walk(item, prefix + "[" + std::to_string(i++) + "]");
                } else {
                    out << prefix << ": " << (node.is_string() ? node.get<std::string>() : node.dump())
                        << "\n";
                }
            };
        walk(j, "");
        return;
    }
    // csv: arrays of flat objects become rows; everything else degrades to
    // two-column key,value
    if (j.is_object() && j.contains("rows") && j["rows"].is_array()) {
        const auto& rows = j["rows"];
        if (!rows.empty()) {
            std::string header;
            for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
                header += (header.empty() ? "" : ",") + it.key();
            out << header << "\n";
            for (const auto& row : rows) {
                std::string line;
                for (auto it = row.begin(); it != row.end(); ++it) {
                    std::string cell = it.value().is_string() ? it.value().get<std::string>()
                                                              : it.value().dump();
                    line += (line.empty() ? "" : ",") + cell;
                }
                out << line << "\n";
            }
        }
        return;
    }
    std::function<void(const ordered_json&, const std::string&)> walk =
        [&](const ordered_json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (node.is_array()) {
                std::size_t i = 0;
                for (const auto& item : node) walk(item, prefix + "[" + std::to_string(i++) + "]");
            } else {
                out << prefix << "," << (node.is_string() ? node.get<std::string>() : node.dump())
                    << "\n";
            }
        };
    walk(j, "");
}

RationalQSeries select_series(const SeifertData& data, const std::string& what,
                              const Rational& cutoff) {
    if (what == "psi") return psi_series(data, cutoff);
    if (what == "P") return p_polynomial(data);
    if (what == "psi-hat") return psi_decomposed_series(data, cutoff);
    throw CLI::ValidationError("--what", "expected psi|P|psi-hat");
}

// ---------------------------------------------------------------------------
// check suites

struct CheckReport {
    ordered_json rows = ordered_json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& measure) {
        rows.push_back(ordered_json{{"check", name}, {"status", pass ? "PASS" : "FAIL"},
                                    {"measured", measure}});
        all_pass = all_pass && pass;
    }
    void add_residual(const std::string& name, const Real& residual, const Real& tol) {
        add(name, residual < tol, residual.str(3, std::ios_base::scientific));
    }
};

void check_exact_core(CheckReport& rep, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    SeifertData d235 = make_seifert({2, 3, 5});

    // Table of (m0, ell) for (2,3,5)
    {
        bool ok = true;
        const std::vector<std::pair<long long, long long>> expected = {
            {1, 1}, {0, 31}, {0, 41}, {0, 11}, {0, 49}, {0, 19}, {0, 29}, {-1, 59}};
        auto sectors = all_sectors(d235);
        for (std::size_t s = 0; s < sectors.size(); ++s)
            ok = ok && sectors[s].m0 == expected[s].first && sectors[s].ell == expected[s].second;
        rep.add("sector table (2,3,5)", ok, ok ? "exact" : "mismatch");
    }
    {
        auto P = p_polynomial(d235);
        bool ok = P.size() == 1 && P.coefficient(Rational(1, 120)) == -2;
        rep.add("P(q) = -2 q^{1/120}", ok, ok ? "exact" : "mismatch");
    }
    {
        Rational cutoff(20);
        bool ok = (psi_series(d235, cutoff) - p_polynomial(d235)) ==
                  psi_decomposed_series(d235, cutoff);
        rep.add("decomposition identity (2,3,5), cutoff 20", ok, ok ? "exact" : "mismatch");
    }
    {
        Rational cutoff(20);
        auto psi = psi_series(d235, cutoff);
        bool ok = psi_series_stirling(d235, cutoff, StirlingExpansion::forward) == psi &&
                  psi_series_stirling(d235, cutoff, StirlingExpansion::backward) == psi;
        rep.add("dual Stirling expansions (2,3,5)", ok, ok ? "exact" : "mismatch");
    }
    {
        bool ok = ep_sum_vanishes(d235, 0).is_zero();
        rep.add("sum_eps eps c_eps(k) = 0 (2,3,5)", ok, ok ? "0" : "nonzero");
    }
    {
        // d-recursion vs closed form: c_{kappa+1,r} = (2(kappa+iota+r)+1) c_{kappa,r} + c_{kappa,r-1}/2
        bool ok = true;
        for (unsigned iota = 0; iota <= 1; ++iota)
            for (unsigned kappa = 0; kappa + 1 <= 10; ++kappa)
                for (unsigned r = 0; r <= kappa + 1; ++r) {
                    Rational lhs = d_coeff(kappa + 1, iota, r).coeff;
                    Rational rhs = Rational(2 * (kappa + iota + r) + 1) * d_coeff(kappa, iota, r).coeff;
                    if (r >= 1) rhs += d_coeff(kappa, iota, r - 1).coeff / 2;
                    ok = ok && (lhs == rhs);
                }
        rep.add("d-coefficient recursion", ok, ok ? "exact" : "mismatch");
    }
    {
        // Dedekind reciprocity values against the cotangent sum
        Real worst(0);
        Real pi = pi_const();
        for (long long p = 2; p <= 30; ++p)
            for (long long q = 1; q < p; ++q) {
                if (std::gcd(q, p) != 1) continue;
                Real s(0);
                for (long long l = 1; l < p; ++l)
                    s += cos(pi * l / p) / sin(pi * l / p) * cos(pi * l * q / p) /
                         sin(pi * l * q / p);
                s /= 4 * p;
                Real diff = abs(Cplx(to_real(dedekind_sum(q, p)) - s));
                if (diff > worst) worst = diff;
            }
        rep.add_residual("dedekind sums vs cotangent sums (p <= 30)", worst, ctx.identity_tol());
    }
}

void check_numeric_core(CheckReport& rep, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    SeifertData d235 = make_seifert({2, 3, 5});
    const Cplx tau(Real(1) / 3, Real(1) / 5);

    {
        Real worst(0);
        for (unsigned k = 0; k <= 4; ++k) {
            ThetaClass c(60, k, 7);
            Real r = abs(s_transform_residual(k <= 1 ? STransformKind::ordinary01
                                                     : STransformKind::ordinary_general,
                                              c, tau, ctx));
            if (r > worst) worst = r;
        }
        rep.add_residual("ordinary theta S-transforms (M=60, k<=4)", worst, ctx.identity_tol());
    }
    {
        PsiHatEvaluator ev(d235);
        Real r = abs(s_transform_residual(STransformKind::false_general, ev.weight_combo(0, ctx),
                                          tau, ctx));
        rep.add_residual("false theta S-transform, (2,3,5) combination", r, ctx.identity_tol());
    }
    {
        PsiHatEvaluator ev(d235);
        Cplx lhs = eval_psi_hat(ev, -(Cplx(Real(1)) / tau), ctx);
        Cplx rhs = psi_hat_s_rhs(ev, tau, ctx);
        rep.add_residual("Psi-hat S-transformation (2,3,5)", abs(lhs - rhs), ctx.identity_tol());
    }
    {
        Real worst_mean(0), worst_div(0), worst_sin(0);
        Real pi = pi_const();
        for (long long K = 2; K <= 6; ++K) {
            auto C = periodic_C(d235, 0, K, ctx);
            Real m = abs(C.sum_over_period());
            if (m > worst_mean) worst_mean = m;
        }
        auto Ct = periodic_C_tilde(d235, 0, ctx);
        for (long long m = 1; m <= d235.two_p(); ++m) {
            int cnt = 0;
            for (long long pj : d235.p) cnt += (m % pj == 0);
            if (cnt >= 1) {
                Real v = abs(Ct.at(m));
                if (v > worst_div) worst_div = v;
            } else {
                Cplx expect = powi(Cplx(Real(0), Real(2)), 3);
                if (m % 2 == 1) expect = -expect;
                for (long long pj : d235.p) expect *= sin(pi * Real(m) / Real(pj));
                Real v = abs(Ct.at(m) - expect);
                if (v > worst_sin) worst_sin = v;
            }
        }
        rep.add_residual("C_{k,K} mean value (2,3,5)", worst_mean, ctx.identity_tol());
        rep.add_residual("C~ divisibility vanishing (2,3,5)", worst_div, ctx.identity_tol());
        rep.add_residual("C~ sine product (2,3,5)", worst_sin, ctx.identity_tol());
    }
    {
        Cplx a = leading_term(d235, 100, ctx);
        Cplx b = cs_grouped_leading(d235, 100, ctx);
        rep.add_residual("leading term vs CS-grouped form (2,3,5, K=100)", abs(a - b),
                         ctx.identity_tol());
    }
    {
        Cplx e = wrt_exact(d235, 3, ctx);
        auto x = wrt_extrapolate(d235, 3, ctx);
        Real diff = abs(e - x.value);
        rep.add("two-route WRT (2,3,5, K=3)",
                diff < x.error_estimate && diff < ctx.pow10(-15),
                diff.str(3, std::ios_base::scientific));
    }
}

void check_full_extra(CheckReport& rep, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    SeifertData d2357 = make_seifert({2, 3, 5, 7});
    SeifertData d435 = make_seifert({4, 3, 5});

    {
        Rational cutoff(20);
        bool ok = (psi_series(d2357, cutoff) - p_polynomial(d2357)) ==
                  psi_decomposed_series(d2357, cutoff);
        rep.add("decomposition identity (2,3,5,7), cutoff 20", ok, ok ? "exact" : "mismatch");
        ok = (psi_series(d435, cutoff) - p_polynomial(d435)) == psi_decomposed_series(d435, cutoff);
        rep.add("decomposition identity (4,3,5), cutoff 20", ok, ok ? "exact" : "mismatch");
    }
    {
        PsiHatEvaluator ev(d2357);
        const std::vector<Cplx> grid = {Cplx(Real(1) / 3, Real(1) / 5),
                                        Cplx(Real(-1) / 7, Real(1) / 3)};
        Real worst(0);
        for (const Cplx& tau : grid) {
            Cplx lhs = eval_psi_hat(ev, -(Cplx(Real(1)) / tau), ctx);
            Cplx rhs = psi_hat_s_rhs(ev, tau, ctx);
            Real r = abs(lhs - rhs);
            if (r > worst) worst = r;
        }
        rep.add_residual("Psi-hat S-transformation grid (2,3,5,7)", worst, ctx.identity_tol());
    }
    {
        Cplx e = wrt_exact(d435, 5, ctx);
        auto x = wrt_extrapolate(d435, 5, ctx);
        Real diff = abs(e - x.value);
        rep.add("two-route WRT (4,3,5, K=5)", diff < x.error_estimate && diff < ctx.pow10(-15),
                diff.str(3, std::ios_base::scientific));
    }
}

int run_check(const std::string& suite, int digits, Format format, std::ostream& out) {
    PrecisionCtx ctx(digits);
    CheckReport rep;
    auto start = std::chrono::steady_clock::now();
    check_exact_core(rep, ctx);
    check_numeric_core(rep, ctx);
    if (suite == "full") check_full_extra(rep, ctx);
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    ordered_json j;
    j["suite"] = suite;
    j["digits"] = digits;
    j["rows"] = rep.rows;
    j["elapsed_ms"] = elapsed.count();
    j["result"] = rep.all_pass ? "PASS" : "FAIL";
    emit(j, format, out);
    return rep.all_pass ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homological blocks of Seifert fibered homology spheres"};
    app.require_subcommand(1);

    CommonOpts common;
    auto add_common = [&](CLI::App* cmd, bool need_p = true) {
        auto* popt = cmd->add_option("--p", common.p, "fiber orders, comma separated")
                         ->delimiter(',');
        if (need_p) popt->required();
        cmd->add_option("--q", common.q, "surgery coefficients (default: canonical)")
            ->delimiter(',');
        cmd->add_option("--digits", common.digits, "working decimal digits (>= 20)")
            ->default_val(50);
        cmd->add_option("--format", common.format, "json|csv|text")->default_val("json");
    };

    auto* validate = app.add_subcommand("validate", "validate Seifert data and print invariants");
    add_common(validate);

    auto* series = app.add_subcommand("series", "exact q-series coefficients");
    add_common(series);
    std::string what = "psi";
    std::string cutoff_str = "10";
    series->add_option("--what", what, "psi|P|psi-hat")->default_val("psi");
    series->add_option("--cutoff", cutoff_str, "exponent cutoff, rational a/b")->default_val("10");

    auto* decompose = app.add_subcommand(
        "decompose", "false-theta decomposition Psi - P with exact verification");
    add_common(decompose);
    decompose->add_option("--cutoff", cutoff_str, "exponent cutoff, rational a/b")
        ->default_val("10");

    auto* wrt = app.add_subcommand("wrt", "WRT invariant tau_K");
    add_common(wrt);
    long long K = 0;
    std::string method = "exact";
    wrt->add_option("--K", K, "level, K >= 2")->required();
    wrt->add_option("--method", method, "exact|extrapolate|both")->default_val("exact");

    auto* asymptote = app.add_subcommand("asymptote", "asymptotic expansion of tau_K");
    add_common(asymptote);
    long long Ka = 0;
    int order = 1;
    std::string grouping = "m";
    asymptote->add_option("--K", Ka, "evaluate the expansion at this K")->default_val(0);
    asymptote->add_option("--order", order, "beta tail depth")->default_val(1);
    asymptote->add_option("--grouping", grouping, "m|cs")->default_val("m");

    auto* spectrum = app.add_subcommand("cs-spectrum", "nonzero Chern-Simons invariants");
    add_common(spectrum);

    auto* check = app.add_subcommand("check", "run the invariant/property suites");
    std::string suite = "fast";
    check->add_option("suite", suite, "fast|full")->required();
    check->add_option("--digits", common.digits, "working decimal digits")->default_val(50);
    check->add_option("--format", common.format, "json|csv|text")->default_val("json");

    auto* plot = app.add_subcommand("plot-data", "CSV of tau_K against the leading asymptotics");
    add_common(plot);
    long long Kmax = 10;
    plot->add_option("--Kmax", Kmax, "largest level")->default_val(10);

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        Format format = parse_format(common.format);
        PrecisionCtx ctx(common.digits);

        if (check->parsed()) {
            if (suite != "fast" && suite != "full") {
                err << "usage error: unknown suite '" << suite << "' (expected fast|full)\n";
                return 2;
            }
            return run_check(suite, common.digits, format, out);
        }

        SeifertData data = resolve_data(common);

        if (validate->parsed()) {
            emit(data_json(data), format, out);
            return 0;
        }
        if (series->parsed()) {
            Rational cutoff = parse_rational(cutoff_str);
            ordered_json j = data_json(data);
            j["what"] = what;
            j["cutoff"] = rat_str(cutoff);
            j["series"] = series_json(select_series(data, what, cutoff), common.digits);
            emit(j, format, out);
            return 0;
        }
        if (decompose->parsed()) {
            Rational cutoff = parse_rational(cutoff_str);
            auto psi = psi_series(data, cutoff);
            auto P = p_polynomial(data);
            auto dec = psi_decomposed_series(data, cutoff);
            ordered_json j = data_json(data);
            j["cutoff"] = rat_str(cutoff);
            j["psi"] = series_json(psi, common.digits);
            j["P"] = series_json(P, common.digits);
            j["psi_hat"] = series_json(dec, common.digits);
            j["identity_psi_minus_P_equals_decomposition"] = ((psi - P) == dec);
            emit(j, format, out);
            return 0;
        }
        if (wrt->parsed()) {
            if (method != "exact" && method != "extrapolate" && method != "both") {
                err << "usage error: --method expects exact|extrapolate|both\n";
                return 2;
            }
            ordered_json j = data_json(data);
            j["K"] = K;
            if (method == "exact" || method == "both")
                j["exact"] = cplx_json(wrt_exact(data, K, ctx), common.digits);
            if (method == "extrapolate" || method == "both") {
                auto res = wrt_extrapolate(data, K, ctx);
                PrecisionScope scope(ctx);
                j["extrapolate"] = cplx_json(res.value, common.digits);
                j["extrapolation_error_estimate"] = real_str(res.error_estimate, 3);
            }
            if (method == "both") {
                PrecisionScope scope(ctx);
                Cplx e = wrt_exact(data, K, ctx);
                auto res = wrt_extrapolate(data, K, ctx);
                j["abs_difference"] = real_str(abs(e - res.value), 3);
            }
            emit(j, format, out);
            return 0;
        }
        if (asymptote->parsed()) {
            if (grouping != "m" && grouping != "cs") {
                err << "usage error: --grouping expects m|cs\n";
                return 2;
            }
            ordered_json j = data_json(data);
            j["order"] = order;
            PrecisionScope scope(ctx);
            if (grouping == "m") {
                auto expn = asymptotic_expansion(data, order, true, ctx);
                ordered_json osc = ordered_json::array();
                for (const auto& term : expn.oscillatory) {
                    if (abs(term.coeff) < ctx.identity_tol()) continue;
                    osc.push_back(ordered_json{{"phase", rat_str(term.phase)},
                                               {"kpower", term.kpower},
                                               {"coeff", cplx_json(term.coeff, common.digits)}});
                }
                j["lhs"] = "sqrt(2/K) xi_K^{Theta0/4} sin(pi/K) tau_K";
                j["oscillatory"] = osc;
                ordered_json betas = ordered_json::array();
                for (std::size_t r = 0; r < expn.beta_tail.size(); ++r)
                    betas.push_back(ordered_json{{"r", r},
                                                 {"coeff", cplx_json(expn.beta_tail[r], common.digits)}});
                j["beta_tail"] = betas;
                j["p_term_coeff"] = cplx_json(expn.p_term_coeff, common.digits);
                if (Ka >= 2) {
                    j["K"] = Ka;
                    j["value_at_K"] = cplx_json(asymptotic_eval(expn, data, Ka, ctx), common.digits);
                }
            } else {
                ordered_json labels = ordered_json::array();
                for (const auto& lab : flat_connections(data))
                    labels.push_back(ordered_json{{"l", lab.l}, {"cs", rat_str(lab.cs)}});
                j["lhs"] = "sqrt(2/K) sin(pi/K) tau_K";
                j["flat_connections"] = labels;
                if (Ka >= 2) {
                    j["K"] = Ka;
                    j["leading_value_at_K"] =
                        cplx_json(cs_grouped_leading(data, Ka, ctx), common.digits);
                }
            }
            emit(j, format, out);
            return 0;
        }
        if (spectrum->parsed()) {
            ordered_json j = data_json(data);
            ordered_json cs = ordered_json::array();
            for (const Rational& r : nonzero_cs_spectrum(data)) cs.push_back(rat_str(r));
            j["nonzero_cs_spectrum"] = cs;
            emit(j, format, out);
            return 0;
        }
        if (plot->parsed()) {
            PrecisionScope scope(ctx);
            ordered_json rows = ordered_json::array();
            Real pi = pi_const();
            for (long long Kv = 2; Kv <= Kmax; ++Kv) {
                Cplx tauK = wrt_exact(data, Kv, ctx);
                Cplx lead = leading_term(data, Kv, ctx);
                Cplx lhs = sqrt(Real(2) / Real(Kv)) * sin(pi / Real(Kv)) * tauK;
                rows.push_back(ordered_json{{"K", Kv},
                                            {"re_tau", real_str(tauK.re, common.digits)},
                                            {"im_tau", real_str(tauK.im, common.digits)},
                                            {"abs_leading", real_str(abs(lead), common.digits)},
                                            {"abs_remainder", real_str(abs(lhs - lead), common.digits)}});
            }
            ordered_json j;
            j["rows"] = rows;
            emit(j, format == Format::json ? Format::json : Format::csv, out);
            return 0;
        }
        err << "usage error: no command\n";
        return 2;
    } catch (const hblocks::error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace hblocks::cli
