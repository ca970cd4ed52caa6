#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "farey/circle_map.hpp"
#include "farey/cli/report.hpp"
#include "farey/continued_fraction.hpp"
#include "farey/euclid_spectrum.hpp"
#include "farey/farey_statistics.hpp"
#include "farey/fb_spectrum.hpp"
#include "farey/hyperbolic_words.hpp"
#include "farey/partition.hpp"

namespace farey::cli {

/// Command line rejected by the parser; carries the usage text.
class usage_error : public domain_error {
public:
    usage_error(const std::string& what, std::string usage) : domain_error(what), usage_(std::move(usage)) {}
    const std::string& usage() const noexcept { return usage_; }

private:
    std::string usage_;
};

struct Invocation {
    Report report;
    Format format = Format::csv;
    bool help = false;
    std::string help_text;
};

namespace detail {

inline std::vector<double> grid(double lo, double hi, std::size_t n) {
    if (n < 2) throw domain_error("grid: need at least 2 points");
    if (!(lo < hi)) throw ordering_error("grid: need lo < hi");
    return default_param_grid(lo, hi, n);
}

inline Report partition_report(unsigned level) {
    Report r;
    r.table.columns = {"index", "left", "right", "length", "determinant", "fb_measure"};
    const FareyPartition part = build_partition(level);
    const std::string measure = part.measure().to_string();
    bool adjacent = true;
    for (std::size_t i = 0; i < part.interval_count(); ++i) {
        const FareyInterval iv = part.interval(i);
        const BigInt det = iv.determinant();
        adjacent = adjacent && det == 1;
        r.table.rows.push_back({static_cast<std::int64_t>(i), iv.left.to_string(), iv.right.to_string(),
                                iv.length().to_string(), det.str(), measure});
    }
    r.scalar("level", static_cast<std::int64_t>(level));
    r.scalar("intervals", static_cast<std::int64_t>(part.interval_count()));
    r.scalar("all_adjacent", adjacent);
    return r;
}

inline Report spectrum_report(const std::string& kind, const std::vector<double>& contractors,
                              const std::vector<double>& params) {
    Report r;
    auto emit_curve = [&](const SpectrumCurve& c) {
        r.table.columns = {"param", "alpha", "f", "tau", "slope"};
        for (const SpectrumPoint& p : c.points) r.table.rows.push_back({p.param, p.alpha, p.f, p.tau, p.slope});
        r.scalar("parameter", c.parameter);
    };
    if (kind == "lengths") {
        emit_curve(spectrum_equal_lengths(ProbabilityContractors(contractors), params));
    } else if (kind == "probs") {
        emit_curve(spectrum_equal_probs(LengthContractors(contractors), params));
    } else if (kind == "inverted") {
        emit_curve(invert_spectrum(spectrum_equal_lengths(ProbabilityContractors(contractors), params)));
    } else if (kind == "duality") {
        r.table.columns = {"q", "tau", "qbar", "residual", "involution"};
        double worst = 0;
        for (const DualityResidual& d : duality_residuals(ProbabilityContractors(contractors), params)) {
            r.table.rows.push_back({d.q, d.tau, d.qbar, d.residual, d.involution});
            worst = std::max(worst, d.residual);
        }
        r.scalar("max_residual", worst);
    } else {
        throw domain_error("spectrum: --kind must be one of lengths, probs, inverted, duality");
    }
    return r;
}

inline Report fb_dim_report(std::size_t jmax, const std::vector<double>& lambdas) {
    Report r;
    const CertifiedPoint ip = information_point(jmax);
    const LogASeries la = log_A_series(jmax);
    const double stat = std::numbers::ln2 / la.log_A;
    r.scalar("dimension", ip.point.f);
    r.scalar("alpha", ip.point.alpha);
    r.scalar("error_bound", ip.error_bound);
    r.scalar("numerator", ip.numerator);
    r.scalar("denominator", ip.denominator);
    r.scalar("log_A", la.log_A);
    r.scalar("log_A_tail_bound", la.tail_bound);
    r.scalar("statistical_dimension", stat);
    r.scalar("coincidence_residual", std::abs(ip.point.f - stat));
    if (!lambdas.empty()) {
        // Ratios of the information-point frequencies to the key-frequency law, j <= 40.
        constexpr std::size_t jmax_profile = 40;
        r.table.columns = {"j"};
        std::vector<std::vector<double>> prof;
        for (double L : lambdas) {
            r.table.columns.push_back("ratio_lambda_" + format_real(L));
            prof.push_back(information_ratio_profile(L, jmax_profile, ip.point.f));
        }
        for (std::size_t j = 1; j <= jmax_profile; ++j) {
            std::vector<Cell> row{static_cast<std::int64_t>(j)};
            for (const auto& p : prof) row.emplace_back(p[j - 1]);
            r.table.rows.push_back(std::move(row));
        }
    }
    return r;
}

inline Report ek_dim_report(const std::vector<std::size_t>& ks) {
    Report r;
    r.table.columns = {"k", "d", "d_pressure", "k_one_minus_d", "mean_quotient", "iterations"};
    for (std::size_t k : ks) {
        const EkResult e = ek_dimension(k);
        r.table.rows.push_back({static_cast<std::int64_t>(k), e.d, ek_dimension_pressure(k),
                                static_cast<double>(k) * (1.0 - e.d), e.weights.m,
                                static_cast<std::int64_t>(e.iterations)});
    }
    return r;
}

inline Report stat_dim_report(unsigned n_min, unsigned n_max, const std::string& mode_name) {
    LogAMode mode;
    if (mode_name == "besicovitch")
        mode = LogAMode::besicovitch;
    else if (mode_name == "exact")
        mode = LogAMode::exact;
    else
        throw domain_error("stat-dim: --mode must be besicovitch or exact");
    Report r;
    const LogASeries la = log_A_series(64);
    r.table.columns = {"N", "log_A", "dimension", "abs_error", "length_ratio", "length_ratio_closed_form"};
    for (const EmpiricalLogA& e : empirical_log_A_sweep(n_min, n_max, mode)) {
        r.table.rows.push_back({static_cast<std::int64_t>(e.N), e.log_A, std::numbers::ln2 / e.log_A,
                                std::abs(e.log_A - la.log_A), average_length_ratio(e.N).to_string(),
                                average_length_ratio_closed_form(e.N).to_string()});
    }
    r.scalar("log_A_series", la.log_A);
    r.scalar("dimension_series", std::numbers::ln2 / la.log_A);
    return r;
}

inline Report census_report(unsigned n_min, unsigned n_max) {
    if (n_min < 2 || n_min > n_max) throw domain_error("census: need 2 <= n-min <= n-max");
    Report r;
    r.table.columns = {"N", "formula", "k", "enumerated", "closed_form", "agrees", "discrepancy"};
    for (unsigned N = n_min; N <= n_max; ++N) {
        const CoefficientCensus c = census(N);
        for (const FormulaCheck& f : c.checks)
            r.table.rows.push_back({static_cast<std::int64_t>(N), f.name, static_cast<std::int64_t>(f.k), f.enumerated,
                                    f.closed_form, f.agrees, f.discrepancy()});
    }
    return r;
}

inline Report staircase_report(unsigned level_min, unsigned level_max, double tol) {
    if (level_min < 1 || level_max > 8 || level_max < level_min + 2)
        throw domain_error("staircase: need 1 <= level-min, level-min + 2 <= level-max <= 8");
    std::vector<GapCover> covers;
    for (unsigned N = level_min; N <= level_max; ++N) covers.push_back(gap_cover(N, tol));
    const DimensionEstimate est = dimension_estimate(covers);
    Report r;
    r.table.columns = {"level", "gaps", "total_length", "d_level", "d_level_ratio", "slope", "r_squared"};
    for (std::size_t i = 0; i < covers.size(); ++i) {
        const SlopeFit s = slope_scatter(covers[i]);
        Cell ratio = i == 0 ? Cell(std::string()) : Cell(est.level_ratio[i - 1]);
        r.table.rows.push_back({static_cast<std::int64_t>(covers[i].level),
                                static_cast<std::int64_t>(covers[i].gaps.size()), covers[i].total_length(),
                                est.per_level[i], ratio, s.slope, s.r_squared});
    }
    r.scalar("dimension", est.d);
    return r;
}

inline std::vector<Quotient> parse_quotients(const std::string& s) {
    std::vector<Quotient> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw domain_error("cutseq: quotient list must be comma-separated positive integers");
        out.push_back(std::stoull(tok));
    }
    return out;
}

inline std::string join_quotients(const std::vector<Quotient>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline Report cutseq_report(const std::string& x, const std::string& prefix, const std::string& period,
                            std::size_t depth) {
    Report r;
    CuttingWord w;
    std::vector<Quotient> expected;
    if (!period.empty()) {
        if (!x.empty()) throw domain_error("cutseq: give either --x or --period, not both");
        const PeriodicCF cf(prefix.empty() ? std::vector<Quotient>{} : parse_quotients(prefix), parse_quotients(period));
        w = cutting_sequence(cf, depth);
        for (std::size_t i = 0; expected.size() < depth; ++i) expected.push_back(cf.term(i));
    } else {
        if (x.empty()) throw domain_error("cutseq: --x or --period is required");
        const Fraction f = parse_fraction(x);
        w = cutting_sequence(f, depth);
        const ContinuedFraction cf = cf_from_fraction(f);
        expected.assign(cf.quotients().begin(), cf.quotients().end());
    }
    std::vector<Quotient> blocks = w.blocks();
    // An unterminated word ends inside a block; only complete blocks are compared.
    if (!w.terminated) blocks.pop_back();
    const bool agrees = blocks.size() <= expected.size() && std::equal(blocks.begin(), blocks.end(), expected.begin());
    r.scalar("word", w.to_string());
    r.scalar("terminated", w.terminated);
    r.scalar("blocks", join_quotients(w.blocks()));
    r.scalar("quotients", join_quotients(std::vector<Quotient>(expected.begin(),
                                                                expected.begin() + std::min(expected.size(), blocks.size() + 1))));
    r.scalar("blocks_match_quotients", agrees);
    return r;
}

}  // namespace detail

/// Parses `args` (program name excluded) and runs the chosen pipeline.
inline Invocation dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Farey-Brocot partitions, multifractal spectra and the circle-map staircase", "farey"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.fallthrough();
    std::string format = "csv";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    unsigned level = 12;
    auto* partition = app.add_subcommand("partition", "Level-N Farey-Brocot partition of [0, 1]");
    partition->add_option("--level", level, "Partition level")->check(CLI::Range(1u, kDefaultLevelCap));

    std::string kind = "lengths";
    std::vector<double> contractors{0.25, 0.75};
    double lo = -5, hi = 5;
    std::size_t points = 201;
    auto* spectrum = app.add_subcommand("spectrum", "Euclidean multifractal spectra");
    spectrum->add_option("--kind", kind, "lengths, probs, inverted or duality");
    spectrum->add_option("--contractors", contractors, "Comma-separated contractors")->delimiter(',');
    spectrum->add_option("--grid-lo", lo, "Parameter grid start");
    spectrum->add_option("--grid-hi", hi, "Parameter grid end");
    spectrum->add_option("--points", points, "Parameter grid size")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));

    std::size_t jmax = 64;
    std::vector<double> lambdas;
    auto* fbdim = app.add_subcommand("fb-dim", "Information dimension of the Farey-Brocot measure");
    fbdim->add_option("--jmax", jmax, "Series truncation");
    fbdim->add_option("--lambda", lambdas, "Emit key-frequency ratio profiles at these Lagrange values")->delimiter(',');

    std::vector<std::size_t> ks{1, 2, 4, 8, 16, 32, 64};
    auto* ekdim = app.add_subcommand("ek-dim", "Dimension of E_k, quotients bounded by k");
    ekdim->add_option("--k", ks, "Comma-separated bounds")->delimiter(',');

    unsigned n_min = 8, n_max = 20;
    std::string mode = "besicovitch";
    auto* statdim = app.add_subcommand("stat-dim", "Statistical dimension log 2 / log A from the restricted tree");
    statdim->add_option("--n-min", n_min, "First row")->check(CLI::Range(4u, 22u));
    statdim->add_option("--n-max", n_max, "Last row")->check(CLI::Range(4u, 22u));
    statdim->add_option("--mode", mode, "besicovitch or exact");

    unsigned c_min = 2, c_max = 16;
    auto* cen = app.add_subcommand("census", "Partial-quotient census against closed forms");
    cen->add_option("--n-min", c_min, "First row")->check(CLI::Range(2u, 22u));
    cen->add_option("--n-max", c_max, "Last row")->check(CLI::Range(2u, 22u));

    unsigned s_min = 1, s_max = 7;
    double tol = 1e-12;
    auto* stair = app.add_subcommand("staircase", "Circle-map plateaus, gap covers and dimension estimate");
    stair->add_option("--level-min", s_min, "First level")->check(CLI::Range(1u, 8u));
    stair->add_option("--level-max", s_max, "Last level")->check(CLI::Range(1u, 8u));
    stair->add_option("--tol", tol, "Plateau edge tolerance")->check(CLI::PositiveNumber);

    std::string x, prefix, period;
    std::size_t depth = 30;
    auto* cut = app.add_subcommand("cutseq", "T/F cutting sequence of a vertical geodesic");
    cut->add_option("--x", x, "Rational endpoint p/q in (0, 1]");
    cut->add_option("--prefix", prefix, "Pre-period quotients of a periodic continued fraction");
    cut->add_option("--period", period, "Period quotients of a periodic continued fraction");
    cut->add_option("--depth", depth, "Number of letters")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));

    Invocation inv;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        inv.help = true;
        inv.help_text = app.help();
        for (auto* sub : app.get_subcommands()) inv.help_text = sub->help();
        return inv;
    } catch (const CLI::ParseError& e) {
        throw usage_error(e.what(), app.help());
    }
    inv.format = format == "json" ? Format::json : Format::csv;

    CLI::App* sub = app.get_subcommands().front();
    Report& r = inv.report;
    if (sub == partition) {
        r = detail::partition_report(level);
    } else if (sub == spectrum) {
        r = detail::spectrum_report(kind, contractors, detail::grid(lo, hi, points));
    } else if (sub == fbdim) {
        r = detail::fb_dim_report(jmax, lambdas);
    } else if (sub == ekdim) {
        r = detail::ek_dim_report(ks);
    } else if (sub == statdim) {
        if (n_min > n_max) throw ordering_error("stat-dim: need n-min <= n-max");
        r = detail::stat_dim_report(n_min, n_max, mode);
    } else if (sub == cen) {
        r = detail::census_report(c_min, c_max);
    } else if (sub == stair) {
        r = detail::staircase_report(s_min, s_max, tol);
    } else {
        r = detail::cutseq_report(x, prefix, period, depth);
    }
    r.command = sub->get_name();
    // Record every option of the subcommand with its effective value, in declaration order.
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_name() == "--help") continue;
        std::string name = opt->get_name();
        name.erase(0, name.find_first_not_of('-'));
        std::string value;
        for (const std::string& s : opt->results()) value += (value.empty() ? "" : ",") + s;
        if (value.empty()) value = opt->get_default_str();
        if (value.size() >= 2 && (value.front() == '[' || value.front() == '{') &&
            (value.back() == ']' || value.back() == '}'))
            value = value.substr(1, value.size() - 2);
        r.parameters.emplace_back(name, value);
    }
    return inv;
}

/// Runs one command line, writing the payload to `out` and diagnostics to `err`.
/// Exit codes: 0 success, 2 invalid input, 3 numeric failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const Invocation inv = dispatch(args);
        if (inv.help) {
            out << inv.help_text;
            return 0;
        }
        out << serialize(inv.report, inv.format);
        return 0;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n\n" << e.usage();
        return 2;
    } catch (const numeric_error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace farey::cli
