// icm — moment exponents of ideal-class counting functions.
//
// Subcommands:
//   fixtures list   inventory of built-in group fixtures
//   exponent        rho(chi,beta), rho(beta), extremal set for a fixture
//   cusp-classify   cuspidal characters, orbits, vanishing, rho_cusp, (**)
//   quad            exact ideal-class counting tables for a discriminant
//   moments         partial-sum series and exponent fits over a table
//   eta-verify      D = -23 character coefficients against eta(z)eta(23z)
//   synthetic       Chebotarev-sampled coefficient streams and their fits
//
// Exit codes: 0 success, 2 validation failure, 3 cross-check failure.

#include "icm/eta.hpp"
#include "icm/fixtures.hpp"
#include "icm/io.hpp"
#include "icm/moments.hpp"
#include "icm/quadform.hpp"
#include "icm/sampler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace icm;
using nlohmann::json;

namespace {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw Error("beta: denominator must be positive");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw Error("cannot parse rational: " + s);
    }
}

std::vector<Rat> parse_beta_grid(const std::vector<std::string>& raw) {
    std::vector<Rat> out;
    for (const auto& s : raw) out.push_back(parse_rat(s));
    return out;
}

DomainFilter parse_filter(const std::string& s) {
    if (s == "all") return DomainFilter::All;
    if (s == "squarefree") return DomainFilter::Squarefree;
    if (s == "coprime-f") return DomainFilter::CoprimeF;
    throw Error("unknown filter: " + s);
}

// A frame plus the canonical description string that goes into the manifest.
struct FrameChoice {
    GaloisFrame frame;
    std::string desc;
};

FrameChoice resolve_frame(const std::string& fixture, long long disc) {
    if (disc != 0) {
        FormClassGroup cls = form_class_group(disc);
        return {quad_frame(cls), "quad:" + std::to_string(disc)};
    }
    if (fixture.empty()) throw Error("need --fixture or --disc");
    for (const auto& name : builtin_fixture_names())
        if (name == fixture) {
            FixtureSpec spec = builtin_fixture(name);
            return {build_frame(spec), to_json(spec).dump()};
        }
    std::ifstream is(fixture);
    if (!is) throw BadFixture("no such fixture or file: " + fixture);
    json j = json::parse(is);
    FixtureSpec spec = fixture_from_json(j);
    return {build_frame(spec), j.dump()};
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty())
        std::cout << content;
    else
        write_text_file(out, content);
}

void announce_manifest(const json& manifest) { std::cerr << manifest.dump() << "\n"; }

std::vector<double> eps_grid_for(long long X) {
    double lo = 3.0 / std::log(static_cast<double>(X));
    std::vector<double> eps;
    for (int i = 0; i < 5; ++i) eps.push_back(lo * std::pow(1.2, i));
    return eps;
}

json fits_json(const MomentSeries& series, const std::vector<double>& abs_coeffs, double power,
               DomainFilter filter, const std::vector<std::int32_t>* spf, long long f) {
    json j;
    j["series"] = to_json(series);
    try {
        j["log_fit"] = to_json(fit_log_exponent(series));
    } catch (const Error& e) {
        j["log_fit"] = {{"error", e.what()}};
    }
    try {
        long long X = series.xs.back();
        j["dirichlet_fit"] =
            to_json(dirichlet_exponent(abs_coeffs, power, eps_grid_for(X), filter, spf, f));
    } catch (const Error& e) {
        j["dirichlet_fit"] = {{"error", e.what()}};
    }
    return j;
}

// ---------------------------------------------------------------------------

int cmd_fixtures_list(const std::string& out, const std::string& format) {
    if (format == "json") {
        json j = json::array();
        for (const auto& n : builtin_fixture_names()) j.push_back(n);
        emit(out, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& n : builtin_fixture_names()) os << n << "\n";
        os << "(quadratic frames: use --disc D on the other subcommands)\n";
        emit(out, os.str());
    }
    return 0;
}

int cmd_exponent(const std::string& fixture, long long disc, const std::vector<std::string>& beta,
                 const std::string& out, const std::string& format) {
    FrameChoice fc = resolve_frame(fixture, disc);
    std::vector<Rat> grid = parse_beta_grid(beta);
    json report = exponent_report(fc.frame, grid);
    json manifest = run_manifest(fc.desc, 0, {{"command", "exponent"}});
    announce_manifest(manifest);
    if (format == "csv") {
        std::ostringstream os;
        os << "kind,index,order,beta,value,extremal\n";
        for (std::size_t b = 0; b < grid.size(); ++b)
            os << "rho_max,,," << to_double(grid[b]) << ','
               << report["rho_max"][b]["rho_max"].get<double>() << ",\n";
        for (const auto& row : report["characters"])
            for (std::size_t b = 0; b < grid.size(); ++b)
                os << "rho_char," << row["index"].get<int>() << ',' << row["order"].get<long>()
                   << ',' << to_double(grid[b]) << ',' << row["rho"][b].get<double>() << ','
                   << (row["extremal"].get<bool>() ? 1 : 0) << '\n';
        emit(out, os.str());
    } else {
        report["manifest"] = manifest;
        emit(out, report.dump(2) + "\n");
    }
    return 0;
}

int cmd_cusp_classify(const std::string& fixture, long long disc,
                      const std::vector<std::string>& beta, const std::string& out,
                      const std::string& format) {
    FrameChoice fc = resolve_frame(fixture, disc);
    std::vector<Rat> grid = parse_beta_grid(beta);
    CuspidalReport R = cuspidal_report(fc.frame, grid);
    json report = cusp_report_json(fc.frame, R);
    json manifest = run_manifest(fc.desc, 0, {{"command", "cusp-classify"}});
    announce_manifest(manifest);
    if (format == "csv") {
        std::ostringstream os;
        os << "sigma,vanishes,beta,rho_cusp,star_star\n";
        for (const auto& row : R.per_sigma)
            for (std::size_t b = 0; b < grid.size(); ++b) {
                os << row.sigma << ',' << (row.vanishes ? 1 : 0) << ',' << to_double(grid[b])
                   << ',';
                if (row.rho_cusp[b]) os << *row.rho_cusp[b];
                os << ',' << (row.star_star[b] ? 1 : 0) << '\n';
            }
        emit(out, os.str());
    } else {
        report["manifest"] = manifest;
        emit(out, report.dump(2) + "\n");
    }
    return 0;
}

int cmd_quad(long long disc, long long xmax, const std::string& out, const std::string& format,
             const std::string& binary_out) {
    CoefficientTable T = ideal_class_counts(disc, xmax);
    json manifest = run_manifest("quad:" + std::to_string(disc), 0,
                                 {{"command", "quad"}, {"xmax", xmax}});
    announce_manifest(manifest);
    if (!binary_out.empty()) save_coefficient_table(binary_out, T);
    if (format == "csv") {
        std::ostringstream os;
        write_table_csv(os, T);
        emit(out, os.str());
    } else {
        json j;
        j["D"] = T.disc.D;
        j["D0"] = T.disc.D0;
        j["f"] = T.disc.f;
        j["w"] = T.disc.w;
        j["h"] = T.group.h();
        json forms = json::array();
        for (const auto& g : T.group.forms) forms.push_back({g.a, g.b, g.c});
        j["forms"] = forms;
        j["X"] = T.X;
        j["manifest"] = manifest;
        emit(out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_moments(long long disc, long long xmax, long power,
                const std::optional<std::string>& beta, const std::string& filter_s, int sigma,
                const std::string& series_kind, const std::string& out,
                const std::string& format) {
    DomainFilter filter = parse_filter(filter_s);
    CoefficientTable T = ideal_class_counts(disc, xmax);
    if (sigma < 0 || sigma >= T.group.h()) throw Error("moments: sigma out of range");

    std::vector<double> abs_coeffs(static_cast<std::size_t>(xmax) + 1, 0.0);
    if (series_kind == "class") {
        for (long long n = 1; n <= xmax; ++n)
            if (T.in_domain(n)) abs_coeffs[n] = T.a[sigma][n];
    } else if (series_kind == "total") {
        for (long long n = 1; n <= xmax; ++n)
            if (T.in_domain(n))
                for (int s = 0; s < T.group.h(); ++s) abs_coeffs[n] += T.a[s][n];
    } else if (series_kind == "cusp") {
        auto cusp = cusp_coefficients(T, sigma);
        for (long long n = 1; n <= xmax; ++n)
            if (T.in_domain(n)) abs_coeffs[n] = std::abs(to_double(cusp[n]));
    } else {
        throw Error("moments: unknown series kind " + series_kind);
    }

    double p = beta ? 2.0 * to_double(parse_rat(*beta)) : static_cast<double>(power);
    auto grid = geometric_grid(std::max<long long>(16, xmax / 64), xmax);
    std::vector<std::int32_t> spf;
    const std::vector<std::int32_t>* spfp = nullptr;
    if (filter == DomainFilter::Squarefree) {
        spf = smallest_prime_factor(xmax);
        spfp = &spf;
    }
    std::string source = "quad:" + std::to_string(disc) + ":" + series_kind + ":" +
                         std::to_string(sigma);
    MomentSeries series = partial_sums(abs_coeffs, p, grid, filter, spfp, T.disc.f, source);

    json manifest = run_manifest(source, 0,
                                 {{"command", "moments"}, {"xmax", xmax}, {"power", p}});
    announce_manifest(manifest);
    if (format == "csv") {
        std::ostringstream os;
        write_moment_csv(os, series);
        emit(out, os.str());
    } else {
        json j = fits_json(series, abs_coeffs, p, filter, spfp, T.disc.f);
        j["manifest"] = manifest;
        emit(out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_eta_verify(long long xmax, const std::string& out, const std::string& format) {
    long long n_max = std::min<long long>(xmax, 5000);
    CoefficientTable T = ideal_class_counts(-23, n_max);
    auto chars = dual_group(T.group.structure);
    const DualCharacter& chi = chars[1];  // nontrivial, order 3
    auto a_chi = char_coefficients(T, chi);
    auto eta = eta_product_coeffs({{1, 1}, {23, 1}}, n_max);
    long long mismatches = 0;
    for (long long n = 1; n <= n_max; ++n)
        if (a_chi[n] != Cyclotomic(eta[n])) ++mismatches;
    json manifest = run_manifest("quad:-23", 0, {{"command", "eta-verify"}, {"xmax", n_max}});
    announce_manifest(manifest);
    if (format == "csv") {
        std::ostringstream os;
        write_eta_csv(os, eta);
        emit(out, os.str());
    } else {
        json j;
        j["n_max"] = n_max;
        j["mismatches"] = mismatches;
        j["verified"] = (mismatches == 0);
        j["manifest"] = manifest;
        emit(out, j.dump(2) + "\n");
    }
    if (mismatches != 0) {
        std::cerr << "eta-verify: " << mismatches << " mismatching coefficients\n";
        return 3;
    }
    return 0;
}

int cmd_synthetic(const std::string& fixture, long long disc, long long xmax, std::uint64_t seed,
                  long power, const std::optional<std::string>& beta,
                  const std::string& filter_s, int chi_index, const std::string& out,
                  const std::string& format) {
    DomainFilter filter = parse_filter(filter_s);
    FrameChoice fc = resolve_frame(fixture, disc);
    auto chars = dual_group(fc.frame);
    if (chi_index < 0 || chi_index >= static_cast<int>(chars.size()))
        throw Error("synthetic: character index out of range");
    FrobeniusAssignment A = assign(fc.frame, xmax, seed);

    auto cc = synthetic_char_coeffs(A, chars[chi_index], xmax);
    std::vector<double> abs_coeffs(cc.size());
    for (std::size_t i = 0; i < cc.size(); ++i) abs_coeffs[i] = std::abs(cc[i]);

    double p = beta ? 2.0 * to_double(parse_rat(*beta)) : static_cast<double>(power);
    auto grid = geometric_grid(std::max<long long>(16, xmax / 64), xmax);
    std::string source = fixture.empty() ? "quad:" + std::to_string(disc) : fixture;
    source += ":chi" + std::to_string(chi_index);
    MomentSeries series =
        partial_sums(abs_coeffs, p, grid, filter, &A.spf, 1, source);

    json manifest = run_manifest(fc.desc, seed,
                                 {{"command", "synthetic"},
                                  {"xmax", xmax},
                                  {"power", p},
                                  {"chi", chi_index}});
    announce_manifest(manifest);
    if (format == "csv") {
        std::ostringstream os;
        write_moment_csv(os, series);
        emit(out, os.str());
    } else {
        json j = fits_json(series, abs_coeffs, p, filter, &A.spf, 1);
        j["manifest"] = manifest;
        emit(out, j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment exponents of ideal-class counting functions"};
    app.require_subcommand(1);

    std::string fixture, out, format = "json", filter = "all", series_kind = "class";
    std::optional<std::string> beta_single;
    std::vector<std::string> beta_grid{"1/2", "1", "3/2", "2", "3"};
    long long disc = 0, xmax = 100000;
    long power = 2;
    int sigma = 0, chi_index = 0;
    std::uint64_t seed = 1;
    std::string binary_out;

    auto add_common = [&](CLI::App* cmd, bool with_frame) {
        if (with_frame) {
            cmd->add_option("--fixture", fixture, "built-in fixture name or JSON file");
            cmd->add_option("--disc", disc, "imaginary quadratic discriminant (negative)");
        }
        cmd->add_option("--out", out, "output file (default: stdout)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* fixtures = app.add_subcommand("fixtures", "fixture inventory");
    CLI::App* fx_list = fixtures->add_subcommand("list", "list built-in fixtures");
    add_common(fx_list, false);

    CLI::App* exponent = app.add_subcommand("exponent", "rho(chi,beta) and rho(beta)");
    add_common(exponent, true);
    exponent->add_option("--beta", beta_grid, "beta grid, exact rationals like 3/2");

    CLI::App* cusp = app.add_subcommand("cusp-classify", "cuspidal classification");
    add_common(cusp, true);
    cusp->add_option("--beta", beta_grid, "beta grid, exact rationals like 3/2");

    CLI::App* quad = app.add_subcommand("quad", "exact ideal-class counting table");
    add_common(quad, false);
    quad->add_option("--disc", disc, "discriminant")->required();
    quad->add_option("--xmax", xmax, "table bound");
    quad->add_option("--binary-out", binary_out, "also persist the binary table here");

    CLI::App* moments = app.add_subcommand("moments", "partial sums and exponent fits");
    add_common(moments, false);
    moments->add_option("--disc", disc, "discriminant")->required();
    moments->add_option("--xmax", xmax, "coefficient bound");
    moments->add_option("--power", power, "integer moment k");
    moments->add_option("--beta", beta_single, "use power 2*beta instead of k");
    moments->add_option("--filter", filter, "domain filter")
        ->check(CLI::IsMember({"all", "squarefree", "coprime-f"}));
    moments->add_option("--sigma", sigma, "class index");
    moments->add_option("--series", series_kind, "series kind")
        ->check(CLI::IsMember({"class", "cusp", "total"}));

    CLI::App* eta = app.add_subcommand("eta-verify", "D=-23 eta-product identity");
    add_common(eta, false);
    eta->add_option("--xmax", xmax, "verify n <= min(xmax, 5000)");

    CLI::App* synth = app.add_subcommand("synthetic", "Chebotarev-sampled streams");
    add_common(synth, true);
    synth->add_option("--xmax", xmax, "stream bound");
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--power", power, "moment power (applied to |a|)");
    synth->add_option("--beta", beta_single, "use power 2*beta instead");
    synth->add_option("--filter", filter, "domain filter")
        ->check(CLI::IsMember({"all", "squarefree", "coprime-f"}));
    synth->add_option("--chi", chi_index, "character index in the dual enumeration");
    synth->parse_complete_callback([&] {
        if (!synth->count("--filter")) filter = "squarefree";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fx_list->parsed()) return cmd_fixtures_list(out, format);
        if (exponent->parsed()) return cmd_exponent(fixture, disc, beta_grid, out, format);
        if (cusp->parsed()) return cmd_cusp_classify(fixture, disc, beta_grid, out, format);
        if (quad->parsed()) return cmd_quad(disc, xmax, out, format, binary_out);
        if (moments->parsed())
            return cmd_moments(disc, xmax, power, beta_single, filter, sigma, series_kind, out,
                               format);
        if (eta->parsed()) return cmd_eta_verify(xmax, out, format);
        if (synth->parsed())
            return cmd_synthetic(fixture, disc, xmax, seed, power, beta_single, filter, chi_index,
                                 out, format);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const CrossCheckMismatch& e) {
        std::cerr << "cross-check failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
