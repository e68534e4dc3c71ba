#pragma once

// Persistence and report emission:
//   - moment series and eta coefficients as CSV
//   - coefficient tables as a flat binary layout (header D, X, h, f, w; then
//     per-class little-endian 32-bit counts) plus a CSV export
//   - exponent / cuspidal reports and estimate records as JSON
//   - per-run manifests (fixture hash, seed, version) for reproducibility

#include "icm/chartheory.hpp"
#include "icm/moments.hpp"
#include "icm/quadform.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace icm {

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_moment_csv(std::ostream& os, const MomentSeries& s) {
    os << "x,S,domain,power,source\n";
    os.precision(17);
    for (std::size_t i = 0; i < s.xs.size(); ++i)
        os << s.xs[i] << ',' << s.S[i] << ',' << filter_name(s.domain) << ',' << s.power << ','
           << s.source << '\n';
}

inline void write_eta_csv(std::ostream& os, const std::vector<long long>& coeffs) {
    os << "n,c\n";
    for (std::size_t n = 1; n < coeffs.size(); ++n) os << n << ',' << coeffs[n] << '\n';
}

inline void write_table_csv(std::ostream& os, const CoefficientTable& T) {
    os << "n";
    for (int s = 0; s < T.group.h(); ++s) os << ",a" << s;
    os << '\n';
    for (long long n = 1; n <= T.X; ++n) {
        if (!T.in_domain(n)) continue;
        os << n;
        for (int s = 0; s < T.group.h(); ++s) os << ',' << T.a[s][n];
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// Binary coefficient tables
// ---------------------------------------------------------------------------

namespace detail {

inline void put_le64(std::ostream& os, std::int64_t v) {
    unsigned char b[8];
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline void put_le32(std::ostream& os, std::int32_t v) {
    unsigned char b[4];
    auto u = static_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::int64_t get_le64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return static_cast<std::int64_t>(u);
}

inline std::int32_t get_le32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t u = 0;
    for (int i = 0; i < 4; ++i) u |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return static_cast<std::int32_t>(u);
}

}  // namespace detail

// Layout: int64 D, int64 X, int32 h, int32 f, int32 w, then h blocks of X
// little-endian uint32 counts a(sigma, n) for n = 1..X (zeros off-domain).
inline void save_coefficient_table(std::ostream& os, const CoefficientTable& T) {
    detail::put_le64(os, T.disc.D);
    detail::put_le64(os, T.X);
    detail::put_le32(os, T.group.h());
    detail::put_le32(os, static_cast<std::int32_t>(T.disc.f));
    detail::put_le32(os, static_cast<std::int32_t>(T.disc.w));
    for (int s = 0; s < T.group.h(); ++s)
        for (long long n = 1; n <= T.X; ++n) {
            std::uint32_t v = T.in_domain(n) ? T.a[s][n] : 0;
            detail::put_le32(os, static_cast<std::int32_t>(v));
        }
}

inline void save_coefficient_table(const std::string& path, const CoefficientTable& T) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("save_coefficient_table: cannot open " + path);
    save_coefficient_table(os, T);
}

// Rebuilds the class group from the stored discriminant and validates the
// header against it; the counts themselves are taken from the file.
inline CoefficientTable load_coefficient_table(std::istream& is) {
    std::int64_t D = detail::get_le64(is);
    std::int64_t X = detail::get_le64(is);
    std::int32_t h = detail::get_le32(is);
    std::int32_t f = detail::get_le32(is);
    std::int32_t w = detail::get_le32(is);
    if (!is) throw Error("load_coefficient_table: truncated header");
    QuadDiscriminant disc(D);
    CoefficientTable T{disc, X, form_class_group(disc), {}, {}};
    if (T.group.h() != h || T.disc.f != f || T.disc.w != w)
        throw CrossCheckMismatch("load_coefficient_table: header disagrees with rebuilt group");
    T.a.assign(h, std::vector<std::uint32_t>(X + 1, 0));
    for (int s = 0; s < h; ++s)
        for (long long n = 1; n <= X; ++n)
            T.a[s][n] = static_cast<std::uint32_t>(detail::get_le32(is));
    if (!is) throw Error("load_coefficient_table: truncated payload");
    // r is recoverable on the domain via r = w * a; off-domain entries are not
    // persisted, so leave r empty to mark the table as count-only
    return T;
}

inline CoefficientTable load_coefficient_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("load_coefficient_table: cannot open " + path);
    return load_coefficient_table(is);
}

// ---------------------------------------------------------------------------
// JSON reports
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ExponentEstimate& e) {
    return {{"rho_hat", e.rho_hat}, {"stderr", e.stderr_}, {"method", e.method}};
}

inline nlohmann::json to_json(const MomentSeries& s) {
    nlohmann::json checkpoints = nlohmann::json::array();
    for (std::size_t i = 0; i < s.xs.size(); ++i)
        checkpoints.push_back({{"x", s.xs[i]}, {"S", s.S[i]}});
    return {{"checkpoints", checkpoints},
            {"domain", filter_name(s.domain)},
            {"power", s.power},
            {"source", s.source}};
}

// Per-character exponent table: rho(chi, beta) over the grid, rho(beta), and
// extremal membership.
inline nlohmann::json exponent_report(const GaloisFrame& F, const std::vector<Rat>& beta_grid) {
    auto chars = dual_group(F);
    std::vector<ClassFunction> induced;
    for (const auto& c : chars) induced.push_back(induce(F, c));
    std::vector<int> X = extremal_set(F, chars, induced);

    nlohmann::json j;
    j["group_order"] = F.G.order();
    j["index_GH"] = F.index_GH();
    j["class_number"] = F.N.order();
    nlohmann::json betas = nlohmann::json::array();
    for (const Rat& b : beta_grid) {
        nlohmann::json row;
        row["beta"] = to_double(b);
        auto rm = rho_max_exact(F, b);
        row["rho_max"] = rm ? to_double(*rm) : rho_max_numeric(F, to_double(b));
        row["exact"] = rm.has_value();
        betas.push_back(row);
    }
    j["rho_max"] = betas;
    nlohmann::json cj = nlohmann::json::array();
    for (std::size_t i = 0; i < chars.size(); ++i) {
        nlohmann::json row;
        row["index"] = i;
        row["order"] = chars[i].order;
        row["extremal"] = std::find(X.begin(), X.end(), static_cast<int>(i)) != X.end();
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : induced[i].values) vals.push_back(v.str());
        row["induced"] = vals;
        nlohmann::json rhos = nlohmann::json::array();
        for (const Rat& b : beta_grid) {
            auto r = rho_char_exact(F, induced[i], b);
            rhos.push_back(r ? to_double(*r) : rho_char_numeric(F, induced[i], to_double(b)));
        }
        row["rho"] = rhos;
        cj.push_back(row);
    }
    j["characters"] = cj;
    return j;
}

// Cuspidal classification: per character (cuspidal flag, orbit id), per sigma
// (vanishing flag, rho_cusp over the grid, star-star flag).
inline nlohmann::json cusp_report_json(const GaloisFrame& F, const CuspidalReport& R) {
    nlohmann::json j;
    nlohmann::json betas = nlohmann::json::array();
    for (const Rat& b : R.beta_grid) betas.push_back(to_double(b));
    j["beta_grid"] = betas;

    std::vector<int> orbit_of(R.chars.size(), -1);
    for (std::size_t o = 0; o < R.orbits.size(); ++o)
        for (int i : R.orbits[o]) orbit_of[i] = static_cast<int>(o);

    nlohmann::json cj = nlohmann::json::array();
    for (std::size_t i = 0; i < R.chars.size(); ++i) {
        nlohmann::json row;
        row["index"] = i;
        row["order"] = R.chars[i].order;
        row["cuspidal"] = orbit_of[i] >= 0;
        if (orbit_of[i] >= 0) row["orbit"] = orbit_of[i];
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : R.induced[i].values) vals.push_back(v.str());
        row["induced"] = vals;
        cj.push_back(row);
    }
    j["characters"] = cj;
    j["orbit_representatives"] = R.reps;

    nlohmann::json sj = nlohmann::json::array();
    for (const auto& row : R.per_sigma) {
        nlohmann::json r;
        r["sigma"] = row.sigma;
        r["vanishes"] = row.vanishes;
        nlohmann::json rc = nlohmann::json::array();
        for (const auto& v : row.rho_cusp)
            rc.push_back(v ? nlohmann::json(*v) : nlohmann::json());
        r["rho_cusp"] = rc;
        nlohmann::json ss = nlohmann::json::array();
        for (bool b : row.star_star) ss.push_back(b);
        r["star_star"] = ss;
        sj.push_back(r);
    }
    j["per_sigma"] = sj;
    return j;
}

// ---------------------------------------------------------------------------
// Run manifests
// ---------------------------------------------------------------------------

// FNV-1a, enough to fingerprint a fixture for reproducibility bookkeeping.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline nlohmann::json run_manifest(const std::string& fixture_desc, std::uint64_t seed,
                                   const nlohmann::json& params = nlohmann::json::object()) {
    std::ostringstream hash;
    hash << std::hex << fnv1a64(fixture_desc);
    return {{"fixture_hash", hash.str()},
            {"seed", seed},
            {"version", kVersion},
            {"params", params}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw Error("write_text_file: cannot open " + path);
    os << content;
}

}  // namespace icm
