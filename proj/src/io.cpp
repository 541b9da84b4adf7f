#include "lcycle/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lcycle {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw domain_error("config: cannot parse " + what + " value '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw domain_error("config: cannot parse " + what + " value '" + s + "'");
    return static_cast<int>(v);
}

}  // namespace

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw domain_error("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw domain_error("config: line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "a") cfg.params.a = parse_double(val, key);
        else if (key == "b") cfg.params.b = parse_double(val, key);
        else if (key == "u") cfg.params.u = parse_double(val, key);
        else if (key == "v") cfg.params.v = parse_double(val, key);
        else if (key == "lambda0") cfg.params.lambda0 = parse_double(val, key);
        else if (key == "epsilon") cfg.params.epsilon = parse_double(val, key);
        else if (key == "n") cfg.params.n = parse_int(val, key);
        else if (key == "mu") cfg.params.mu = parse_int(val, key);
        else if (key == "beta") cfg.params.beta = parse_int(val, key);
        else if (key == "tol") cfg.tol = parse_double(val, key);
        else if (key == "ode_tol") cfg.ode_tol = parse_double(val, key);
        else throw domain_error("config: unknown key '" + key + "' on line " + std::to_string(lineno));
    }
}

std::string table_to_csv(const std::vector<DetectionSample>& samples, bool paper_scale,
                         OrbitFamilyId family) {
    const bool scale = paper_scale && family != OrbitFamilyId::Gamma2;
    std::string out = scale ? "h,cu_rho,cv_omega,area\n" : "h,cu,cv,area\n";
    const double f = scale ? 1e-4 : 1.0;
    for (const auto& s : samples) {
        out += format_full(s.h);
        out += ',';
        out += format_full(s.cu * f);
        out += ',';
        out += format_full(s.cv * f);
        out += ',';
        out += format_full(s.area);
        out += '\n';
    }
    return out;
}

std::vector<TableRow> parse_table_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<TableRow> rows;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        TableRow r{};
        double* fields[4] = {&r.h, &r.cu, &r.cv, &r.area};
        std::size_t pos = 0;
        for (int i = 0; i < 4; ++i) {
            const auto comma = line.find(',', pos);
            const std::string cell =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            *fields[i] = parse_double(cell, "csv cell");
            pos = comma == std::string::npos ? line.size() : comma + 1;
        }
        rows.push_back(r);
    }
    return rows;
}

const char* stability_name(Stability s) { return s == Stability::stable ? "stable" : "unstable"; }

namespace {

std::string finding_lines(const std::vector<CycleFinding>& findings, const std::string& indent) {
    std::string out;
    for (const auto& f : findings) {
        out += indent + "family: " + family_name(f.family) + "\n";
        out += indent + "h_root: " + format_full(f.h_root) + "\n";
        out += indent + "slope: " + format_full(f.slope) + "\n";
        out += indent + "stability: " + stability_name(f.stability) + "\n";
        out += indent + "count: " + std::to_string(f.count) + "\n";
        if (f.near_critical) out += indent + "near_critical: true\n";
    }
    return out;
}

std::string bound_str(double x) {
    if (std::isinf(x)) return x < 0 ? "-inf" : "+inf";
    return format_full(x);
}

}  // namespace

std::string bands_report(const std::vector<Band>& bands, const SystemParams& p) {
    std::string out;
    out += "# lambda bands: constant cycle pattern between consecutive breakpoints\n";
    out += "u: " + format_full(p.u) + "\n";
    out += "v: " + format_full(p.v) + "\n";
    out += "n: " + std::to_string(p.n) + "\n";
    int idx = 0;
    for (const auto& b : bands) {
        out += "\nband: " + std::to_string(idx++) + "\n";
        out += "lambda_lo: " + bound_str(b.lo) + "\n";
        out += "lambda_hi: " + bound_str(b.hi) + "\n";
        for (int f = 0; f < 4; ++f)
            out += std::string("roots_") + family_name(static_cast<OrbitFamilyId>(f + 1)) + ": " +
                   std::to_string(b.counts[f]) + "\n";
        out += "total_cycles: " + std::to_string(b.total) + "\n";
        out += finding_lines(b.findings, "  ");
    }
    return out;
}

std::string distribution_report(const DistributionReport& rep) {
    std::string out;
    out += "lambda0: " + format_full(rep.lambda0) + "\n";
    out += "total_cycles: " + std::to_string(rep.total) + "\n";
    out += "band_lo: " + bound_str(rep.band_lo) + "\n";
    out += "band_hi: " + bound_str(rep.band_hi) + "\n";
    out += "findings: " + std::to_string(rep.findings.size()) + "\n";
    out += finding_lines(rep.findings, "  ");
    for (const auto& w : rep.warnings)
        out += "warning: " + std::string(family_name(w.family)) + " h=" + format_full(w.h) + " " +
               w.message + "\n";
    return out;
}

std::string verification_report(const std::vector<VerificationRecord>& recs) {
    std::string out;
    int idx = 0;
    for (const auto& r : recs) {
        out += "verification: " + std::to_string(idx++) + "\n";
        out += "  family: " + std::string(family_name(r.finding.family)) + "\n";
        out += "  predicted_h: " + format_full(r.finding.h_root) + "\n";
        out += "  predicted_stability: " + std::string(stability_name(r.finding.stability)) + "\n";
        out += "  fixed_point_found: " + std::string(r.fixed_point_found ? "true" : "false") + "\n";
        if (r.fixed_point_found) {
            out += "  located_h: " + format_full(r.h_star) + "\n";
            out += "  h_gap: " + format_full(r.h_gap) + "\n";
            out += "  return_derivative: " + format_full(r.return_derivative) + "\n";
            out += "  observed_stability: " + std::string(stability_name(r.observed)) + "\n";
            out += "  stability_match: " + std::string(r.stability_match ? "true" : "false") + "\n";
        }
        out += "  status: " + r.message + "\n";
    }
    if (recs.empty()) out = "no findings\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw domain_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw domain_error("write failed for '" + path + "'");
}

}  // namespace lcycle
