#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcycle/cycles.hpp"
#include "lcycle/ode.hpp"
#include "lcycle/params.hpp"

namespace lcycle {

/// Full run configuration: model constants, grids, tolerances, output.
struct RunConfig {
    SystemParams params;
    std::optional<double> h_start, h_end, h_step;  ///< grid override for table/curve
    double tol = 1e-9;      ///< quadrature tolerance
    double ode_tol = 1e-10;  ///< integrator tolerance
    std::string output_path;
    bool paper_scale = false;  ///< divide (cu, cv) by 1e4 for families 1, 3, 4

    void validate() const {
        params.validate();
        if (!(tol > 0.0) || !(ode_tol > 0.0))
            throw domain_error("RunConfig: tolerances must be > 0");
    }
};

/// Parse a flat `key = value` config file (UTF-8, LF, # comments).
/// Recognised keys: a b u v lambda0 epsilon n mu beta tol ode_tol.
/// Unknown keys are rejected.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Serialise a double with 17 significant digits (round-trips bit-exactly).
std::string format_full(double x);

struct TableRow {
    double h, cu, cv, area;
};

/// RFC-4180-style CSV with header `h,cu,cv,area` (or `h,cu_rho,cv_omega,area`
/// under paper scaling), '.' decimals, LF line endings.
std::string table_to_csv(const std::vector<DetectionSample>& samples, bool paper_scale,
                         OrbitFamilyId family);
std::vector<TableRow> parse_table_csv(const std::string& text);

std::string bands_report(const std::vector<Band>& bands, const SystemParams& p);
std::string distribution_report(const DistributionReport& rep);
std::string verification_report(const std::vector<VerificationRecord>& recs);

void write_file(const std::string& path, const std::string& content);

const char* stability_name(Stability s);

}  // namespace lcycle
