#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lovegeo/asymptotics.hpp"
#include "lovegeo/graphgeom.hpp"
#include "lovegeo/massflux.hpp"
#include "lovegeo/rotational.hpp"

namespace lovegeo::io {

// All numeric output is fixed at 15 significant digits in scientific
// notation so identical runs emit byte-identical files.
std::string format_sig15(double v);
double sig15_round(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Profile curves: CSV columns tau, s, sdot, t, sigma2k_residual,
// first_integral under a one-line header carrying (n, k, c); JSON mirror.
std::string profile_to_csv(const rotational::ProfileCurve& curve);
std::string profile_to_json(const rotational::ProfileCurve& curve);
rotational::ProfileCurve profile_from_csv(const std::string& text);
rotational::ProfileCurve profile_from_json(const std::string& text);

// Two-sheet container: {"upper": <profile>, "lower": <profile>}.
std::string doubled_to_json(const rotational::ProfileCurve& upper,
                            const rotational::ProfileCurve& lower);
std::pair<rotational::ProfileCurve, rotational::ProfileCurve> doubled_from_json(
    const std::string& text);

// Height-field grids: header (n, spacing, origin, extents) + row-major
// values, as CSV or JSON.
std::string grid_to_csv(const graphgeom::GridData& grid);
std::string grid_to_json(const graphgeom::GridData& grid);
graphgeom::GridData grid_from_csv(const std::string& text);
graphgeom::GridData grid_from_json(const std::string& text);

// Fit samples: CSV with columns x1..xn, u.
std::string samples_to_csv(std::span<const asymptotics::FitSample> samples);
std::vector<asymptotics::FitSample> samples_from_csv(const std::string& text);

std::string expansion_to_json(const asymptotics::ExpansionParams& params);
std::string flux_report_to_json(const massflux::FluxReport& report);
std::string penrose_reports_to_json(
    std::span<const massflux::PenroseReport> reports);
std::string penrose_reports_to_csv(
    std::span<const massflux::PenroseReport> reports);

// Sweep specification: dims plus a list of first-integral members
// ("const" with m, or "tanh" with m, s0, w).
struct SweepSpec {
  DimensionPair dims{3, 1};
  massflux::SweepConfig config;
  std::vector<massflux::SweepMember> members;
};
SweepSpec sweep_spec_from_json(const std::string& text);

// Detects which lovegeo format a file holds ("profile", "doubled", "grid",
// "samples") from its extension and header.
std::string sniff_format(const std::string& text);

}  // namespace lovegeo::io
