#include "lovegeo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lovegeo/numerics.hpp"

namespace lovegeo::io {

using nlohmann::json;

std::string format_sig15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", v);
  return buf;
}

double sig15_round(double v) { return std::strtod(format_sig15(v).c_str(), nullptr); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open for writing: " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw DomainError("malformed number: '" + s + "'");
  return v;
}

// Key=value tokens on a "# lovegeo-<kind> ..." header line.
std::map<std::string, std::string> parse_header(const std::string& line,
                                                const std::string& kind) {
  const std::string tag = "# lovegeo-" + kind;
  if (line.rfind(tag, 0) != 0)
    throw DomainError("missing '" + tag + "' header");
  std::map<std::string, std::string> kv;
  std::istringstream ss(line.substr(tag.size()));
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

json profile_to_json_obj(const rotational::ProfileCurve& curve) {
  const auto diag = rotational::diagnostics_serial(curve);
  json samples = json::array();
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& sm = curve.samples[i];
    samples.push_back({{"tau", sig15_round(sm.tau)},
                       {"s", sig15_round(sm.s)},
                       {"sdot", sig15_round(sm.sdot)},
                       {"t", sig15_round(sm.t)},
                       {"sigma2k_residual", sig15_round(diag[i].sigma2k_normalized)},
                       {"first_integral", sig15_round(diag[i].first_integral)}});
  }
  return json{{"format", "lovegeo-profile"},
              {"n", curve.dims.n},
              {"k", curve.dims.k},
              {"c", sig15_round(curve.c)},
              {"generalized", curve.generalized},
              {"samples", samples}};
}

// Rebuilds the in-memory state from the serialized columns.  1 - sdot^2 is
// recovered from the stored first integral (which keeps full precision far
// out on the end); sddot is the constraint acceleration at that state.
rotational::ProfileCurve rebuild_curve(int n, int k, double c, bool generalized,
                                       const std::vector<std::array<double, 6>>& rows) {
  DimensionPair dims{n, k};
  rotational::ProfileCurve curve{dims, c, generalized, {}};
  curve.samples.reserve(rows.size());
  for (const auto& row : rows) {
    rotational::ProfileSample sm;
    sm.tau = row[0];
    sm.s = row[1];
    sm.sdot = row[2];
    sm.t = row[3];
    if (!(sm.s > 0.0)) throw DomainError("profile sample with s <= 0");
    const double ci = row[5];
    sm.one_minus_sdot2 =
        std::max(ci / pow_real(sm.s, dims.potential_exponent()), 0.0);
    sm.sddot = rotational::ode_sddot(sm.s, sm.one_minus_sdot2, dims);
    sm.two_c_target = 2.0 * c;
    curve.samples.push_back(sm);
  }
  return curve;
}

}  // namespace

std::string profile_to_csv(const rotational::ProfileCurve& curve) {
  const auto diag = rotational::diagnostics_serial(curve);
  std::ostringstream out;
  out << "# lovegeo-profile n=" << curve.dims.n << " k=" << curve.dims.k
      << " c=" << format_sig15(curve.c)
      << " generalized=" << (curve.generalized ? 1 : 0) << "\n";
  out << "tau,s,sdot,t,sigma2k_residual,first_integral\n";
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& sm = curve.samples[i];
    out << format_sig15(sm.tau) << ',' << format_sig15(sm.s) << ','
        << format_sig15(sm.sdot) << ',' << format_sig15(sm.t) << ','
        << format_sig15(diag[i].sigma2k_normalized) << ','
        << format_sig15(diag[i].first_integral) << "\n";
  }
  return out.str();
}

rotational::ProfileCurve profile_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty profile file");
  const auto kv = parse_header(line, "profile");
  const int n = static_cast<int>(parse_num(kv.at("n")));
  const int k = static_cast<int>(parse_num(kv.at("k")));
  const double c = parse_num(kv.at("c"));
  const bool generalized = kv.count("generalized") && kv.at("generalized") == "1";
  if (!std::getline(in, line)) throw DomainError("profile file missing columns");
  std::vector<std::array<double, 6>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 6) throw DomainError("profile row needs 6 columns");
    std::array<double, 6> row{};
    for (int i = 0; i < 6; ++i) row[i] = parse_num(cells[i]);
    rows.push_back(row);
  }
  if (rows.empty()) throw DomainError("profile file has no samples");
  return rebuild_curve(n, k, c, generalized, rows);
}

std::string profile_to_json(const rotational::ProfileCurve& curve) {
  return profile_to_json_obj(curve).dump(2) + "\n";
}

namespace {

rotational::ProfileCurve profile_from_json_obj(const json& j) {
  if (!j.contains("samples")) throw DomainError("profile json missing samples");
  std::vector<std::array<double, 6>> rows;
  for (const auto& sm : j.at("samples"))
    rows.push_back({sm.at("tau").get<double>(), sm.at("s").get<double>(),
                    sm.at("sdot").get<double>(), sm.at("t").get<double>(),
                    sm.value("sigma2k_residual", 0.0),
                    sm.at("first_integral").get<double>()});
  if (rows.empty()) throw DomainError("profile json has no samples");
  return rebuild_curve(j.at("n").get<int>(), j.at("k").get<int>(),
                       j.at("c").get<double>(), j.value("generalized", false),
                       rows);
}

}  // namespace

rotational::ProfileCurve profile_from_json(const std::string& text) {
  return profile_from_json_obj(json::parse(text));
}

std::string doubled_to_json(const rotational::ProfileCurve& upper,
                            const rotational::ProfileCurve& lower) {
  return json{{"format", "lovegeo-doubled"},
              {"upper", profile_to_json_obj(upper)},
              {"lower", profile_to_json_obj(lower)}}
             .dump(2) +
         "\n";
}

std::pair<rotational::ProfileCurve, rotational::ProfileCurve> doubled_from_json(
    const std::string& text) {
  const json j = json::parse(text);
  return {profile_from_json_obj(j.at("upper")),
          profile_from_json_obj(j.at("lower"))};
}

std::string grid_to_csv(const graphgeom::GridData& grid) {
  std::ostringstream out;
  out << "# lovegeo-grid n=" << grid.n << " spacing=" << format_sig15(grid.spacing)
      << " origin=";
  for (int d = 0; d < grid.n; ++d)
    out << (d ? ";" : "") << format_sig15(grid.origin[d]);
  out << " extents=";
  for (int d = 0; d < grid.n; ++d) out << (d ? ";" : "") << grid.extents[d];
  out << "\n";
  for (double v : grid.values) out << format_sig15(v) << "\n";
  return out.str();
}

graphgeom::GridData grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty grid file");
  const auto kv = parse_header(line, "grid");
  graphgeom::GridData grid;
  grid.n = static_cast<int>(parse_num(kv.at("n")));
  grid.spacing = parse_num(kv.at("spacing"));
  grid.origin.resize(grid.n);
  const auto ov = split(kv.at("origin"), ';');
  const auto ev = split(kv.at("extents"), ';');
  if (static_cast<int>(ov.size()) != grid.n ||
      static_cast<int>(ev.size()) != grid.n)
    throw DomainError("grid header origin/extents arity mismatch");
  for (int d = 0; d < grid.n; ++d) {
    grid.origin[d] = parse_num(ov[d]);
    grid.extents.push_back(static_cast<int>(parse_num(ev[d])));
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    grid.values.push_back(parse_num(line));
  }
  if (grid.values.size() != grid.size())
    throw DomainError("grid value count does not match extents");
  return grid;
}

std::string grid_to_json(const graphgeom::GridData& grid) {
  json origin = json::array(), values = json::array();
  for (int d = 0; d < grid.n; ++d) origin.push_back(sig15_round(grid.origin[d]));
  for (double v : grid.values) values.push_back(sig15_round(v));
  return json{{"format", "lovegeo-grid"},
              {"n", grid.n},
              {"spacing", sig15_round(grid.spacing)},
              {"origin", origin},
              {"extents", grid.extents},
              {"values", values}}
             .dump(2) +
         "\n";
}

graphgeom::GridData grid_from_json(const std::string& text) {
  const json j = json::parse(text);
  graphgeom::GridData grid;
  grid.n = j.at("n").get<int>();
  grid.spacing = j.at("spacing").get<double>();
  grid.origin.resize(grid.n);
  for (int d = 0; d < grid.n; ++d) grid.origin[d] = j.at("origin")[d].get<double>();
  grid.extents = j.at("extents").get<std::vector<int>>();
  grid.values = j.at("values").get<std::vector<double>>();
  if (grid.values.size() != grid.size())
    throw DomainError("grid value count does not match extents");
  return grid;
}

std::string samples_to_csv(std::span<const asymptotics::FitSample> samples) {
  if (samples.empty()) throw DomainError("samples_to_csv: no samples");
  const int n = static_cast<int>(samples.front().x.size());
  std::ostringstream out;
  for (int d = 0; d < n; ++d) out << "x" << (d + 1) << ',';
  out << "u\n";
  for (const auto& sample : samples) {
    for (int d = 0; d < n; ++d) out << format_sig15(sample.x[d]) << ',';
    out << format_sig15(sample.u) << "\n";
  }
  return out.str();
}

std::vector<asymptotics::FitSample> samples_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty samples file");
  const auto header = split(line, ',');
  if (header.size() < 2 || header.back() != "u")
    throw DomainError("samples file needs columns x1..xn,u");
  const int n = static_cast<int>(header.size()) - 1;
  std::vector<asymptotics::FitSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != n + 1)
      throw DomainError("samples row arity mismatch");
    asymptotics::FitSample sample;
    sample.x.resize(n);
    for (int d = 0; d < n; ++d) sample.x[d] = parse_num(cells[d]);
    sample.u = parse_num(cells[n]);
    out.push_back(std::move(sample));
  }
  if (out.empty()) throw DomainError("samples file has no rows");
  return out;
}

std::string expansion_to_json(const asymptotics::ExpansionParams& params) {
  json cvec = json::array();
  for (Eigen::Index i = 0; i < params.c.size(); ++i)
    cvec.push_back(sig15_round(params.c[i]));
  json j{{"regime", asymptotics::to_string(params.regime)},
         {"a", sig15_round(params.a)},
         {"a1", sig15_round(params.a1)},
         {"c", cvec},
         {"mass", sig15_round(params.mass())},
         {"residual_norm", sig15_round(params.residual_norm)},
         {"condition", sig15_round(params.condition)}};
  if (params.a2) j["a2"] = sig15_round(*params.a2);
  if (params.log_coeff) j["log_coeff"] = sig15_round(*params.log_coeff);
  return j.dump(2) + "\n";
}

std::string flux_report_to_json(const massflux::FluxReport& report) {
  return json{{"cycle_radius", sig15_round(report.cycle_radius)},
              {"raw_flux", sig15_round(report.raw_flux)},
              {"calibrated_mass", sig15_round(report.calibrated_mass)},
              {"homology_drift", sig15_round(report.homology_drift)}}
             .dump(2) +
         "\n";
}

namespace {

json penrose_to_json_obj(const massflux::PenroseReport& r) {
  return json{{"name", r.name},
              {"mass", sig15_round(r.mass)},
              {"horizon_area", sig15_round(r.horizon_area)},
              {"bound", sig15_round(r.bound)},
              {"gap", sig15_round(r.gap)},
              {"pass", r.pass}};
}

}  // namespace

std::string penrose_reports_to_json(
    std::span<const massflux::PenroseReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(penrose_to_json_obj(r));
  return arr.dump(2) + "\n";
}

std::string penrose_reports_to_csv(
    std::span<const massflux::PenroseReport> reports) {
  std::ostringstream out;
  out << "name,mass,horizon_area,bound,gap,verdict\n";
  for (const auto& r : reports)
    out << r.name << ',' << format_sig15(r.mass) << ','
        << format_sig15(r.horizon_area) << ',' << format_sig15(r.bound) << ','
        << format_sig15(r.gap) << ',' << (r.pass ? "pass" : "fail") << "\n";
  return out.str();
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  SweepSpec spec{DimensionPair(j.at("n").get<int>(), j.at("k").get<int>()),
                 {},
                 {}};
  if (j.contains("r_eval_factor"))
    spec.config.r_eval_factor = j.at("r_eval_factor").get<double>();
  if (j.contains("r_eval_min"))
    spec.config.r_eval_min = j.at("r_eval_min").get<double>();
  for (const auto& member : j.at("members")) {
    massflux::SweepMember sm;
    sm.name = member.value("name", std::string("member") +
                                        std::to_string(spec.members.size()));
    const std::string type = member.at("type").get<std::string>();
    if (type == "const") {
      const double m = member.at("m").get<double>();
      if (!(m > 0.0)) throw DomainError("sweep member needs m > 0");
      sm.c.value = [m](double) { return m; };
      sm.c.deriv = [](double) { return 0.0; };
    } else if (type == "tanh") {
      const double m = member.at("m").get<double>();
      const double s0 = member.at("s0").get<double>();
      const double w = member.at("w").get<double>();
      if (!(m > 0.0) || !(w > 0.0))
        throw DomainError("tanh sweep member needs m > 0 and w > 0");
      sm.c.value = [m, s0, w](double s) {
        return m * (1.0 + std::tanh((s - s0) / w));
      };
      sm.c.deriv = [m, s0, w](double s) {
        const double ch = std::cosh((s - s0) / w);
        return m / (w * ch * ch);
      };
    } else {
      throw DomainError("unknown sweep member type: " + type);
    }
    spec.members.push_back(std::move(sm));
  }
  if (spec.members.empty()) throw DomainError("sweep spec has no members");
  return spec;
}

std::string sniff_format(const std::string& text) {
  if (text.rfind("# lovegeo-profile", 0) == 0) return "profile";
  if (text.rfind("# lovegeo-grid", 0) == 0) return "grid";
  const auto first_non_space = text.find_first_not_of(" \t\r\n");
  if (first_non_space != std::string::npos && text[first_non_space] == '{') {
    const json j = json::parse(text);
    const std::string fmt = j.value("format", "");
    if (fmt == "lovegeo-profile") return "profile";
    if (fmt == "lovegeo-grid") return "grid";
    if (fmt == "lovegeo-doubled") return "doubled";
    throw DomainError("unrecognized json format tag: '" + fmt + "'");
  }
  if (text.rfind("x1,", 0) == 0) return "samples";
  throw DomainError("unrecognized input format");
}

}  // namespace lovegeo::io
