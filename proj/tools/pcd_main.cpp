#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcd/digraph.hpp"
#include "pcd/inference.hpp"
#include "pcd/montecarlo.hpp"
#include "pcd/version.hpp"

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct PointData {
  std::vector<pcd::Point2> ys;
  std::vector<pcd::Point2> xs;
};

PointData read_points_csv(const std::string& path, const std::string& x_label,
                          const std::string& y_label) {
  std::ifstream in(path);
  if (!in) throw pcd::Error("cannot open input file: " + path);
  std::string line;
  do {  // '#' lines carry provenance metadata
    if (!std::getline(in, line)) throw pcd::Error("empty input file: " + path);
  } while (!trim(line).empty() && trim(line)[0] == '#');
  auto header = split(trim(line), ',');
  if (header.size() != 3 || lower(trim(header[0])) != "x" ||
      lower(trim(header[1])) != "y" || lower(trim(header[2])) != "class")
    throw pcd::Error("malformed CSV header, expected: x,y,class");

  PointData data;
  const std::string xl = lower(x_label), yl = lower(y_label);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    auto fields = split(t, ',');
    if (fields.size() != 3)
      throw pcd::Error("malformed CSV row at line " + std::to_string(lineno));
    pcd::Point2 p;
    try {
      p.x = std::stod(trim(fields[0]));
      p.y = std::stod(trim(fields[1]));
    } catch (const std::exception&) {
      throw pcd::Error("bad coordinate at line " + std::to_string(lineno));
    }
    if (!pcd::is_finite(p))
      throw pcd::Error("non-finite coordinate at line " + std::to_string(lineno));
    const std::string label = lower(trim(fields[2]));
    if (label.empty())
      throw pcd::Error("empty class label at line " + std::to_string(lineno));
    if (label == xl)
      data.xs.push_back(p);
    else if (label == yl)
      data.ys.push_back(p);
    // other labels are ignored
  }
  return data;
}

void write_points_csv(const std::string& path,
                      const std::vector<pcd::Point2>& ys,
                      const std::vector<pcd::Point2>& xs,
                      const std::string& x_label, const std::string& y_label,
                      const std::string& meta) {
  std::ofstream out(path);
  if (!out) throw pcd::Error("cannot open output file: " + path);
  if (!meta.empty()) out << "# " << meta << '\n';
  out << "x,y,class\n";
  for (const auto& p : ys)
    out << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << y_label << '\n';
  for (const auto& p : xs)
    out << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << x_label << '\n';
}

std::string direction_name(pcd::Direction d) {
  switch (d) {
    case pcd::Direction::Segregation: return "segregation";
    case pcd::Direction::Association: return "association";
    case pcd::Direction::TwoSided: return "two-sided";
  }
  return "?";
}

pcd::Direction parse_direction(const std::string& s) {
  const std::string l = lower(s);
  if (l == "segregation") return pcd::Direction::Segregation;
  if (l == "association") return pcd::Direction::Association;
  if (l == "two-sided" || l == "twosided") return pcd::Direction::TwoSided;
  throw pcd::Error("unknown direction: " + s);
}

std::vector<double> parse_tau_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw pcd::Error("tau grid range must be a:b:step");
    const double a = std::stod(parts[0]), b = std::stod(parts[1]),
                 step = std::stod(parts[2]);
    if (step <= 0.0) throw pcd::Error("tau grid step must be positive");
    for (double t = a; t <= b + 1e-12; t += step) grid.push_back(t);
  } else {
    for (const auto& tok : split(spec, ','))
      if (!trim(tok).empty()) grid.push_back(std::stod(trim(tok)));
  }
  if (grid.empty()) throw pcd::Error("tau grid is empty");
  return grid;
}

json test_result_json(const pcd::TestResult& r,
                      const std::vector<double>& weights) {
  json j;
  j["rho"] = r.rho;
  j["n"] = r.n;
  j["J"] = r.J;
  j["tau"] = r.tau;
  j["mu"] = r.mu_used;
  j["nu"] = r.nu_used;
  j["R"] = r.R;
  j["p_value"] = r.p_value;
  j["direction"] = direction_name(r.direction);
  j["excluded_count"] = r.excluded_count;
  j["weights"] = weights;
  j["version"] = pcd::kVersion;
  return j;
}

int cmd_test(const std::string& input, double tau, const std::string& dir_s,
             double alpha, const std::string& format,
             const std::string& output, bool exit_on_reject,
             const std::string& x_label, const std::string& y_label) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    std::cerr << "error: degenerate statistic at tau=" << tau
              << " (tau must lie in (0,1])\n";
    return 1;
  }
  const PointData data = read_points_csv(input, x_label, y_label);
  if (data.ys.size() < 3) throw pcd::Error("need at least 3 Y-labeled points");
  const pcd::Triangulation tri = pcd::triangulate(data.ys);
  const pcd::Pcd d = pcd::build_pcd(tri, data.xs, pcd::TauParam(tau));
  if (d.n < 2)
    throw pcd::Error("need at least 2 X-labeled points inside the hull");
  const double rho = pcd::relative_density(d);
  const pcd::Direction dir = parse_direction(dir_s);
  const pcd::TestResult r = pcd::run_test(rho, d.n, tau, tri.weights(), dir,
                                          d.excluded_count);

  std::string text;
  if (format == "json") {
    text = test_result_json(r, tri.weights()).dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "rho,n,J,tau,mu,nu,R,p_value,direction,excluded_count,weights,version\n";
    os << fmt_double(r.rho) << ',' << r.n << ',' << r.J << ','
       << fmt_double(r.tau) << ',' << fmt_double(r.mu_used) << ','
       << fmt_double(r.nu_used) << ',' << fmt_double(r.R) << ','
       << fmt_double(r.p_value) << ',' << direction_name(r.direction) << ','
       << r.excluded_count << ',';
    for (std::size_t i = 0; i < tri.weights().size(); ++i)
      os << (i ? ";" : "") << fmt_double(tri.weights()[i]);
    os << ',' << pcd::kVersion << '\n';
    text = os.str();
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw pcd::Error("cannot open output file: " + output);
    out << text;
  }
  if (exit_on_reject && r.p_value < alpha) return 2;
  return 0;
}

int cmd_generate(const std::string& pattern_s, double eps, int n,
                 const std::string& y_file, uint64_t seed,
                 const std::string& output, const std::string& x_label,
                 const std::string& y_label) {
  pcd::PatternSpec spec;
  const std::string p = lower(pattern_s);
  if (p == "null" || p == "csr")
    spec = pcd::PatternSpec::null_csr();
  else if (p == "segregation")
    spec = pcd::PatternSpec::segregation(eps);
  else if (p == "association")
    spec = pcd::PatternSpec::association(eps);
  else
    throw pcd::Error("unknown pattern: " + pattern_s);

  std::vector<pcd::Point2> ys;
  if (y_file.empty()) {
    const pcd::Triangle& t = pcd::standard_equilateral();
    ys = {t.v(0), t.v(1), t.v(2)};
  } else {
    ys = read_points_csv(y_file, x_label, y_label).ys;
    if (ys.size() < 3) throw pcd::Error("need at least 3 Y-labeled points");
  }
  if (pcd::corner_overlap(spec))
    std::cerr << "warning: corner regions overlap at this epsilon; sampling "
                 "remains exact via rejection\n";
  const pcd::Triangulation tri = pcd::triangulate(ys);
  pcd::SeededRng rng(seed, 0);
  const auto xs = pcd::sample_pattern(rng, tri, spec, n);
  std::ostringstream meta;
  meta << "version=" << pcd::kVersion << " seed=" << seed << " pattern=" << p;
  if (spec.kind != pcd::PatternSpec::Kind::NullCsr)
    meta << " eps=" << fmt_double(eps);
  meta << " n=" << n;
  write_points_csv(output, ys, xs, x_label, y_label, meta.str());
  return 0;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pcd::Error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw pcd::Error("config line " + std::to_string(lineno) +
                       " is not key=value");
    kv[lower(trim(t.substr(0, eq)))] = trim(t.substr(eq + 1));
  }
  return kv;
}

int cmd_power(const std::string& config_path, const std::string& prefix,
              int threads_override, const std::string& rho_samples_out,
              const std::string& x_label, const std::string& y_label) {
  const auto kv = read_config(config_path);
  pcd::ExperimentConfig cfg;
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    const auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  if (auto v = get("n")) cfg.n = std::stoi(*v);
  if (auto v = get("replicates")) cfg.replicates = std::stoi(*v);
  if (auto v = get("tau_grid")) cfg.tau_grid = parse_tau_grid(*v);
  if (auto v = get("alpha")) cfg.alpha = std::stod(*v);
  if (auto v = get("seed")) cfg.seed = std::stoull(*v);
  if (auto v = get("threads")) cfg.threads = std::stoi(*v);
  double eps = 0.0;
  if (auto v = get("eps")) eps = std::stod(*v);
  std::string pattern = "null";
  if (auto v = get("pattern")) pattern = lower(*v);
  if (pattern == "null" || pattern == "csr")
    cfg.pattern = pcd::PatternSpec::null_csr();
  else if (pattern == "segregation")
    cfg.pattern = pcd::PatternSpec::segregation(eps);
  else if (pattern == "association")
    cfg.pattern = pcd::PatternSpec::association(eps);
  else
    throw pcd::Error("unknown pattern in config: " + pattern);
  if (auto v = get("direction")) cfg.direction = parse_direction(*v);
  if (auto v = get("y_points_file"))
    cfg.y_points = read_points_csv(*v, x_label, y_label).ys;
  if (threads_override > 0) cfg.threads = threads_override;

  const pcd::PowerReport rep = pcd::estimate_size_power(cfg);

  const bool has_power = !rep.rows.empty() && rep.rows.front().power.has_value();
  {
    std::ofstream out(prefix + ".csv");
    if (!out) throw pcd::Error("cannot open output file: " + prefix + ".csv");
    out << "# version=" << pcd::kVersion << " seed=" << rep.seed
        << " n=" << rep.n << " replicates=" << rep.replicates
        << " alpha=" << fmt_double(rep.alpha)
        << " direction=" << direction_name(rep.direction)
        << " pattern=" << pattern
        << (pattern == "null" ? std::string()
                              : " eps=" + std::string(fmt_double(eps)))
        << '\n';
    out << (has_power ? "tau,size,size_se,power,power_se,replicates\n"
                      : "tau,size,size_se,replicates\n");
    for (const auto& row : rep.rows) {
      out << fmt_double(row.tau) << ',' << fmt_double(row.size) << ','
          << fmt_double(row.size_se);
      if (has_power)
        out << ',' << fmt_double(*row.power) << ',' << fmt_double(*row.power_se);
      out << ',' << row.replicates << '\n';
    }
  }
  {
    json j;
    j["version"] = pcd::kVersion;
    j["seed"] = rep.seed;
    j["n"] = rep.n;
    j["replicates"] = rep.replicates;
    j["alpha"] = rep.alpha;
    j["direction"] = direction_name(rep.direction);
    j["J"] = rep.J;
    j["weights"] = rep.weights;
    j["elapsed_seconds"] = rep.elapsed_seconds;
    switch (rep.pattern.kind) {
      case pcd::PatternSpec::Kind::NullCsr: j["pattern"] = "null"; break;
      case pcd::PatternSpec::Kind::Segregation:
        j["pattern"] = "segregation";
        j["eps"] = rep.pattern.eps;
        break;
      case pcd::PatternSpec::Kind::Association:
        j["pattern"] = "association";
        j["eps"] = rep.pattern.eps;
        break;
    }
    json rows = json::array();
    for (const auto& row : rep.rows) {
      json r;
      r["tau"] = row.tau;
      r["size"] = row.size;
      r["size_se"] = row.size_se;
      if (row.power) {
        r["power"] = *row.power;
        r["power_se"] = *row.power_se;
        r["degenerate_regime"] = row.degenerate_regime;
      }
      rows.push_back(r);
    }
    j["rows"] = rows;
    std::ofstream out(prefix + ".json");
    if (!out) throw pcd::Error("cannot open output file: " + prefix + ".json");
    out << j.dump(2) << "\n";
  }

  if (!rho_samples_out.empty()) {
    // raw replicate densities plus kernel density data, one file per tau
    for (double tau : cfg.tau_grid) {
      const auto rhos = pcd::simulate_rho_distribution(cfg, tau);
      const pcd::KdeResult kde = pcd::gaussian_kde(rhos);
      json j;
      j["version"] = pcd::kVersion;
      j["seed"] = cfg.seed;
      j["tau"] = tau;
      j["samples"] = rhos;
      j["kde_grid"] = kde.grid;
      j["kde_density"] = kde.density;
      j["kde_bandwidth"] = kde.bandwidth;
      char name[64];
      std::snprintf(name, sizeof(name), "%s_rho_tau%.4f.json",
                    rho_samples_out.c_str(), tau);
      std::ofstream out(name);
      if (!out) throw pcd::Error(std::string("cannot open output file: ") + name);
      out << j.dump(2) << "\n";
    }
  }

  for (const auto& row : rep.rows)
    if (row.degenerate_regime)
      std::cerr << "warning: tau=" << row.tau
                << " lies outside the asymptotic-normality region for this "
                   "alternative\n";
  return 0;
}

int cmd_pae(const std::string& kind_s, const std::string& grid_s,
            const std::string& output) {
  const std::string k = lower(kind_s);
  pcd::AltKind kind;
  if (k == "segregation")
    kind = pcd::AltKind::Segregation;
  else if (k == "association")
    kind = pcd::AltKind::Association;
  else
    throw pcd::Error("unknown kind: " + kind_s);
  const auto grid = parse_tau_grid(grid_s);
  for (double t : grid)
    if (!(t > 0.0 && t <= 1.0))
      throw pcd::Error("pae tau grid must lie in (0, 1]");

  std::ostringstream os;
  os << "# version=" << pcd::kVersion << " kind=" << k
     << " grid=" << grid_s << "\n";
  os << "tau,pae,status\n";
  for (double tau : grid) {
    os << fmt_double(tau) << ',';
    try {
      os << fmt_double(pcd::pitman_efficiency(tau, kind)) << ",ok\n";
    } catch (const pcd::NumericalInstability&) {
      os << "nan,unstable\n";
    }
  }
  if (output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(output);
    if (!out) throw pcd::Error("cannot open output file: " + output);
    out << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relative-density spatial pattern tests on proximity catch digraphs"};
  app.require_subcommand(1);

  std::string x_label = "X", y_label = "Y";
  app.add_option("--x-label", x_label, "class label of the tested points");
  app.add_option("--y-label", y_label, "class label of the reference points");

  auto* test = app.add_subcommand("test", "run the test on a CSV of points");
  std::string t_input, t_dir = "two-sided", t_format = "json", t_output;
  double t_tau = 1.0, t_alpha = 0.05;
  bool t_reject = false;
  test->add_option("--input,-i", t_input, "input CSV (x,y,class)")->required();
  test->add_option("--tau", t_tau, "expansion parameter in (0,1]");
  test->add_option("--direction", t_dir, "segregation|association|two-sided");
  test->add_option("--alpha", t_alpha, "significance level");
  test->add_option("--format", t_format, "json|csv");
  test->add_option("--output,-o", t_output, "output file (stdout by default)");
  test->add_flag("--exit-on-reject", t_reject,
                 "exit status 2 when rejecting at alpha");

  auto* gen = app.add_subcommand("generate", "sample a pattern to CSV");
  std::string g_pattern = "null", g_yfile, g_output;
  double g_eps = 0.0;
  int g_n = 100;
  uint64_t g_seed = 1;
  gen->add_option("--pattern", g_pattern, "null|segregation|association");
  gen->add_option("--eps", g_eps, "pattern epsilon, in (0, sqrt(3)/3)");
  gen->add_option("--n", g_n, "number of X points")->required();
  gen->add_option("--y-points", g_yfile,
                  "CSV of reference points (default: standard equilateral)");
  gen->add_option("--seed", g_seed, "random seed");
  gen->add_option("--output,-o", g_output, "output CSV path")->required();

  auto* power = app.add_subcommand("power", "size/power simulation campaign");
  std::string p_config, p_prefix = "power_report", p_rho_out;
  int p_threads = 0;
  power->add_option("--config", p_config, "key=value config file")->required();
  power->add_option("--output-prefix", p_prefix, "output path prefix");
  power->add_option("--threads", p_threads, "worker thread cap");
  power->add_option("--rho-samples-out", p_rho_out,
                    "also write per-tau density samples + KDE (path prefix)");

  auto* pae = app.add_subcommand("pae", "Pitman asymptotic efficiency curve");
  std::string e_kind, e_grid, e_output;
  pae->add_option("--kind", e_kind, "segregation|association")->required();
  pae->add_option("--tau-grid", e_grid, "comma list or a:b:step")->required();
  pae->add_option("--output,-o", e_output, "output CSV (stdout by default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (test->parsed())
      return cmd_test(t_input, t_tau, t_dir, t_alpha, t_format, t_output,
                      t_reject, x_label, y_label);
    if (gen->parsed())
      return cmd_generate(g_pattern, g_eps, g_n, g_yfile, g_seed, g_output,
                          x_label, y_label);
    if (power->parsed())
      return cmd_power(p_config, p_prefix, p_threads, p_rho_out, x_label,
                       y_label);
    if (pae->parsed()) return cmd_pae(e_kind, e_grid, e_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
