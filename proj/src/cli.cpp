#include "slepian/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "slepian/dist.hpp"
#include "slepian/errors.hpp"
#include "slepian/moments.hpp"
#include "slepian/special.hpp"
#include "slepian/validate.hpp"

namespace slepian::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string format_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Range {
  double lo;
  double hi;
  long steps;

  double point(long i) const {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

// Parses "lo:hi:steps" where steps is the number of points.
std::optional<Range> parse_range(const std::string& text) {
  std::size_t c1 = text.find(':');
  if (c1 == std::string::npos) return std::nullopt;
  std::size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    return std::nullopt;
  try {
    std::size_t used = 0;
    std::string lo_text = text.substr(0, c1);
    std::string hi_text = text.substr(c1 + 1, c2 - c1 - 1);
    std::string steps_text = text.substr(c2 + 1);
    double lo = std::stod(lo_text, &used);
    if (used != lo_text.size()) return std::nullopt;
    double hi = std::stod(hi_text, &used);
    if (used != hi_text.size()) return std::nullopt;
    long steps = std::stol(steps_text, &used);
    if (used != steps_text.size()) return std::nullopt;
    if (!std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
    if (steps < 1 || steps > 100000000) return std::nullopt;
    if (lo > hi) return std::nullopt;
    return Range{lo, hi, steps};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

enum class Format { csv, json };

// One output row as ordered (key, value) pairs, shared by the CSV and
// NDJSON writers so both formats carry identical columns.
using Row = std::vector<std::pair<const char*, double>>;

void write_rows(const std::vector<Row>& data, Format format, std::ostream& out) {
  if (data.empty()) return;
  if (format == Format::csv) {
    std::string header;
    for (const auto& column : data.front()) {
      if (!header.empty()) header += ',';
      header += column.first;
    }
    out << header << '\n';
    for (const Row& row : data) {
      std::string line;
      for (const auto& [key, value] : row) {
        if (!line.empty()) line += ',';
        line += format_num(value);
      }
      out << line << '\n';
    }
  } else {
    for (const Row& row : data) {
      std::string line = "{";
      bool first = true;
      for (const auto& [key, value] : row) {
        if (!first) line += ',';
        first = false;
        line += '"';
        line += key;
        line += "\":";
        line += format_num(value);
      }
      line += '}';
      out << line << '\n';
    }
  }
}

int usage_error(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Running-maximum distribution of the sliding-window increment process"};
  app.require_subcommand(1);

  std::string format_text = "csv";
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_text, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  double cdf_s = 0.0;
  std::string cdf_m;
  CLI::App* cdf_cmd = app.add_subcommand("cdf", "Running-maximum CDF over a level grid");
  cdf_cmd->add_option("--s", cdf_s, "Window offset in [0,1]")->required();
  cdf_cmd->add_option("--m", cdf_m, "Level grid lo:hi:steps")->required();
  add_format(cdf_cmd);

  double pdf_s = 0.0;
  std::string pdf_m;
  CLI::App* pdf_cmd = app.add_subcommand("pdf", "Running-maximum density over a level grid");
  pdf_cmd->add_option("--s", pdf_s, "Window offset in [0,1]")->required();
  pdf_cmd->add_option("--m", pdf_m, "Level grid lo:hi:steps")->required();
  add_format(pdf_cmd);

  double joint_m = 0.0, joint_M = 0.0, joint_s = 0.0, joint_t = 0.0;
  CLI::App* joint_cmd = app.add_subcommand("joint", "Joint running-maximum CDF at one point");
  joint_cmd->add_option("--m", joint_m, "Level for the earlier offset")->required();
  joint_cmd->add_option("--M", joint_M, "Level for the later offset")->required();
  joint_cmd->add_option("--s", joint_s, "Earlier offset")->required();
  joint_cmd->add_option("--t", joint_t, "Later offset")->required();
  add_format(joint_cmd);

  std::string moments_s;
  CLI::App* moments_cmd =
      app.add_subcommand("moments", "Closed-form moments over an offset grid");
  moments_cmd->add_option("--s", moments_s, "Offset grid lo:hi:steps")->required();
  add_format(moments_cmd);

  long long val_paths = 1'000'000;
  double val_grid = 1e-4;
  std::uint64_t val_seed = 42;
  int val_workers = 0;
  std::string val_scope = "all";
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Compare analytic results against simulation oracles");
  validate_cmd->add_option("--paths", val_paths, "Simulated paths");
  validate_cmd->add_option("--grid", val_grid, "Simulation step size");
  validate_cmd->add_option("--seed", val_seed, "Master seed");
  validate_cmd->add_option("--workers", val_workers, "Worker threads (0 = auto)");
  validate_cmd->add_option("--scope", val_scope, "Comparison scope")
      ->check(CLI::IsMember({"marginal", "joint", "moments", "bridge", "all"}));
  add_format(validate_cmd);

  std::vector<const char*> argv;
  argv.push_back("slepian");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Format format = format_text == "json" ? Format::json : Format::csv;

  try {
    if (cdf_cmd->parsed() || pdf_cmd->parsed()) {
      bool density = pdf_cmd->parsed();
      double s = density ? pdf_s : cdf_s;
      const std::string& range_text = density ? pdf_m : cdf_m;
      if (!(s >= 0.0 && s <= 1.0))
        return usage_error(err, "--s must lie in [0,1]");
      std::optional<Range> range = parse_range(range_text);
      if (!range) return usage_error(err, "--m must be a grid lo:hi:steps");
      std::vector<Row> data;
      data.reserve(static_cast<std::size_t>(range->steps));
      for (long i = 0; i < range->steps; ++i) {
        double m = range->point(i);
        double value;
        if (density)
          value = s == 0.0 ? special::std_normal_pdf(m) : dist::running_max_pdf({m, s});
        else
          value = dist::running_max_cdf({m, s});
        data.push_back({{"m", m}, {"s", s}, {"analytic", value}});
      }
      write_rows(data, format, out);
      return kExitOk;
    }

    if (joint_cmd->parsed()) {
      if (!(joint_s >= 0.0 && joint_s <= joint_t && joint_t <= 1.0))
        return usage_error(err, "offsets must satisfy 0 <= s <= t <= 1");
      double value = dist::joint_cdf({joint_m, joint_M, joint_s, joint_t});
      std::vector<Row> data = {{{"m", joint_m},
                                {"M", joint_M},
                                {"s", joint_s},
                                {"t", joint_t},
                                {"analytic", value}}};
      write_rows(data, format, out);
      return kExitOk;
    }

    if (moments_cmd->parsed()) {
      std::optional<Range> range = parse_range(moments_s);
      if (!range) return usage_error(err, "--s must be a grid lo:hi:steps");
      if (!(range->lo >= 0.0 && range->hi <= 1.0))
        return usage_error(err, "--s grid must lie inside [0,1]");
      std::vector<Row> data;
      data.reserve(static_cast<std::size_t>(range->steps));
      for (long i = 0; i < range->steps; ++i) {
        double s = range->point(i);
        data.push_back({{"s", s},
                        {"mean", moments::mean(s)},
                        {"second_moment", moments::second_moment(s)},
                        {"second_moment_uncorrected", moments::second_moment_uncorrected(s)},
                        {"variance", moments::variance(s)}});
      }
      write_rows(data, format, out);
      return kExitOk;
    }

    if (validate_cmd->parsed()) {
      if (val_paths < 1) return usage_error(err, "--paths must be at least 1");
      if (val_workers < 0) return usage_error(err, "--workers must be nonnegative");
      montecarlo::McSpec spec;
      spec.paths = val_paths;
      spec.grid_step = val_grid;
      spec.master_seed = val_seed;
      spec.workers = val_workers;
      try {
        montecarlo::validate_spec(spec);
      } catch (const DomainError& e) {
        return usage_error(err, e.what());
      }
      validate::Scope scope = validate::Scope::all;
      if (val_scope == "marginal") scope = validate::Scope::marginal;
      else if (val_scope == "joint") scope = validate::Scope::joint;
      else if (val_scope == "moments") scope = validate::Scope::moments;
      else if (val_scope == "bridge") scope = validate::Scope::bridge;
      validate::Report report = validate::run_validation(spec, scope, &err);
      if (format == Format::csv)
        validate::write_csv(report, out);
      else
        validate::write_ndjson(report, out);
      return report.all_ok() ? kExitOk : kExitValidationFailed;
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  err << "error: no command selected\n";
  return kExitUsage;
}

}  // namespace slepian::cli
