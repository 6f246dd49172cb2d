#include "psf/plot_data.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psf {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("parse_plot_csv: bad number '" + s + "'");
  return v;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json to_json(const ResultRecord& r) {
  nlohmann::json j{{"sweep_value", r.sweep_value},
                   {"method", r.method},
                   {"mean_variance", number_or_null(r.mean_variance)},
                   {"stderr", number_or_null(r.std_error)},
                   {"count", r.count},
                   {"skipped", r.skipped},
                   {"certificate", r.certificate},
                   {"wall_time", r.wall_time}};
  if (r.bound) j["bound"] = *r.bound;
  return j;
}

std::uint64_t config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

PlotFiles emit_plot_data(const std::vector<ResultRecord>& records, const std::string& dir, const std::string& name,
                         const nlohmann::json& config, std::uint64_t seed, double wall_time) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  const auto base = std::filesystem::path(dir) / name;
  PlotFiles files{base.string() + ".csv", base.string() + ".json"};
  const std::string hash = hex(config_hash(config));

  bool with_bound = false;
  for (const auto& r : records) with_bound = with_bound || r.bound.has_value();

  std::ofstream csv(files.csv);
  if (!csv) throw std::runtime_error("cannot write " + files.csv);
  csv << "# config_hash=" << hash << " seed=" << seed << "\n";
  csv << "sweep_value,method,mean_variance,stderr" << (with_bound ? ",bound" : "") << "\n";
  for (const auto& r : records) {
    csv << format_double(r.sweep_value) << ',' << r.method << ',' << format_double(r.mean_variance) << ','
        << format_double(r.std_error);
    if (with_bound) csv << ',' << format_double(r.bound.value_or(std::nan("")));
    csv << "\n";
  }
  csv.close();
  if (!csv) throw std::runtime_error("write failed: " + files.csv);

  nlohmann::json side{{"config_hash", hash}, {"seed", seed}, {"config", config}, {"wall_time", wall_time}};
  side["records"] = nlohmann::json::array();
  for (const auto& r : records) side["records"].push_back(to_json(r));
  std::ofstream js(files.sidecar);
  if (!js) throw std::runtime_error("cannot write " + files.sidecar);
  js << side.dump(2) << "\n";
  js.close();
  if (!js) throw std::runtime_error("write failed: " + files.sidecar);
  return files;
}

std::vector<ResultRecord> parse_plot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ResultRecord> out;
  std::string line;
  bool header = false;
  bool with_bound = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      header = true;
      with_bound = cells.size() == 5;
      continue;
    }
    if (cells.size() != (with_bound ? 5u : 4u)) throw std::runtime_error("parse_plot_csv: bad row: " + line);
    ResultRecord r;
    r.sweep_value = parse_double(cells[0]);
    r.method = cells[1];
    r.mean_variance = parse_double(cells[2]);
    r.std_error = parse_double(cells[3]);
    if (with_bound) {
      const double b = parse_double(cells[4]);
      if (!std::isnan(b)) r.bound = b;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace psf
