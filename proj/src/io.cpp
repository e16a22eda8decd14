#include "cmpairs/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cmpairs {

nlohmann::json to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex value must be a [re, im] pair");
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_complex_row(std::string& out, const std::vector<Complex>& y) {
  for (const Complex& c : y) {
    out += ',';
    out += format_double(c.real());
    out += ',';
    out += format_double(c.imag());
  }
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj, StateKind kind) {
  const size_t n = traj.states.empty() ? 0 : traj.states.front().size() / 2;
  std::string out = "t";
  const char* mom = kind == StateKind::Full ? "p" : "alpha";
  for (size_t i = 1; i <= n; ++i) out += ",re_x" + std::to_string(i) + ",im_x" + std::to_string(i);
  for (size_t i = 1; i <= n; ++i) {
    out += ",re_" + std::string(mom) + std::to_string(i) + ",im_" + mom + std::to_string(i);
  }
  out += '\n';
  for (size_t k = 0; k < traj.times.size(); ++k) {
    out += format_double(traj.times[k]);
    append_complex_row(out, traj.states[k]);
    out += '\n';
  }
  write_text_file(path, out);
}

nlohmann::json trajectory_to_json(const Trajectory& traj, StateKind kind) {
  nlohmann::json j;
  j["kind"] = kind == StateKind::Full ? "full" : "reduced";
  j["times"] = traj.times;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& y : traj.states) {
    nlohmann::json row = nlohmann::json::array();
    for (const Complex& c : y) row.push_back(to_json(c));
    states.push_back(std::move(row));
  }
  j["states"] = std::move(states);
  j["step_stats"] = {{"accepted", traj.stats.accepted},
                     {"rejected", traj.stats.rejected},
                     {"max_error_estimate", traj.stats.max_error_estimate}};
  return j;
}

void write_scan_csv(const std::string& path, const SpectralScan& scan) {
  std::string out = "re_z,im_z,re_lambda,im_lambda,re_det,im_det,eps\n";
  const std::string eps_tag =
      scan.extrapolated ? "extrapolated"
                        : (scan.eps_ladder.empty() ? "0" : format_double(scan.eps_ladder.front()));
  for (size_t iz = 0; iz < scan.z_grid.size(); ++iz) {
    for (size_t il = 0; il < scan.lambda_grid.size(); ++il) {
      const Complex z = scan.z_grid[iz], l = scan.lambda_grid[il], d = scan.det_values[iz][il];
      out += format_double(z.real()) + ',' + format_double(z.imag()) + ',' +
             format_double(l.real()) + ',' + format_double(l.imag()) + ',' +
             format_double(d.real()) + ',' + format_double(d.imag()) + ',' + eps_tag + '\n';
    }
  }
  write_text_file(path, out);
}

nlohmann::json scan_to_json(const SpectralScan& scan) {
  nlohmann::json j;
  j["extrapolated"] = scan.extrapolated;
  j["eps_ladder"] = scan.eps_ladder;
  nlohmann::json zg = nlohmann::json::array(), lg = nlohmann::json::array();
  for (const Complex& z : scan.z_grid) zg.push_back(to_json(z));
  for (const Complex& l : scan.lambda_grid) lg.push_back(to_json(l));
  j["z_grid"] = std::move(zg);
  j["lambda_grid"] = std::move(lg);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : scan.det_values) {
    nlohmann::json r = nlohmann::json::array();
    for (const Complex& d : row) r.push_back(to_json(d));
    rows.push_back(std::move(r));
  }
  j["det_values"] = std::move(rows);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cmpairs
