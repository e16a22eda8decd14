#pragma once

#include <string>

#include <json.hpp>

#include "cmpairs/integrator.hpp"
#include "cmpairs/lax_spectral.hpp"

namespace cmpairs {

enum class StateKind { Full, Reduced };

// Complex values are serialised as two-element [re, im] arrays throughout.
nlohmann::json to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

std::string format_double(double v);  // shortest round-trip-exact decimal

// CSV schema, one row per time stamp:
//   full:    t, re_x1, im_x1, ..., re_xN, im_xN, re_p1, im_p1, ..., re_pN, im_pN
//   reduced: t, re_x1, im_x1, ..., re_xn, im_xn, re_alpha1, ..., im_alphan
void write_trajectory_csv(const std::string& path, const Trajectory& traj, StateKind kind);

nlohmann::json trajectory_to_json(const Trajectory& traj, StateKind kind);

// CSV schema, one row per (z, lambda) grid point:
//   re_z, im_z, re_lambda, im_lambda, re_det, im_det, eps
// where eps is the literal "extrapolated" for Richardson-extrapolated scans.
void write_scan_csv(const std::string& path, const SpectralScan& scan);

nlohmann::json scan_to_json(const SpectralScan& scan);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::json& j);

// FNV-1a hash of a canonical JSON dump, hex-encoded; stamps outputs so runs
// can be traced back to their configuration.
std::string fnv1a_hex(const std::string& data);

}  // namespace cmpairs
