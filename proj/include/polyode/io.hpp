#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polyode/constraints.hpp"
#include "polyode/oracle.hpp"
#include "polyode/periodic.hpp"
#include "polyode/trajectory.hpp"

namespace polyode::io {

// System file:
//   { "n": 2, "m": 4,
//     "coefficients": [ { "eq": 1, "exponents": [4,0], "re": 1.0, "im": 0.0 }, ... ] }
// Instance file: the same object plus "z0": [[re,im],...] and "k": [re,im].

nlohmann::json system_to_json(const PolynomialSystem& system);
PolynomialSystem system_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const SolvableInstance& instance);
SolvableInstance instance_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json report_to_json(const PeriodReport& report);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

PolynomialSystem parse_system_file(const std::filesystem::path& path);
void write_system_file(const std::filesystem::path& path, const PolynomialSystem& system);
SolvableInstance parse_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const SolvableInstance& instance);

/// Header "t,re_z1,im_z1,...,re_zN,im_zN"; 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
/// Header "t,x1,y1,...,xN,yN"; same numbers, periodic naming.
std::string periodic_trajectory_csv(const Trajectory& traj);
/// Reads either layout back.
Trajectory parse_trajectory_csv(std::string_view text);

/// "K,c:1:4-0,c:2:0-4"
UnknownSelection parse_selection(std::string_view text);
/// "re,im;re,im;..." (or "/" between components)
StateVector parse_state(std::string_view text);
/// "re,im"
Complex parse_complex(std::string_view text);

std::string format_double(double v);

}  // namespace polyode::io
