#include "polyode/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <vector>

#include "polyode/errors.hpp"

namespace polyode::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) parse_error(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

int int_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer()) parse_error(std::string("field \"") + name + "\" must be an integer");
    return v.get<int>();
}

double number(const json& v, const char* what) {
    if (!v.is_number()) parse_error(std::string(what) + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) parse_error(std::string(what) + " must be finite");
    return d;
}

Complex complex_pair(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2) parse_error(std::string(what) + " must be a [re, im] pair");
    return {number(v[0], what), number(v[1], what)};
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view text) {
    const std::string s(trim(text));
    if (s.empty()) parse_error("empty number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) parse_error("malformed number \"" + s + "\"");
    return v;
}

int parse_int(std::string_view text) {
    const std::string s(trim(text));
    if (s.empty()) parse_error("empty integer");
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) parse_error("malformed integer \"" + s + "\"");
    return static_cast<int>(v);
}

std::string trajectory_csv_impl(const Trajectory& traj, const char* re_prefix, const char* im_prefix) {
    std::ostringstream out;
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ',' << re_prefix << i << ',' << im_prefix << i;
    out << '\n';
    out << std::setprecision(17);
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        out << traj.times[s];
        for (const auto& z : traj.states[s]) out << ',' << z.real() << ',' << z.imag();
        out << '\n';
    }
    return out.str();
}

}  // namespace

json system_to_json(const PolynomialSystem& system) {
    json coeffs = json::array();
    for (const auto& [key, c] : system.coefficients())
        coeffs.push_back({{"eq", key.eq}, {"exponents", key.index.exponents()}, {"re", c.real()}, {"im", c.imag()}});
    return {{"n", system.dimension()}, {"m", system.degree()}, {"coefficients", std::move(coeffs)}};
}

PolynomialSystem system_from_json(const json& j) {
    const int n = int_field(j, "n");
    const int m = int_field(j, "m");
    PolynomialSystem system(n, m);
    const json& coeffs = field(j, "coefficients");
    if (!coeffs.is_array()) parse_error("\"coefficients\" must be an array");

    std::set<CoefficientKey, CoefficientKeyOrder> seen;
    for (const json& entry : coeffs) {
        const int eq = int_field(entry, "eq");
        const json& ex = field(entry, "exponents");
        if (!ex.is_array()) parse_error("\"exponents\" must be an array");
        std::vector<int> exps;
        for (const json& e : ex) {
            if (!e.is_number_integer()) parse_error("exponents must be integers");
            exps.push_back(e.get<int>());
        }
        MultiIndex index(std::move(exps));
        if (eq < 1 || eq > n) parse_error("equation index " + std::to_string(eq) + " outside [1, n]");
        if (!index.valid_for(n, m))
            parse_error("exponents " + index.to_string() + " do not form a degree-" + std::to_string(m) +
                        " multi-index of length " + std::to_string(n));
        if (!seen.insert(CoefficientKey{eq, index}).second)
            parse_error("duplicate coefficient for eq " + std::to_string(eq) + ", exponents " + index.to_string());
        system.set(eq, index, Complex{number(field(entry, "re"), "re"), number(field(entry, "im"), "im")});
    }
    return system;
}

json instance_to_json(const SolvableInstance& instance) {
    json j = system_to_json(instance.system());
    json z0 = json::array();
    for (const auto& z : instance.z0()) z0.push_back({z.real(), z.imag()});
    j["z0"] = std::move(z0);
    j["k"] = {instance.k().real(), instance.k().imag()};
    return j;
}

SolvableInstance instance_from_json(const json& j) {
    PolynomialSystem system = system_from_json(j);
    const json& z0j = field(j, "z0");
    if (!z0j.is_array()) parse_error("\"z0\" must be an array");
    StateVector z0;
    for (const json& v : z0j) z0.push_back(complex_pair(v, "z0 entry"));
    if (static_cast<int>(z0.size()) != system.dimension()) parse_error("\"z0\" must have n entries");
    const Complex k = complex_pair(field(j, "k"), "k");
    return SolvableInstance(std::move(system), std::move(z0), k);
}

json report_to_json(const VerificationReport& report) {
    return {{"max_deviation", report.max_deviation}, {"samples", report.samples}, {"t_end", report.t_end}};
}

json report_to_json(const PeriodReport& report) {
    return {{"q", report.q}, {"k", report.k}, {"T", report.period}, {"closure_error", report.closure_error}};
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << text;
}

namespace {

json parse_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        parse_error(path.string() + ": " + e.what());
    }
}

}  // namespace

PolynomialSystem parse_system_file(const std::filesystem::path& path) {
    return system_from_json(parse_json_file(path));
}

void write_system_file(const std::filesystem::path& path, const PolynomialSystem& system) {
    write_text(path, system_to_json(system).dump(2) + "\n");
}

SolvableInstance parse_instance_file(const std::filesystem::path& path) {
    return instance_from_json(parse_json_file(path));
}

void write_instance_file(const std::filesystem::path& path, const SolvableInstance& instance) {
    write_text(path, instance_to_json(instance).dump(2) + "\n");
}

std::string trajectory_csv(const Trajectory& traj) { return trajectory_csv_impl(traj, "re_z", "im_z"); }

std::string periodic_trajectory_csv(const Trajectory& traj) { return trajectory_csv_impl(traj, "x", "y"); }

Trajectory parse_trajectory_csv(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) parse_error("empty trajectory file");
    const auto header = split(trim(lines.front()), ',');
    if (header.empty() || trim(header.front()) != "t" || header.size() % 2 != 1)
        parse_error("trajectory header must be t followed by (re, im) column pairs");
    const std::size_t n = (header.size() - 1) / 2;

    Trajectory traj;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto cells = split(trim(lines[l]), ',');
        if (cells.size() != header.size()) parse_error("row " + std::to_string(l) + " has wrong column count");
        traj.times.push_back(parse_double(cells[0]));
        StateVector state(n);
        for (std::size_t i = 0; i < n; ++i)
            state[i] = Complex{parse_double(cells[1 + 2 * i]), parse_double(cells[2 + 2 * i])};
        traj.states.push_back(std::move(state));
    }
    return traj;
}

UnknownSelection parse_selection(std::string_view text) {
    std::vector<UnknownSlot> slots;
    for (std::string_view item : split(text, ',')) {
        item = trim(item);
        if (item == "K" || item == "k") {
            slots.emplace_back(RateK{});
            continue;
        }
        const auto parts = split(item, ':');
        if (parts.size() != 3 || trim(parts[0]) != "c")
            parse_error("unknown slot \"" + std::string(item) + "\"; expected K or c:EQ:E1-E2-...");
        std::vector<int> exps;
        for (std::string_view e : split(parts[2], '-')) exps.push_back(parse_int(e));
        slots.emplace_back(CoefficientSlot{parse_int(parts[1]), MultiIndex(std::move(exps))});
    }
    return UnknownSelection(std::move(slots));
}

Complex parse_complex(std::string_view text) {
    const auto parts = split(trim(text), ',');
    if (parts.size() != 2) parse_error("complex value must be written re,im");
    return {parse_double(parts[0]), parse_double(parts[1])};
}

StateVector parse_state(std::string_view text) {
    StateVector z;
    const char sep = text.find(';') != std::string_view::npos ? ';' : '/';
    for (std::string_view item : split(text, sep)) z.push_back(parse_complex(item));
    return z;
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

}  // namespace polyode::io
