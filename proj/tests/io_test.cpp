#include <doctest.h>

#include <filesystem>

#include "polyode/generate.hpp"
#include "polyode/io.hpp"
#include "test_util.hpp"

using namespace polyode;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "polyode_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("minimal system file") {
    const auto path = scratch("minimal.json");
    io::write_text(path, R"({"n": 2, "m": 2, "coefficients": [{"eq": 1, "exponents": [2, 0], "re": 1.0, "im": 0.0}]})");
    const auto s = io::parse_system_file(path);
    CHECK(s.dimension() == 2);
    CHECK(s.degree() == 2);
    CHECK(s.size() == 1);
    CHECK(s.coefficient(1, MultiIndex{2, 0}) == Complex{1.0, 0.0});
}

TEST_CASE("schema violations are rejected") {
    auto coeff = [](int eq, std::vector<int> e) { return json{{"eq", eq}, {"exponents", e}, {"re", 1.0}, {"im", 0.0}}; };
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"m", 4}, {"coefficients", {coeff(1, {3, 0})}}}),
                     ErrorKind::Parse);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"m", 2}, {"coefficients", {coeff(1, {2, 0}), coeff(1, {2, 0})}}}),
                     ErrorKind::Parse);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"m", 2}, {"coefficients", {coeff(3, {2, 0})}}}),
                     ErrorKind::Parse);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"m", 2}, {"coefficients", {coeff(1, {2, 0, 0})}}}),
                     ErrorKind::Parse);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"m", 2}, {"coefficients", {coeff(1, {3, -1})}}}),
                     ErrorKind::Parse);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 1}, {"m", 2}, {"coefficients", json::array()}}),
                     ErrorKind::InvalidArgument);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"coefficients", json::array()}}), ErrorKind::Parse);
    CHECK_ERROR_KIND(io::system_from_json(json{{"n", 2}, {"m", 2.5}, {"coefficients", json::array()}}), ErrorKind::Parse);

    const auto path = scratch("broken.json");
    io::write_text(path, "{\"n\": 2, ");
    CHECK_ERROR_KIND(io::parse_system_file(path), ErrorKind::Parse);
    CHECK_ERROR_KIND(io::parse_system_file(scratch("does_not_exist.json")), ErrorKind::Parse);
}

TEST_CASE("system and instance files round-trip bit-exactly") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = polyode::test::random_system(rng, 2, 4);
        const auto path = scratch("roundtrip_system.json");
        io::write_system_file(path, s);
        CHECK(io::parse_system_file(path) == s);
    }
    const auto inst = generate_random_instance(3, 3, 4);
    const auto path = scratch("roundtrip_instance.json");
    io::write_instance_file(path, inst);
    const auto back = io::parse_instance_file(path);
    CHECK(back.system() == inst.system());
    CHECK(back.z0() == inst.z0());
    CHECK(back.k() == inst.k());
}

TEST_CASE("instance files must satisfy the constraints") {
    json j = io::instance_to_json(generate_random_instance(2, 3, 1));
    j["k"][0] = j["k"][0].get<double>() + 0.5;
    CHECK_ERROR_KIND(io::instance_from_json(j), ErrorKind::ConstraintViolation);
    j["z0"] = json::array({json::array({1.0, 0.0})});
    CHECK_ERROR_KIND(io::instance_from_json(j), ErrorKind::Parse);
}

TEST_CASE("trajectory CSV layouts") {
    Trajectory traj;
    traj.times = {0.0, 0.1, 1.0 / 3.0};
    traj.states = {{Complex{1.0, -2.0}, Complex{0.1, 0.2}},
                   {Complex{std::acos(-1.0), 1e-300}, Complex{-0.0, 7.0}},
                   {Complex{2.0 / 3.0, -1.0 / 7.0}, Complex{1e10, -5e-11}}};
    const std::string csv = io::trajectory_csv(traj);
    CHECK(csv.rfind("t,re_z1,im_z1,re_z2,im_z2\n", 0) == 0);
    const auto back = io::parse_trajectory_csv(csv);
    CHECK(back.times == traj.times);
    CHECK(back.states == traj.states);

    const std::string pcsv = io::periodic_trajectory_csv(traj);
    CHECK(pcsv.rfind("t,x1,y1,x2,y2\n", 0) == 0);
    CHECK(io::parse_trajectory_csv(pcsv).states == traj.states);

    CHECK_ERROR_KIND(io::parse_trajectory_csv("t,a\n0,1\n"), ErrorKind::Parse);
    CHECK_ERROR_KIND(io::parse_trajectory_csv("t,a,b\n0,1\n"), ErrorKind::Parse);
}

TEST_CASE("selection and value syntax") {
    const auto sel = io::parse_selection("K,c:1:4-0,c:2:0-4");
    REQUIRE(sel.slots().size() == 3);
    CHECK(std::holds_alternative<RateK>(sel.slots()[0]));
    CHECK(std::get<CoefficientSlot>(sel.slots()[1]) == CoefficientSlot{1, MultiIndex{4, 0}});
    CHECK(std::get<CoefficientSlot>(sel.slots()[2]) == CoefficientSlot{2, MultiIndex{0, 4}});
    CHECK_ERROR_KIND(io::parse_selection("c:1"), ErrorKind::Parse);
    CHECK_ERROR_KIND(io::parse_selection("x:1:2-0"), ErrorKind::Parse);
    CHECK_ERROR_KIND(io::parse_selection("c:1:2-a"), ErrorKind::Parse);

    CHECK(io::parse_complex("1.5,-2") == Complex{1.5, -2.0});
    CHECK(io::parse_state("1,0; 0.5,0.25") == StateVector{1.0, Complex{0.5, 0.25}});
    CHECK_ERROR_KIND(io::parse_complex("1.5"), ErrorKind::Parse);
}

TEST_CASE("report objects") {
    const json v = io::report_to_json(VerificationReport{1e-9, 64, 0.8});
    CHECK(v["max_deviation"] == 1e-9);
    CHECK(v["samples"] == 64);
    CHECK(v["t_end"] == 0.8);
    const json p = io::report_to_json(PeriodReport{0, 3, 18.8, 1e-12});
    CHECK(p["q"] == 0);
    CHECK(p["k"] == 3);
    CHECK(p["T"] == 18.8);
    CHECK(p["closure_error"] == 1e-12);
}

}
