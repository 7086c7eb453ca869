#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavityclock/config.hpp"

using namespace cavityclock;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("parse_config basics") {
    SUBCASE("qfi run") {
        const RunConfig config = parse_config(
            "command = qfi\nalpha = 1.0\nr = 0\npurity = 1\n");
        CHECK(config.command == Command::qfi);
        const Table table = run_command(config);
        REQUIRE(table.rows.size() == 1);
        CHECK(table.rows[0][0] == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("comments and blank lines") {
        const RunConfig config = parse_config(
            "# a clock run\n\ncommand = qfi  # inline comment\nalpha = 2\n");
        CHECK(config.real_or("alpha", 0.0) == 2.0);
    }
    SUBCASE("h out of range surfaces at parse under bogo") {
        CHECK_THROWS_AS(parse_config("command = bogo\nh = 3.0\n"),
                        ConfigError);
    }
    SUBCASE("unknown key rejected") {
        CHECK_THROWS_AS(parse_config("command = qfi\nbogus = 1\n"),
                        ConfigError);
    }
    SUBCASE("key valid only under another command rejected") {
        CHECK_THROWS_AS(parse_config("command = qfi\nkappa = 0.2\n"),
                        ConfigError);
    }
    SUBCASE("missing command reported") {
        CHECK_THROWS_AS(parse_config("alpha = 1\n"), ConfigError);
    }
    SUBCASE("every invalid line is reported") {
        try {
            parse_config("command = qfi\nalpha = abc\nr = xyz\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& err) {
            CHECK(err.errors.size() == 2);
        }
    }
    SUBCASE("type mismatch") {
        CHECK_THROWS_AS(parse_config("command = sweep\nn_max = 2.5\n"),
                        ConfigError);
    }
}

TEST_CASE("grid and list axes") {
    const RunConfig config = parse_config(
        "command = sweep\nh_grid = 0:0.1:0.02\nn_photons_list = 1,5,10\n");
    REQUIRE(config.lists.count("h") == 1);
    CHECK(config.lists.at("h").size() == 6);
    CHECK(config.lists.at("h").back() == doctest::Approx(0.1));
    CHECK(config.lists.at("n_photons") == std::vector<double>{1, 5, 10});
    SUBCASE("sweep h above 0.5 rejected at parse") {
        CHECK_THROWS_AS(parse_config("command = sweep\nh_list = 0.6\n"),
                        ConfigError);
    }
    SUBCASE("axis given twice rejected") {
        CHECK_THROWS_AS(
            parse_config("command = sweep\nh_list = 0.1\nh_grid = 0:0.1:0.05\n"),
            ConfigError);
    }
}

TEST_CASE("config round trip parse(print(config)) == config") {
    const RunConfig config = parse_config(
        "command = sweep\nformat = json\nflag = mode_mixing_only\n"
        "n_max = 12\npurity = 0.9\nh_list = 0.02,0.1\ntheta_a = 3.14\n");
    const RunConfig again = parse_config(print_config(config));
    CHECK(again.command == config.command);
    CHECK(again.format == config.format);
    CHECK(again.out == config.out);
    CHECK(again.reals == config.reals);
    CHECK(again.ints == config.ints);
    CHECK(again.enums == config.enums);
    CHECK(again.lists == config.lists);
}

TEST_CASE("emission") {
    Table table;
    table.add_metadata("artifact", "test");
    table.columns = {"value", "extra"};
    table.rows.push_back({4.0, 0.1});

    SUBCASE("scalar json carries the value key") {
        const std::string json = to_json(table);
        CHECK(json.find("\"value\": 4.0") != std::string::npos);
    }
    SUBCASE("csv header and 17-digit reals") {
        table.rows[0][1] = 1.0 / 3.0;
        const std::string csv = to_csv(table);
        CHECK(csv.find("value,extra") != std::string::npos);
        CHECK(csv.find("0.33333333333333331") != std::string::npos);
        CHECK(csv.find("# artifact = test") != std::string::npos);
    }
    SUBCASE("identical emissions are byte-identical and atomic") {
        const auto dir = std::filesystem::temp_directory_path();
        const auto path_a = dir / "cavityclock_emit_a.csv";
        const auto path_b = dir / "cavityclock_emit_b.csv";
        emit(table, OutputFormat::csv, path_a);
        emit(table, OutputFormat::csv, path_b);
        CHECK(slurp(path_a) == slurp(path_b));
        CHECK_FALSE(std::filesystem::exists(path_a.string() + ".tmp"));
        std::filesystem::remove(path_a);
        std::filesystem::remove(path_b);
    }
    SUBCASE("unwritable path fails with context and leaves no partial file") {
        CHECK_THROWS(emit(table, OutputFormat::csv,
                          "/nonexistent_dir_cavityclock/out.csv"));
    }
}

TEST_CASE("fig6 snr run has the documented schema") {
    const RunConfig config = parse_config(
        "command = circuit\ncircuit_output = snr\nstate_kind = coherent\n"
        "l_eff = 0.011\ndelta_theta = 4.55e-3\nk_max = 10\n");
    const Table table = run_command(config);
    const std::vector<std::string> expected = {"k", "theta", "delta_theta",
                                               "snr", "n_remaining"};
    CHECK(table.columns == expected);
    CHECK(table.rows.size() == 11);
}

TEST_CASE("state command reports the constructed state") {
    const RunConfig config = parse_config(
        "command = state\nalpha = 2\ntheta = 0\nr = 0\nphi = 0\npurity = 1\n");
    const Table table = run_command(config);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == doctest::Approx(2.0));   // alpha
    CHECK(table.rows[0][5] == doctest::Approx(4.0));   // photon number
    CHECK(table.rows[0][8] == doctest::Approx(0.25));  // sigma_11
}
