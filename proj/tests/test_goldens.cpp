// Regenerates figure tables through the command-line tool and compares them
// numerically against the checked-in golden copies.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

ParsedCsv parse_csv(const fs::path& path) {
    ParsedCsv result;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream fields(line);
        std::string field;
        if (result.header.empty()) {
            while (std::getline(fields, field, ',')) {
                result.header.push_back(field);
            }
            continue;
        }
        std::vector<double> row;
        while (std::getline(fields, field, ',')) {
            row.push_back(std::stod(field));
        }
        result.rows.push_back(row);
    }
    return result;
}

std::string config_command(const fs::path& config) {
    std::ifstream in(config);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("command", 0) == 0) {
            const auto eq = line.find('=');
            std::string value = line.substr(eq + 1);
            const auto start = value.find_first_not_of(" \t");
            const auto end = value.find_last_not_of(" \t\r");
            return value.substr(start, end - start + 1);
        }
    }
    FAIL("config without command line: ", config.string());
    return {};
}

}  // namespace

TEST_CASE("regenerated figure tables match the golden copies") {
    const fs::path golden_dir = CAVITY_CLOCK_GOLDEN_DIR;
    const fs::path figures_dir = CAVITY_CLOCK_FIGURES_DIR;
    const fs::path cli = CAVITY_CLOCK_CLI_PATH;
    const fs::path workdir = fs::temp_directory_path() / "cavity_clock_goldens";
    fs::create_directories(workdir);

    std::vector<fs::path> goldens;
    for (const auto& entry : fs::directory_iterator(golden_dir)) {
        if (entry.path().extension() == ".csv") {
            goldens.push_back(entry.path());
        }
    }
    std::sort(goldens.begin(), goldens.end());
    REQUIRE(!goldens.empty());

    for (const auto& golden : goldens) {
        CAPTURE(golden.string());
        const fs::path config = figures_dir / (golden.stem().string() + ".cfg");
        REQUIRE(fs::exists(config));
        const fs::path out = workdir / golden.filename();
        const std::string invocation = cli.string() + " " +
                                       config_command(config) + " --config " +
                                       config.string() + " --out " +
                                       out.string();
        REQUIRE(std::system(invocation.c_str()) == 0);

        const ParsedCsv expected = parse_csv(golden);
        const ParsedCsv actual = parse_csv(out);
        CHECK(actual.header == expected.header);
        REQUIRE(actual.rows.size() == expected.rows.size());
        for (std::size_t i = 0; i < expected.rows.size(); ++i) {
            REQUIRE(actual.rows[i].size() == expected.rows[i].size());
            for (std::size_t j = 0; j < expected.rows[i].size(); ++j) {
                const double a = actual.rows[i][j];
                const double b = expected.rows[i][j];
                if (std::isnan(a) || std::isnan(b)) {
                    CHECK(std::isnan(a) == std::isnan(b));
                    continue;
                }
                const double scale = std::max({1.0, std::abs(a), std::abs(b)});
                CHECK(std::abs(a - b) / scale <= 1e-9);
            }
        }
    }
}
