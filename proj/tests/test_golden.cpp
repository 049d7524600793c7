#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "stackfilt/experiments.hpp"
#include "stackfilt/pgm.hpp"
#include "stackfilt/speckle.hpp"
#include "stackfilt/stack_filter.hpp"

using namespace stackfilt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "missing golden file " << path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::string kGoldenDir = GOLDEN_DIR;

std::string golden_filter_bytes() {
    std::stringstream buf;
    write_filter(majority_filter(Window(3, 3), 255), buf);
    return buf.str();
}

std::string golden_pgm_bytes() {
    PhantomSpec spec;
    spec.width = 16;
    spec.height = 16;
    spec.border_col = 8;
    spec.seed = 3;
    std::stringstream buf;
    write_pgm(generate_phantom(spec).image, buf);
    return buf.str();
}

std::string golden_csv_bytes() {
    QualityMcConfig cfg;
    cfg.replications = 2;
    cfg.width = 32;
    cfg.height = 32;
    cfg.contrasts = {{10, 2}};
    cfg.seed = 4;
    const QualityMcResult result = run_quality_mc(cfg);
    return quality_rows_csv(result.rows) + quality_aggregates_csv(result.aggregates);
}

}  // namespace

TEST_CASE("golden STACKF file is byte-stable") {
    CHECK(golden_filter_bytes() == slurp(kGoldenDir + "/majority3x3.stk"));
}

TEST_CASE("golden PGM output is byte-stable") {
    CHECK(golden_pgm_bytes() == slurp(kGoldenDir + "/phantom_16x16_seed3.pgm"));
}

TEST_CASE("golden CSV output is byte-stable") {
    CHECK(golden_csv_bytes() == slurp(kGoldenDir + "/quality_tiny.csv"));
}
