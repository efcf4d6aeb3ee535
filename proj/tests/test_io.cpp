#include "doctest.h"

#include <filesystem>

#include "filtcone/io.hpp"
#include "filtcone/random.hpp"

#include "helpers.hpp"

using namespace filtcone;
using testing_support::bars;
using testing_support::half_grid;

TEST_CASE("a point complex serializes canonically")
{
    const auto doc = io::to_json(point_complex(0));
    CHECK(doc.dump() == R"j({"name":"P(0)","generators":[{"id":"g","filtration":0}],"boundary":{}})j");
    const auto back = io::complex_from_json(doc);
    CHECK(back.same_as(point_complex(0)));
    CHECK(io::to_json(back).dump() == doc.dump());
}

TEST_CASE("unknown ids are reported by name")
{
    const auto doc = io::parse_text(R"j({"generators":[{"id":"x","filtration":0}],"boundary":{"x":["ghost"]}})j", "t");
    try {
        (void)io::complex_from_json(doc);
        FAIL("expected a parse error");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_text("{not json", "t"), io::ParseError);
}

TEST_CASE("interval file round-trips with its barcode")
{
    const auto path = std::filesystem::temp_directory_path() / "filtcone_io_interval.json";
    io::write_file(path, io::to_json(interval_complex(1, 4)));
    const auto c = io::complex_from_json(io::read_file(path));
    CHECK(barcode(c) == bars({{1, 4}}));
    std::filesystem::remove(path);
}

TEST_CASE("random complexes round-trip byte for byte")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto c = random_complex(seed % 9, half_grid(), 0.5, seed);
        const auto text = io::to_json(c).dump();
        const auto back = io::complex_from_json(io::parse_text(text, "t"));
        REQUIRE(back.same_as(c));
        REQUIRE(io::to_json(back).dump() == text);
    }
}

TEST_CASE("maps round-trip through inline complexes")
{
    auto a = share(random_complex(4, half_grid(), 0.5, 1));
    auto b = share(random_complex(4, half_grid(), 0.5, 2));
    const auto f = random_filtered_map(a, b, 1.0, 3);
    const auto doc = io::to_json(f);
    const auto back = io::map_from_json(doc, ".");
    CHECK(back.matrix == f.matrix);
    CHECK(back.shift == f.shift);
    CHECK(io::to_json(back).dump() == doc.dump());
}

TEST_CASE("extended reals serialize infinities as strings")
{
    CHECK(io::to_json(ExtendedReal::infinity()).dump() == R"j("inf")j");
    CHECK(io::to_json(ExtendedReal::neg_infinity()).dump() == R"j("-inf")j");
    CHECK(io::to_json(ExtendedReal(1.5)).dump() == "1.5");
    CHECK(io::profile_line(profile(interval_complex(1, 4))) == "sigma+ = -inf, sigma- = inf, rho = -inf, beta = 3");
}
