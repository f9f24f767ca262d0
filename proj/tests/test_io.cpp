#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "mbarrier/io.hpp"

using namespace mbarrier;

namespace {

std::string data_path(const std::string& name) {
    const char* dir = std::getenv("MBARRIER_DATA_DIR");
    return std::string(dir ? dir : "data") + "/" + name;
}

std::shared_ptr<const CurveSet> two_piece() {
    return std::make_shared<const CurveSet>(io::load_curves(data_path("curves_two_piece.json")));
}

// Runs f, expects an InputError and returns it for inspection.
template <typename F>
io::InputError expect_input_error(F&& f) {
    try {
        f();
    } catch (const io::InputError& e) {
        return e;
    }
    ADD_FAILURE() << "no InputError thrown";
    return io::InputError("", 0, 0, "");
}

}  // namespace

TEST(Io, LoadsFixtures) {
    const auto curves = two_piece();
    EXPECT_EQ(curves->r().breakpoints().size(), 2u);
    EXPECT_DOUBLE_EQ(curves->sigma().value_at(0.7), 0.30);
    EXPECT_DOUBLE_EQ(curves->q().value_at(0.2), 0.0);

    const auto c = io::load_contract(data_path("contract_moving.json"), curves);
    EXPECT_EQ(c.strike, 100.0);
    EXPECT_EQ(c.side, OptionSide::Call);
    EXPECT_EQ(c.style, BarrierStyle::DownAndOut);
    EXPECT_EQ(c.barrier.C(), 1.0);
    EXPECT_EQ(c.barrier.terminal_level(), 90.0);
}

TEST(Io, LevelFormResolvesC) {
    const auto curves = two_piece();
    const auto c = io::load_contract(data_path("contract_levels.json"), curves);
    EXPECT_NEAR(c.barrier.level(0.0), 85.0, 1e-10);
    EXPECT_NEAR(c.barrier.C(), c_from_levels(85.0, 0.0, 90.0, *curves, 1.0), 1e-15);
}

TEST(Io, MalformedJsonReportsPosition) {
    const std::string text = "{\n  \"r\": {\"breakpoints\": [0], \"values\": [0.05],}\n}";
    const auto e = expect_input_error([&] { io::parse_curves(text, "bad.json"); });
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 40);
    EXPECT_EQ(std::string(e.what()).rfind("bad.json:2:", 0), 0u);
}

TEST(Io, SchemaErrorsPointAtKey) {
    const std::string missing_sigma =
        "{\"r\": {\"breakpoints\": [0], \"values\": [0.05]},\n"
        " \"q\": {\"breakpoints\": [0], \"values\": [0]}}";
    EXPECT_EQ(expect_input_error([&] { io::parse_curves(missing_sigma); }).line(), 1);

    const std::string bad_breakpoints =
        "{\"r\": {\"breakpoints\": [0], \"values\": [0.05]},\n"
        " \"q\": {\"breakpoints\": [0], \"values\": [0]},\n"
        " \"sigma\": {\"breakpoints\": [0.5], \"values\": [0.2]}}";
    const auto e = expect_input_error([&] { io::parse_curves(bad_breakpoints); });
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 2);
}

TEST(Io, ContractValidation) {
    const auto curves = two_piece();
    auto parse = [&](const std::string& barrier, const std::string& side = "call") {
        return io::parse_contract("{\"strike\": 100, \"expiry\": 1, \"side\": \"" + side +
                                      "\", \"style\": \"down_and_out\",\n \"barrier\": " + barrier +
                                      "}",
                                  curves);
    };
    EXPECT_NO_THROW(parse("{\"h_T\": 90, \"C\": 0}"));
    EXPECT_THROW(parse("{\"h_T\": 90}"), io::InputError);
    EXPECT_THROW(parse("{\"h_T\": 90, \"C\": 0, \"h_t0\": 85, \"t0\": 0}"), io::InputError);
    EXPECT_THROW(parse("{\"h_T\": -90, \"C\": 0}"), io::InputError);
    EXPECT_THROW(parse("{\"h_T\": 90, \"C\": \"zero\"}"), io::InputError);
    EXPECT_THROW(parse("{\"h_T\": 90, \"h_t0\": 85, \"t0\": 1}"), io::InputError);
    const auto e = expect_input_error([&] { parse("{\"h_T\": 90, \"C\": 0}", "straddle"); });
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("straddle"), std::string::npos);
}

TEST(Io, MissingFile) {
    EXPECT_THROW(io::read_file(data_path("does_not_exist.json")), io::InputError);
}

TEST(Io, CurvesRoundTrip) {
    const auto curves = two_piece();
    const auto back = io::parse_curves(io::to_json(*curves).dump());
    for (double t : {0.0, 0.25, 0.5, 0.9}) {
        EXPECT_EQ(back.sigma().value_at(t), curves->sigma().value_at(t));
        EXPECT_EQ(back.r().value_at(t), curves->r().value_at(t));
    }
}

TEST(Io, BreakdownSerializesInfinitiesAsNull) {
    PriceBreakdown b;
    b.d1 = std::numeric_limits<double>::infinity();
    b.price = 1.5;
    const auto j = io::to_json(b);
    EXPECT_TRUE(j["d1"].is_null());
    EXPECT_EQ(j["price"].get<double>(), 1.5);
    EXPECT_EQ(j.begin().key(), "price");
}
