#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mbarrier/barrier.hpp"
#include "mbarrier/contract.hpp"
#include "mbarrier/curves.hpp"
#include "mbarrier/oracles/monte_carlo.hpp"

namespace mbarrier::io {

/// Malformed or invalid input file. what() is "<source>:<line>:<column>: <message>".
class InputError : public std::runtime_error {
public:
    InputError(const std::string& source, int line, int column, const std::string& message);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Curve file:
//   {"r":     {"breakpoints": [0, 0.5], "values": [0.02, 0.06]},
//    "q":     {"breakpoints": [0],      "values": [0.0]},
//    "sigma": {"breakpoints": [0, 0.5], "values": [0.15, 0.30]}}
CurveSet parse_curves(const std::string& text, const std::string& source = "<curves>");

// Contract file:
//   {"strike": 100, "expiry": 1, "side": "call", "style": "down_and_out",
//    "barrier": {"h_T": 90, "C": -1.25}}
// or with "barrier": {"h_t0": 85, "t0": 0, "h_T": 90}, resolved through
// c_from_levels against the supplied curves.
BarrierContract parse_contract(const std::string& text, std::shared_ptr<const CurveSet> curves,
                               const std::string& source = "<contract>");

std::string read_file(const std::string& path);

CurveSet load_curves(const std::string& path);
BarrierContract load_contract(const std::string& path, std::shared_ptr<const CurveSet> curves);

nlohmann::ordered_json to_json(const TermStructure& s);
nlohmann::ordered_json to_json(const CurveSet& curves);
nlohmann::ordered_json to_json(const PriceBreakdown& b);
nlohmann::ordered_json to_json(const oracles::McEstimate& e);

}  // namespace mbarrier::io
