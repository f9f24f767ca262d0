#include "mbarrier/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mbarrier/errors.hpp"

namespace mbarrier::io {

using nlohmann::json;

InputError::InputError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

struct Position {
    int line = 1;
    int column = 1;
};

Position position_of(const std::string& text, std::size_t offset) {
    Position p;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

// Anchors a schema error at the first occurrence of the quoted key, or at
// the start of the document when the key is absent.
class Document {
public:
    Document(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {
        try {
            root_ = json::parse(text);
        } catch (const json::parse_error& e) {
            const Position p = position_of(text_, e.byte == 0 ? 0 : e.byte - 1);
            throw InputError(source_, p.line, p.column, "malformed JSON");
        }
    }

    const json& root() const { return root_; }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        const auto at = text_.find("\"" + key + "\"");
        const Position p = position_of(text_, at == std::string::npos ? 0 : at);
        throw InputError(source_, p.line, p.column, message);
    }

    const json& member(const json& obj, const std::string& key) const {
        if (!obj.is_object()) fail(key, "expected an object containing \"" + key + "\"");
        auto it = obj.find(key);
        if (it == obj.end()) fail(key, "missing field \"" + key + "\"");
        return *it;
    }

    double number(const json& obj, const std::string& key) const {
        const json& v = member(obj, key);
        if (!v.is_number()) fail(key, "field \"" + key + "\" must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "field \"" + key + "\" must be finite");
        return d;
    }

    std::string string(const json& obj, const std::string& key) const {
        const json& v = member(obj, key);
        if (!v.is_string()) fail(key, "field \"" + key + "\" must be a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const json& obj, const std::string& key) const {
        const json& v = member(obj, key);
        if (!v.is_array()) fail(key, "field \"" + key + "\" must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(key, "field \"" + key + "\" must contain only numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

private:
    const std::string& text_;
    std::string source_;
    json root_;
};

TermStructure parse_structure(const Document& doc, const std::string& key) {
    const json& node = doc.member(doc.root(), key);
    try {
        return TermStructure(doc.numbers(node, "breakpoints"), doc.numbers(node, "values"));
    } catch (const DomainError& e) {
        doc.fail(key, "curve \"" + key + "\": " + e.what());
    }
}

}  // namespace

CurveSet parse_curves(const std::string& text, const std::string& source) {
    const Document doc(text, source);
    if (!doc.root().is_object()) throw InputError(source, 1, 1, "curve file must be a JSON object");
    TermStructure r = parse_structure(doc, "r");
    TermStructure q = parse_structure(doc, "q");
    TermStructure sigma = parse_structure(doc, "sigma");
    try {
        return CurveSet(std::move(r), std::move(q), std::move(sigma));
    } catch (const DomainError& e) {
        doc.fail("sigma", e.what());
    }
}

BarrierContract parse_contract(const std::string& text, std::shared_ptr<const CurveSet> curves,
                               const std::string& source) {
    const Document doc(text, source);
    const json& root = doc.root();
    if (!root.is_object()) throw InputError(source, 1, 1, "contract file must be a JSON object");

    const double strike = doc.number(root, "strike");
    if (!(strike > 0.0)) doc.fail("strike", "strike must be positive");
    const double expiry = doc.number(root, "expiry");
    if (!(expiry > 0.0)) doc.fail("expiry", "expiry must be positive");

    const std::string side_name = doc.string(root, "side");
    OptionSide side{};
    if (side_name == "call") {
        side = OptionSide::Call;
    } else if (side_name == "put") {
        side = OptionSide::Put;
    } else {
        doc.fail("side", "side must be \"call\" or \"put\", got \"" + side_name + "\"");
    }

    const std::string style_name = doc.string(root, "style");
    BarrierStyle style{};
    if (style_name == "down_and_out") {
        style = BarrierStyle::DownAndOut;
    } else if (style_name == "down_and_in") {
        style = BarrierStyle::DownAndIn;
    } else {
        doc.fail("style", "style must be \"down_and_out\" or \"down_and_in\", got \"" + style_name +
                              "\"");
    }

    const json& barrier = doc.member(root, "barrier");
    const double h_T = doc.number(barrier, "h_T");
    if (!(h_T > 0.0)) doc.fail("h_T", "h_T must be positive");
    double C = 0.0;
    const bool has_c = barrier.is_object() && barrier.contains("C");
    const bool has_levels = barrier.is_object() && barrier.contains("h_t0");
    if (has_c == has_levels) {
        doc.fail("barrier", "barrier needs exactly one of {\"C\"} or {\"h_t0\", \"t0\"}");
    }
    if (has_c) {
        C = doc.number(barrier, "C");
    } else {
        const double h_t0 = doc.number(barrier, "h_t0");
        const double t0 = doc.number(barrier, "t0");
        if (!(h_t0 > 0.0)) doc.fail("h_t0", "h_t0 must be positive");
        if (!(t0 >= 0.0 && t0 < expiry)) doc.fail("t0", "t0 must lie in [0, expiry)");
        try {
            C = c_from_levels(h_t0, t0, h_T, *curves, expiry);
        } catch (const DomainError& e) {
            doc.fail("h_t0", e.what());
        }
    }
    try {
        return BarrierContract(strike, expiry, side, style,
                               MovingBarrier(h_T, C, std::move(curves), expiry));
    } catch (const DomainError& e) {
        doc.fail("barrier", e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, 0, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CurveSet load_curves(const std::string& path) { return parse_curves(read_file(path), path); }

BarrierContract load_contract(const std::string& path, std::shared_ptr<const CurveSet> curves) {
    return parse_contract(read_file(path), std::move(curves), path);
}

nlohmann::ordered_json to_json(const TermStructure& s) {
    return {{"breakpoints", s.breakpoints()}, {"values", s.values()}};
}

nlohmann::ordered_json to_json(const CurveSet& curves) {
    return {{"r", to_json(curves.r())}, {"q", to_json(curves.q())}, {"sigma", to_json(curves.sigma())}};
}

namespace {

// JSON has no infinities; d-values at expiry serialize as null.
nlohmann::ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::ordered_json to_json(const PriceBreakdown& b) {
    return {
        {"price", b.price},
        {"status", std::string(to_string(b.status))},
        {"vanilla_term", b.vanilla_term},
        {"image_term", b.image_term},
        {"d1", finite_or_null(b.d1)},
        {"d1_prime", finite_or_null(b.d1_prime)},
        {"d2", finite_or_null(b.d2)},
        {"d2_prime", finite_or_null(b.d2_prime)},
        {"C", b.C},
        {"power_factor", finite_or_null(b.power_factor)},
        {"rbar", b.rbar},
        {"qbar", b.qbar},
        {"sigma2bar", b.sigma2bar},
        {"barrier_level", b.barrier_level},
    };
}

nlohmann::ordered_json to_json(const oracles::McEstimate& e) {
    return {
        {"price", e.price},
        {"std_error", e.std_error},
        {"n_paths", e.n_paths},
        {"n_steps", e.n_steps},
        {"knockout_fraction", e.knockout_fraction},
    };
}

}  // namespace mbarrier::io
