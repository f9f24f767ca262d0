#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbarrier/barrier.hpp"
#include "mbarrier/errors.hpp"
#include "mbarrier/io.hpp"
#include "mbarrier/oracles/heat_kernel.hpp"
#include "mbarrier/oracles/monte_carlo.hpp"
#include "mbarrier/oracles/pde.hpp"
#include "mbarrier/vanilla.hpp"

namespace mbarrier::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string curves_path;
    std::string contract_path;
    double spot = 0.0;
    double time = 0.0;
    bool csv = false;
    std::uint64_t mc_paths = 100000;
    std::uint32_t mc_steps = 64;
    std::uint64_t seed = 20240601;
    int pde_grid = 400;
    unsigned threads = 0;
    double tol_heat = 1e-8;
    double tol_pde_rel = 5e-4;
    double mc_sigmas = 3.0;
    double tol_parity = 1e-12;
    std::optional<double> window_end;
};

struct Inputs {
    std::shared_ptr<const CurveSet> curves;
    std::optional<BarrierContract> contract;
    std::string curves_text;
    std::string contract_text;
};

/// One judged (or informational) number in a report.
struct Check {
    std::string name;
    double value;
    std::optional<double> tolerance;  // empty: reported only
    bool pass = true;
};

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void judge(std::string name, double value, double tolerance) {
        const bool ok = std::isfinite(value) && std::abs(value) <= tolerance;
        checks_.push_back({std::move(name), value, tolerance, ok});
    }

    void note(std::string name, double value) {
        checks_.push_back({std::move(name), value, std::nullopt, true});
    }

    void notice(std::string text) { notices_.push_back(std::move(text)); }

    bool passed() const {
        for (const auto& c : checks_) {
            if (!c.pass) return false;
        }
        return true;
    }

    Json& extra() { return extra_; }

    Json to_json(const Json& inputs) const {
        Json j;
        j["command"] = command_;
        j["inputs"] = inputs;
        for (const auto& [k, v] : extra_.items()) j[k] = v;
        Json results = Json::array();
        for (const auto& c : checks_) {
            Json r;
            r["name"] = c.name;
            r["value"] = std::isfinite(c.value) ? Json(c.value) : Json(nullptr);
            r["tolerance"] = c.tolerance ? Json(*c.tolerance) : Json(nullptr);
            r["pass"] = c.pass;
            results.push_back(std::move(r));
        }
        j["results"] = std::move(results);
        if (!notices_.empty()) j["notices"] = notices_;
        j["pass"] = passed();
        return j;
    }

    void write_csv(std::ostream& out) const {
        out << "name,value,tolerance,pass\n";
        out << std::setprecision(17);
        for (const auto& c : checks_) {
            out << c.name << ',' << c.value << ',';
            if (c.tolerance) out << *c.tolerance;
            out << ',' << (c.pass ? "true" : "false") << '\n';
        }
    }

private:
    std::string command_;
    std::vector<Check> checks_;
    std::vector<std::string> notices_;
    Json extra_ = Json::object();
};

std::string fnv1a_digest(const std::vector<std::string>& parts) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& p : parts) {
        for (unsigned char c : p) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0xff;
        h *= 0x100000001b3ull;
    }
    std::ostringstream ss;
    ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

std::string number_text(double v) { return Json(v).dump(); }

Json inputs_json(const Options& o, const Inputs& in) {
    Json j;
    j["curves"] = o.curves_path;
    if (!o.contract_path.empty()) {
        j["contract"] = o.contract_path;
        j["spot"] = o.spot;
        j["time"] = o.time;
    }
    j["digest"] = fnv1a_digest(
        {in.curves_text, in.contract_text, number_text(o.spot), number_text(o.time)});
    return j;
}

Json contract_json(const BarrierContract& c, double t) {
    Json j;
    j["strike"] = c.strike;
    j["expiry"] = c.expiry;
    j["side"] = std::string(to_string(c.side));
    j["style"] = std::string(to_string(c.style));
    j["h_T"] = c.barrier.terminal_level();
    j["C"] = c.barrier.C();
    j["barrier_at_time"] = c.barrier.level(t);
    j["closed_form_regime"] = c.closed_form_regime();
    return j;
}

Inputs load_inputs(const Options& o, bool need_contract) {
    Inputs in;
    in.curves_text = io::read_file(o.curves_path);
    in.curves = std::make_shared<const CurveSet>(io::parse_curves(in.curves_text, o.curves_path));
    if (need_contract) {
        in.contract_text = io::read_file(o.contract_path);
        in.contract.emplace(io::parse_contract(in.contract_text, in.curves, o.contract_path));
        if (!(o.spot > 0.0)) throw DomainError("--spot must be positive");
        if (!(o.time >= 0.0) || o.time > in.contract->expiry) {
            throw DomainError("--time must lie in [0, expiry]");
        }
    }
    return in;
}

bool is_constant(const CurveSet& c) {
    return c.r().values().size() == 1 && c.q().values().size() == 1 &&
           c.sigma().values().size() == 1;
}

BarrierContract with_shape(const BarrierContract& c, OptionSide side, BarrierStyle style) {
    return BarrierContract(c.strike, c.expiry, side, style, c.barrier);
}

int emit(const Report& report, const Json& inputs, const Options& o, std::ostream& out) {
    if (o.csv) {
        report.write_csv(out);
    } else {
        out << report.to_json(inputs).dump(2) << '\n';
    }
    return report.passed() ? kPass : kCheckFailed;
}

int cmd_price(const Options& o, std::ostream& out, std::ostream& err) {
    const Inputs in = load_inputs(o, true);
    const BarrierContract& c = *in.contract;
    Report report("price");
    report.extra()["contract"] = contract_json(c, o.time);
    if (c.closed_form_regime()) {
        const PriceBreakdown b = price_contract(o.spot, o.time, c);
        report.extra()["pricer"] = "closed_form";
        report.extra()["breakdown"] = io::to_json(b);
        if (o.csv) {
            out << "field,value\n";
            for (const auto& [k, v] : io::to_json(b).items()) out << k << ',' << v.dump() << '\n';
            return kPass;
        }
    } else {
        report.notice("strike below terminal barrier: closed form not applicable, priced by "
                      "heat-kernel quadrature");
        err << "note: K < h(T), using heat-kernel quadrature\n";
        double price = 0.0;
        std::string status = "live";
        if (o.time >= c.expiry) {
            const bool alive = o.spot > c.barrier.terminal_level();
            const double payoff = c.side == OptionSide::Call ? std::max(o.spot - c.strike, 0.0)
                                                             : std::max(c.strike - o.spot, 0.0);
            const bool out_style = c.style == BarrierStyle::DownAndOut;
            price = (alive == out_style) ? payoff : 0.0;
            status = "expired";
        } else {
            price = oracles::heat_kernel_price(o.spot, o.time, c);
            if (o.spot <= c.barrier.level(o.time)) {
                status = c.style == BarrierStyle::DownAndOut ? "knocked_out" : "knocked_in";
            }
        }
        report.extra()["pricer"] = "heat_kernel";
        report.extra()["breakdown"] = Json{{"price", price}, {"status", status}};
        if (o.csv) {
            out << "field,value\nprice," << Json(price).dump() << "\nstatus,\"" << status << "\"\n";
            return kPass;
        }
    }
    return emit(report, inputs_json(o, in), o, out);
}

int cmd_parity(const Options& o, std::ostream& out, std::ostream&) {
    const Inputs in = load_inputs(o, true);
    const BarrierContract& c = *in.contract;
    if (!c.closed_form_regime()) {
        throw RegimeError("parity checks need the closed form, which requires K >= h(T)");
    }
    if (!(o.time < c.expiry)) throw DomainError("parity checks need --time before expiry");
    Report report("parity");
    report.extra()["contract"] = contract_json(c, o.time);
    const double S = o.spot;
    const double t = o.time;

    if (c.style == BarrierStyle::DownAndIn) {
        const double in_value = price_contract(S, t, c).price;
        const double out_value = price_contract(S, t, with_shape(c, c.side, BarrierStyle::DownAndOut)).price;
        const double plain = vanilla(c.side, S, t, c.strike, c.expiry, c.curves()).price;
        report.note("down_and_in", in_value);
        report.note("down_and_out", out_value);
        report.note("vanilla", plain);
        report.judge("out_in_residual", out_value + in_value - plain, o.tol_parity);
        return emit(report, inputs_json(o, in), o, out);
    }

    const double c_do = down_and_out_call(S, t, with_shape(c, OptionSide::Call, c.style)).price;
    const double p_do = down_and_out_put(S, t, with_shape(c, OptionSide::Put, c.style)).price;
    const double fwd = forward_barrier_value(S, t, c).price;
    report.note("call_down_and_out", c_do);
    report.note("put_down_and_out", p_do);
    report.note("knockout_forward", fwd);
    report.judge("put_call_residual", p_do + fwd - c_do, o.tol_parity);

    if (is_constant(c.curves())) {
        const double r = c.curves().r().values()[0];
        const double q = c.curves().q().values()[0];
        const double sigma = c.curves().sigma().values()[0];
        const double a_rate = r - q + c.barrier.C() * sigma * sigma;
        const double S_B = c.barrier.terminal_level();
        report.note("exponential_barrier_rate", a_rate);
        report.judge("constant_case_gap",
                     constant_case_parity_gap(S, t, S_B, a_rate, c.strike, c.expiry, r, q, sigma,
                                              ParityForm::Corrected),
                     o.tol_parity);
        report.note("constant_case_gap_as_printed",
                    constant_case_parity_gap(S, t, S_B, a_rate, c.strike, c.expiry, r, q, sigma,
                                             ParityForm::AsPrinted));
    }
    return emit(report, inputs_json(o, in), o, out);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const Inputs in = load_inputs(o, true);
    const BarrierContract& c = *in.contract;
    const double S = o.spot;
    const double t = o.time;
    if (!(t < c.expiry)) throw DomainError("validate needs --time before expiry");
    if (!(S > c.barrier.level(t))) throw DomainError("validate needs a spot above the barrier");

    Report report("validate");
    report.extra()["contract"] = contract_json(c, t);
    const auto clock = std::chrono::steady_clock::now();

    const double heat = oracles::heat_kernel_price(S, t, c);
    oracles::PdeGrid grid;
    grid.n_space = grid.n_time = o.pde_grid;
    const oracles::PdeCheck pde = oracles::pde_price_checked(S, t, c, grid, o.tol_pde_rel * std::abs(heat));
    const oracles::McEstimate mc = oracles::mc_price(S, t, c, o.mc_paths, o.mc_steps, o.seed, o.threads);

    report.note("heat_kernel", heat);
    report.note("pde", pde.price);
    report.note("mc", mc.price);
    report.note("mc_std_error", mc.std_error);
    report.extra()["mc"] = io::to_json(mc);
    report.extra()["pde_grid"] = Json{{"n_space", grid.n_space}, {"n_time", grid.n_time}};

    double reference = heat;
    if (c.closed_form_regime()) {
        const double closed = price_contract(S, t, c).price;
        reference = closed;
        report.note("closed_form", closed);
        report.judge("closed_form_vs_heat_kernel", closed - heat, o.tol_heat);
    } else {
        report.notice("strike below terminal barrier: closed form skipped, oracles compared against "
                      "the heat-kernel price");
    }
    const double pde_tol = o.tol_pde_rel * std::max(std::abs(reference), 1e-300);
    const std::string ref_name = c.closed_form_regime() ? "closed_form" : "heat_kernel";
    report.judge(ref_name + "_vs_pde", reference - pde.price, pde_tol);
    report.judge("pde_richardson_error", pde.richardson_error, pde_tol);
    report.judge(ref_name + "_vs_mc", reference - mc.price, o.mc_sigmas * mc.std_error);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock).count();
    err << "validate: oracles finished in " << seconds << " s\n";
    return emit(report, inputs_json(o, in), o, out);
}

int cmd_curves_show(const Options& o, std::ostream& out) {
    const Inputs in = load_inputs(o, false);
    const CurveSet& cs = *in.curves;
    Json j;
    j["command"] = "curves show";
    j["inputs"] = inputs_json(o, in);
    j["curves"] = io::to_json(cs);
    Json cumulative = Json::array();
    std::vector<double> times = cs.breakpoints_between(-1.0, std::numeric_limits<double>::max());
    if (o.window_end && *o.window_end > times.back()) times.push_back(*o.window_end);
    for (double b : times) {
        cumulative.push_back({{"time", b},
                              {"rbar", integral_r(cs, 0.0, b)},
                              {"qbar", integral_q(cs, 0.0, b)},
                              {"sigma2bar", integral_sigma2(cs, 0.0, b)}});
    }
    j["cumulative_from_zero"] = cumulative;
    if (o.window_end) {
        const double T = *o.window_end;
        j["window"] = {{"from", o.time},
                       {"to", T},
                       {"rbar", integral_r(cs, o.time, T)},
                       {"qbar", integral_q(cs, o.time, T)},
                       {"sigma2bar", integral_sigma2(cs, o.time, T)}};
    }
    if (o.csv) {
        out << "time,rbar,qbar,sigma2bar\n" << std::setprecision(17);
        for (const auto& row : cumulative) {
            out << row["time"].get<double>() << ',' << row["rbar"].get<double>() << ','
                << row["qbar"].get<double>() << ',' << row["sigma2bar"].get<double>() << '\n';
        }
    } else {
        out << j.dump(2) << '\n';
    }
    return kPass;
}

void add_contract_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--curves", o.curves_path, "Curve file (JSON)")->required();
    cmd->add_option("--contract", o.contract_path, "Contract file (JSON)")->required();
    cmd->add_option("--spot", o.spot, "Spot price S")->required();
    cmd->add_option("--time", o.time, "Valuation time t in years")->capture_default_str();
    cmd->add_flag("--csv", o.csv, "Emit CSV instead of JSON");
    cmd->add_option("--tol-parity", o.tol_parity, "Parity residual tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moving-barrier option pricer with closed forms and numerical oracles", "mbarrier"};
    app.require_subcommand(1);
    Options o;

    auto* price = app.add_subcommand("price", "Price a contract with the closed form");
    add_contract_options(price, o);

    auto* parity = app.add_subcommand("parity", "Check put-call and out-in parity identities");
    add_contract_options(parity, o);

    auto* validate = app.add_subcommand("validate", "Compare the closed form with the oracles");
    add_contract_options(validate, o);
    validate->add_option("--mc-paths", o.mc_paths, "Monte Carlo paths")->capture_default_str();
    validate->add_option("--mc-steps", o.mc_steps, "Monte Carlo time steps")->capture_default_str();
    validate->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    validate->add_option("--pde-grid", o.pde_grid, "PDE space and time steps")->capture_default_str();
    validate->add_option("--threads", o.threads, "Monte Carlo worker threads (0 = all cores)");
    validate->add_option("--tol-heat", o.tol_heat, "Closed form vs heat kernel, absolute")
        ->capture_default_str();
    validate->add_option("--tol-pde", o.tol_pde_rel, "Closed form vs PDE, relative")
        ->capture_default_str();
    validate->add_option("--mc-sigmas", o.mc_sigmas, "Closed form vs MC, in standard errors")
        ->capture_default_str();

    auto* curves = app.add_subcommand("curves", "Inspect curve files");
    curves->require_subcommand(1);
    auto* show = curves->add_subcommand("show", "Print curves and their integrals");
    show->add_option("--curves", o.curves_path, "Curve file (JSON)")->required();
    show->add_option("--time", o.time, "Window start for --to")->capture_default_str();
    show->add_option("--to", o.window_end, "Window end; prints integrals over [time, to]");
    show->add_flag("--csv", o.csv, "Emit cumulative integrals as CSV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*price) return cmd_price(o, out, err);
        if (*parity) return cmd_parity(o, out, err);
        if (*validate) return cmd_validate(o, out, err);
        if (*show) return cmd_curves_show(o, out);
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const RegimeError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kInputError;
}

}  // namespace mbarrier::cli
