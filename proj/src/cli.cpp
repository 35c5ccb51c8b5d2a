#include "causal/cli.hpp"

#include "causal/causality.hpp"
#include "causal/constants.hpp"
#include "causal/error.hpp"
#include "causal/kramers_kronig.hpp"
#include "causal/propagation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

namespace causal::cli {

namespace {

constexpr const char* demo_medium = "resonance = 1, 0.1, 1; plasma_omega_sq = 0.2";

// Ordered key-value report, printed as "key = value" or as JSON.
class Report
{
public:
    void add(const std::string& key, double v) { items_.push_back({key, v}); }
    void add(const std::string& key, const std::string& v) { items_.push_back({key, v}); }
    void add(const std::string& key, const char* v) { items_.push_back({key, std::string(v)}); }
    void add(const std::string& key, bool v) { items_.push_back({key, v}); }
    void add(const std::string& key, std::size_t v) { items_.push_back({key, static_cast<double>(v)}); }

    void print(std::ostream& out, bool json) const
    {
        if (json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::object();
            for (const auto& [key, v] : items_) {
                if (const auto* d = std::get_if<double>(&v))
                    j[key] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(format(*d));
                else if (const auto* s = std::get_if<std::string>(&v))
                    j[key] = *s;
                else
                    j[key] = std::get<bool>(v);
            }
            out << j.dump(2) << "\n";
            return;
        }
        for (const auto& [key, v] : items_) {
            out << key << " = ";
            if (const auto* d = std::get_if<double>(&v))
                out << format(*d);
            else if (const auto* s = std::get_if<std::string>(&v))
                out << *s;
            else
                out << (std::get<bool>(v) ? "true" : "false");
            out << "\n";
        }
    }

    static std::string format(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

private:
    std::vector<std::pair<std::string, std::variant<double, std::string, bool>>> items_;
};

// Writes whitespace-separated numeric rows.
class DataFile
{
public:
    DataFile(const std::string& path, const std::string& header) : out_(path)
    {
        if (!out_) throw Error("cannot open output file '" + path + "'");
        out_ << "# " << header << "\n";
    }
    void row(std::initializer_list<double> values)
    {
        bool first = true;
        for (double v : values) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12e", v);
            out_ << (first ? "" : " ") << buf;
            first = false;
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

struct Options
{
    std::string medium;
    std::string input;
    std::string output;
    bool json = false;
    bool gain = false;
    std::size_t count = 0;
    double dt = 0.0;
    double domega = 0.0;
    std::optional<double> delta_cm;
    std::optional<double> delta_m;
    double leak_tol = 1e-6;
    double anticausal_threshold = 1e-2;

    // kk
    std::string from = "auto";
    double re_inf = 1.0;
    double im_inf = 0.0;
    std::optional<double> band_lo, band_hi;

    // propagate
    double carrier = 1.09;
    double width = 300.0;
    double start = 100.0;
    double rise = 8.0;

    // continue
    std::vector<double> ys = {0.0, 0.5, 1.0, 2.0};
    std::optional<double> x_probe;

    // scharnhorst
    std::optional<double> length_cm, length_m;
    double wavelength_cm = 3.9e-11;
    double k = 1e-2;
    double alpha = 1.0 / 137.0;
};

double delta_of(const Options& o)
{
    if (o.delta_cm && o.delta_m) throw Error("give either --delta-cm or --delta-m, not both");
    if (o.delta_m) return *o.delta_m * 100.0;
    if (o.delta_cm) return *o.delta_cm;
    return 5.0 * constants::speed_of_light;
}

TimeGrid grid_of(const Options& o, std::size_t default_count, double default_dt)
{
    const std::size_t count = o.count ? o.count : default_count;
    if (o.dt > 0.0 && o.domega > 0.0) throw Error("give either --dt or --domega, not both");
    double dt = default_dt;
    if (o.dt > 0.0) dt = o.dt;
    if (o.domega > 0.0) dt = 2.0 * pi / (static_cast<double>(count) * o.domega);
    TimeGrid g = TimeGrid::centered(dt, count);
    g.validate();
    return g;
}

Medium medium_of(const Options& o, bool required)
{
    if (!o.medium.empty() && !o.input.empty()) throw Error("give either --medium or --input, not both");
    if (!o.input.empty()) return read_index_table(o.input).table(o.gain);
    if (!o.medium.empty()) return load_medium(o.medium, o.gain);
    if (required) throw Error("this command needs --medium <file|inline> or --input <table>");
    return parse_inline_medium(demo_medium);
}

std::string describe(const Options& o)
{
    if (!o.input.empty()) return o.input;
    if (!o.medium.empty()) return o.medium;
    return demo_medium;
}

int cmd_check(const Options& o, std::ostream& out)
{
    SlabConfig slab;
    slab.medium = medium_of(o, true);
    slab.thickness_delta = delta_of(o);
    const TimeGrid grid = grid_of(o, std::size_t{1} << 14, 0.1);
    CausalityOptions copts;
    copts.leak_tol = o.leak_tol;
    copts.anticausal_threshold = o.anticausal_threshold;
    const CausalityReport rep = relativistic_causality_check(slab, grid, copts);

    Report r;
    r.add("command", "check");
    r.add("medium", describe(o));
    r.add("delta_cm", slab.thickness_delta);
    r.add("transit_time_s", slab.transit_time());
    r.add("grid_count", grid.count);
    r.add("dt_s", grid.dt);
    r.add("anticausal_leakage", rep.anticausal_leakage);
    r.add("leak_tol", o.leak_tol);
    r.add("anticausal_threshold", o.anticausal_threshold);
    r.add("verdict", to_string(rep.verdict));
    r.add("l2_norm", rep.l2_norm);
    for (const auto& ln : rep.uhp_decay) r.add("line_norm_y" + Report::format(ln.y), ln.norm);
    r.add("decay_monotone", rep.decay_monotone);
    r.print(out, o.json);

    if (!o.output.empty()) {
        const auto g = causal_response(shifted_transfer(slab, grid.frequencies()));
        DataFile f(o.output, "tau_s kernel   (response of exp(i w (n - 1) delta / c); tau = 0 is the vacuum front)");
        for (std::size_t k = 0; k < g.values.size(); ++k) f.row({g.grid.time(k), g.values[k]});
    }
    return rep.verdict == Verdict::anticausal ? 2 : 0;
}

bool uniform_from_zero(const std::vector<double>& w)
{
    const double h = (w.back() - w.front()) / static_cast<double>(w.size() - 1);
    if (std::abs(w.front()) > 1e-9 * h) return false;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (std::abs(w[k] - static_cast<double>(k) * h) > 1e-6 * h) return false;
    return true;
}

std::vector<double> resample(const std::vector<double>& x, const std::vector<double>& y, const FrequencyGrid& g)
{
    std::vector<double> out(g.count());
    std::size_t i = 0;
    for (std::size_t j = 0; j < g.count(); ++j) {
        const double w = std::min(g.omega(j), x.back());
        while (i + 2 < x.size() && x[i + 1] < w) ++i;
        const double f = (w - x[i]) / (x[i + 1] - x[i]);
        out[j] = (1.0 - f) * y[i] + f * y[i + 1];
    }
    return out;
}

int cmd_kk(const Options& o, std::ostream& out)
{
    if (o.input.empty()) throw Error("kk needs --input <index table>");
    const IndexColumns cols = read_index_table(o.input);
    bool from_imag;
    if (o.from == "imag")
        from_imag = true;
    else if (o.from == "real")
        from_imag = false;
    else if (o.from == "auto")
        from_imag = cols.has_im;
    else
        throw Error("--from must be imag, real or auto");
    if (from_imag && !cols.has_im) throw Error(o.input + ": n_imag column is absent; use --from real");
    if (!from_imag && !cols.has_re) throw Error(o.input + ": n_real column is absent; use --from imag");
    if (cols.omega.front() != 0.0)
        throw Error(o.input + ": the dispersion integral needs data from omega = 0 (first row has omega = " +
                    Report::format(cols.omega.front()) + ")");

    const auto& src = from_imag ? cols.im : cols.re;
    const auto& other = from_imag ? cols.re : cols.im;
    const bool have_other = from_imag ? cols.has_re : cols.has_im;
    const bool uniform = uniform_from_zero(cols.omega) && o.count == 0;
    const std::size_t count = o.count ? o.count : cols.omega.size();
    const FrequencyGrid grid = FrequencyGrid::positive(cols.omega.back() / static_cast<double>(count - 1), count);
    SampledFunction input{grid, uniform ? src : resample(cols.omega, src, grid)};
    SampledFunction given{grid, have_other ? (uniform ? other : resample(cols.omega, other, grid))
                                           : std::vector<double>(count, std::nan(""))};

    KKOptions kopts;
    kopts.re_at_infinity = o.re_inf;
    kopts.im_at_infinity = o.im_inf;
    const KKResult res = from_imag ? kk_real_from_imag(input, kopts) : kk_imag_from_real(input, kopts);

    Report r;
    r.add("command", "kk");
    r.add("input", o.input);
    r.add("direction", from_imag ? "real_from_imag" : "imag_from_real");
    r.add("rows", cols.omega.size());
    r.add("resampled", !uniform);
    r.add("grid_count", grid.count());
    r.add("domega", grid.domega());
    r.add("re_at_infinity", o.re_inf);
    r.add("im_at_infinity", o.im_inf);
    r.add("truncated", res.truncated);
    r.add("edge_ratio", res.edge_ratio);
    if (!res.warning.empty()) r.add("warning", res.warning);
    if (have_other) {
        const double lo = o.band_lo.value_or(0.0);
        const double hi = o.band_hi.value_or(grid.max_omega());
        r.add("band_lo", lo);
        r.add("band_hi", hi);
        r.add("relative_l2", relative_l2(res.values, given, lo, hi));
    }
    r.print(out, o.json);

    if (!o.output.empty()) {
        DataFile f(o.output, std::string("omega input reconstructed given residual   (") +
                                 (from_imag ? "input = n_imag, reconstructed = n_real" :
                                              "input = n_real, reconstructed = n_imag") +
                                 "; given/residual are nan when the table lacks that column)");
        for (std::size_t j = 0; j < grid.count(); ++j)
            f.row({grid.omega(j), input.values[j], res.values.values[j], given.values[j],
                   res.values.values[j] - given.values[j]});
    }
    return 0;
}

int cmd_propagate(const Options& o, std::ostream& out)
{
    const FrontDemo demo = front_demo();
    SlabConfig slab;
    slab.medium = medium_of(o, false);
    slab.thickness_delta = delta_of(o);
    TimeGrid grid = grid_of(o, demo.grid.count, demo.grid.dt);
    grid.t0 = 0.0;
    const double centre = o.start + 3.5 * o.width;
    const SampledSignal input = front_limited_pulse(grid, o.start, o.rise, centre, o.width, o.carrier);
    const PropagationResult res = propagate_pulse(input, slab);
    const Velocities v = measure_velocities(res, res.input_front, res.input_peak, slab);
    const double c = constants::speed_of_light;
    const double delay = res.front_arrival - res.input_front;

    Report r;
    r.add("command", "propagate");
    r.add("medium", describe(o));
    r.add("delta_cm", slab.thickness_delta);
    r.add("transit_time_s", slab.transit_time());
    r.add("grid_count", grid.count);
    r.add("dt_s", grid.dt);
    r.add("carrier_rad_per_s", o.carrier);
    r.add("input_front_s", res.input_front);
    r.add("front_arrival_s", res.front_arrival);
    r.add("vacuum_front_time_s", res.vacuum_front_time);
    r.add("front_delay_s", delay);
    r.add("noise_floor", res.noise_floor);
    r.add("front_velocity_over_c", v.front_velocity / c);
    r.add("front_within_2dt", std::abs(delay - slab.transit_time()) <= 2.0 * grid.dt * (1.0 + 1e-9));
    r.add("input_peak_s", res.input_peak);
    r.add("peak_arrival_s", res.peak_arrival);
    r.add("peak_transit_velocity_over_c", v.peak_transit_velocity / c);
    if (o.carrier > 0.0) r.add("group_velocity_over_c", group_velocity(slab.medium, o.carrier) / c);
    r.add("causality_violation", v.causality_violation);
    r.print(out, o.json);

    if (!o.output.empty()) {
        DataFile f(o.output, "t_s input output");
        for (std::size_t k = 0; k < grid.count; ++k) f.row({grid.time(k), input.values[k], res.output.values[k]});
    }
    return v.causality_violation ? 2 : 0;
}

int cmd_continue(const Options& o, std::ostream& out)
{
    SlabConfig slab;
    slab.medium = medium_of(o, true);
    slab.thickness_delta = delta_of(o);
    const TimeGrid grid = grid_of(o, std::size_t{1} << 14, 0.1);
    SampledSpectrum K = shifted_transfer(slab, grid.frequencies());
    for (auto& v : K.values) v -= 1.0;

    CausalityOptions copts;
    copts.leak_tol = o.leak_tol;
    copts.anticausal_threshold = o.anticausal_threshold;
    copts.decay_y = o.ys;
    const CausalityReport rep = causality_verdict(K, copts);

    Report r;
    r.add("command", "continue");
    r.add("medium", describe(o));
    r.add("quantity", "exp(i w (n - 1) delta / c) - 1");
    r.add("delta_cm", slab.thickness_delta);
    r.add("grid_count", grid.count);
    r.add("dt_s", grid.dt);
    r.add("anticausal_leakage", rep.anticausal_leakage);
    r.add("verdict", to_string(rep.verdict));
    if (rep.verdict == Verdict::anticausal) {
        r.add("continued", false);
        r.print(out, o.json);
        return 2;
    }
    for (const auto& ln : rep.uhp_decay) r.add("line_norm_y" + Report::format(ln.y), ln.norm);
    r.add("decay_monotone", rep.decay_monotone);
    const double probe = o.x_probe.value_or(0.25 * K.grid.max_omega());
    const DecayProfile prof = uhp_decay_profile(K, o.ys, probe, true);
    r.add("x_probe", prof.x_probe);
    r.add("sup_near", prof.sup_near);
    r.add("sup_far", prof.sup_far);
    r.add("edge_decreasing", prof.decreasing);
    r.print(out, o.json);

    if (!o.output.empty()) {
        DataFile f(o.output, "x y re im   (G(x + i y), G = exp(i w (n - 1) delta / c) - 1)");
        for (double y : o.ys) {
            const auto line = analytic_continue(K, y, true);
            for (std::size_t j = 0; j < line.values.size(); ++j)
                f.row({line.grid.omega(j), y, line.values[j].real(), line.values[j].imag()});
        }
    }
    return 0;
}

int cmd_scharnhorst(const Options& o, std::ostream& out)
{
    if (o.length_cm && o.length_m) throw Error("give either --length-cm or --length-m, not both");
    const double length = o.length_cm ? *o.length_cm : (o.length_m ? *o.length_m * 100.0 : 1e-4);
    const ScharnhorstResult s = scharnhorst_ratio(length, o.wavelength_cm, o.k, o.alpha);
    Report r;
    r.add("command", "scharnhorst");
    r.add("length_cm", length);
    r.add("wavelength_cm", o.wavelength_cm);
    r.add("k", o.k);
    r.add("alpha", o.alpha);
    r.add("coefficient_exact", s.coefficient_exact);
    r.add("coefficient_quoted", s.coefficient_quoted);
    r.add("ratio_exact", s.ratio_exact);
    r.add("ratio_quoted", s.ratio_quoted);
    r.add("delta_c_over_c", s.delta_c_over_c);
    r.print(out, o.json);
    return 0;
}

void add_common(CLI::App* sub, Options& o, bool medium, bool grid)
{
    sub->add_flag("--json", o.json, "Print the report as JSON");
    sub->add_option("--output", o.output, "Write plot data to this path");
    if (medium) {
        sub->add_option("--medium", o.medium, "Medium file (key-value or index table) or inline 'key = value; ...'");
        sub->add_option("--input", o.input, "Index table (omega n_real n_imag)");
        sub->add_flag("--gain", o.gain, "Accept index tables with gain (Im n < 0)");
        sub->add_option("--delta-cm", o.delta_cm, "Slab thickness in cm (default: delta / c = 5 s)");
        sub->add_option("--delta-m", o.delta_m, "Slab thickness in m");
        sub->add_option("--leak-tol", o.leak_tol, "Leakage below which the kernel is causal")->capture_default_str();
        sub->add_option("--anticausal-threshold", o.anticausal_threshold,
                        "Leakage above which the kernel is anticausal")
            ->capture_default_str();
    }
    if (grid) {
        sub->add_option("--grid-count", o.count, "Number of samples");
        sub->add_option("--dt", o.dt, "Time step in s");
        sub->add_option("--domega", o.domega, "Frequency step in rad/s (sets dt = 2 pi / (count domega))");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Causality analysis of dispersive media", "causal"};
    app.require_subcommand(1);

    auto* kk = app.add_subcommand("kk", "Reconstruct one part of n(w) from the other");
    add_common(kk, o, false, true);
    kk->add_option("--input", o.input, "Index table (omega n_real n_imag; nan marks an absent column)")->required();
    kk->add_option("--from", o.from, "Source column: imag, real or auto")->capture_default_str();
    kk->add_option("--re-inf", o.re_inf, "Re n at infinite frequency")->capture_default_str();
    kk->add_option("--im-inf", o.im_inf, "Im n at infinite frequency")->capture_default_str();
    kk->add_option("--band-lo", o.band_lo, "Residual band start (rad/s)");
    kk->add_option("--band-hi", o.band_hi, "Residual band end (rad/s)");

    auto* check = app.add_subcommand("check", "Causality verdict on the delta/c-shifted slab kernel");
    add_common(check, o, true, true);

    auto* prop = app.add_subcommand("propagate", "Send a front-limited pulse through a slab");
    add_common(prop, o, true, true);
    prop->add_option("--carrier", o.carrier, "Carrier frequency in rad/s")->capture_default_str();
    prop->add_option("--width", o.width, "Gaussian envelope width in s")->capture_default_str();
    prop->add_option("--start", o.start, "Pulse start time in s")->capture_default_str();
    prop->add_option("--rise", o.rise, "Onset duration in s")->capture_default_str();

    auto* cont = app.add_subcommand("continue", "Continue the slab transfer function into the upper half-plane");
    add_common(cont, o, true, true);
    cont->add_option("--y", o.ys, "Imaginary parts of the lines")->delimiter(',')->capture_default_str();
    cont->add_option("--x-probe", o.x_probe, "Probe abscissa for the edge decay (default: a quarter of the band)");

    auto* sch = app.add_subcommand("scharnhorst", "Signal-to-light velocity change ratio between plates");
    add_common(sch, o, false, false);
    sch->add_option("--length-cm", o.length_cm, "Plate separation L in cm");
    sch->add_option("--length-m", o.length_m, "Plate separation L in m (default 1e-6)");
    sch->add_option("--wavelength-cm", o.wavelength_cm, "Wavelength in cm")->capture_default_str();
    sch->add_option("--k", o.k, "Coupling constant k")->capture_default_str();
    sch->add_option("--alpha", o.alpha, "Fine-structure constant")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (kk->parsed()) return cmd_kk(o, out);
        if (check->parsed()) return cmd_check(o, out);
        if (prop->parsed()) return cmd_propagate(o, out);
        if (cont->parsed()) return cmd_continue(o, out);
        return cmd_scharnhorst(o, out);
    } catch (const std::exception& e) {
        err << "causal: error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace causal::cli
