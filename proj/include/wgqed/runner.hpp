#ifndef WGQED_RUNNER_HPP
#define WGQED_RUNNER_HPP

// Config-driven run front end.
//
// Configs are flat `key = value` documents: one pair per line, `#` starts a
// comment, lists are space-separated, grids are `start stop count`. Unknown
// and duplicate keys are errors. Each mode writes one CSV file (headers are
// fixed per mode, floats printed with 17 significant digits) and reports a
// one-line summary. Grid evaluation may run on several threads, capped by
// the WGQED_THREADS environment variable; output is assembled in grid order
// and is byte-identical regardless of the schedule.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wgqed/cavity.hpp"
#include "wgqed/core.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/nonreciprocity.hpp"
#include "wgqed/rng.hpp"
#include "wgqed/transfer.hpp"
#include "wgqed/transparency.hpp"

namespace wgqed {

enum class RunMode { spectrum, transparency, cavity, eta_map, eta_argmax, oracle_check };

inline const char* mode_name(RunMode m) {
    switch (m) {
    case RunMode::spectrum: return "spectrum";
    case RunMode::transparency: return "transparency";
    case RunMode::cavity: return "cavity";
    case RunMode::eta_map: return "eta-map";
    case RunMode::eta_argmax: return "eta-argmax";
    case RunMode::oracle_check: return "oracle-check";
    }
    return "?";
}

struct RunConfig {
    RunMode mode = RunMode::spectrum;

    // chain block (spectrum)
    double gamma = 1.0;
    double gamma0 = 0.0;
    std::vector<double> detunings;
    std::vector<double> phases;

    // transparency block
    SchemeKind parity = SchemeKind::even_pairwise;
    std::vector<double> magnitudes;
    std::optional<double> delta0;
    std::vector<std::size_t> permutation;
    double theta = std::numbers::pi;

    // cavity block
    double kappa = 1.0;
    double g = 0.0;
    double cavity_detuning = 0.0;
    std::vector<double> atom_detunings;

    // two-atom block
    double mean_detuning = 0.0;

    // grids / ranges
    std::optional<SweepGrid> grid;
    std::optional<SweepGrid> theta_grid;
    std::optional<SweepGrid> s_grid;
    std::optional<std::pair<double, double>> theta_range;
    std::optional<std::pair<double, double>> s_range;

    // control
    std::uint64_t seed = 1;
    std::size_t cases = 100;
    std::string out;              // empty: derived from the config path by the CLI
    std::string format = "csv";
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double_token(const std::string& tok, const std::string& key, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
        throw validation_error("line " + std::to_string(line) + ": key '" + key +
                               "': cannot parse number '" + tok + "'");
    if (!std::isfinite(v))
        throw validation_error("line " + std::to_string(line) + ": key '" + key +
                               "': value must be finite");
    return v;
}

inline std::uint64_t parse_u64_token(const std::string& tok, const std::string& key, std::size_t line) {
    if (tok.empty() || tok[0] == '-' || tok[0] == '+')
        throw validation_error("line " + std::to_string(line) + ": key '" + key +
                               "': expected an unsigned integer, got '" + tok + "'");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size())
        throw validation_error("line " + std::to_string(line) + ": key '" + key +
                               "': expected an unsigned integer, got '" + tok + "'");
    return v;
}

inline std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Parsed key = value document with strict single-use bookkeeping.
class ConfigDoc {
public:
    explicit ConfigDoc(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto nl = text.find('\n', pos);
            std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                                 : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            if (const auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            const std::string stripped = trim(raw);
            if (stripped.empty()) continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw validation_error("line " + std::to_string(line_no) +
                                       ": expected 'key = value', got '" + stripped + "'");
            const std::string key = trim(std::string_view(stripped).substr(0, eq));
            const std::string value = trim(std::string_view(stripped).substr(eq + 1));
            if (key.empty())
                throw validation_error("line " + std::to_string(line_no) + ": empty key");
            if (entries_.count(key))
                throw validation_error("line " + std::to_string(line_no) + ": duplicate key '" +
                                       key + "' (first set on line " +
                                       std::to_string(entries_[key].line) + ")");
            entries_[key] = Entry{value, line_no, false};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string require_str(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw validation_error("missing required key '" + key + "'");
        it->second.used = true;
        return it->second.value;
    }

    std::optional<std::string> get_str(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::size_t line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    double require_double(const std::string& key) {
        return parse_double_token(require_str(key), key, line_of(key));
    }

    double get_double(const std::string& key, double fallback) {
        auto v = get_str(key);
        return v ? parse_double_token(*v, key, line_of(key)) : fallback;
    }

    std::vector<double> require_list(const std::string& key) {
        const std::string raw = require_str(key);
        std::vector<double> out;
        for (const auto& tok : split_tokens(raw))
            out.push_back(parse_double_token(tok, key, line_of(key)));
        return out;
    }

    std::vector<std::size_t> get_index_list(const std::string& key) {
        auto v = get_str(key);
        if (!v) return {};
        std::vector<std::size_t> out;
        for (const auto& tok : split_tokens(*v))
            out.push_back(static_cast<std::size_t>(parse_u64_token(tok, key, line_of(key))));
        return out;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
        auto v = get_str(key);
        return v ? parse_u64_token(*v, key, line_of(key)) : fallback;
    }

    SweepGrid require_grid(const std::string& key) {
        const std::string raw = require_str(key);
        const auto toks = split_tokens(raw);
        if (toks.size() != 3)
            throw validation_error("line " + std::to_string(line_of(key)) + ": key '" + key +
                                   "': expected 'start stop count', got '" + raw + "'");
        const double start = parse_double_token(toks[0], key, line_of(key));
        const double stop = parse_double_token(toks[1], key, line_of(key));
        const auto count = parse_u64_token(toks[2], key, line_of(key));
        return SweepGrid(start, stop, static_cast<std::size_t>(count));
    }

    std::pair<double, double> require_range(const std::string& key) {
        const std::string raw = require_str(key);
        const auto toks = split_tokens(raw);
        if (toks.size() != 2)
            throw validation_error("line " + std::to_string(line_of(key)) + ": key '" + key +
                                   "': expected 'lo hi', got '" + raw + "'");
        const double lo = parse_double_token(toks[0], key, line_of(key));
        const double hi = parse_double_token(toks[1], key, line_of(key));
        if (lo > hi)
            throw validation_error("line " + std::to_string(line_of(key)) + ": key '" + key +
                                   "': lower bound exceeds upper bound");
        return {lo, hi};
    }

    void finish(const std::string& mode) const {
        const Entry* worst = nullptr;
        std::string worst_key;
        for (const auto& [key, entry] : entries_)
            if (!entry.used && (!worst || entry.line < worst->line)) {
                worst = &entry;
                worst_key = key;
            }
        if (worst)
            throw validation_error("line " + std::to_string(worst->line) + ": unknown key '" +
                                   worst_key + "' for mode '" + mode + "'");
    }

private:
    struct Entry {
        std::string value;
        std::size_t line = 0;
        bool used = false;
    };
    std::map<std::string, Entry> entries_;
};

} // namespace detail

inline RunConfig parse_config(std::string_view text) {
    detail::ConfigDoc doc(text);
    RunConfig cfg;

    const std::string mode = doc.require_str("mode");
    if (mode == "spectrum") cfg.mode = RunMode::spectrum;
    else if (mode == "transparency") cfg.mode = RunMode::transparency;
    else if (mode == "cavity") cfg.mode = RunMode::cavity;
    else if (mode == "eta-map") cfg.mode = RunMode::eta_map;
    else if (mode == "eta-argmax") cfg.mode = RunMode::eta_argmax;
    else if (mode == "oracle-check") cfg.mode = RunMode::oracle_check;
    else
        throw validation_error("line " + std::to_string(doc.line_of("mode")) +
                               ": unknown mode '" + mode + "' (expected spectrum, transparency, "
                               "cavity, eta-map, eta-argmax or oracle-check)");

    if (auto out = doc.get_str("out")) cfg.out = *out;
    if (auto fmt = doc.get_str("format")) {
        if (*fmt != "csv")
            throw validation_error("line " + std::to_string(doc.line_of("format")) +
                                   ": unsupported format '" + *fmt + "' (only csv)");
        cfg.format = *fmt;
    }
    cfg.seed = doc.get_u64("seed", 1);

    switch (cfg.mode) {
    case RunMode::spectrum: {
        cfg.gamma = doc.require_double("gamma");
        cfg.gamma0 = doc.get_double("gamma0", 0.0);
        cfg.detunings = doc.require_list("detunings");
        cfg.phases = doc.require_list("phases");
        if (cfg.phases.size() == 1 && cfg.detunings.size() > 1)
            cfg.phases.assign(cfg.detunings.size(), cfg.phases.front());
        cfg.grid = doc.require_grid("grid");
        // validate early so config errors surface as such
        build_chain(cfg.gamma, cfg.gamma0, cfg.detunings, cfg.phases);
        break;
    }
    case RunMode::transparency: {
        const std::string parity = doc.require_str("parity");
        if (parity == "even") cfg.parity = SchemeKind::even_pairwise;
        else if (parity == "odd") cfg.parity = SchemeKind::odd_pairwise_plus_one;
        else
            throw validation_error("line " + std::to_string(doc.line_of("parity")) +
                                   ": parity must be 'even' or 'odd', got '" + parity + "'");
        cfg.gamma = doc.require_double("gamma");
        cfg.gamma0 = doc.get_double("gamma0", 0.0);
        cfg.magnitudes = doc.require_list("magnitudes");
        if (cfg.parity == SchemeKind::odd_pairwise_plus_one)
            cfg.delta0 = doc.require_double("delta0");
        else if (doc.has("delta0"))
            throw validation_error("line " + std::to_string(doc.line_of("delta0")) +
                                   ": delta0 is only valid for parity = odd");
        cfg.permutation = doc.get_index_list("permutation");
        cfg.theta = doc.get_double("theta", std::numbers::pi);
        cfg.grid = doc.require_grid("grid");
        break;
    }
    case RunMode::cavity: {
        cfg.kappa = doc.require_double("kappa");
        cfg.g = doc.require_double("g");
        cfg.cavity_detuning = doc.get_double("cavity_detuning", 0.0);
        cfg.atom_detunings = doc.require_list("atom_detunings");
        cfg.grid = doc.require_grid("grid");
        CavitySystem{cfg.kappa, cfg.g, cfg.cavity_detuning, cfg.atom_detunings}.validate();
        break;
    }
    case RunMode::eta_map: {
        cfg.gamma = doc.require_double("gamma");
        cfg.gamma0 = doc.get_double("gamma0", 0.0);
        cfg.mean_detuning = doc.get_double("mean_detuning", 0.0);
        cfg.theta_grid = doc.require_grid("theta_grid");
        cfg.s_grid = doc.require_grid("s_grid");
        break;
    }
    case RunMode::eta_argmax: {
        cfg.gamma = doc.require_double("gamma");
        cfg.gamma0 = doc.get_double("gamma0", 0.0);
        cfg.mean_detuning = doc.get_double("mean_detuning", 0.0);
        cfg.theta_range = doc.require_range("theta_range");
        cfg.s_range = doc.require_range("s_range");
        break;
    }
    case RunMode::oracle_check: {
        cfg.cases = static_cast<std::size_t>(doc.get_u64("cases", 100));
        if (cfg.cases == 0)
            throw validation_error("oracle-check needs cases >= 1");
        break;
    }
    }
    if (cfg.gamma0 < 0.0)
        throw validation_error("gamma0 must be non-negative, got " + std::to_string(cfg.gamma0));

    doc.finish(mode);
    return cfg;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline unsigned thread_cap() {
    if (const char* env = std::getenv("WGQED_THREADS")) {
        const std::string s(env);
        char* end = nullptr;
        const unsigned long v = std::strtoul(s.c_str(), &end, 10);
        if (s.empty() || end != s.c_str() + s.size() || v == 0)
            throw validation_error("WGQED_THREADS must be a positive integer, got '" + s + "'");
        return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Static chunked parallel loop; body(i) fills slot i of a preallocated
// result container, so assembly order never depends on the schedule.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned cap = std::min<std::size_t>(thread_cap(), n == 0 ? 1 : n);
    if (cap <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(cap);
    for (unsigned w = 0; w < cap; ++w) {
        const std::size_t lo = n * w / cap;
        const std::size_t hi = n * (w + 1) / cap;
        workers.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

// In-memory result of a run: the CSV body and the one-line summary.
// oracle_worst_* carry the oracle-check maxima for the caller's pass/fail
// policy; they are zero in every other mode.
struct RunOutput {
    std::string csv;
    std::string summary;
    double oracle_worst_dr = 0.0;
    double oracle_worst_dt = 0.0;
};

namespace detail {

inline void append_spectrum_rows(std::string& csv, const SweepGrid& grid,
                                 const std::vector<ScatteringResult>& results) {
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const auto& res = results[i];
        csv += fmt17(grid.value(i));
        csv += ',';
        csv += fmt17(res.r.real());
        csv += ',';
        csv += fmt17(res.r.imag());
        csv += ',';
        csv += fmt17(res.t.real());
        csv += ',';
        csv += fmt17(res.t.imag());
        csv += ',';
        csv += fmt17(res.reflectance());
        csv += ',';
        csv += fmt17(res.transmittance());
        csv += ',';
        csv += fmt17(res.loss());
        csv += '\n';
    }
}

struct Extremum {
    double min_v = 0, min_at = 0, max_v = 0, max_at = 0;
};

template <typename Get>
Extremum scan_extrema(const SweepGrid& grid, const std::vector<ScatteringResult>& results, Get&& get) {
    Extremum e;
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double v = get(results[i]);
        if (i == 0 || v < e.min_v) { e.min_v = v; e.min_at = grid.value(i); }
        if (i == 0 || v > e.max_v) { e.max_v = v; e.max_at = grid.value(i); }
    }
    return e;
}

} // namespace detail

inline RunOutput execute(const RunConfig& cfg) {
    const bool needs_grid = cfg.mode == RunMode::spectrum || cfg.mode == RunMode::transparency ||
                            cfg.mode == RunMode::cavity;
    if (needs_grid && !cfg.grid)
        throw validation_error("mode '" + std::string(mode_name(cfg.mode)) + "' needs a grid");
    if (cfg.mode == RunMode::eta_map && (!cfg.theta_grid || !cfg.s_grid))
        throw validation_error("eta-map needs theta_grid and s_grid");
    if (cfg.mode == RunMode::eta_argmax && (!cfg.theta_range || !cfg.s_range))
        throw validation_error("eta-argmax needs theta_range and s_range");
    if (cfg.mode == RunMode::transparency &&
        cfg.parity == SchemeKind::odd_pairwise_plus_one && !cfg.delta0)
        throw validation_error("odd transparency needs delta0");

    RunOutput out;
    std::ostringstream summary;
    summary << mode_name(cfg.mode) << ":";

    switch (cfg.mode) {
    case RunMode::spectrum:
    case RunMode::transparency: {
        EmitterChain chain = [&cfg] {
            if (cfg.mode == RunMode::spectrum)
                return build_chain(cfg.gamma, cfg.gamma0, cfg.detunings, cfg.phases);
            const std::vector<double> dets =
                cfg.parity == SchemeKind::even_pairwise
                    ? make_even_pairwise(cfg.magnitudes, cfg.permutation)
                    : make_odd_chain(cfg.magnitudes, *cfg.delta0, cfg.permutation);
            return build_uniform_chain(cfg.gamma, cfg.gamma0, dets, cfg.theta);
        }();
        const SweepGrid& grid = *cfg.grid;
        std::vector<ScatteringResult> results(grid.count());
        detail::parallel_for(grid.count(), [&](std::size_t i) {
            results[i] = chain_scatter(chain, ProbeDetuning{grid.value(i)});
        });
        out.csv = "delta,re_r,im_r,re_t,im_t,R,T,loss\n";
        detail::append_spectrum_rows(out.csv, grid, results);
        const auto ext = detail::scan_extrema(grid, results,
                                              [](const ScatteringResult& r) { return r.transmittance(); });
        summary << " points=" << grid.count()
                << " T_min=" << detail::fmt6(ext.min_v) << " at delta=" << detail::fmt6(ext.min_at)
                << " T_max=" << detail::fmt6(ext.max_v) << " at delta=" << detail::fmt6(ext.max_at);
        if (cfg.mode == RunMode::transparency) {
            if (cfg.parity == SchemeKind::even_pairwise)
                summary << " midpoint_deviation="
                        << detail::fmt6(transparency_deviation(chain, ProbeDetuning{0.0}));
            else
                summary << " odd_residual=" << detail::fmt6(odd_chain_residual(chain, grid));
        }
        break;
    }
    case RunMode::cavity: {
        const SweepGrid& grid = *cfg.grid;
        std::vector<ScatteringResult> results(grid.count());
        detail::parallel_for(grid.count(), [&](std::size_t i) {
            CavitySystem sys{cfg.kappa, cfg.g, cfg.cavity_detuning, cfg.atom_detunings};
            const double x = grid.value(i);
            for (double& d : sys.atom_detunings) d -= x;  // laser scan, cavity locked
            const cplx t = at_atomic_pole(sys) ? cplx(0, 0) : cavity_transmission(sys);
            results[i] = ScatteringResult{cplx(0, 0), t, at_atomic_pole(sys)};
        });
        out.csv = "delta_probe,re_t,im_t,T\n";
        for (std::size_t i = 0; i < grid.count(); ++i) {
            out.csv += detail::fmt17(grid.value(i));
            out.csv += ',';
            out.csv += detail::fmt17(results[i].t.real());
            out.csv += ',';
            out.csv += detail::fmt17(results[i].t.imag());
            out.csv += ',';
            out.csv += detail::fmt17(results[i].transmittance());
            out.csv += '\n';
        }
        const auto ext = detail::scan_extrema(grid, results,
                                              [](const ScatteringResult& r) { return r.transmittance(); });
        summary << " points=" << grid.count()
                << " T_min=" << detail::fmt6(ext.min_v) << " at delta=" << detail::fmt6(ext.min_at)
                << " T_max=" << detail::fmt6(ext.max_v) << " at delta=" << detail::fmt6(ext.max_at);
        break;
    }
    case RunMode::eta_map: {
        const EtaField field = eta_map(*cfg.theta_grid, *cfg.s_grid,
                                       cfg.gamma, cfg.gamma0, cfg.mean_detuning);
        out.csv = "theta,s,eta\n";
        double lo = field.values.front(), hi = field.values.front();
        std::size_t k = 0;
        for (double th : field.theta_grid)
            for (double s : field.s_grid) {
                const double e = field.values[k++];
                lo = std::min(lo, e);
                hi = std::max(hi, e);
                out.csv += detail::fmt17(th);
                out.csv += ',';
                out.csv += detail::fmt17(s);
                out.csv += ',';
                out.csv += detail::fmt17(e);
                out.csv += '\n';
            }
        summary << " points=" << field.values.size()
                << " eta_min=" << detail::fmt6(lo) << " eta_max=" << detail::fmt6(hi);
        break;
    }
    case RunMode::eta_argmax: {
        const EtaRegion region{cfg.theta_range->first, cfg.theta_range->second,
                               cfg.s_range->first, cfg.s_range->second};
        const EtaArgmax res = eta_argmax(region, cfg.gamma, cfg.gamma0, cfg.mean_detuning);
        out.csv = "theta_star,s_star,eta_star\n";
        out.csv += detail::fmt17(res.theta);
        out.csv += ',';
        out.csv += detail::fmt17(res.s);
        out.csv += ',';
        out.csv += detail::fmt17(res.eta);
        out.csv += '\n';
        summary << " theta_star=" << detail::fmt6(res.theta) << " s_star=" << detail::fmt6(res.s)
                << " eta_star=" << detail::fmt6(res.eta);
        break;
    }
    case RunMode::oracle_check: {
        DrawStream draws(cfg.seed);
        out.csv = "case,max_abs_dr,max_abs_dt\n";
        for (std::size_t k = 0; k < cfg.cases; ++k) {
            const std::size_t n = 1 + static_cast<std::size_t>(draws.index(32));
            const double gamma = draws.uniform(0.5, 2.0);
            const double gamma0 = (k % 2 == 0) ? 0.0 : draws.uniform(0.0, 1.5) * gamma;
            std::vector<double> dets(n), phases(n);
            for (double& d : dets) d = draws.uniform(-5.0, 5.0);
            for (double& p : phases) p = draws.uniform(0.0, 2.0 * std::numbers::pi);
            const EmitterChain chain(gamma, gamma0, dets, phases);
            const ProbeDetuning probe{draws.uniform(-6.0, 6.0)};
            const ScatteringResult a = chain_scatter(chain, probe);
            const ScatteringResult b = segment_solve(chain, probe);
            double dr = std::abs(a.r - b.r);
            double dt = std::abs(a.t - b.t);
            if (n == 2) {
                const ScatteringResult c = fabry_perot_two_atom(chain, probe);
                dr = std::max(dr, std::abs(a.r - c.r));
                dt = std::max(dt, std::abs(a.t - c.t));
            }
            out.oracle_worst_dr = std::max(out.oracle_worst_dr, dr);
            out.oracle_worst_dt = std::max(out.oracle_worst_dt, dt);
            out.csv += std::to_string(k + 1);
            out.csv += ',';
            out.csv += detail::fmt17(dr);
            out.csv += ',';
            out.csv += detail::fmt17(dt);
            out.csv += '\n';
        }
        summary << " cases=" << cfg.cases << " seed=" << cfg.seed
                << " max_abs_dr=" << detail::fmt6(out.oracle_worst_dr)
                << " max_abs_dt=" << detail::fmt6(out.oracle_worst_dt);
        break;
    }
    }

    out.summary = summary.str();
    return out;
}

constexpr double kOracleTolerance = 1e-10;

// Executes the config and writes the CSV to out_path. Returns the summary
// line. Throws validation_error for bad configs or unwritable paths and
// degeneracy_error for numerical failures (including an oracle-check whose
// routes disagree beyond kOracleTolerance).
inline std::string run(const RunConfig& cfg, const std::string& out_path) {
    const RunOutput result = execute(cfg);
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw validation_error("cannot open output path '" + out_path + "'");
    file.write(result.csv.data(), static_cast<std::streamsize>(result.csv.size()));
    file.close();
    if (!file)
        throw validation_error("failed while writing output path '" + out_path + "'");
    if (cfg.mode == RunMode::oracle_check &&
        (result.oracle_worst_dr > kOracleTolerance || result.oracle_worst_dt > kOracleTolerance))
        throw degeneracy_error("oracle routes disagree: max |dr| = " +
                               detail::fmt6(result.oracle_worst_dr) + ", max |dt| = " +
                               detail::fmt6(result.oracle_worst_dt) + " (tolerance 1e-10)");
    return result.summary;
}

} // namespace wgqed

#endif // WGQED_RUNNER_HPP
