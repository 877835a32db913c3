// SPDX-License-Identifier: Apache-2.0
//
// diffadv: channel modelling and link simulation for diffusion-advection particle communication
// Copyright (C) 2026 The diffadv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "diffadv/cli.hpp"

#include "diffadv/csv.hpp"
#include "diffadv/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <set>

namespace diffadv {

namespace {

template <typename T> std::vector<T> parse_list(const std::string &text, const std::string &flag) {
    std::vector<T> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        T v{};
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw ValidationError("cannot parse '" + item + "' as a list entry", flag);
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<double> uniform_grid(double step, double max, bool include_zero) {
    const auto n = static_cast<std::size_t>(std::llround(max / step));
    std::vector<double> g;
    for (std::size_t k = include_zero ? 0 : 1; k <= n; ++k) g.push_back(static_cast<double>(k) * step);
    return g;
}

class Emitter {
  public:
    Emitter(const std::string &name, const ScenarioConfig &cfg, const CliFlags &flags, RunOutcome &outcome)
        : name_(name), cfg_(cfg), outcome_(outcome), dir_(flags.out_dir.empty() ? "." : flags.out_dir),
          hash8_(config_hash(cfg).substr(0, 8)) {}

    CsvWriter writer(std::vector<std::string> header) const {
        CsvWriter w(std::move(header));
        w.comment(provenance_line(name_, cfg_));
        return w;
    }

    std::string path(const std::string &stem) const { return (dir_ / (stem + "_" + hash8_ + ".csv")).string(); }

    void write(const CsvWriter &w, const std::string &stem) {
        std::filesystem::create_directories(dir_);
        const std::string p = path(stem);
        w.write(p);
        outcome_.files.push_back(p);
    }

  private:
    std::string name_;
    const ScenarioConfig &cfg_;
    RunOutcome &outcome_;
    std::filesystem::path dir_;
    std::string hash8_;
};

void reject(bool present, const std::string &flag, const std::string &name) {
    if (present) throw ValidationError("not used by the '" + name + "' subcommand", flag);
}

double single(const std::vector<double> &v, const std::string &flag) {
    if (v.size() != 1) throw ValidationError("expects exactly one value here", flag);
    return v.front();
}

std::string noise_convention_note() {
    return "snr_db = 10 log10(Es_avg / (N sigma^2 samples_per_segment)); ebn0_db = snr_db - 10 log10(bits_per_symbol)";
}

void run_pdp(const ScenarioConfig &cfg, Emitter &em, std::ostream &out) {
    const Scenario &s = cfg.link.scenario;
    const auto tau = uniform_grid(cfg.pdp.tau_step, cfg.pdp.tau_max, true);
    PdpCurve curve;
    if (s.wind.kernel.is_white()) {
        curve = pdp(tau, s);
    } else {
        curve.tau = tau;
        curve.value = pdp_via_autocorrelation(tau, s);
        curve.peclet = peclet(s.geometry, s.medium, s.wind);
        if (s.wind.mean_speed > 0.0) curve.dispersion_time = dispersion_time(s.geometry, s.medium, s.wind);
    }
    const Spectrum spec = pdp_spectrum(curve);
    const double bw = bandwidth_3db(spec);

    CsvWriter w = em.writer({"tau_s", "pdp_value"});
    w.comment("peclet=" + format_double(curve.peclet));
    if (curve.dispersion_time) w.comment("dispersion_time_s=" + format_double(*curve.dispersion_time));
    for (std::size_t i = 0; i < tau.size(); ++i) w.cell(curve.tau[i]).cell(curve.value[i]).end_row();
    em.write(w, "pdp");

    CsvWriter f = em.writer({"frequency_hz", "magnitude"});
    f.comment("bandwidth_3db_hz=" + format_double(bw));
    for (std::size_t i = 0; i < spec.frequency.size(); ++i) f.cell(spec.frequency[i]).cell(spec.magnitude[i]).end_row();
    em.write(f, "pdp_spectrum");

    out << "PDP: " << tau.size() << " delays, 3 dB bandwidth " << format_double(bw) << " Hz\n";
}

void run_autocorr(const ScenarioConfig &cfg, Emitter &em, std::ostream &out) {
    const Scenario &s = cfg.link.scenario;
    const auto tau = uniform_grid(cfg.autocorr.tau_step, cfg.autocorr.tau_max, false);
    CsvWriter w = em.writer({"tau1", "tau2", "t1", "t2", "r_h"});
    std::size_t rows = 0;
    for (double dt : cfg.autocorr.dt) {
        const double t1 = cfg.autocorr.t, t2 = cfg.autocorr.t + dt;
        for (double a : tau)
            for (double b : tau) {
                w.cell(a).cell(b).cell(t1).cell(t2).cell(autocorrelation(a, b, t1, t2, s)).end_row();
                ++rows;
            }
    }
    em.write(w, "autocorr");
    out << "Autocorrelation: " << rows << " grid points\n";
}

void run_stats(const ScenarioConfig &cfg, Emitter &em, std::ostream &out) {
    const Scenario &s = cfg.link.scenario;
    const double pe = peclet(s.geometry, s.medium, s.wind);
    const std::vector<double> &tsym = cfg.stats.t_sym;

    CsvWriter w = em.writer({"peclet", "dispersion_time_s", "t_sym_s", "class"});
    out << "Pe=" << fixed(pe, 2) << "\n";
    if (s.wind.mean_speed > 0.0) {
        const double td = dispersion_time(s.geometry, s.medium, s.wind);
        out << "Td=" << fixed(td, 3) << " s\n";
        std::string line;
        for (double t : tsym) {
            const ChannelClass c = classify(t, td);
            if (!line.empty()) line += "; ";
            line += to_string(c) + " for T_sym=" + format_double(t) + " s";
            w.cell(pe).cell(td).cell(t).cell(to_string(c)).end_row();
        }
        out << line << "\n";
    } else {
        out << "Td undefined without a positive mean wind\n";
    }
    em.write(w, "stats");
}

void run_ber(const ScenarioConfig &cfg, Emitter &em, std::ostream &out) {
    const BerSettings &b = cfg.ber;

    const std::string abscissa = b.convention == NoiseSpec::Kind::Snr ? "snr" : "ebn0";
    CsvWriter trials = em.writer({"abscissa_db", "trial", "bit_errors", "bits_total", "ber"});
    CsvWriter summary = em.writer({"abscissa_db", "mean_ber", "stderr"});
    for (CsvWriter *w : {&trials, &summary}) {
        w->comment("abscissa=" + abscissa + " scheme=" + to_string(cfg.link.scheme) +
                   " T_sym=" + format_double(cfg.link.T_sym) + " trials=" + std::to_string(b.trials));
        w->comment(noise_convention_note());
    }
    if (!b.points.empty()) {
        const BerCurve curve = ber_sweep(cfg.link, b.convention, b.points, b.trials);
        for (const auto &p : curve.points) {
            for (std::size_t t = 0; t < curve.trials; ++t)
                trials.cell(p.abscissa_db).cell(t).cell(p.bit_errors[t]).cell(p.bits_total[t]).cell(p.ber[t]).end_row();
            summary.cell(p.abscissa_db).cell(p.mean_ber()).cell(p.stderr_ber()).end_row();
            out << abscissa << "=" << format_double(p.abscissa_db) << " dB  BER=" << format_double(p.mean_ber())
                << " +/- " << format_double(p.stderr_ber()) << "\n";
        }
    }
    em.write(trials, "ber");
    em.write(summary, "ber_summary");
}

void run_link_dump(const ScenarioConfig &cfg, Emitter &em, std::ostream &out) {

    const LinkResult r = run_link(cfg.link);
    const Constellation c = build_constellation(cfg.link.scheme);
    CsvWriter w =
        em.writer({"symbol_index", "tx_point_1", "tx_point_2", "rx_point_1", "rx_point_2", "decided_index"});
    w.comment(noise_convention_note());
    w.comment("sync_index=" + std::to_string(r.sync_index) + " symbol_errors=" + std::to_string(r.symbol_errors) +
              " bit_errors=" + std::to_string(r.bit_errors));
    for (std::size_t k = 0; k < r.transmitted.size(); ++k) {
        const Vec2 tx = c.points[r.transmitted[k]];
        w.cell(k).cell(tx.x).cell(tx.y).cell(r.equalized[k].x).cell(r.equalized[k].y).cell(r.decided[k]).end_row();
    }
    em.write(w, "link");
    out << "symbols=" << r.transmitted.size() << " symbol_errors=" << r.symbol_errors
        << " bit_errors=" << r.bit_errors << "/" << r.bits_total << "\n";
}

void run_leakage(const ScenarioConfig &cfg, Emitter &em, std::ostream &out) {
    const LeakageSettings &l = cfg.leakage;
    LeakageOptions opts;
    opts.rate = l.rate;
    opts.t_mem = cfg.link.channel.t_mem;
    const auto reports = leakage_sweep(l.n_dim, l.t_sym, cfg.link.scenario, l.mode, cfg.link.seed, opts);
    CsvWriter w = em.writer({"n_dim", "t_sym_s", "leakage", "mode", "seed"});
    w.comment("scenario: " + describe(cfg.link.scenario));
    for (const auto &r : reports) {
        w.cell(r.N).cell(r.T_sym).cell(r.leakage).cell(to_string(r.mode)).cell(static_cast<std::size_t>(r.seed)).end_row();
        out << "N=" << r.N << " T_sym=" << format_double(r.T_sym) << " leakage=" << format_double(r.leakage) << "\n";
    }
    em.write(w, "leakage");
}

// Folds the subcommand's flags into the config so the hash covers them.
ScenarioConfig apply_flags(const std::string &name, ScenarioConfig cfg, const CliFlags &flags) {
    if (flags.snr_db && flags.ebn0_db) throw ValidationError("give either --snr-db or --ebn0-db", "--snr-db");
    if (name == "ber") {
        BerSettings &b = cfg.ber;
        if (flags.snr_db) {
            b.convention = NoiseSpec::Kind::Snr;
            b.points = *flags.snr_db;
        } else if (flags.ebn0_db) {
            b.convention = NoiseSpec::Kind::EbN0;
            b.points = *flags.ebn0_db;
        }
        if (flags.trials) b.trials = *flags.trials;
        if (b.trials < 1) throw ValidationError("must be >= 1", "--trials");
    }
    if (name == "link") {
        if (flags.snr_db) cfg.link.noise = NoiseSpec::snr(single(*flags.snr_db, "--snr-db"));
        if (flags.ebn0_db) cfg.link.noise = NoiseSpec::ebn0(single(*flags.ebn0_db, "--ebn0-db"));
    }
    if ((name == "ber" || name == "link") && flags.tsym) {
        cfg.link.T_sym = single(*flags.tsym, "--tsym");
        cfg.link.validate();
    }
    if (name == "stats" && flags.tsym) {
        if (flags.tsym->empty()) throw ValidationError("must be non-empty", "--tsym");
        for (double t : *flags.tsym)
            if (!(t > 0.0)) throw ValidationError("entries must be > 0", "--tsym");
        cfg.stats.t_sym = *flags.tsym;
    }
    if (name == "leakage") {
        if (flags.ndim) cfg.leakage.n_dim = *flags.ndim;
        if (flags.tsym) cfg.leakage.t_sym = *flags.tsym;
        if (flags.mode) cfg.leakage.mode = channel_mode_from_string(*flags.mode);
        if (cfg.leakage.n_dim.empty() || cfg.leakage.t_sym.empty())
            throw ValidationError("sweep lists must be non-empty", flags.ndim ? "--ndim" : "--tsym");
    }
    return cfg;
}

} // namespace

std::vector<double> parse_number_list(const std::string &text, const std::string &flag) {
    return parse_list<double>(text, flag);
}

std::vector<std::size_t> parse_count_list(const std::string &text, const std::string &flag) {
    return parse_list<std::size_t>(text, flag);
}

std::uint64_t resolve_seed(const CliFlags &flags, const char *env_value, std::uint64_t config_seed) {
    if (flags.seed) return *flags.seed;
    if (env_value && *env_value) {
        const std::string s = env_value;
        std::uint64_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw ValidationError("'" + s + "' is not an unsigned 64-bit integer", kSeedEnvVar);
        return v;
    }
    return config_seed;
}

std::string provenance_line(const std::string &name, const ScenarioConfig &config) {
    return std::string("diffadv ") + kVersion + " subcommand=" + name + " config_hash=" + config_hash(config) +
           " seed=" + std::to_string(config.link.seed);
}

RunOutcome run_subcommand(const std::string &name, const ScenarioConfig &config, const CliFlags &flags,
                          std::ostream &out) {
    const auto &names = subcommand_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw ValidationError("unknown subcommand '" + name + "'", "subcommand");

    const bool uses_trials = name == "ber";
    const bool uses_noise = name == "ber" || name == "link";
    const bool uses_tsym = name == "ber" || name == "link" || name == "stats" || name == "leakage";
    const bool uses_leak = name == "leakage";
    reject(flags.trials && !uses_trials, "--trials", name);
    reject((flags.snr_db || flags.ebn0_db) && !uses_noise, flags.snr_db ? "--snr-db" : "--ebn0-db", name);
    reject(flags.tsym && !uses_tsym, "--tsym", name);
    reject(flags.ndim && !uses_leak, "--ndim", name);
    reject(flags.mode && !uses_leak, "--mode", name);

    RunOutcome outcome;
    if (name == "defaults") {
        out << serialize(ScenarioConfig{});
        return outcome;
    }
    const ScenarioConfig cfg = apply_flags(name, config, flags);
    Emitter em(name, cfg, flags, outcome);
    if (name == "pdp") run_pdp(cfg, em, out);
    else if (name == "autocorr") run_autocorr(cfg, em, out);
    else if (name == "stats") run_stats(cfg, em, out);
    else if (name == "ber") run_ber(cfg, em, out);
    else if (name == "link") run_link_dump(cfg, em, out);
    else if (name == "leakage") run_leakage(cfg, em, out);
    return outcome;
}

} // namespace diffadv
