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

#include "diffadv/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace diffadv {

std::string to_string(NoiseSpec::Kind kind) {
    switch (kind) {
    case NoiseSpec::Kind::None: return "none";
    case NoiseSpec::Kind::Snr: return "snr";
    case NoiseSpec::Kind::EbN0: return "ebn0";
    }
    return "none";
}

NoiseSpec::Kind noise_kind_from_string(const std::string &name) {
    if (name == "none") return NoiseSpec::Kind::None;
    if (name == "snr") return NoiseSpec::Kind::Snr;
    if (name == "ebn0") return NoiseSpec::Kind::EbN0;
    throw ValidationError("unknown noise convention '" + name + "' (expected none, snr or ebn0)", "link.noise.kind");
}

LinkConfig ScenarioConfig::default_link() {
    LinkConfig l;
    l.scenario.wind.mean_speed = 0.07;
    l.scenario.wind.kernel = CovarianceKernel::white(0.0025);
    return l;
}

bool operator==(const ScenarioConfig &a, const ScenarioConfig &b) {
    const auto &la = a.link, &lb = b.link;
    const auto &sa = la.scenario, &sb = lb.scenario;
    const auto &ca = la.channel, &cb = lb.channel;
    return sa.geometry.source() == sb.geometry.source() && sa.geometry.receiver() == sb.geometry.receiver() &&
           sa.medium.D == sb.medium.D && sa.wind.mean_speed == sb.wind.mean_speed &&
           sa.wind.kernel.kind() == sb.wind.kernel.kind() && sa.wind.kernel.params() == sb.wind.kernel.params() &&
           ca.channel_rate == cb.channel_rate && ca.rx_rate == cb.rx_rate && ca.t_mem == cb.t_mem &&
           ca.normalize == cb.normalize && ca.normalization_spacing == cb.normalization_spacing &&
           la.scheme == lb.scheme && la.N == lb.N && la.T_sym == lb.T_sym && la.n_symbols == lb.n_symbols &&
           la.n_pilots == lb.n_pilots && la.n_trailing_empty == lb.n_trailing_empty && la.tx_rate == lb.tx_rate &&
           la.noise.kind == lb.noise.kind && la.noise.db == lb.noise.db && la.equalizer == lb.equalizer &&
           la.seed == lb.seed && a.pdp == b.pdp && a.autocorr == b.autocorr && a.ber == b.ber &&
           a.stats == b.stats && a.leakage == b.leakage;
}

namespace {

std::string strip_field(const ValidationError &e) {
    std::string msg = e.what();
    const std::string prefix = e.field() + ": ";
    if (!e.field().empty() && msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    return msg;
}

std::string at_line(const YAML::Node &n) {
    const auto m = n.Mark();
    return m.line >= 0 ? " (line " + std::to_string(m.line + 1) + ")" : "";
}

// Walks one mapping, handing out children and checking for stray keys.
class Section {
  public:
    Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ValidationError("expected a mapping" + at_line(node_), path_);
    }

    std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    YAML::Node child(const std::string &key) {
        seen_.insert(key);
        if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node &map = node_;
        return map[key];
    }

    Section section(const std::string &key) { return Section(child(key), field(key)); }

    template <typename T> void get(const std::string &key, T &out) {
        const YAML::Node n = child(key);
        if (!n) return;
        if (!n.IsScalar()) throw ValidationError("expected a scalar" + at_line(n), field(key));
        try {
            out = n.as<T>();
        } catch (const YAML::Exception &) {
            throw ValidationError("cannot convert '" + n.Scalar() + "'" + at_line(n), field(key));
        }
    }

    template <typename T> void get_list(const std::string &key, std::vector<T> &out) {
        const YAML::Node n = child(key);
        if (!n) return;
        if (!n.IsSequence()) throw ValidationError("expected a list" + at_line(n), field(key));
        std::vector<T> v;
        for (const auto &e : n) {
            try {
                v.push_back(e.as<T>());
            } catch (const YAML::Exception &) {
                throw ValidationError("cannot convert list entry" + at_line(e), field(key));
            }
        }
        out = std::move(v);
    }

    void get_vec3(const std::string &key, Vec3 &out) {
        std::vector<double> v;
        get_list(key, v);
        if (!child(key)) return;
        if (v.size() != 3) throw ValidationError("expected three coordinates" + at_line(child(key)), field(key));
        out = {v[0], v[1], v[2]};
    }

    // Re-raises a validation failure with this section's line.
    template <typename Fn> void check(const std::string &key, Fn &&fn) {
        try {
            fn();
        } catch (const ValidationError &e) {
            const YAML::Node n = child(key);
            const std::string f = e.field().empty() ? field(key) : e.field();
            throw ValidationError(strip_field(e) + (n ? at_line(n) : std::string()), f);
        }
    }

    void finish() const {
        if (!node_ || !node_.IsMap()) return;
        for (const auto &kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!seen_.count(key)) throw ValidationError("unknown key" + at_line(kv.first), field(key));
        }
    }

  private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> seen_;
};

void require_positive(double v, const std::string &field) {
    if (!(std::isfinite(v) && v > 0.0)) throw ValidationError("must be > 0", field);
}

} // namespace

ScenarioConfig parse_scenario(const std::string &text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException &e) {
        throw ValidationError("parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg, "");
    }

    ScenarioConfig cfg;
    LinkConfig &link = cfg.link;
    Section top(root, "");

    {
        Section g = top.section("geometry");
        Vec3 src = link.scenario.geometry.source(), rcv = link.scenario.geometry.receiver();
        g.get_vec3("source", src);
        g.get_vec3("receiver", rcv);
        g.check("receiver", [&] { link.scenario.geometry = Geometry(src, rcv); });
        g.finish();
    }
    {
        Section m = top.section("medium");
        m.get("D", link.scenario.medium.D);
        m.check("D", [&] { link.scenario.medium.validate(); });
        m.finish();
    }
    {
        Section w = top.section("wind");
        w.get("mean", link.scenario.wind.mean_speed);
        w.check("mean", [&] {
            if (!std::isfinite(link.scenario.wind.mean_speed)) throw ValidationError("must be finite", "wind.mean");
        });
        Section k = w.section("kernel");
        std::string kind = to_string(link.scenario.wind.kernel.kind());
        KernelParams p = link.scenario.wind.kernel.params();
        k.get("kind", kind);
        k.get("intensity", p.intensity);
        k.get("variance", p.variance);
        k.get("corr_time", p.corr_time);
        k.get("center", p.center);
        k.get("width", p.width);
        k.get("period", p.period);
        k.get("mod_depth", p.mod_depth);
        k.get("mod_scale", p.mod_scale);
        k.check("kind", [&] {
            link.scenario.wind.kernel = CovarianceKernel::from_params(kernel_kind_from_string(kind), p);
        });
        k.finish();
        w.finish();
    }
    {
        Section s = top.section("simulation");
        auto &c = link.channel;
        s.get("channel_rate", c.channel_rate);
        s.get("rx_rate", c.rx_rate);
        s.get("tx_rate", link.tx_rate);
        s.get("T_mem", c.t_mem);
        s.get("normalize_channel", c.normalize);
        s.get("normalization_spacing", c.normalization_spacing);
        s.check("channel_rate", [&] { require_positive(c.channel_rate, "simulation.channel_rate"); });
        s.check("rx_rate", [&] {
            require_positive(c.rx_rate, "simulation.rx_rate");
            rate_ratio(c.channel_rate, c.rx_rate, "simulation.rx_rate");
        });
        s.check("tx_rate", [&] {
            require_positive(link.tx_rate, "simulation.tx_rate");
            rate_ratio(c.channel_rate, link.tx_rate, "simulation.tx_rate");
        });
        s.check("T_mem", [&] { require_positive(c.t_mem, "simulation.T_mem"); });
        s.check("normalization_spacing",
                [&] { require_positive(c.normalization_spacing, "simulation.normalization_spacing"); });
        s.finish();
    }
    {
        Section l = top.section("link");
        std::string scheme = to_string(link.scheme), eq = to_string(link.equalizer);
        l.get("scheme", scheme);
        l.check("scheme", [&] { link.scheme = scheme_from_string(scheme); });
        l.get("N", link.N);
        l.get("T_sym", link.T_sym);
        l.get("n_symbols", link.n_symbols);
        l.get("n_pilots", link.n_pilots);
        l.get("n_trailing_empty", link.n_trailing_empty);
        l.get("equalizer", eq);
        l.check("equalizer", [&] { link.equalizer = equalizer_kind_from_string(eq); });
        Section n = l.section("noise");
        std::string kind = to_string(link.noise.kind);
        n.get("kind", kind);
        n.get("value_db", link.noise.db);
        n.check("kind", [&] { link.noise.kind = noise_kind_from_string(kind); });
        n.finish();
        l.check("T_sym", [&] { link.validate(); });
        l.finish();
    }
    {
        Section a = top.section("analysis");
        Section p = a.section("pdp");
        p.get("tau_step", cfg.pdp.tau_step);
        p.get("tau_max", cfg.pdp.tau_max);
        p.check("tau_step", [&] { require_positive(cfg.pdp.tau_step, "analysis.pdp.tau_step"); });
        p.check("tau_max", [&] { require_positive(cfg.pdp.tau_max, "analysis.pdp.tau_max"); });
        p.finish();

        Section r = a.section("autocorr");
        r.get("tau_step", cfg.autocorr.tau_step);
        r.get("tau_max", cfg.autocorr.tau_max);
        r.get("t", cfg.autocorr.t);
        r.get_list("dt", cfg.autocorr.dt);
        r.check("tau_step", [&] { require_positive(cfg.autocorr.tau_step, "analysis.autocorr.tau_step"); });
        r.check("tau_max", [&] { require_positive(cfg.autocorr.tau_max, "analysis.autocorr.tau_max"); });
        r.check("t", [&] {
            if (!(cfg.autocorr.t >= cfg.autocorr.tau_max))
                throw ValidationError("must be >= tau_max so every window starts at t >= 0", "analysis.autocorr.t");
        });
        r.finish();

        Section b = a.section("ber");
        std::string conv = to_string(cfg.ber.convention);
        b.get("convention", conv);
        b.check("convention", [&] {
            cfg.ber.convention = noise_kind_from_string(conv);
            if (cfg.ber.convention == NoiseSpec::Kind::None)
                throw ValidationError("must be snr or ebn0", "analysis.ber.convention");
        });
        b.get_list("points", cfg.ber.points);
        b.get("trials", cfg.ber.trials);
        b.check("trials", [&] {
            if (cfg.ber.trials < 1) throw ValidationError("must be >= 1", "analysis.ber.trials");
        });
        b.finish();

        Section st = a.section("stats");
        st.get_list("t_sym", cfg.stats.t_sym);
        st.check("t_sym", [&] {
            if (cfg.stats.t_sym.empty()) throw ValidationError("must be non-empty", "analysis.stats.t_sym");
            for (double t : cfg.stats.t_sym) require_positive(t, "analysis.stats.t_sym");
        });
        st.finish();

        Section k = a.section("leakage");
        std::string mode = to_string(cfg.leakage.mode);
        k.get_list("n_dim", cfg.leakage.n_dim);
        k.get_list("t_sym", cfg.leakage.t_sym);
        k.get("mode", mode);
        k.get("rate", cfg.leakage.rate);
        k.check("mode", [&] { cfg.leakage.mode = channel_mode_from_string(mode); });
        k.check("n_dim", [&] {
            if (cfg.leakage.n_dim.empty()) throw ValidationError("must be non-empty", "analysis.leakage.n_dim");
            for (auto n : cfg.leakage.n_dim)
                if (n < 1) throw ValidationError("entries must be >= 1", "analysis.leakage.n_dim");
        });
        k.check("t_sym", [&] {
            if (cfg.leakage.t_sym.empty()) throw ValidationError("must be non-empty", "analysis.leakage.t_sym");
            for (double t : cfg.leakage.t_sym) require_positive(t, "analysis.leakage.t_sym");
        });
        k.check("rate", [&] { require_positive(cfg.leakage.rate, "analysis.leakage.rate"); });
        k.finish();
        a.finish();
    }
    top.get("seed", link.seed);
    top.finish();
    return cfg;
}

ScenarioConfig load_scenario(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path + "'", "config");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

namespace {

std::string list(const std::vector<double> &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + "]";
}

std::string list(const std::vector<std::size_t> &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

std::string vec3(const Vec3 &v) { return list(std::vector<double>{v.x, v.y, v.z}); }

} // namespace

std::string serialize(const ScenarioConfig &cfg) {
    const auto &l = cfg.link;
    const auto &s = l.scenario;
    const auto &p = s.wind.kernel.params();
    const auto &c = l.channel;
    const auto f = format_double;
    std::ostringstream o;
    o << "geometry:\n"
      << "  source: " << vec3(s.geometry.source()) << "\n"
      << "  receiver: " << vec3(s.geometry.receiver()) << "\n"
      << "medium:\n"
      << "  D: " << f(s.medium.D) << "\n"
      << "wind:\n"
      << "  mean: " << f(s.wind.mean_speed) << "\n"
      << "  kernel:\n"
      << "    kind: " << to_string(s.wind.kernel.kind()) << "\n"
      << "    intensity: " << f(p.intensity) << "\n"
      << "    variance: " << f(p.variance) << "\n"
      << "    corr_time: " << f(p.corr_time) << "\n"
      << "    center: " << f(p.center) << "\n"
      << "    width: " << f(p.width) << "\n"
      << "    period: " << f(p.period) << "\n"
      << "    mod_depth: " << f(p.mod_depth) << "\n"
      << "    mod_scale: " << f(p.mod_scale) << "\n"
      << "simulation:\n"
      << "  channel_rate: " << f(c.channel_rate) << "\n"
      << "  rx_rate: " << f(c.rx_rate) << "\n"
      << "  tx_rate: " << f(l.tx_rate) << "\n"
      << "  T_mem: " << f(c.t_mem) << "\n"
      << "  normalize_channel: " << (c.normalize ? "true" : "false") << "\n"
      << "  normalization_spacing: " << f(c.normalization_spacing) << "\n"
      << "link:\n"
      << "  scheme: " << to_string(l.scheme) << "\n"
      << "  N: " << l.N << "\n"
      << "  T_sym: " << f(l.T_sym) << "\n"
      << "  n_symbols: " << l.n_symbols << "\n"
      << "  n_pilots: " << l.n_pilots << "\n"
      << "  n_trailing_empty: " << l.n_trailing_empty << "\n"
      << "  equalizer: " << to_string(l.equalizer) << "\n"
      << "  noise:\n"
      << "    kind: " << to_string(l.noise.kind) << "\n"
      << "    value_db: " << f(l.noise.db) << "\n"
      << "analysis:\n"
      << "  pdp:\n"
      << "    tau_step: " << f(cfg.pdp.tau_step) << "\n"
      << "    tau_max: " << f(cfg.pdp.tau_max) << "\n"
      << "  autocorr:\n"
      << "    tau_step: " << f(cfg.autocorr.tau_step) << "\n"
      << "    tau_max: " << f(cfg.autocorr.tau_max) << "\n"
      << "    t: " << f(cfg.autocorr.t) << "\n"
      << "    dt: " << list(cfg.autocorr.dt) << "\n"
      << "  ber:\n"
      << "    convention: " << to_string(cfg.ber.convention) << "\n"
      << "    points: " << list(cfg.ber.points) << "\n"
      << "    trials: " << cfg.ber.trials << "\n"
      << "  stats:\n"
      << "    t_sym: " << list(cfg.stats.t_sym) << "\n"
      << "  leakage:\n"
      << "    n_dim: " << list(cfg.leakage.n_dim) << "\n"
      << "    t_sym: " << list(cfg.leakage.t_sym) << "\n"
      << "    mode: " << to_string(cfg.leakage.mode) << "\n"
      << "    rate: " << f(cfg.leakage.rate) << "\n"
      << "seed: " << l.seed << "\n";
    return o.str();
}

std::string config_hash(const ScenarioConfig &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace diffadv
