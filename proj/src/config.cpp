// SPDX-License-Identifier: Apache-2.0

#include "wgsr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wgsr {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int out = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw Error("config: '" + key + "' expects an integer, got '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw Error("config: '" + key + "' expects a number, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw Error("config: '" + key + "' expects a boolean, got '" + v + "'");
}

LossDomain to_domain(const std::string& key, const std::string& v) {
    if (v == "SWT" || v == "swt") return LossDomain::SWT;
    if (v == "RGB" || v == "rgb") return LossDomain::RGB;
    throw Error("config: '" + key + "' must be SWT or RGB, got '" + v + "'");
}

const char* domain_name(LossDomain d) { return d == LossDomain::SWT ? "SWT" : "RGB"; }

}  // namespace

void TrainConfig::apply(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw Error("config: expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string val = trim(assignment.substr(eq + 1));
    if (key.empty() || val.empty())
        throw Error("config: empty key or value in '" + assignment + "'");

    if (key.rfind("lambda.", 0) == 0) {
        const std::string sub = key.substr(7);
        const double v = to_double(key, val);
        if (!std::isfinite(v) || v < 0.0)
            throw Error("config: '" + key + "' must be finite and >= 0");
        lambda_overrides.emplace_back(sub, v);
        return;
    }

    if (key == "patch") patch = to_int(key, val);
    else if (key == "batch") batch = to_int(key, val);
    else if (key == "iters") iters = to_int(key, val);
    else if (key == "pretrain_iters") pretrain_iters = to_int(key, val);
    else if (key == "lr") lr = to_double(key, val);
    else if (key == "lr_halve_step") lr_halve_step = to_int(key, val);
    else if (key == "d_steps") d_steps = to_int(key, val);
    else if (key == "beta1") beta1 = to_double(key, val);
    else if (key == "beta2") beta2 = to_double(key, val);
    else if (key == "eps") eps = to_double(key, val);
    else if (key == "wavelet") wavelet = val;
    else if (key == "levels") levels = to_int(key, val);
    else if (key == "raw_sum_l1") raw_sum_l1 = to_bool(key, val);
    else if (key == "relativistic") relativistic = to_bool(key, val);
    else if (key == "fidelity_domain") fidelity_domain = to_domain(key, val);
    else if (key == "adv_domain") adv_domain = to_domain(key, val);
    else if (key == "perc_kind") {
        if (val == "off") perc_kind = PercKind::Off;
        else if (val == "feature") perc_kind = PercKind::Feature;
        else throw Error("config: perc_kind must be off or feature, got '" + val + "'");
    }
    else if (key == "gen.blocks") gen.num_blocks = to_int(key, val);
    else if (key == "gen.features") gen.features = to_int(key, val);
    else if (key == "disc.layers") disc.conv_layers = to_int(key, val);
    else if (key == "disc.features") disc.base_features = to_int(key, val);
    else if (key == "batch_stats") batch_stats = to_bool(key, val);
    else if (key == "seed") {
        seed = static_cast<uint64_t>(std::stoull(val));
        seed_set = true;
    }
    else throw Error("config: unknown key '" + key + "'");
}

void TrainConfig::finalize() {
    if (levels != 1 && levels != 2) throw Error("config: levels must be 1 or 2");
    weights = default_weights(levels);
    for (const auto& [k, v] : lambda_overrides) {
        if (k == "adv") weights.adv = v;
        else if (k == "perc") weights.perc = v;
        else weights.set(k, v);
    }
    weights.validate_for(levels);
    make_filter(wavelet);  // throws on unknown family
    if (patch < 8) throw Error("config: patch must be >= 8");
    if (batch < 1) throw Error("config: batch must be >= 1");
    if (iters < 0 || pretrain_iters < 0) throw Error("config: iteration counts must be >= 0");
    if (lr <= 0.0) throw Error("config: lr must be positive");
    if (lr_halve_step < 1) throw Error("config: lr_halve_step must be >= 1");
    if (d_steps < 1) throw Error("config: d_steps must be >= 1");
    gen.validate();
    disc.input_height = patch * 4;
    disc.input_width = patch * 4;
    disc.use_batch_stats = batch_stats;
    disc.validate();
}

std::string TrainConfig::serialize() const {
    std::ostringstream os;
    os << "patch=" << patch << "\nbatch=" << batch << "\niters=" << iters
       << "\npretrain_iters=" << pretrain_iters << "\nlr=" << lr
       << "\nlr_halve_step=" << lr_halve_step << "\nd_steps=" << d_steps
       << "\nbeta1=" << beta1 << "\nbeta2=" << beta2 << "\neps=" << eps
       << "\nwavelet=" << wavelet << "\nlevels=" << levels
       << "\nraw_sum_l1=" << (raw_sum_l1 ? "true" : "false")
       << "\nrelativistic=" << (relativistic ? "true" : "false")
       << "\nfidelity_domain=" << domain_name(fidelity_domain)
       << "\nadv_domain=" << domain_name(adv_domain)
       << "\nperc_kind=" << (perc_kind == PercKind::Off ? "off" : "feature")
       << "\ngen.blocks=" << gen.num_blocks << "\ngen.features=" << gen.features
       << "\ndisc.layers=" << disc.conv_layers << "\ndisc.features=" << disc.base_features
       << "\nbatch_stats=" << (batch_stats ? "true" : "false") << "\nseed=" << seed
       << "\n";
    for (const auto& [k, v] : weights.subband) os << "lambda." << k << "=" << v << "\n";
    os << "lambda.adv=" << weights.adv << "\nlambda.perc=" << weights.perc << "\n";
    return os.str();
}

uint64_t TrainConfig::hash() const {
    uint64_t h = 1469598103934665603ull;
    for (const char c : serialize()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

TrainConfig load_config(const std::optional<std::string>& path,
                        const std::vector<std::string>& overrides) {
    TrainConfig cfg;
    if (path) {
        std::ifstream is(*path);
        if (!is) throw Error("config: cannot open '" + *path + "'");
        std::string line;
        while (std::getline(is, line)) {
            const auto hash_pos = line.find('#');
            if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
            line = trim(line);
            if (!line.empty()) cfg.apply(line);
        }
    }
    for (const auto& o : overrides) cfg.apply(o);
    cfg.finalize();
    return cfg;
}

}  // namespace wgsr
