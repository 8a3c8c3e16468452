#include "econet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "econet/gkp.hpp"

namespace econet {

namespace {

std::string tagged_id(const char* prefix, int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%02d", prefix, i);
    return buf;
}

IndicatorId indicator_for(int i) {
    static const Account kAccounts[] = {Account::goods, Account::fdi, Account::equity,
                                        Account::debt};
    IndicatorId id;
    id.country = tagged_id("C", i);
    id.account = kAccounts[i % 4];
    id.direction = i % 2 == 0 ? Direction::in : Direction::out;
    return id;
}

}  // namespace

void PanelSynthSpec::validate() const {
    if (indicators < 4) throw validation_error("synth panel: need at least 4 indicators");
    if (years < 5) throw validation_error("synth panel: need at least 5 years");
    if (relations < 0 || noise_regressands < 0 || noise < 0.0) {
        throw validation_error("synth panel: negative dimension");
    }
    if (relations + noise_regressands > indicators - 2) {
        throw validation_error("synth panel: relations + noise regressands must leave >= 2 drivers");
    }
}

PanelSynthResult synth_panel(const PanelSynthSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = spec.indicators;
    const int y0 = spec.first_year;
    const int y1 = spec.first_year + spec.years - 1;

    std::vector<IndicatorId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = indicator_for(i);

    // Roles: the first `relations` indicators are planted regressands, the
    // next `noise_regressands` are pure noise, the rest are drivers.
    const int first_noise = spec.relations;
    const int first_driver = spec.relations + spec.noise_regressands;

    // Positive lognormal levels (~80% relative variation) around a
    // per-indicator scale spanning three orders of magnitude. The spread is
    // what makes spurious fits of unrelated series exceed the 10% error
    // bound rather than sneak in.
    auto level_series = [&](double scale) {
        std::vector<double> s(spec.years);
        for (int t = 0; t < spec.years; ++t) {
            s[t] = scale * std::exp(0.7 * gauss(rng));
        }
        return s;
    };

    std::vector<std::vector<double>> values(n);
    std::vector<double> scales(n);
    for (int i = first_driver; i < n; ++i) {
        scales[i] = std::pow(10.0, 9.0 + 3.0 * unit(rng));
        values[i] = level_series(scales[i]);
    }
    for (int i = first_noise; i < first_driver; ++i) {
        scales[i] = std::pow(10.0, 9.0 + 3.0 * unit(rng));
        values[i] = level_series(scales[i]);
    }

    PanelSynthResult result;
    for (int i = 0; i < spec.relations; ++i) {
        const int driver = first_driver + static_cast<int>(unit(rng) * (n - first_driver)) %
                                              (n - first_driver);
        const double beta = 0.4 + 1.1 * unit(rng);
        const double row_scale = beta * scales[driver];
        const double intercept = 0.1 * row_scale * unit(rng);
        values[i].resize(spec.years);
        values[i][0] = row_scale * std::max(0.05, 1.0 + 0.35 * gauss(rng));
        for (int t = 1; t < spec.years; ++t) {
            values[i][t] = beta * values[driver][t - 1] + intercept +
                           spec.noise * row_scale * gauss(rng);
        }
        result.relations.push_back({ids[i], ids[driver], beta, intercept});
    }
    for (int i = first_noise; i < first_driver; ++i) result.noise_ids.push_back(ids[i]);

    for (int i = 0; i < n; ++i) {
        for (int y = y0; y <= y1; ++y) {
            result.records.push_back({ids[i], y, values[i][y - y0]});
        }
    }
    return result;
}

void PinSynthSpec::validate() const {
    if (core < 3) throw validation_error("synth pin: need a core of at least 3 nodes");
    if (periphery <= core * (core - 1)) {
        throw validation_error(
            "synth pin: periphery must exceed core*(core-1) for an unambiguous percolation scale");
    }
    if (years < 2) throw validation_error("synth pin: need at least 2 years");
    if (!(periphery_weight > 0.0) || !(core_min >= 10.0 * periphery_weight) ||
        !(core_max >= core_min) || !(scale > 0.0)) {
        throw validation_error("synth pin: weight scales must satisfy 0 < periphery << core");
    }
}

PinSynthResult synth_pin(const PinSynthSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int k = spec.core;
    std::vector<std::string> nodes;
    for (int i = 0; i < k; ++i) nodes.push_back(tagged_id("K", i));
    for (int i = 0; i < spec.periphery; ++i) nodes.push_back(tagged_id("P", i));
    std::sort(nodes.begin(), nodes.end());
    auto idx = [&](const std::string& id) {
        return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    // Core arcs: a fixed cycle keeps the core strongly connected; the other
    // ordered pairs join gradually over the years (the planted density trend).
    std::vector<std::pair<int, int>> cycle, extras;
    for (int i = 0; i < k; ++i) cycle.emplace_back(idx(tagged_id("K", i)), idx(tagged_id("K", (i + 1) % k)));
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            const auto arc = std::make_pair(idx(tagged_id("K", a)), idx(tagged_id("K", b)));
            if (std::find(cycle.begin(), cycle.end(), arc) == cycle.end()) extras.push_back(arc);
        }
    }
    std::shuffle(extras.begin(), extras.end(), rng);

    // Periphery attachments at exactly periphery_weight, constant across
    // years so only the core evolves.
    std::vector<std::tuple<int, int, double>> attach;
    for (int p = 0; p < spec.periphery; ++p) {
        const int node = idx(tagged_id("P", p));
        const int to_core = idx(tagged_id("K", static_cast<int>(unit(rng) * k) % k));
        const int from_core = idx(tagged_id("K", static_cast<int>(unit(rng) * k) % k));
        attach.emplace_back(node, to_core, spec.periphery_weight * spec.scale);
        attach.emplace_back(from_core, node, spec.periphery_weight * spec.scale);
    }

    PinSynthResult result;
    result.periphery_weight = spec.periphery_weight * spec.scale;
    result.core_min = spec.core_min * spec.scale;
    const int max_extra = static_cast<int>(extras.size());
    for (int t = 0; t < spec.years; ++t) {
        const int extra_count =
            spec.years == 1 ? max_extra
                            : static_cast<int>(std::lround(
                                  max_extra * (0.4 + 0.6 * t / (spec.years - 1.0))));
        std::vector<std::tuple<int, int, double>> edges = attach;
        auto core_weight = [&]() {
            return (spec.core_min + (spec.core_max - spec.core_min) * unit(rng)) * spec.scale;
        };
        for (const auto& [a, b] : cycle) edges.emplace_back(a, b, core_weight());
        for (int e = 0; e < extra_count; ++e) {
            edges.emplace_back(extras[e].first, extras[e].second, core_weight());
        }
        result.networks.emplace_back(nodes, std::move(edges), spec.first_year + t);
        const double m = static_cast<double>(k + extra_count);
        result.core_density.push_back(m / (static_cast<double>(k) * k - k));
    }
    return result;
}

NlsmmTargetResult synth_nlsmm_target(const DensitySeries& density, const NlsmmTargetSpec& spec) {
    if (spec.delta_t_months % 6 != 0) {
        throw validation_error("synth target: delta_t must be a multiple of 6 months");
    }
    DensitySeries semi = density;
    if (semi.points.size() >= 2) {
        int min_gap = 1 << 20;
        for (std::size_t i = 1; i < semi.points.size(); ++i) {
            min_gap = std::min(min_gap,
                               semi.points[i].time.index() - semi.points[i - 1].time.index());
        }
        if (min_gap > 6) semi = resample_density(semi);
    }
    if (semi.points.size() < 2) throw validation_error("synth target: need >= 2 density points");

    // Shift by the lead, normalize at the first model point (the fitter's
    // reference convention), then run the model forward.
    std::vector<DensityPoint> shifted;
    for (const auto& p : semi.points) {
        shifted.push_back({p.time.plus_months(spec.delta_t_months), p.rho});
    }
    const double rho_ref = shifted[1].rho;
    std::vector<DensityPoint> rho_bar;
    for (const auto& p : shifted) rho_bar.push_back({p.time, p.rho / rho_ref});

    NlsmmTargetResult result;
    result.target.kind = spec.kind;
    result.target.label = spec.label;
    result.target.points = nlsmm_eval(rho_bar, spec.a_r, spec.gamma1, spec.gamma2, spec.v_r);
    result.a_r_effective = 1.0 / (1.0 + std::pow(rho_bar.front().rho, spec.gamma2));
    return result;
}

void TradeSynthSpec::validate() const {
    if (countries < 5) throw validation_error("synth trade: need at least 5 countries");
    if (years < 4) throw validation_error("synth trade: need at least 4 years");
}

TradeSynthResult synth_trade(const TradeSynthSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::string> nodes;
    for (int i = 0; i < spec.countries; ++i) nodes.push_back(tagged_id("T", i));
    auto idx = [&](int i) { return i; };  // names are already sorted by construction

    TradeSynthResult result;
    result.focal = nodes[0];
    const int focal = idx(0);
    const int up1 = idx(1), up2 = idx(2), down1 = idx(3), down2 = idx(4);

    // Static base flows; every upstream->downstream pair around the focal
    // node is reserved so the growing up1 -> down1 edge is its only bypass.
    std::map<std::pair<int, int>, double> base;
    auto flow = [&]() { return 1e9 * std::exp(0.5 * gauss(rng)); };
    auto reserved = [&](int a, int b) {
        return (a == up1 || a == up2) && (b == down1 || b == down2);
    };
    base[{up1, focal}] = flow();
    base[{up2, focal}] = flow();
    base[{focal, down1}] = flow();
    base[{focal, down2}] = flow();
    for (int a = 0; a < spec.countries; ++a) {
        for (int b = 0; b < spec.countries; ++b) {
            if (a == b || a == focal || b == focal || reserved(a, b)) continue;
            if (unit(rng) < 0.55) base[{a, b}] = flow();
        }
    }
    const double bypass0 = 0.5e9;

    for (int t = 0; t < spec.years; ++t) {
        std::vector<std::tuple<int, int, double>> edges;
        for (const auto& [key, w] : base) edges.emplace_back(key.first, key.second, w);
        edges.emplace_back(up1, down1, bypass0 * std::pow(1.6, t));
        result.networks.emplace_back(nodes, std::move(edges), spec.first_year + t);
    }

    // Focal GDP follows its gate-keeping potential: the annual change is an
    // affine increasing function of g, so corr(GKP, dGDP) is exactly 1.
    std::map<int, double> focal_gdp;
    double gdp = 1e12;
    focal_gdp[spec.first_year] = gdp;
    for (int t = 1; t < spec.years; ++t) {
        gdp *= 1.0 + 0.01 + 0.10 * gkp(result.networks[t], result.focal);
        focal_gdp[spec.first_year + t] = gdp;
    }
    result.gdp[result.focal] = focal_gdp;
    for (int i = 1; i < spec.countries; ++i) {
        double level = 1e11 * std::exp(unit(rng));
        for (int t = 0; t < spec.years; ++t) {
            result.gdp[nodes[i]][spec.first_year + t] = level;
            level = std::max(level * (1.0 + 0.02 * gauss(rng)), 1e9);
        }
    }
    return result;
}

}  // namespace econet
