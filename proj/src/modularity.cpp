#include "regnet/modularity.hpp"

#include "regnet/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace regnet {

Rational Rational::of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return {n / g, d / g};
}

Rational operator+(Rational x, Rational y) {
    return Rational::of(x.num * y.den + y.num * x.den, x.den * y.den);
}

Rational operator*(Rational x, Rational y) {
    return Rational::of(x.num * y.num, x.den * y.den);
}

Rational operator-(Rational x) {
    return {-x.num, x.den};
}

std::int8_t frozen_sign(std::uint8_t theta, std::int8_t sigma, bool has_external_input) {
    // theta + sigma in {-1, 2}: sigma already agrees with the side the
    // source sits on relative to a threshold below its interval.
    const int key = theta + sigma;
    const bool agrees_below = key == -1 || key == 2;
    if (has_external_input) return agrees_below ? sigma : static_cast<std::int8_t>(-sigma);
    return agrees_below ? static_cast<std::int8_t>(-sigma) : sigma;
}

namespace {

enum class ArrowKind : std::uint8_t { module, from_outside, from_module, repair };

struct ExtArrow {
    Arrow arrow;
    std::int8_t sign;
    double threshold;
    ArrowKind kind;
    std::uint8_t theta;  // witness activation bit (frozen value outside the module)

    bool operator<(const ExtArrow& o) const { return arrow < o.arrow; }
};

Interval box(double centre, double radius) {
    return {std::max(0.0, centre - radius), std::min(1.0, centre + radius)};
}

Interval intersect(Interval a, Interval b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

double ratio(std::uint32_t num, std::uint32_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ModuleEmbedding build_embedding(const RegulatoryNetwork& witness, const AttractorReport& report,
                                const Subnetwork& module) {
    if (!report.converged()) throw DomainError("build_embedding: witness orbit is not converged");
    if (module.arrows.empty()) throw DomainError("build_embedding: module has no arrows");
    const Digraph& g = witness.graph();
    const std::size_t n = g.vertex_count();

    // The module must be a subgraph spanned by its arrows.
    const Subnetwork spanned = induced_subnetwork(g, module.arrows);
    if (spanned.vertices != module.vertices) {
        throw DomainError("build_embedding: module vertices must be exactly the endpoints of its arrows");
    }
    const auto osc = oscillatory_subnetwork(witness, report);
    for (const auto& a : osc.subnetwork.arrows) {
        if (!module.contains(a)) {
            throw DomainError("build_embedding: oscillating arrow (" + std::to_string(a.from) + "," +
                              std::to_string(a.to) + ") of the witness is outside the module");
        }
    }

    ModuleEmbedding emb;
    emb.module = module;
    emb.rate = witness.rate();
    emb.inputless = witness.inputless();
    // Capped so the two in-degree repair cases cover every source activity.
    emb.epsilon = std::min(report.margin / 3.0, 0.125);
    const double eps = emb.epsilon;
    const ActivityVector& y = report.periodic_points.front();
    const SymbolState& theta = report.symbol_cycle.front();

    std::vector<std::uint32_t> module_inputs(n, 0);
    for (const auto& a : module.arrows) ++module_inputs[a.to];
    for (Vertex v : module.vertices) {
        if (module_inputs[v] == 0) {
            throw DomainError("build_embedding: module vertex " + std::to_string(v) + " has no module inputs");
        }
    }

    std::vector<ExtArrow> ext;
    ext.reserve(g.arrow_count() + module.vertices.size());
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const Arrow a = g.arrow(i);
        ArrowKind kind = module.contains(a)        ? ArrowKind::module
                         : module.contains(a.from) ? ArrowKind::from_module
                                                   : ArrowKind::from_outside;
        ext.push_back({a, witness.signs()[i], witness.thresholds()[i], kind, theta.active[i]});
    }

    // In-degree repair: every module vertex needs an input from outside.
    std::size_t n_ext = n;
    Vertex external = 0;
    while (external < n && module.contains(external)) ++external;
    double external_level_value = 0.0;
    for (Vertex v : module.vertices) {
        if (module_inputs[v] < g.in_arrows(v).size()) continue;
        if (external == n && n_ext == n) {
            n_ext = n + 1;
            emb.added_vertex = true;
        }
        external_level_value = external < n ? y[external] : (witness.inputless() == InputlessDrive::midpoint ? 0.5 : 0.0);
        if (external_level_value < 1.0 - 2.0 * eps) {
            ext.push_back({{external, v}, 1, 1.0 - eps, ArrowKind::repair, 0});
        } else {
            ext.push_back({{external, v}, -1, eps, ArrowKind::repair, 0});
        }
    }
    std::sort(ext.begin(), ext.end());

    std::vector<Arrow> arrows;
    arrows.reserve(ext.size());
    for (const auto& e : ext) arrows.push_back(e.arrow);
    emb.extension = Digraph(n_ext, std::move(arrows));
    const Digraph& ge = emb.extension;

    emb.in_degree.assign(n_ext, 0);
    emb.module_in_degree.assign(n_ext, 0);
    emb.external_level.assign(n_ext, 0);
    for (const auto& e : ext) {
        ++emb.in_degree[e.arrow.to];
        if (e.kind == ArrowKind::module) {
            ++emb.module_in_degree[e.arrow.to];
        } else {
            emb.external_level[e.arrow.to] += e.theta;
        }
    }

    const std::size_t m = ge.arrow_count();
    emb.base_signs.resize(m);
    emb.rect_T.resize(m);
    emb.frozen_active.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const ExtArrow& e = ext[i];
        const Vertex u = e.arrow.from;
        emb.frozen_active[i] = e.theta;
        switch (e.kind) {
        case ArrowKind::module: {
            emb.base_signs[i] = e.sign;
            const auto d = emb.external_level[u], id = emb.in_degree[u], osc_id = emb.module_in_degree[u];
            emb.rect_T[i] = {ratio(d, id), ratio(d + osc_id, id)};
            break;
        }
        case ArrowKind::from_outside:
            emb.base_signs[i] = e.sign;
            emb.rect_T[i] = box(e.threshold, eps);
            break;
        case ArrowKind::repair:
            emb.base_signs[i] = e.sign;
            emb.rect_T[i] = e.sign > 0 ? Interval{1.0 - eps, 1.0} : Interval{0.0, eps};
            break;
        case ArrowKind::from_module: {
            // Move the threshold outside the source's activity interval
            // [D/Id, (D+Id_osc)/Id] and pick the sign that keeps theta.
            const auto d = emb.external_level[u], id = emb.in_degree[u], osc_id = emb.module_in_degree[u];
            const bool below = d > 0;
            emb.base_signs[i] = frozen_sign(e.theta, e.sign, below);
            if (below) {
                const double t = e.threshold * ratio(d, id);
                emb.rect_T[i] = intersect(box(t, eps), {0.0, ratio(d, id)});
            } else {
                const double t = e.threshold * ratio(id - osc_id, id) + ratio(osc_id, id);
                emb.rect_T[i] = intersect(box(t, eps), {ratio(osc_id, id), 1.0});
            }
            break;
        }
        }
    }

    emb.rect_x.resize(n_ext);
    for (Vertex v = 0; v < n_ext; ++v) {
        if (module.contains(v)) {
            const auto d = emb.external_level[v], id = emb.in_degree[v], osc_id = emb.module_in_degree[v];
            emb.rect_x[v] = {ratio(d, id), ratio(d + osc_id, id)};
        } else {
            emb.rect_x[v] = box(v < n ? y[v] : external_level_value, eps);
        }
    }

    for (const auto& a : module.arrows) {
        emb.module_arrow_index.push_back(static_cast<std::uint32_t>(*ge.arrow_index(a)));
        const Vertex u = a.from;
        emb.slope_A.push_back(ratio(emb.in_degree[u], emb.module_in_degree[u]));
        emb.const_A.push_back(-ratio(emb.external_level[u], emb.module_in_degree[u]));
    }
    for (Vertex v : module.vertices) {
        emb.slope_V.push_back(ratio(emb.in_degree[v], emb.module_in_degree[v]));
        emb.const_V.push_back(-ratio(emb.external_level[v], emb.module_in_degree[v]));
    }
    return emb;
}

SignAssignment ModuleEmbedding::extend_signs(std::span<const std::int8_t> sigma_bar) const {
    if (sigma_bar.size() != module_arrow_count()) throw DomainError("extend_signs: one sign per module arrow required");
    SignAssignment s = base_signs;
    for (std::size_t j = 0; j < sigma_bar.size(); ++j) s[module_arrow_index[j]] = sigma_bar[j];
    return s;
}

ThresholdAssignment ModuleEmbedding::phi_A(std::span<const double> thresholds) const {
    ThresholdAssignment out(module_arrow_count());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const Vertex u = module.arrows[j].from;
        out[j] = (static_cast<double>(in_degree[u]) * thresholds[module_arrow_index[j]] - external_level[u]) / module_in_degree[u];
    }
    return out;
}

ActivityVector ModuleEmbedding::phi_V(std::span<const double> x) const {
    ActivityVector out(module_vertex_count());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const Vertex v = module.vertices[j];
        out[j] = (static_cast<double>(in_degree[v]) * x[v] - external_level[v]) / module_in_degree[v];
    }
    return out;
}

ThresholdAssignment ModuleEmbedding::phi_A_inverse(std::span<const double> module_thresholds,
                                                   std::span<const double> base) const {
    ThresholdAssignment out(base.begin(), base.end());
    for (std::size_t j = 0; j < module_arrow_count(); ++j) {
        const Vertex u = module.arrows[j].from;
        const std::size_t i = module_arrow_index[j];
        const double t = (module_in_degree[u] * module_thresholds[j] + external_level[u]) / static_cast<double>(in_degree[u]);
        out[i] = std::clamp(t, rect_T[i].lo, rect_T[i].hi);
    }
    return out;
}

ActivityVector ModuleEmbedding::phi_V_inverse(std::span<const double> module_x, std::span<const double> base) const {
    ActivityVector out(base.begin(), base.end());
    for (std::size_t j = 0; j < module_vertex_count(); ++j) {
        const Vertex v = module.vertices[j];
        const double x = (module_in_degree[v] * module_x[j] + external_level[v]) / static_cast<double>(in_degree[v]);
        out[v] = std::clamp(x, rect_x[v].lo, rect_x[v].hi);
    }
    return out;
}

RegulatoryNetwork ModuleEmbedding::extended_network(std::span<const std::int8_t> sigma_bar,
                                                    std::span<const double> thresholds) const {
    return RegulatoryNetwork(extension, extend_signs(sigma_bar),
                             ThresholdAssignment(thresholds.begin(), thresholds.end()), rate, inputless);
}

RegulatoryNetwork ModuleEmbedding::module_network(std::span<const std::int8_t> sigma_bar,
                                                  std::span<const double> module_thresholds) const {
    ThresholdAssignment t(module_thresholds.begin(), module_thresholds.end());
    for (double& v : t) v = std::clamp(v, 0.0, 1.0);
    return RegulatoryNetwork(module.local_graph(), SignAssignment(sigma_bar.begin(), sigma_bar.end()), std::move(t),
                             rate, inputless);
}

bool ModuleEmbedding::phi_A_surjective() const {
    for (const auto& a : module.arrows) {
        const auto u = a.from;
        const auto d = static_cast<std::int64_t>(external_level[u]);
        const auto id = static_cast<std::int64_t>(in_degree[u]);
        const auto osc_id = static_cast<std::int64_t>(module_in_degree[u]);
        const Rational slope = Rational::of(id, osc_id), constant = Rational::of(-d, osc_id);
        if (slope * Rational::of(d, id) + constant != Rational::of(0, 1)) return false;
        if (slope * Rational::of(d + osc_id, id) + constant != Rational::of(1, 1)) return false;
    }
    return true;
}

bool ModuleEmbedding::phi_V_surjective() const {
    for (Vertex v : module.vertices) {
        const auto d = static_cast<std::int64_t>(external_level[v]);
        const auto id = static_cast<std::int64_t>(in_degree[v]);
        const auto osc_id = static_cast<std::int64_t>(module_in_degree[v]);
        const Rational slope = Rational::of(id, osc_id), constant = Rational::of(-d, osc_id);
        if (slope * Rational::of(d, id) + constant != Rational::of(0, 1)) return false;
        if (slope * Rational::of(d + osc_id, id) + constant != Rational::of(1, 1)) return false;
    }
    return true;
}

RectangleSample sample_rectangles(const ModuleEmbedding& emb, Rng& rng) {
    RectangleSample s;
    s.sigma_bar.resize(emb.module_arrow_count());
    for (auto& sg : s.sigma_bar) sg = rng.bernoulli(0.5) ? -1 : 1;
    s.thresholds.resize(emb.rect_T.size());
    for (std::size_t i = 0; i < s.thresholds.size(); ++i) s.thresholds[i] = rng.uniform(emb.rect_T[i].lo, emb.rect_T[i].hi);
    s.x.resize(emb.rect_x.size());
    for (std::size_t v = 0; v < s.x.size(); ++v) s.x[v] = rng.uniform(emb.rect_x[v].lo, emb.rect_x[v].hi);
    return s;
}

ConjugacyResult conjugacy_defect(const ModuleEmbedding& emb, std::span<const std::int8_t> sigma_bar,
                                 std::span<const double> thresholds, std::span<const double> x, std::size_t steps,
                                 double constant_shift) {
    if (thresholds.size() != emb.rect_T.size() || x.size() != emb.rect_x.size()) {
        throw DomainError("conjugacy_defect: threshold/activity sizes do not match the extension");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!emb.rect_T[i].contains(thresholds[i])) throw DomainError("conjugacy_defect: threshold outside rect_T");
    }
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (!emb.rect_x[v].contains(x[v])) throw DomainError("conjugacy_defect: activity outside rect_x");
    }

    const RegulatoryNetwork ext = emb.extended_network(sigma_bar, thresholds);
    const RegulatoryNetwork mod = emb.module_network(sigma_bar, emb.phi_A(thresholds));
    const auto& ge = ext.graph();

    std::vector<std::size_t> frozen;
    for (std::size_t i = 0; i < ge.arrow_count(); ++i) {
        if (!emb.module.contains(ge.arrow(i))) frozen.push_back(i);
    }
    auto shifted_phi = [&](std::span<const double> state) {
        auto out = emb.phi_V(state);
        for (double& v : out) v += constant_shift;
        return out;
    };

    ConjugacyResult result;
    ActivityVector xe(x.begin(), x.end()), xe_next(xe.size());
    ActivityVector ym = shifted_phi(xe), ym_next(ym.size());
    for (std::size_t t = 0;; ++t) {
        for (auto i : frozen) {
            const Arrow a = ge.arrow(i);
            const bool on = heaviside(ext.signs()[i] * (xe[a.from] - ext.thresholds()[i]));
            if (on != static_cast<bool>(emb.frozen_active[i])) result.contained = false;
        }
        result.defect = std::max(result.defect, max_distance(shifted_phi(xe), ym));
        if (t == steps) break;
        ext.step_into(xe, xe_next);
        mod.step_into(ym, ym_next);
        std::swap(xe, xe_next);
        std::swap(ym, ym_next);
    }
    return result;
}

IsolatedModule stable_rectangle(const RegulatoryNetwork& net, const AttractorReport& report) {
    if (!report.converged()) throw DomainError("stable_rectangle: report is not converged");
    const double eps = report.margin / 3.0;
    IsolatedModule m{net, {}, {}};
    for (double t : net.thresholds()) m.rect_T.push_back(box(t, eps));
    for (double y : report.periodic_points.front()) m.rect_x.push_back(box(y, eps));
    return m;
}

LcmReport lcm_period_check(const IsolatedModule& first, const IsolatedModule& second, std::size_t samples,
                           std::uint64_t seed, const DetectOptions& opts) {
    if (first.net.rate() != second.net.rate() || first.net.inputless() != second.net.inputless()) {
        throw DomainError("lcm_period_check: modules must share the contraction rate and input-less rule");
    }
    const std::size_t n1 = first.net.vertex_count(), n2 = second.net.vertex_count();
    const std::size_t n = n1 + n2 + 1;

    // Coupling witness: both modules side by side plus one external vertex,
    // thresholds and activities at the rectangle centres.
    std::vector<Arrow> arrows;
    SignAssignment signs;
    ThresholdAssignment thresholds;
    ActivityVector x0;
    auto append = [&](const IsolatedModule& m, Vertex offset) {
        const auto& g = m.net.graph();
        for (std::size_t i = 0; i < g.arrow_count(); ++i) {
            arrows.push_back({g.arrow(i).from + offset, g.arrow(i).to + offset});
            signs.push_back(m.net.signs()[i]);
            thresholds.push_back(0.5 * (m.rect_T[i].lo + m.rect_T[i].hi));
        }
        for (const auto& r : m.rect_x) x0.push_back(0.5 * (r.lo + r.hi));
    };
    append(first, 0);
    append(second, static_cast<Vertex>(n1));
    x0.push_back(0.0);
    // Offsetting preserves the lexicographic arrow order, so signs/thresholds stay aligned.
    const RegulatoryNetwork witness(Digraph(n, arrows), signs, thresholds, first.net.rate(), first.net.inputless());
    const AttractorReport wr = detect_attractor(witness, x0, opts);
    if (!wr.converged()) throw DomainError("lcm_period_check: coupling witness did not converge: " + wr.diagnostic);
    const Subnetwork module = induced_subnetwork(witness.graph(), arrows);
    const ModuleEmbedding emb = build_embedding(witness, wr, module);

    const EnsembleSeed root{seed};
    LcmReport out;
    for (std::size_t k = 0; k < samples; ++k) {
        Rng rng = root.stream("lcm", {k});
        auto draw = [&](const std::vector<Interval>& rect) {
            std::vector<double> v(rect.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(rect[i].lo, rect[i].hi);
            return v;
        };
        const auto t1 = draw(first.rect_T), y1 = draw(first.rect_x);
        const auto t2 = draw(second.rect_T), y2 = draw(second.rect_x);
        const RectangleSample base = sample_rectangles(emb, rng);

        ThresholdAssignment mod_t(t1);
        mod_t.insert(mod_t.end(), t2.begin(), t2.end());
        ActivityVector mod_y(y1);
        mod_y.insert(mod_y.end(), y2.begin(), y2.end());
        // Module arrows/vertices of the union are exactly its arrows/vertices in order.
        const auto T = emb.phi_A_inverse(mod_t, base.thresholds);
        const auto x = emb.phi_V_inverse(mod_y, base.x);

        const auto full = detect_attractor(emb.extended_network(signs, T), x, opts);
        const RegulatoryNetwork iso1(first.net.graph(), first.net.signs(), t1, first.net.rate(), first.net.inputless());
        const RegulatoryNetwork iso2(second.net.graph(), second.net.signs(), t2, second.net.rate(),
                                     second.net.inputless());
        const auto r1 = detect_attractor(iso1, y1, opts);
        const auto r2 = detect_attractor(iso2, y2, opts);
        out.max_defect = std::max(out.max_defect, conjugacy_defect(emb, signs, T, x, 1000).defect);

        ++out.samples;
        if (!full.converged() || !r1.converged() || !r2.converged()) continue;
        ++out.converged;
        ++out.full_periods[full.period];
        ++out.module_periods[{r1.period, r2.period}];
        if (full.period == std::lcm(r1.period, r2.period)) ++out.matches;
    }
    return out;
}

}  // namespace regnet
