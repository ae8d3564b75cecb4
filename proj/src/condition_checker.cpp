/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "rpf/condition_checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpf/error.hpp"
#include "rpf/parallel.hpp"
#include "rpf/stats.hpp"

namespace rpf {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json index_json(std::size_t s) { return s == kInfinity ? json("inf") : json(s); }

Estimate summarize(std::span<const double> values) {
    return {stats::mean(values), stats::standard_error(values)};
}

CompensatorFamily resolve(const CompensatorFamily& family, double beta) {
    return family ? family : default_compensator_family(beta);
}

void require_replicas(std::size_t replicas) {
    if (replicas < 2) throw ArgumentError("at least two replicas are required");
}

void require_grid(std::span<const std::size_t> n_grid) {
    if (n_grid.empty()) throw ArgumentError("empty n grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] == 0) throw ArgumentError("n grid entries must be positive");
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw ArgumentError("n grid must be increasing");
    }
}

AnnulusSequence linear_cutoffs(std::size_t s_max) { return AnnulusSequence::linear(s_max + 1); }

std::vector<Configuration> draw(double beta, std::size_t n, ScalingKind scaling,
                                std::uint64_t seed, std::size_t replicas, std::size_t workers) {
    EnsembleSpec spec;
    spec.beta = beta;
    spec.n = n;
    spec.scaling = scaling;
    spec.method = SamplerMethod::tridiagonal;
    spec.seed = seed;
    return sample_replicas(spec, replicas, workers);
}

}  // namespace

json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json ConditionReport::to_json() const {
    return json{{"condition", condition}, {"params", params}, {"table", table},
                {"verdicts", verdicts},   {"seed", seed},     {"replicas", replicas}};
}

CompensatorFamily default_compensator_family(double beta) {
    return [beta](std::size_t p) { return default_compensators(beta, p); };
}

Point v_ell(const Configuration& config, int ell, const AnnulusSequence& seq, std::size_t r,
            std::size_t s, const CompensatorSequence& comp, double beta) {
    if (ell < 1) throw ArgumentError("v_ell: ell must be at least 1");
    Point v = beta * inverse_power_sum(config, Window::shell(seq, r, s), ell);
    if (ell == 1) v += std::conj(comp.at(r)) - std::conj(comp.at(s));
    return v;
}

Estimate tail_integral(std::span<const Configuration> samples, int ell0) {
    if (ell0 < 2) throw ArgumentError("tail_integral: ell0 must be at least 2");
    require_replicas(samples.size());
    std::vector<double> per(samples.size(), 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (const auto& p : samples[i]) {
            const double a = std::abs(p);
            if (a >= 1.0) per[i] += std::pow(a, -ell0);
        }
    return summarize(per);
}

std::vector<FreePotentialRow> free_potential_residuals(double beta, ScalingKind kind,
                                                       std::span<const std::size_t> n_grid,
                                                       const std::function<double(std::size_t)>& m,
                                                       double half_width) {
    constexpr int kGrid = 2000;
    std::vector<FreePotentialRow> rows;
    for (std::size_t n : n_grid) {
        FreePotentialRow row{n, m(n), 0.0};
        for (int i = 0; i <= kGrid; ++i) {
            const double x = half_width * (2.0 * i / kGrid - 1.0);
            row.sup_residual =
                std::max(row.sup_residual, std::abs(confinement(beta, n, kind, x) - row.compensator * x));
        }
        rows.push_back(row);
    }
    return rows;
}

ConditionReport check_h4(const H4Params& params) {
    if (params.ell0 < 2) throw ArgumentError("check_h4: ell0 must be at least 2");
    require_replicas(params.replicas);
    require_grid(params.n_grid);
    if (params.r < 1 || params.s_max <= params.r) throw ArgumentError("check_h4: need 1 <= r < s_max");
    if (params.p_max < 1) throw ArgumentError("check_h4: p_max must be at least 1");
    const auto family = resolve(params.compensators, params.beta);
    const auto seq = linear_cutoffs(params.s_max);

    std::vector<CompensatorSequence> comps;
    for (std::size_t p = 1; p <= params.p_max; ++p) comps.push_back(family(p));

    // Windows (r, s) for r < s <= s_max, then (s, inf) for r <= s <= s_max.
    std::vector<std::pair<std::size_t, std::size_t>> windows;
    for (std::size_t s = params.r + 1; s <= params.s_max; ++s) windows.emplace_back(params.r, s);
    for (std::size_t s = params.r; s <= params.s_max; ++s) windows.emplace_back(s, kInfinity);

    ConditionReport rep;
    rep.condition = "H4";
    rep.seed = params.seed;
    rep.replicas = params.replicas;
    rep.params = {{"beta", params.beta},   {"n_grid", params.n_grid},
                  {"scaling", to_string(params.scaling)},
                  {"ell0", params.ell0},   {"r", params.r},
                  {"s_max", params.s_max}, {"p_max", params.p_max}};

    std::vector<double> tails;
    bool decreasing = true;
    const std::size_t nl = static_cast<std::size_t>(params.ell0 - 1);
    for (std::size_t n : params.n_grid) {
        const auto samples =
            draw(params.beta, n, params.scaling, params.seed, params.replicas, params.workers);
        const auto tail = tail_integral(samples, params.ell0);
        tails.push_back(tail.mean);
        rep.table.push_back({{"n", n}, {"quantity", "tail_integral"}, {"ell0", params.ell0},
                             {"mean", json_number(tail.mean)}, {"stderr", json_number(tail.std_error)}});

        // values[i][(l-1) * W + w] = sup_p |v^p_{l,w}| for replica i; argmax alongside.
        const std::size_t nw = windows.size();
        std::vector<std::vector<double>> values(samples.size(), std::vector<double>(nl * nw));
        std::vector<std::vector<std::size_t>> argmax(samples.size(),
                                                     std::vector<std::size_t>(nl * nw, 1));
        parallel_for(samples.size(), params.workers, [&](std::size_t i) {
            for (std::size_t w = 0; w < nw; ++w) {
                const auto [a, b] = windows[w];
                const auto win = Window::shell(seq, a, b);
                for (std::size_t l = 1; l <= nl; ++l) {
                    const Point base =
                        params.beta * inverse_power_sum(samples[i], win, static_cast<int>(l));
                    double best = std::abs(base);
                    std::size_t best_p = 1;
                    if (l == 1) {
                        best = -1.0;
                        for (std::size_t p = 0; p < comps.size(); ++p) {
                            const double v = std::abs(base + std::conj(comps[p].at(a)) -
                                                      std::conj(comps[p].at(b)));
                            if (v > best) {
                                best = v;
                                best_p = p + 1;
                            }
                        }
                    }
                    values[i][(l - 1) * nw + w] = best;
                    argmax[i][(l - 1) * nw + w] = best_p;
                }
            }
        });

        for (std::size_t l = 1; l <= nl; ++l) {
            std::vector<Estimate> tail_norms;
            for (std::size_t w = 0; w < nw; ++w) {
                std::vector<double> col(samples.size());
                std::size_t pmin = params.p_max, pmax = 1;
                for (std::size_t i = 0; i < samples.size(); ++i) {
                    col[i] = values[i][(l - 1) * nw + w];
                    pmin = std::min(pmin, argmax[i][(l - 1) * nw + w]);
                    pmax = std::max(pmax, argmax[i][(l - 1) * nw + w]);
                }
                const auto est = summarize(col);
                const auto [a, b] = windows[w];
                rep.table.push_back({{"n", n}, {"quantity", "v_norm"}, {"ell", l},
                                     {"r", a}, {"s", index_json(b)},
                                     {"mean", json_number(est.mean)},
                                     {"stderr", json_number(est.std_error)},
                                     {"argmax_p_min", pmin}, {"argmax_p_max", pmax}});
                if (b == kInfinity) tail_norms.push_back(est);
            }
            // tail_norms[k] belongs to s = r + k; check 2 <= s < s + 1 <= s_max.
            if (l == 2) {
                for (std::size_t s = std::max<std::size_t>(2, params.r); s < params.s_max; ++s) {
                    const auto& cur = tail_norms[s - params.r];
                    const auto& next = tail_norms[s + 1 - params.r];
                    if (!(next.mean < cur.mean + next.std_error)) decreasing = false;
                }
            }
        }
    }

    const auto [mn, mx] = std::minmax_element(tails.begin(), tails.end());
    const double ratio = *mn > 0.0 ? *mx / *mn : kInf;
    rep.verdicts["tail_integral_ratio"] = json_number(ratio);
    rep.verdicts["tail_integral_bounded"] = ratio <= 3.0;
    if (nl >= 2) rep.verdicts["v2_tail_norm_decreasing"] = decreasing;

    // Compensated free potential on [-b_r, b_r]: the default compensator
    // against the same compensator without the beta factor.
    const double half_width = seq.cutoff(params.r);
    const auto with_default = free_potential_residuals(
        params.beta, params.scaling, params.n_grid,
        [&](std::size_t n) { return family(n).m_inf.real(); }, half_width);
    const auto without_beta = free_potential_residuals(
        params.beta, params.scaling, params.n_grid,
        [&](std::size_t n) { return std::cbrt(static_cast<double>(n)); }, half_width);
    // Bounded: never more than 10% above the smallest-n value. A residual
    // growing like n^{1/3} gains 26% per doubling of n.
    auto bounded = [](const std::vector<FreePotentialRow>& rows) {
        double mx = 0.0;
        for (const auto& r : rows) mx = std::max(mx, r.sup_residual);
        return mx <= 1.1 * rows.front().sup_residual;
    };
    for (std::size_t i = 0; i < with_default.size(); ++i) {
        rep.table.push_back({{"n", with_default[i].n}, {"quantity", "free_potential"},
                             {"compensator", "default"},
                             {"m", json_number(with_default[i].compensator)},
                             {"sup_residual", json_number(with_default[i].sup_residual)}});
        rep.table.push_back({{"n", without_beta[i].n}, {"quantity", "free_potential"},
                             {"compensator", "n^(1/3)"},
                             {"m", json_number(without_beta[i].compensator)},
                             {"sup_residual", json_number(without_beta[i].sup_residual)}});
    }
    rep.verdicts["free_potential_bounded"] = bounded(with_default);
    rep.verdicts["free_potential_bounded_without_beta"] = bounded(without_beta);
    return rep;
}

HrkFunctionals hrk_functionals(const Configuration& config, const HrkSettings& st) {
    if (st.ell0 < 2) throw ArgumentError("ell0 must be at least 2");
    if (st.s_max <= st.r) throw ArgumentError("need r < s_max");
    const double b = st.seq.cutoff(st.r);
    const auto y = restrict(config, Window::complement(st.seq, st.r));
    bool on_shell = false;
    for (const auto& p : y)
        if (std::abs(p) == b) on_shell = true;

    const double cx = moment_constant(st.beta, b, st.ell0);
    const double cy = tail_constant(st.beta, b, st.ell0);
    const double bl = std::pow(b, st.ell0);

    HrkFunctionals out;
    out.moments.assign(static_cast<std::size_t>(st.ell0 - 1), 0.0);
    std::vector<std::size_t> outer;
    for (std::size_t s = st.r + 1; s <= st.s_max; ++s) outer.push_back(s);
    outer.push_back(kInfinity);
    for (std::size_t s : outer) {
        const auto win = Window::shell(st.seq, st.r, s);
        const Point f = st.beta * inverse_power_sum(y, win, 1) + std::conj(st.comp.at(st.r)) -
                        std::conj(st.comp.at(s));
        out.moments[0] = std::max(out.moments[0], std::abs(f));
        double mid = 0.0;
        for (int l = 2; l < st.ell0; ++l) {
            const double m = std::abs(inverse_power_sum(y, win, l));
            out.moments[static_cast<std::size_t>(l - 1)] =
                std::max(out.moments[static_cast<std::size_t>(l - 1)], m);
            mid += m;
        }
        double tail = 0.0;
        for (const auto& p : y)
            if (win.contains(p)) tail += on_shell ? kInf : bl / (std::pow(std::abs(p), st.ell0) - bl);
        out.certified = std::max(out.certified, std::abs(f) + cx * mid + cy * tail);
    }
    for (const auto& p : y) out.shell_sum += on_shell ? kInf : 1.0 / (std::pow(std::abs(p), st.ell0) - bl);
    if (on_shell) out.certified = kInf;
    return out;
}

std::vector<HrkRow> estimate_hrk_complement(std::span<const Configuration> samples,
                                            const HrkSettings& st,
                                            std::span<const double> k_grid) {
    if (samples.empty()) throw ArgumentError("estimate_hrk_complement: empty sample list");
    std::vector<HrkFunctionals> fs;
    fs.reserve(samples.size());
    for (const auto& c : samples) fs.push_back(hrk_functionals(c, st));

    const double b = st.seq.cutoff(st.r);
    const double cx = moment_constant(st.beta, b, st.ell0);
    const double cz = tail_constant(st.beta, b, st.ell0) * std::pow(b, st.ell0);
    const double l0 = st.ell0;
    const double total = static_cast<double>(samples.size());

    std::vector<HrkRow> rows;
    for (double k : k_grid) {
        if (!(k >= 0.0)) throw ArgumentError("k must be non-negative");
        const double t1 = std::min(k / l0, k / (l0 * cx));
        const double tl = k / (l0 * cx);
        const double tbar = k / (l0 * cz);
        std::size_t cert = 0, suff = 0;
        std::vector<std::size_t> parts(static_cast<std::size_t>(st.ell0), 0);
        for (const auto& f : fs) {
            if (f.certified > k) ++cert;
            bool out = false;
            for (std::size_t l = 0; l < f.moments.size(); ++l) {
                if (f.moments[l] > (l == 0 ? t1 : tl)) {
                    ++parts[l];
                    out = true;
                }
            }
            if (f.shell_sum > tbar) {
                ++parts.back();
                out = true;
            }
            if (out) ++suff;
        }
        HrkRow row{k, static_cast<double>(cert) / total, static_cast<double>(suff) / total, 0.0};
        for (std::size_t c : parts) row.split_bound += static_cast<double>(c) / total;
        rows.push_back(row);
    }
    return rows;
}

ConditionReport check_h3(const H3Params& params) {
    require_replicas(params.replicas);
    require_grid(params.n_grid);
    if (params.k_grid.empty()) throw ArgumentError("empty k grid");
    const auto family = resolve(params.compensators, params.beta);
    ConditionReport rep;
    rep.condition = "H3";
    rep.seed = params.seed;
    rep.replicas = params.replicas;
    rep.params = {{"beta", params.beta},   {"n_grid", params.n_grid},
                  {"scaling", to_string(params.scaling)},
                  {"ell0", params.ell0},   {"r", params.r},
                  {"s_max", params.s_max}, {"k_grid", params.k_grid}};
    bool monotone = true, small = true;
    for (std::size_t n : params.n_grid) {
        HrkSettings st{linear_cutoffs(params.s_max), params.r, params.s_max, params.ell0,
                       params.beta, family(n)};
        const auto samples =
            draw(params.beta, n, params.scaling, params.seed, params.replicas, params.workers);
        const auto rows = estimate_hrk_complement(samples, st, params.k_grid);
        bool reached = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0 && params.k_grid[i] >= params.k_grid[i - 1] &&
                rows[i].certified > rows[i - 1].certified)
                monotone = false;
            if (rows[i].certified < 0.1) reached = true;
            rep.table.push_back({{"n", n},
                                 {"k", json_number(rows[i].k)},
                                 {"certified", json_number(rows[i].certified)},
                                 {"sufficient", json_number(rows[i].sufficient)},
                                 {"split_bound", json_number(rows[i].split_bound)}});
        }
        if (!reached) small = false;
    }
    rep.verdicts["non_increasing_in_k"] = monotone;
    rep.verdicts["below_0.1_for_every_n"] = small;
    return rep;
}

std::vector<H5Row> h5_table(std::span<const Configuration> samples, const HrkSettings& st,
                            std::span<const double> k_grid) {
    if (samples.empty()) throw ArgumentError("h5_table: empty sample list");
    const double br = st.seq.cutoff(st.r);
    const double bn = st.seq.cutoff(st.r + 1);
    const double blr = std::pow(br, st.ell0), bln = std::pow(bn, st.ell0);
    const double tail_factor = bln / (bln - blr);
    const double total = static_cast<double>(samples.size());

    struct PerReplica {
        HrkFunctionals f;
        double v2_sum = 0.0;       // sum over |x| >= b_{r+1} of 1/(|x|^ell0 - b_r^ell0)
        double tail_moment = 0.0;  // sum over |x| >= b_{r+1} of |x|^{-ell0}
        std::vector<double> inner_gaps;  // |x|^ell0 - b_r^ell0 for b_r <= |x| < b_{r+1}
    };
    std::vector<PerReplica> per;
    for (const auto& c : samples) {
        PerReplica pr{hrk_functionals(c, st), 0.0, 0.0, {}};
        for (const auto& p : c) {
            const double a = std::abs(p);
            if (a < br) continue;
            const double al = std::pow(a, st.ell0);
            if (a < bn) {
                pr.inner_gaps.push_back(al - blr);
            } else {
                pr.v2_sum += 1.0 / (al - blr);
                pr.tail_moment += 1.0 / al;
            }
        }
        per.push_back(std::move(pr));
    }
    double mean_v2 = 0.0, mean_tail = 0.0, mean_inner = 0.0;
    for (const auto& pr : per) {
        mean_v2 += pr.v2_sum / total;
        mean_tail += pr.tail_moment / total;
        mean_inner += static_cast<double>(pr.inner_gaps.size()) / total;
    }

    std::vector<H5Row> rows;
    for (double k : k_grid) {
        if (!(k > 0.0)) throw ArgumentError("h5_table: k must be positive");
        H5Row row;
        row.k = k;
        row.u_complement.assign(static_cast<std::size_t>(st.ell0 - 1), 0.0);
        const double gap = std::sqrt(2.0 / k);
        double v3_mean_count = 0.0;
        for (const auto& pr : per) {
            for (std::size_t l = 0; l < pr.f.moments.size(); ++l)
                if (pr.f.moments[l] > k) row.u_complement[l] += 1.0;
            if (pr.f.shell_sum > k) row.ubar_complement += 1.0;
            if (pr.v2_sum > k / 2.0) row.v2 += 1.0;
            std::size_t in_uk = 0;
            for (double g : pr.inner_gaps)
                if (g < gap) ++in_uk;
            if (in_uk >= 1) row.v3 += 1.0;
            v3_mean_count += static_cast<double>(in_uk) / total;
            if (static_cast<double>(pr.inner_gaps.size()) > std::sqrt(k / 2.0)) row.v4 += 1.0;
        }
        // Counts first, then one division, so fractions of all replicas are exactly 1.
        for (double& u : row.u_complement) u /= total;
        row.ubar_complement /= total;
        row.v2 /= total;
        row.v3 /= total;
        row.v4 /= total;
        row.v2_markov = 2.0 / k * mean_v2;
        row.v2_tail_bound = 2.0 / k * tail_factor * mean_tail;
        row.v3_bound = v3_mean_count;
        row.v4_bound = std::sqrt(2.0 / k) * mean_inner;
        rows.push_back(std::move(row));
    }
    return rows;
}

ConditionReport check_h5(const H5Params& params) {
    require_replicas(params.replicas);
    if (params.ell0 < 2) throw ArgumentError("check_h5: ell0 must be at least 2");
    if (params.k_grid.empty()) throw ArgumentError("empty k grid");
    const auto family = resolve(params.compensators, params.beta);
    HrkSettings st{linear_cutoffs(params.s_max), params.r, params.s_max, params.ell0, params.beta,
                   family(params.n)};
    const auto samples = draw(params.beta, params.n, params.scaling, params.seed, params.replicas,
                              params.workers);
    const auto rows = h5_table(samples, st, params.k_grid);

    ConditionReport rep;
    rep.condition = "H5";
    rep.seed = params.seed;
    rep.replicas = params.replicas;
    rep.params = {{"beta", params.beta}, {"n", params.n}, {"scaling", to_string(params.scaling)},
                  {"ell0", params.ell0}, {"r", params.r}, {"s_max", params.s_max},
                  {"k_grid", params.k_grid}};
    bool dominated = true, ubar_monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        json u = json::array();
        for (double v : row.u_complement) u.push_back(json_number(v));
        rep.table.push_back({{"k", json_number(row.k)},
                             {"u_complement", u},
                             {"ubar_complement", json_number(row.ubar_complement)},
                             {"v2", json_number(row.v2)},
                             {"v2_markov_bound", json_number(row.v2_markov)},
                             {"v2_tail_bound", json_number(row.v2_tail_bound)},
                             {"v3", json_number(row.v3)},
                             {"v3_bound", json_number(row.v3_bound)},
                             {"v4", json_number(row.v4)},
                             {"v4_bound", json_number(row.v4_bound)}});
        if (row.v2 > row.v2_markov || row.v2 > row.v2_tail_bound || row.v3 > row.v3_bound ||
            row.v4 > row.v4_bound)
            dominated = false;
        if (i > 0 && row.k >= rows[i - 1].k && row.ubar_complement > rows[i - 1].ubar_complement)
            ubar_monotone = false;
    }
    rep.verdicts["chebyshev_bounds_dominate"] = dominated;
    rep.verdicts["ubar_non_increasing_in_k"] = ubar_monotone;
    return rep;
}

double probe_log_ratio(const PotentialPair& pp, const CompensatorSequence& comp,
                       const AnnulusSequence& seq, std::size_t r, const Configuration& inner,
                       const Configuration& outer) {
    const auto ball = Window::ball(seq, r);
    const double h = hamiltonian(pp, ball, inner);
    const double cross =
        block_interaction(inner, outer, seq, 0, r, r, kInfinity, pp, comp, false);
    return -(h + cross) + compensated_hamiltonian(pp, comp, ball, inner);
}

Oscillation probe_oscillation(const PotentialPair& pp, const CompensatorSequence& comp,
                              const AnnulusSequence& seq, std::size_t r, std::size_t m_inside,
                              const Configuration& outer, std::size_t grid_points) {
    if (m_inside < 1 || m_inside > 3) throw ArgumentError("m_inside must be 1, 2 or 3");
    if (grid_points < m_inside + 1) throw ArgumentError("grid too coarse for m_inside points");
    const double b = seq.cutoff(r);
    std::vector<double> grid(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i)
        grid[i] = -b + (static_cast<double>(i) + 0.5) * 2.0 * b / static_cast<double>(grid_points);
    const auto outside = restrict(outer, Window::complement(seq, r));

    Oscillation osc;
    double lo = kInf, hi = -kInf;
    std::vector<std::size_t> idx(m_inside);
    for (std::size_t i = 0; i < m_inside; ++i) idx[i] = i;
    for (;;) {
        std::vector<double> xs(m_inside);
        for (std::size_t i = 0; i < m_inside; ++i) xs[i] = grid[idx[i]];
        const double v = probe_log_ratio(pp, comp, seq, r, Configuration::from_reals(xs), outside);
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            ++osc.evaluated;
        } else {
            ++osc.skipped;
        }
        // Next strictly increasing tuple.
        std::size_t pos = m_inside;
        while (pos > 0 && idx[pos - 1] == grid_points - m_inside + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < m_inside; ++i) idx[i] = idx[i - 1] + 1;
    }
    osc.value = osc.evaluated > 0 ? hi - lo : 0.0;
    return osc;
}

ConditionReport quasi_gibbs_probe(const QgProbeParams& params) {
    if (params.m_inside < 1 || params.m_inside > 3) throw ArgumentError("m_inside must be 1, 2 or 3");
    require_grid(params.n_grid);
    for (std::size_t n : params.n_grid)
        if (n < 10 * params.m_inside) throw ArgumentError("qg-probe requires n >= 10 m_inside");
    require_replicas(params.outer);
    if (params.r < 1) throw ArgumentError("qg-probe: r must be at least 1");
    const auto family = resolve(params.compensators, params.beta);
    const auto seq = AnnulusSequence::linear(params.r);

    ConditionReport rep;
    rep.condition = "QG-probe";
    rep.seed = params.seed;
    rep.replicas = params.outer;
    rep.params = {{"beta", params.beta},         {"n_grid", params.n_grid},
                  {"m_inside", params.m_inside}, {"r", params.r},
                  {"outer", params.outer},       {"grid_points", params.grid_points},
                  {"scaling", "softedge"}};

    std::vector<double> p90s;
    double control_max = 0.0;
    for (std::size_t n : params.n_grid) {
        EnsembleSpec spec;
        spec.beta = params.beta;
        spec.n = n;
        spec.scaling = ScalingKind::softedge;
        spec.seed = params.seed;
        const auto pp = log_gas(params.beta, n, ScalingKind::softedge);
        const auto free = free_particles(params.beta, n, ScalingKind::softedge);
        const auto comp = family(n);
        const auto zero = CompensatorSequence::constant({0.0, 0.0});

        std::vector<double> osc(params.outer), refined(params.outer), control(params.outer);
        std::vector<std::size_t> skipped(params.outer);
        parallel_for(params.outer, params.workers, [&](std::size_t i) {
            const auto outer = sample_replica(spec, i);
            const auto a = probe_oscillation(pp, comp, seq, params.r, params.m_inside, outer,
                                             params.grid_points);
            const auto b = probe_oscillation(pp, comp, seq, params.r, params.m_inside, outer,
                                             2 * params.grid_points);
            const auto c = probe_oscillation(free, zero, seq, params.r, params.m_inside, outer,
                                             params.grid_points);
            osc[i] = a.value;
            refined[i] = b.value;
            control[i] = c.value;
            skipped[i] = a.skipped;
        });

        std::vector<double> change(params.outer);
        std::size_t skipped_total = 0;
        for (std::size_t i = 0; i < params.outer; ++i) {
            change[i] = osc[i] > 0.0 ? std::abs(refined[i] - osc[i]) / osc[i] : 0.0;
            skipped_total += skipped[i];
            control_max = std::max(control_max, control[i]);
        }
        const double p90 = stats::quantile(osc, 0.9);
        p90s.push_back(p90);
        json osc_json = json::array();
        for (double v : osc) osc_json.push_back(json_number(v));
        rep.table.push_back(
            {{"n", n},
             {"compensator", json_number(comp.m_inf.real())},
             {"osc_p50", json_number(stats::quantile(osc, 0.5))},
             {"osc_p90", json_number(p90)},
             {"osc_max", json_number(*std::max_element(osc.begin(), osc.end()))},
             {"osc_mean", json_number(stats::mean(osc))},
             {"refinement_median_rel_change", json_number(stats::quantile(change, 0.5))},
             {"refinement_max_rel_change",
              json_number(*std::max_element(change.begin(), change.end()))},
             {"skipped_grid_points", skipped_total},
             {"control_max_osc", json_number(*std::max_element(control.begin(), control.end()))},
             {"osc", osc_json}});
    }
    const double growth = p90s.front() > 0.0 ? p90s.back() / p90s.front() : kInf;
    rep.verdicts["p90_growth"] = json_number(growth);
    rep.verdicts["uniform_in_n"] = growth <= 1.25;
    rep.verdicts["control_max_osc"] = json_number(control_max);
    rep.verdicts["control_passes"] = control_max <= 1e-10;
    return rep;
}

}  // namespace rpf
