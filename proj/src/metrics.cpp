#include "gfra/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfra {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::size_t TrialOutcome::n_active() const {
    std::size_t n = 0;
    for (auto a : active) {
        n += a ? 1 : 0;
    }
    return n;
}

std::size_t TrialOutcome::misses_at(double v) const {
    if (static_cast<std::size_t>(margin.size()) != k_total()) {
        throw std::logic_error("TrialOutcome: margins missing");
    }
    std::size_t n = 0;
    for (std::size_t k = 0; k < k_total(); ++k) {
        if (active[k] && !(margin(static_cast<Eigen::Index>(k)) > v)) {
            ++n;
        }
    }
    return n;
}

std::size_t TrialOutcome::false_alarms_at(double v) const {
    if (static_cast<std::size_t>(margin.size()) != k_total()) {
        throw std::logic_error("TrialOutcome: margins missing");
    }
    std::size_t n = 0;
    for (std::size_t k = 0; k < k_total(); ++k) {
        if (!active[k] && margin(static_cast<Eigen::Index>(k)) > v) {
            ++n;
        }
    }
    return n;
}

TrialOutcome make_activity_only_outcome(std::vector<std::uint8_t> active) {
    TrialOutcome t;
    t.active = std::move(active);
    return t;
}

double p_md(const std::vector<TrialOutcome>& trials, double v) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& t : trials) {
        const std::size_t na = t.n_active();
        if (na == 0) {
            continue;
        }
        sum += static_cast<double>(t.misses_at(v)) / static_cast<double>(na);
        ++n;
    }
    return n == 0 ? kNaN : sum / static_cast<double>(n);
}

double p_fa(const std::vector<TrialOutcome>& trials, double v) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& t : trials) {
        const std::size_t ni = t.n_inactive();
        if (ni == 0) {
            continue;
        }
        sum += static_cast<double>(t.false_alarms_at(v)) / static_cast<double>(ni);
        ++n;
    }
    return n == 0 ? kNaN : sum / static_cast<double>(n);
}

double p_md_pooled(const std::vector<TrialOutcome>& trials, double v) {
    std::uint64_t miss = 0;
    std::uint64_t act = 0;
    for (const auto& t : trials) {
        miss += t.misses_at(v);
        act += t.n_active();
    }
    return act == 0 ? kNaN : static_cast<double>(miss) / static_cast<double>(act);
}

double p_fa_pooled(const std::vector<TrialOutcome>& trials, double v) {
    std::uint64_t fa = 0;
    std::uint64_t inact = 0;
    for (const auto& t : trials) {
        fa += t.false_alarms_at(v);
        inact += t.n_inactive();
    }
    return inact == 0 ? kNaN : static_cast<double>(fa) / static_cast<double>(inact);
}

ProbabilityFloors probability_floors(const std::vector<TrialOutcome>& trials) {
    if (trials.empty()) {
        throw std::invalid_argument("probability_floors: empty trial list");
    }
    std::uint64_t total_active = 0;
    std::uint64_t total_devices = 0;
    for (const auto& t : trials) {
        total_active += t.n_active();
        total_devices += t.k_total();
    }
    ProbabilityFloors f;
    f.floor_md = total_active > 0 ? 1.0 / static_cast<double>(total_active) : 1.0;
    const std::uint64_t total_inactive = total_devices - total_active;
    f.floor_fa = total_inactive > 0 ? 1.0 / static_cast<double>(total_inactive) : 1.0;
    return f;
}

RocSweep sweep_roc(const std::vector<TrialOutcome>& trials, const std::vector<double>& v_grid) {
    if (v_grid.empty()) {
        throw std::invalid_argument("sweep_roc: empty v grid");
    }
    if (trials.empty()) {
        throw std::invalid_argument("sweep_roc: empty trial list");
    }

    std::vector<double> grid = v_grid;
    std::sort(grid.begin(), grid.end());

    const ProbabilityFloors floors = probability_floors(trials);

    RocSweep sweep;
    sweep.points.reserve(grid.size());
    for (const double v : grid) {
        RocPoint p;
        p.v = v;
        p.floor_fa = floors.floor_fa;
        p.floor_md = floors.floor_md;
        double md_sum = 0.0;
        std::size_t md_trials = 0;
        double fa_sum = 0.0;
        std::size_t fa_trials = 0;
        for (const auto& t : trials) {
            const std::size_t miss = t.misses_at(v);
            const std::size_t fa = t.false_alarms_at(v);
            p.n_miss += miss;
            p.n_fa += fa;
            p.n_active_total += t.n_active();
            p.n_inactive_total += t.n_inactive();
            if (t.n_active() > 0) {
                md_sum += static_cast<double>(miss) / static_cast<double>(t.n_active());
                ++md_trials;
            }
            if (t.n_inactive() > 0) {
                fa_sum += static_cast<double>(fa) / static_cast<double>(t.n_inactive());
                ++fa_trials;
            }
        }
        p.p_md = md_trials == 0 ? kNaN : md_sum / static_cast<double>(md_trials);
        p.p_fa = fa_trials == 0 ? kNaN : fa_sum / static_cast<double>(fa_trials);
        sweep.points.push_back(p);
    }

    // v_opt: minimize the floor-normalized worst error; NaN components are
    // left out of the objective.
    auto objective = [](const RocPoint& p) {
        double obj = 0.0;
        if (!std::isnan(p.p_fa)) {
            obj = std::max(obj, p.p_fa / p.floor_fa);
        }
        if (!std::isnan(p.p_md)) {
            obj = std::max(obj, p.p_md / p.floor_md);
        }
        return obj;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < sweep.points.size(); ++i) {
        const double cur = objective(sweep.points[i]);
        const double bst = objective(sweep.points[best]);
        if (cur < bst) {
            best = i;
        } else if (cur == bst) {
            const double cur_md = sweep.points[i].p_md;
            const double bst_md = sweep.points[best].p_md;
            if (!std::isnan(cur_md) && (std::isnan(bst_md) || cur_md < bst_md)) {
                best = i;
            }
        }
    }
    sweep.v_opt_index = best;
    return sweep;
}

std::vector<double> log_grid(double v_min, double v_max, std::size_t points) {
    if (points == 0) {
        throw std::invalid_argument("log_grid: points must be >= 1");
    }
    if (v_min <= 0.0 || v_max < v_min) {
        throw std::invalid_argument("log_grid: need 0 < v_min <= v_max");
    }
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(v_min);
        return grid;
    }
    const double lmin = std::log10(v_min);
    const double lmax = std::log10(v_max);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        grid.push_back(std::pow(10.0, lmin + f * (lmax - lmin)));
    }
    return grid;
}

}  // namespace gfra
