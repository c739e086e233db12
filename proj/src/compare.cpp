#include "pipeflow/compare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "format.hpp"

namespace pipeflow {

namespace {

struct Signal {
    std::vector<double> t, head, discharge;
};

Signal restrict(const ProbeSeries& series, double t_lo, double t_hi) {
    Signal s;
    for (const auto& r : series.rows) {
        if (r.coord < t_lo || r.coord > t_hi) continue;
        s.t.push_back(r.coord);
        s.head.push_back(r.piezo);
        s.discharge.push_back(r.discharge);
    }
    return s;
}

double interpolate(std::span<const double> t, std::span<const double> y, double x) {
    if (t.size() == 1 || x <= t.front()) return y.front();
    if (x >= t.back()) return y.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const auto k = static_cast<std::size_t>(it - t.begin()) - 1;
    const double w = (x - t[k]) / (t[k + 1] - t[k]);
    return y[k] + w * (y[k + 1] - y[k]);
}

void check_ordered(const ProbeSeries& s, const char* name) {
    for (std::size_t k = 1; k < s.rows.size(); ++k) {
        if (!(s.rows[k].coord > s.rows[k - 1].coord)) {
            throw std::invalid_argument(std::string("compare_series: ") + name +
                                        " series is not strictly time-ordered");
        }
    }
}

}  // namespace

std::optional<double> oscillation_period(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size()) throw std::invalid_argument("oscillation_period: size mismatch");
    if (t.size() < 3) return std::nullopt;
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double band = 0.1 * 0.5 * (*hi - *lo);
    if (!(band > 0.0)) return std::nullopt;

    std::vector<double> crossings;
    bool armed = false;
    double last_up = 0.0;  // most recent upward mean crossing
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (k > 0 && y[k - 1] <= mean && y[k] > mean) {
            last_up = t[k - 1] + (mean - y[k - 1]) / (y[k] - y[k - 1]) * (t[k] - t[k - 1]);
        }
        if (y[k] < mean - band) {
            armed = true;
        } else if (armed && y[k] > mean + band) {
            crossings.push_back(last_up);
            armed = false;
        }
    }
    if (crossings.size() < 2) return std::nullopt;
    std::vector<double> gaps(crossings.size() - 1);
    for (std::size_t k = 0; k + 1 < crossings.size(); ++k) gaps[k] = crossings[k + 1] - crossings[k];
    std::sort(gaps.begin(), gaps.end());
    const std::size_t m = gaps.size() / 2;
    return gaps.size() % 2 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
}

std::optional<double> first_extremum(std::span<const double> y) {
    if (y.empty()) return std::nullopt;
    const double y0 = y.front();
    double largest = 0.0;
    for (double v : y) largest = std::max(largest, std::abs(v - y0));
    if (!(largest > 0.0)) return std::nullopt;

    double peak = y0;
    double peak_dev = 0.0;
    for (double v : y) {
        const double dev = std::abs(v - y0);
        if (dev > peak_dev) {
            peak_dev = dev;
            peak = v;
        } else if (peak_dev >= 0.1 * largest && dev < 0.5 * peak_dev) {
            return peak;
        }
    }
    return peak;
}

ComparisonReport compare_series(const ProbeSeries& kinetic, const ProbeSeries& moc,
                                const CompareWindow& window) {
    if (kinetic.rows.empty() || moc.rows.empty()) {
        throw std::invalid_argument("compare_series: empty series");
    }
    check_ordered(kinetic, "first");
    check_ordered(moc, "second");
    const double t_lo = std::max(kinetic.rows.front().coord, moc.rows.front().coord);
    const double t_hi =
        std::min({kinetic.rows.back().coord, moc.rows.back().coord, window.end});
    if (t_hi < t_lo) throw std::invalid_argument("compare_series: no common time window");

    const Signal a = restrict(kinetic, t_lo, t_hi);
    const Signal b = restrict(moc, t_lo, t_hi);

    ComparisonReport report;
    report.probe_x = kinetic.x;

    // Resample onto the coarser grid; ties broken on the grids themselves so
    // that swapping the inputs picks the same one.
    if (!a.t.empty() && !b.t.empty()) {
        const bool a_coarse = a.t.size() != b.t.size()
                                  ? a.t.size() < b.t.size()
                                  : !std::lexicographical_compare(b.t.begin(), b.t.end(),
                                                                  a.t.begin(), a.t.end());
        const Signal& grid = a_coarse ? a : b;
        const Signal& other = a_coarse ? b : a;
        double sum2 = 0.0;
        for (std::size_t k = 0; k < grid.t.size(); ++k) {
            const double dh = std::abs(grid.head[k] - interpolate(other.t, other.head, grid.t[k]));
            const double dq =
                std::abs(grid.discharge[k] - interpolate(other.t, other.discharge, grid.t[k]));
            report.linf_head_error = std::max(report.linf_head_error, dh);
            report.linf_discharge_error = std::max(report.linf_discharge_error, dq);
            sum2 += dh * dh;
        }
        report.l2_head_error = std::sqrt(sum2 / static_cast<double>(grid.t.size()));
    }

    const auto analyse = [&](const ProbeSeries& s, std::optional<double>& period,
                             std::optional<double>& peak) {
        const Signal all = restrict(s, s.rows.front().coord, window.end);
        peak = first_extremum(all.head);
        const Signal late = restrict(s, window.period_start, window.end);
        period = oscillation_period(late.t, late.head);
    };
    analyse(kinetic, report.kinetic_period, report.first_peak_kinetic);
    analyse(moc, report.moc_period, report.first_peak_moc);
    return report;
}

std::string format_report(const ComparisonReport& r) {
    using detail::format_number;
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_number(*v) : std::string("absent");
    };
    std::ostringstream s;
    s << "probe_x_m = " << format_number(r.probe_x) << '\n';
    s << "linf_head_error_m = " << format_number(r.linf_head_error) << '\n';
    s << "l2_head_error_m = " << format_number(r.l2_head_error) << '\n';
    s << "linf_discharge_error_m3s = " << format_number(r.linf_discharge_error) << '\n';
    s << "kinetic_period_s = " << opt(r.kinetic_period) << '\n';
    s << "moc_period_s = " << opt(r.moc_period) << '\n';
    s << "first_peak_kinetic_m = " << opt(r.first_peak_kinetic) << '\n';
    s << "first_peak_moc_m = " << opt(r.first_peak_moc) << '\n';
    return s.str();
}

}  // namespace pipeflow
