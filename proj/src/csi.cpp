#include "gfra/csi.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gfra::csi {

double correlation(const Eigen::VectorXcd& h_i, const Eigen::VectorXcd& h_j) {
    if (h_i.size() != h_j.size()) {
        throw std::invalid_argument("correlation: length mismatch");
    }
    const double ni = h_i.norm();
    const double nj = h_j.norm();
    if (ni == 0.0 || nj == 0.0) {
        throw std::invalid_argument("correlation: zero-norm snapshot");
    }
    const double delta = std::abs(h_i.dot(h_j)) / (ni * nj);
    // Cauchy-Schwarz, up to rounding.
    return std::min(delta, 1.0);
}

std::vector<double> recurrence_series(const SnapshotSeries& series) {
    if (series.snapshots.empty()) {
        throw std::invalid_argument("recurrence_series: empty series");
    }
    std::vector<double> out;
    out.reserve(series.snapshots.size());
    const auto& ref = series.snapshots.front();
    for (const auto& snap : series.snapshots) {
        try {
            out.push_back(correlation(ref, snap));
        } catch (const std::invalid_argument&) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

std::vector<EcdfPoint> ecdf(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("ecdf: empty input");
    }
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    std::vector<EcdfPoint> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const bool last_of_run = i + 1 == values.size() || values[i + 1] != values[i];
        if (last_of_run) {
            out.push_back({values[i], static_cast<double>(i + 1) / n});
        }
    }
    return out;
}

double fraction_above(const std::vector<double>& values, double threshold) {
    if (values.empty()) {
        throw std::invalid_argument("fraction_above: empty input");
    }
    const auto n = std::count_if(values.begin(), values.end(),
                                 [threshold](double v) { return v > threshold; });
    return static_cast<double>(n) / static_cast<double>(values.size());
}

SnapshotSeries synthetic_series(std::size_t antennas, std::size_t n_snapshots, double noise_scale,
                                double blockage_fraction, Rng& rng) {
    if (antennas == 0 || n_snapshots == 0) {
        throw std::invalid_argument("synthetic_series: counts must be >= 1");
    }
    if (blockage_fraction < 0.0 || blockage_fraction >= 1.0) {
        throw std::invalid_argument("synthetic_series: blockage_fraction must be in [0, 1)");
    }

    const auto m = static_cast<Eigen::Index>(antennas);
    Eigen::VectorXcd base(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        base(i) = complex_normal(rng);
    }

    // Pick the blocked snapshot indices without replacement, never index 0.
    const auto n_blocked = static_cast<std::size_t>(
        std::llround(blockage_fraction * static_cast<double>(n_snapshots)));
    std::vector<std::size_t> indices(n_snapshots > 0 ? n_snapshots - 1 : 0);
    std::iota(indices.begin(), indices.end(), std::size_t{1});
    std::vector<bool> blocked(n_snapshots, false);
    for (std::size_t i = 0; i < std::min(n_blocked, indices.size()); ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, indices.size() - 1);
        std::swap(indices[i], indices[pick(rng)]);
        blocked[indices[i]] = true;
    }

    SnapshotSeries series;
    series.node_id = "synthetic";
    series.snapshots.reserve(n_snapshots);
    series.timestamps.reserve(n_snapshots);
    for (std::size_t j = 0; j < n_snapshots; ++j) {
        Eigen::VectorXcd snap(m);
        if (blocked[j]) {
            for (Eigen::Index i = 0; i < m; ++i) {
                snap(i) = complex_normal(rng);
            }
        } else {
            for (Eigen::Index i = 0; i < m; ++i) {
                snap(i) = base(i) + noise_scale * complex_normal(rng);
            }
        }
        series.snapshots.push_back(std::move(snap));
        series.timestamps.push_back(static_cast<double>(j));
    }
    return series;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_field(const std::string& text, std::size_t line_no, std::size_t col) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": column " +
                                 std::to_string(col + 1) + " is not a number: '" + text + "'");
    }
}

}  // namespace

SnapshotSeries load_snapshot_csv(std::istream& in, const std::string& source_name) {
    SnapshotSeries series;
    series.node_id = source_name;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw std::runtime_error("line 1: missing header row");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_csv_line(line);
    if (header.empty()) {
        throw std::runtime_error("line 1: empty header row");
    }
    const bool with_timestamp = header.front() == "timestamp";
    const std::size_t antenna_cols = header.size() - (with_timestamp ? 1 : 0);
    if (antenna_cols == 0 || antenna_cols % 2 != 0) {
        throw std::runtime_error(
            "line 1: header must list re,im column pairs per antenna");
    }
    const std::size_t antennas = antenna_cols / 2;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " columns, got " +
                                     std::to_string(fields.size()));
        }
        std::size_t col = 0;
        if (with_timestamp) {
            series.timestamps.push_back(parse_field(fields[col], line_no, col));
            ++col;
        }
        Eigen::VectorXcd snap(static_cast<Eigen::Index>(antennas));
        for (std::size_t a = 0; a < antennas; ++a) {
            const double re = parse_field(fields[col], line_no, col);
            ++col;
            const double im = parse_field(fields[col], line_no, col);
            ++col;
            snap(static_cast<Eigen::Index>(a)) = {re, im};
        }
        if (snap.norm() == 0.0) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": snapshot has zero norm");
        }
        series.snapshots.push_back(std::move(snap));
    }
    if (series.snapshots.empty()) {
        throw std::runtime_error("no snapshot rows in " + source_name);
    }
    return series;
}

SnapshotSeries load_snapshot_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open snapshot file: " + path);
    }
    return load_snapshot_csv(in, path);
}

void write_snapshot_csv(std::ostream& out, const SnapshotSeries& series) {
    const std::size_t antennas =
        series.snapshots.empty() ? 0 : static_cast<std::size_t>(series.snapshots.front().size());
    const bool with_timestamp = series.has_timestamps();
    if (with_timestamp) {
        out << "timestamp";
    }
    for (std::size_t a = 0; a < antennas; ++a) {
        if (a > 0 || with_timestamp) {
            out << ',';
        }
        out << 'a' << a << "_re,a" << a << "_im";
    }
    out << '\n';
    char buf[64];
    for (std::size_t j = 0; j < series.snapshots.size(); ++j) {
        bool first = true;
        if (with_timestamp) {
            std::snprintf(buf, sizeof(buf), "%.17g", series.timestamps[j]);
            out << buf;
            first = false;
        }
        const auto& snap = series.snapshots[j];
        for (Eigen::Index a = 0; a < snap.size(); ++a) {
            if (!first) {
                out << ',';
            }
            first = false;
            std::snprintf(buf, sizeof(buf), "%.17g", snap(a).real());
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", snap(a).imag());
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace gfra::csi
