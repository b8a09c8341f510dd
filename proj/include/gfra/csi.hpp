#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "gfra/rng.hpp"

namespace gfra::csi {

/// A time series of channel snapshots from one node; all snapshots share one
/// antenna count.
struct SnapshotSeries {
    std::vector<Eigen::VectorXcd> snapshots;
    std::vector<double> timestamps;  // empty when the source had none
    std::string node_id;

    bool has_timestamps() const { return !timestamps.empty(); }
};

/// Correlation coefficient |h_i^H h_j| / (||h_i|| ||h_j||), in [0, 1].
double correlation(const Eigen::VectorXcd& h_i, const Eigen::VectorXcd& h_j);

/// Correlation of every snapshot against the first one; element 0 is 1.
/// Snapshots that cannot be correlated (zero norm) yield NaN.
std::vector<double> recurrence_series(const SnapshotSeries& series);

struct EcdfPoint {
    double value = 0.0;
    double fraction = 0.0;
};

/// ECDF over the values: unique sorted values with cumulative fractions.
std::vector<EcdfPoint> ecdf(std::vector<double> values);

/// Fraction of values strictly above the threshold.
double fraction_above(const std::vector<double>& values, double threshold);

/// Synthetic stand-in for a measured day: a static channel plus scaled
/// CN noise, with a chosen fraction of snapshots replaced by independent
/// draws to mimic blockage dips. Snapshot 0 is never blocked.
/// round(blockage_fraction * n) snapshots are blocked, so the constructed
/// fraction of correlations above 0.9 is 1 - round(bf * n) / n.
SnapshotSeries synthetic_series(std::size_t antennas, std::size_t n_snapshots, double noise_scale,
                                double blockage_fraction, Rng& rng);

/// Parses the snapshot CSV format: header "timestamp,a0_re,a0_im,..." (the
/// timestamp column is optional), one row per snapshot. Throws
/// std::runtime_error with a line number on malformed input.
SnapshotSeries load_snapshot_csv(std::istream& in, const std::string& source_name);
SnapshotSeries load_snapshot_csv_file(const std::string& path);

void write_snapshot_csv(std::ostream& out, const SnapshotSeries& series);

}  // namespace gfra::csi
