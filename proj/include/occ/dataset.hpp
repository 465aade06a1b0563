#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace occ {

//! Labeled feature vectors, one sample per row. Immutable once built;
//! the constructor enforces the shape and finiteness invariants.
class FeatureMatrix {
public:
    FeatureMatrix(std::vector<std::string> ids, std::vector<std::string> labels, Eigen::MatrixXd data);

    std::size_t size() const noexcept { return ids_.size(); }
    Eigen::Index dim() const noexcept { return data_.cols(); }
    bool empty() const noexcept { return ids_.empty(); }

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const Eigen::MatrixXd& data() const noexcept { return data_; }

    //! Rows selected by index, in the given order.
    FeatureMatrix subset(const std::vector<std::size_t>& rows) const;

    //! Same ids and labels with replacement feature rows (row count must match).
    FeatureMatrix with_data(Eigen::MatrixXd data) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::string> labels_;
    Eigen::MatrixXd data_;
};

struct TargetSplit {
    FeatureMatrix target;
    FeatureMatrix outliers;
};

//! Reads the `id,label,f0,...` CSV layout. Row order is preserved.
FeatureMatrix load_features(const std::filesystem::path& path);
FeatureMatrix parse_features(const std::string& text);

//! Writes the CSV layout with LF line endings and 17 significant digits.
void save_features(const FeatureMatrix& features, const std::filesystem::path& path);
std::string format_features(const FeatureMatrix& features);

//! Partitions by exact (case-sensitive) label match.
TargetSplit split_by_target(const FeatureMatrix& features, const std::string& target_class);

struct BlobSpec {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    std::size_t count = 0;
    std::string label;
};

struct SyntheticSpec {
    std::vector<BlobSpec> clusters;
    std::uint64_t seed = 42;
};

//! Gaussian blobs, rows ordered cluster by cluster. Ids are "s<row>".
FeatureMatrix generate_synthetic(const SyntheticSpec& spec);

//! Row-wise concatenation; ids must stay unique.
FeatureMatrix concatenate(const FeatureMatrix& a, const FeatureMatrix& b);

} // namespace occ
