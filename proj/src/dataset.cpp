#include <occ/dataset.hpp>
#include <occ/error.hpp>
#include <occ/io.hpp>

#include <charconv>
#include <cmath>
#include <random>
#include <string_view>
#include <unordered_set>

namespace occ {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_cell(std::string_view cell, std::size_t line_no) {
    // from_chars rejects a leading '+', which other writers may emit.
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || end != cell.data() + cell.size() || cell.empty()) {
        if (ec == std::errc::result_out_of_range) {
            throw Error(ErrorKind::NonFiniteValue,
                        "line " + std::to_string(line_no) + ": value out of range '" + std::string(cell) + "'");
        }
        throw Error(ErrorKind::NonNumeric,
                    "line " + std::to_string(line_no) + ": cannot parse '" + std::string(cell) + "'");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::NonFiniteValue,
                    "line " + std::to_string(line_no) + ": non-finite value '" + std::string(cell) + "'");
    }
    return value;
}

} // namespace

FeatureMatrix::FeatureMatrix(std::vector<std::string> ids, std::vector<std::string> labels, Eigen::MatrixXd data)
    : ids_(std::move(ids)), labels_(std::move(labels)), data_(std::move(data)) {
    if (ids_.size() != labels_.size() || static_cast<Eigen::Index>(ids_.size()) != data_.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "ids, labels and data rows differ in length");
    }
    if (data_.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, "feature dimensionality must be at least 1");
    }
    if (!data_.allFinite()) {
        throw Error(ErrorKind::NonFiniteValue, "feature matrix contains NaN or Inf");
    }
    std::unordered_set<std::string_view> seen;
    seen.reserve(ids_.size());
    for (const auto& id : ids_) {
        if (!seen.insert(id).second) {
            throw Error(ErrorKind::DuplicateId, "duplicate sample id '" + id + "'");
        }
    }
}

FeatureMatrix FeatureMatrix::subset(const std::vector<std::size_t>& rows) const {
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.size()), data_.cols());
    ids.reserve(rows.size());
    labels.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= ids_.size()) {
            throw Error(ErrorKind::InvalidArgument, "row index out of range");
        }
        ids.push_back(ids_[rows[r]]);
        labels.push_back(labels_[rows[r]]);
        data.row(static_cast<Eigen::Index>(r)) = data_.row(static_cast<Eigen::Index>(rows[r]));
    }
    return FeatureMatrix(std::move(ids), std::move(labels), std::move(data));
}

FeatureMatrix FeatureMatrix::with_data(Eigen::MatrixXd data) const {
    return FeatureMatrix(ids_, labels_, std::move(data));
}

FeatureMatrix parse_features(const std::string& text) {
    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (nl == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(nl + 1);
    }
    // A single trailing newline leaves no extra record.
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw Error(ErrorKind::EmptyFile, "feature file is empty");
    }

    auto header = split_commas(lines.front());
    if (header.size() < 3 || header[0] != "id" || header[1] != "label") {
        throw Error(ErrorKind::MalformedRow, "header must be 'id,label,f0,...' with at least one feature column");
    }
    const std::size_t width = header.size();
    const std::size_t dim = width - 2;
    const std::size_t n = lines.size() - 1;

    std::vector<std::string> ids;
    std::vector<std::string> labels;
    ids.reserve(n);
    labels.reserve(n);
    Eigen::MatrixXd data(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t line_no = r + 2;
        auto cells = split_commas(lines[r + 1]);
        if (cells.size() != width) {
            throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                                     std::to_string(width) + " columns, got " +
                                                     std::to_string(cells.size()));
        }
        ids.emplace_back(cells[0]);
        labels.emplace_back(cells[1]);
        for (std::size_t j = 0; j < dim; ++j) {
            data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = parse_cell(cells[j + 2], line_no);
        }
    }
    return FeatureMatrix(std::move(ids), std::move(labels), std::move(data));
}

FeatureMatrix load_features(const std::filesystem::path& path) {
    return parse_features(io::read_file(path));
}

std::string format_features(const FeatureMatrix& features) {
    std::string out = "id,label";
    for (Eigen::Index j = 0; j < features.dim(); ++j) {
        out += ",f" + std::to_string(j);
    }
    out += '\n';
    const auto& data = features.data();
    for (std::size_t i = 0; i < features.size(); ++i) {
        out += features.ids()[i];
        out += ',';
        out += features.labels()[i];
        for (Eigen::Index j = 0; j < features.dim(); ++j) {
            out += ',';
            out += io::format_double(data(static_cast<Eigen::Index>(i), j));
        }
        out += '\n';
    }
    return out;
}

void save_features(const FeatureMatrix& features, const std::filesystem::path& path) {
    io::write_file_atomic(path, format_features(features));
}

TargetSplit split_by_target(const FeatureMatrix& features, const std::string& target_class) {
    std::vector<std::size_t> target_rows;
    std::vector<std::size_t> outlier_rows;
    for (std::size_t i = 0; i < features.size(); ++i) {
        (features.labels()[i] == target_class ? target_rows : outlier_rows).push_back(i);
    }
    if (target_rows.empty()) {
        throw Error(ErrorKind::TargetClassNotFound, "no sample labeled '" + target_class + "'");
    }
    return TargetSplit{features.subset(target_rows), features.subset(outlier_rows)};
}

FeatureMatrix generate_synthetic(const SyntheticSpec& spec) {
    if (spec.clusters.empty()) {
        throw Error(ErrorKind::InvalidArgument, "synthetic spec has no clusters");
    }
    const Eigen::Index dim = spec.clusters.front().mean.size();
    std::size_t total = 0;
    std::vector<Eigen::MatrixXd> factors;
    for (const auto& blob : spec.clusters) {
        if (blob.count < 1) {
            throw Error(ErrorKind::InvalidArgument, "cluster count must be at least 1");
        }
        if (blob.mean.size() != dim || blob.covariance.rows() != dim || blob.covariance.cols() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "cluster mean/covariance shapes disagree");
        }
        if (!blob.covariance.isApprox(blob.covariance.transpose(), 1e-12) && !blob.covariance.isZero()) {
            throw Error(ErrorKind::NonPsdCovariance, "covariance is not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(blob.covariance);
        const double scale = std::max(1.0, blob.covariance.cwiseAbs().maxCoeff());
        if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
            throw Error(ErrorKind::NonPsdCovariance, "covariance has a negative eigenvalue");
        }
        Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        factors.push_back(eig.eigenvectors() * root.asDiagonal());
        total += blob.count;
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    ids.reserve(total);
    labels.reserve(total);
    Eigen::MatrixXd data(static_cast<Eigen::Index>(total), dim);
    Eigen::VectorXd z(dim);
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < spec.clusters.size(); ++c) {
        const auto& blob = spec.clusters[c];
        for (std::size_t k = 0; k < blob.count; ++k, ++row) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                z(j) = normal(rng);
            }
            data.row(row) = (blob.mean + factors[c] * z).transpose();
            ids.push_back("s" + std::to_string(row));
            labels.push_back(blob.label);
        }
    }
    return FeatureMatrix(std::move(ids), std::move(labels), std::move(data));
}

FeatureMatrix concatenate(const FeatureMatrix& a, const FeatureMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "cannot concatenate matrices of different dimensionality");
    }
    std::vector<std::string> ids = a.ids();
    std::vector<std::string> labels = a.labels();
    ids.insert(ids.end(), b.ids().begin(), b.ids().end());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    Eigen::MatrixXd data(a.data().rows() + b.data().rows(), a.dim());
    data << a.data(), b.data();
    return FeatureMatrix(std::move(ids), std::move(labels), std::move(data));
}

} // namespace occ
