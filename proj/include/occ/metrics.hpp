#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace occ {

struct Prediction {
    std::string id;
    bool is_target = false;
};

struct Truth {
    std::string id;
    bool is_target = false;
};

//! Confusion counts with the derived rates. A rate whose denominator is
//! zero is std::nullopt, and so is any GM built from it.
struct EvalReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
    std::optional<double> tpr;
    std::optional<double> tnr;
    std::optional<double> gm;

    std::size_t positives() const noexcept { return tp + fn; }
    std::size_t negatives() const noexcept { return fp + tn; }
    std::size_t flagged() const noexcept { return tp + fp; }
};

//! Builds a report straight from confusion counts.
EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn);

//! Joins predictions to truth by id. Both lists must name the same ids,
//! each exactly once.
EvalReport evaluate(const std::vector<Prediction>& predictions, const std::vector<Truth>& truth);

//! "TPR GM TP TP+FP" with three decimals; undefined rates print as "n/a".
std::string format_table_row(const EvalReport& report);

std::string report_to_json(const EvalReport& report);

} // namespace occ
