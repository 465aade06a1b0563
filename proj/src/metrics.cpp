#include <occ/error.hpp>
#include <occ/metrics.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace occ {

EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
    EvalReport report;
    report.tp = tp;
    report.fp = fp;
    report.tn = tn;
    report.fn = fn;
    if (tp + fn > 0) {
        report.tpr = static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
    if (fp + tn > 0) {
        report.tnr = static_cast<double>(tn) / static_cast<double>(fp + tn);
    }
    if (report.tpr && report.tnr) {
        report.gm = std::sqrt(*report.tpr * *report.tnr);
    }
    return report;
}

EvalReport evaluate(const std::vector<Prediction>& predictions, const std::vector<Truth>& truth) {
    if (predictions.empty() && truth.empty()) {
        throw Error(ErrorKind::EmptyEvaluation, "nothing to evaluate");
    }
    if (predictions.size() != truth.size()) {
        throw Error(ErrorKind::IdMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                               std::to_string(truth.size()) + " ground-truth entries");
    }
    struct Entry {
        bool is_target;
        bool predicted;
    };
    std::unordered_map<std::string_view, Entry> truth_by_id;
    truth_by_id.reserve(truth.size());
    for (const auto& t : truth) {
        if (!truth_by_id.emplace(t.id, Entry{t.is_target, false}).second) {
            throw Error(ErrorKind::DuplicateId, "duplicate ground-truth id '" + t.id + "'");
        }
    }
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (const auto& p : predictions) {
        auto it = truth_by_id.find(p.id);
        if (it == truth_by_id.end()) {
            throw Error(ErrorKind::IdMismatch, "prediction id '" + p.id + "' has no ground truth");
        }
        if (it->second.predicted) {
            throw Error(ErrorKind::DuplicateId, "duplicate prediction id '" + p.id + "'");
        }
        it->second.predicted = true;
        if (it->second.is_target) {
            (p.is_target ? tp : fn) += 1;
        } else {
            (p.is_target ? fp : tn) += 1;
        }
    }
    return report_from_counts(tp, fp, tn, fn);
}

std::string format_table_row(const EvalReport& report) {
    auto rate = [](const std::optional<double>& value) {
        if (!value) {
            return std::string("n/a");
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", *value);
        return std::string(buf);
    };
    return rate(report.tpr) + " " + rate(report.gm) + " " + std::to_string(report.tp) + " " +
           std::to_string(report.flagged());
}

std::string report_to_json(const EvalReport& report) {
    auto rate = [](const std::optional<double>& value) { return value ? nlohmann::json(*value) : nlohmann::json(); };
    nlohmann::json out = {
        {"tp", report.tp},
        {"fp", report.fp},
        {"tn", report.tn},
        {"fn", report.fn},
        {"positives", report.positives()},
        {"negatives", report.negatives()},
        {"flagged", report.flagged()},
        {"tpr", rate(report.tpr)},
        {"tnr", rate(report.tnr)},
        {"gm", rate(report.gm)},
    };
    return out.dump(2) + "\n";
}

} // namespace occ
