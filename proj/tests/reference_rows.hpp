#pragma once

// Reference one-class results with the per-class test totals they were
// measured on. Used only as ground truth for the metric arithmetic.

#include <array>
#include <cstddef>
#include <string_view>

namespace occ::testing {

struct ReferenceRow {
    std::string_view method;
    std::string_view taxon;
    double tpr;
    double gm;
    std::size_t tp;
    std::size_t flagged;
    std::size_t positives;
};

inline constexpr std::size_t kTestTotal = 92685;
inline constexpr std::size_t kCapnopsis = 350;
inline constexpr std::size_t kNemoura = 50;
inline constexpr std::size_t kLeuctra = 200;

inline constexpr std::array<ReferenceRow, 33> kReferenceRows{{
    {"VGG16", "Capnopsis", 0.046, 0.214, 16, 101, kCapnopsis},
    {"VGG16", "Nemoura", 0.020, 0.141, 1, 39, kNemoura},
    {"VGG16", "Leuctra", 0.170, 0.412, 34, 174, kLeuctra},
    {"linear OC-SVM", "Capnopsis", 0.906, 0.613, 317, 54367, kCapnopsis},
    {"linear OC-SVM", "Nemoura", 0.660, 0.357, 33, 74739, kNemoura},
    {"linear OC-SVM", "Leuctra", 0.625, 0.437, 125, 64304, kLeuctra},
    {"linear SVDD", "Capnopsis", 0.346, 0.586, 121, 701, kCapnopsis},
    {"linear SVDD", "Nemoura", 0.280, 0.525, 14, 1422, kNemoura},
    {"linear SVDD", "Leuctra", 0.730, 0.832, 146, 4860, kLeuctra},
    {"linear S-SVDD", "Capnopsis", 0.557, 0.740, 195, 1893, kCapnopsis},
    {"linear S-SVDD", "Nemoura", 0.480, 0.676, 24, 4385, kNemoura},
    {"linear S-SVDD", "Leuctra", 0.805, 0.838, 161, 11910, kLeuctra},
    {"linear S-SVDDr1", "Capnopsis", 0.609, 0.773, 213, 1977, kCapnopsis},
    {"linear S-SVDDr1", "Nemoura", 0.340, 0.567, 17, 5209, kNemoura},
    {"linear S-SVDDr1", "Leuctra", 0.805, 0.837, 161, 12103, kLeuctra},
    {"linear S-SVDDr2", "Capnopsis", 0.706, 0.825, 247, 3573, kCapnopsis},
    {"linear S-SVDDr2", "Nemoura", 0.560, 0.702, 28, 11178, kNemoura},
    {"linear S-SVDDr2", "Leuctra", 0.855, 0.876, 171, 9625, kLeuctra},
    {"rbf OC-SVM", "Capnopsis", 0.034, 0.185, 12, 87, kCapnopsis},
    {"rbf OC-SVM", "Nemoura", 0.000, 0.000, 0, 51, kNemoura},
    {"rbf OC-SVM", "Leuctra", 0.220, 0.469, 44, 102, kLeuctra},
    {"rbf SVDD", "Capnopsis", 0.331, 0.574, 116, 658, kCapnopsis},
    {"rbf SVDD", "Nemoura", 0.300, 0.543, 15, 1441, kNemoura},
    {"rbf SVDD", "Leuctra", 0.730, 0.832, 146, 4904, kLeuctra},
    {"rbf S-SVDD", "Capnopsis", 0.503, 0.705, 176, 1169, kCapnopsis},
    {"rbf S-SVDD", "Nemoura", 0.440, 0.649, 22, 3890, kNemoura},
    {"rbf S-SVDD", "Leuctra", 0.815, 0.853, 163, 10085, kLeuctra},
    {"rbf S-SVDDr1", "Capnopsis", 0.540, 0.730, 189, 1404, kCapnopsis},
    {"rbf S-SVDDr1", "Nemoura", 0.400, 0.622, 20, 3138, kNemoura},
    {"rbf S-SVDDr1", "Leuctra", 0.780, 0.854, 156, 6221, kLeuctra},
    {"rbf S-SVDDr2", "Capnopsis", 1.000, 0.000, 350, 92685, kCapnopsis},
    {"rbf S-SVDDr2", "Nemoura", 0.220, 0.465, 11, 1762, kNemoura},
    {"rbf S-SVDDr2", "Leuctra", 0.995, 0.003, 199, 92683, kLeuctra},
}};

} // namespace occ::testing
