#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bioblend/dataset_io.hpp"
#include "bioblend/matrix.hpp"

namespace bioblend {

/// Stand-in for an infinite F-score (zero within-class variance with
/// separated class means).
inline constexpr double kInfiniteFScore = 1e300;

/// One-way ANOVA F-statistic per column. Columns constant over all samples
/// score 0; columns constant within every class but not across classes score
/// kInfiniteFScore.
std::vector<double> anova_f_scores(const Matrix& features, std::span<const std::int64_t> labels);

/// Indices of the k highest scores, ties broken toward the lower index.
/// The top-k set is always a subset of the top-(k+1) set.
std::vector<std::size_t> select_top_k(const std::vector<double>& scores, std::size_t k);

/// Mean stratified cross-validated accuracy of a k-nearest-neighbor majority
/// vote with Euclidean distance on per-fold standardized features. Distance
/// ties are broken toward the lower sample index, vote ties toward the lower
/// class label. Fold assignment is a seeded shuffle, so results are
/// reproducible.
double knn_accuracy(const Matrix& features, std::span<const std::int64_t> labels,
                    std::size_t neighbors, std::size_t folds, std::uint64_t seed = 0,
                    std::size_t threads = 1);

struct ScreeningReport {
    std::vector<double> f_scores;             // per visible feature, full data
    std::vector<std::size_t> k_list;          // clipped to the feature count
    std::vector<std::vector<std::size_t>> selected_indices;  // full-data top-k per k
    std::vector<std::size_t> neighbor_list;
    std::vector<std::vector<double>> screened_accuracy;  // [neighbor][k]
    std::vector<double> unreduced_accuracy;              // [neighbor]
    std::vector<double> true_hidden_accuracy;            // [neighbor]; empty without hidden data
    std::size_t folds = 0;

    double best_screened() const;
    double best_unreduced() const;
    double best_true_hidden() const;  // NaN when hidden data was absent
};

/// For each k: select the top-k features by F-score and evaluate kNN; also
/// evaluates the unreduced space and, when the hidden matrix is stored, the
/// true hidden columns alone. Screened accuracies re-run the selection on
/// each training fold so they carry no selection bias; `selected_indices`
/// reports the full-data ranking.
ScreeningReport screening_curve(const DatasetBundle& bundle, std::vector<std::size_t> k_list,
                                std::size_t folds = 4,
                                std::vector<std::size_t> neighbor_list = {1, 5},
                                std::uint64_t seed = 0, std::size_t threads = 1);

}  // namespace bioblend
