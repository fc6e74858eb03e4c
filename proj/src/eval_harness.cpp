#include "bioblend/eval_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "bioblend/errors.hpp"
#include "bioblend/parallel.hpp"
#include "bioblend/random.hpp"

namespace bioblend {

namespace {

// Compact labels to group ids 0..C-1 in ascending label order.
std::vector<std::size_t> group_ids(std::span<const std::int64_t> labels, std::size_t& n_groups) {
    std::map<std::int64_t, std::size_t> ids;
    for (std::int64_t l : labels) ids.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, id] : ids) id = next++;
    n_groups = next;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
    return out;
}

}  // namespace

std::vector<double> anova_f_scores(const Matrix& features, std::span<const std::int64_t> labels) {
    const std::size_t n = features.rows();
    if (labels.size() != n) throw ArgumentError("anova_f_scores: labels length mismatch");
    std::size_t n_groups = 0;
    const std::vector<std::size_t> groups = group_ids(labels, n_groups);
    if (n_groups < 2) throw ArgumentError("anova_f_scores: need at least 2 classes");
    std::vector<std::size_t> counts(n_groups, 0);
    for (std::size_t g : groups) ++counts[g];
    for (std::size_t c : counts) {
        if (c < 2) throw ArgumentError("anova_f_scores: need at least 2 samples per class");
    }
    const double df_between = static_cast<double>(n_groups - 1);
    const double df_within = static_cast<double>(n - n_groups);

    std::vector<double> scores(features.cols());
    std::vector<double> column(n);
    std::vector<double> group_mean(n_groups);
    std::vector<double> group_min(n_groups);
    std::vector<double> group_max(n_groups);
    for (std::size_t j = 0; j < features.cols(); ++j) {
        features.copy_col(j, column);
        const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
        if (*lo == *hi) {
            scores[j] = 0.0;  // constant feature carries no signal
            continue;
        }
        std::fill(group_mean.begin(), group_mean.end(), 0.0);
        std::fill(group_min.begin(), group_min.end(), std::numeric_limits<double>::infinity());
        std::fill(group_max.begin(), group_max.end(), -std::numeric_limits<double>::infinity());
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t g = groups[i];
            group_mean[g] += column[i];
            group_min[g] = std::min(group_min[g], column[i]);
            group_max[g] = std::max(group_max[g], column[i]);
            total += column[i];
        }
        const double overall = total / static_cast<double>(n);
        bool within_constant = true;
        for (std::size_t g = 0; g < n_groups; ++g) {
            group_mean[g] /= static_cast<double>(counts[g]);
            if (group_min[g] != group_max[g]) within_constant = false;
        }
        if (within_constant) {
            // Separated point masses: infinite statistic by convention.
            scores[j] = kInfiniteFScore;
            continue;
        }
        double ssb = 0.0, ssw = 0.0;
        for (std::size_t g = 0; g < n_groups; ++g) {
            const double d = group_mean[g] - overall;
            ssb += static_cast<double>(counts[g]) * d * d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double d = column[i] - group_mean[groups[i]];
            ssw += d * d;
        }
        scores[j] = (ssb / df_between) / (ssw / df_within);
    }
    return scores;
}

std::vector<std::size_t> select_top_k(const std::vector<double>& scores, std::size_t k) {
    k = std::min(k, scores.size());
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];  // stable: equal scores keep index order
    });
    order.resize(k);
    return order;
}

namespace {

struct Folds {
    std::vector<std::vector<std::size_t>> test_indices;  // per fold, ascending
};

Folds stratified_folds(std::span<const std::int64_t> labels, std::size_t folds,
                       std::uint64_t seed) {
    std::size_t n_groups = 0;
    const std::vector<std::size_t> groups = group_ids(labels, n_groups);
    std::vector<std::vector<std::size_t>> by_class(n_groups);
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[groups[i]].push_back(i);
    for (const auto& members : by_class) {
        if (members.size() < folds)
            throw ArgumentError("knn_accuracy: folds exceed the smallest class size");
    }

    RandomStream stream(seed);
    Folds out;
    out.test_indices.assign(folds, {});
    for (std::size_t g = 0; g < n_groups; ++g) {
        std::vector<std::size_t>& members = by_class[g];
        // Fisher-Yates with the seeded stream, then round-robin over folds.
        for (std::size_t i = members.size(); i > 1; --i) {
            const auto r = static_cast<std::size_t>(
                draw_discrete_uniform(stream, 0, static_cast<std::int64_t>(i) - 1, 1)[0]);
            std::swap(members[i - 1], members[r]);
        }
        for (std::size_t i = 0; i < members.size(); ++i)
            out.test_indices[i % folds].push_back(members[i]);
    }
    for (auto& fold : out.test_indices) std::sort(fold.begin(), fold.end());
    return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& test_idx) {
    std::vector<char> is_test(n, 0);
    for (std::size_t i : test_idx) is_test[i] = 1;
    std::vector<std::size_t> train;
    train.reserve(n - test_idx.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!is_test[i]) train.push_back(i);
    return train;
}

// Correct predictions for one fold of majority-vote kNN over the column
// subset `cols`, standardized with train-fold statistics. Distance ties break
// toward the lower global sample index, votes toward the lower class label.
std::size_t fold_correct(const Matrix& features, std::span<const std::int64_t> labels,
                         std::span<const std::size_t> cols,
                         const std::vector<std::size_t>& train_idx,
                         const std::vector<std::size_t>& test_idx, std::size_t neighbors,
                         std::size_t threads) {
    const std::size_t f = cols.size();
    const std::size_t n_train = train_idx.size();
    const std::size_t k = std::min(neighbors, n_train);

    std::vector<double> mean(f, 0.0), scale(f, 0.0);
    for (std::size_t i : train_idx) {
        const auto row = features.row(i);
        for (std::size_t j = 0; j < f; ++j) mean[j] += row[cols[j]];
    }
    for (double& v : mean) v /= static_cast<double>(n_train);
    for (std::size_t i : train_idx) {
        const auto row = features.row(i);
        for (std::size_t j = 0; j < f; ++j) {
            const double d = row[cols[j]] - mean[j];
            scale[j] += d * d;
        }
    }
    for (double& v : scale) {
        v = n_train > 1 ? std::sqrt(v / static_cast<double>(n_train - 1)) : 0.0;
        if (v <= 0.0) v = 1.0;
    }

    Matrix train(n_train, f);
    for (std::size_t r = 0; r < n_train; ++r) {
        const auto src = features.row(train_idx[r]);
        auto dst = train.row(r);
        for (std::size_t j = 0; j < f; ++j) dst[j] = (src[cols[j]] - mean[j]) / scale[j];
    }

    std::vector<std::size_t> correct_flags(test_idx.size(), 0);
    parallel_for(test_idx.size(), threads, [&](std::size_t t) {
        const std::size_t i = test_idx[t];
        std::vector<double> query(f);
        const auto src = features.row(i);
        for (std::size_t j = 0; j < f; ++j) query[j] = (src[cols[j]] - mean[j]) / scale[j];

        // Max-heap of the k best (distance, train position) pairs; positions
        // follow ascending global indices, so ties resolve to the lower one.
        std::vector<std::pair<double, std::size_t>> best;
        best.reserve(k + 1);
        for (std::size_t r = 0; r < n_train; ++r) {
            double dist = 0.0;
            const auto row = train.row(r);
            for (std::size_t j = 0; j < f; ++j) {
                const double d = query[j] - row[j];
                dist += d * d;
            }
            const std::pair<double, std::size_t> cand{dist, r};
            if (best.size() < k) {
                best.push_back(cand);
                std::push_heap(best.begin(), best.end());
            } else if (cand < best.front()) {
                std::pop_heap(best.begin(), best.end());
                best.back() = cand;
                std::push_heap(best.begin(), best.end());
            }
        }
        std::map<std::int64_t, std::size_t> votes;
        for (const auto& [dist, r] : best) ++votes[labels[train_idx[r]]];
        std::int64_t winner = 0;
        std::size_t winner_votes = 0;
        for (const auto& [label, count] : votes) {
            if (count > winner_votes) {  // map iterates ascending: lower label wins ties
                winner = label;
                winner_votes = count;
            }
        }
        correct_flags[t] = winner == labels[i] ? 1 : 0;
    });
    std::size_t correct = 0;
    for (std::size_t flag : correct_flags) correct += flag;
    return correct;
}

std::vector<std::size_t> identity_columns(std::size_t n) {
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    return cols;
}

Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto src = m.row(rows[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

Matrix gather_columns(const Matrix& m, std::span<const std::size_t> cols) {
    Matrix out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto src = m.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < cols.size(); ++j) dst[j] = src[cols[j]];
    }
    return out;
}

}  // namespace

double knn_accuracy(const Matrix& features, std::span<const std::int64_t> labels,
                    std::size_t neighbors, std::size_t folds, std::uint64_t seed,
                    std::size_t threads) {
    const std::size_t n = features.rows();
    if (labels.size() != n) throw ArgumentError("knn_accuracy: labels length mismatch");
    if (folds < 2) throw ArgumentError("knn_accuracy: folds must be >= 2");
    if (neighbors < 1) throw ArgumentError("knn_accuracy: neighbors must be >= 1");

    const Folds plan = stratified_folds(labels, folds, seed);
    const std::vector<std::size_t> cols = identity_columns(features.cols());
    double accuracy_sum = 0.0;
    for (const std::vector<std::size_t>& test_idx : plan.test_indices) {
        const std::vector<std::size_t> train_idx = complement(n, test_idx);
        const std::size_t correct =
            fold_correct(features, labels, cols, train_idx, test_idx, neighbors, threads);
        accuracy_sum += static_cast<double>(correct) / static_cast<double>(test_idx.size());
    }
    return accuracy_sum / static_cast<double>(folds);
}

double ScreeningReport::best_screened() const {
    double best = 0.0;
    for (const auto& row : screened_accuracy)
        for (double v : row) best = std::max(best, v);
    return best;
}

double ScreeningReport::best_unreduced() const {
    double best = 0.0;
    for (double v : unreduced_accuracy) best = std::max(best, v);
    return best;
}

double ScreeningReport::best_true_hidden() const {
    if (true_hidden_accuracy.empty()) return std::numeric_limits<double>::quiet_NaN();
    double best = 0.0;
    for (double v : true_hidden_accuracy) best = std::max(best, v);
    return best;
}

ScreeningReport screening_curve(const DatasetBundle& bundle, std::vector<std::size_t> k_list,
                                std::size_t folds, std::vector<std::size_t> neighbor_list,
                                std::uint64_t seed, std::size_t threads) {
    if (folds < 2) throw ArgumentError("screening_curve: folds must be >= 2");
    ScreeningReport report;
    report.folds = folds;
    report.f_scores = anova_f_scores(bundle.visible, bundle.labels);

    const std::size_t f = bundle.visible.cols();
    std::vector<std::size_t> clipped;
    for (std::size_t k : k_list) {
        if (k == 0) continue;
        if (k > f) k = f;
        if (std::find(clipped.begin(), clipped.end(), k) == clipped.end()) clipped.push_back(k);
    }
    k_list = std::move(clipped);
    report.k_list = k_list;
    report.neighbor_list = neighbor_list;
    for (std::size_t k : k_list) report.selected_indices.push_back(select_top_k(report.f_scores, k));

    // Screened accuracies re-select the top features inside every training
    // fold, so a pure-noise dataset scores at chance instead of inheriting
    // selection bias from the test rows.
    const Folds plan = stratified_folds(bundle.labels, folds, seed);
    const std::size_t n = bundle.visible.rows();
    report.screened_accuracy.assign(neighbor_list.size(),
                                    std::vector<double>(k_list.size(), 0.0));
    for (const std::vector<std::size_t>& test_idx : plan.test_indices) {
        const std::vector<std::size_t> train_idx = complement(n, test_idx);
        const Matrix train_rows = gather_rows(bundle.visible, train_idx);
        std::vector<std::int64_t> train_labels(train_idx.size());
        for (std::size_t r = 0; r < train_idx.size(); ++r)
            train_labels[r] = bundle.labels[train_idx[r]];
        const std::vector<double> fold_scores = anova_f_scores(train_rows, train_labels);
        for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
            const std::vector<std::size_t> selected = select_top_k(fold_scores, k_list[ki]);
            for (std::size_t ni = 0; ni < neighbor_list.size(); ++ni) {
                const std::size_t correct =
                    fold_correct(bundle.visible, bundle.labels, selected, train_idx, test_idx,
                                 neighbor_list[ni], threads);
                report.screened_accuracy[ni][ki] +=
                    static_cast<double>(correct) / static_cast<double>(test_idx.size());
            }
        }
    }
    for (auto& row : report.screened_accuracy)
        for (double& v : row) v /= static_cast<double>(folds);

    report.unreduced_accuracy.resize(neighbor_list.size());
    for (std::size_t ni = 0; ni < neighbor_list.size(); ++ni)
        report.unreduced_accuracy[ni] =
            knn_accuracy(bundle.visible, bundle.labels, neighbor_list[ni], folds, seed, threads);

    if (bundle.hidden) {
        std::vector<std::size_t> true_cols;
        for (std::size_t j = 0; j < bundle.true_mask.size(); ++j)
            if (bundle.true_mask[j]) true_cols.push_back(j);
        if (!true_cols.empty()) {
            const Matrix truth = gather_columns(*bundle.hidden, true_cols);
            report.true_hidden_accuracy.resize(neighbor_list.size());
            for (std::size_t ni = 0; ni < neighbor_list.size(); ++ni)
                report.true_hidden_accuracy[ni] =
                    knn_accuracy(truth, bundle.labels, neighbor_list[ni], folds, seed, threads);
        }
    }
    return report;
}

}  // namespace bioblend
