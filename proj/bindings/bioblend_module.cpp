#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>

#include "bioblend/dataset_io.hpp"
#include "bioblend/errors.hpp"
#include "bioblend/eval_harness.hpp"
#include "bioblend/pipeline.hpp"
#include "bioblend/polynomial_blender.hpp"
#include "bioblend/version.hpp"

namespace py = pybind11;

namespace {

using bioblend::Matrix;

py::array_t<double> to_numpy(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    std::copy(m.data(), m.data() + m.size(), out.mutable_data());
    return out;
}

template <typename T>
py::array_t<T> vector_to_numpy(const std::vector<T>& v) {
    py::array_t<T> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw bioblend::ArgumentError("expected a 2-dimensional array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data());
    return m;
}

std::vector<std::int64_t> to_labels(
    const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw bioblend::ArgumentError("labels must be 1-dimensional");
    return {a.data(), a.data() + a.size()};
}

bioblend::GeneratorConfig config_from_kwargs(const py::kwargs& kwargs) {
    bioblend::GeneratorConfig c;
    for (const auto& item : kwargs) {
        const std::string key = py::cast<std::string>(item.first);
        const py::handle value = item.second;
        if (key == "n_labels") c.n_labels = py::cast<std::size_t>(value);
        else if (key == "n_samples_per_label") c.n_samples_per_label = py::cast<std::size_t>(value);
        else if (key == "n_true_features") c.n_true_features = py::cast<std::size_t>(value);
        else if (key == "n_fake_features") c.n_fake_features = py::cast<std::size_t>(value);
        else if (key == "average_consecutive_locations")
            c.average_consecutive_locations = py::cast<long>(value);
        else if (key == "average_shared_locations")
            c.average_shared_locations = py::cast<long>(value);
        else if (key == "n_features_out") c.n_features_out = py::cast<std::size_t>(value);
        else if (key == "blending_mode")
            c.blending_mode = bioblend::blend_mode_from_string(py::cast<std::string>(value));
        else if (key == "usefulness_scheme")
            c.usefulness_scheme = bioblend::scheme_from_string(py::cast<std::string>(value));
        else if (key == "usefulness_min") c.usefulness_min = py::cast<double>(value);
        else if (key == "usefulness_max") c.usefulness_max = py::cast<double>(value);
        else if (key == "sampling_distribution")
            c.sampling_distribution =
                bioblend::sample_dist_from_string(py::cast<std::string>(value));
        else if (key == "envelope_kind")
            c.envelope_kind = bioblend::envelope_from_string(py::cast<std::string>(value));
        else if (key == "envelope_location") c.envelope_location = py::cast<double>(value);
        else if (key == "envelope_scale") c.envelope_scale = py::cast<double>(value);
        else if (key == "scale_jitter") c.scale_jitter = py::cast<double>(value);
        else if (key == "fake_scale") c.fake_scale = py::cast<double>(value);
        else if (key == "polynomial_degree") c.polynomial_degree = py::cast<std::size_t>(value);
        else if (key == "blend_k_min") c.blend_k_min = py::cast<std::size_t>(value);
        else if (key == "blend_k_max") c.blend_k_max = py::cast<std::size_t>(value);
        else if (key == "blend_concentration") c.blend_concentration = py::cast<double>(value);
        else if (key == "noise_enabled") c.noise_enabled = py::cast<bool>(value);
        else if (key == "noise_mode") {
            const std::string mode = py::cast<std::string>(value);
            if (mode != "auto") c.noise_mode = bioblend::noise_mode_from_string(mode);
        } else if (key == "noise_alpha_min") c.noise_alpha_min = py::cast<double>(value);
        else if (key == "noise_alpha_max") c.noise_alpha_max = py::cast<double>(value);
        else if (key == "seed") c.seed = py::cast<std::uint64_t>(value);
        else if (key == "store_hidden") c.store_hidden = py::cast<bool>(value);
        else if (key == "threads") c.threads = py::cast<std::size_t>(value);
        else throw bioblend::ArgumentError("unknown parameter \"" + key + "\"");
    }
    return c;
}

py::dict bundle_to_dict(const bioblend::DatasetBundle& bundle) {
    py::dict out;
    out["visible"] = to_numpy(bundle.visible);
    out["labels"] = vector_to_numpy(bundle.labels);
    if (bundle.hidden) out["hidden"] = to_numpy(*bundle.hidden);
    out["usefulness"] = vector_to_numpy(bundle.usefulness);
    py::array_t<bool> mask(
        std::vector<py::ssize_t>{static_cast<py::ssize_t>(bundle.true_mask.size())});
    for (py::ssize_t i = 0; i < mask.size(); ++i)
        mask.mutable_data()[i] = bundle.true_mask[static_cast<std::size_t>(i)] != 0;
    out["true_mask"] = mask;
    out["alpha"] = vector_to_numpy(bundle.alpha);
    py::dict weights;
    weights["indices"] = vector_to_numpy(bundle.weights.indices);
    weights["values"] = vector_to_numpy(bundle.weights.values);
    weights["row_offsets"] = vector_to_numpy(bundle.weights.row_offsets);
    out["weights"] = weights;
    out["positivity_shift"] = bundle.positivity_shift;
    out["noise_positivity_shift"] = bundle.noise_positivity_shift;
    out["seed"] = bundle.config.seed;
    return out;
}

}  // namespace

PYBIND11_MODULE(_bioblend, m) {
    m.doc() = "Deterministic generator of high dimensional multi-class feature spaces";
    m.attr("__version__") = bioblend::kVersionString;

    py::register_exception<bioblend::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<bioblend::FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<bioblend::IoError>(m, "IoError", PyExc_OSError);

    m.def("count_transitional", &bioblend::count_transitional, py::arg("f_hidden"),
          py::arg("degree"),
          "Number of transitional features of a degree-<=d expansion: "
          "C(f_hidden + d, d) - 1.");

    m.def(
        "expand",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
           std::size_t degree) {
            const Matrix input = to_matrix(values);
            Matrix out;
            {
                py::gil_scoped_release release;
                out = bioblend::expand(input, degree);
            }
            return to_numpy(out);
        },
        py::arg("values"), py::arg("degree"),
        "Degree-<=d polynomial expansion with scale-preserving signed roots.");

    m.def(
        "anova_f_scores",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& features,
           const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>& labels) {
            const Matrix x = to_matrix(features);
            const std::vector<std::int64_t> y = to_labels(labels);
            std::vector<double> scores;
            {
                py::gil_scoped_release release;
                scores = bioblend::anova_f_scores(x, y);
            }
            return vector_to_numpy(scores);
        },
        py::arg("features"), py::arg("labels"),
        "One-way ANOVA F-statistic per feature column.");

    m.def(
        "knn_accuracy",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& features,
           const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>& labels,
           std::size_t neighbors, std::size_t folds, std::uint64_t seed, std::size_t threads) {
            const Matrix x = to_matrix(features);
            const std::vector<std::int64_t> y = to_labels(labels);
            py::gil_scoped_release release;
            return bioblend::knn_accuracy(x, y, neighbors, folds, seed, threads);
        },
        py::arg("features"), py::arg("labels"), py::arg("neighbors") = 1, py::arg("folds") = 4,
        py::arg("seed") = 0, py::arg("threads") = 1,
        "Stratified cross-validated kNN accuracy on standardized features.");

    m.def(
        "generate",
        [](const py::kwargs& kwargs) {
            const bioblend::GeneratorConfig config = config_from_kwargs(kwargs);
            bioblend::DatasetBundle bundle;
            {
                py::gil_scoped_release release;
                bundle = bioblend::run_pipeline(config);
            }
            return bundle_to_dict(bundle);
        },
        "Run the full generation pipeline; returns a dict of numpy arrays "
        "(visible, labels, usefulness, true_mask, alpha, weights, and "
        "optionally hidden).");

    m.def(
        "generate_file",
        [](const std::string& path, const py::kwargs& kwargs) {
            const bioblend::GeneratorConfig config = config_from_kwargs(kwargs);
            py::gil_scoped_release release;
            const bioblend::DatasetBundle bundle = bioblend::run_pipeline(config);
            bioblend::write_hdf5(bundle, path);
        },
        py::arg("path"),
        "Run the generation pipeline and write the bundle to an HDF5 file.");
}
