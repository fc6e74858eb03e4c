#include "bioblend/dataset_io.hpp"

#include <hdf5.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "bioblend/errors.hpp"
#include "bioblend/version.hpp"

namespace bioblend {

namespace {

void ensure_quiet() {
    static const bool done = [] {
        H5Eset_auto2(H5E_DEFAULT, nullptr, nullptr);
        return true;
    }();
    (void)done;
}

// Owning wrapper for an hid_t with its matching close function.
class Handle {
public:
    Handle() = default;
    Handle(hid_t id, herr_t (*closer)(hid_t)) : id_(id), closer_(closer) {}
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& other) noexcept : id_(other.id_), closer_(other.closer_) { other.id_ = -1; }
    Handle& operator=(Handle&& other) noexcept {
        if (this != &other) {
            reset();
            id_ = other.id_;
            closer_ = other.closer_;
            other.id_ = -1;
        }
        return *this;
    }
    ~Handle() { reset(); }

    hid_t get() const { return id_; }
    operator hid_t() const { return id_; }
    bool valid() const { return id_ >= 0; }
    void reset() {
        if (id_ >= 0 && closer_) closer_(id_);
        id_ = -1;
    }

private:
    hid_t id_ = -1;
    herr_t (*closer_)(hid_t) = nullptr;
};

[[noreturn]] void fail(const std::string& what, const std::filesystem::path& path) {
    throw IoError("HDF5 error while " + what + " (" + path.string() + ")");
}

void check(herr_t status, const char* what, const std::filesystem::path& path) {
    if (status < 0) fail(what, path);
}

Handle make_plist(hid_t cls, const std::filesystem::path& path) {
    Handle p(H5Pcreate(cls), H5Pclose);
    if (!p.valid()) fail("creating property list", path);
    // Object header timestamps would break byte-identical reruns.
    check(H5Pset_obj_track_times(p, 0), "disabling object times", path);
    return p;
}

struct Writer {
    hid_t file;
    const std::filesystem::path& path;
    Handle dcpl;

    void dataset(hid_t loc, const char* name, hid_t file_type, hid_t mem_type,
                 const std::vector<hsize_t>& dims, const void* data) {
        Handle space(H5Screate_simple(static_cast<int>(dims.size()), dims.data(), nullptr),
                     H5Sclose);
        if (!space.valid()) fail("creating dataspace", path);
        Handle ds(H5Dcreate2(loc, name, file_type, space, H5P_DEFAULT, dcpl, H5P_DEFAULT),
                  H5Dclose);
        if (!ds.valid()) fail(std::string("creating dataset ") + name, path);
        if (!dims.empty() && dims[0] > 0)
            check(H5Dwrite(ds, mem_type, H5S_ALL, H5S_ALL, H5P_DEFAULT, data),
                  "writing dataset", path);
    }

    Handle group(const char* name) {
        Handle gcpl = make_plist(H5P_GROUP_CREATE, path);
        Handle g(H5Gcreate2(file, name, H5P_DEFAULT, gcpl, H5P_DEFAULT), H5Gclose);
        if (!g.valid()) fail(std::string("creating group ") + name, path);
        return g;
    }

    void attr(const char* name, hid_t file_type, hid_t mem_type, const void* value) {
        Handle space(H5Screate(H5S_SCALAR), H5Sclose);
        Handle a(H5Acreate2(file, name, file_type, space, H5P_DEFAULT, H5P_DEFAULT), H5Aclose);
        if (!a.valid()) fail(std::string("creating attribute ") + name, path);
        check(H5Awrite(a, mem_type, value), "writing attribute", path);
    }

    void attr_f64(const char* name, double v) { attr(name, H5T_IEEE_F64LE, H5T_NATIVE_DOUBLE, &v); }
    void attr_u64(const char* name, std::uint64_t v) {
        attr(name, H5T_STD_U64LE, H5T_NATIVE_UINT64, &v);
    }
    void attr_i64(const char* name, std::int64_t v) {
        attr(name, H5T_STD_I64LE, H5T_NATIVE_INT64, &v);
    }
    void attr_u8(const char* name, std::uint8_t v) { attr(name, H5T_STD_U8LE, H5T_NATIVE_UINT8, &v); }

    void attr_str(const char* name, const std::string& v) {
        Handle type(H5Tcopy(H5T_C_S1), H5Tclose);
        check(H5Tset_size(type, v.size() + 1), "sizing string type", path);
        check(H5Tset_strpad(type, H5T_STR_NULLTERM), "padding string type", path);
        attr(name, type, type, v.c_str());
    }
};

void write_impl(const DatasetBundle& b, const std::filesystem::path& path) {
    const std::size_t n_samples = b.visible.rows();
    const std::size_t n_visible = b.visible.cols();
    const std::size_t f_hidden = b.usefulness.size();
    if (b.labels.size() != n_samples || b.alpha.size() != n_visible ||
        b.true_mask.size() != f_hidden ||
        b.weights.row_offsets.size() != n_visible + 1 ||
        b.weights.indices.size() != b.weights.values.size())
        throw InternalError("write_hdf5: inconsistent bundle shapes");
    if (b.hidden && (b.hidden->rows() != n_samples || b.hidden->cols() != f_hidden))
        throw InternalError("write_hdf5: hidden matrix shape mismatch");

    Handle fcpl = make_plist(H5P_FILE_CREATE, path);
    Handle file(H5Fcreate(path.string().c_str(), H5F_ACC_TRUNC, fcpl, H5P_DEFAULT), H5Fclose);
    if (!file.valid()) fail("creating file", path);

    Writer w{file.get(), path, make_plist(H5P_DATASET_CREATE, path)};

    w.dataset(file, "features", H5T_IEEE_F64LE, H5T_NATIVE_DOUBLE,
              {n_samples, n_visible}, b.visible.data());
    w.dataset(file, "labels", H5T_STD_I64LE, H5T_NATIVE_INT64, {n_samples}, b.labels.data());

    {
        Handle hidden = w.group("hidden");
        if (b.hidden)
            w.dataset(hidden, "features", H5T_IEEE_F64LE, H5T_NATIVE_DOUBLE,
                      {n_samples, f_hidden}, b.hidden->data());
        w.dataset(hidden, "usefulness", H5T_IEEE_F64LE, H5T_NATIVE_DOUBLE, {f_hidden},
                  b.usefulness.data());
        w.dataset(hidden, "true_mask", H5T_STD_U8LE, H5T_NATIVE_UINT8, {f_hidden},
                  b.true_mask.data());
    }
    {
        Handle noise = w.group("noise");
        w.dataset(noise, "alpha", H5T_IEEE_F64LE, H5T_NATIVE_DOUBLE, {n_visible}, b.alpha.data());
    }
    {
        Handle weights = w.group("weights");
        w.dataset(weights, "indices", H5T_STD_I64LE, H5T_NATIVE_INT64, {b.weights.indices.size()},
                  b.weights.indices.data());
        w.dataset(weights, "values", H5T_IEEE_F64LE, H5T_NATIVE_DOUBLE, {b.weights.values.size()},
                  b.weights.values.data());
        w.dataset(weights, "row_offsets", H5T_STD_I64LE, H5T_NATIVE_INT64,
                  {b.weights.row_offsets.size()}, b.weights.row_offsets.data());
    }

    const GeneratorConfig& c = b.config;
    w.attr_str("version", kVersionString);
    w.attr_u64("seed", c.seed);
    w.attr_u64("n_labels", c.n_labels);
    w.attr_u64("n_samples_per_label", c.n_samples_per_label);
    w.attr_u64("n_true_features", c.n_true_features);
    w.attr_u64("n_fake_features", c.n_fake_features);
    w.attr_i64("average_consecutive_locations", c.average_consecutive_locations);
    w.attr_i64("average_shared_locations", c.average_shared_locations);
    w.attr_u64("n_features_out", c.n_features_out);
    w.attr_str("blending_mode", to_string(c.blending_mode));
    w.attr_str("usefulness_scheme", to_string(c.usefulness_scheme));
    w.attr_f64("usefulness_min", c.usefulness_min);
    w.attr_f64("usefulness_max", c.usefulness_max);
    w.attr_str("sampling_distribution", to_string(c.sampling_distribution));
    w.attr_str("envelope_kind", to_string(c.envelope_kind));
    w.attr_f64("envelope_location", c.envelope_location);
    w.attr_f64("envelope_scale", c.envelope_scale);
    w.attr_f64("scale_jitter", c.scale_jitter);
    w.attr_f64("fake_scale", c.fake_scale);
    w.attr_u64("polynomial_degree", c.polynomial_degree);
    w.attr_u64("blend_k_min", c.blend_k_min);
    w.attr_u64("blend_k_max", c.blend_k_max);
    w.attr_f64("blend_concentration", c.blend_concentration);
    w.attr_u8("noise_enabled", c.noise_enabled ? 1 : 0);
    w.attr_str("noise_mode", to_string(c.resolved_noise_mode()));
    w.attr_f64("noise_alpha_min", c.noise_alpha_min);
    w.attr_f64("noise_alpha_max", c.noise_alpha_max);
    w.attr_u8("store_hidden", c.store_hidden ? 1 : 0);
    w.attr_f64("positivity_shift", b.positivity_shift);
    w.attr_f64("noise_positivity_shift", b.noise_positivity_shift);
}

struct Reader {
    hid_t file;
    const std::filesystem::path& path;

    bool exists(const char* name) const { return H5Lexists(file, name, H5P_DEFAULT) > 0; }

    void require(const char* name) const {
        if (!exists(name)) throw FormatError(std::string("missing /") + name);
    }

    std::vector<hsize_t> dims(hid_t ds) const {
        Handle space(H5Dget_space(ds), H5Sclose);
        const int rank = H5Sget_simple_extent_ndims(space);
        if (rank < 0) fail("querying dataspace", path);
        std::vector<hsize_t> out(static_cast<std::size_t>(rank));
        H5Sget_simple_extent_dims(space, out.data(), nullptr);
        return out;
    }

    std::vector<hsize_t> read(const char* name, hid_t mem_type, void* (*alloc)(void*, std::size_t),
                              void* target) const {
        require(name);
        Handle ds(H5Dopen2(file, name, H5P_DEFAULT), H5Dclose);
        if (!ds.valid()) fail(std::string("opening /") + name, path);
        const std::vector<hsize_t> d = dims(ds);
        std::size_t total = 1;
        for (hsize_t v : d) total *= static_cast<std::size_t>(v);
        void* buffer = alloc(target, total);
        if (total > 0)
            check(H5Dread(ds, mem_type, H5S_ALL, H5S_ALL, H5P_DEFAULT, buffer),
                  "reading dataset", path);
        return d;
    }

    std::vector<hsize_t> read_f64(const char* name, std::vector<double>& out) const {
        return read(
            name, H5T_NATIVE_DOUBLE,
            [](void* t, std::size_t n) -> void* {
                auto* v = static_cast<std::vector<double>*>(t);
                v->resize(n);
                return v->data();
            },
            &out);
    }

    std::vector<hsize_t> read_i64(const char* name, std::vector<std::int64_t>& out) const {
        return read(
            name, H5T_NATIVE_INT64,
            [](void* t, std::size_t n) -> void* {
                auto* v = static_cast<std::vector<std::int64_t>*>(t);
                v->resize(n);
                return v->data();
            },
            &out);
    }

    std::vector<hsize_t> read_u8(const char* name, std::vector<std::uint8_t>& out) const {
        return read(
            name, H5T_NATIVE_UINT8,
            [](void* t, std::size_t n) -> void* {
                auto* v = static_cast<std::vector<std::uint8_t>*>(t);
                v->resize(n);
                return v->data();
            },
            &out);
    }

    Matrix read_matrix(const char* name) const {
        std::vector<double> flat;
        const std::vector<hsize_t> d = read_f64(name, flat);
        if (d.size() != 2) throw FormatError(std::string("/") + name + " must be 2-dimensional");
        Matrix m(static_cast<std::size_t>(d[0]), static_cast<std::size_t>(d[1]));
        std::copy(flat.begin(), flat.end(), m.data());
        return m;
    }

    bool has_attr(const char* name) const { return H5Aexists(file, name) > 0; }

    Handle open_attr(const char* name) const {
        if (!has_attr(name)) throw FormatError(std::string("missing attribute ") + name);
        Handle a(H5Aopen(file, name, H5P_DEFAULT), H5Aclose);
        if (!a.valid()) fail(std::string("opening attribute ") + name, path);
        return a;
    }

    double attr_f64(const char* name) const {
        double v = 0.0;
        check(H5Aread(open_attr(name), H5T_NATIVE_DOUBLE, &v), "reading attribute", path);
        return v;
    }

    std::uint64_t attr_u64(const char* name) const {
        std::uint64_t v = 0;
        check(H5Aread(open_attr(name), H5T_NATIVE_UINT64, &v), "reading attribute", path);
        return v;
    }

    std::int64_t attr_i64(const char* name) const {
        std::int64_t v = 0;
        check(H5Aread(open_attr(name), H5T_NATIVE_INT64, &v), "reading attribute", path);
        return v;
    }

    std::uint8_t attr_u8(const char* name) const {
        std::uint8_t v = 0;
        check(H5Aread(open_attr(name), H5T_NATIVE_UINT8, &v), "reading attribute", path);
        return v;
    }

    std::string attr_str(const char* name) const {
        Handle a = open_attr(name);
        Handle type(H5Aget_type(a), H5Tclose);
        if (!type.valid()) fail("querying attribute type", path);
        const std::size_t size = H5Tget_size(type);
        std::vector<char> buf(size + 1, '\0');
        check(H5Aread(a, type, buf.data()), "reading attribute", path);
        return std::string(buf.data());
    }
};

int version_major_of(const std::string& version) {
    try {
        return std::stoi(version.substr(0, version.find('.')));
    } catch (...) {
        throw FormatError("unparsable version attribute \"" + version + "\"");
    }
}

DatasetBundle read_impl(const std::filesystem::path& path) {
    Handle file(H5Fopen(path.string().c_str(), H5F_ACC_RDONLY, H5P_DEFAULT), H5Fclose);
    if (!file.valid()) throw IoError("cannot open " + path.string());
    Reader r{file.get(), path};

    const std::string version = r.attr_str("version");
    const int major = version_major_of(version);
    if (major > kVersionMajor)
        throw FormatError("file version " + version + " is newer than supported " +
                          kVersionString);

    DatasetBundle b;
    b.visible = r.read_matrix("features");
    r.read_i64("labels", b.labels);
    r.require("hidden");
    r.read_f64("hidden/usefulness", b.usefulness);
    r.read_u8("hidden/true_mask", b.true_mask);
    if (r.exists("hidden") && H5Lexists(file, "hidden/features", H5P_DEFAULT) > 0)
        b.hidden = r.read_matrix("hidden/features");
    r.require("noise");
    r.read_f64("noise/alpha", b.alpha);
    r.require("weights");
    r.read_i64("weights/indices", b.weights.indices);
    r.read_f64("weights/values", b.weights.values);
    r.read_i64("weights/row_offsets", b.weights.row_offsets);

    GeneratorConfig& c = b.config;
    c.seed = r.attr_u64("seed");
    c.n_labels = r.attr_u64("n_labels");
    c.n_samples_per_label = r.attr_u64("n_samples_per_label");
    c.n_true_features = r.attr_u64("n_true_features");
    c.n_fake_features = r.attr_u64("n_fake_features");
    c.average_consecutive_locations = r.attr_i64("average_consecutive_locations");
    c.average_shared_locations = r.attr_i64("average_shared_locations");
    c.n_features_out = r.attr_u64("n_features_out");
    c.blending_mode = blend_mode_from_string(r.attr_str("blending_mode"));
    c.usefulness_scheme = scheme_from_string(r.attr_str("usefulness_scheme"));
    c.usefulness_min = r.attr_f64("usefulness_min");
    c.usefulness_max = r.attr_f64("usefulness_max");
    c.sampling_distribution = sample_dist_from_string(r.attr_str("sampling_distribution"));
    c.envelope_kind = envelope_from_string(r.attr_str("envelope_kind"));
    c.envelope_location = r.attr_f64("envelope_location");
    c.envelope_scale = r.attr_f64("envelope_scale");
    c.scale_jitter = r.attr_f64("scale_jitter");
    c.fake_scale = r.attr_f64("fake_scale");
    c.polynomial_degree = r.attr_u64("polynomial_degree");
    c.blend_k_min = r.attr_u64("blend_k_min");
    c.blend_k_max = r.attr_u64("blend_k_max");
    c.blend_concentration = r.attr_f64("blend_concentration");
    c.noise_enabled = r.attr_u8("noise_enabled") != 0;
    c.noise_mode = noise_mode_from_string(r.attr_str("noise_mode"));
    c.noise_alpha_min = r.attr_f64("noise_alpha_min");
    c.noise_alpha_max = r.attr_f64("noise_alpha_max");
    c.store_hidden = r.attr_u8("store_hidden") != 0;
    b.positivity_shift = r.attr_f64("positivity_shift");
    b.noise_positivity_shift = r.attr_f64("noise_positivity_shift");

    b.weights.k_min = c.blend_k_min;
    b.weights.k_max = c.blend_k_max;
    b.weights.n_trans = count_transitional(c.f_hidden(), c.polynomial_degree);

    if (b.labels.size() != b.visible.rows())
        throw FormatError("/labels length does not match /features rows");
    if (b.true_mask.size() != b.usefulness.size())
        throw FormatError("/hidden/true_mask length does not match /hidden/usefulness");
    if (b.alpha.size() != b.visible.cols())
        throw FormatError("/noise/alpha length does not match /features columns");
    if (b.weights.row_offsets.size() != b.visible.cols() + 1)
        throw FormatError("/weights/row_offsets length does not match feature count");
    if (b.weights.indices.size() != b.weights.values.size())
        throw FormatError("/weights/indices and /weights/values lengths differ");
    return b;
}

void append_float(std::string& line, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    line += buf;
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& file, char prefix) {
    std::ofstream out(file, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open " + file.string());
    std::string line;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j > 0) line += ',';
        line += prefix;
        line += std::to_string(j);
    }
    line += '\n';
    out << line;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        line.clear();
        const auto row = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) line += ',';
            append_float(line, row[j]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw IoError("failed writing " + file.string());
}

}  // namespace

void write_hdf5(const DatasetBundle& bundle, const std::filesystem::path& path) {
    ensure_quiet();
    try {
        write_impl(bundle, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(path, ec);  // no partial files
        throw;
    }
}

DatasetBundle read_hdf5(const std::filesystem::path& path) {
    ensure_quiet();
    if (!std::filesystem::exists(path)) throw IoError("no such file: " + path.string());
    return read_impl(path);
}

void export_csv(const DatasetBundle& bundle, const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory " + directory.string() + ": " + ec.message());

    write_matrix_csv(bundle.visible, directory / "features.csv", 'f');

    std::ofstream labels(directory / "labels.csv", std::ios::binary);
    if (!labels) throw IoError("cannot open " + (directory / "labels.csv").string());
    labels << "label\n";
    for (std::int64_t v : bundle.labels) labels << v << '\n';
    if (!labels) throw IoError("failed writing " + (directory / "labels.csv").string());

    if (bundle.hidden) write_matrix_csv(*bundle.hidden, directory / "hidden_features.csv", 'h');
}

}  // namespace bioblend
