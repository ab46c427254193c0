#include "meshfree/meshfree.h"

#include <cstring>
#include <new>
#include <string>

#include "bench.hpp"
#include "errors.hpp"
#include "geo.hpp"
#include "geometry.hpp"
#include "idw.hpp"
#include "kernels.hpp"
#include "rbf.hpp"
#include "runner.hpp"

using namespace meshfree;

struct mf_scatter {
    ScatterSet data;
};
struct mf_rbf_model {
    RbfModel model;
};
struct mf_polygon {
    PolygonBoundary poly;
};
struct mf_mesh {
    TriangleMesh mesh;
};

namespace {

thread_local std::string g_last_error = "no error";

mf_status fail(mf_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
mf_status guarded(Fn&& fn) {
    try {
        fn();
        return MF_OK;
    } catch (const SingularMatrixError& e) {
        return fail(MF_ERROR_SINGULAR_MATRIX, e.what());
    } catch (const ParseError& e) {
        return fail(MF_ERROR_PARSE, e.what());
    } catch (const IoError& e) {
        return fail(MF_ERROR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MF_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(MF_ERROR_RUNTIME, e.what());
    } catch (...) {
        return fail(MF_ERROR_RUNTIME, "unknown error");
    }
}

KernelKind to_kernel(mf_kernel k) {
    switch (k) {
    case MF_KERNEL_GAUSSIAN: return KernelKind::Gaussian;
    case MF_KERNEL_MULTIQUADRIC: return KernelKind::Multiquadric;
    case MF_KERNEL_INVERSE_MULTIQUADRIC: return KernelKind::InverseMultiquadric;
    case MF_KERNEL_THIN_PLATE_SPLINE: return KernelKind::ThinPlateSpline;
    }
    throw std::invalid_argument("unknown kernel enum value");
}

std::vector<Point2D> to_points(const double* xs, const double* ys, size_t n) {
    if ((xs == nullptr || ys == nullptr) && n > 0)
        throw std::invalid_argument("null coordinate array");
    std::vector<Point2D> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {xs[i], ys[i]};
    return pts;
}

} // namespace

extern "C" {

const char* mf_last_error(void) { return g_last_error.c_str(); }

mf_status mf_kernel_eval(mf_kernel kind, double epsilon, double r, double* out) {
    if (!out) return fail(MF_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = evaluate_kernel(to_kernel(kind), epsilon, r); });
}

mf_status mf_scatter_create(const double* xs, const double* ys, const double* values, size_t n,
                            mf_scatter** out) {
    if (!out) return fail(MF_ERROR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        if (!values && n > 0) throw std::invalid_argument("null value array");
        *out = new mf_scatter{ScatterSet::create(to_points(xs, ys, n),
                                                 std::vector<double>(values, values + n))};
    });
}

void mf_scatter_destroy(mf_scatter* s) { delete s; }

mf_status mf_rbf_fit(const mf_scatter* data, mf_kernel kind, double epsilon,
                     mf_rbf_model** out) {
    if (!data || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new mf_rbf_model{fit(data->data, to_kernel(kind), epsilon)}; });
}

mf_status mf_rbf_predict(const mf_rbf_model* model, double x, double y, double* out) {
    if (!model || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = predict(model->model, {x, y}); });
}

mf_status mf_rbf_predict_many(const mf_rbf_model* model, const double* xs, const double* ys,
                              size_t n, double* out) {
    if (!model || (!out && n > 0)) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto values = predict_many(model->model, to_points(xs, ys, n));
        std::memcpy(out, values.data(), n * sizeof(double));
    });
}

mf_status mf_rbf_condition_estimate(const mf_rbf_model* model, double* out) {
    if (!model || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    *out = model->model.condition_estimate;
    return MF_OK;
}

mf_status mf_rbf_fit_residual(const mf_rbf_model* model, double* out) {
    if (!model || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    *out = model->model.fit_residual;
    return MF_OK;
}

void mf_rbf_model_destroy(mf_rbf_model* model) { delete model; }

mf_status mf_idw_interpolate(const mf_scatter* data, double x, double y, double power,
                             int k_nearest, double* out) {
    if (!data || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = idw_interpolate(data->data, {x, y}, {power, k_nearest}); });
}

mf_status mf_idw_interpolate_many(const mf_scatter* data, const double* xs, const double* ys,
                                  size_t n, double power, int k_nearest, double* out) {
    if (!data || (!out && n > 0)) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto values =
            idw_interpolate_many(data->data, to_points(xs, ys, n), {power, k_nearest});
        std::memcpy(out, values.data(), n * sizeof(double));
    });
}

mf_status mf_polygon_create(const double* xs, const double* ys, size_t n, mf_polygon** out) {
    if (!out) return fail(MF_ERROR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded(
        [&] { *out = new mf_polygon{PolygonBoundary::from_vertices(to_points(xs, ys, n))}; });
}

mf_status mf_polygon_load(const char* path, mf_polygon** out) {
    if (!path || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new mf_polygon{load_polygon_csv(path)}; });
}

mf_status mf_polygon_contains(const mf_polygon* poly, double x, double y, int* out) {
    if (!poly || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = point_in_polygon({x, y}, poly->poly) ? 1 : 0; });
}

void mf_polygon_destroy(mf_polygon* poly) { delete poly; }

mf_status mf_triangulate(const double* xs, const double* ys, size_t n, mf_mesh** out) {
    if (!out) return fail(MF_ERROR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] { *out = new mf_mesh{triangulate(to_points(xs, ys, n))}; });
}

size_t mf_mesh_point_count(const mf_mesh* mesh) { return mesh ? mesh->mesh.points.size() : 0; }

size_t mf_mesh_triangle_count(const mf_mesh* mesh) {
    return mesh ? mesh->mesh.triangles.size() : 0;
}

mf_status mf_mesh_get_points(const mf_mesh* mesh, double* xs, double* ys) {
    if (!mesh || !xs || !ys) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    for (size_t i = 0; i < mesh->mesh.points.size(); ++i) {
        xs[i] = mesh->mesh.points[i].x;
        ys[i] = mesh->mesh.points[i].y;
    }
    return MF_OK;
}

mf_status mf_mesh_get_triangles(const mf_mesh* mesh, int* indices) {
    if (!mesh || !indices) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    for (size_t i = 0; i < mesh->mesh.triangles.size(); ++i)
        for (int k = 0; k < 3; ++k) indices[3 * i + k] = mesh->mesh.triangles[i][k];
    return MF_OK;
}

void mf_mesh_destroy(mf_mesh* mesh) { delete mesh; }

mf_status mf_run_converge(const mf_converge_opts* opts, const char* csv_path, int* rows_out,
                          int* failed_rows_out, double* final_rms_rbf,
                          double* final_rms_gravity) {
    if (!opts || !csv_path) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        ConvergenceOptions o;
        o.n_start = opts->n_start;
        o.n_end = opts->n_end;
        o.step = opts->step;
        o.seed = opts->seed;
        o.kernel = to_kernel(opts->kernel);
        o.epsilon = opts->epsilon;
        o.methods = {opts->use_rbf != 0, opts->use_gravity != 0};
        o.idw = {opts->idw_power, opts->idw_k};
        o.threads = opts->threads;
        const ConvergeResult result = run_converge(o, csv_path);
        if (rows_out) *rows_out = static_cast<int>(result.rows.size());
        if (failed_rows_out) *failed_rows_out = result.failed_rows;
        if (final_rms_rbf)
            *final_rms_rbf = !result.rows.empty() && result.rows.back().rms_rbf
                                 ? *result.rows.back().rms_rbf
                                 : -1.0;
        if (final_rms_gravity)
            *final_rms_gravity = !result.rows.empty() && result.rows.back().rms_gravity
                                     ? *result.rows.back().rms_gravity
                                     : -1.0;
    });
}

mf_status mf_run_case_study(const mf_case_study_opts* opts, mf_output_callback callback,
                            void* user) {
    if (!opts || !opts->polygon_path) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        CaseStudyOptions o;
        if (opts->stations_path) o.stations_path = opts->stations_path;
        if (opts->readings_path) o.readings_path = opts->readings_path;
        o.polygon_path = opts->polygon_path;
        o.interior_points = opts->interior_points;
        o.boundary_spacing = opts->boundary_spacing;
        o.hour_start = opts->hour_start;
        o.hour_end = opts->hour_end;
        o.methods = {opts->use_rbf != 0, opts->use_gravity != 0};
        o.kernel = to_kernel(opts->kernel);
        o.epsilon = opts->epsilon;
        o.idw = {opts->idw_power, opts->idw_k};
        o.seed = opts->seed;
        o.threads = opts->threads;
        o.out_dir = opts->out_dir ? opts->out_dir : "out";
        o.lon_step = opts->lon_step;
        o.lat_step = opts->lat_step;
        const auto outputs = run_case_study(o);
        if (callback)
            for (const CaseStudyOutput& out : outputs)
                callback(out.path.c_str(), out.min_value, out.max_value, user);
    });
}

mf_status mf_run_gen_points(const char* polygon_path, int interior_count, uint64_t seed,
                            double boundary_spacing, const char* out_path, int* point_count_out,
                            int* triangle_count_out) {
    if (!polygon_path || !out_path) return fail(MF_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const GenPointsResult r =
            run_gen_points(polygon_path, interior_count, seed, boundary_spacing, out_path);
        if (point_count_out) *point_count_out = r.point_count;
        if (triangle_count_out) *triangle_count_out = r.triangle_count;
    });
}

} // extern "C"
