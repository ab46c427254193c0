/* C API for the meshfree interpolation library.
 *
 * All functions return mf_status; MF_OK is 0. On failure, mf_last_error()
 * returns a thread-local message describing what went wrong. Handles are
 * opaque and must be released with their matching *_destroy function.
 */
#ifndef MESHFREE_H
#define MESHFREE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mf_status {
    MF_OK = 0,
    MF_ERROR_INVALID_ARGUMENT = 1,
    MF_ERROR_SINGULAR_MATRIX = 2,
    MF_ERROR_IO = 3,
    MF_ERROR_PARSE = 4,
    MF_ERROR_RUNTIME = 5
} mf_status;

typedef enum mf_kernel {
    MF_KERNEL_GAUSSIAN = 0,
    MF_KERNEL_MULTIQUADRIC = 1,
    MF_KERNEL_INVERSE_MULTIQUADRIC = 2,
    MF_KERNEL_THIN_PLATE_SPLINE = 3
} mf_kernel;

typedef struct mf_scatter mf_scatter;
typedef struct mf_rbf_model mf_rbf_model;
typedef struct mf_polygon mf_polygon;
typedef struct mf_mesh mf_mesh;

/* Message for the most recent failure on this thread; never NULL. */
const char* mf_last_error(void);

/* ---- kernels ---- */

mf_status mf_kernel_eval(mf_kernel kind, double epsilon, double r, double* out);

/* ---- scattered data ---- */

mf_status mf_scatter_create(const double* xs, const double* ys, const double* values,
                            size_t n, mf_scatter** out);
void mf_scatter_destroy(mf_scatter* s);

/* ---- RBF interpolation ---- */

mf_status mf_rbf_fit(const mf_scatter* data, mf_kernel kind, double epsilon,
                     mf_rbf_model** out);
mf_status mf_rbf_predict(const mf_rbf_model* model, double x, double y, double* out);
mf_status mf_rbf_predict_many(const mf_rbf_model* model, const double* xs, const double* ys,
                              size_t n, double* out);
mf_status mf_rbf_condition_estimate(const mf_rbf_model* model, double* out);
mf_status mf_rbf_fit_residual(const mf_rbf_model* model, double* out);
void mf_rbf_model_destroy(mf_rbf_model* model);

/* ---- gravity / inverse-distance interpolation ---- */

/* k_nearest = 0 uses all points. */
mf_status mf_idw_interpolate(const mf_scatter* data, double x, double y, double power,
                             int k_nearest, double* out);
mf_status mf_idw_interpolate_many(const mf_scatter* data, const double* xs, const double* ys,
                                  size_t n, double power, int k_nearest, double* out);

/* ---- geometry ---- */

mf_status mf_polygon_create(const double* xs, const double* ys, size_t n, mf_polygon** out);
mf_status mf_polygon_load(const char* path, mf_polygon** out);
mf_status mf_polygon_contains(const mf_polygon* poly, double x, double y, int* out);
void mf_polygon_destroy(mf_polygon* poly);

mf_status mf_triangulate(const double* xs, const double* ys, size_t n, mf_mesh** out);
size_t mf_mesh_point_count(const mf_mesh* mesh);
size_t mf_mesh_triangle_count(const mf_mesh* mesh);
/* xs/ys sized mf_mesh_point_count; indices sized 3 * mf_mesh_triangle_count. */
mf_status mf_mesh_get_points(const mf_mesh* mesh, double* xs, double* ys);
mf_status mf_mesh_get_triangles(const mf_mesh* mesh, int* indices);
void mf_mesh_destroy(mf_mesh* mesh);

/* ---- high-level runs (the CLI surface) ---- */

typedef struct mf_converge_opts {
    uint64_t n_start;   /* default 300 */
    uint64_t n_end;     /* default 3000; the full sweep ends at 15000 */
    uint64_t step;      /* default 300 */
    uint64_t seed;
    mf_kernel kernel;
    double epsilon;
    int use_rbf;
    int use_gravity;
    double idw_power;   /* default 2 */
    int idw_k;          /* 0 = all points */
    int threads;        /* 0 = machine parallelism */
} mf_converge_opts;

/* Writes the sweep CSV. rows_out / failed_rows_out may be NULL. */
mf_status mf_run_converge(const mf_converge_opts* opts, const char* csv_path,
                          int* rows_out, int* failed_rows_out,
                          double* final_rms_rbf, double* final_rms_gravity);

typedef struct mf_case_study_opts {
    const char* stations_path; /* NULL with readings_path NULL => synthesize */
    const char* readings_path;
    const char* polygon_path;
    int interior_points;       /* default 3881 */
    double boundary_spacing;   /* degrees, default 0.25 */
    int hour_start;            /* 1-based */
    int hour_end;
    int use_rbf;
    int use_gravity;
    mf_kernel kernel;
    double epsilon;
    double idw_power;
    int idw_k;
    uint64_t seed;
    int threads;
    const char* out_dir;
    double lon_step;           /* synthesizer resolution, default 0.625 */
    double lat_step;           /* default 0.5 */
} mf_case_study_opts;

/* Called once per written file. */
typedef void (*mf_output_callback)(const char* path, double min_value, double max_value,
                                   void* user);

mf_status mf_run_case_study(const mf_case_study_opts* opts, mf_output_callback callback,
                            void* user);

mf_status mf_run_gen_points(const char* polygon_path, int interior_count, uint64_t seed,
                            double boundary_spacing, const char* out_path,
                            int* point_count_out, int* triangle_count_out);

#ifdef __cplusplus
}
#endif

#endif /* MESHFREE_H */
