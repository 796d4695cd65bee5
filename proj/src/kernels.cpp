#include "fdl/kernels.hpp"

#include <cstring>

namespace fdl::kernels {

namespace {

inline void row_times_b(const double* arow, const double* b, double* crow, int k, int m, bool accumulate) {
    if (!accumulate) std::memset(crow, 0, sizeof(double) * m);
    for (int l = 0; l < k; ++l) {
        const double av = arow[l];
        const double* brow = b + static_cast<size_t>(l) * m;
        for (int j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
}

}  // namespace

void matmul_serial(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate) {
    for (int i = 0; i < n; ++i)
        row_times_b(a + static_cast<size_t>(i) * k, b, c + static_cast<size_t>(i) * m, k, m, accumulate);
}

void matmul(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        row_times_b(a + static_cast<size_t>(i) * k, b, c + static_cast<size_t>(i) * m, k, m, accumulate);
}

void matmul_at_b_serial(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate) {
    for (int r = 0; r < k; ++r) {
        double* crow = c + static_cast<size_t>(r) * m;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * m);
        for (int i = 0; i < n; ++i) {
            const double av = a[static_cast<size_t>(i) * k + r];
            const double* brow = b + static_cast<size_t>(i) * m;
            for (int j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_at_b(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < k; ++r) {
        double* crow = c + static_cast<size_t>(r) * m;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * m);
        for (int i = 0; i < n; ++i) {
            const double av = a[static_cast<size_t>(i) * k + r];
            const double* brow = b + static_cast<size_t>(i) * m;
            for (int j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_a_bt_serial(const double* a, const double* b, double* c, int n, int m, int k, bool accumulate) {
    for (int i = 0; i < n; ++i) {
        const double* arow = a + static_cast<size_t>(i) * m;
        double* crow = c + static_cast<size_t>(i) * k;
        for (int j = 0; j < k; ++j) {
            const double* brow = b + static_cast<size_t>(j) * m;
            double acc = 0.0;
            for (int l = 0; l < m; ++l) acc += arow[l] * brow[l];
            crow[j] = accumulate ? crow[j] + acc : acc;
        }
    }
}

void matmul_a_bt(const double* a, const double* b, double* c, int n, int m, int k, bool accumulate) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* arow = a + static_cast<size_t>(i) * m;
        double* crow = c + static_cast<size_t>(i) * k;
        for (int j = 0; j < k; ++j) {
            const double* brow = b + static_cast<size_t>(j) * m;
            double acc = 0.0;
            for (int l = 0; l < m; ++l) acc += arow[l] * brow[l];
            crow[j] = accumulate ? crow[j] + acc : acc;
        }
    }
}

}  // namespace fdl::kernels
