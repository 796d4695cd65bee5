#pragma once

#include <cstddef>

namespace fdl::kernels {

// Batched dense products used by the network forward/backward passes.
//
// Every kernel comes in two flavours: a plain serial reference and an
// OpenMP version parallelised over independent output rows. The parallel
// versions perform the exact same per-element accumulation order as the
// serial ones, so results are bit-identical for any thread count; the
// serial versions stay around as the comparison baseline for tests and
// the benchmark target.

// c[n x m] = a[n x k] * b[k x m]; adds into c when accumulate is set.
void matmul_serial(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate = false);
void matmul(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate = false);

// c[k x m] = a^T * b with a[n x k], b[n x m].
void matmul_at_b_serial(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate = false);
void matmul_at_b(const double* a, const double* b, double* c, int n, int k, int m, bool accumulate = false);

// c[n x k] = a * b^T with a[n x m], b[k x m].
void matmul_a_bt_serial(const double* a, const double* b, double* c, int n, int m, int k, bool accumulate = false);
void matmul_a_bt(const double* a, const double* b, double* c, int n, int m, int k, bool accumulate = false);

}  // namespace fdl::kernels
