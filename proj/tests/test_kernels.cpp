#include <doctest.h>

#include <random>
#include <tuple>
#include <vector>

#include "fdl/kernels.hpp"

using namespace fdl;

namespace {

std::vector<double> random_buf(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

// Index-by-index reference product, written independently of the kernels.
std::vector<double> naive_ab(const std::vector<double>& a, const std::vector<double>& b, int n, int k, int m) {
    std::vector<double> c(n * m, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            double acc = 0.0;
            for (int l = 0; l < k; ++l) acc += a[i * k + l] * b[l * m + j];
            c[i * m + j] = acc;
        }
    return c;
}

}  // namespace

TEST_CASE("matmul matches a naive reference") {
    std::mt19937_64 rng(7);
    for (auto [n, k, m] : {std::tuple<int, int, int>{1, 1, 1}, {3, 4, 5}, {17, 9, 13}, {64, 100, 32}}) {
        const auto a = random_buf(n * k, rng);
        const auto b = random_buf(k * m, rng);
        const auto expect = naive_ab(a, b, n, k, m);
        std::vector<double> c(n * m, -1.0);
        kernels::matmul(a.data(), b.data(), c.data(), n, k, m);
        for (int i = 0; i < n * m; ++i) CHECK(c[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
}

TEST_CASE("parallel kernels are bit-identical to the serial references") {
    std::mt19937_64 rng(11);
    const int n = 37, k = 23, m = 29;
    const auto a = random_buf(n * k, rng);
    const auto b = random_buf(k * m, rng);

    std::vector<double> c1(n * m), c2(n * m);
    kernels::matmul_serial(a.data(), b.data(), c1.data(), n, k, m);
    kernels::matmul(a.data(), b.data(), c2.data(), n, k, m);
    CHECK(c1 == c2);

    std::vector<double> d1(k * m), d2(k * m);
    kernels::matmul_at_b_serial(a.data(), b.data(), d1.data(), n, k, m);
    kernels::matmul_at_b(a.data(), b.data(), d2.data(), n, k, m);
    CHECK(d1 == d2);

    const auto a2 = random_buf(n * m, rng);
    const auto b2 = random_buf(k * m, rng);
    std::vector<double> e1(n * k), e2(n * k);
    kernels::matmul_a_bt_serial(a2.data(), b2.data(), e1.data(), n, m, k);
    kernels::matmul_a_bt(a2.data(), b2.data(), e2.data(), n, m, k);
    CHECK(e1 == e2);
}

TEST_CASE("transposed kernels agree with explicit transposition") {
    std::mt19937_64 rng(13);
    const int n = 8, k = 6, m = 5;
    const auto a = random_buf(n * k, rng);
    const auto b = random_buf(n * m, rng);

    std::vector<double> at(k * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) at[j * n + i] = a[i * k + j];
    const auto expect = naive_ab(at, b, k, n, m);
    std::vector<double> c(k * m);
    kernels::matmul_at_b(a.data(), b.data(), c.data(), n, k, m);
    for (int i = 0; i < k * m; ++i) CHECK(c[i] == doctest::Approx(expect[i]).epsilon(1e-12));

    const auto bt = random_buf(k * m, rng);
    std::vector<double> btt(m * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) btt[j * k + i] = bt[i * m + j];
    const auto a3 = random_buf(n * m, rng);
    const auto expect2 = naive_ab(a3, btt, n, m, k);
    std::vector<double> c2(n * k);
    kernels::matmul_a_bt(a3.data(), bt.data(), c2.data(), n, m, k);
    for (int i = 0; i < n * k; ++i) CHECK(c2[i] == doctest::Approx(expect2[i]).epsilon(1e-12));
}

TEST_CASE("accumulate adds into the destination") {
    std::mt19937_64 rng(17);
    const int n = 4, k = 3, m = 2;
    const auto a = random_buf(n * k, rng);
    const auto b = random_buf(k * m, rng);
    std::vector<double> base(n * m, 1.5);
    const auto prod = naive_ab(a, b, n, k, m);
    kernels::matmul(a.data(), b.data(), base.data(), n, k, m, true);
    for (int i = 0; i < n * m; ++i) CHECK(base[i] == doctest::Approx(1.5 + prod[i]).epsilon(1e-12));
}
