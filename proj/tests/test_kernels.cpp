// Serial reference kernels against their OpenMP counterparts: results must be bitwise identical.

#include <omp.h>

#include <gtest/gtest.h>

#include "fockcs/evolution.hpp"
#include "fockcs/semigroup.hpp"
#include "fockcs/verify.hpp"
#include "fockcs/wco.hpp"

using namespace fockcs;

namespace {

struct ThreadGuard {
    int saved = omp_get_max_threads();
    explicit ThreadGuard(int n) { omp_set_num_threads(n); }
    ~ThreadGuard() { omp_set_num_threads(saved); }
};

}  // namespace

TEST(Kernels, WcoMatrixBitwise) {
    ThreadGuard g(4);
    const WCOParams p{Complex(0.3, 0.4), Complex(-0.7, 0.2), Complex(0.1, -1.0), Complex(0.5, 0.5)};
    const Matrix a = kernels::wco_matrix_serial(p, 96);
    const Matrix b = kernels::wco_matrix_parallel(p, 96);
    EXPECT_TRUE((a.array() == b.array()).all());
    EXPECT_TRUE((wco_matrix(p, 96).array() == a.array()).all());
}

TEST(Kernels, GrowthRowsBitwise) {
    ThreadGuard g(4);
    const SemigroupFamily fam(Dilation{Complex(-0.3, 1.0), 0.4, 0.1}, ConjugationParams{});
    const FockVector f = FockVector::basis_vector(2, 48);
    const auto probe = GrowthProbe::standard(0.5);
    const auto a = kernels::growth_rows_serial(fam, f, probe);
    const auto b = kernels::growth_rows_parallel(fam, f, probe);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].t, b[i].t);
        EXPECT_EQ(a[i].norm, b[i].norm);
        EXPECT_EQ(a[i].weighted, b[i].weighted);
    }
}

TEST(Kernels, EvolveManyBitwise) {
    ThreadGuard g(4);
    BagchiParams p;
    p.nu = 0.5;
    p.kappa = [](double t) { return 0.3 * std::cos(t); };
    p.lam = [](double t) { return 1.0 + 0.2 * t; };
    const auto B = bagchi_hamiltonian(p);
    std::vector<std::pair<double, double>> st;
    for (int i = 1; i <= 12; ++i) st.emplace_back(0.1 * (i % 3), 0.25 * i);
    const auto a = kernels::evolve_many_serial(B, st, 1e-10);
    const auto b = kernels::evolve_many_parallel(B, st, 1e-10);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].t, b[i].t);
        EXPECT_TRUE((a[i].matrix.array() == b[i].matrix.array()).all());
    }
}

TEST(Kernels, VerifyAllParallelMatchesSerial) {
    ThreadGuard g(4);
    VerifyOptions o;
    o.dim = 32;
    const std::string serial = verify_all(o).to_json().dump();
    o.parallel = true;
    const std::string parallel = verify_all(o).to_json().dump();
    // provenance records the flag; everything else must match
    auto strip = [](std::string s) {
        const auto pos = s.find("\"parallel\":");
        return s.erase(pos, s.find_first_of(",}", pos) - pos);
    };
    EXPECT_EQ(strip(serial), strip(parallel));
}
