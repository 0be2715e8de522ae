#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "steklov/harmonic.hpp"

using namespace steklov;
using Catch::Approx;

namespace {

VectorXd p6_linear(const BoundaryProblem& bp)
{
    VectorXd f(bp.n_closure());
    for (int i = 1; i <= 6; ++i)
        f[bp.closure_pos(bp.graph().index_of("v" + std::to_string(i)))] = i - 1;
    return f;
}

}  // namespace

TEST_CASE("discrete Laplacian")
{
    BoundaryProblem bp = fixtures::p6();
    SECTION("constants are harmonic")
    {
        VectorXd f = VectorXd::Constant(bp.n_closure(), 3.5);
        CHECK(apply_laplacian(bp, f).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("linear functions on a unit path are harmonic")
    {
        VectorXd lap = apply_laplacian(bp, p6_linear(bp));
        CHECK(lap.cwiseAbs().maxCoeff() <= 1e-15);
    }
    SECTION("delta at a star leaf")
    {
        int n = 4;
        BoundaryProblem star = star_problem(n);
        VectorXd f = VectorXd::Zero(star.n_closure());
        f[star.closure_pos(star.boundary()[0])] = 1.0;
        VectorXd lap = apply_laplacian(star, f);
        REQUIRE(lap.size() == 1);
        CHECK(lap[0] == Approx(1.0 / n));
    }
}

TEST_CASE("outward normal derivative")
{
    BoundaryProblem bp = fixtures::p6();
    SECTION("constants")
    {
        VectorXd f = VectorXd::Constant(bp.n_closure(), -2.0);
        CHECK(normal_derivative(bp, f).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("linear on the path")
    {
        VectorXd dn = normal_derivative(bp, p6_linear(bp));
        CHECK(dn[bp.boundary_pos(bp.graph().index_of("v1"))] == Approx(-1.0));
        CHECK(dn[bp.boundary_pos(bp.graph().index_of("v6"))] == Approx(1.0));
    }
    SECTION("delta at the star center")
    {
        BoundaryProblem star = star_problem(3);
        VectorXd f = VectorXd::Zero(star.n_closure());
        f[star.closure_pos(star.graph().index_of("c"))] = 1.0;
        VectorXd dn = normal_derivative(star, f);
        for (Index i = 0; i < dn.size(); ++i) CHECK(dn[i] == Approx(-1.0));
    }
}

TEST_CASE("harmonic extension")
{
    BoundaryProblem bp = fixtures::p6();
    SECTION("P6 interpolates linearly")
    {
        VectorXd phi(2);
        phi[bp.boundary_pos(bp.graph().index_of("v1"))] = 0.0;
        phi[bp.boundary_pos(bp.graph().index_of("v6"))] = 1.0;
        VectorXd u = harmonic_extension(bp, phi);
        for (int i = 1; i <= 6; ++i)
            CHECK(u[bp.closure_pos(bp.graph().index_of("v" + std::to_string(i)))] ==
                  Approx((i - 1) / 5.0).margin(1e-12));
    }
    SECTION("constants extend to constants")
    {
        VectorXd phi = VectorXd::Constant(2, 4.25);
        VectorXd u = harmonic_extension(bp, phi);
        CHECK((u.array() - 4.25).abs().maxCoeff() <= 1e-12);
    }
    SECTION("star center takes the leaf mean")
    {
        BoundaryProblem star = star_problem(4);
        std::mt19937_64 rng(3);
        VectorXd phi = fixtures::random_boundary_function(star, rng);
        VectorXd u = harmonic_extension(star, phi);
        CHECK(u[star.closure_pos(star.graph().index_of("c"))] ==
              Approx(phi.mean()).margin(1e-12));
    }
    SECTION("no unique extension when a component misses the boundary")
    {
        WeightedGraph g =
            WeightedGraph::parse_edge_list("i1 i2 1\nb1 i3 1\nb2 i3 1");
        BoundaryProblem prob(g, {"i1", "i2", "i3"});
        CHECK(prob.component_count() == 2);
        VectorXd phi = VectorXd::Ones(prob.n_boundary());
        CHECK_THROWS_AS(harmonic_extension(prob, phi), Error);
    }
}

TEST_CASE("Poisson kernels")
{
    SECTION("P6 closed form")
    {
        BoundaryProblem bp = fixtures::p6();
        HarmonicSolver solver(bp);
        MatrixXd P = solver.poisson_kernels();
        Index col_v1 = bp.boundary_pos(bp.graph().index_of("v1"));
        for (int k = 2; k <= 5; ++k) {
            Index row = bp.interior_pos(bp.graph().index_of("v" + std::to_string(k)));
            CHECK(P(row, col_v1) == Approx((6.0 - k) / 5.0).margin(1e-12));
        }
    }
    SECTION("star kernels are uniform")
    {
        int n = 5;
        BoundaryProblem star = star_problem(n);
        MatrixXd P = HarmonicSolver(star).poisson_kernels();
        for (Index j = 0; j < n; ++j) CHECK(P(0, j) == Approx(1.0 / n).margin(1e-12));
    }
    SECTION("kernel columns are harmonic and rows sum to one")
    {
        for (const auto& bp : fixtures::random_suite(8)) {
            HarmonicSolver solver(bp);
            MatrixXd P = solver.poisson_kernels();
            for (Index j = 0; j < bp.n_boundary(); ++j) {
                VectorXd phi = VectorXd::Zero(bp.n_boundary());
                phi[j] = 1.0 / bp.measure_of(bp.boundary()[j]);
                VectorXd u = solver.extend(phi);
                // the column, extended by delta_y/m_y, is harmonic
                for (Index i = 0; i < bp.n_interior(); ++i)
                    CHECK(u[bp.closure_pos(bp.interior()[i])] ==
                          Approx(P(i, j)).margin(1e-12));
                CHECK(apply_laplacian(bp, u).cwiseAbs().maxCoeff() <= 1e-10);
            }
            for (Index i = 0; i < bp.n_interior(); ++i) {
                double rowsum = 0.0;
                for (Index j = 0; j < bp.n_boundary(); ++j)
                    rowsum += P(i, j) * bp.measure_of(bp.boundary()[j]);
                CHECK(rowsum == Approx(1.0).margin(1e-10));
            }
        }
    }
}

TEST_CASE("Dirichlet energy")
{
    BoundaryProblem bp = fixtures::p6();
    CHECK(dirichlet_energy(bp, VectorXd::Constant(bp.n_closure(), 9.0)) == 0.0);
    CHECK(dirichlet_energy(bp, p6_linear(bp)) == Approx(5.0));
    VectorXd ind = VectorXd::Zero(bp.n_closure());
    ind[bp.closure_pos(bp.graph().index_of("v1"))] = 1.0;
    CHECK(dirichlet_energy(bp, ind) == Approx(1.0));

    SECTION("self-loops contribute nothing")
    {
        WeightedGraph g = WeightedGraph::parse_edge_list("a b 1\na c 1\na a 5");
        BoundaryProblem loops(g, {"a"});
        std::mt19937_64 rng(11);
        VectorXd f = fixtures::random_closure_function(loops, rng);
        double e = dirichlet_energy(loops, f);
        Index pa = loops.closure_pos(g.index_of("a"));
        Index pb = loops.closure_pos(g.index_of("b"));
        Index pc = loops.closure_pos(g.index_of("c"));
        double expected = (f[pa] - f[pb]) * (f[pa] - f[pb]) +
                          (f[pa] - f[pc]) * (f[pa] - f[pc]);
        CHECK(e == Approx(expected).margin(1e-14));
    }
}

TEST_CASE("Green's formula residual")
{
    std::mt19937_64 rng(42);
    SECTION("P6")
    {
        BoundaryProblem bp = fixtures::p6();
        for (int t = 0; t < 20; ++t) {
            VectorXd f = fixtures::random_closure_function(bp, rng);
            VectorXd g = fixtures::random_closure_function(bp, rng);
            CHECK(std::abs(green_residual(bp, f, g)) <= 1e-10 * green_scale(bp, f, g));
        }
    }
    SECTION("constant f")
    {
        BoundaryProblem bp = fixtures::p6();
        VectorXd f = VectorXd::Constant(bp.n_closure(), 2.0);
        VectorXd g = fixtures::random_closure_function(bp, rng);
        CHECK(std::abs(green_residual(bp, f, g)) <= 1e-12);
    }
    SECTION("100 random pairs on random graphs")
    {
        auto suite = fixtures::random_suite(10, 900);
        for (const auto& bp : suite) {
            for (int t = 0; t < 10; ++t) {
                VectorXd f = fixtures::random_closure_function(bp, rng);
                VectorXd g = fixtures::random_closure_function(bp, rng);
                CHECK(std::abs(green_residual(bp, f, g)) <=
                      1e-10 * green_scale(bp, f, g));
            }
        }
    }
}

TEST_CASE("harmonic extension properties")
{
    std::mt19937_64 rng(5);
    auto suite = fixtures::random_suite(6, 300);
    suite.push_back(fixtures::p6());
    for (const auto& bp : suite) {
        HarmonicSolver solver(bp);
        VectorXd phi = fixtures::random_boundary_function(bp, rng);
        VectorXd u = solver.extend(phi);

        // agrees with boundary data and is harmonic
        for (Index i = 0; i < bp.n_boundary(); ++i)
            CHECK(u[bp.closure_pos(bp.boundary()[i])] == phi[i]);
        CHECK(apply_laplacian(bp, u).cwiseAbs().maxCoeff() <=
              1e-10 * (1.0 + phi.cwiseAbs().maxCoeff()));

        // maximum principle
        CHECK(u.minCoeff() >= phi.minCoeff() - 1e-12);
        CHECK(u.maxCoeff() <= phi.maxCoeff() + 1e-12);

        // energy minimization against 100 perturbations fixing the boundary
        double base = dirichlet_energy(bp, u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            VectorXd w = u;
            for (Index i = 0; i < bp.n_interior(); ++i)
                w[bp.closure_pos(bp.interior()[i])] += 0.3 * gauss(rng);
            CHECK(dirichlet_energy(bp, w) >= base - 1e-12 * (1.0 + base));
        }

        // linearity
        VectorXd psi = fixtures::random_boundary_function(bp, rng);
        VectorXd lin = solver.extend(2.0 * phi - 3.0 * psi);
        VectorXd combo = 2.0 * u - 3.0 * solver.extend(psi);
        CHECK((lin - combo).cwiseAbs().maxCoeff() <=
              1e-10 * (1.0 + combo.cwiseAbs().maxCoeff()));

        // reconstruction from Poisson kernels
        MatrixXd P = solver.poisson_kernels();
        for (Index i = 0; i < bp.n_interior(); ++i) {
            double acc = 0.0;
            for (Index j = 0; j < bp.n_boundary(); ++j)
                acc += phi[j] * bp.measure_of(bp.boundary()[j]) * P(i, j);
            CHECK(u[bp.closure_pos(bp.interior()[i])] == Approx(acc).margin(1e-10));
        }
    }
}
