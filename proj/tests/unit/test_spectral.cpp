#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tubestab/errors.hpp"
#include "tubestab/numerics.hpp"
#include "tubestab/spectral.hpp"

using namespace tubestab;

namespace {

const ReactorParams kParams = ReactorParams::experiment_defaults();
constexpr double kThreshold = -0.01;  // -v^2/(4D)

// Reference wavenumbers computed at 30 digits with an independent
// arbitrary-precision solver.
struct Reference {
  double alpha;
  double q;
  Branch branch;
};
const Reference kReferences[] = {
    {-10.0, 2.24511399922342, Branch::Trig},
    {-1.0, 2.02463304739384, Branch::Trig},
    {0.0, 1.72066717803876, Branch::Trig},
    {0.5, 1.07687398631180, Branch::Trig},
    {0.75, 0.871180357493748, Branch::Exponential},
    {0.9, 1.58447805471306, Branch::Exponential},
    {0.95, 1.79462676827681, Branch::Exponential},
};

double max_interior_residual(const Profile& xi, double lambda) {
  const double h = xi.grid().spacing();
  const auto v = xi.values();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double d2 = (v[i + 1] - 2 * v[i] + v[i - 1]) / (h * h);
    const double d1 = (v[i + 1] - v[i - 1]) / (2 * h);
    worst = std::max(worst, std::abs(kParams.D * d2 - kParams.v * d1 - lambda * v[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("critical_alpha") {
  CHECK(critical_alpha(kParams) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  ReactorParams slow = kParams;
  slow.v = 0.005;
  CHECK(critical_alpha(slow) == doctest::Approx(0.75).epsilon(1e-14));
  ReactorParams tiny = kParams;
  tiny.D = 1e-12;
  CHECK(critical_alpha(tiny) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("transform") {
  const auto b0 = transform(kParams, 0.0);
  CHECK(b0.gamma == doctest::Approx(2.0));
  CHECK(b0.delta == doctest::Approx(2.0));
  CHECK(transform(kParams, 0.5).gamma == 0.0);
  CHECK(transform(kParams, 0.9).gamma == doctest::Approx(-1.6).epsilon(1e-14));
}

TEST_CASE("principal eigenvalues match reference wavenumbers") {
  for (const auto& ref : kReferences) {
    CAPTURE(ref.alpha);
    const Eigenvalue e = principal_eigenvalue(kParams, ref.alpha);
    CHECK(e.branch == ref.branch);
    CHECK(e.q == doctest::Approx(ref.q).epsilon(1e-10));
    const double expected = ref.branch == Branch::Trig
                                ? -kParams.D * (4.0 + ref.q * ref.q)
                                : kParams.D * (ref.q * ref.q - 4.0);
    CHECK(e.lambda == doctest::Approx(expected).epsilon(1e-10));
    CHECK(e.theta == doctest::Approx(-kParams.D * 4.0 - e.lambda).epsilon(1e-10));
  }
}

TEST_CASE("principal eigenvalues reproduce the published spectral column") {
  const double alphas[] = {-10, -1, 0, 0.5, 0.75, 0.9};
  const double published[] = {0.0226, 0.0202, 0.0174, 0.0129, 0.0081, 0.0037};
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(-principal_eigenvalue(kParams, alphas[i]).lambda - published[i]) < 2e-4);
  }
}

TEST_CASE("branch roots") {
  const auto roots = trig_branch_roots(transform(kParams, 0.0), 3);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(1.72066717803876).epsilon(1e-10));
  CHECK(roots[0] < roots[1]);
  CHECK(roots[1] < roots[2]);
  CHECK_FALSE(exponential_branch_root(transform(kParams, 0.0)).has_value());
  CHECK_FALSE(exponential_branch_root(transform(kParams, 0.6)).has_value());
  const auto r = exponential_branch_root(transform(kParams, 0.9));
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(1.58447805471306).epsilon(1e-10));
}

TEST_CASE("exponential determinant vanishes at q = 0") {
  for (double a : {0.6, 0.75, 0.9, 0.99}) {
    CHECK(std::abs(exponential_determinant(transform(kParams, a), 0.0)) < 1e-12);
  }
}

TEST_CASE("slope at zero is negative whenever an exponential root exists") {
  for (double a : {0.7, 0.75, 0.9, 0.99}) {
    const auto bvp = transform(kParams, a);
    CHECK(exponential_slope_at_zero(bvp) < 0.0);
    CHECK(exponential_branch_root(bvp).has_value());
  }
}

TEST_CASE("alpha at and around the critical gain") {
  const double a = critical_alpha(kParams);
  const Eigenvalue e = principal_eigenvalue(kParams, a);
  CHECK(e.branch == Branch::Zero);
  CHECK(e.lambda == doctest::Approx(kThreshold).epsilon(1e-12));
  CHECK(std::abs(principal_eigenvalue(kParams, a - 1e-6).lambda - kThreshold) < 1e-4);
  CHECK(std::abs(principal_eigenvalue(kParams, a + 1e-6).lambda - kThreshold) < 1e-4);
}

TEST_CASE("unit gain and beyond") {
  const Eigenvalue e = principal_eigenvalue(kParams, 1.0);
  CHECK(std::abs(e.lambda) < 1e-8);
  CHECK(e.q == doctest::Approx(2.0));
  try {
    principal_eigenvalue(kParams, 1.01);
    FAIL("expected Unsupported");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("monotone in alpha with consistent branches") {
  const double a_star = critical_alpha(kParams);
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const double a = -10.0 + 11.0 * i / 49.0;
    CAPTURE(a);
    const Eigenvalue e = principal_eigenvalue(kParams, a);
    CHECK(e.lambda > prev);
    prev = e.lambda;
    if (a < a_star) {
      CHECK(e.branch == Branch::Trig);
      CHECK(e.lambda < kThreshold);
    } else if (a < 1.0) {
      CHECK(e.branch == Branch::Exponential);
      CHECK(e.lambda > kThreshold);
      CHECK(e.lambda < 0.0);
    } else {
      CHECK(std::abs(e.lambda) < 1e-8);
    }
  }
}

TEST_CASE("all returned eigenvalues satisfy their determinant condition") {
  for (double a : {-10.0, 0.0, 0.5, 2.0 / 3.0, 0.75, 0.9}) {
    const Spectrum s = compute_spectrum(kParams, a, 6);
    REQUIRE(s.eigenvalues.size() == 6);
    CHECK(s.principal.lambda == s.eigenvalues.front().lambda);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      CHECK(determinant_residual(transform(kParams, a), s.eigenvalues[i]) < 1e-9);
      if (i > 0) CHECK(s.eigenvalues[i].lambda < s.eigenvalues[i - 1].lambda);
    }
  }
}

TEST_CASE("eigenfunction: second-order finite-difference residual") {
  for (double a : {0.0, 0.9}) {
    CAPTURE(a);
    const Eigenvalue e = principal_eigenvalue(kParams, a);
    const double r1 = max_interior_residual(eigenfunction(kParams, e, a, Grid(1.0, 101)), e.lambda);
    const double r2 = max_interior_residual(eigenfunction(kParams, e, a, Grid(1.0, 201)), e.lambda);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("eigenfunction: normalization and sign") {
  for (double a : {-1.0, 0.5, 2.0 / 3.0, 0.75}) {
    const Eigenvalue e = principal_eigenvalue(kParams, a);
    const Profile xi = eigenfunction(kParams, e, a, Grid(1.0, 401));
    CHECK(l2_norm(xi) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(xi.values().back() > 0.0);
  }
}

TEST_CASE("eigenfunction: zero branch satisfies both boundary conditions") {
  const double a = critical_alpha(kParams);
  const Eigenvalue e = principal_eigenvalue(kParams, a);
  REQUIRE(e.branch == Branch::Zero);
  const auto b = transform(kParams, a);
  // y = gamma x + 1: y'(0) = gamma y(0) and y'(l) = -delta y(l).
  CHECK(b.gamma == doctest::Approx(-b.delta * (b.gamma * b.l + 1.0)).epsilon(1e-12));

  const Grid g(1.0, 101);
  const Profile xi = eigenfunction(kParams, e, a, g);
  const double scale = xi.values().back() / (std::exp(b.delta * b.l) * (b.gamma * b.l + 1.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    CHECK(xi[i] == doctest::Approx(scale * std::exp(b.delta * x) * (b.gamma * x + 1.0)).epsilon(1e-12));
  }
  const double xi0 = scale;
  const double dxi0 = scale * (b.delta + b.gamma);
  CHECK(std::abs((kParams.D / kParams.v) * dxi0 - (1 - a) * xi0) < 1e-12);
  const double el = std::exp(b.delta * b.l);
  const double dxil = scale * el * (b.delta * (b.gamma * b.l + 1.0) + b.gamma);
  CHECK(std::abs(dxil) < 1e-12);
}

TEST_CASE("eigenfunction: rejects inconsistent eigenvalues") {
  Eigenvalue e = principal_eigenvalue(kParams, 0.0);
  e.q += 0.01;
  e.lambda = -kParams.D * (4 + e.q * e.q);
  try {
    eigenfunction(kParams, e, 0.0, Grid(1.0, 11));
    FAIL("expected InconsistentInput");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::InconsistentInput);
  }
  CHECK_THROWS_AS(eigenfunction(kParams, principal_eigenvalue(kParams, 0.0), 0.5, Grid(1.0, 11)),
                  Error);
}

TEST_CASE("Sturm-Liouville weights") {
  const auto w = sturm_liouville_weights(kParams);
  CHECK(w.rho(0.0) == 1.0);
  CHECK(w.q(0.3) == 0.0);
  for (double x : {0.0, 0.4, 1.0}) {
    CHECK(w.p(x) / w.rho(x) == doctest::Approx(kParams.D).epsilon(1e-14));
  }

  // -A xi = (1/rho)(-(p xi')') on xi = cos(pi x / l), flux-form differences.
  const double pi = std::numbers::pi;
  auto worst = [&](int n) {
    const double h = 1.0 / n;
    double err = 0.0;
    for (int i = 1; i < n; ++i) {
      const double x = i * h;
      auto xi = [&](double s) { return std::cos(pi * s); };
      const double flux_r = w.p(x + h / 2) * (xi(x + h) - xi(x)) / h;
      const double flux_l = w.p(x - h / 2) * (xi(x) - xi(x - h)) / h;
      const double lhs = -(flux_r - flux_l) / h / w.rho(x);
      const double exact = kParams.D * pi * pi * std::cos(pi * x) - kParams.v * pi * std::sin(pi * x);
      err = std::max(err, std::abs(lhs - exact));
    }
    return err;
  };
  CHECK(worst(100) / worst(200) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("branch names") {
  CHECK(to_string(Branch::Trig) == "trig");
  CHECK(to_string(Branch::Zero) == "zero");
  CHECK(to_string(Branch::Exponential) == "exponential");
}
