#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dropflow/inequalities.hpp"
#include "dropflow/shapes.hpp"

using namespace dropflow;

namespace {
constexpr double kPi = std::numbers::pi;

const InequalityRow* find_row(const std::vector<InequalityRow>& rows,
                              const std::string& domain, const std::string& ineq,
                              const std::string& field) {
  for (const auto& r : rows)
    if (r.domain == domain && r.inequality == ineq && r.field.rfind(field, 0) == 0)
      return &r;
  return nullptr;
}
}  // namespace

TEST_CASE("Poincare closed form on the unit disk with f = x1") {
  std::vector<NamedBoundary> doms = {{"disk", shapes::disk_boundary(1.0, 128)}};
  auto rows = inequality_table(doms, 0, 48.0);
  const auto* row = find_row(rows, "disk", "poincare", "x1");
  REQUIRE(row != nullptr);
  // lhs = int x1^2 = pi/4; rhs = (|O| P / r) int |grad x1|^2 = 2 pi^2 * pi
  CHECK(row->lhs == doctest::Approx(kPi / 4).epsilon(1e-3));
  CHECK(row->structural_rhs == doctest::Approx(2 * kPi * kPi * kPi).epsilon(1e-3));
  CHECK(row->ratio == doctest::Approx(1.0 / (8 * kPi * kPi)).epsilon(2e-3));
}

TEST_CASE("Korn closed form on the unit disk with the rotation field") {
  std::vector<NamedBoundary> doms = {{"disk", shapes::disk_boundary(1.0, 128)}};
  auto rows = inequality_table(doms, 0, 48.0);
  const auto* row = find_row(rows, "disk", "korn", "rotation");
  REQUIRE(row != nullptr);
  // int |grad X|^2 = 2 pi, rhs = 0 + (1/r^2) int |X|^2 = pi/2, ratio 4
  CHECK(row->lhs == doctest::Approx(2 * kPi).epsilon(1e-3));
  CHECK(row->structural_rhs == doctest::Approx(kPi / 2).epsilon(2e-3));
  CHECK(row->ratio == doctest::Approx(4.0).epsilon(3e-3));
}

TEST_CASE("all ratios are lambda-invariant") {
  const double lam = 2.5;
  std::vector<NamedBoundary> base = {{"disk", shapes::disk_boundary(1.0, 96)},
                                     {"ellipse", shapes::ellipse_boundary(2.0, 1.0, 96)}};
  auto rows0 = inequality_table(base, 1, 12.0);
  auto rows1 = inequality_table(base, 1, 12.0, lam);
  REQUIRE(rows0.size() == rows1.size());
  for (std::size_t i = 0; i < rows0.size(); ++i) {
    INFO(rows0[i].domain, " ", rows0[i].inequality, " ", rows0[i].field);
    CHECK(rows1[i].ratio == doctest::Approx(rows0[i].ratio).epsilon(1e-12));
    if (rows0[i].ratio_p2 > 0)
      CHECK(rows1[i].ratio_p2 == doctest::Approx(rows0[i].ratio_p2).epsilon(1e-12));
    CHECK(rows1[i].r_omega == doctest::Approx(lam * rows0[i].r_omega).epsilon(1e-12));
  }
}

TEST_CASE("dumbbell Poincare ratio grows as the neck shrinks") {
  std::vector<NamedBoundary> doms;
  for (double w : {0.2, 0.025})
    doms.push_back({"dumbbell_w" + std::to_string(w).substr(0, 5),
                    shapes::dumbbell_boundary(w, 512)});
  auto rows = inequality_table(doms, 0, 12.0);
  const auto* wide = find_row(rows, doms[0].name, "poincare", "tanh_neck");
  const auto* thin = find_row(rows, doms[1].name, "poincare", "tanh_neck");
  REQUIRE(wide != nullptr);
  REQUIRE(thin != nullptr);
  CHECK(thin->ratio / wide->ratio >= 4.0);
  CHECK(thin->ratio_p2 / wide->ratio_p2 >= 3.0);
}

TEST_CASE("interior regularity rows exist for biharmonic fields only") {
  std::vector<NamedBoundary> doms = {{"ellipse", shapes::ellipse_boundary(2.0, 1.0, 128)}};
  auto rows = inequality_table(doms, 0, 12.0);
  CHECK(find_row(rows, "ellipse", "interior_reg", "harmonic3") != nullptr);
  CHECK(find_row(rows, "ellipse", "interior_reg", "quad") == nullptr);
}
