#include <gtest/gtest.h>

#include "nilgauss/algebra.hpp"
#include "nilgauss/error.hpp"
#include "test_util.hpp"

using namespace nilgauss;
using nilgauss::testing::random_in;

namespace {

constexpr int K1 = 0, L1 = 1, Z = 2;

}  // namespace

TEST(Validate, HeisenbergIsClean) {
  EXPECT_TRUE(validate(heisenberg(1)).ok());
  EXPECT_TRUE(validate(heisenberg(3)).ok());
  EXPECT_TRUE(validate(quaternionic_heisenberg()).ok());
  EXPECT_TRUE(validate(nilgauss::testing::generic_two_step()).ok());
}

TEST(Validate, BracketLandingInComplement) {
  auto alg = NilpotentAlgebra::from_brackets(3, 1, {{1, 2, 1, 1.0}});
  const auto rep = validate(alg);
  EXPECT_TRUE(rep.has(kBracketInCenter));
  EXPECT_FALSE(rep.ok());
}

TEST(Validate, ZeroTensorIsAbelian) {
  NilpotentAlgebra alg(3, 1, std::vector<double>(27, 0.0));
  EXPECT_TRUE(validate(alg).has(kNonAbelian));
}

TEST(Validate, AsymmetricTensor) {
  std::vector<double> t(27, 0.0);
  t[(0 * 3 + 1) * 3 + 2] = 1.0;  // [e1, e2] = e3 without the mirror entry
  EXPECT_TRUE(validate(NilpotentAlgebra(3, 1, t)).has(kAntisymmetry));
}

TEST(Validate, CenterNotCentral) {
  auto alg = NilpotentAlgebra::from_brackets(4, 2, {{1, 2, 4, 1.0}, {1, 3, 4, 0.5}});
  EXPECT_TRUE(validate(alg).has(kCenterCentral));
}

TEST(Validate, DeclaredCenterTooSmall) {
  // e3 commutes with everything but is declared part of V.
  auto alg = NilpotentAlgebra::from_brackets(4, 1, {{1, 2, 4, 1.0}});
  const auto rep = validate(alg);
  EXPECT_TRUE(rep.has(kTrueCenter));
  EXPECT_EQ(rep.violations.size(), 1u);
}

TEST(Construction, RejectsBadInput) {
  EXPECT_THROW(heisenberg(0), Error);
  EXPECT_THROW(NilpotentAlgebra(3, 3, std::vector<double>(27)), Error);
  EXPECT_THROW(NilpotentAlgebra(3, 1, std::vector<double>(5)), Error);
  EXPECT_THROW(NilpotentAlgebra::from_brackets(3, 1, {{2, 1, 3, 1.0}}), Error);
  EXPECT_THROW(NilpotentAlgebra::from_brackets(3, 1, {{1, 2, 4, 1.0}}), Error);
  EXPECT_THROW(NilpotentAlgebra::from_brackets(3, 1, {{1, 2, 3, 1.0}, {1, 2, 3, 2.0}}), Error);
}

TEST(Heisenberg, Dimensions) {
  const auto h2 = heisenberg(2);
  EXPECT_EQ(h2.dim_total(), 5);
  EXPECT_EQ(h2.dim_center(), 1);
  EXPECT_EQ(h2.dim_v(), 4);
}

TEST(Bracket, StructureRelations) {
  const auto h = heisenberg(1);
  EXPECT_TRUE(h.bracket(h.basis(K1), h.basis(L1)).isApprox(h.basis(Z)));
  EXPECT_TRUE(h.bracket(h.basis(Z), h.basis(K1)).isZero());
  const auto h3 = heisenberg(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto b = h3.bracket(h3.basis(i), h3.basis(3 + j));
      EXPECT_DOUBLE_EQ(b(6), i == j ? 1.0 : 0.0);
    }
}

TEST(Bracket, AntisymmetricAndCentral) {
  std::mt19937_64 rng(11);
  const auto alg = nilgauss::testing::generic_two_step();
  for (int t = 0; t < 50; ++t) {
    const auto x = nilgauss::testing::random_vector(rng, 5);
    const auto y = nilgauss::testing::random_vector(rng, 5);
    EXPECT_TRUE(alg.bracket(x, x).isZero(1e-14));
    EXPECT_TRUE((alg.bracket(x, y) + alg.bracket(y, x)).isZero(1e-14));
    EXPECT_TRUE(alg.v_part(alg.bracket(x, y)).isZero(0.0));
  }
  EXPECT_THROW(alg.bracket(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(5)), Error);
}

TEST(Split, PartsSumToVector) {
  std::mt19937_64 rng(3);
  const auto alg = quaternionic_heisenberg();
  const auto x = nilgauss::testing::random_vector(rng, 7);
  EXPECT_TRUE((alg.v_part(x) + alg.z_part(x)).isApprox(x));
  EXPECT_TRUE(alg.v_part(x).tail(3).isZero(0.0));
  EXPECT_TRUE(alg.z_part(x).head(4).isZero(0.0));
}

TEST(JApply, HeisenbergValues) {
  const auto h = heisenberg(1);
  EXPECT_TRUE(h.j_apply(h.basis(Z), h.basis(K1)).isApprox(h.basis(L1)));
  EXPECT_TRUE(h.j_apply(h.basis(Z), h.basis(L1)).isApprox(-h.basis(K1)));
  EXPECT_TRUE(h.j_apply(h.zero(), h.basis(K1)).isZero());
}

TEST(JApply, SquareIsMinusIdentityOnH2) {
  const auto h = heisenberg(2);
  const Eigen::MatrixXd j = h.j_matrix(h.basis(4));
  EXPECT_TRUE((j * j + Eigen::MatrixXd::Identity(4, 4)).isZero(1e-14));
  for (int i = 0; i < 4; ++i) {
    const auto x = h.basis(i);
    EXPECT_TRUE(h.j_apply(h.basis(4), h.j_apply(h.basis(4), x)).isApprox(-x));
  }
}

TEST(JApply, DefiningIdentitySkewAndLinear) {
  std::mt19937_64 rng(5);
  for (const auto& alg : {heisenberg(2), quaternionic_heisenberg(), nilgauss::testing::generic_two_step()}) {
    for (int t = 0; t < 50; ++t) {
      const auto x = random_in(alg, rng, true, false);
      const auto y = random_in(alg, rng, true, false);
      const auto z = random_in(alg, rng, false, true);
      const auto z2 = random_in(alg, rng, false, true);
      EXPECT_NEAR(alg.j_apply(z, x).dot(y), alg.bracket(x, y).dot(z), 1e-12);
      EXPECT_NEAR(alg.j_apply(z, x).dot(y) + alg.j_apply(z, y).dot(x), 0.0, 1e-12);
      EXPECT_NEAR(alg.j_apply(z, x).dot(x), 0.0, 1e-12);
      EXPECT_TRUE(alg.z_part(alg.j_apply(z, x)).isZero(0.0));
      const double a = 0.37;
      EXPECT_TRUE((alg.j_apply(a * z + z2, x) - a * alg.j_apply(z, x) - alg.j_apply(z2, x))
                      .isZero(1e-12));
      EXPECT_TRUE((alg.j_apply(z, a * x + y) - a * alg.j_apply(z, x) - alg.j_apply(z, y))
                      .isZero(1e-12));
    }
  }
}

TEST(JApply, RejectsWrongSubspace) {
  const auto h = heisenberg(1);
  try {
    h.j_apply(h.basis(K1), h.basis(L1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInSubspace);
  }
  EXPECT_THROW(h.j_apply(h.basis(Z), h.basis(Z)), Error);
}

TEST(HeisenbergType, Classification) {
  for (int m = 1; m <= 3; ++m) {
    const auto h = heisenberg(m);
    EXPECT_TRUE(is_heisenberg_type(h));
    const Eigen::MatrixXd j = h.j_matrix(h.basis(2 * m));
    EXPECT_NEAR((j * j).trace(), -2.0 * m, 1e-12);
  }
  EXPECT_TRUE(is_heisenberg_type(quaternionic_heisenberg()));
  EXPECT_FALSE(is_heisenberg_type(heisenberg_plus_abelian(1, 1)));
  EXPECT_FALSE(is_heisenberg_type(NilpotentAlgebra::from_brackets(3, 1, {{1, 2, 3, 2.0}})));
  EXPECT_FALSE(is_heisenberg_type(nilgauss::testing::generic_two_step()));
}

TEST(Json, BracketDocument) {
  const auto doc = nlohmann::json::parse(
      R"({"dim_total": 3, "dim_center": 1, "brackets": [{"i": 1, "j": 2, "k": 3, "c": 1.0}]})");
  const auto alg = algebra_from_json(doc);
  EXPECT_EQ(alg.tensor(), heisenberg(1).tensor());
  EXPECT_EQ(algebra_from_json(algebra_to_json(alg)).tensor(), alg.tensor());
}

TEST(Json, BuiltinNames) {
  EXPECT_EQ(algebra_from_json("heisenberg:2").tensor(), heisenberg(2).tensor());
  EXPECT_EQ(algebra_from_json("nil").tensor(), heisenberg(1).tensor());
  EXPECT_EQ(algebra_from_json(nlohmann::json{{"builtin", "heisenberg"}, {"m", 3}}).tensor(),
            heisenberg(3).tensor());
  EXPECT_EQ(algebra_from_json("quaternionic").dim_total(), 7);
  EXPECT_THROW(algebra_from_json("heisenberg:x"), Error);
  EXPECT_THROW(algebra_from_json("lie"), Error);
  EXPECT_THROW(algebra_from_json(nlohmann::json::parse(
                   R"({"dim_total": 3, "dim_center": 1, "brackets": [{"i": 2, "j": 1, "k": 3, "c": 1}]})")),
               Error);
}

TEST(Json, ValidationReport) {
  const auto rep = validate(NilpotentAlgebra::from_brackets(3, 1, {{1, 2, 1, 1.0}}));
  const auto j = to_json(rep);
  ASSERT_TRUE(j.is_array() || j.is_object());
  EXPECT_NE(j.dump().find(kBracketInCenter), std::string::npos);
}
