#include "support.hpp"

using namespace t;

TEST(Vec, ColumnMajorLayout) {
  EXPECT_EQ(vec(Mat::identity(2)), vec_of({1, 0, 0, 1}));
  EXPECT_EQ(vec(e(2, 2, 0, 1)), vec_of({0, 0, 1, 0}));
  SplitMix64 rng(1);
  const Mat m = random_matrix<Q>(2, 3, rng);
  EXPECT_EQ(unvec(vec(m), 2, 3), m);
  EXPECT_EQ(vec(m), oracle::vec_cm(m));
  EXPECT_LCOMM_ERROR(unvec(vec_of({1, 2, 3}), 2, 2), ErrorKind::DimensionMismatch);
}

TEST(OperatorSpace, BasisMatricesMatchSpace) {
  const auto c = commutant(jordan(3));
  ASSERT_EQ(c.basis_matrices().size(), c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) EXPECT_EQ(vec(c.basis_matrices()[i]), c.space().basis()[i]);
  EXPECT_LCOMM_ERROR(Ops(2, 2, Sub::full(3)), ErrorKind::DimensionMismatch);
}

TEST(Member, Examples) {
  const Mat a = mat({{1, 2}, {0, 3}});
  EXPECT_TRUE(member(Mat(2, 2), Ops::zero(2, 2)));
  EXPECT_TRUE(member(Mat(2, 2), commutant(a)));
  EXPECT_TRUE(member(Mat::identity(2), commutant(a)));
  const auto f = example_projection_3block<Q>(1, 1, 1);
  const auto c = local_commutant(f.a, f.m);
  EXPECT_FALSE(member(e(3, 3, 1, 0) + e(3, 3, 2, 0), c));
  EXPECT_FALSE(member(e(3, 3, 2, 0), c));
  EXPECT_TRUE(member(e(3, 3, 1, 0), c));
  EXPECT_LCOMM_ERROR(member(Mat(2, 3), commutant(a)), ErrorKind::DimensionMismatch);
}

TEST(Member, EveryBasisMatrixIsMember) {
  for (const auto& inst : instances(3, 4, 99)) {
    const auto c = local_commutant(inst.a, inst.m);
    for (const auto& b : c.basis_matrices()) EXPECT_TRUE(member(b, c)) << inst.label;
  }
}

TEST(ApplyToSubspace, Examples) {
  const Sub m = span(3, {{1, 1, 0}});
  EXPECT_TRUE(apply_to_subspace(Ops::zero(3, 3), m).is_zero());
  EXPECT_EQ(apply_to_subspace(Ops::span_of(3, 3, {Mat::identity(3)}), m), m);
  const auto f = example_projection_3block<Q>(1, 1, 1);
  EXPECT_TRUE(apply_to_subspace(local_commutant(f.a, f.m), f.m).is_full());
  EXPECT_LCOMM_ERROR(apply_to_subspace(Ops::full(2, 2), m), ErrorKind::DimensionMismatch);
}

TEST(ApplyToSubspace, DistributesOverJoin) {
  SplitMix64 rng(8);
  for (const auto& inst : instances(2, 4, 7)) {
    const std::size_t n = inst.a.rows();
    const auto c = commutant(inst.a);
    const Sub m1 = random_subspace<Q>(n, pick(rng, 0, n), rng), m2 = random_subspace<Q>(n, pick(rng, 0, n), rng);
    EXPECT_EQ(apply_to_subspace(c, join(m1, m2)), join(apply_to_subspace(c, m1), apply_to_subspace(c, m2)));
    std::vector<Vec> ref;
    for (const auto& b : c.basis_matrices())
      for (const auto& x : m1.basis()) ref.push_back(b * x);
    EXPECT_TRUE(same_subspace(apply_to_subspace(c, m1), ref));
  }
}

TEST(ProductClosed, Examples) {
  const Mat p = mat({{1, 1}, {0, 0}});
  EXPECT_TRUE(is_product_closed(Ops::span_of(2, 2, {Mat::identity(2), p})));
  EXPECT_TRUE(is_product_closed(Ops::full(3, 3)));
  const auto f = example_projection_3block<Q>(1, 1, 1);
  EXPECT_FALSE(is_product_closed(local_commutant(f.a, f.m)));
  EXPECT_FALSE(is_product_closed(Ops::span_of(2, 2, {e(2, 2, 0, 1), e(2, 2, 1, 0)})));
  EXPECT_LCOMM_ERROR(is_product_closed(Ops::full(2, 3)), ErrorKind::NotSquareAmbient);
}

TEST(ProductClosed, AgreesWithOracleOnLocalCommutants) {
  for (const auto& inst : instances(4, 4, 3)) {
    const auto c = local_commutant(inst.a, inst.m);
    EXPECT_EQ(is_product_closed(c), oracle::local_commutant_product_closed(inst.a, inst.m.basis())) << inst.label;
  }
}

TEST(MultiplierSpace, Examples) {
  for (auto side : {Side::left, Side::right}) {
    EXPECT_EQ(multiplier_space(Ops::full(3, 3), side), Ops::full(3, 3));
    EXPECT_EQ(multiplier_space(Ops::zero(3, 3), side), Ops::full(3, 3));
  }
  const auto f = example_projection_3block<Q>(1, 1, 1);
  const auto c = local_commutant(f.a, f.m);
  EXPECT_EQ(multiplier_space(c, Side::left), local_commutant(f.a, apply_to_subspace(c, f.m)));
  EXPECT_LCOMM_ERROR(multiplier_space(Ops::full(2, 3), Side::left), ErrorKind::NotSquareAmbient);
}

TEST(MultiplierSpace, DefinitionAndAlgebra) {
  SplitMix64 rng(4);
  for (const auto& inst : instances(2, 3, 21)) {
    const auto c = local_commutant(inst.a, inst.m);
    for (auto side : {Side::left, Side::right}) {
      const auto mult = multiplier_space(c, side);
      EXPECT_TRUE(is_product_closed(mult)) << inst.label;
      for (const auto& t : mult.basis_matrices())
        for (const auto& b : c.basis_matrices()) EXPECT_TRUE(member(side == Side::left ? t * b : b * t, c));
      // A random non-member must fail for some basis element.
      const Mat r = random_matrix<Q>(inst.a.rows(), inst.a.rows(), rng);
      bool all = true;
      for (const auto& b : c.basis_matrices()) all = all && member(side == Side::left ? r * b : b * r, c);
      EXPECT_EQ(all, member(r, mult));
    }
  }
}

TEST(OperatorSpace, MeetAndContainment) {
  const auto f = example_projection_3block<Q>(1, 1, 1);
  const auto c = local_commutant(f.a, f.m), g = alg_of(f.m);
  const auto both = meet(c, g);
  EXPECT_TRUE(contains(c, both));
  EXPECT_TRUE(contains(g, both));
  for (const auto& b : both.basis_matrices()) EXPECT_TRUE(member(b, c) && member(b, g));
  EXPECT_TRUE(contains(c, commutant(f.a)));
}
