#include "support.hpp"

using namespace t;

TEST(Intertwiners, ZeroSubspaceGivesEverything) {
  const Mat a = jordan(3), b = mat({{1, 1}, {0, 2}});
  const auto s = intertwiner_space(a, b, Sub::zero(3));
  EXPECT_EQ(s.dim(), 6u);
  EXPECT_EQ(s, Ops::full(3, 2));
}

TEST(Intertwiners, ScalarPairGivesEverything) {
  const Mat a = Mat::scalar(3, Q(2)), b = Mat::scalar(2, Q(2));
  EXPECT_EQ(intertwiner_space(a, b, span(3, {{1, 2, 3}})).dim(), 6u);
  EXPECT_EQ(local_commutant(a, Sub::full(3)), Ops::full(3, 3));
}

TEST(Intertwiners, JordanIntoZero) {
  // S J_2 = 0 forces the first column of S to vanish.
  const auto s = intertwiners(jordan(2), Mat(1, 1));
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.basis_matrices()[0], mat({{0, 1}}));
}

TEST(LocalCommutant, ProjectionPatternDimensions) {
  EXPECT_EQ(local_commutant(example_projection_3block<Q>(1, 1, 1).a, example_projection_3block<Q>(1, 1, 1).m).dim(),
            6u);
  const auto f = example_projection_3block<Q>(2, 2, 2);
  EXPECT_EQ(local_commutant(f.a, f.m).dim(), 24u);
}

TEST(LocalCommutant, FullSubspaceIsCommutant) {
  for (const auto& inst : instances(2, 4, 5)) {
    const std::size_t n = inst.a.rows();
    EXPECT_EQ(local_commutant(inst.a, Sub::full(n)), commutant(inst.a)) << inst.label;
  }
}

TEST(LocalCommutant, JordanOnFirstAxis) {
  // S e1 must stay in ker J_3 = span(e1): two constraints on nine entries.
  EXPECT_EQ(local_commutant(jordan(3), axes(3, {0})).dim(), 7u);
  EXPECT_EQ(commutant(jordan(3)).dim(), 3u);
  EXPECT_EQ(commutant(jordan(4, 2)).dim(), 4u);
  EXPECT_EQ(commutant(build_jordan<Q>({2, 1}, Q(0))).dim(), 5u);
}

TEST(LocalCommutant, ContainsCommutantAndShrinksWithM) {
  SplitMix64 rng(31);
  for (const auto& inst : instances(2, 4, 13)) {
    const std::size_t n = inst.a.rows();
    const Sub bigger = join(inst.m, random_subspace<Q>(n, 1, rng));
    const auto c = local_commutant(inst.a, inst.m);
    EXPECT_TRUE(contains(c, commutant(inst.a))) << inst.label;
    EXPECT_TRUE(contains(c, local_commutant(inst.a, bigger))) << inst.label;
  }
}

TEST(Intertwiners, MatchesKroneckerOracle) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = pick(rng, 1, 4), p = pick(rng, 1, 3);
    const Mat a = random_matrix<Q>(n, n, rng, 1, 2), b = random_matrix<Q>(p, p, rng, 1, 2);
    const Sub m = random_subspace<Q>(n, pick(rng, 0, n), rng);
    const auto lib = intertwiner_space(a, b, m);
    const auto ref = oracle::intertwiner_basis(a, b, m.basis());
    EXPECT_TRUE(same_space(lib, ref)) << "trial " << trial;
    for (const auto& s : lib.basis_matrices()) EXPECT_TRUE(oracle::intertwines_on(s, a, b, m.basis()));
    EXPECT_TRUE(same_subspace(girder(a, b, m), oracle::girder(a, b, m.basis())));
  }
}

TEST(Intertwiners, StructuredInstancesMatchOracle) {
  for (const auto& inst : instances(3, 4, 41)) {
    EXPECT_TRUE(same_space(local_commutant(inst.a, inst.m), oracle::intertwiner_basis(inst.a, inst.a, inst.m.basis())))
        << inst.label;
  }
}

TEST(Intertwiners, RejectsBadShapes) {
  EXPECT_LCOMM_ERROR(intertwiner_space(jordan(3), jordan(2), Sub::full(2)), ErrorKind::DimensionMismatch);
  EXPECT_LCOMM_ERROR(intertwiner_space(Mat(2, 3), jordan(2), Sub::full(3)), ErrorKind::NotSquare);
}

TEST(AlgOf, Examples) {
  EXPECT_EQ(alg_of(Sub::zero(3)), Ops::full(3, 3));
  EXPECT_EQ(alg_of(Sub::full(3)), Ops::full(3, 3));
  const auto upper = alg_of(axes(2, {0}));
  EXPECT_EQ(upper.dim(), 3u);
  EXPECT_FALSE(member(e(2, 2, 1, 0), upper));
  EXPECT_TRUE(member(e(2, 2, 0, 1), upper));
}

TEST(AlgOf, MembersMapMIntoItself) {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = pick(rng, 2, 4);
    const Sub m = random_subspace<Q>(n, pick(rng, 0, n), rng);
    const std::size_t k = m.dim();
    const auto alg = alg_of(m);
    EXPECT_EQ(alg.dim(), n * n - k * (n - k));
    EXPECT_TRUE(is_product_closed(alg));
    for (const auto& t : alg.basis_matrices()) EXPECT_TRUE(oracle::maps_into(t, m.basis(), n));
  }
}

TEST(Girder, Examples) {
  const Mat a = jordan(3);
  EXPECT_TRUE(girder(a, a, Sub::full(3)).is_full());
  EXPECT_TRUE(girder(a, a, Sub::zero(3)).is_zero());
  const Mat s = Mat::scalar(2, Q(5));
  EXPECT_TRUE(girder(s, s, Sub::zero(2)).is_full());
  const auto f = example_projection_3block<Q>(1, 1, 1);
  EXPECT_EQ(girder(f.a, f.a, f.m), f.m);
}

TEST(Girder, ContainsMAndIsFixedByItsOwnSpace) {
  for (const auto& inst : instances(2, 4, 17)) {
    const Sub g = girder(inst.a, inst.a, inst.m);
    EXPECT_TRUE(contains(g, inst.m)) << inst.label;
    // C(A;M) ⊆ C(A;G), and M ⊆ G gives the reverse inclusion.
    EXPECT_EQ(local_commutant(inst.a, g), local_commutant(inst.a, inst.m)) << inst.label;
  }
}

TEST(ModuleAlgebras, LargestInnerAlgebra) {
  const auto f = example_projection_3block<Q>(1, 1, 1);
  const auto inner = largest_inner_algebra(f.a, f.m);
  EXPECT_EQ(inner, commutant(f.a));
  for (const auto& inst : instances(2, 4, 23)) {
    const auto in = largest_inner_algebra(inst.a, inst.m);
    EXPECT_TRUE(is_product_closed(in)) << inst.label;
    EXPECT_TRUE(contains(local_commutant(inst.a, inst.m), in)) << inst.label;
  }
}

TEST(ModuleAlgebras, ActOnTheLocalCommutant) {
  SplitMix64 rng(57);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = pick(rng, 2, 3), p = pick(rng, 1, 3);
    const Mat a = random_matrix<Q>(n, n, rng, 2, 2), b = random_matrix<Q>(p, p, rng, 2, 2);
    const Sub m = random_subspace<Q>(n, pick(rng, 1, n), rng);
    const auto space = intertwiner_space(a, b, m);
    const auto left = left_module_algebra(a, b, m);
    EXPECT_TRUE(is_product_closed(left));
    for (const auto& t : left.basis_matrices())
      for (const auto& s : space.basis_matrices()) EXPECT_TRUE(member(t * s, space));
    const auto c = local_commutant(a, m);
    const auto right = right_module_algebra(a, m);
    EXPECT_TRUE(is_product_closed(right));
    for (const auto& t : right.basis_matrices())
      for (const auto& s : c.basis_matrices()) EXPECT_TRUE(member(s * t, c));
    if (b.rows() == n && b == a) {
      EXPECT_EQ(left, multiplier_space(c, Side::left));
    }
    EXPECT_EQ(left_module_algebra(a, a, m), multiplier_space(c, Side::left));
    EXPECT_EQ(right, multiplier_space(c, Side::right));
  }
}

TEST(FullIntertwiner, BuildAndValidate) {
  const Mat a11 = mat({{1, 0}, {0, 0}});
  const auto inst = build_full_intertwiner_instance(Q(1), a11, mat({{0}, {1}}), 2);
  EXPECT_EQ(inst.a.rows(), 3u);
  EXPECT_EQ(inst.m, axes(3, {0, 1}));
  EXPECT_TRUE(validate_full_intertwiner_instance(inst));
  EXPECT_LCOMM_ERROR(build_full_intertwiner_instance(Q(1), a11, mat({{1}, {0}}), 2), ErrorKind::PreconditionViolated);
  EXPECT_LCOMM_ERROR(build_full_intertwiner_instance(Q(1), a11, mat({{1}}), 2), ErrorKind::DimensionMismatch);
}

TEST(FullIntertwiner, RandomResolventBlocks) {
  SplitMix64 rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = pick(rng, 1, 3), d = pick(rng, 1, 2), p = pick(rng, 1, 2);
    const Q lambda(rng.uniform(-2, 2));
    // A11 - λ gets a random image; A12 is drawn inside it.
    const Mat g = random_matrix<Q>(k, k, rng, 1, 2);
    const Mat a11 = g + Mat::scalar(k, lambda);
    const Mat a12 = g * random_matrix<Q>(k, d, rng);
    const auto inst = build_full_intertwiner_instance(lambda, a11, a12, p);
    EXPECT_TRUE(validate_full_intertwiner_instance(inst)) << "trial " << trial;
    EXPECT_TRUE(same_space(intertwiners(inst.a, inst.b), oracle::intertwiner_basis(inst.a, inst.b, inst.m.basis())));
  }
}

TEST(FloatBackend, AgreesWithExactDimensions) {
  for (const auto& inst : instances(1, 4, 71)) {
    const auto af = to_float(inst.a);
    const auto mf = to_float(inst.m);
    EXPECT_EQ(local_commutant(af, mf).dim(), local_commutant(inst.a, inst.m).dim()) << inst.label;
    EXPECT_EQ(girder(af, af, mf).dim(), girder(inst.a, inst.a, inst.m).dim()) << inst.label;
  }
}
