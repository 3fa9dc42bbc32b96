#include "oqec/conditions.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oqec/codes.hpp"
#include "oqec/error.hpp"
#include "oqec/random.hpp"
#include "test_support.hpp"

using namespace oqec;

namespace {

Decomposition bit_flip_dec() { return Decomposition(2, 1, 6, frames::permutation(8, {0, 7})); }

Channel vs_z() {
  return Channel(8, 8, {std::sqrt(0.5) * identity(8), std::sqrt(0.5) * pauli::string("ZII")});
}

}  // namespace

TEST(condition_b, identity_channel) {
  const Decomposition dec(2, 3, 1);
  const auto rep = check_condition_b(dec, noise::identity(7), 1e-9);
  EXPECT_TRUE(rep.pass);
  const auto& w = std::get<ConditionBWitness>(rep.witness);
  EXPECT_LT((w.block(0, 0) - identity(3)).norm(), 1e-15);
}

TEST(condition_b, bit_flip_blocks_are_weights) {
  const auto rep = check_condition_b(bit_flip_dec(), noise::restricted_flip(3, 0.1), 1e-9);
  EXPECT_TRUE(rep.pass);
  const auto& w = std::get<ConditionBWitness>(rep.witness);
  const double weights[] = {0.7, 0.1, 0.1, 0.1};
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(std::abs(w.block(j, k)(0, 0) - (j == k ? weights[j] : 0.0)), 0.0, 1e-15);
    }
  }
}

TEST(condition_b, logical_z_fails) {
  const auto rep = check_condition_b(bit_flip_dec(), vs_z(), 1e-9);
  EXPECT_FALSE(rep.pass);
  const auto& w = std::get<ConditionBWitness>(rep.witness);
  // Frozen by tests/oracles/frozen_values.py.
  EXPECT_NEAR(w.max_pair_residual, 0.70710678118654768, 1e-12);
  EXPECT_NEAR(rep.residual, 1.0, 1e-12);
  EXPECT_TRUE((w.worst_pair == std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(condition_b, residual_invariant_under_kraus_remixing) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dec = oqec::testing::random_decomposition(2, 1 + rng.index(2), rng.index(3), rng);
    const Channel ch = noise::random_channel(dec.dim_v(), 2 + rng.index(2), 500 + trial);
    const Channel mixed = oqec::testing::remix(ch, rng);
    const auto a = check_condition_b(dec, ch, 1e-8);
    const auto b = check_condition_b(dec, mixed, 1e-8);
    EXPECT_EQ(a.pass, b.pass);
    EXPECT_NEAR(a.residual, b.residual, 1e-9);
  }
}

TEST(condition_b, dimension_mismatch) {
  EXPECT_THROW(check_condition_b(bit_flip_dec(), noise::identity(4), 1e-9), DimensionError);
}

TEST(purify, identity_channel_is_bell_times_trivial) {
  const Decomposition dec(2, 1, 0);
  const auto ps = purify(dec, noise::identity(2));
  EXPECT_EQ(ps.psi.dims, (std::vector<std::size_t>{2, 1, 2, 1}));
  EXPECT_NEAR(ps.norm_in, 1.0, 1e-15);
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  EXPECT_LT((ps.psi.amplitudes - bell).norm(), 1e-15);
  const Matrix rbe = reduced_density(ps.psi, {PurifiedState::kRB, PurifiedState::kE});
  EXPECT_NEAR(rbe.trace().real(), 1.0, 1e-15);
  EXPECT_NEAR((rbe * rbe).trace().real(), 1.0, 1e-15);
}

TEST(purify, reference_marginal_is_maximally_mixed) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dec = oqec::testing::random_decomposition(2 + rng.index(2), 1 + rng.index(2),
                                                         rng.index(3), rng);
    const Channel ch = noise::random_channel(dec.dim_v(), 1 + rng.index(3), 40 + trial);
    const auto ps = purify(dec, ch);
    EXPECT_NEAR(ps.psi.norm(), 1.0, 1e-12);
    const Matrix ra = reduced_density(ps.psi, {PurifiedState::kRA});
    EXPECT_LT((ra - identity(dec.dim_a()) / static_cast<double>(dec.dim_a())).norm(), 1e-10);
  }
}

TEST(purify, reference_marginal_matches_kraus_formula) {
  Rng rng(4);
  const Decomposition dec(2, 2, 0);
  const Channel ch = noise::random_channel(4, 2, 77);
  const auto ps = purify(dec, ch);
  const Matrix formula = oqec::testing::reference_marginal_formula(dec, ch);
  EXPECT_LT((reference_environment_marginal(ps) - formula).norm(), 1e-10);

  const auto framed = oqec::testing::random_decomposition(2, 2, 3, rng);
  const Channel ch7 = noise::random_channel(7, 3, 78);
  EXPECT_LT((reference_environment_marginal(purify(framed, ch7)) -
             oqec::testing::reference_marginal_formula(framed, ch7))
                .norm(),
            1e-10);
}

TEST(purify, trace_decreasing_is_renormalized) {
  const Decomposition dec(2, 1, 0);
  Channel half(2, 2, {0.5 * identity(2)});
  EXPECT_THROW(purify(dec, half), ContractViolation);
  half.trace_decreasing = true;
  const auto ps = purify(dec, half);
  EXPECT_NEAR(ps.norm_in, 0.25, 1e-15);
  EXPECT_NEAR(ps.psi.norm(), 1.0, 1e-15);
  Channel zero(2, 2, {Matrix::Zero(2, 2)}, true);
  EXPECT_THROW(purify(dec, zero), DegenerateError);
}

TEST(condition_c, identity_bit_flip_and_failure) {
  const auto id = check_condition_c(purify(Decomposition(2, 1, 0), noise::identity(2)), 1e-12);
  EXPECT_TRUE(id.pass);
  EXPECT_LE(id.residual, 1e-12);
  const auto& w = std::get<ConditionCWitness>(id.witness);
  EXPECT_LT((w.rho_ra - identity(2) / 2.0).norm(), 1e-15);

  EXPECT_TRUE(check_condition_c(purify(bit_flip_dec(), noise::restricted_flip(3, 0.1)), 1e-9).pass);

  const auto bad = check_condition_c(purify(bit_flip_dec(), vs_z()), 1e-9);
  EXPECT_FALSE(bad.pass);
  EXPECT_GE(bad.residual, 0.1);
  EXPECT_NEAR(bad.residual, 0.5, 1e-12);  // frozen oracle value
}

TEST(condition_d, reference_cases) {
  const auto id = check_condition_d(purify(Decomposition(2, 1, 0), noise::identity(2)), 1e-9);
  EXPECT_TRUE(id.pass);
  const auto& w = std::get<ConditionDWitness>(id.witness);
  EXPECT_NEAR(w.s_a, 1.0, 1e-15);
  EXPECT_NEAR(w.s_v, 1.0, 1e-12);
  EXPECT_NEAR(w.s_rbe, 0.0, 1e-12);

  const auto flip = check_condition_d(purify(bit_flip_dec(), noise::restricted_flip(3, 0.1)), 1e-9);
  EXPECT_TRUE(flip.pass);
  EXPECT_LE(flip.residual, 1e-9);

  const auto bad = check_condition_d(purify(bit_flip_dec(), vs_z()), 1e-9);
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(std::get<ConditionDWitness>(bad.witness).signed_gap, 1.0, 1e-12);
}

TEST(condition_d, gap_is_nonnegative) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto dec = oqec::testing::random_decomposition(2 + rng.index(2), 1 + rng.index(2),
                                                         rng.index(3), rng);
    const Channel ch = noise::random_channel(dec.dim_v(), 1 + rng.index(3), 900 + trial);
    const auto rep = check_condition_d(purify(dec, ch), 1e-8);
    EXPECT_GE(std::get<ConditionDWitness>(rep.witness).signed_gap, -1e-9);
  }
}

TEST(conditions, verdicts_agree_on_random_instances) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const auto dec = oqec::testing::random_decomposition(2, 1 + rng.index(2), rng.index(3), rng);
    const Channel ch = trial % 2 ? noise::random_channel(dec.dim_v(), 2, 300 + trial)
                                 : oqec::testing::random_correctable_channel(dec, 2, rng);
    const auto ps = purify(dec, ch);
    const bool b = check_condition_b(dec, ch, 1e-8).pass;
    EXPECT_EQ(b, check_condition_c(ps, 1e-8).pass);
    EXPECT_EQ(b, check_condition_d(ps, 1e-8).pass);
    EXPECT_EQ(b, trial % 2 == 0);
  }
}

TEST(coherent_info, reference_values) {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  EXPECT_NEAR(coherent_info(bell * bell.adjoint(), 2, 2), 1.0, 1e-12);
  EXPECT_NEAR(coherent_info(identity(4) / 4.0, 2, 2), -1.0, 1e-12);

  Rng rng(9);
  const Matrix ra = random_density(2, rng);
  const Vector v = random_pure_state(3, rng);
  EXPECT_NEAR(coherent_info(kron(ra, Matrix(v * v.adjoint())), 2, 3), -von_neumann_entropy(ra),
              1e-10);
  EXPECT_THROW(coherent_info(2.0 * identity(4), 2, 2), NotAStateError);
}

TEST(dpi_trace, identity_chain_is_constant) {
  const Decomposition dec(3, 2, 1);
  const auto t = dpi_trace(dec, {noise::identity(7), noise::identity(7)});
  ASSERT_EQ(t.values.size(), 3u);
  for (double v : t.values) EXPECT_NEAR(v, std::log2(3.0), 1e-10);
  EXPECT_TRUE(t.monotone);
}

TEST(dpi_trace, depolarizing_chain_strictly_decreases) {
  const Decomposition dec(2, 1, 0);
  const auto t = dpi_trace(dec, {noise::depolarizing(2, 0.3), noise::depolarizing(2, 0.3)});
  ASSERT_EQ(t.values.size(), 3u);
  // Frozen by tests/oracles/frozen_values.py.
  EXPECT_NEAR(t.values[0], 1.0, 1e-12);
  EXPECT_NEAR(t.values[1], -0.12580939167527383, 1e-10);
  EXPECT_NEAR(t.values[2], -0.56603673096708906, 1e-10);
  EXPECT_TRUE(t.monotone);
}

TEST(dpi_trace, random_chains_never_increase) {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dec = oqec::testing::random_decomposition(2, 1 + rng.index(2), rng.index(3), rng);
    std::vector<Channel> chain;
    for (std::size_t i = 0, n = 1 + rng.index(4); i < n; ++i) {
      chain.push_back(noise::random_channel(dec.dim_v(), 1 + rng.index(3), 70 * trial + i));
    }
    const auto t = dpi_trace(dec, chain);
    EXPECT_TRUE(t.monotone) << "max increase " << t.max_increase;
  }
}

TEST(dpi_trace, rejects_non_tp) {
  const Decomposition dec(2, 1, 0);
  EXPECT_THROW(dpi_trace(dec, {Channel(2, 2, {0.5 * identity(2)}, true)}), ContractViolation);
}
