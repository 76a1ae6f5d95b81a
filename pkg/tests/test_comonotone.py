"""Tests for comonotonicity predicates, generators, and additivity checkers."""

import numpy as np
import pytest

from eligirisk import (
    AcceptanceSpec,
    EligibleAsset,
    FiniteSpace,
    Level,
    RandVar,
    SpaceMismatchError,
    additivity_on_S_comonotone,
    additivity_on_comonotone,
    comono_preservation_under_numeraire,
    generate_comonotone_pair,
    is_comonotone,
    rho,
    var,
)


@pytest.fixture
def space3():
    return FiniteSpace([0.05, 0.05, 0.9])


class TestIsComonotone:
    def test_reference_pair(self, space3):
        x = RandVar(space3, [-2.0, -3.0, 2.0])
        y = RandVar(space3, [-4.0, -9.0, 0.0])
        assert is_comonotone(x, y)

    def test_constant_with_anything(self, space3):
        c = RandVar.constant(space3, 1.0)
        z = RandVar(space3, [5.0, -7.0, 0.25])
        assert is_comonotone(c, z) and is_comonotone(z, c)

    def test_antithetic_pair(self):
        sp = FiniteSpace([0.5, 0.5])
        assert not is_comonotone(RandVar(sp, [1.0, -1.0]), RandVar(sp, [-1.0, 1.0]))

    def test_space_mismatch(self, space3):
        with pytest.raises(SpaceMismatchError):
            is_comonotone(
                RandVar.constant(space3, 0.0), RandVar(FiniteSpace([0.5, 0.5]), [0.0, 0.0])
            )

    def test_symmetric_and_reflexive(self):
        rng = np.random.default_rng(3)
        sp = FiniteSpace([0.2, 0.3, 0.5])
        for _ in range(200):
            x = RandVar(sp, rng.integers(-8, 9, 3).astype(float))
            y = RandVar(sp, rng.integers(-8, 9, 3).astype(float))
            assert is_comonotone(x, x)
            assert is_comonotone(x, y) == is_comonotone(y, x)

    def test_invariant_under_common_increasing_map(self):
        rng = np.random.default_rng(5)
        sp = FiniteSpace([0.25, 0.25, 0.25, 0.25])
        for _ in range(200):
            x = RandVar(sp, rng.integers(-8, 9, 4).astype(float))
            y = RandVar(sp, rng.integers(-8, 9, 4).astype(float))
            fx = RandVar(sp, np.exp(x.values / 4.0))
            fy = RandVar(sp, np.exp(y.values / 4.0))
            assert is_comonotone(x, y) == is_comonotone(fx, fy)

    def test_sorted_fast_path_agrees(self):
        rng = np.random.default_rng(7)
        for _ in range(2000):
            n = int(rng.integers(2, 8))
            w = rng.integers(1, 16, n).astype(float)
            sp = FiniteSpace(w / w.sum())
            x = RandVar(sp, rng.integers(-3, 4, n).astype(float))
            y = RandVar(sp, rng.integers(-3, 4, n).astype(float))
            assert is_comonotone(x, y) == is_comonotone(x, y, method="sorted")

    def test_unknown_method(self, space3):
        c = RandVar.constant(space3, 0.0)
        with pytest.raises(ValueError):
            is_comonotone(c, c, method="fast")


class TestGenerateComonotonePair:
    def test_contract_on_seeded_draws(self):
        rng = np.random.default_rng(11)
        for _ in range(10000):
            n = int(rng.integers(1, 9))
            w = rng.integers(1, 16, n).astype(float)
            sp = FiniteSpace(w / w.sum())
            pair = generate_comonotone_pair(sp, rng)
            assert is_comonotone(pair.x, pair.y)
            assert is_comonotone(pair.x, pair.driver)
            assert is_comonotone(pair.y, pair.driver)

    def test_reproducible(self, space3):
        p1 = generate_comonotone_pair(space3, seed=42)
        p2 = generate_comonotone_pair(space3, seed=42)
        assert np.array_equal(p1.x.values, p2.x.values)
        assert np.array_equal(p1.y.values, p2.y.values)

    def test_constant_components_occur(self):
        sp = FiniteSpace([0.25, 0.25, 0.25, 0.25])
        rng = np.random.default_rng(13)
        constants = sum(
            generate_comonotone_pair(sp, rng).y.is_constant for _ in range(500)
        )
        assert constants > 0


class TestAdditivityOnComonotone:
    def test_cash_var_passes(self):
        sp = FiniteSpace([0.1, 0.1, 0.8])
        level = Level(0.1)
        report = additivity_on_comonotone(lambda v: var(v, level), sp, trials=800, seed=17)
        assert report.passed

    def test_risky_asset_var_fails_with_refined_witness(self, space3):
        spec = AcceptanceSpec.var_level(0.05)
        asset = EligibleAsset(1.0, RandVar(space3, [1.0, 2.0, 1.0]))
        rho_fn = lambda v: rho(spec, asset, v).value
        report = additivity_on_comonotone(rho_fn, space3, trials=800, seed=19)
        assert not report.passed
        x, y, gap = report.witness["x"], report.witness["y"], report.witness["gap"]
        assert is_comonotone(x, y)
        assert abs(rho_fn(x + y) - rho_fn(x) - rho_fn(y)) == pytest.approx(abs(gap))
        assert abs(gap) > 1e-10

    def test_risk_free_es_passes(self, space3):
        spec = AcceptanceSpec.es_level(0.1)
        asset = EligibleAsset(1.0, RandVar.constant(space3, 2.0))
        rho_fn = lambda v: rho(spec, asset, v).value
        assert additivity_on_comonotone(rho_fn, space3, trials=300, seed=23).passed

    def test_cash_shift_is_priced_linearly(self):
        # additivity with constants in action: rho(x + lam) = rho(x) + lam * rho(1)
        sp = FiniteSpace([0.1, 0.2, 0.7])
        level = Level(0.2)
        rng = np.random.default_rng(29)
        for _ in range(200):
            x = RandVar(sp, rng.integers(-64, 65, 3) / 16)
            lam = float(rng.integers(-16, 17)) / 4
            assert var(x + lam, level) == pytest.approx(
                var(x, level) + lam * var(RandVar.constant(sp, 1.0), level), abs=1e-10
            )


class TestAdditivityOnAssetComonotone:
    def test_risk_free_var_passes(self, space3):
        spec = AcceptanceSpec.var_level(0.05)
        asset = EligibleAsset(1.0, RandVar.constant(space3, 2.0))
        assert additivity_on_S_comonotone(spec, asset, trials=200, seed=31).passed

    def test_risky_es_two_atoms_fails(self):
        sp = FiniteSpace([0.5, 0.5])
        spec = AcceptanceSpec.es_level(0.5)
        asset = EligibleAsset(1.0, RandVar(sp, [1.0, 2.0]))
        report = additivity_on_S_comonotone(spec, asset, trials=200, seed=37)
        assert not report.passed
        x, y = report.witness["x"], report.witness["y"]
        assert is_comonotone(x, y)
        assert is_comonotone(x, asset.payoff) and is_comonotone(y, asset.payoff)

    def test_near_rf_asset_reports_verdict(self):
        sp = FiniteSpace([0.1, 0.1, 0.8])
        spec = AcceptanceSpec.var_level(0.1)
        asset = EligibleAsset(1.0, RandVar(sp, [1.0, 2.0, 1.0]))
        report = additivity_on_S_comonotone(spec, asset, trials=1000, seed=41)
        assert report.trials >= 1000
        if not report.passed:
            x, y = report.witness["x"], report.witness["y"]
            assert is_comonotone(x, asset.payoff) and is_comonotone(y, asset.payoff)


class TestNumerairePreservation:
    def test_constant_payoff_preserves(self, space3):
        asset = EligibleAsset(1.0, RandVar.constant(space3, 2.0))
        report = comono_preservation_under_numeraire(asset, trials=100, seed=43)
        assert report.passed
        assert report.witness is None

    def test_two_atom_witnesses_both_directions(self):
        sp = FiniteSpace([0.5, 0.5])
        asset = EligibleAsset(1.0, RandVar(sp, [1.0, 2.0]))
        report = comono_preservation_under_numeraire(asset, trials=10000, seed=47)
        assert not report.passed
        fw, rv = report.witness["forward"], report.witness["reverse"]
        assert is_comonotone(fw["x_discounted"], fw["y_discounted"])
        assert not is_comonotone(fw["x"], fw["y"])
        assert not is_comonotone(rv["x_discounted"], rv["y_discounted"])
        assert is_comonotone(rv["x"], rv["y"])

    def test_witness_products_reconstruct(self):
        sp = FiniteSpace([0.2, 0.3, 0.5])
        asset = EligibleAsset(1.0, RandVar(sp, [0.5, 1.5, 2.5]))
        report = comono_preservation_under_numeraire(asset, trials=10000, seed=53)
        assert not report.passed
        for direction in ("forward", "reverse"):
            w = report.witness[direction]
            assert np.allclose(
                (w["x_discounted"] * asset.payoff).values, w["x"].values, atol=0
            )
