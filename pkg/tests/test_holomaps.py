import math

import pytest

from hypbound import (
    BlaschkeProduct,
    Composition,
    DomainError,
    HalfPlaneTranslate,
    Identity,
    Mobius,
    MobiusAut,
    Model,
    ModelPoint,
    PreconditionError,
    PuncturedExp,
    PuncturedPower,
    RealPartMap,
    UsageError,
    ValidationError,
    declared_degree,
    dist,
    evaluate,
    map_from_dict,
    sample_map,
    schwarz_quotient,
)

from conftest import random_disc_point, random_punctured_point


def all_variant_examples():
    return [
        Identity(Model.DISC),
        MobiusAut(Mobius(1.0, -0.3, -0.3, 1.0, Model.DISC)),
        BlaschkeProduct(0.7, (0.2 + 0.1j, -0.4j, 0.5)),
        HalfPlaneTranslate(0.25),
        PuncturedPower(1.1, 2),
        PuncturedExp(0.3, 3, 1.5),
        Composition((BlaschkeProduct(0.0, (0.3,)), BlaschkeProduct(0.2, (0.0, -0.2j)))),
        RealPartMap(),
    ]


def sample_point_for(f, rng) -> ModelPoint:
    if f.model is Model.DISC:
        return random_disc_point(rng)
    if f.model is Model.RIGHT_HALF_PLANE:
        return ModelPoint.right(complex(rng.uniform(0.05, 5.0), rng.uniform(-3.0, 3.0)))
    return random_punctured_point(rng)


class TestEvaluate:
    def test_identity(self):
        z = ModelPoint.disc(0.3 + 0.2j)
        assert evaluate(Identity(Model.DISC), z).value == z.value

    def test_halfplane_translate(self):
        out = evaluate(HalfPlaneTranslate(0.01), ModelPoint.right(0.1))
        assert abs(out.value - 0.11) <= 1e-15

    def test_punctured_exp_value(self):
        out = evaluate(PuncturedExp(0.0, 2, 1.0), ModelPoint.punctured(0.5))
        assert abs(out.value - 0.25 * math.exp(-0.5)) <= 1e-15

    def test_model_mismatch(self):
        with pytest.raises(DomainError):
            evaluate(Identity(Model.DISC), ModelPoint.upper(1j))

    def test_maps_stay_inside_model(self, rng):
        for f in all_variant_examples():
            for _ in range(100):
                z = sample_point_for(f, rng)
                evaluate(f, z)  # raises if the image leaves the model

    def test_punctured_exp_zero_free(self, rng):
        f = PuncturedExp(0.4, 2, 1.7)
        for _ in range(200):
            z = random_punctured_point(rng)
            w = f.value_at(z.value)
            r = abs(z.value)
            assert abs(abs(w) - r ** 2 * math.exp(1.7 * (z.value.real - 1.0))) <= 1e-13
            assert 0.0 < abs(w) < 1.0


class TestVariantValidation:
    def test_blaschke_needs_zero(self):
        with pytest.raises(ValidationError):
            BlaschkeProduct(0.0, ())

    def test_blaschke_zero_inside(self):
        with pytest.raises(ValidationError):
            BlaschkeProduct(0.0, (1.0,))

    def test_translate_nonnegative(self):
        with pytest.raises(ValidationError):
            HalfPlaneTranslate(-0.1)

    def test_power_positive(self):
        with pytest.raises(ValidationError):
            PuncturedPower(0.0, 0)

    def test_exp_decay_nonnegative(self):
        with pytest.raises(ValidationError):
            PuncturedExp(0.0, 1, -1.0)

    def test_composition_single_model(self):
        with pytest.raises(ValidationError):
            Composition((Identity(Model.DISC), PuncturedPower(0.0, 1)))

    def test_contraction_flag(self):
        assert RealPartMap().contraction_only
        assert not BlaschkeProduct(0.0, (0.1,)).contraction_only


class TestContraction:
    def test_schwarz_pick_all_holomorphic_variants(self, rng):
        for f in all_variant_examples():
            if f.contraction_only:
                continue
            for _ in range(100):
                u = sample_point_for(f, rng)
                v = sample_point_for(f, rng)
                assert dist(evaluate(f, u), evaluate(f, v)) <= dist(u, v) + 1e-9

    def test_strict_at_origin(self, rng):
        # a product fixing 0 with a second zero shrinks moduli strictly
        f = BlaschkeProduct(0.3, (0.0, 0.4 - 0.2j))
        for _ in range(300):
            w = random_disc_point(rng).value
            if abs(w) < 1e-6:
                continue
            assert abs(f.value_at(w)) < abs(w)

    def test_real_part_contracts_but_is_flagged(self, rng):
        f = RealPartMap()
        assert f.contraction_only
        for _ in range(300):
            u = random_disc_point(rng)
            v = random_disc_point(rng)
            assert dist(evaluate(f, u), evaluate(f, v)) <= dist(u, v) + 1e-9

    def test_real_part_fixes_reals(self):
        out = evaluate(RealPartMap(), ModelPoint.disc(0.731))
        assert out.value == 0.731 + 0j


class TestSchwarzQuotient:
    def test_monomial(self):
        g = schwarz_quotient(BlaschkeProduct(0.0, (0.0, 0.0)))  # w^2
        assert abs(g.value_at(0.3 + 0.1j) - (0.3 + 0.1j)) <= 1e-12
        assert abs(g.value_at(0.0)) <= 1e-12

    def test_blaschke_factor_cancellation(self):
        f = BlaschkeProduct(0.0, (0.0, 0.5))  # w * (w - 0.5)/(1 - 0.5 w)
        g = schwarz_quotient(f)
        w = 0.2 - 0.3j
        expected = (w - 0.5) / (1.0 - 0.5 * w)
        assert abs(g.value_at(w) - expected) <= 1e-12
        assert abs(g.value_at(0.0) + 0.5) <= 1e-12

    def test_linear_scaling(self):
        f = MobiusAut(Mobius(0.3, 0.0, 0.0, 1.0, Model.DISC))  # w -> 0.3 w
        g = schwarz_quotient(f)
        assert abs(g.value_at(0.0) - 0.3) <= 1e-12
        assert abs(g.value_at(0.6j) - 0.3) <= 1e-12

    def test_needs_origin_fixed(self):
        with pytest.raises(PreconditionError):
            schwarz_quotient(BlaschkeProduct(0.0, (0.5,)))

    def test_rejects_non_holomorphic(self):
        with pytest.raises(PreconditionError):
            schwarz_quotient(RealPartMap())

    def test_image_in_closed_disc(self, rng):
        maps = [
            BlaschkeProduct(0.9, (0.0, 0.3, -0.2j)),
            Composition((BlaschkeProduct(0.0, (0.0,)), BlaschkeProduct(0.1, (0.0, 0.5)))),
            Identity(Model.DISC),
        ]
        for f in maps:
            g = schwarz_quotient(f)
            for _ in range(1000):
                w = random_disc_point(rng).value
                assert abs(g.value_at(w)) <= 1.0 + 1e-9


class TestSampleMap:
    def test_deterministic(self):
        f1 = sample_map("blaschke", 42, {"max_degree": 3})
        f2 = sample_map("blaschke", 42, {"max_degree": 3})
        assert f1.to_dict() == f2.to_dict()

    def test_blaschke_ranges(self):
        for seed in range(30):
            f = sample_map("blaschke", seed, {"max_degree": 3})
            assert 1 <= len(f.zeros) <= 3
            assert all(abs(z) <= 0.95 for z in f.zeros)

    def test_punctured_exp_ranges(self):
        for seed in range(30):
            f = sample_map("punctured_exp", seed, {"max_power": 5, "max_decay": 2.0})
            assert 1 <= f.power <= 5
            assert 0.0 <= f.decay <= 2.0

    def test_near_identity_displacement(self):
        origin = ModelPoint.disc(0.0)
        for seed in range(30):
            f = sample_map("near_identity", seed, {"eps": 1e-3})
            assert dist(evaluate(f, origin), origin) < 1e-3

    def test_unknown_family(self):
        with pytest.raises(UsageError):
            sample_map("quadratic", 1)


class TestDeclaredDegree:
    def test_power(self):
        assert declared_degree(PuncturedPower(0.2, 3)) == 3

    def test_identity_on_punctured(self):
        assert declared_degree(Identity(Model.PUNCTURED_DISC)) == 1
        assert declared_degree(Identity(Model.DISC)) is None

    def test_composition_multiplies(self):
        f = Composition((PuncturedPower(0.0, 2), PuncturedPower(0.0, 3)))
        assert declared_degree(f) == 6

    def test_non_punctured_is_none(self):
        assert declared_degree(BlaschkeProduct(0.0, (0.1,))) is None


class TestSerialization:
    def test_roundtrip_all_variants(self, rng):
        for f in all_variant_examples():
            g = map_from_dict(f.to_dict())
            assert type(g) is type(f) and g.model is f.model
            for _ in range(20):
                z = sample_point_for(f, rng).value
                assert abs(g.value_at(z) - f.value_at(z)) <= 1e-13

    def test_unknown_variant(self):
        with pytest.raises(UsageError):
            map_from_dict({"variant": "entire"})
