import numpy as np
import pytest

from qcap.channels import AmplitudeDamping, Depolarizing, GenericKraus, kraus_of
from qcap.holevo import chi_ad
from qcap.memory import (
    MemorySpec,
    convex_combination_capacity,
    interchange_report,
    minmax_diagnostic,
    periodic_capacity,
    periodic_capacity_upper,
)
from qcap.optimize import capacity
from qcap.qstate import binary_entropy


def periodic(*branches):
    return MemorySpec(tuple(branches), "periodic")


def convex(*branches):
    return MemorySpec(tuple(branches), "convex")


def test_spec_rejects_generic_kraus():
    with pytest.raises(TypeError):
        periodic(GenericKraus(kraus_of(AmplitudeDamping(0.2))))


def test_periodic_dep_closed_form():
    res = periodic_capacity(periodic(Depolarizing(0.2), Depolarizing(0.4)))
    expect = 1 - (binary_entropy(0.1) + binary_entropy(0.2)) / 2
    assert res.capacity_bits == pytest.approx(expect, abs=1e-9)


def test_periodic_identity_branches():
    res = periodic_capacity(periodic(AmplitudeDamping(0.0), AmplitudeDamping(0.0)))
    assert res.capacity_bits == pytest.approx(1.0, abs=1e-9)


def test_periodic_upper_bound_dominates():
    specs = [
        periodic(AmplitudeDamping(0.2), AmplitudeDamping(0.6)),
        periodic(Depolarizing(0.3), Depolarizing(0.6)),
        periodic(AmplitudeDamping(0.1), Depolarizing(0.5), AmplitudeDamping(0.7)),
    ]
    for spec in specs:
        assert periodic_capacity(spec).capacity_bits <= periodic_capacity_upper(spec) + 1e-12


def test_periodic_identical_branches_match_upper():
    spec = periodic(AmplitudeDamping(0.3), AmplitudeDamping(0.3))
    assert periodic_capacity(spec).capacity_bits == pytest.approx(
        periodic_capacity_upper(spec), abs=1e-9
    )


def test_interchange_dep_branches_no_gap():
    rep = interchange_report(periodic(Depolarizing(0.3), Depolarizing(0.6)))
    assert rep.gap <= 1e-9
    assert rep.gap >= -1e-12


def test_interchange_ad_branches_strict_gap_and_betweenness():
    rep = interchange_report(periodic(AmplitudeDamping(0.2), AmplitudeDamping(0.6)))
    assert rep.gap > 0
    lo, hi = sorted(rep.a_star_per_branch)
    assert lo < rep.a_star_joint < hi


def test_interchange_gamma_zero_branch_strict_gap():
    rep = interchange_report(periodic(AmplitudeDamping(0.0), AmplitudeDamping(0.5)))
    assert rep.gap > 0


def test_interchange_gamma_one_restores_equality():
    rep = interchange_report(periodic(AmplitudeDamping(0.4), AmplitudeDamping(1.0)))
    assert abs(rep.gap) <= 1e-9


def test_convex_two_ad_max_gamma_rule():
    res = convex_combination_capacity(convex(AmplitudeDamping(0.2), AmplitudeDamping(0.4)))
    assert res.capacity_bits == pytest.approx(
        capacity(AmplitudeDamping(0.4)).capacity_bits, abs=1e-9
    )


def test_convex_two_dep_max_lambda_rule():
    res = convex_combination_capacity(convex(Depolarizing(0.2), Depolarizing(0.4)))
    assert res.capacity_bits == pytest.approx(1 - binary_entropy(0.2), abs=1e-9)


def test_convex_weights_are_ignored():
    a = convex_combination_capacity(convex(Depolarizing(0.2), Depolarizing(0.4)))
    spec = MemorySpec((Depolarizing(0.2), Depolarizing(0.4)), "convex", weights=(0.9, 0.1))
    b = convex_combination_capacity(spec)
    assert a.capacity_bits == b.capacity_bits


def test_convex_dominated_by_min_branch_capacity():
    specs = [
        convex(AmplitudeDamping(0.3), Depolarizing(0.2)),
        convex(AmplitudeDamping(0.6), Depolarizing(0.3)),
        convex(Depolarizing(0.1), Depolarizing(0.7)),
    ]
    for spec in specs:
        cap_min = min(capacity(b).capacity_bits for b in spec.branches)
        assert convex_combination_capacity(spec).capacity_bits <= cap_min + 1e-12


def test_two_ad_pointwise_min_is_max_gamma_curve():
    g0, g1 = 0.25, 0.65
    for a in np.linspace(0, 1, 101):
        a = float(a)
        assert min(chi_ad(g0, a), chi_ad(g1, a)) == pytest.approx(chi_ad(g1, a), abs=1e-15)


def test_minmax_identical_branches():
    d = minmax_diagnostic(convex(AmplitudeDamping(0.3), AmplitudeDamping(0.3)))
    assert d.sup_min == pytest.approx(d.min_sup, abs=1e-9)


def test_minmax_two_ad_no_gap():
    d = minmax_diagnostic(convex(AmplitudeDamping(0.2), AmplitudeDamping(0.5)))
    assert d.sup_min == pytest.approx(d.min_sup, abs=1e-9)
    assert d.sup_min <= d.min_sup + 1e-12


def test_minmax_ad_dep_counterexample():
    # regression pair found by grid search: the chi curves cross strictly
    # between 1/2 and the AD maximizer, forcing sup-min < min-sup
    d = minmax_diagnostic(convex(AmplitudeDamping(0.6), Depolarizing(0.3)))
    assert d.min_sup - d.sup_min == pytest.approx(2.6479e-3, abs=2e-6)
    assert d.crossing_a is not None
    a_ad = capacity(AmplitudeDamping(0.6)).a_star
    assert 0.5 < d.crossing_a < a_ad


def test_branch_permutation_invariance():
    b = (AmplitudeDamping(0.2), Depolarizing(0.5), AmplitudeDamping(0.7))
    for kind, fn in [("periodic", periodic_capacity), ("convex", convex_combination_capacity)]:
        ref = fn(MemorySpec(b, kind)).capacity_bits
        perm = fn(MemorySpec((b[2], b[0], b[1]), kind)).capacity_bits
        assert perm == pytest.approx(ref, abs=1e-12)


def test_kind_mismatch_rejected():
    spec = periodic(AmplitudeDamping(0.2))
    with pytest.raises(ValueError):
        convex_combination_capacity(spec)
    with pytest.raises(ValueError):
        periodic_capacity(convex(AmplitudeDamping(0.2)))
    with pytest.raises(ValueError):
        minmax_diagnostic(convex(AmplitudeDamping(0.2)))
