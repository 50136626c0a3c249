import numpy as np
import pytest

from absppt import families as fam
from absppt.extremality import (ExtremalityKind, NotBoundary, NotPSD, admissible_directions, build_t_system,
                                direction_test, extremality_test, interior_line_test, null_space)
from absppt.spectrum import make_spectrum, uniform

NU153 = np.array([15, -6, -6, -6, -6, -6, 5, 5, 5], float)


@pytest.mark.parametrize("i", range(1, 9))
def test_zeta_extreme(i):
    v = extremality_test(fam.zeta(i))
    assert v.kind is ExtremalityKind.EXTREME and v.rank == 9
    assert v.rank_deficient == (i == 8)


def test_interior_not_applicable():
    v = extremality_test(uniform())
    assert v.kind is ExtremalityKind.NOT_APPLICABLE
    with pytest.raises(NotBoundary):
        build_t_system(uniform())


def test_nu153_direction():
    s = fam.eval_family(fam.get_family("nu{1,5,3}"), 0.07)
    v = extremality_test(s)
    assert v.kind is ExtremalityKind.NOT_EXTREME and len(v.null_basis) == 1
    d = v.direction
    assert abs(d @ NU153) / np.linalg.norm(NU153) == pytest.approx(1, abs=1e-12)
    assert v.system.residual(NU153) < 1e-14
    # both ways along the direction stay inside the set
    assert direction_test(s, d, 1e-3)


def test_extreme_point_has_no_two_sided_direction():
    s = fam.zeta(1)
    t = admissible_directions(s)[0]
    assert not direction_test(s, t, 1e-6)


def test_provenance_rows():
    sysm = build_t_system(fam.zeta(3))
    kinds = [p[0] for p in sysm.provenance]
    assert kinds[0] == "SumZero"
    assert kinds.count("Equality") == 7
    assert {"L1Row", "L2Row"} <= set(kinds)
    assert sysm.matrix.shape == (len(kinds), 9)


def test_t_rows_are_linear_in_t(rng):
    s = fam.eval_family(fam.get_family("nu{3,4,2}"), 0.05)
    sysm = build_t_system(s)
    w = sysm.null_vectors["L1"][0] if "L1" in sysm.null_vectors else sysm.null_vectors["L2"][0]
    from absppt.criterion import build_L1, build_L2
    builder = build_L1 if "L1" in sysm.null_vectors else build_L2
    t = rng.normal(size=9)
    rows = [i for i, p in enumerate(sysm.provenance) if p[0].startswith(builder.__name__[-2:])][:3]
    assert np.allclose(sysm.matrix[rows] @ t, builder(t) @ w, atol=1e-14)


def test_null_space():
    assert len(null_space(np.diag([0.0, 1.0, 2.0]))) == 1
    with pytest.raises(NotPSD):
        null_space(np.diag([-1.0, 1.0, 1.0]))


def test_interior_line_test():
    assert interior_line_test(uniform(), fam.zeta(1))
    # a boundary point cannot move towards the spike and back
    spike = make_spectrum([0.92] + [0.01] * 8)
    assert not interior_line_test(fam.zeta(1), spike, eps=0.05)
    with pytest.raises(ValueError):
        interior_line_test(uniform(), uniform(), eps=0.5)


def test_stacked_kernel_flag():
    d = extremality_test(fam.zeta(8)).to_dict()
    assert "stacked_kernel" in d and d["kind"] == "Extreme"


def test_admissible_directions_respect_groups():
    s = fam.eval_family(fam.get_family("nu{2,3,4}"), 0.07)
    dirs = admissible_directions(s)
    assert len(dirs) == 2
    for t in dirs:
        assert abs(t.sum()) < 1e-14
        assert np.ptp(t[:2]) < 1e-14 and np.ptp(t[2:5]) < 1e-14 and np.ptp(t[5:]) < 1e-14
