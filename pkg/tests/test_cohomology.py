import random

import pytest
from fractions import Fraction

from simdiff.cochains import (Cochain, INTEGERS, RATIONALS, coboundary,
                              mod_coefficients, random_cochain)
from simdiff.cohomology import (CoboundaryObstruction, CoboundaryWitness,
                                GroupPresentation, PinnedObstruction,
                                PinnedSolution, cohomology, delta_matrix,
                                face_pins, is_coboundary, solve_closed_extension,
                                solve_coboundary, vector_of)
from simdiff.complexes import circle, cylinder, point, rp2, sphere2, torus


def test_presentation_rendering():
    assert str(GroupPresentation()) == "0"
    assert str(GroupPresentation(free_rank=2, torsion=(2, 4))) == "Z^2 + Z/2 + Z/4"
    assert str(GroupPresentation(divisible_rank=1, circle_rank=1)) == "Q + Q/Z"
    with pytest.raises(ValueError):
        GroupPresentation(torsion=(4, 2))


def test_delta_matrix_circle():
    # each edge sees its two endpoints with opposite signs
    M = delta_matrix(circle(3), 0)
    assert sorted(sorted(row) for row in M) == [[-1, 0, 1]] * 3


KNOWN_GROUPS = [
    ("point", point, 0, GroupPresentation(free_rank=1)),
    ("point", point, 1, GroupPresentation()),
    ("circle", circle, 0, GroupPresentation(free_rank=1)),
    ("circle", circle, 1, GroupPresentation(free_rank=1)),
    ("circle", circle, 2, GroupPresentation()),
    ("sphere2", sphere2, 0, GroupPresentation(free_rank=1)),
    ("sphere2", sphere2, 1, GroupPresentation()),
    ("sphere2", sphere2, 2, GroupPresentation(free_rank=1)),
    ("rp2", rp2, 0, GroupPresentation(free_rank=1)),
    ("rp2", rp2, 1, GroupPresentation()),
    ("rp2", rp2, 2, GroupPresentation(torsion=(2,))),
    ("torus", torus, 0, GroupPresentation(free_rank=1)),
    ("torus", torus, 1, GroupPresentation(free_rank=2)),
    ("torus", torus, 2, GroupPresentation(free_rank=1)),
]


@pytest.mark.parametrize("name,build,deg,expected",
                         [(f"{n}-H{d}", b, d, e) for n, b, d, e in KNOWN_GROUPS],
                         ids=[f"{n}-H{d}" for n, _, d, _ in KNOWN_GROUPS])
def test_integer_cohomology(name, build, deg, expected):
    H = cohomology(build(), deg, INTEGERS)
    assert H.presentation == expected


def test_rational_cohomology_drops_torsion():
    H = cohomology(rp2(), 2, RATIONALS)
    assert H.presentation == GroupPresentation()
    H = cohomology(torus(), 1, RATIONALS)
    assert H.presentation == GroupPresentation(free_rank=2)


def test_generators_are_cocycles_and_classify_as_unit_vectors():
    for X, deg in ((circle(3), 1), (torus(), 1), (torus(), 2), (rp2(), 2), (sphere2(), 2)):
        H = cohomology(X, deg, INTEGERS)
        for i, g in enumerate(H.generators):
            assert coboundary(g).is_zero()
            free, tors = H.classify(g)
            vec = list(free) + list(tors)
            assert vec[i] == 1
            assert all(v == 0 for j, v in enumerate(vec) if j != i)


def test_classify_respects_coboundaries():
    rng = random.Random(9)
    X = torus()
    H = cohomology(X, 1, INTEGERS)
    z = H.generators[0]
    shift = coboundary(random_cochain(X, 0, INTEGERS, rng))
    assert H.same_class(z, z + shift)
    assert not H.same_class(z, z + H.generators[1])


def test_classify_rational_scaling():
    X = circle(3)
    H = cohomology(X, 1, RATIONALS)
    z = cohomology(X, 1, INTEGERS).generators[0].map_values(Fraction, RATIONALS)
    half = z.scale(Fraction(1, 2))
    free, tors = H.classify(half)
    assert tors == ()
    assert free[0] == Fraction(1, 2) * H.classify(z)[0][0]


def test_classify_rejects_non_cocycle():
    X = circle(3)
    H = cohomology(X, 0, INTEGERS)
    c = Cochain(X, 0, INTEGERS, {"v0": 1})
    with pytest.raises(ValueError):
        H.classify(c)


def test_solve_coboundary_witness():
    rng = random.Random(13)
    X = rp2()
    beta = random_cochain(X, 1, INTEGERS, rng)
    res = solve_coboundary(coboundary(beta))
    assert isinstance(res, CoboundaryWitness)
    assert coboundary(res.primitive) == coboundary(beta)


def test_solve_coboundary_obstruction_integer():
    # the rp2 torsion generator is a rational coboundary but not an integral one
    X = rp2()
    z = cohomology(X, 2, INTEGERS).generators[0]
    res = solve_coboundary(z)
    assert isinstance(res, CoboundaryObstruction)
    assert res.ring == "Z"
    assert res.refutes(z)
    rng = random.Random(29)
    bdry = coboundary(random_cochain(X, 1, INTEGERS, rng))
    assert res.pairing(bdry).denominator == 1
    rat = solve_coboundary(z.map_values(Fraction, RATIONALS))
    assert isinstance(rat, CoboundaryWitness)
    assert coboundary(rat.primitive) == z.map_values(Fraction, RATIONALS)


def test_solve_coboundary_obstruction_rational():
    X = circle(3)
    z = cohomology(X, 1, INTEGERS).generators[0].map_values(Fraction, RATIONALS)
    res = solve_coboundary(z)
    assert isinstance(res, CoboundaryObstruction)
    assert res.ring == "Q"
    assert res.refutes(z)
    # the functional kills every coboundary
    rng = random.Random(19)
    for _ in range(5):
        b = coboundary(random_cochain(X, 0, RATIONALS, rng))
        assert res.pairing(b) == 0


def test_solve_coboundary_mod():
    X = rp2()
    z = cohomology(X, 2, INTEGERS).generators[0]
    z2 = Cochain(X, 2, mod_coefficients(2), {g: v % 2 for g, v in z.values.items()})
    res = solve_coboundary(z2)
    # the mod-2 reduction of the torsion class is nonzero in H^2(rp2; Z/2)
    assert isinstance(res, CoboundaryObstruction)


def test_is_coboundary_degree_zero():
    X = point()
    assert not is_coboundary(Cochain(X, 0, INTEGERS, {"*": 1}))
    assert is_coboundary(Cochain.zero(X, 0, INTEGERS))


def test_solve_closed_extension_cylinder():
    # a closed extension joining equal ends exists; its kernel is end-trivial
    from simdiff.cochains import pullback
    X = torus()
    cyl = cylinder(X, 1)
    z = cohomology(X, 2, INTEGERS).generators[0]
    i0, i1 = cyl.end_inclusions
    pins = face_pins(cyl, {1: z, 0: z})
    res = solve_closed_extension(cyl.complex, 2, pins, INTEGERS)
    assert isinstance(res, PinnedSolution)
    w = res.particular
    assert coboundary(w).is_zero()
    assert pullback(i0, w) == z and pullback(i1, w) == z
    for k in res.kernel[:3]:
        assert coboundary(k).is_zero()
        assert pullback(i0, k).is_zero() and pullback(i1, k).is_zero()


def test_solve_closed_extension_detects_impossible():
    # ends in different classes cannot be joined by a closed extension
    X = torus()
    cyl = cylinder(X, 1)
    z = cohomology(X, 2, INTEGERS).generators[0]
    pins = face_pins(cyl, {1: z, 0: z.scale(2)})
    res = solve_closed_extension(cyl.complex, 2, pins, INTEGERS)
    assert isinstance(res, PinnedObstruction)
    assert res.functional


def test_face_pins_disjoint_ends():
    X = point()
    cyl = cylinder(X, 1)
    a = Cochain(X, 0, INTEGERS, {"*": 1})
    b = Cochain(X, 0, INTEGERS, {"*": 2})
    pins = face_pins(cyl, {0: a, 1: b})
    # ends are disjoint generators, so unequal values on them never clash
    assert len(pins) == 2


def test_face_pins_conflict_on_shared_edge():
    # faces 0 and 1 of Delta^2 share vertex 2; contradictory values there clash
    cyl2 = cylinder(point(), 2)
    wall = cylinder(point(), 1).complex
    v1 = ("*", (), (1,), ())
    F0 = Cochain(wall, 0, INTEGERS, {v1: 1})
    F1 = Cochain(wall, 0, INTEGERS, {v1: 2})
    with pytest.raises(ValueError):
        face_pins(cyl2, {0: F0, 1: F1})
