"""Form classification, SO+ index, norm surjectivity, and the census."""

import pytest

from isogeny_kit.algebras import EtaleQuad
from isogeny_kit.errors import BudgetExceeded
from isogeny_kit.exactfield import GF
from isogeny_kit.quadforms import QuadSpace, find_isotropic
from isogeny_kit.smallfields import (
    EUCLIDEAN_NOTE,
    census,
    census_space,
    classify_form,
    enumerate_isometries,
    explicit_isometry,
    norm_surjectivity,
    orthogonal_order,
    so_order,
    so_plus_index,
)

F3 = GF(3)
F5 = GF(5)


def test_classify_examples():
    a = QuadSpace.diagonal(F5, [1, 1])
    b = QuadSpace.diagonal(F5, [2, 2])
    assert classify_form(a) == classify_form(b)
    m = explicit_isometry(a, b)
    assert m is not None
    assert m.T * b.gram * m == a.gram
    c = QuadSpace.diagonal(F5, [1])
    d = QuadSpace.diagonal(F5, [2])
    assert classify_form(c) != classify_form(d)
    assert explicit_isometry(c, d) is None


def test_every_dim3_form_isotropic():
    for field in (F3, F5):
        import itertools
        for entries in itertools.product(range(1, field.p), repeat=3):
            s = QuadSpace.diagonal(field, list(entries))
            assert find_isotropic(s) is not None


def test_classification_complete_up_to_dim4():
    """Isometric iff equal (dim, disc), with explicit isometries."""
    import itertools
    for field in (F3, F5):
        for dim in (1, 2, 3, 4):
            reps = {}
            for entries in itertools.product(range(1, field.p), repeat=dim):
                s = QuadSpace.diagonal(field, list(entries))
                key = (dim, classify_form(s)[1].rep)
                if key in reps:
                    m = explicit_isometry(s, reps[key])
                    assert m is not None
                    assert m.T * reps[key].gram * m == s.gram
                else:
                    reps[key] = s
            # distinct classes are never isometric
            keys = list(reps)
            for i in range(len(keys)):
                for j in range(i + 1, len(keys)):
                    assert explicit_isometry(reps[keys[i]], reps[keys[j]]) is None


def test_so_plus_index():
    for field in (F3, F5):
        assert so_plus_index(QuadSpace.diagonal(field, [1]))[0] == 1
        for entries in ([1, 1], [1, field.least_nonresidue().value],
                        [1, 1, 1], [1, 1, 1, 1]):
            idx, witness = so_plus_index(QuadSpace.diagonal(field, entries))
            assert idx == 2 and witness is not None


def test_norm_surjectivity():
    e = EtaleQuad(F3, F3.least_nonresidue())
    wit = norm_surjectivity(e)
    assert sorted(wit) == [1, 2]
    for n, z in wit.items():
        assert z.norm() == F3(n)
    # norms of F-scalars are the squares
    for r in range(1, 3):
        assert e.from_scalar(F3(r)).norm() == F3(r) * F3(r)
    # F9 is quadratically finite: index of squares is 2
    squares = {(z * z) for z in e.elements()}
    units = [z for z in e.elements() if not z.norm().is_zero()]
    sq_units = [z for z in units if z in squares]
    assert len(sq_units) * 2 == len(units)


def test_census_f3():
    rep = census(3, 6)
    rows = {(r.dim, r.disc_rep): r for r in rep.rows}
    assert rows[(2, "2")].so == 4
    assert rows[(3, "1")].so == 24
    assert rows[(3, "1")].so_plus == 12           # |PSL_2(F_3)|
    assert 3 * (9 - 1) == 24                      # |PGL_2(F_3)| oracle
    for r in rep.rows:
        if r.dim > 1:
            assert r.so_plus * 2 == r.so
    assert "spin = Sp_4(F)" in rows[(5, "1")].identification
    text = rep.table()
    assert "census over F_3" in text


def test_census_f5_and_f7():
    rep5 = census(5, 4)
    rows = {(r.dim, r.disc_rep): r for r in rep5.rows}
    assert rows[(3, "1")].so == 5 * 24            # q(q^2-1)
    assert rows[(4, "1")].so == 25 * 576          # q^2 (q^2-1)^2
    rep7 = census(7, 4)
    rows7 = {(r.dim, r.disc_rep): r for r in rep7.rows}
    assert rows7[(2, "1")].so == 6
    assert rows7[(2, "3")].so == 8
    with pytest.raises(BudgetExceeded):
        census(11, 3)


def test_orbit_stabilizer_matches_enumeration():
    for field, dims in ((F3, (2, 3, 4)), (F5, (2, 3))):
        for dim in dims:
            for trivial in ((True,) if dim % 2 else (True, False)):
                space = census_space(field, dim, trivial)
                count = sum(1 for _ in enumerate_isometries(space))
                from isogeny_kit.smallfields import _diag_ints
                diag, _ = _diag_ints(space)
                assert count == orthogonal_order(diag, field.p)
                so = sum(1 for i in enumerate_isometries(space)
                         if i.det() == field(1))
                assert so == so_order(space)


def test_euclidean_note_is_documentation():
    assert "not" in EUCLIDEAN_NOTE or "no machine" in EUCLIDEAN_NOTE


def test_classify_invariant_under_base_change():
    import random
    from isogeny_kit.linalg import Mat
    rng = random.Random(9)
    for _ in range(60):
        dim = rng.randrange(1, 5)
        entries = [rng.randrange(1, 3) for _ in range(dim)]
        s = QuadSpace.diagonal(F3, entries)
        while True:
            p = Mat(F3, [[F3(rng.randrange(3)) for _ in range(dim)]
                         for _ in range(dim)])
            if not p.det().is_zero():
                break
        s2 = QuadSpace(F3, p.T * s.gram * p)
        k1, k2 = classify_form(s), classify_form(s2)
        assert k1[0] == k2[0] and k1[1] == k2[1]
