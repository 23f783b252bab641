"""Acceptance criteria, one test per criterion, each printing a pass line.

All arithmetic is exact; every comparison below is zero-tolerance.  The
stated runtime bounds are asserted as hard limits.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.
"""

import itertools
import random
import time

import pytest

from isogeny_kit import algebras, spin_eight, spin_six
from isogeny_kit.algebras import (
    BiquatAlg,
    EtaleQuad,
    QuatAlg,
    albert_norm,
    quat_to_mat2_tower,
    reduced_norm_A,
    reduced_norm_M2B,
)
from isogeny_kit.exactfield import GF, QQ, square_class
from isogeny_kit.linalg import Mat, berkowitz_det
from isogeny_kit.quadforms import (
    QuadSpace,
    cartan_dieudonne,
    compose_reflections,
    random_isometry,
    reflect,
)
from isogeny_kit.spin_low import Dim2Model, Dim3Model, Dim4Model, isometry_from_images
from isogeny_kit.spin_six import TwistedSpace, cover_act_isometry, dim6d1_lift, ref6d1_map, ref6gen_isometry
from isogeny_kit.spin_eight import (
    Twisted8,
    act8_isometry,
    dim8_lift,
    ref8_apply,
    ref8_lift,
    ref8igen_apply,
    ref8igen_lift,
    triality_kernels,
    vec8_from_coords,
    vec8_space,
    M2A,
    psi,
)
from isogeny_kit.suites import RunConfig, run_suite
from isogeny_kit.towers import QuadTower

F3, F5, F7 = GF(3), GF(5), GF(7)


def report(n, label, elapsed, bound):
    line = "ACCEPTANCE %d (%s): PASS in %.1fs (bound %ds)" % (n, label, elapsed, bound)
    print(line)
    assert elapsed < bound, line


def make_algebra(field):
    n = field.least_nonresidue()
    return BiquatAlg(QuatAlg(field, n, field(-1)), QuatAlg(field, field(1), n))


def test_criterion_1_norm_formulas():
    t0 = time.time()
    rng = random.Random(101)
    # Prop NAexp vs the split-embedding determinant, 500 per prime field
    for field in (F3, F5, F7):
        n = field.least_nonresidue()
        bq = QuatAlg(field, n, field(-1))
        tower = QuadTower(field, [bq.alpha])
        lift = tower.from_scalar
        delta = lift(bq.beta)
        for _ in range(500):
            m = [[bq.elem([rng.randrange(field.p) for _ in range(4)])
                  for _ in range(2)] for _ in range(2)]
            rows = []
            blocks = [[quat_to_mat2_tower(m[i][j], tower, 0, delta, lift)
                       for j in range(2)] for i in range(2)]
            for i in range(2):
                for r in range(2):
                    rows.append(list(blocks[i][0].rows[r])
                                + list(blocks[i][1].rows[r]))
            det = berkowitz_det(Mat(tower, rows))
            assert det.is_scalar()
            assert det.scalar_part() == reduced_norm_M2B(m)
    # 100 over Q at small heights
    bq = QuatAlg(QQ, -1, -1)
    tower = QuadTower(QQ, [bq.alpha])
    lift = tower.from_scalar
    delta = lift(bq.beta)
    for _ in range(100):
        m = [[bq.elem([rng.randint(-2, 2) for _ in range(4)])
              for _ in range(2)] for _ in range(2)]
        rows = []
        blocks = [[quat_to_mat2_tower(m[i][j], tower, 0, delta, lift)
                   for j in range(2)] for i in range(2)]
        for i in range(2):
            for r in range(2):
                rows.append(list(blocks[i][0].rows[r]) + list(blocks[i][1].rows[r]))
        det = berkowitz_det(Mat(tower, rows))
        assert det.is_scalar() and det.scalar_part() == reduced_norm_M2B(m)
    # Cor NAvn2 exhaustively over F3, two algebra instances (729 vectors each)
    for syms in (((2, -1), (1, 1)), ((2, 2), (1, 2))):
        a = BiquatAlg(QuatAlg(F3, *syms[0]), QuatAlg(F3, *syms[1]))
        for coords in itertools.product(range(3), repeat=6):
            u = a.aminus([F3(c) for c in coords[:3]], [F3(c) for c in coords[3:]])
            n = albert_norm(u)
            assert reduced_norm_A(u.embed()) == n * n
    report(1, "norm formulas", time.time() - t0, 10)


def test_criterion_2_cartan_dieudonne_spinor():
    t0 = time.time()
    rng = random.Random(102)

    from isogeny_kit.exactfield import is_square

    def mirror_value(space, mirrors):
        val = space.field(1)
        for v in mirrors:
            val = val * space.vnorm(v)
        return val

    def same_class(x, y):
        # exact square test of the ratio: no factorization needed over Q
        return is_square(x / y)

    for field in (F3, F5, F7, QQ):
        for dim in range(1, 9):
            entries = []
            while len(entries) < dim:
                c = field(rng.randrange(1, field.p)) if field.p \
                    else field(rng.randint(1, 4))
                entries.append(c)
            space = QuadSpace.diagonal(field, entries)
            max_mirrors = None if field.p else dim
            prev = None
            for k in range(200):
                t = random_isometry(space, rng, height=1,
                                    max_mirrors=max_mirrors)
                mirrors = cartan_dieudonne(t)
                assert compose_reflections(space, mirrors) == t
                assert len(mirrors) <= 2 * dim
                sn = mirror_value(space, mirrors)
                if k % 5 == 0:
                    order = list(range(dim))
                    rng.shuffle(order)
                    mirrors2 = cartan_dieudonne(t, pivot_order=order)
                    assert same_class(mirror_value(space, mirrors2), sn)
                if prev is not None and k % 10 == 0:
                    assert same_class(
                        mirror_value(space, cartan_dieudonne(prev[0] * t)),
                        prev[1] * sn)
                prev = (t, sn)
    report(2, "Cartan-Dieudonne + spinor norm", time.time() - t0, 30)


def test_criterion_3_kernels_and_surjectivity():
    t0 = time.time()
    # exhaustive over F3 in dimension 3
    from isogeny_kit.smallfields import enumerate_isometries
    bq = QuatAlg(F3, 2, -1)
    model = Dim3Model(bq)
    ident = Mat.identity(F3, 3)
    images = set()
    kernel = []
    for g in bq.elements():
        if g.norm().is_zero():
            continue
        m = model.act(g)
        images.add(tuple(tuple(e.value for e in row) for row in m.matrix.rows))
        if m.matrix == ident:
            kernel.append(g)
    so = {tuple(tuple(e.value for e in row) for row in i.matrix.rows)
          for i in enumerate_isometries(model.space) if i.det() == F3(1)}
    assert len(so) == 24
    assert images == so
    assert all(all(c.is_zero() for c in g.c[1:]) for g in kernel)
    assert len(kernel) == 2  # F_3^x
    # sampled lifts in dims 4, 6, 8 over F3 and F5
    rng = random.Random(103)
    for field in (F3, F5):
        b4 = QuatAlg(field, field.least_nonresidue(), field(-1))
        m4 = Dim4Model(b4, EtaleQuad(field, field.least_nonresidue()))
        for _ in range(25):
            t = random_isometry(m4.space, rng, special=True)
            g = m4.lift(t)
            assert m4.act(g).matrix == t.matrix
        a = make_algebra(field)
        space6 = a.albert_space()
        for _ in range(15):
            t = random_isometry(space6, rng, special=True)
            x = dim6d1_lift(t, a)
            assert cover_act_isometry(x, space6).matrix == t.matrix
        space8 = vec8_space(a)
        for _ in range(8):
            t = random_isometry(space8, rng, special=True, max_mirrors=6)
            x = dim8_lift(t, a)
            assert act8_isometry(x, space8).matrix == t.matrix
    report(3, "kernel and surjectivity of the actions", time.time() - t0, 60)


def test_criterion_4_dim8_apparatus():
    from tests_helpers import rand_cover  # local helper below via conftest
    t0 = time.time()
    for field in (F3, F5):
        tf0 = time.time()
        a = make_algebra(field)
        rng = random.Random(104)
        space = vec8_space(a)
        # phi: decomposition-independence on 100, multiplicativity on 300
        from isogeny_kit.spin_eight import comp_reparam, gsp_decompose, gsp_membership, phi, _shear_candidates
        for _ in range(100):
            x = rand_cover(a, rng)
            g = x.as_gsp()
            cls = phi(g)
            gf = gsp_decompose(g)
            for w in _shear_candidates(a)[:8]:
                try:
                    gf2, _ = comp_reparam(gf, w)
                except Exception:
                    continue
                assert square_class(reduced_norm_A(gf2.a)) == cls
                break
        for _ in range(300):
            x, y = rand_cover(a, rng, 2), rand_cover(a, rng, 2)
            prod = gsp_membership(x.matrix() * y.matrix())
            assert prod is not None
            assert phi(prod) == phi(x.as_gsp()) * phi(y.as_gsp())
        # psi: order 2, multiplicative, multiplier-commuting (200)
        from isogeny_kit.spin_eight import cover_mul
        for _ in range(200):
            x, y = rand_cover(a, rng, 2), rand_cover(a, rng, 2)
            assert psi(psi(x)) == x
            assert psi(cover_mul(x, y)) == cover_mul(psi(x), psi(y))
            assert psi(x).gf.m == x.gf.m
        # act8 preserves the vector norm on 500 random (g, U)
        from isogeny_kit.spin_eight import act8, hpsi_gsp_relation
        for _ in range(500):
            x = rand_cover(a, rng, 2)
            u = vec8_from_coords(a, [field(rng.randrange(field.p))
                                     for _ in range(8)])
            assert act8(x, u).vnorm() == u.vnorm()
        # hpsiGSprel and GSpprod identities on 200 samples
        for _ in range(200):
            x = rand_cover(a, rng, 2)
            u = vec8_from_coords(a, [field(rng.randrange(field.p))
                                     for _ in range(8)])
            assert hpsi_gsp_relation(x, u)
        from isogeny_kit.spin_eight import D, GSpElem
        checked = 0
        while checked < 200:
            x, y = rand_cover(a, rng, 2), rand_cover(a, rng, 2)
            prod_mat = x.matrix() * y.matrix()
            try:
                gf_prod = gsp_decompose(GSpElem(prod_mat, x.gf.m * y.gf.m),
                                        v_constraints=[x.matrix()])
            except Exception:
                continue
            x2 = x.reparam(gf_prod.v)
            az = x2.gf.alpha + y.gf.v
            x_blk = x2.gf.a * (a.one() + az.embed() * y.gf.beta.embed()) * y.gf.a
            assert x_blk == gf_prod.a
            checked += 1
        assert time.time() - tf0 < 120, "per-field budget"
    report(4, "dim-8 apparatus", time.time() - t0, 240)


def test_criterion_5_reflection_lifts():
    t0 = time.time()
    per_dim = {}
    for field in (F3, F5):
        p = field.p
        rng = random.Random(105)
        n_mirrors = 200

        def clock(name, fn):
            s = time.time()
            fn()
            per_dim[name] = per_dim.get(name, 0.0) + time.time() - s

        def dims234():
            for d in (field(1), field.least_nonresidue()):
                e = EtaleQuad(field, d)
                m2 = Dim2Model(e)
                done = 0
                while done < n_mirrors // 2:
                    coords = [field(rng.randrange(p)) for _ in range(2)]
                    g = m2.from_vec(coords)
                    if g.norm().is_zero():
                        continue
                    assert m2.reflection(g).matrix == reflect(m2.space, coords).matrix
                    done += 1
            bq = QuatAlg(field, field.least_nonresidue(), field(-1))
            m3 = Dim3Model(bq)
            done = 0
            while done < n_mirrors:
                coords = [field(rng.randrange(p)) for _ in range(3)]
                if m3.space.vnorm(coords).is_zero():
                    continue
                assert m3.reflection(m3.from_vec(coords)).matrix \
                    == reflect(m3.space, coords).matrix
                done += 1
            m4 = Dim4Model(bq, EtaleQuad(field, field.least_nonresidue()))
            done = 0
            while done < n_mirrors:
                coords = [field(rng.randrange(p)) for _ in range(4)]
                if m4.space.vnorm(coords).is_zero():
                    continue
                assert m4.reflection(m4.from_vec(coords)).matrix \
                    == reflect(m4.space, coords).matrix
                done += 1

        clock("dims-2-3-4", dims234)
        a = make_algebra(field)

        def dim6():
            space = a.albert_space()
            done = 0
            while done < n_mirrors:
                u = a.aminus([rng.randrange(p) for _ in range(3)],
                             [rng.randrange(p) for _ in range(3)])
                if albert_norm(u).is_zero():
                    continue
                refl = ref6d1_map(u)
                cols = [refl(a.aminus(space.basis_vector(i)[:3],
                                      space.basis_vector(i)[3:])).coords()
                        for i in range(6)]
                assert isometry_from_images(space, cols).matrix \
                    == reflect(space, u.coords()).matrix
                done += 1

        clock("dim-6", dim6)
        e = EtaleQuad(field, field.least_nonresidue())
        q = a.aminus([field.zero()] * 3, [field(1), field.zero(), field.zero()])
        ts = TwistedSpace(a, e, q)

        def dim6tw():
            done = 0
            while done < n_mirrors:
                coords = [field(rng.randrange(p)) for _ in range(6)]
                g = ts.from_vec(coords)
                if ts.vnorm_of(g).is_zero():
                    continue
                assert ref6gen_isometry(ts, g).matrix \
                    == reflect(ts.space, coords).matrix
                done += 1

        clock("dim-6-twisted", dim6tw)

        def dim8():
            space = vec8_space(a)
            done = 0
            while done < n_mirrors:
                coords = [field(rng.randrange(p)) for _ in range(8)]
                g8 = vec8_from_coords(a, coords)
                if g8.vnorm().is_zero():
                    continue
                lift, _ = ref8_lift(g8)
                cols = [ref8_apply(lift, vec8_from_coords(a, space.basis_vector(i))).coords()
                        for i in range(8)]
                assert isometry_from_images(space, cols).matrix \
                    == reflect(space, coords).matrix
                done += 1

        clock("dim-8", dim8)
        tw8 = Twisted8(ts)

        def dim8tw():
            done = 0
            while done < n_mirrors:
                coords = [field(rng.randrange(p)) for _ in range(8)]
                v8 = tw8.from_coords(coords)
                n = v8.vnorm()
                if not n.is_scalar() or n.scalar_part().is_zero():
                    continue
                lift = ref8igen_lift(tw8, v8)
                cols = [tw8.to_coords(ref8igen_apply(
                    tw8, lift, tw8.from_coords(tw8.space.basis_vector(i))))
                    for i in range(8)]
                assert isometry_from_images(tw8.space, cols).matrix \
                    == reflect(tw8.space, coords).matrix
                done += 1

        clock("dim-8-twisted", dim8tw)
    for name, elapsed in per_dim.items():
        assert elapsed < 60, "%s took %.1fs" % (name, elapsed)
    report(5, "reflection lifts agree with quadforms.reflect",
           time.time() - t0, 6 * 60)


def test_criterion_6_triality_kernels():
    t0 = time.time()
    for field in (F3, F5):
        a = make_algebra(field)
        ks = triality_kernels(a)
        minus_one = -a.one()
        assert ks["action"].matrix() == M2A.diag(a, minus_one, minus_one)
        assert psi(ks["action"]).matrix() == M2A.diag(a, minus_one, minus_one)
        assert ks["projection"].matrix() == M2A.identity(a)
        assert psi(ks["projection"]).matrix() == M2A.diag(a, minus_one, minus_one)
        assert ks["psi_projection"].matrix() == M2A.diag(a, minus_one, minus_one)
        assert psi(ks["psi_projection"]).matrix() == M2A.identity(a)
    report(6, "triality kernels", time.time() - t0, 10)


def test_criterion_7_census():
    t0 = time.time()
    from isogeny_kit.smallfields import census, classify_form, explicit_isometry
    rep3 = census(3, 6)
    rows3 = {(r.dim, r.disc_rep): r for r in rep3.rows}
    assert rows3[(2, "2")].so == 4
    assert rows3[(3, "1")].so == 24
    assert rows3[(3, "1")].so_plus == 12
    assert rows3[(3, "1")].so_plus == 3 * (9 - 1) // 2   # |PSL_2(F_3)|
    for rep in (rep3, census(5, 4), census(7, 4)):
        for row in rep.rows:
            if row.dim > 1:
                assert row.so_plus * 2 == row.so
    # explicit isometries whenever (dim, disc) match, dims <= 4 over F3, F5
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
    report(7, "small-field census", time.time() - t0, 120)


def test_criterion_8_mutation_sensitivity(monkeypatch):
    t0 = time.time()
    from isogeny_kit.algebras import AminusVector, albert_pair, albert_norm

    def suites_all_pass():
        config = RunConfig.from_args("p=5", seed=5, trials=6)
        for name in ("normsq", "vnorm8", "GSppsi"):
            try:
                if not run_suite(name, config).passed:
                    return False
            except Exception:
                return False
        return True

    assert suites_all_pass()
    mutations = []
    mutations.append(("theta-drop-minus", "theta",
                      lambda u: AminusVector(u.algebra, list(u.x), list(u.y))))
    mutations.append(("theta-negate-all", "theta",
                      lambda u: AminusVector(u.algebra, [-v for v in u.x],
                                             [-v for v in u.y])))

    def d_bad_pair(eta, omega):
        ring = eta.algebra.ring
        pr = albert_pair(eta, algebras.theta(omega))
        return ring.one() - pr - pr + albert_norm(omega) * albert_norm(eta)

    def d_bad_norm(eta, omega):
        ring = eta.algebra.ring
        pr = albert_pair(eta, algebras.theta(omega))
        return ring.one() + pr + pr - albert_norm(omega) * albert_norm(eta)

    mutations.append(("D-pairing-sign", "D", d_bad_pair))
    mutations.append(("D-norm-sign", "D", d_bad_norm))
    mutations.append(("psi-negate-block", "_psi_diagonal",
                      lambda a, t: (-(a.bar().inverse().scale(t)), t)))
    mutations.append(("psi-negate-root", "_psi_diagonal",
                      lambda a, t: (a.bar().inverse().scale(t), -t)))
    for label, target, fn in mutations:
        with pytest.MonkeyPatch.context() as mp:
            if target == "theta":
                for module in (algebras, spin_six, spin_eight):
                    mp.setattr(module, "theta", fn)
            else:
                mp.setattr(spin_eight, target, fn)
            assert not suites_all_pass(), "mutation %s went undetected" % label
    report(8, "mutation sensitivity", time.time() - t0, 60)
