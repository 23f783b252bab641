"""Dimensions 5 and 6: the metaplectic-like double cover of the norm-square
subgroup of a bi-quaternion algebra acting on the Albert form, Q-stabilizer
groups (dimension 5), and the rho-twisted spaces of general discriminant
(dimension 6) with their t^2-similitude groups.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Tuple

from .algebras import (
    AminusVector,
    BiquatAlg,
    BiquatElem,
    EtaleQuad,
    QuatAlg,
    albert_norm,
    albert_pair,
    reduced_norm_A,
    theta,
)
from .errors import (
    CoverInvariantViolated,
    IsotropicMirror,
    IsotropicQ,
    NonInvertible,
    NotSpecialOrthogonal,
    SearchBudgetExceeded,
)
from .exactfield import Scalar, is_square
from .linalg import Mat
from .quadforms import Isometry, QuadSpace, cartan_dieudonne
from .spin_low import isometry_from_images


class CoveredElem:
    """Pair (g, t) with N_A(g) = t^2, multiplying coordinatewise."""

    __slots__ = ("g", "t")

    def __init__(self, g: BiquatElem, t, check: bool = True):
        self.g = g
        self.t = g.algebra.ring(t)
        if check and reduced_norm_A(g) != self.t * self.t:
            raise CoverInvariantViolated("N(g) != t^2")

    def __mul__(self, other: "CoveredElem") -> "CoveredElem":
        return CoveredElem(self.g * other.g, self.t * other.t, check=False)

    def inverse(self) -> "CoveredElem":
        return CoveredElem(self.g.inverse(), self.t.inverse(), check=False)

    def theta_conj(self) -> "CoveredElem":
        """The order-2 automorphism (g, t) -> (t bar(g)^-1, t)."""
        return CoveredElem(self.g.bar().inverse().scale(self.t), self.t, check=False)

    def act_on(self, u: AminusVector) -> AminusVector:
        """u -> g u bar(g) / t."""
        z = (self.g * u.embed() * self.g.bar()).scale(self.t.inverse())
        return z.to_aminus()

    def __eq__(self, other):
        return isinstance(other, CoveredElem) and self.g == other.g and self.t == other.t

    def __repr__(self):
        return "CoveredElem(%r, t=%s)" % (self.g, self.t)


def cover_from_aminus(v: AminusVector) -> CoveredElem:
    """(g, |g|^2) for invertible g in A^-; N(g) = (|g|^2)^2 makes it valid."""
    n = albert_norm(v)
    if n.is_zero():
        raise IsotropicMirror("vector is not invertible")
    return CoveredElem(v.embed(), n, check=False)


def cover_mul(a: CoveredElem, b: CoveredElem) -> CoveredElem:
    return a * b


def cover_act(a: CoveredElem, u: AminusVector) -> AminusVector:
    return a.act_on(u)


def cover_act_isometry(a: CoveredElem, space: QuadSpace) -> Isometry:
    """Matrix of the action on the Albert basis of A^-."""
    alg = a.g.algebra
    cols = []
    for idx in range(6):
        coords = space.basis_vector(idx)
        u = alg.aminus(coords[:3], coords[3:])
        cols.append(a.act_on(u).coords())
    return isometry_from_images(space, cols)


def ref6d1_map(g: AminusVector) -> Callable[[AminusVector], AminusVector]:
    """u -> g theta(u) bar(g) / |g|^2, the reflection inverting g."""
    n = albert_norm(g)
    if n.is_zero():
        raise IsotropicMirror("mirror is isotropic")
    ge = g.embed()
    ninv = n.inverse()

    def refl(u: AminusVector) -> AminusVector:
        return (ge * theta(u).embed() * ge.bar()).scale(ninv).to_aminus()

    return refl


def ref6d1_lift(g: AminusVector) -> Tuple[CoveredElem, bool]:
    """The cover element (g, |g|^2); composing its action with theta gives
    the reflection in g (flag True = compose with theta first)."""
    return cover_from_aminus(g), True


def pair_lift(v: AminusVector, w: AminusVector) -> CoveredElem:
    """Lift of reflect(v) o reflect(w): (-v theta(w), |v|^2 |w|^2)."""
    nv, nw = albert_norm(v), albert_norm(w)
    if nv.is_zero() or nw.is_zero():
        raise IsotropicMirror("mirror is isotropic")
    return CoveredElem(-(v.embed() * theta(w).embed()), nv * nw, check=False)


def dim6d1_lift(t_iso: Isometry, algebra: BiquatAlg) -> CoveredElem:
    """Cover element acting as t_iso on A^-; t_iso in SO(Albert space)."""
    field = algebra.ring
    if t_iso.det() != field(1):
        raise NotSpecialOrthogonal("determinant is not 1")
    mirrors = cartan_dieudonne(t_iso)
    if len(mirrors) % 2 == 1:
        raise NotSpecialOrthogonal("odd factorization of a rotation")
    acc = CoveredElem(algebra.one(), field(1), check=False)
    for m in range(0, len(mirrors), 2):
        v = algebra.aminus(mirrors[m][:3], mirrors[m][3:])
        w = algebra.aminus(mirrors[m + 1][:3], mirrors[m + 1][3:])
        acc = acc * pair_lift(v, w)
    return acc


def axa_rel_check(g: BiquatElem, u: AminusVector) -> bool:
    """theta(g u bar(g)) == N(g) bar(g)^-1 theta(u) g^-1, exactly."""
    n = reduced_norm_A(g)
    if n.is_zero():
        raise NonInvertible("g must be invertible")
    w = (g * u.embed() * g.bar()).to_aminus()
    lhs = theta(w).embed()
    rhs = (g.bar().inverse() * theta(u).embed() * g.inverse()).scale(n)
    return lhs == rhs


# ---------------------------------------------------------------------------
# dimension 5: stabilizer of an anisotropic Q
# ---------------------------------------------------------------------------

class QStabElem:
    """g in A^x with g Q bar(g) = t Q; N(g) = t^2 holds automatically."""

    __slots__ = ("g", "Q", "t")

    def __init__(self, g: BiquatElem, q: AminusVector, t: Scalar):
        self.g = g
        self.Q = q
        self.t = t

    def as_cover(self) -> CoveredElem:
        return CoveredElem(self.g, self.t, check=False)

    def __repr__(self):
        return "QStabElem(t=%s)" % self.t


def dim5_stabilizer(g: BiquatElem, q: AminusVector) -> Optional[QStabElem]:
    """Multiplier t with g Q bar(g) = t Q, or None when FQ is not preserved."""
    if albert_norm(q).is_zero():
        raise IsotropicQ("Q must be anisotropic")
    w = g * q.embed() * g.bar()
    if not w.in_minus_space():
        return None
    wv = w.to_aminus()
    t = _proportionality(q, wv)
    if t is None:
        return None
    # Lemma AFQAF2: the multiplier squares to the reduced norm
    assert reduced_norm_A(g) == t * t, "N(g) != t(g)^2 on a stabilizer element"
    return QStabElem(g, q, t)


def _proportionality(q: AminusVector, w: AminusVector) -> Optional[Scalar]:
    """t with w = t q, or None."""
    qc, wc = q.coords(), w.coords()
    t = None
    for a, b in zip(qc, wc):
        if a.is_zero():
            if not b.is_zero():
                return None
        else:
            cand = b / a
            if t is None:
                t = cand
            elif t != cand:
                return None
    if t is None:
        return None
    return t


def perp_basis_of_q(albert: QuadSpace, q_coords) -> List[List[Scalar]]:
    """Five independent vectors spanning Q^perp inside the Albert space."""
    field = albert.field
    nq = albert.vnorm(q_coords)
    out = []
    rows = []
    for i in range(6):
        b = albert.basis_vector(i)
        coeff = albert.pairing(b, q_coords) / nq
        w = [x - coeff * y for x, y in zip(b, q_coords)]
        if all(x.is_zero() for x in w):
            continue
        if Mat(field, rows + [w]).rank() == len(rows) + 1:
            rows.append(w)
            out.append(w)
        if len(out) == 5:
            break
    return out


# ---------------------------------------------------------------------------
# dimension 6, general discriminant: the twisted space
# ---------------------------------------------------------------------------

class TwistedSpace:
    """(A_E^-)_(rho,Q): elements u of A_E^- with u^rho = -Q theta(u) Q / |Q|^2.

    Stored as a 6-element F-basis inside A_E plus its Gram matrix, so the
    quadforms machinery applies verbatim.
    """

    def __init__(self, algebra: BiquatAlg, e: EtaleQuad, q: AminusVector):
        if albert_norm(q).is_zero():
            raise IsotropicQ("Q must be anisotropic")
        self.A = algebra
        self.E = e
        self.Q = q
        field = algebra.ring
        self.field = field
        be = QuatAlg(e, e.from_scalar(algebra.B.alpha), e.from_scalar(algebra.B.beta))
        ce = QuatAlg(e, e.from_scalar(algebra.C.alpha), e.from_scalar(algebra.C.beta))
        self.AE = BiquatAlg(be, ce)
        self.QE = self.embed_base(q.embed())
        self.QE_vec = self.QE.to_aminus()
        self.q_norm = albert_norm(q)
        # basis: orthogonal-complement vectors of Q in A^- over F, then h*Q
        albert = algebra.albert_space()
        perp = perp_basis_of_q(albert, q.coords())
        h = e.gen0()
        basis = [self.embed_base(algebra.aminus(v[:3], v[3:]).embed()) for v in perp]
        basis.append(self.QE.scale(h))
        self.basis = basis
        gram = []
        for u in basis:
            row = []
            for v in basis:
                pr = albert_pair(u.to_aminus(), v.to_aminus())
                row.append(self._scalar(pr))
            gram.append(row)
        self.space = QuadSpace(field, Mat(field, gram))
        # coordinate solver: 32 F-coordinates per A_E element
        cols = [self._flatten(b) for b in basis]
        self._solve_mat = Mat(field, [[cols[j][i] for j in range(6)]
                                      for i in range(32)])

    def embed_base(self, x: BiquatElem) -> BiquatElem:
        """A -> A_E coefficientwise."""
        return x.map_coeffs(self.E.from_scalar, self.AE)

    def rho(self, x: BiquatElem) -> BiquatElem:
        return x.map_coeffs(lambda c: c.conj())

    def _scalar(self, z) -> Scalar:
        if not z.is_scalar():
            raise ValueError("E-value is not F-rational")
        return z.scalar_part()

    def _flatten(self, x: BiquatElem) -> List[Scalar]:
        out = []
        for c in x.c:
            a, b = c.coords()
            out.extend((a, b))
        return out

    def contains(self, u: BiquatElem) -> bool:
        """Membership: u in A_E^- and u^rho = -Q theta(u) Q / |Q|^2."""
        if not u.in_minus_space():
            return False
        uv = u.to_aminus()
        rhs = -(self.QE * theta(uv).embed() * self.QE).scale(
            self.AE.ring.from_scalar(self.q_norm.inverse()))
        return self.rho(u) == rhs

    def to_vec(self, u: BiquatElem) -> List[Scalar]:
        sol = self._solve_mat.solve(self._flatten(u))
        if sol is None:
            raise ValueError("element is not in the twisted space")
        return sol

    def from_vec(self, v) -> BiquatElem:
        acc = self.AE.zero()
        for c, b in zip(v, self.basis):
            acc = acc + b.scale(self.E.from_scalar(c))
        return acc

    def vnorm_of(self, u: BiquatElem) -> Scalar:
        return self._scalar(albert_norm(u.to_aminus()))

    def qtheta_map(self, u: BiquatElem) -> BiquatElem:
        """u -> -Q theta(u) Q / |Q|^2; acts on the twisted space as rho."""
        uv = u.to_aminus()
        return -(self.QE * theta(uv).embed() * self.QE).scale(
            self.AE.ring.from_scalar(self.q_norm.inverse()))


class RhoQGroupElem:
    """g in A_(E,rho,FQ)^(t^2): g Q bar(g)^rho = t Q with t in F^x and
    N_(A_E)(g) = t^2."""

    __slots__ = ("g", "t", "ts")

    def __init__(self, g: BiquatElem, t: Scalar, ts: TwistedSpace):
        self.g = g
        self.t = t
        self.ts = ts

    def act_on(self, u: BiquatElem) -> BiquatElem:
        """u -> g u bar(g) / t; preserves the twisted space."""
        e_t = self.ts.E.from_scalar(self.t)
        return (self.g * u * self.g.bar()).scale(e_t.inverse())

    def act_isometry(self) -> Isometry:
        cols = [self.ts.to_vec(self.act_on(self.ts.from_vec(self.ts.space.basis_vector(i))))
                for i in range(6)]
        return isometry_from_images(self.ts.space, cols)

    def __repr__(self):
        return "RhoQGroupElem(t=%s)" % self.t


def rhoQ_membership(ts: TwistedSpace, g: BiquatElem) -> Optional[RhoQGroupElem]:
    """Test g Q bar(g)^rho = t Q (t in F^x) and N(g) = t^2."""
    w = g * ts.QE * ts.rho(g.bar())
    if not w.in_minus_space():
        return None
    t_e = _proportionality(ts.QE_vec, w.to_aminus())
    if t_e is None or not t_e.is_scalar():
        return None
    t = t_e.scalar_part()
    if t.is_zero():
        return None
    n = reduced_norm_A(g)
    if n != ts.E.from_scalar(t * t):
        return None
    return RhoQGroupElem(g, t, ts)


def rhoQ_act(elem: RhoQGroupElem, u: BiquatElem) -> BiquatElem:
    return elem.act_on(u)


def ref6gen_lift(ts: TwistedSpace, g: BiquatElem):
    """Reflection in anisotropic g of the twisted space, as the composite
    of the Qtheta map with the action of g h Q^{-1} (Lemma-level recipe).

    Returns (member, refl) with member = rhoQ_membership(g h Q^-1) and
    refl the composed map on A_E elements.
    """
    ng = ts.vnorm_of(g)
    if ng.is_zero():
        raise IsotropicMirror("mirror is isotropic")
    if not ts.contains(g):
        raise ValueError("mirror is not in the twisted space")
    h = ts.E.gen0()
    q_inv = ts.QE.inverse()
    ghq = g.scale(h) * q_inv
    member = rhoQ_membership(ts, ghq)
    if member is None:
        raise ValueError("g h Q^-1 failed the similitude test")

    def refl(u: BiquatElem) -> BiquatElem:
        return member.act_on(ts.qtheta_map(u))

    return member, refl


def ref6gen_isometry(ts: TwistedSpace, g: BiquatElem) -> Isometry:
    _, refl = ref6gen_lift(ts, g)
    cols = [ts.to_vec(refl(ts.from_vec(ts.space.basis_vector(i))))
            for i in range(6)]
    return isometry_from_images(ts.space, cols)


def qtheta_cover_conj(ts: TwistedSpace, x: CoveredElem) -> CoveredElem:
    """(g, t) -> (t Q bar(g)^-1 Q^-1, t): conjugation by (Q,|Q|^2)theta~."""
    q, qi = ts.QE, ts.QE.inverse()
    return CoveredElem(
        (q * x.g.bar().inverse() * qi).scale(x.t), x.t, check=False)


# ---------------------------------------------------------------------------
# norms of M_2(B)
# ---------------------------------------------------------------------------

def norm_group_M2B(b: QuatAlg, budget: int = 200) -> Callable[[Scalar], bool]:
    """Membership predicate for N_(M_2(B))(M_2(B)^x) = N_B(B^x).

    F_p: every nonzero scalar.  Q, definite symbol: positivity.  Q,
    otherwise: bounded search for a representation, raising
    SearchBudgetExceeded when inconclusive.
    """
    field = b.ring

    def pred(x: Scalar) -> bool:
        x = field(x)
        if x.is_zero():
            return False
        if field.p is not None:
            return True
        if b.alpha.value < 0 and b.beta.value < 0:
            return x.value > 0  # norms are sums of four squares (scaled)
        if is_square(x):
            return True
        space = b.norm_form()
        bound = 8
        tried = 0
        for c0 in range(-bound, bound + 1):
            for c1 in range(-bound, bound + 1):
                for c2 in range(-bound, bound + 1):
                    for c3 in range(-bound, bound + 1):
                        tried += 1
                        if tried > budget * 1000:
                            raise SearchBudgetExceeded("norm representation search")
                        v = [field(c0), field(c1), field(c2), field(c3)]
                        if space.vnorm(v) == x:
                            return True
        raise SearchBudgetExceeded("norm representation not found")

    return pred
