"""Affine Bruhat operators, the Peterson subalgebra, and the homology ring.

The near/far operators act on free S-modules over superregular affine
elements (plain dicts ``AffineElt -> Scalar``); iterating the near operator
over a Weyl-orbit of translations produces central elements, from which
the affine Schubert classes, their products, and the isomorphism onto the
localized quantum ring are computed.
"""

from dataclasses import dataclass

from .cartan import CorootVec, RootSystem, WeightVec
from .coeffring import Scalar, combo_axpy, combo_scale, root_scalar, scalar_one, weight_diff
from .nilhecke import NilHeckeElt, act_on_homology, is_central, mod_J
from .quantum import QHClass, schubert_poly
from .weyl import (
    AffineElt,
    WeylElt,
    affine_simple_reflection,
    chamber_decompose,
    chevalley_terms,
    descent_terms,
    enumerate_weyl,
    is_grassmannian,
    is_superregular,
    length,
    reflection_of,
    superregular_antidominant,
    translation,
    weyl_identity,
)

GroupAlgebraElt = dict  # AffineElt -> Scalar


class BudgetError(RuntimeError):
    """A superregularity budget was exhausted."""


def _require_margin(x: AffineElt, units: int = 1):
    if not is_superregular(x, slack=4 * units):
        raise BudgetError(f"superregularity budget exhausted at {x!r}")


def _near_covers(rs: RootSystem, x: AffineElt):
    """Near cocovers of superregular x = w t_{v lam}: list of (avee, y, case)."""
    v, lam = chamber_decompose(rs, x.t)
    wv = x.w * v
    vinv = v.inverse()
    out = []
    ups, quantums = chevalley_terms(rs, wv)
    for a, avee, wvr in ups:  # case 1: translation unchanged
        out.append((avee, AffineElt(wvr * vinv, x.t), 1))
    for a, avee, wvr in quantums:  # case 2: lam gains alpha^vee
        t2 = tuple(p + q for p, q in zip(x.t, v.act_coroot(avee)))
        out.append((avee, AffineElt(wvr * vinv, t2), 2))
    return v, wv, out


def _far_covers(rs: RootSystem, x: AffineElt):
    """Far cocovers of superregular x: list of (avee, y, case)."""
    v, lam = chamber_decompose(rs, x.t)
    out = []
    downs, qups = descent_terms(rs, v)
    for a, avee, vr in downs:  # case 3
        y = AffineElt(x.w * reflection_of(rs, v.act_root(a)), vr.act_coroot(lam))
        out.append((avee, y, 3))
    for a, avee, vr in qups:  # case 4
        lam2 = tuple(p + q for p, q in zip(lam, avee))
        y = AffineElt(x.w * reflection_of(rs, v.act_root(a)), vr.act_coroot(lam2))
        out.append((avee, y, 4))
    return v, out


def b_op(rs: RootSystem, mu: WeightVec, f: GroupAlgebraElt) -> GroupAlgebraElt:
    """Near equivariant affine Bruhat operator B^mu."""
    out: GroupAlgebraElt = {}
    for x, c in f.items():
        _require_margin(x)
        v, wv, covers = _near_covers(rs, x)
        diag = weight_diff(rs, mu, wv)
        if diag:
            combo_axpy(out, x, c * diag)
        for avee, y, _case in covers:
            k = rs.pair_weight(avee, mu)
            if k:
                combo_axpy(out, y, c * k)
    return out


def c_op(rs: RootSystem, mu: WeightVec, f: GroupAlgebraElt) -> GroupAlgebraElt:
    """Far equivariant affine Bruhat operator C^mu."""
    out: GroupAlgebraElt = {}
    for x, c in f.items():
        _require_margin(x)
        v, covers = _far_covers(rs, x)
        diag = weight_diff(rs, mu, v)
        if diag:
            combo_axpy(out, x, c * diag)
        for avee, y, _case in covers:
            k = rs.pair_weight(avee, mu)
            if k:
                combo_axpy(out, y, c * k)
    return out


def _weight_pair_diff(rs: RootSystem, mu1, w1: WeylElt, w2: WeylElt) -> Scalar:
    """w1 mu - w2 mu as a Scalar."""
    d = tuple(a - b for a, b in zip(w1.act_weight(mu1), w2.act_weight(mu1)))
    return root_scalar(rs, rs.root_lattice_check(d))


def twisted_b(rs: RootSystem, mu: WeightVec, f: GroupAlgebraElt) -> GroupAlgebraElt:
    """Twisted near operator: diagonal (v^{-1} mu - w mu), weights <v alpha^vee, mu>."""
    out: GroupAlgebraElt = {}
    for x, c in f.items():
        _require_margin(x)
        v, wv, covers = _near_covers(rs, x)
        diag = _weight_pair_diff(rs, mu, v.inverse(), x.w)
        if diag:
            combo_axpy(out, x, c * diag)
        for avee, y, _case in covers:
            k = rs.pair_weight(v.act_coroot(avee), mu)
            if k:
                combo_axpy(out, y, c * k)
    return out


def twisted_c(rs: RootSystem, mu: WeightVec, f: GroupAlgebraElt) -> GroupAlgebraElt:
    """Twisted far operator: diagonal (v^{-1} mu - mu), minus sign on the sum."""
    out: GroupAlgebraElt = {}
    for x, c in f.items():
        _require_margin(x)
        v, covers = _far_covers(rs, x)
        diag = _weight_pair_diff(rs, mu, v.inverse(), weyl_identity(rs))
        if diag:
            combo_axpy(out, x, c * diag)
        for avee, y, _case in covers:
            k = rs.pair_weight(v.act_coroot(avee), mu)
            if k:
                combo_axpy(out, y, c * (-k))
    return out


def upsilon(f: GroupAlgebraElt) -> NilHeckeElt:
    """The left S-module identification x -> A_x."""
    return dict(f)


def sum_translations(rs: RootSystem, lam: CorootVec) -> GroupAlgebraElt:
    """sum_{w in W} t_{w lam}."""
    out: GroupAlgebraElt = {}
    one = scalar_one(rs)
    for w in enumerate_weyl(rs):
        combo_axpy(out, translation(rs, w.act_coroot(lam)), one)
    return out


def theta_map(rs: RootSystem, w: WeylElt, lam: CorootVec, sigma: QHClass) -> GroupAlgebraElt:
    """Theta_w^lam: q_mu sigma^v -> v w^{-1} t_{w(lam + mu)}; needs lam-small sigma."""
    out: GroupAlgebraElt = {}
    winv = w.inverse()
    for (v, q), c in sigma.items():
        shifted = tuple(l + m for l, m in zip(lam, q))
        if not (rs.is_antidominant(shifted) and is_superregular(translation(rs, shifted))):
            raise BudgetError("class is not lam-small for this lam")
        combo_axpy(out, AffineElt(v * winv, w.act_coroot(shifted)), c)
    return out


def b_element(rs: RootSystem, lam: CorootVec, mu_seq) -> NilHeckeElt:
    """b(lam; mu^1..mu^k) = Upsilon(B^{mu^k} ... B^{mu^1} sum_w t_{w lam}); central."""
    x0 = translation(rs, lam)
    if not rs.is_antidominant(lam):
        raise ValueError("lam must be antidominant")
    _require_margin(x0, units=len(mu_seq))
    f = sum_translations(rs, lam)
    for mu in mu_seq:
        f = b_op(rs, mu, f)
    a = upsilon(f)
    assert is_central(rs, a), "b element failed centrality"
    return a


def j_units_needed(rs: RootSystem, w: WeylElt) -> int:
    """Margin units a j-class computation for w t_lam consumes.

    Each operator application costs one unit; the q-shifts in the Schubert
    polynomial move lam away from the deep chamber and are charged too.
    """
    poly = schubert_poly(rs, w)
    worst = 1
    for (qshift, word) in poly.terms:
        qpair = max((abs(rs.pair(qshift, a)) for a in rs.positive_roots), default=0)
        worst = max(worst, len(word) + (qpair + 3) // 4 + 1)
    return worst


def j_class(rs: RootSystem, x: AffineElt) -> NilHeckeElt:
    """j(xi_x) for Grassmannian superregular x, via quantum Schubert polynomials.

    Characterized by centrality plus Grassmannian part exactly A_x; both are
    asserted.  Coefficients are integral polynomials in the simple roots.
    """
    key = ("jclass", x)
    hit = rs._cache.get(key)
    if hit is not None:
        return hit
    if not is_grassmannian(x):
        raise ValueError("j classes are indexed by Grassmannian elements")
    w = x.w
    lam = x.t
    _require_margin(x, units=j_units_needed(rs, w))
    poly = schubert_poly(rs, w)
    out: NilHeckeElt = {}
    for (qshift, word), a in poly.terms.items():
        shifted = tuple(l + s for l, s in zip(lam, qshift))
        b = b_element(rs, shifted, [rs.fundamental_weight(i) for i in word])
        for k, c in combo_scale(b, a).items():
            combo_axpy(out, k, c)
    out = {k: c.to_int_coeffs() for k, c in out.items()}
    assert mod_J(out) == {x: scalar_one(rs)}, "j class Grassmannian part is not A_x"
    assert is_central(rs, out), "j class is not central"
    rs._cache[key] = out
    return out


@dataclass
class HomologyClass:
    """S-combination of Grassmannian Schubert classes over xi_{t_denom}^{-1}."""

    rs: RootSystem
    terms: dict  # AffineElt -> Scalar
    denom: CorootVec = None

    def __post_init__(self):
        if self.denom is None:
            self.denom = self.rs.zero_coroot()
        assert self.rs.is_antidominant(self.denom)
        for x in self.terms:
            assert is_grassmannian(x), f"{x!r} is not Grassmannian"

    def rebase(self, new_denom: CorootVec) -> "HomologyClass":
        shift = tuple(a - b for a, b in zip(new_denom, self.denom))
        if not self.rs.is_antidominant(shift):
            raise ValueError("can only rebase to a deeper denominator")
        if not any(shift):
            return self
        terms = {x.translate(shift): c for x, c in self.terms.items()}
        return HomologyClass(self.rs, terms, tuple(new_denom))

    def __eq__(self, other):
        if not isinstance(other, HomologyClass):
            return NotImplemented
        common = tuple(a + b for a, b in zip(self.denom, other.denom))
        return self.rebase(common).terms == other.rebase(common).terms


def hom_basis(rs: RootSystem, x: AffineElt) -> HomologyClass:
    return HomologyClass(rs, {x: scalar_one(rs)})


def hom_product_basis(rs: RootSystem, x: AffineElt, z: AffineElt) -> dict:
    """xi_x xi_z as an honest class: dict AffineElt -> Scalar.

    When x is not superregular enough both sides are translated by a deep
    antidominant kappa and the support is shifted back at the end.
    """
    if not (is_grassmannian(x) and is_grassmannian(z)):
        raise ValueError("homology product needs Grassmannian inputs")
    units = j_units_needed(rs, x.w)
    if is_superregular(x, slack=4 * units):
        kappa = rs.zero_coroot()
        xs = x
    else:
        kappa = superregular_antidominant(rs, units=units)
        xs = x.translate(kappa)
    j = j_class(rs, xs)
    t = act_on_homology(rs, j, {z: scalar_one(rs)})
    if not any(kappa):
        return t
    back = tuple(-k for k in kappa)
    out = {}
    for y, c in t.items():
        yb = y.translate(back)
        assert is_grassmannian(yb), "translated product term failed to shift back"
        out[yb] = c
    return out


def hom_product(a: HomologyClass, b: HomologyClass) -> HomologyClass:
    rs = a.rs
    out: dict = {}
    for x, cx in a.terms.items():
        for z, cz in b.terms.items():
            base = hom_product_basis(rs, x, z)
            c = cx * cz
            for y, cy in base.items():
                combo_axpy(out, y, cy * c)
    denom = tuple(p + q for p, q in zip(a.denom, b.denom))
    return HomologyClass(rs, out, denom)


def psi_map(h: HomologyClass) -> QHClass:
    """xi_{w t_lam} xi_{t_nu}^{-1} -> q_{lam - nu} sigma^w."""
    rs = h.rs
    out: QHClass = {}
    for x, c in h.terms.items():
        q = tuple(a - b for a, b in zip(x.t, h.denom))
        combo_axpy(out, (x.w, q), c)
    return out


def psi_inverse(rs: RootSystem, sigma: QHClass) -> HomologyClass:
    """Right inverse of psi_map; picks a deep enough common denominator."""
    nu = superregular_antidominant(rs, units=1)
    scale = 1
    while True:
        nus = tuple(scale * c for c in nu)
        ok = True
        for (w, q) in sigma:
            shifted = tuple(a + b for a, b in zip(q, nus))
            if not (rs.is_antidominant(shifted) and rs.is_regular(shifted)):
                ok = False
                break
        if ok:
            break
        scale *= 2
    terms = {}
    for (w, q), c in sigma.items():
        shifted = tuple(a + b for a, b in zip(q, nus))
        combo_axpy(terms, AffineElt(w, shifted), c)
    return HomologyClass(rs, terms, nus)


def j_from_gw(rs: RootSystem, x: AffineElt, y: AffineElt) -> Scalar:
    """j^y_x from the quantum side: c_{w,v}^{uv, v^{-1}nu - lam}."""
    from .quantum import gw_coefficient

    if not is_grassmannian(x):
        raise ValueError("x must be Grassmannian")
    if not is_superregular(y):
        raise ValueError("y must be superregular")
    v, nu_anti = chamber_decompose(rs, y.t)
    shift = tuple(a - b for a, b in zip(nu_anti, x.t))
    if any(c < 0 for c in shift):
        return Scalar()
    return gw_coefficient(rs, x.w, v, y.w * v, shift)


def gw_from_j(rs: RootSystem, f: WeylElt, g: WeylElt, h: WeylElt, eta: CorootVec) -> Scalar:
    """c_{f,g}^{h,eta} as the j-coefficient j_{f t_lam}^{h g^{-1} t_{g(eta+lam)}}."""
    pad = max((abs(rs.pair(eta, a)) for a in rs.positive_roots), default=0)
    lam = superregular_antidominant(rs, units=j_units_needed(rs, f), shift=pad + 4)
    x = AffineElt(f, lam)
    j = j_class(rs, x)
    target = AffineElt(h * g.inverse(), g.act_coroot(tuple(e + l for e, l in zip(eta, lam))))
    return j.get(target, Scalar())


def pieri_r0(rs: RootSystem, xi: dict) -> dict:
    """Non-equivariant Pieri: xi_{r_0} . xi_x = sum a_i^vee xi_{r_i x}.

    Input and output are integer combinations ``AffineElt -> int``.
    """
    out: dict = {}
    for x, c in xi.items():
        if not is_grassmannian(x):
            raise ValueError("Pieri input must be Grassmannian")
        lx = length(x)
        for i in range(rs.rank + 1):
            y = affine_simple_reflection(rs, i) * x
            if length(y) == lx + 1 and is_grassmannian(y):
                out[y] = out.get(y, 0) + rs.comarks[i] * c
    return {k: v for k, v in out.items() if v}
