"""The affine nilHecke ring: A_x basis products, scalar commutation, centrality.

Elements are dicts ``AffineElt -> Scalar`` with coefficients written on the
left of the basis.  The W_af-action on weights is the level-zero one
(translations act trivially, the affine node acts by the highest-root
reflection).
"""

from fractions import Fraction

from .cartan import RootSystem, WeightVec
from .coeffring import Scalar, combo_axpy, root_scalar
from .weyl import (
    AffineElt,
    cocovers,
    cocovers_superregular,
    is_grassmannian,
    length,
    superregular_margin,
)

NilHeckeElt = dict  # AffineElt -> Scalar


def basis_product(x: AffineElt, y: AffineElt, one: Scalar) -> NilHeckeElt:
    """A_x A_y: A_{xy} when the product is length-additive, else 0."""
    if length(x) + length(y) == length(x * y):
        return {x * y: one}
    return {}


def _cocover_pairs(x: AffineElt):
    """Pairs (target, finite coroot of the positive reflection root)."""
    rs = x.rs
    key = ("nh_cocovers", x)
    val = rs._cache.get(key)
    if val is None:
        recs = cocovers_superregular(x, validate=False) if superregular_margin(x) >= 1 else cocovers(x)
        val = tuple((c.target, rs.coroot_of(c.reflection_root.finite)) for c in recs)
        rs._cache[key] = val
    return val


def commute_scalar(rs: RootSystem, x: AffineElt, mu: WeightVec) -> NilHeckeElt:
    """A_x mu = (x . mu) A_x + sum <beta^vee, mu> A_{x r_beta} over cocovers.

    The diagonal coefficient x . mu is a weight; its root-basis coordinates
    may be fractional, so the resulting Scalar can carry Fractions.
    """
    out: NilHeckeElt = {}
    wmu = x.w.act_weight(mu)
    coords = rs.weight_to_root_basis(wmu)
    diag = Scalar.linear(tuple(int(c) if c.denominator == 1 else c for c in coords))
    combo_axpy(out, x, diag)
    for y, bvee in _cocover_pairs(x):
        c = rs.pair_weight(bvee, mu)
        if c:
            combo_axpy(out, y, Scalar.const(c, rs.rank))
    return out


def commutator_with_weight(rs: RootSystem, a: NilHeckeElt, mu: WeightVec) -> NilHeckeElt:
    """mu a - a mu; its coefficients always lie in Z[alpha]."""
    out: NilHeckeElt = {}
    for x, cx in a.items():
        # (mu - x.mu) A_x part
        wmu = x.w.act_weight(mu)
        diff = root_scalar(rs, rs.root_lattice_check(tuple(m - w for m, w in zip(mu, wmu))))
        combo_axpy(out, x, cx * diff)
        for y, bvee in _cocover_pairs(x):
            c = rs.pair_weight(bvee, mu)
            if c:
                combo_axpy(out, y, cx * (-c))
    return out


def is_central(rs: RootSystem, a: NilHeckeElt) -> bool:
    """Whether a commutes with all scalars (generators omega_i suffice)."""
    for i in range(rs.rank):
        if commutator_with_weight(rs, a, rs.fundamental_weight(i)):
            return False
    return True


def _push_variable(rs: RootSystem, a: NilHeckeElt, i: int) -> NilHeckeElt:
    """a . alpha_i with the variable moved to the left."""
    out: NilHeckeElt = {}
    alpha = rs.simple_root(i)
    for x, cx in a.items():
        combo_axpy(out, x, cx * root_scalar(rs, x.w.act_root(alpha)))
        for y, bvee in _cocover_pairs(x):
            c = rs.pair(bvee, alpha)
            if c:
                combo_axpy(out, y, cx * c)
    return out


def scalar_on_right(rs: RootSystem, a: NilHeckeElt, s: Scalar) -> NilHeckeElt:
    """a . s for s in Z[alpha], normalized with all scalars on the left."""
    out: NilHeckeElt = {}
    for exps, coeff in s.terms.items():
        cur = a
        for i, e in enumerate(exps):
            for _ in range(e):
                cur = _push_variable(rs, cur, i)
        for x, cx in cur.items():
            combo_axpy(out, x, cx * coeff)
    return out


def product(rs: RootSystem, a: NilHeckeElt, b: NilHeckeElt) -> NilHeckeElt:
    """Full nilHecke product of left-normalized elements."""
    out: NilHeckeElt = {}
    one = Scalar.const(1, rs.rank)
    for y, cy in b.items():
        moved = scalar_on_right(rs, a, cy)
        ly = length(y)
        for x, cx in moved.items():
            if length(x) + ly == length(x * y):
                combo_axpy(out, x * y, cx)
    return out


def mod_J(a: NilHeckeElt) -> NilHeckeElt:
    """Reduction mod J = sum_{w != id} A_af A_w: keep Grassmannian terms."""
    return {x: c for x, c in a.items() if is_grassmannian(x)}


def act_on_homology(rs: RootSystem, a: NilHeckeElt, xi: dict) -> dict:
    """A_y . xi_z = xi_{yz} when length-additive and yz Grassmannian, else 0."""
    out: dict = {}
    for y, cy in a.items():
        ly = length(y)
        for z, cz in xi.items():
            yz = y * z
            if ly + length(z) == length(yz) and is_grassmannian(yz):
                combo_axpy(out, yz, cy * cz)
    return out


def to_json_list(rs: RootSystem, a: NilHeckeElt) -> list:
    from .weyl import serialize

    items = sorted(a.items(), key=lambda kv: (length(kv[0]), repr(kv[0])))
    return [{"element": serialize(x), "coefficient": str(c)} for x, c in items]
