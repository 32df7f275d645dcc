"""Equivariant quantum cohomology of G/B: Chevalley recursion and products.

A class is a dict ``(WeylElt, qexp) -> Scalar`` where qexp is the exponent
tuple of a q-monomial (coroot coordinates; componentwise >= 0 in the honest
ring, arbitrary after localization).  Multiplication is generated by the
divisor classes: a quantum Schubert polynomial is extracted for each w once
and certified by re-evaluation, after which any product is a composition of
Chevalley operators.
"""

from dataclasses import dataclass
from fractions import Fraction

from .cartan import CorootVec, RootSystem, WeightVec
from .coeffring import Scalar, combo_axpy, scalar_one, weight_diff
from .weyl import WeylElt, chevalley_terms, enumerate_weyl, positive_root_data, weyl_identity

QHClass = dict  # (WeylElt, qexp tuple) -> Scalar


def qh_basis(rs: RootSystem, w: WeylElt, qexp: CorootVec | None = None) -> QHClass:
    return {(w, qexp if qexp is not None else rs.zero_coroot()): scalar_one(rs)}


def chevalley(rs: RootSystem, i: int, sigma: QHClass) -> QHClass:
    """Multiplication by the divisor class sigma^{r_i} (0-based node i)."""
    out: QHClass = {}
    omega = rs.fundamental_weight(i)
    for (w, q), c in sigma.items():
        d = weight_diff(rs, omega, w)
        if d:
            combo_axpy(out, (w, q), c * d)
        ups, quantums = chevalley_terms(rs, w)
        for a, avee, wr in ups:
            k = avee[i]
            if k:
                combo_axpy(out, (wr, q), c * k)
        for a, avee, wr in quantums:
            k = avee[i]
            if k:
                q2 = tuple(x + y for x, y in zip(q, avee))
                combo_axpy(out, (wr, q2), c * k)
    return out


def chevalley_weight(rs: RootSystem, mu: WeightVec, sigma: QHClass) -> QHClass:
    out: QHClass = {}
    for i, m in enumerate(mu):
        if m:
            for k, c in chevalley(rs, i, sigma).items():
                combo_axpy(out, k, c * m)
    return out


@dataclass
class QSchubertPoly:
    """Sum of terms a * q^shift * omega-monomial, given as (qshift, word) -> a.

    Words are sorted tuples of 0-based fundamental-weight indices; evaluating
    the polynomial through the Chevalley operators returns the Schubert class
    it represents, which is asserted at construction time.
    """

    w: WeylElt
    terms: dict  # (qshift tuple, word tuple) -> Scalar


def _poly_mul_var(rs, terms: dict, i: int) -> dict:
    out = {}
    for (q, word), c in terms.items():
        nw = tuple(sorted(word + (i,)))
        combo_axpy(out, (q, nw), c)
    return out


def _poly_scale(terms: dict, s) -> dict:
    out = {}
    for k, c in terms.items():
        combo_axpy(out, k, c * s)
    return out


def _poly_qshift(rs, terms: dict, shift) -> dict:
    out = {}
    for (q, word), c in terms.items():
        combo_axpy(out, (tuple(x + y for x, y in zip(q, shift)), word), c)
    return out


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        combo_axpy(out, k, c)
    return out


def _solve_rational(rows, cols, mat, target):
    """One exact solution x of mat . x = target over Q; free variables 0."""
    m = [[Fraction(mat.get((r, c), 0)) for c in cols] + [Fraction(target.get(r, 0))] for r in rows]
    nr, nc = len(rows), len(cols)
    piv_of_col = {}
    rr = 0
    for c in range(nc):
        piv = next((r for r in range(rr, nr) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rr], m[piv] = m[piv], m[rr]
        p = m[rr][c]
        m[rr] = [x / p for x in m[rr]]
        for r in range(nr):
            if r != rr and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rr])]
        piv_of_col[c] = rr
        rr += 1
        if rr == nr:
            break
    for r in range(nr):
        if all(x == 0 for x in m[r][:nc]) and m[r][nc] != 0:
            raise ValueError("inconsistent linear system in Schubert polynomial extraction")
    sol = [Fraction(0)] * nc
    for c, r in piv_of_col.items():
        sol[c] = m[r][nc]
    return sol


def schubert_poly(rs: RootSystem, w: WeylElt) -> QSchubertPoly:
    """A deterministic equivariant quantum Schubert polynomial for sigma^w."""
    key = ("qschub", w.m)
    hit = rs._cache.get(key)
    if hit is not None:
        return hit

    W = enumerate_weyl(rs)
    by_len: dict[int, list[WeylElt]] = {}
    for u in W:
        by_len.setdefault(u.length(), []).append(u)

    zero_q = rs.zero_coroot()
    polys: dict = {weyl_identity(rs): {(zero_q, ()): scalar_one(rs)}}
    for l in range(1, w.length() + 1):
        layer = by_len[l]
        prev = by_len[l - 1]
        unknowns = [(u, i) for u in prev for i in range(rs.rank)]
        mat = {}
        for (u, i) in unknowns:
            ups, _ = chevalley_terms(rs, u)
            for a, avee, ur in ups:
                if avee[i]:
                    mat[(ur, (u, i))] = mat.get((ur, (u, i)), 0) + avee[i]
        for target in layer:
            if target in polys or target.length() > w.length():
                continue
            sol = _solve_rational(layer, unknowns, mat, {target: 1})
            terms: dict = {}
            for x, (u, i) in zip(sol, unknowns):
                if not x:
                    continue
                # x * omega_i * S_u, minus the equivariant and quantum corrections
                terms = _poly_add(terms, _poly_scale(_poly_mul_var(rs, polys[u], i), x))
                d = weight_diff(rs, rs.fundamental_weight(i), u)
                if d:
                    terms = _poly_add(terms, _poly_scale(polys[u], d * (-x)))
                _, quantums = chevalley_terms(rs, u)
                for a, avee, ur in quantums:
                    k = avee[i]
                    if k:
                        corr = _poly_qshift(rs, polys[ur], avee)
                        terms = _poly_add(terms, _poly_scale(corr, -x * k))
            polys[target] = terms
    terms = polys[w]
    # coefficients may be honestly rational (outside simply-laced types the
    # degree-2 classes need not generate over Z); every evaluated class is
    # integral and products assert that downstream
    poly = QSchubertPoly(w, terms)
    assert evaluate_poly(rs, poly) == qh_basis(rs, w), "Schubert polynomial round-trip failed"
    for (q, _word) in terms:
        assert all(e >= 0 for e in q)
    rs._cache[key] = poly
    return poly


def evaluate_poly(rs: RootSystem, poly: QSchubertPoly) -> QHClass:
    """Image of the polynomial in the quantum ring (the round-trip oracle)."""
    out: QHClass = {}
    for (q, word), c in poly.terms.items():
        cur = qh_basis(rs, weyl_identity(rs))
        for i in word:
            cur = chevalley(rs, i, cur)
        for (v, qv), s in cur.items():
            combo_axpy(out, (v, tuple(x + y for x, y in zip(qv, q))), s * c)
    return out


def product_basis(rs: RootSystem, u: WeylElt, v: WeylElt) -> QHClass:
    """sigma^u * sigma^v."""
    key = ("qhprod", u.m, v.m)
    hit = rs._cache.get(key)
    if hit is not None:
        return hit
    poly = schubert_poly(rs, u)
    out: QHClass = {}
    for (q, word), c in poly.terms.items():
        cur = qh_basis(rs, v)
        for i in word:
            cur = chevalley(rs, i, cur)
        for (x, qx), s in cur.items():
            combo_axpy(out, (x, tuple(a + b for a, b in zip(qx, q))), s * c)
    # rational bookkeeping must cancel: structure constants live in Z[alpha]
    out = {k: c.to_int_coeffs() for k, c in out.items()}
    rs._cache[key] = out
    return out


def product(rs: RootSystem, a: QHClass, b: QHClass) -> QHClass:
    out: QHClass = {}
    for (u, qu), cu in a.items():
        for (v, qv), cv in b.items():
            base = product_basis(rs, u, v)
            c = cu * cv
            shift = tuple(x + y for x, y in zip(qu, qv))
            for (x, qx), s in base.items():
                combo_axpy(out, (x, tuple(p + r for p, r in zip(qx, shift))), s * c)
    return out


def gw_coefficient(rs: RootSystem, u: WeylElt, v: WeylElt, w: WeylElt, lam: CorootVec) -> Scalar:
    return product_basis(rs, u, v).get((w, tuple(lam)), Scalar())


def specialize(rs: RootSystem, sigma: QHClass, mode: str):
    """Evaluation maps: "q1" sets q = 1, "a0" sets alpha = 0, "both" does both."""
    if mode == "q1":
        out = {}
        for (w, q), c in sigma.items():
            combo_axpy(out, w, c)
        return out
    if mode == "a0":
        return {k: c.eval_zero() for k, c in sigma.items() if c.eval_zero()}
    if mode == "both":
        out = {}
        for (w, q), c in sigma.items():
            z = c.eval_zero()
            if z:
                out[w] = out.get(w, 0) + z
        return {k: v for k, v in out.items() if v}
    raise ValueError(f"unknown specialization {mode!r}")


# -- parabolic Chevalley and the Peterson-Woodward lift ----------------------
# These use only the surface of a ParabolicData object (module parabolic).

def parabolic_chevalley(pd, i: int, sigma: QHClass) -> QHClass:
    """Multiplication by sigma_P^{r_i} in QH^T(G/P), i a node outside I_P.

    Keys are (w in W^P, q-exponent tuple over the nodes outside I_P).  The
    quantum summation requires both the quotient-length condition and the
    full-length condition.
    """
    rs = pd.rs
    if i in pd.nodes:
        raise ValueError("Chevalley node must lie outside the parabolic node set")
    out: QHClass = {}
    omega = rs.fundamental_weight(i)
    rp_plus = set(pd.rp_positive)
    for (w, q), c in sigma.items():
        d = weight_diff(rs, omega, w)
        if d:
            combo_axpy(out, (w, q), c * d)
        lw = w.length()
        for a, avee, ra, a2rho in positive_root_data(rs):
            if a in rp_plus or not avee[i]:
                continue
            wr = w * ra
            lwr = wr.length()
            if lwr == lw + 1 and pd.is_minimal_rep(wr):
                combo_axpy(out, (wr, q), c * avee[i])
            if lwr == lw + 1 - a2rho:
                pwr = pd.pi_finite(wr)
                if pwr.length() == lw + 1 - (a2rho - pd.pair_two_rho_p(avee)):
                    q2 = tuple(x + y for x, y in zip(q, pd.eta(avee)))
                    combo_axpy(out, (pwr, q2), c * avee[i])
    return out


def pw_lift(pd, lam_p) -> tuple[CorootVec, frozenset, WeylElt]:
    """Lift a parabolic quantum parameter: returns (lam_B, I_P', w_P w_P').

    lam_B is the unique lift pairing to 0 or -1 against every root of R_P^+.
    """
    rs = pd.rs
    lam = [0] * rs.rank
    for node, c in zip(pd.free_nodes, lam_p):
        lam[node] = c
    lam = tuple(lam)
    v, lam_b, jms = pd.pi_translation_data(lam)
    for a in pd.rp_positive:
        if rs.pair(lam_b, a) not in (0, -1):
            raise AssertionError("lifted parameter pairs outside {0,-1} on R_P^+")
    ipp = frozenset(pd.nodes) - {j for j in jms if j is not None}
    wp = pd.longest_wp()
    wpp = pd.longest_of(ipp)
    assert v == wp * wpp, "component representatives disagree with w_P w_{P'}"
    return lam_b, ipp, v
