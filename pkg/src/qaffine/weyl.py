"""Finite and affine Weyl group arithmetic.

A finite element is stored as its integer action matrix on the root lattice
(columns = images of the simple roots); equality is structural.  An affine
element ``w t_lam`` pairs a finite element with a coroot-lattice translation.
"""

from dataclasses import dataclass
from math import gcd

from .cartan import AffineRoot, CorootVec, RootSystem, RootVec


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class WeylElt:
    """Element of the finite Weyl group W."""

    __slots__ = ("rs", "m", "minv", "mc", "mcinv", "_hash")

    def __init__(self, rs: RootSystem, m, minv, mc, mcinv):
        self.rs = rs
        self.m = m
        self.minv = minv
        self.mc = mc
        self.mcinv = mcinv
        self._hash = hash(m)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.m == other.m and self.rs is other.rs

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return WeylElt(
            self.rs,
            _mat_mul(self.m, other.m),
            _mat_mul(other.minv, self.minv),
            _mat_mul(self.mc, other.mc),
            _mat_mul(other.mcinv, self.mcinv),
        )

    def inverse(self) -> "WeylElt":
        return WeylElt(self.rs, self.minv, self.m, self.mcinv, self.mc)

    def is_identity(self) -> bool:
        return self.m == _identity(self.rs.rank)

    # actions
    def act_root(self, v: RootVec) -> RootVec:
        return _mat_vec(self.m, v)

    def inv_act_root(self, v: RootVec) -> RootVec:
        return _mat_vec(self.minv, v)

    def act_coroot(self, lam: CorootVec) -> CorootVec:
        return _mat_vec(self.mc, lam)

    def inv_act_coroot(self, lam: CorootVec) -> CorootVec:
        return _mat_vec(self.mcinv, lam)

    def act_weight(self, mu) -> tuple:
        # (w mu)_i = <w^{-1} alpha_i^vee, mu>
        n = self.rs.rank
        mcinv = self.mcinv
        return tuple(sum(mcinv[j][i] * mu[j] for j in range(n)) for i in range(n))

    def length(self) -> int:
        cache = self.rs._cache
        key = ("wlen", self.m)
        val = cache.get(key)
        if val is None:
            val = sum(1 for a in self.rs.positive_roots if not _pos(self.act_root(a)))
            cache[key] = val
        return val

    def neg_set(self) -> tuple[bool, ...]:
        """For each positive root alpha (in rs order), whether w.alpha < 0."""
        cache = self.rs._cache
        key = ("negset", self.m)
        val = cache.get(key)
        if val is None:
            val = tuple(not _pos(self.act_root(a)) for a in self.rs.positive_roots)
            cache[key] = val
        return val

    def word(self) -> tuple[int, ...]:
        """A reduced word over I (indices 0-based into the simple roots)."""
        out = []
        x = self
        while True:
            for i in range(self.rs.rank):
                if not _pos(x.act_root(self.rs.simple_root(i))):
                    out.append(i)
                    x = x * simple_reflection(self.rs, i)
                    break
            else:
                break
        out.reverse()
        assert len(out) == self.length()
        return tuple(out)

    def __repr__(self):
        w = self.word()
        return "id" if not w else " ".join(f"s{i + 1}" for i in w)


def _pos(v) -> bool:
    return any(c > 0 for c in v)


def weyl_identity(rs: RootSystem) -> WeylElt:
    key = ("wid",)
    e = rs._cache.get(key)
    if e is None:
        m = _identity(rs.rank)
        e = WeylElt(rs, m, m, m, m)
        rs._cache[key] = e
    return e


def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    key = ("sref", i)
    e = rs._cache.get(key)
    if e is None:
        m = rs.refl_root_mats[i]
        mc = rs.refl_coroot_mats[i]
        e = WeylElt(rs, m, m, mc, mc)
        rs._cache[key] = e
    return e


def reflection_of(rs: RootSystem, alpha: RootVec) -> WeylElt:
    """The reflection r_alpha for a root alpha (either sign)."""
    key = ("refl", alpha)
    e = rs._cache.get(key)
    if e is None:
        if not rs.is_root(alpha):
            raise ValueError(f"{alpha} is not a root")
        avee = rs.coroot_of(alpha)
        n = rs.rank
        prow = rs.root_pairing_row(alpha)
        # r_alpha(alpha_j) = alpha_j - <alpha^vee, alpha_j> alpha
        m = tuple(
            tuple(int(k == j) - rs.pair(avee, rs.simple_root(j)) * alpha[k] for j in range(n)) for k in range(n)
        )
        # r_alpha(alpha_j^vee) = alpha_j^vee - <alpha_j^vee, alpha> alpha^vee
        mc = tuple(tuple(int(k == j) - prow[j] * avee[k] for j in range(n)) for k in range(n))
        e = WeylElt(rs, m, m, mc, mc)
        rs._cache[key] = e
    return e


def from_word(rs: RootSystem, word) -> WeylElt:
    x = weyl_identity(rs)
    for i in word:
        x = x * simple_reflection(rs, i)
    return x


def enumerate_weyl(rs: RootSystem, cap: int = 100000) -> list[WeylElt]:
    """All elements of W, BFS order by length."""
    key = ("W",)
    lst = rs._cache.get(key)
    if lst is None:
        if rs.weyl_order > cap:
            raise ValueError(f"|W| = {rs.weyl_order} too large to enumerate")
        gens = [simple_reflection(rs, i) for i in range(rs.rank)]
        seen = {weyl_identity(rs).m: weyl_identity(rs)}
        frontier = [weyl_identity(rs)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y.m not in seen:
                        seen[y.m] = y
                        nxt.append(y)
            frontier = nxt
        lst = sorted(seen.values(), key=lambda w: (w.length(), w.m))
        assert len(lst) == rs.weyl_order
        rs._cache[key] = lst
    return lst


def longest_element(rs: RootSystem) -> WeylElt:
    key = ("w0",)
    w0 = rs._cache.get(key)
    if w0 is None:
        w0 = max(enumerate_weyl(rs), key=lambda w: w.length())
        rs._cache[key] = w0
    return w0


def positive_root_data(rs: RootSystem):
    """List of (alpha, alpha_vee, r_alpha, <alpha^vee, 2 rho>) over R^+."""
    key = ("prd",)
    data = rs._cache.get(key)
    if data is None:
        data = tuple(
            (a, rs.coroot_of(a), reflection_of(rs, a), 2 * sum(rs.coroot_of(a))) for a in rs.positive_roots
        )
        rs._cache[key] = data
    return data


class AffineElt:
    """Element w t_lam of the affine Weyl group W_af = W x Q^vee."""

    __slots__ = ("w", "t", "_hash")

    def __init__(self, w: WeylElt, t: CorootVec):
        self.w = w
        self.t = t
        self._hash = hash((w._hash, t))

    def __eq__(self, other):
        return isinstance(other, AffineElt) and self.t == other.t and self.w == other.w

    def __hash__(self):
        return self._hash

    @property
    def rs(self) -> RootSystem:
        return self.w.rs

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        # (w1 t_lam1)(w2 t_lam2) = w1 w2 t_{w2^{-1} lam1 + lam2}
        lam = other.w.inv_act_coroot(self.t)
        return AffineElt(self.w * other.w, tuple(a + b for a, b in zip(lam, other.t)))

    def inverse(self) -> "AffineElt":
        return AffineElt(self.w.inverse(), tuple(-c for c in self.w.act_coroot(self.t)))

    def is_identity(self) -> bool:
        return self.w.is_identity() and not any(self.t)

    def act(self, beta: AffineRoot) -> AffineRoot:
        # (w t_lam)(mu + n delta) = w mu + (n - <lam, mu>) delta
        return AffineRoot(self.w.act_root(beta.finite), beta.level - self.rs.pair(self.t, beta.finite))

    def translate(self, lam: CorootVec) -> "AffineElt":
        """Right multiplication by t_lam."""
        return AffineElt(self.w, tuple(a + b for a, b in zip(self.t, lam)))

    def __repr__(self):
        return f"{self.w!r} t{list(self.t)}"


def affine_identity(rs: RootSystem) -> AffineElt:
    return AffineElt(weyl_identity(rs), rs.zero_coroot())


def translation(rs: RootSystem, lam: CorootVec) -> AffineElt:
    return AffineElt(weyl_identity(rs), tuple(lam))


def affine_simple_reflection(rs: RootSystem, i: int) -> AffineElt:
    """r_i for i in I_af, with r_0 = r_theta t_{-theta^vee}."""
    if i == 0:
        return AffineElt(reflection_of(rs, rs.theta), tuple(-c for c in rs.theta_vee))
    return AffineElt(simple_reflection(rs, i - 1), rs.zero_coroot())


def affine_from_word(rs: RootSystem, word) -> AffineElt:
    x = affine_identity(rs)
    for i in word:
        x = x * affine_simple_reflection(rs, i)
    return x


def reflection_of_affine(rs: RootSystem, beta: AffineRoot) -> AffineElt:
    """r_{alpha + n delta} = r_alpha t_{n alpha^vee}."""
    avee = rs.coroot_of(beta.finite)
    return AffineElt(reflection_of(rs, beta.finite), tuple(beta.level * c for c in avee))


def length(x: AffineElt) -> int:
    rs = x.rs
    neg = x.w.neg_set()
    tot = 0
    for k, a in enumerate(rs.positive_roots):
        tot += abs(int(neg[k]) + rs.pair(x.t, a))
    return tot


def is_grassmannian(x: AffineElt) -> bool:
    """Minimum length in the coset x W: antidominant translation, minimal w."""
    rs = x.rs
    for i in range(rs.rank):
        p = rs.pair(x.t, rs.simple_root(i))
        if p > 0:
            return False
        if p == 0 and not _pos(x.w.act_root(rs.simple_root(i))):
            return False
    return True


def length_regular(u: WeylElt, w: WeylElt, lam: CorootVec) -> int:
    """l(u t_{w lam}) for regular antidominant lam, via the closed formula."""
    rs = u.rs
    if not (rs.is_antidominant(lam) and rs.is_regular(lam)):
        raise ValueError("lam must be regular antidominant")
    val = length(translation(rs, lam)) - (u * w).length() + w.length()
    assert val == length(AffineElt(u, w.act_coroot(lam)))
    return val


def inversions(x: AffineElt) -> list[AffineRoot]:
    """All positive affine real roots beta with x . beta < 0."""
    rs = x.rs
    out = []
    for a in rs.positive_roots:
        for alpha, nmin in ((a, 0), (tuple(-c for c in a), 1)):
            p = rs.pair(x.t, alpha)
            wneg = not _pos(x.w.act_root(alpha))
            top = p if wneg else p - 1
            for n in range(nmin, top + 1):
                out.append(AffineRoot(alpha, n))
    assert len(out) == length(x)
    return out


@dataclass(frozen=True)
class CoverRecord:
    source: AffineElt
    target: AffineElt
    reflection_root: AffineRoot  # the positive affine root of the reflection
    kind: str  # "near" | "far" | "generic"
    case: int  # 1-4 for the superregular classification, 0 otherwise
    alpha: RootVec | None = None  # the finite positive root in the classification


def cocovers(x: AffineElt) -> list[CoverRecord]:
    """All y = x r_beta lessdot x in the affine Bruhat order."""
    lx = length(x)
    out = []
    for beta in inversions(x):
        y = x * reflection_of_affine(x.rs, beta)
        if length(y) == lx - 1:
            out.append(CoverRecord(x, y, beta, "generic", 0))
    return out


def chamber_decompose(rs: RootSystem, tau: CorootVec) -> tuple[WeylElt, CorootVec]:
    """Write tau = v . lam with lam antidominant; v is minimal such."""
    key = ("chamber", tau)
    hit = rs._cache.get(key)
    if hit is not None:
        return hit
    v = weyl_identity(rs)
    lam = tuple(tau)
    while True:
        for i in range(rs.rank):
            if rs.pair(lam, rs.simple_root(i)) > 0:
                lam = simple_reflection(rs, i).act_coroot(lam)
                v = v * simple_reflection(rs, i)
                break
        else:
            rs._cache[key] = (v, lam)
            return v, lam


def superregular_margin(x: AffineElt) -> int:
    """min_{alpha > 0} |<lam, alpha>| minus the bound 2|W| + 2."""
    rs = x.rs
    m = min(abs(rs.pair(x.t, a)) for a in rs.positive_roots)
    return m - (2 * rs.weyl_order + 2)


def is_superregular(x: AffineElt, slack: int = 0) -> bool:
    return superregular_margin(x) >= slack


def superregular_antidominant(rs: RootSystem, units: int = 0, shift: int = 0) -> CorootVec:
    """An antidominant lam with margin >= 4 * units (one unit per operator step)."""
    key = ("sregbase",)
    base = rs._cache.get(key)
    if base is None:
        # integer coroot vector with <base, alpha_j> = -m for all j, i.e.
        # -m (C^T)^{-1} 1: column sums of the inverse Cartan matrix
        inv = rs.cartan_inv
        col = [sum(inv[j][i] for j in range(rs.rank)) for i in range(rs.rank)]
        den = 1
        for c in col:
            den = den * c.denominator // gcd(den, c.denominator)
        base = tuple(int(-den * c) for c in col)
        assert all(rs.pair(base, rs.simple_root(j)) == rs.pair(base, rs.simple_root(0)) < 0
                   for j in range(rs.rank))
        rs._cache[key] = base
    m = -rs.pair(base, rs.simple_root(0))
    need = 2 * rs.weyl_order + 2 + 4 * units + shift
    k = -(-need // m)  # ceil
    return tuple(k * c for c in base)


def cocovers_superregular(x: AffineElt, validate: bool = True) -> list[CoverRecord]:
    """Case-tagged cocovers of a superregular x = w t_{v lam}."""
    rs = x.rs
    if not is_superregular(x):
        raise ValueError("element is not superregular")
    v, lam = chamber_decompose(rs, x.t)
    w = x.w
    out = []
    wv = w * v
    lwv = wv.length()
    lv = v.length()
    for a, avee, ra, a2rho in positive_root_data(rs):
        wvra_len = (wv * ra).length()
        vra_len = (v * ra).length()
        va = v.act_root(a)
        w_rva = w * reflection_of(rs, va)
        p = rs.pair(lam, a)
        if wvra_len == lwv + 1:  # case 1, near
            n = p
            y = AffineElt(w_rva, x.t)
            out.append(_cover(x, y, va, n, "near", 1, a))
        if wvra_len == lwv - a2rho + 1:  # case 2, near
            n = p + 1
            y = AffineElt(w_rva, v.act_coroot(tuple(l + c for l, c in zip(lam, avee))))
            out.append(_cover(x, y, va, n, "near", 2, a))
        if vra_len == lv - 1:  # case 3, far
            y = AffineElt(w_rva, (v * ra).act_coroot(lam))
            out.append(_cover(x, y, va, 0, "far", 3, a))
        if vra_len == lv + a2rho - 1:  # case 4, far
            y = AffineElt(w_rva, (v * ra).act_coroot(tuple(l + c for l, c in zip(lam, avee))))
            out.append(_cover(x, y, va, -1, "far", 4, a))
    if validate:
        got = {(c.target, c.reflection_root) for c in out}
        want = {(c.target, c.reflection_root) for c in cocovers(x)}
        assert got == want, "superregular classification disagrees with cover enumeration"
    return out


def _cover(x, y, va, n, kind, case, alpha) -> CoverRecord:
    # the positive affine root of the reflection is -(v alpha) - n delta here
    beta = AffineRoot(va, n)
    if beta.is_positive():
        raise AssertionError("superregular cover reflection root unexpectedly positive")
    return CoverRecord(x, y, -beta, kind, case, alpha)


def bruhat_leq(x: AffineElt, y: AffineElt) -> bool:
    """x <= y in the affine Bruhat order (left-descent recursion)."""
    rs = x.rs
    lx, ly = length(x), length(y)
    while True:
        if lx > ly:
            return False
        if ly == 0:
            return lx == 0 and x.is_identity()
        if x == y:
            return True
        # find a left descent of y: l(r_i y) < l(y) iff y^{-1} alpha_i < 0
        yinv = y.inverse()
        for i in range(rs.rank + 1):
            beta = AffineRoot(rs.simple_root(i - 1), 0) if i else AffineRoot(tuple(-c for c in rs.theta), 1)
            if not yinv.act(beta).is_positive():
                ri = affine_simple_reflection(rs, i)
                y = ri * y
                ly -= 1
                xi = ri * x
                if length(xi) < lx:
                    x = xi
                    lx -= 1
                break
        else:
            raise AssertionError("no descent found for a non-identity element")


def reduced_word(x: AffineElt) -> tuple[int, ...]:
    """A reduced word over I_af (0 = affine node, i = finite node i)."""
    rs = x.rs
    out = []
    lx = length(x)
    while lx > 0:
        for i in range(rs.rank + 1):
            beta = AffineRoot(rs.simple_root(i - 1), 0) if i else AffineRoot(tuple(-c for c in rs.theta), 1)
            if not x.act(beta).is_positive():
                out.append(i)
                x = x * affine_simple_reflection(rs, i)
                lx -= 1
                break
        else:
            raise AssertionError("no right descent found")
    out.reverse()
    return tuple(out)


def chevalley_terms(rs: RootSystem, w: WeylElt):
    """Cached Chevalley data at w: (ups, quantums).

    ups      = ((alpha, alpha_vee, w r_alpha) ...) with l(w r_alpha) = l(w) + 1,
    quantums = same with l(w r_alpha) = l(w) + 1 - <alpha^vee, 2 rho>.
    """
    key = ("chev", w.m)
    val = rs._cache.get(key)
    if val is None:
        lw = w.length()
        ups = []
        quantums = []
        for a, avee, ra, a2rho in positive_root_data(rs):
            wr = w * ra
            lwr = wr.length()
            if lwr == lw + 1:
                ups.append((a, avee, wr))
            if lwr == lw + 1 - a2rho:
                quantums.append((a, avee, wr))
        val = (tuple(ups), tuple(quantums))
        rs._cache[key] = val
    return val


def descent_terms(rs: RootSystem, v: WeylElt):
    """Cached far-cover data at v: (downs, qups).

    downs = ((alpha, alpha_vee, v r_alpha) ...) with l(v r_alpha) = l(v) - 1,
    qups  = same with l(v r_alpha) = l(v) + <alpha^vee, 2 rho> - 1.
    """
    key = ("desc", v.m)
    val = rs._cache.get(key)
    if val is None:
        lv = v.length()
        downs = []
        qups = []
        for a, avee, ra, a2rho in positive_root_data(rs):
            vr = v * ra
            lvr = vr.length()
            if lvr == lv - 1:
                downs.append((a, avee, vr))
            if lvr == lv + a2rho - 1:
                qups.append((a, avee, vr))
        val = (tuple(downs), tuple(qups))
        rs._cache[key] = val
    return val


def serialize(x: AffineElt) -> dict:
    return {"w": " ".join(f"r{i + 1}" for i in x.w.word()) or "id", "t": list(x.t)}
