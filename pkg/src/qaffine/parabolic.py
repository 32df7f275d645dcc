"""Parabolic and extended-affine machinery.

Everything here hangs off a ParabolicData: the Levi node set I_P and its
Dynkin components, the minimal-coset projection pi_P (two independent
implementations: inversion stripping and the closed form on translations),
the quotient ideal J_P, the quotient ring product, affine diagram
automorphisms for the cominuscule section, strange duality in type A, and
the bounded-partition dictionary for Grassmannians.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cartan import AffineRoot, CorootVec, RootSystem, RootVec
from .coeffring import combo_axpy
from .peterson import hom_product_basis
from .weyl import (
    AffineElt,
    WeylElt,
    affine_from_word,
    affine_identity,
    affine_simple_reflection,
    enumerate_weyl,
    from_word,
    is_grassmannian,
    length,
    longest_element,
    reflection_of_affine,
    simple_reflection,
    translation,
    weyl_identity,
)


@dataclass
class ParabolicData:
    rs: RootSystem
    nodes: frozenset  # I_P, 0-based node indices
    free_nodes: tuple  # sorted I \ I_P
    components: tuple  # tuple of tuples, Dynkin components of I_P
    rp_positive: tuple  # positive roots supported on I_P
    two_rho_p: RootVec
    _cache: dict = field(default_factory=dict, repr=False)

    # -- basic membership ---------------------------------------------------
    def in_wp(self, w: WeylElt) -> bool:
        return all(not neg or self.rs.positive_roots[k] in self._rp_set
                   for k, neg in enumerate(w.neg_set()))

    def is_minimal_rep(self, w: WeylElt) -> bool:
        """w in W^P: no inversions among the simple roots of I_P... w alpha_j > 0."""
        rs = self.rs
        return all(_pos(w.act_root(rs.simple_root(j))) for j in self.nodes)

    @property
    def _rp_set(self):
        s = self._cache.get("rpset")
        if s is None:
            s = set(self.rp_positive)
            self._cache["rpset"] = s
        return s

    def minimal_reps(self) -> list[WeylElt]:
        reps = self._cache.get("wp_reps")
        if reps is None:
            reps = [w for w in enumerate_weyl(self.rs) if self.is_minimal_rep(w)]
            self._cache["wp_reps"] = reps
        return reps

    def pi_finite(self, w: WeylElt) -> WeylElt:
        """The W^P factor of w = w_1 w_2 with w_2 in W_P."""
        rs = self.rs
        while True:
            for j in self.nodes:
                if not _pos(w.act_root(rs.simple_root(j))):
                    w = w * simple_reflection(rs, j)
                    break
            else:
                return w

    def eta(self, lam: CorootVec) -> tuple:
        """The class of lam in Q^vee / Q_P^vee, as coordinates on I \\ I_P."""
        return tuple(lam[i] for i in self.free_nodes)

    def pair_two_rho_p(self, avee: CorootVec) -> int:
        return self.rs.pair(avee, self.two_rho_p)

    def longest_of(self, nodeset) -> WeylElt:
        key = ("w0", tuple(sorted(nodeset)))
        w0 = self._cache.get(key)
        if w0 is None:
            rs = self.rs
            w0 = weyl_identity(rs)
            while True:
                for j in nodeset:
                    if _pos(w0.act_root(rs.simple_root(j))):
                        w0 = w0 * simple_reflection(rs, j)
                        break
                else:
                    break
            self._cache[key] = w0
        return w0

    def longest_wp(self) -> WeylElt:
        return self.longest_of(self.nodes)

    # -- component data -----------------------------------------------------
    def component_theta(self, comp: tuple) -> RootVec:
        key = ("ctheta", comp)
        th = self._cache.get(key)
        if th is None:
            sub = [a for a in self.rp_positive if all(c == 0 or i in comp for i, c in enumerate(a))]
            th = max(sub, key=lambda a: (sum(a), a))
            assert all(all(x >= y for x, y in zip(th, a)) for a in sub)
            self._cache[key] = th
        return th

    def component_special_nodes(self, comp: tuple) -> tuple:
        """Cominuscule nodes of the component: mark 1 in its highest root."""
        th = self.component_theta(comp)
        return tuple(j for j in comp if th[j] == 1)

    def component_cartan_inv(self, comp: tuple):
        key = ("cinv", comp)
        inv = self._cache.get(key)
        if inv is None:
            sub = [[self.rs.cartan[i][j] for j in comp] for i in comp]
            from .cartan import _invert_matrix

            inv = _invert_matrix(sub)
            self._cache[key] = inv
        return inv

    def v_special(self, comp: tuple, j: int) -> WeylElt:
        """Shortest v in W_{comp} with v omega_j = w_{0,comp} omega_j."""
        return self.longest_of(comp) * self.longest_of(tuple(k for k in comp if k != j))

    # -- the closed form of pi_P on translations -----------------------------
    def pi_translation_data(self, lam: CorootVec):
        """(v, lam_B, j_m per component) with pi_P(t_lam) = v t_{lam_B}."""
        rs = self.rs
        phi = [0] * rs.rank
        v = weyl_identity(rs)
        jms = []
        for comp in self.components:
            inv = self.component_cartan_inv(comp)
            # psi restricted to the component, in its coweight coordinates
            cws = [rs.pair(lam, rs.simple_root(j)) for j in comp]
            # coroot-basis coordinates of psi_m: sum_j cw_j * row_j(inv)
            psi_coords = [sum(Fraction(cws[j]) * inv[j][k] for j in range(len(comp))) for k in range(len(comp))]
            jm = None
            if all(c.denominator == 1 for c in psi_coords):
                jm = None  # the 0_m node: psi_m already in Q_m^vee
                omega = [Fraction(0)] * len(comp)
            else:
                for cand_pos, cand in enumerate(comp):
                    if cand not in self.component_special_nodes(comp):
                        continue
                    omega = [inv[cand_pos][k] for k in range(len(comp))]
                    if all((c + o).denominator == 1 for c, o in zip(psi_coords, omega)):
                        jm = cand
                        break
                else:
                    raise AssertionError("no special node matches the coweight class")
            # phi_m = -psi_m - omega_{j_m}
            for k, pos in enumerate(comp):
                val = -psi_coords[k] - omega[k]
                assert val.denominator == 1
                phi[pos] = int(val)
            if jm is not None:
                v = v * self.v_special(comp, jm)
            jms.append(jm)
        lam_b = tuple(l + p for l, p in zip(lam, phi))
        return v, lam_b, tuple(jms)


def _pos(vec) -> bool:
    return any(c > 0 for c in vec)


def build_parabolic(rs: RootSystem, nodes) -> ParabolicData:
    nodes = frozenset(nodes)
    if not nodes <= set(range(rs.rank)):
        raise ValueError("parabolic nodes out of range")
    free = tuple(i for i in range(rs.rank) if i not in nodes)
    # Dynkin components of I_P
    remaining = set(nodes)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in remaining - comp:
                if rs.cartan[i][j] != 0:
                    comp.add(j)
                    frontier.append(j)
        comps.append(tuple(sorted(comp)))
        remaining -= comp
    rp = tuple(a for a in rs.positive_roots if all(c == 0 or i in nodes for i, c in enumerate(a)))
    two_rho_p = tuple(sum(col) for col in zip(*rp)) if rp else (0,) * rs.rank
    return ParabolicData(rs, nodes, free, tuple(sorted(comps)), rp, two_rho_p)


def in_WPaff(pd: ParabolicData, x: AffineElt) -> bool:
    """w t_lam in (W^P)_af iff pairings against R_P^+ match the inversion pattern."""
    rs = pd.rs
    for a in pd.rp_positive:
        p = rs.pair(x.t, a)
        if _pos(x.w.act_root(a)):
            if p != 0:
                return False
        elif p != -1:
            return False
    return True


def pi_P(pd: ParabolicData, x: AffineElt) -> AffineElt:
    """The (W^P)_af factor of x, by stripping inversions lying over R_P."""
    rs = pd.rs
    while True:
        beta = _find_rp_inversion(pd, x)
        if beta is None:
            assert in_WPaff(pd, x)
            return x
        x = x * reflection_of_affine(rs, beta)


def _find_rp_inversion(pd: ParabolicData, x: AffineElt):
    rs = pd.rs
    for a in pd.rp_positive:
        for alpha, nmin in ((a, 0), (tuple(-c for c in a), 1)):
            p = rs.pair(x.t, alpha)
            wneg = not _pos(x.w.act_root(alpha))
            top = p if wneg else p - 1
            if top >= nmin:
                return AffineRoot(alpha, nmin)
    return None


def pi_P_translation(pd: ParabolicData, lam: CorootVec) -> AffineElt:
    """Closed form pi_P(t_lam) = v t_{lam + phi_P(lam)}."""
    rs = pd.rs
    v, lam_b, _jms = pd.pi_translation_data(lam)
    out = AffineElt(v, lam_b)
    assert in_WPaff(pd, out)
    if rs.is_antidominant(lam):
        # phi_P of an antidominant lam is a nonnegative sum of coroots of I_P
        phi = tuple(b - l for b, l in zip(lam_b, lam))
        assert all(c >= 0 for c in phi) and all(c == 0 for i, c in enumerate(phi) if i not in pd.nodes)
    return out


def in_JP(pd: ParabolicData, x: AffineElt) -> bool:
    if not is_grassmannian(x):
        raise ValueError("J_P membership is asked of Grassmannian elements")
    return not in_WPaff(pd, x)


def perp_antidominant(pd: ParabolicData, scale: int = 1) -> CorootVec:
    """lam in Q^vee with <lam, alpha_j> = 0 on I_P and < 0 off I_P.

    Such translations satisfy pi_P(t_lam) = t_lam and are the localization
    denominators of the quotient ring.
    """
    base = pd._cache.get("perp")
    if base is None:
        rs = pd.rs
        inv = rs.cartan_inv
        coords = [sum(inv[i][k] for i in pd.free_nodes) for k in range(rs.rank)]
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        base = tuple(int(-den * c) for c in coords)
        for j in range(rs.rank):
            p = rs.pair(base, rs.simple_root(j))
            assert (p == 0) == (j in pd.nodes) and p <= 0
        pd._cache["perp"] = base
    return tuple(scale * c for c in base)


def _coset_lift(pd: ParabolicData, coset, depth: int) -> CorootVec:
    """An antidominant representative of the coset, pushed deep off I_P."""
    rs = pd.rs
    lam = [0] * rs.rank
    for i, c in zip(pd.free_nodes, coset):
        lam[i] = c
    lam = tuple(lam)
    perp = perp_antidominant(pd)
    for _ in range(40):
        lam = tuple(a + b for a, b in zip(lam, tuple(depth * c for c in perp)))
        # antidominantize inside Q_P^vee (keeps the coset)
        for _ in range(200):
            for j in pd.nodes:
                p = rs.pair(lam, rs.simple_root(j))
                if p > 0:
                    lam = simple_reflection(rs, j).act_coroot(lam)
                    break
            else:
                break
        if rs.is_antidominant(lam):
            return lam
    raise AssertionError("failed to find an antidominant coset representative")


def parabolic_basis_element(pd: ParabolicData, v: WeylElt, coset, depth: int = 2) -> AffineElt:
    """v pi_P(t_lam) in W_af^- with eta_P(lam) the requested coset."""
    if not pd.is_minimal_rep(v):
        raise ValueError("basis index must be a minimal coset representative")
    lam = _coset_lift(pd, coset, depth)
    x = AffineElt(v, pd.rs.zero_coroot()) * pi_P_translation(pd, lam)
    assert is_grassmannian(x) and in_WPaff(pd, x), "lift left the expected stratum"
    return x


def factor_parabolic(pd: ParabolicData, z: AffineElt) -> tuple[WeylElt, tuple]:
    """Write Grassmannian z in (W^P)_af as u pi_P(t_lam): returns (u, eta(lam))."""
    v, lam_b, _ = pd.pi_translation_data(z.t)
    assert lam_b == z.t, "translation of a (W^P)_af element is its own canonical lift"
    u = z.w * v.inverse()
    assert pd.is_minimal_rep(u), "finite factor is not a minimal representative"
    return u, pd.eta(z.t)


def quotient_product(pd: ParabolicData, v: WeylElt, u: WeylElt, lam_p=None, mu_p=None) -> dict:
    """sigma_P^v * sigma_P^u via the affine quotient: product, mod J_P, rewrite.

    Returns a parabolic class ``(w in W^P, q-exponents over I \\ I_P) -> Scalar``;
    inputs carry optional q-cosets (defaults 0).
    """
    rs = pd.rs
    nfree = len(pd.free_nodes)
    lam_p = tuple(lam_p) if lam_p is not None else (0,) * nfree
    mu_p = tuple(mu_p) if mu_p is not None else (0,) * nfree
    x = parabolic_basis_element(pd, v, lam_p)
    y = parabolic_basis_element(pd, u, mu_p)
    base_x = pd.eta(x.t)
    base_y = pd.eta(y.t)
    prod = hom_product_basis(rs, x, y)
    out: dict = {}
    for z, c in prod.items():
        if in_JP(pd, z):
            continue
        uz, qz = factor_parabolic(pd, z)
        q = tuple(a - b - d + l + m for a, b, d, l, m in zip(qz, base_x, base_y, lam_p, mu_p))
        combo_axpy(out, (uz, q), c)
    for (w, q) in out:
        assert all(a >= b + c for a, b, c in zip(q, lam_p, mu_p)), "quotient product exponent dropped below input"
    return out


# -- affine diagram automorphisms and the cominuscule section ----------------

def is_special_node(rs: RootSystem, i: int) -> bool:
    """Nodes of mark 1 in I_af (0 is always special)."""
    return rs.marks[i] == 1


def tau(rs: RootSystem, i: int) -> tuple:
    """The affine diagram automorphism with tau_i(i) = 0, as a node permutation.

    Node ids: 0 is the affine node, k = 1..r the finite ones.  Realized by
    v_i t_{-omega_i^vee}: tau(k) is the index of v_i alpha_k, with
    v_i alpha_i = -theta and tau(0) the index of -v_i theta.
    """
    if i == 0:
        return tuple(range(rs.rank + 1))
    if not is_special_node(rs, i):
        raise ValueError(f"node {i} is not special (mark != 1)")
    key = ("tau", i)
    perm = rs._cache.get(key)
    if perm is not None:
        return perm
    w0 = longest_element(rs)
    sub = [k for k in range(rs.rank) if k != i - 1]
    from_parab = _longest_of(rs, sub)
    vi = w0 * from_parab
    out = [None] * (rs.rank + 1)
    for k in range(1, rs.rank + 1):
        img = vi.act_root(rs.simple_root(k - 1))
        if img == tuple(-c for c in rs.theta):
            out[k] = 0
        else:
            out[k] = _simple_index(rs, img) + 1
    img0 = tuple(-c for c in vi.act_root(rs.theta))
    out[0] = _simple_index(rs, img0) + 1
    assert sorted(out) == list(range(rs.rank + 1)) and out[i] == 0
    _assert_affine_automorphism(rs, out)
    perm = tuple(out)
    rs._cache[key] = perm
    return perm


def _longest_of(rs: RootSystem, nodeset) -> WeylElt:
    w = weyl_identity(rs)
    while True:
        for j in nodeset:
            if _pos(w.act_root(rs.simple_root(j))):
                w = w * simple_reflection(rs, j)
                break
        else:
            return w


def _simple_index(rs: RootSystem, v: RootVec) -> int:
    for k in range(rs.rank):
        if v == rs.simple_root(k):
            return k
    raise AssertionError(f"{v} is not a simple root")


def _affine_cartan(rs: RootSystem):
    key = ("affcartan",)
    c = rs._cache.get(key)
    if c is None:
        r = rs.rank
        m = [[0] * (r + 1) for _ in range(r + 1)]
        for i in range(r):
            for j in range(r):
                m[i + 1][j + 1] = rs.cartan[i][j]
        m[0][0] = 2
        for j in range(r):
            m[0][j + 1] = -rs.pair(rs.theta_vee, rs.simple_root(j))
            m[j + 1][0] = -rs.pair(rs.simple_coroot(j), rs.theta)
        c = tuple(tuple(row) for row in m)
        rs._cache[key] = c
    return c


def _assert_affine_automorphism(rs: RootSystem, perm) -> None:
    c = _affine_cartan(rs)
    n = rs.rank + 1
    for a in range(n):
        for b in range(n):
            assert c[perm[a]][perm[b]] == c[a][b], "node permutation is not a diagram automorphism"


def star(rs: RootSystem) -> tuple:
    """The automorphism w -> w_0 w w_0 on node ids, fixing the affine node."""
    key = ("star",)
    perm = rs._cache.get(key)
    if perm is None:
        w0 = longest_element(rs)
        out = [0] * (rs.rank + 1)
        for k in range(rs.rank):
            img = tuple(-c for c in w0.act_root(rs.simple_root(k)))
            out[k + 1] = _simple_index(rs, img) + 1
        perm = tuple(out)
        _assert_affine_automorphism(rs, perm)
        rs._cache[key] = perm
    return perm


def apply_node_perm(rs: RootSystem, perm, x: AffineElt) -> AffineElt:
    """Relabel a reduced word of x through a diagram automorphism."""
    from .weyl import reduced_word

    word = reduced_word(x)
    return affine_from_word(rs, tuple(perm[i] for i in word))


def theta_cominuscule(pd: ParabolicData, y: WeylElt) -> AffineElt:
    """The section W^P -> (W^P)_af ∩ W_af^- through the affine automorphisms."""
    rs = pd.rs
    if len(pd.free_nodes) != 1:
        raise ValueError("needs a maximal parabolic")
    j = pd.free_nodes[0] + 1
    if not is_special_node(rs, j):
        raise ValueError("the free node must be cominuscule")
    if not pd.is_minimal_rep(y):
        raise ValueError("input must lie in W^P")
    t = tau(rs, j)
    st = star(rs)
    x = affine_identity(rs)
    for i in y.word():
        x = x * affine_simple_reflection(rs, st[t[i + 1]])
    assert is_grassmannian(x) and in_WPaff(pd, x)
    # the finite part w of x = w t_lam satisfies pi_P(w) = pi_P(w_P y)
    assert pd.pi_finite(x.w) == pd.pi_finite(pd.longest_wp() * y)
    return x


# -- strange duality (type A) and the Lapointe-Morse dictionary --------------

def delta_count(pd: ParabolicData, w: WeylElt) -> int:
    j = pd.free_nodes[0]
    return sum(1 for i in w.word() if i == j)


def strange_duality(pd: ParabolicData, cls: dict) -> dict:
    """q -> q^{-1}, sigma_P^w -> q^{-delta(w)} sigma_P^{pi_P(w_P w)}; type A only."""
    rs = pd.rs
    if rs.family != "A":
        raise ValueError("strange duality normalization is only implemented for type A")
    if len(pd.free_nodes) != 1:
        raise ValueError("needs a maximal parabolic")
    wp = pd.longest_wp()
    out: dict = {}
    for (w, q), c in cls.items():
        img = pd.pi_finite(wp * w)
        q2 = tuple(-x - delta_count(pd, w) for x in q)
        combo_axpy(out, (img, q2), c)
    return out


def highest_root_product(pd: ParabolicData, w: WeylElt) -> dict:
    """Closed formula for sigma_P^{pi_P(r_theta)} * sigma_P^w (non-equivariant).

    Returns a parabolic class with integer coefficients.
    """
    rs = pd.rs
    if not pd.nodes != set(range(rs.rank)):
        raise ValueError("P must be proper")
    if not pd.is_minimal_rep(w):
        raise ValueError("w must lie in W^P")
    out: dict = {}
    winv = w.inverse()
    # first term present iff w alpha = theta for some alpha in R^+ \ R_P^+
    winv_theta = winv.act_root(rs.theta)
    if _pos(winv_theta) and winv_theta not in pd._rp_set:
        from .weyl import reflection_of

        shift = pd.eta(tuple(a - b for a, b in zip(rs.theta_vee, winv.act_coroot(rs.theta_vee))))
        target = pd.pi_finite(reflection_of(rs, rs.theta) * w)
        out[(target, shift)] = 1
    qtheta = pd.eta(rs.theta_vee)
    for i in range(rs.rank):
        riw = simple_reflection(rs, i) * w
        if riw.length() == w.length() - 1:
            key = (riw, qtheta)
            out[key] = out.get(key, 0) + rs.comarks[i + 1]
    return {k: v for k, v in out.items() if v}


def partition_to_affine(rs: RootSystem, parts, n: int) -> AffineElt:
    """The Grassmannian affine element of an (n-1)-bounded partition.

    Cell (x1, x2) carries residue (x1 - x2) mod n; rows are read top to
    bottom, right to left.
    """
    if rs.family != "A" or rs.rank != n - 1:
        raise ValueError("partition indexing needs type A_{n-1}")
    parts = [p for p in parts if p]
    if any(p > n - 1 for p in parts):
        raise ValueError(f"parts must be at most {n - 1}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("parts must be weakly decreasing")
    word = []
    for x2 in range(len(parts), 0, -1):
        for x1 in range(parts[x2 - 1], 0, -1):
            word.append((x1 - x2) % n)
    x = affine_from_word(rs, word)
    assert length(x) == len(word), "row reading is not reduced"
    assert is_grassmannian(x)
    return x


def partition_to_wp(pd: ParabolicData, parts) -> WeylElt:
    """The W^P element of a partition in the j x (n-j) rectangle (columnwise)."""
    rs = pd.rs
    if rs.family != "A" or len(pd.free_nodes) != 1:
        raise ValueError("needs a type A maximal parabolic")
    n = rs.rank + 1
    j = pd.free_nodes[0] + 1
    parts = [p for p in parts if p]
    if len(parts) > j or any(p > n - j for p in parts):
        raise ValueError(f"partition must fit in a {j} x {n - j} rectangle")
    word = []
    ncols = parts[0] if parts else 0
    for x1 in range(ncols, 0, -1):
        height = sum(1 for p in parts if p >= x1)
        for x2 in range(height, 0, -1):
            val = j + x1 - x2
            assert 1 <= val <= n - 1
            word.append(val - 1)
    w = from_word(rs, word)
    assert w.length() == len(word), "column reading is not reduced"
    assert pd.is_minimal_rep(w)
    return w


def bott_generator(rs: RootSystem, m: int) -> AffineElt:
    """h_[m] = r_{m-1} ... r_1 r_0, the single-row class."""
    return affine_from_word(rs, tuple(range(m - 1, -1, -1)))


def quotient_generator(pd: ParabolicData, m: int) -> WeylElt:
    """c_[m] = r_{j-m+1} ... r_{j-1} r_j in W^P (1-based nodes)."""
    j = pd.free_nodes[0] + 1
    word = [k - 1 for k in range(j - m + 1, j + 1)]
    return from_word(pd.rs, word)


def lm_map(pd: ParabolicData, xi: dict) -> dict:
    """The quotient-with-duality ring map H_*(Gr_{SL_n}) -> QH^*(Gr(j,n))|_{q=1}.

    xi_x maps to sigma_P^y when x = theta(y) pi_P(t_lam) for some y, else 0.
    Input: integer combination of Grassmannian elements; output keyed by W^P.
    """
    rs = pd.rs
    if rs.family != "A":
        raise ValueError("the quotient-with-duality map is type A only")
    out: dict = {}
    for x, c in xi.items():
        y = _lm_preimage(pd, x)
        if y is not None:
            out[y] = out.get(y, 0) + c
    return {k: v for k, v in out.items() if v}


def _lm_preimage(pd: ParabolicData, x: AffineElt):
    key = ("lmpre", x)
    if key in pd._cache:
        return pd._cache[key]
    res = None
    for y in pd.minimal_reps():
        z = theta_cominuscule(pd, y).inverse() * x
        v, lam_b, _ = pd.pi_translation_data(z.t)
        if lam_b == z.t and AffineElt(v, lam_b) == z:
            res = y
            break
    pd._cache[key] = res
    return res
