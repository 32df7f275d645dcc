"""Finite simple root systems: Cartan matrices, roots, coroots, weights, pairings.

Vectors live in three integer coordinate systems:

* RootVec   -- coordinates in the simple-root basis (elements of Q),
* CorootVec -- coordinates in the simple-coroot basis (elements of Q^vee),
* WeightVec -- coordinates in the fundamental-weight basis (elements of P).

All three are plain tuples of ints.  The Cartan matrix convention is
``cartan[i][j] = <alpha_i^vee, alpha_j>``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import NamedTuple

RootVec = tuple[int, ...]
CorootVec = tuple[int, ...]
WeightVec = tuple[int, ...]


class AffineRoot(NamedTuple):
    """A real affine root  finite_part + level * delta."""

    finite: RootVec
    level: int

    def is_positive(self) -> bool:
        if self.level != 0:
            return self.level > 0
        return _is_positive_vec(self.finite)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(tuple(-c for c in self.finite), -self.level)


def _is_positive_vec(v: tuple[int, ...]) -> bool:
    # nonzero vectors in a root system have coordinates of one sign
    return any(c > 0 for c in v)


# Cartan matrices, Bourbaki numbering.  For B_n the last node is short,
# for C_n the last node is long, for F4 nodes 3,4 are short, for G2 node 1
# is short.  E-types use node 2 as the branch node.
def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    def path(bonds):
        m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        for (i, j, a, b) in bonds:
            m[i][j] = -a
            m[j][i] = -b
        return m

    chain = [(i, i + 1, 1, 1) for i in range(rank - 1)]
    if family == "A":
        return path(chain)
    if family == "B":
        if rank < 2:
            raise ValueError("type B needs rank >= 2")
        return path(chain[:-1] + [(rank - 2, rank - 1, 1, 2)])
    if family == "C":
        if rank < 2:
            raise ValueError("type C needs rank >= 2")
        return path(chain[:-1] + [(rank - 2, rank - 1, 2, 1)])
    if family == "D":
        if rank < 3:
            raise ValueError("type D needs rank >= 3")
        return path(chain[:-1] + [(rank - 3, rank - 1, 1, 1)])
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        # node 1 - 3 - 4 - 5 - ... with node 2 attached to node 4 (Bourbaki)
        bonds = [(0, 2, 1, 1), (1, 3, 1, 1)]
        bonds += [(i, i + 1, 1, 1) for i in range(2, rank - 1)]
        return path(bonds)
    if family == "F":
        if rank != 4:
            raise ValueError("type F needs rank 4")
        return path([(0, 1, 1, 1), (1, 2, 1, 2), (2, 3, 1, 1)])
    if family == "G":
        if rank != 2:
            raise ValueError("type G needs rank 2")
        return path([(0, 1, 3, 1)])
    raise ValueError(f"unsupported type family {family!r}")


def _weyl_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if family == "F":
        return 1152
    return 12  # G2


def _invert_matrix(m: list[list[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class RootSystem:
    """Immutable tables for a finite simple root system."""

    label: str
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    cartan_inv: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[RootVec, ...]
    coroot_table: dict[RootVec, CorootVec]
    theta: RootVec
    theta_vee: CorootVec
    rho: WeightVec
    two_rho: RootVec
    marks: tuple[int, ...]      # indexed by I_af = (0, 1..rank)
    comarks: tuple[int, ...]
    weyl_order: int
    # images of simple roots / coroots under each simple reflection
    refl_root_mats: tuple[tuple[tuple[int, ...], ...], ...]
    refl_coroot_mats: tuple[tuple[tuple[int, ...], ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __hash__(self):
        return hash(self.label)

    # -- basic vectors ------------------------------------------------
    def simple_root(self, i: int) -> RootVec:
        return tuple(int(j == i) for j in range(self.rank))

    def simple_coroot(self, i: int) -> CorootVec:
        return tuple(int(j == i) for j in range(self.rank))

    def fundamental_weight(self, i: int) -> WeightVec:
        return tuple(int(j == i) for j in range(self.rank))

    def zero_coroot(self) -> CorootVec:
        return (0,) * self.rank

    # -- pairings ------------------------------------------------------
    def pair_weight(self, lam: CorootVec, mu: WeightVec) -> int:
        """<lam, mu> with mu in the fundamental-weight basis."""
        if len(lam) != self.rank or len(mu) != self.rank:
            raise ValueError("dimension mismatch")
        return sum(a * b for a, b in zip(lam, mu))

    def pair_root(self, lam: CorootVec, mu: RootVec) -> int:
        """<lam, mu> with mu in the simple-root basis."""
        if len(lam) != self.rank or len(mu) != self.rank:
            raise ValueError("dimension mismatch")
        c = self.cartan
        return sum(lam[i] * c[i][j] * mu[j] for i in range(self.rank) for j in range(self.rank) if lam[i] and mu[j])

    def is_root(self, v: RootVec) -> bool:
        return v in self.coroot_table

    def coroot_of(self, alpha: RootVec) -> CorootVec:
        try:
            return self.coroot_table[alpha]
        except KeyError:
            raise ValueError(f"{alpha} is not a root of {self.label}") from None

    # -- basis conversions ----------------------------------------------
    def weight_to_root_basis(self, mu: WeightVec) -> tuple[Fraction, ...]:
        """Coordinates of mu in the simple-root basis (rational in general)."""
        inv = self.cartan_inv
        return tuple(sum(inv[i][j] * mu[j] for j in range(self.rank)) for i in range(self.rank))

    def root_lattice_check(self, mu: WeightVec) -> RootVec:
        """mu as an integral RootVec; raises if mu is not in the root lattice."""
        coords = self.weight_to_root_basis(mu)
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{mu} does not lie in the root lattice of {self.label}")
        return tuple(int(c) for c in coords)

    def root_to_weight_basis(self, v: RootVec) -> WeightVec:
        """alpha-basis vector rewritten in the fundamental-weight basis."""
        c = self.cartan
        return tuple(sum(c[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank))

    def is_antidominant(self, lam: CorootVec) -> bool:
        return all(self.pair_root(lam, self.simple_root(i)) <= 0 for i in range(self.rank))

    def is_regular(self, lam: CorootVec) -> bool:
        return all(self.pair_root(lam, a) != 0 for a in self.positive_roots)

    # positive roots paired against a coroot vector, precomputed rows
    def root_pairing_row(self, alpha: RootVec) -> tuple[int, ...]:
        """Vector (<alpha_i^vee, alpha>)_i, so <lam, alpha> = lam . row."""
        key = ("prow", alpha)
        row = self._cache.get(key)
        if row is None:
            c = self.cartan
            row = tuple(sum(c[i][j] * alpha[j] for j in range(self.rank)) for i in range(self.rank))
            self._cache[key] = row
        return row

    def pair(self, lam: CorootVec, alpha: RootVec) -> int:
        return sum(a * b for a, b in zip(lam, self.root_pairing_row(alpha)))


def build(label: str) -> RootSystem:
    """Construct the root system for a type label like "A2", "B3", "E6"."""
    label = label.strip().upper()
    if len(label) < 2 or label[0] not in "ABCDEFG" or not label[1:].isdigit():
        raise ValueError(f"unsupported type label {label!r}")
    family, rank = label[0], int(label[1:])
    if rank < 1 or rank > 8:
        raise ValueError(f"rank {rank} out of supported range 1..8")
    if family != "A" and rank == 1:
        family = "A"  # B1 = C1 = A1
    cartan = _cartan_matrix(family, rank)

    # simple reflection matrices: columns are images of basis vectors
    def root_mat(i):
        cols = []
        for j in range(rank):
            col = [int(k == j) for k in range(rank)]
            col[i] -= cartan[i][j]
            cols.append(col)
        return tuple(tuple(cols[j][k] for j in range(rank)) for k in range(rank))

    def coroot_mat(i):
        cols = []
        for j in range(rank):
            col = [int(k == j) for k in range(rank)]
            col[i] -= cartan[j][i]
            cols.append(col)
        return tuple(tuple(cols[j][k] for j in range(rank)) for k in range(rank))

    refl_root = tuple(root_mat(i) for i in range(rank))
    refl_coroot = tuple(coroot_mat(i) for i in range(rank))

    def apply_mat(m, v):
        return tuple(sum(m[k][j] * v[j] for j in range(rank)) for k in range(rank))

    # closure of the simple roots under simple reflections, coroots in parallel
    coroot_table: dict[RootVec, CorootVec] = {}
    frontier = []
    for i in range(rank):
        a = tuple(int(j == i) for j in range(rank))
        coroot_table[a] = a
        frontier.append(a)
    while frontier:
        alpha = frontier.pop()
        avee = coroot_table[alpha]
        for i in range(rank):
            b = apply_mat(refl_root[i], alpha)
            if b not in coroot_table:
                coroot_table[b] = apply_mat(refl_coroot[i], avee)
                frontier.append(b)

    positive = sorted((a for a in coroot_table if _is_positive_vec(a)), key=lambda a: (sum(a), a))
    # the highest root: the unique positive root of maximal height whose
    # coordinates dominate every other root
    theta = positive[-1]
    assert all(all(x >= y for x, y in zip(theta, a)) for a in positive), "highest root not dominant"
    theta_vee = coroot_table[theta]

    two_rho = tuple(sum(col) for col in zip(*positive))
    marks = (1,) + theta
    comarks = (1,) + theta_vee

    rs = RootSystem(
        label=f"{family}{rank}",
        family=family,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        cartan_inv=_invert_matrix(cartan),
        positive_roots=tuple(positive),
        coroot_table=coroot_table,
        theta=theta,
        theta_vee=theta_vee,
        rho=(1,) * rank,
        two_rho=two_rho,
        marks=marks,
        comarks=comarks,
        weyl_order=_weyl_order(family, rank),
        refl_root_mats=refl_root,
        refl_coroot_mats=refl_coroot,
    )
    _check_tables(rs)
    return rs


def _check_tables(rs: RootSystem) -> None:
    r = rs.rank
    for i in range(r):
        assert rs.cartan[i][i] == 2
        for j in range(r):
            if i != j and rs.cartan[i][j] > 0:
                raise AssertionError("off-diagonal Cartan entry must be <= 0")
    # delta = alpha_0 + theta with mark a_0 = 1
    assert rs.marks[0] == 1 and tuple(rs.marks[1:]) == rs.theta
    # every root has a coroot and <alpha^vee, alpha> = 2
    for a, av in rs.coroot_table.items():
        assert rs.pair(av, a) == 2


def pair(rs: RootSystem, lam: CorootVec, mu) -> int:
    """Pairing <lam, mu>; mu may be a WeightVec or ("root", RootVec)."""
    return rs.pair_weight(lam, mu)


def to_json_dict(rs: RootSystem) -> dict:
    return {
        "type": rs.label,
        "rank": rs.rank,
        "cartan_matrix": [list(row) for row in rs.cartan],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "theta": list(rs.theta),
        "theta_vee": list(rs.theta_vee),
        "marks": list(rs.marks),
        "comarks": list(rs.comarks),
        "weyl_order": rs.weyl_order,
        "num_positive_roots": len(rs.positive_roots),
    }
