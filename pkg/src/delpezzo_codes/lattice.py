"""Integer lattices under the intersection form diag(1, -1, ..., -1).

Matrices are plain lists of rows of Python ints.  Everything is computed from a
Smith normal form with tracked unimodular transforms; kernels, hulls, quotient
splittings and embedding invariants are all read off from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "IntMatrix",
    "LatticeError",
    "EntryOverflow",
    "DependentRows",
    "NotASubgroup",
    "InvalidDescriptor",
    "IntersectionForm",
    "GaloisAction",
    "SublatticeBasis",
    "SmithForm",
    "QuotientData",
    "LatticeData",
    "ClassGroupReport",
    "smith_normal_form",
    "saturation",
    "orthogonal_complement",
    "fixed_sublattice",
    "quotient_invariants",
    "embedding_invariants",
    "kernel",
    "express_in_basis",
    "class_group_report",
    "anticanonical_class",
    "mat_mul",
    "determinant",
]

IntMatrix = list[list[int]]
ENTRY_BOUND = 1 << 40


class LatticeError(ValueError):
    pass


class EntryOverflow(LatticeError):
    pass


class DependentRows(LatticeError):
    pass


class NotASubgroup(LatticeError):
    pass


class InvalidDescriptor(LatticeError):
    pass


# --- small matrix helpers -----------------------------------------------------


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    if not cols:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _check(*mats: IntMatrix) -> None:
    for mat in mats:
        for row in mat:
            for v in row:
                if abs(v) >= ENTRY_BOUND:
                    raise EntryOverflow(f"entry {v} exceeds 2^40")


# --- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D``; ``V_inv`` is the inverse of ``V``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivots on the smallest nonzero absolute entry of the remaining block and
    clears its row and column by Euclidean steps; a final pass turns the
    diagonal into a divisibility chain.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, r)) for r in A]
    U, V, Vi = identity(m), identity(n), identity(n)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src: int, dst: int, k: int) -> None:  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, k: int) -> None:  # col dst += k * col src
        for r in D:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]
        # V_inv picks up the inverse elementary operation on rows
        Vi[src] = [a - k * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            _check(D)
            if done:
                break
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]

    # divisibility pass: (a, b) -> (gcd, lcm) by a unimodular 2x2 move
    k = min(m, n)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                a, b = D[i][i], D[j][j]
                if a == 0 or b % a == 0:
                    continue
                g, s, tt = _ext_gcd(a, b)
                # rows: [s, t; -b/g, a/g]
                ri, rj = U[i], U[j]
                U[i] = [s * x + tt * y for x, y in zip(ri, rj)]
                U[j] = [(-b // g) * x + (a // g) * y for x, y in zip(ri, rj)]
                # cols: [1, -t b/g; 1, s a/g]
                c1, c2 = -tt * b // g, s * a // g
                for r in V:
                    vi, vj = r[i], r[j]
                    r[i], r[j] = vi + vj, c1 * vi + c2 * vj
                # inverse of [[1, c1], [1, c2]] (det c2 - c1 = 1) is [[c2, -c1], [-1, 1]]
                wi, wj = Vi[i], Vi[j]
                Vi[i] = [c2 * x - c1 * y for x, y in zip(wi, wj)]
                Vi[j] = [-x + y for x, y in zip(wi, wj)]
                D[i][i], D[j][j] = g, a // g * b
                changed = True
        # zero entries must come last
        for i in range(k):
            for j in range(i + 1, k):
                if D[i][i] == 0 and D[j][j] != 0:
                    swap_rows(i, j)
                    swap_cols(i, j)
                    changed = True
    _check(D)
    return SmithForm(U, D, V, Vi)


# --- sublattices ------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionForm:
    rank: int

    @property
    def matrix(self) -> IntMatrix:
        return [[(1 if i == 0 else -1) if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


@dataclass(frozen=True)
class SublatticeBasis:
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, ambient_rank: int, rows: Sequence[Sequence[int]]) -> "SublatticeBasis":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        for r in rows:
            if len(r) != ambient_rank:
                raise ValueError("row length does not match ambient rank")
        return cls(ambient_rank, rows)

    @classmethod
    def full(cls, n: int) -> "SublatticeBasis":
        return cls.of(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rows(self) -> IntMatrix:
        return [list(r) for r in self.basis]

    def same_span(self, other: "SublatticeBasis") -> bool:
        """Equal as subgroups of Z^n (not just rationally)."""
        if self.rank != other.rank:
            return False
        try:
            express_in_basis(self.rows(), other)
            express_in_basis(other.rows(), self)
        except NotASubgroup:
            return False
        return True


def _require_independent(S: SublatticeBasis) -> SmithForm:
    snf = smith_normal_form(S.rows()) if S.rank else None
    if snf is not None and snf.rank != S.rank:
        raise DependentRows("rows are linearly dependent")
    return snf  # type: ignore[return-value]


def kernel(A: Sequence[Sequence[int]], ncols: int) -> SublatticeBasis:
    """Integer kernel {x : A x = 0} (column vectors), as rows."""
    if not A:
        return SublatticeBasis.full(ncols)
    snf = smith_normal_form(A)
    r = snf.rank
    V = snf.V
    return SublatticeBasis.of(ncols, [[V[i][j] for i in range(ncols)] for j in range(r, ncols)])


def saturation(S: SublatticeBasis) -> SublatticeBasis:
    """Smallest direct summand containing S (the hull)."""
    if S.rank == 0:
        return S
    snf = _require_independent(S)
    return SublatticeBasis.of(S.ambient_rank, snf.V_inv[: S.rank])


def orthogonal_complement(S: SublatticeBasis, G: IntersectionForm) -> SublatticeBasis:
    if S.rank == 0:
        return SublatticeBasis.full(G.rank)
    A = mat_mul(S.rows(), G.matrix)
    return kernel(A, G.rank)


@dataclass(frozen=True)
class GaloisAction:
    """Action of the Frobenius on the E-basis, ``matrix[i][j]`` = coefficient of E_i in sigma(E_j)."""

    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "GaloisAction":
        n = len(perm)
        mat = [[0] * n for _ in range(n)]
        for j, i in enumerate(perm):
            mat[i][j] = 1
        return cls(tuple(tuple(r) for r in mat))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "GaloisAction":
        perm = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                perm[a] = b
        return cls.from_permutation(perm)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def apply(self, x: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, x)) for row in self.matrix]

    @property
    def order(self) -> int:
        cur = [list(r) for r in self.matrix]
        ident = identity(self.rank)
        k = 1
        while cur != ident:
            cur = mat_mul(cur, [list(r) for r in self.matrix])
            k += 1
        return k

    def preserves(self, G: IntersectionForm) -> bool:
        M = G.matrix
        S = [list(r) for r in self.matrix]
        return mat_mul(mat_mul(transpose(S), M), S) == M


def fixed_sublattice(action: GaloisAction) -> SublatticeBasis:
    n = action.rank
    A = [[action.matrix[i][j] - (i == j) for j in range(n)] for i in range(n)]
    return kernel(A, n)


def express_in_basis(vectors: Sequence[Sequence[int]], B: SublatticeBasis) -> IntMatrix:
    """Integer coordinates y with ``y @ B == v`` for each v; :class:`NotASubgroup` otherwise."""
    if not vectors:
        return []
    if B.rank == 0:
        if any(any(v) for v in vectors):
            raise NotASubgroup("nonzero vector in the zero lattice")
        return [[] for _ in vectors]
    snf = _require_independent(B)
    # B = U^-1 D V^-1, so y B = v  <=>  (y U^-1) D = v V
    k = B.rank
    out = []
    for v in vectors:
        z = mat_mul([list(v)], snf.V)[0]
        if any(z[k:]):
            raise NotASubgroup(f"{list(v)} is not in the rational span")
        w = []
        for i in range(k):
            d = snf.D[i][i]
            if z[i] % d:
                raise NotASubgroup(f"{list(v)} is not an integer combination of the basis")
            w.append(z[i] // d)
        out.append(mat_mul([w], snf.U)[0])
    return out


@dataclass(frozen=True)
class QuotientData:
    """Splitting of Z^n / S along an adapted basis.

    Rows of ``adapted`` form a basis e_1..e_n of Z^n with S = sum alpha_i e_i;
    ``coords`` maps x to its coordinates in that basis.
    """

    n: int
    alphas: list[int]
    adapted: IntMatrix
    to_adapted: IntMatrix

    @property
    def free_rank(self) -> int:
        return self.n - len(self.alphas)

    @property
    def torsion(self) -> list[int]:
        return [a for a in self.alphas if a > 1]

    def coords(self, x: Sequence[int]) -> list[int]:
        return mat_mul([list(x)], self.to_adapted)[0]

    def torsion_part(self, x: Sequence[int]) -> list[int]:
        c = self.coords(x)
        return [c[i] % a for i, a in enumerate(self.alphas) if a > 1]

    def free_part(self, x: Sequence[int]) -> list[int]:
        return self.coords(x)[len(self.alphas):]


def quotient_data(n: int, S: SublatticeBasis) -> QuotientData:
    if S.rank == 0:
        return QuotientData(n, [], identity(n), identity(n))
    snf = _require_independent(S)
    return QuotientData(n, snf.diagonal[: S.rank], snf.V_inv, snf.V)


def quotient_invariants(ambient_rank: int, S: SublatticeBasis) -> tuple[int, list[int], QuotientData]:
    """Free rank and torsion of Z^n / S, plus the splitting used to map classes."""
    data = quotient_data(ambient_rank, S)
    return data.free_rank, data.torsion, data


def embedding_invariants(A: SublatticeBasis, B: SublatticeBasis) -> list[int]:
    """Invariant factors of A inside B."""
    coords = express_in_basis(A.rows(), B)
    if not coords:
        return []
    snf = smith_normal_form(coords)
    return [d for d in snf.diagonal if d]


# --- class groups -------------------------------------------------------------


@dataclass(frozen=True)
class LatticeData:
    """Static lattice data of one family, in the E-basis E_0..E_r."""

    rank: int
    roots: tuple[tuple[int, ...], ...]
    contracted: tuple[tuple[int, ...], ...]
    galois_cycles: tuple[tuple[int, ...], ...]

    @property
    def form(self) -> IntersectionForm:
        return IntersectionForm(self.rank)

    @property
    def galois(self) -> GaloisAction:
        return GaloisAction.from_cycles(self.rank, self.galois_cycles)

    @property
    def canonical(self) -> tuple[int, ...]:
        """K of the blow-up Y: -3 E_0 + sum E_i."""
        return (-3,) + (1,) * (self.rank - 1)

    @property
    def exceptional(self) -> tuple[tuple[int, ...], ...]:
        unit = [tuple(int(i == j) for j in range(self.rank)) for i in range(1, self.rank)]
        return tuple(unit) + self.contracted


@dataclass
class ClassGroupReport:
    cartier_rank: int
    weil_free_rank: int
    weil_torsion: list[int]
    embedding_factors: list[int]
    anticanonical_image: dict[str, list[int]]
    cartier_basis: IntMatrix = field(default_factory=list, repr=False)
    root_lattice: IntMatrix = field(default_factory=list, repr=False)
    class_group: IntMatrix = field(default_factory=list, repr=False)

    def summary(self) -> dict:
        return {
            "cartier_rank": self.cartier_rank,
            "weil_free_rank": self.weil_free_rank,
            "torsion": list(self.weil_torsion),
            "embedding_factors": list(self.embedding_factors),
            "anticanonical_image": self.anticanonical_image,
        }


def anticanonical_class(data: LatticeData) -> list[int]:
    """-K of the contracted surface: orthogonal projection of -K_Y onto the complement of the F_j."""
    G = data.form
    v = [Fraction(-c) for c in data.canonical]
    F = [list(f) for f in data.contracted]
    if F:
        gram = [[G.dot(a, b) for b in F] for a in F]
        rhs = [G.dot(v, f) for f in F]
        coef = _solve_rational(gram, rhs)
        for c, f in zip(coef, F):
            v = [a - c * b for a, b in zip(v, f)]
    if any(x.denominator != 1 for x in v):
        raise InvalidDescriptor("anticanonical class is not integral")
    return [int(x) for x in v]


def _solve_rational(a: Sequence[Sequence[int]], b: Sequence[Fraction]) -> list[Fraction]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def validate_lattice_data(data: LatticeData) -> None:
    G, K = data.form, data.canonical
    for r in data.roots:
        if G.dot(r, r) != -2 or G.dot(r, K) != 0:
            raise InvalidDescriptor(f"{r} is not a root")
        for f in data.contracted:
            if G.dot(r, f) != 0:
                raise InvalidDescriptor(f"root {r} meets contracted class {f}")
    for e in data.exceptional:
        if G.dot(e, e) != -1 or G.dot(e, K) != -1:
            raise InvalidDescriptor(f"{e} is not an exceptional class")
    if not data.galois.preserves(G):
        raise InvalidDescriptor("Galois action does not preserve the form")


def class_group_report(family: LatticeData | object) -> ClassGroupReport:
    """Cartier and Weil class groups of the anticanonical model.

    Accepts a :class:`LatticeData` or anything with a ``lattice`` attribute.
    """
    data: LatticeData = family if isinstance(family, LatticeData) else family.lattice  # type: ignore[attr-defined]
    validate_lattice_data(data)
    n, G = data.rank, data.form
    sigma = data.galois
    M = G.matrix

    # Cl(X) = (contracted classes)^perp intersected with the Galois invariants
    constraints = [[sigma.matrix[i][j] - (i == j) for j in range(n)] for i in range(n)]
    constraints += mat_mul([list(f) for f in data.contracted], M)
    cl = kernel(constraints, n)

    # R = Galois-invariant part of the root lattice (not its hull)
    roots = [list(r) for r in data.roots]
    moved = [[sigma.apply(r)[i] - r[i] for r in roots] for i in range(n)]
    combos = kernel(moved, len(roots))
    r_amb = mat_mul(combos.rows(), roots) if combos.rank else []
    r_cl = express_in_basis(r_amb, cl)
    R = SublatticeBasis.of(cl.rank, r_cl)

    free_rank, torsion, split = quotient_invariants(cl.rank, R)
    gram = mat_mul(mat_mul(cl.rows(), M), transpose(cl.rows()))
    cartier = kernel(mat_mul(r_cl, gram), cl.rank) if r_cl else SublatticeBasis.full(cl.rank)

    image = [split.free_part(c) for c in cartier.rows()]
    factors = [d for d in smith_normal_form(image).diagonal if d] if image and image[0] else []

    minus_k = express_in_basis([anticanonical_class(data)], cl)[0]
    free = split.free_part(minus_k)
    if any(free) and next(v for v in free if v) < 0:
        free = [-v for v in free]
    anti = {"torsion": split.torsion_part(minus_k), "free": free}
    return ClassGroupReport(
        cartier_rank=cartier.rank,
        weil_free_rank=free_rank,
        weil_torsion=torsion,
        embedding_factors=factors,
        anticanonical_image=anti,
        cartier_basis=mat_mul(cartier.rows(), cl.rows()) if cartier.rank else [],
        root_lattice=r_amb,
        class_group=cl.rows(),
    )
