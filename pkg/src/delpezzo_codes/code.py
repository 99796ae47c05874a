"""Linear codes over F_q: generator matrices, rank, exhaustive distance.

Field elements are handled here by their integer codes, with addition,
negation and multiplication tables held as numpy arrays, so a codeword is an
``int`` vector of length n.  Enumeration splits the message space in two:
the last few message symbols are expanded into a precomputed block of partial
codewords, and the remaining symbols are walked in a q-ary Gray order, so
each step adds a single scaled row to a running offset.  The weight of every
codeword ``inner + offset`` is then the number of positions where ``inner``
differs from ``-offset``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import TYPE_CHECKING, Iterator, Sequence

import numpy as np

from .gf import FieldElement, FiniteField, make_field, prime_power

if TYPE_CHECKING:
    from .families import CodeInstance

__all__ = [
    "BudgetExceeded",
    "EvaluationFieldMismatch",
    "ENUMERATION_BUDGET",
    "GeneratorMatrix",
    "CodeReport",
    "generator_matrix",
    "rank_dimension",
    "min_distance",
    "weight_distribution",
    "nq1_weil_serre",
    "analyze",
    "analyze_matrix",
]

ENUMERATION_BUDGET = 10**8
_BLOCK_CELLS = 1 << 21


class BudgetExceeded(RuntimeError):
    pass


class EvaluationFieldMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _tables(p: int, e: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    F = make_field(p, e)
    q = F.order
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = F.add_codes(a, b)
            mul[a, b] = F.mul_codes(a, b)
    neg = np.array([F.neg_code(a) for a in range(q)], dtype=np.int64)
    return add, mul, neg


@dataclass(frozen=True)
class GeneratorMatrix:
    """k x n matrix over F_q, entries stored as integer codes."""

    field: FiniteField
    codes: np.ndarray
    instance: "CodeInstance | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.codes, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(len(arr), -1)
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.order):
            raise EvaluationFieldMismatch("entry outside F_q")
        arr.setflags(write=False)
        object.__setattr__(self, "codes", arr)

    @classmethod
    def from_elements(cls, field: FiniteField, rows: Sequence[Sequence[FieldElement | int]]) -> "GeneratorMatrix":
        out = []
        for row in rows:
            vals = []
            for x in row:
                if isinstance(x, FieldElement):
                    if x.field != field:
                        raise EvaluationFieldMismatch(f"entry {x!r} is not in F_{field.order}")
                    vals.append(x.code)
                else:
                    vals.append(int(x))
            out.append(vals)
        width = len(out[0]) if out else 0
        return cls(field, np.array(out, dtype=np.int64).reshape(len(out), width))

    @property
    def k(self) -> int:
        return self.codes.shape[0]

    @property
    def n(self) -> int:
        return self.codes.shape[1]

    @property
    def q(self) -> int:
        return self.field.order

    def entry(self, i: int, j: int) -> FieldElement:
        return self.field.from_code(int(self.codes[i, j]))

    def rows(self) -> list[list[int]]:
        return self.codes.tolist()

    def scale_column(self, j: int, scalar: int) -> "GeneratorMatrix":
        _, mul, _ = _tables(self.field.p, self.field.e)
        arr = self.codes.copy()
        arr[:, j] = mul[scalar, arr[:, j]]
        return GeneratorMatrix(self.field, arr)

    def delete(self, *, row: int | None = None, column: int | None = None) -> "GeneratorMatrix":
        arr = self.codes
        if row is not None:
            arr = np.delete(arr, row, axis=0)
        if column is not None:
            arr = np.delete(arr, column, axis=1)
        return GeneratorMatrix(self.field, arr)


def generator_matrix(instance: "CodeInstance") -> GeneratorMatrix:
    """Entry (i, j) is section i evaluated at plan column j."""
    F = instance.field
    rows = []
    for f in instance.sections:
        row = []
        for col in instance.plan:
            v = col.value(f)
            if v.field != F:
                raise EvaluationFieldMismatch(f"value {v!r} of a section lies outside F_{F.order}")
            row.append(v.code)
        rows.append(row)
    return GeneratorMatrix(F, np.array(rows, dtype=np.int64).reshape(len(rows), len(instance.plan)), instance)


# --- elimination -------------------------------------------------------------------


def _echelon(G: GeneratorMatrix) -> np.ndarray:
    """Nonzero rows of the reduced row echelon form, as codes."""
    add, mul, neg = _tables(G.field.p, G.field.e)
    F = G.field
    inv = np.array([0] + [F.inv_code(a) for a in range(1, F.order)], dtype=np.int64)
    A = G.codes.copy()
    r = 0
    for c in range(A.shape[1]):
        if r == A.shape[0]:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        A[[r, piv]] = A[[piv, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        for i in range(A.shape[0]):
            if i != r and A[i, c]:
                factor = neg[A[i, c]]
                A[i] = add[A[i], mul[factor, A[r]]]
        r += 1
    return A[:r]


def rank_dimension(G: GeneratorMatrix) -> int:
    """Row rank over F_q."""
    return int(_echelon(G).shape[0])


# --- enumeration -------------------------------------------------------------------


def _gray_steps(q: int, m: int) -> Iterator[tuple[int, int, int]]:
    """Reflected q-ary Gray code on m digits, as (digit, old, new) changes."""
    digits = [0] * m
    direction = [1] * m
    for _ in range(q**m - 1):
        # find the lowest digit that can move in its current direction
        j = 0
        while True:
            nxt = digits[j] + direction[j]
            if 0 <= nxt < q:
                break
            direction[j] = -direction[j]
            j += 1
        old = digits[j]
        digits[j] = nxt
        yield j, old, nxt


def _inner_block(rows: np.ndarray, add: np.ndarray, mul: np.ndarray, q: int) -> np.ndarray:
    """All q^len(rows) combinations of the given rows."""
    n = rows.shape[1]
    block = np.zeros((1, n), dtype=np.int64)
    for row in rows:
        multiples = mul[:, row]  # q x n: c * row
        block = add[block[None, :, :], multiples[:, None, :]].reshape(-1, n)
    return block


def _split(k: int, q: int, n: int) -> int:
    """Number of rows to expand into the inner block."""
    k_in = 0
    while k_in < k and q ** (k_in + 1) * max(n, 1) <= _BLOCK_CELLS:
        k_in += 1
    return k_in


def _histogram(
    p: int, e: int, start: np.ndarray, outer: np.ndarray, inner: np.ndarray
) -> np.ndarray:
    """Weight histogram of start + span(outer) + span(inner) over all coefficient choices."""
    add, mul, neg = _tables(p, e)
    q = p**e
    n = start.shape[0]
    block = _inner_block(inner, add, mul, q)
    hist = np.zeros(n + 1, dtype=np.int64)
    offset = start.copy()

    def tally() -> None:
        w = np.count_nonzero(block != neg[offset], axis=1)
        hist[:] += np.bincount(w, minlength=n + 1)

    tally()
    multiples = [mul[:, row] for row in outer]
    for j, old, new in _gray_steps(q, len(outer)):
        delta = add[multiples[j][new], neg[multiples[j][old]]]
        offset = add[offset, delta]
        tally()
    return hist


def _check_budget(q: int, k: int) -> None:
    if q**k > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"q^k = {q}^{k} = {q**k} exceeds the enumeration budget {ENUMERATION_BUDGET}")


def _shards(G: GeneratorMatrix, basis: np.ndarray) -> list[tuple]:
    """Split the full message space by the first message symbol."""
    add, mul, _ = _tables(G.field.p, G.field.e)
    k, n = basis.shape
    if k == 0:
        return [(np.zeros(n, dtype=np.int64), basis[:0], basis[:0])]
    rest = basis[1:]
    k_in = _split(k - 1, G.q, n)
    outer, inner = rest[: len(rest) - k_in], rest[len(rest) - k_in:]
    return [(mul[c, basis[0]], outer, inner) for c in range(G.q)]


def _run(G: GeneratorMatrix, jobs: list[tuple], workers: int) -> np.ndarray:
    p, e = G.field.p, G.field.e
    n = G.n
    total = np.zeros(n + 1, dtype=np.int64)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_histogram, p, e, *job) for job in jobs]
            for fut in futures:
                total += fut.result()
    else:
        for job in jobs:
            total += _histogram(p, e, *job)
    return total


def weight_distribution(G: GeneratorMatrix, *, jobs: int = 1) -> dict[int, int]:
    """Weight -> number of codewords, over all q^k messages (zero included)."""
    _check_budget(G.q, G.k)
    basis = _echelon(G)
    hist = _run(G, _shards(G, basis), jobs)
    kernel = G.q ** (G.k - basis.shape[0])
    return {w: int(c) * kernel for w, c in enumerate(hist) if c}


def min_distance(G: GeneratorMatrix, *, jobs: int = 1) -> int | None:
    """Exact minimum weight of a nonzero codeword, or None for the zero code.

    Enumerates one message per projective class: the leading coefficient
    (with respect to a row echelon basis) is fixed to one.
    """
    _check_budget(G.q, G.k)
    basis = _echelon(G)
    r, n = basis.shape
    if r == 0:
        return None
    tasks = []
    for lead in range(r):
        rest = basis[lead + 1:]
        k_in = _split(len(rest), G.q, n)
        tasks.append((basis[lead].copy(), rest[: len(rest) - k_in], rest[len(rest) - k_in:]))
    hist = _run(G, tasks, jobs)
    return int(np.nonzero(hist)[0][0])


# --- the bound ---------------------------------------------------------------------


def nq1_weil_serre(q: int) -> int:
    """Maximal number of rational points on a genus-one curve over F_q."""
    p, e = prime_power(q)
    m = isqrt(4 * q)
    if e >= 5 and e % 2 == 1 and m % p == 0:
        return q + m
    return q + 1 + m


# --- reports -----------------------------------------------------------------------


@dataclass
class CodeReport:
    family: str | None
    q: int
    n: int
    k: int
    k_effective: int
    d_min: int | None
    weight_distribution: dict[int, int]
    injective: bool
    expected: dict | None
    bound_checks: dict[str, bool]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.bound_checks.values())

    @property
    def observed_nq(self) -> int | None:
        """n - d_min: the largest number of rational zeros of a nonzero section."""
        return None if self.d_min is None else self.n - self.d_min

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "k_effective": self.k_effective,
            "d_min": self.d_min,
            "n_minus_d": self.observed_nq,
            "injective": self.injective,
            "weight_distribution": sorted(self.weight_distribution.items()),
            "expected": self.expected,
            "bound_checks": self.bound_checks,
            "notes": self.notes,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def analyze_matrix(
    G: GeneratorMatrix,
    *,
    family: str | None = None,
    expected: dict | None = None,
    jobs: int = 1,
) -> CodeReport:
    """Rank, distance and weights of G, checked against ``expected`` when given.

    ``expected`` holds ``n``, ``k``, ``d`` and ``exact`` as produced by
    ``expected_parameters``.
    """
    rank = rank_dimension(G)
    dist = weight_distribution(G, jobs=jobs)
    d = min_distance(G, jobs=jobs)
    checks: dict[str, bool] = {}
    notes: list[str] = []
    support = [w for w in dist if w > 0]
    checks["distance_paths_agree"] = (min(support) if support else None) == d
    checks["singleton"] = d is None or d <= G.n - rank + 1
    checks["total_count"] = sum(dist.values()) == G.q**G.k
    if rank < G.k:
        notes.append(f"evaluation map not injective: rank {rank} < {G.k} rows")
    if expected is not None:
        checks["length"] = G.n == expected["n"]
        checks["dimension"] = rank == expected["k"] and G.k == expected["k"]
        if expected["exact"]:
            checks["distance_exact"] = d == expected["d"]
        else:
            checks["distance_lower_bound"] = d is not None and d >= expected["d"]
            if d is not None:
                notes.append(f"n - d_min = {G.n - d}, N_q(1) = {expected['nq1']}")
    return CodeReport(family, G.q, G.n, G.k, rank, d, dist, rank == G.k, expected, checks, notes)


def analyze(instance: "CodeInstance", *, jobs: int = 1) -> CodeReport:
    G = generator_matrix(instance)
    return analyze_matrix(G, family=instance.family, expected=instance.expected.as_dict(), jobs=jobs)
