"""Projective plane geometry over finite fields.

Points carry normalized homogeneous coordinates (first nonzero coordinate equal
to one).  Forms are homogeneous polynomials in X, Y, Z stored as a dictionary
from exponent triples to field elements; the monomial order used for
normalization and for echelon forms is lexicographic on exponent triples,
largest first (X^d, X^{d-1}Y, ..., Z^d).

The interpolation routine :func:`linear_system` handles ordinary points with
multiplicity and chains of infinitely near points.  Conditions are linear in
the unknown coefficients, so every local computation below works on
"linear polynomials": dictionaries from local exponents to coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .gf import (
    FieldElement,
    FiniteField,
    field_embedding,
    make_field,
    nullspace,
    nullspace_mod_p,
    prime_power,
    relative_degree,
    rref,
)

__all__ = [
    "GeometryError",
    "EqualPoints",
    "DegenerateConditions",
    "NotRationalizable",
    "NotStableSpan",
    "UnstableConditions",
    "EmptySystem",
    "Unsupported",
    "PlanePoint",
    "Form",
    "PointCondition",
    "monomials",
    "enumerate_points",
    "galois_orbit",
    "line_through",
    "conic_through",
    "orbit_product",
    "rationalize_span",
    "linear_system",
    "evaluate",
    "to_field",
    "base_field",
    "canonical_generator",
    "local_jet",
    "vanishes_to_order",
    "collinear",
    "tangent_direction",
    "span_equal",
]


class GeometryError(ValueError):
    pass


class EqualPoints(GeometryError):
    pass


class DegenerateConditions(GeometryError):
    pass


class NotRationalizable(GeometryError):
    pass


class NotStableSpan(GeometryError):
    pass


class UnstableConditions(GeometryError):
    pass


class EmptySystem(GeometryError):
    pass


class Unsupported(GeometryError):
    pass


def base_field(q: int) -> FiniteField:
    p, e = prime_power(q)
    return make_field(p, e)


def to_field(x: FieldElement, target: FiniteField) -> FieldElement:
    """Move x into ``target`` through the fixed subfield embeddings."""
    if x.field == target:
        return x
    if target.e % x.field.e == 0:
        return field_embedding(x.field, target)(x)
    return field_embedding(target, x.field).restrict(x)


def _bigger(a: FiniteField, b: FiniteField) -> FiniteField:
    if a.e % b.e == 0:
        return a
    if b.e % a.e == 0:
        return b
    raise ValueError(f"no common field model for {a!r} and {b!r}")


def canonical_generator(field: FiniteField, q: int, m: int) -> FieldElement:
    """The smallest-code element of ``field`` of degree exactly m over F_q."""
    if relative_degree(field, q) == m:
        return field.gen
    for x in field.elements():
        y, size = x**q, 1
        while y != x:
            y, size = y**q, size + 1
        if size == m:
            return x
    raise ValueError(f"no element of degree {m}")


# --- points -------------------------------------------------------------------


@dataclass(frozen=True)
class PlanePoint:
    coords: tuple[FieldElement, FieldElement, FieldElement]

    def __post_init__(self) -> None:
        c = self.coords
        lead = next((x for x in c if x), None)
        if lead is None:
            raise ValueError("(0:0:0) is not a projective point")
        if not lead.is_one():
            inv = lead.inverse()
            object.__setattr__(self, "coords", tuple(x * inv for x in c))

    @classmethod
    def of(cls, *coords: FieldElement | int, field: FiniteField | None = None) -> "PlanePoint":
        if field is None:
            field = next(c.field for c in coords if isinstance(c, FieldElement))
        vals = tuple(c if isinstance(c, FieldElement) else field(c) for c in coords)
        vals = tuple(to_field(v, field) for v in vals)
        return cls(vals)  # type: ignore[arg-type]

    @property
    def field(self) -> FiniteField:
        return self.coords[0].field

    def frobenius(self, q: int) -> "PlanePoint":
        return PlanePoint(tuple(c**q for c in self.coords))  # type: ignore[arg-type]

    def degree(self, q: int) -> int:
        return len(galois_orbit(self, q))

    def is_rational(self, q: int) -> bool:
        return self.frobenius(q) == self

    def over(self, field: FiniteField) -> "PlanePoint":
        return PlanePoint(tuple(to_field(c, field) for c in self.coords))  # type: ignore[arg-type]

    def scaled(self, index: int) -> tuple[FieldElement, ...]:
        """Representative with coordinate ``index`` equal to one."""
        inv = self.coords[index].inverse()
        return tuple(c * inv for c in self.coords)

    def codes(self) -> list[int]:
        return [c.code for c in self.coords]

    def __repr__(self) -> str:
        return "(" + " : ".join(repr(c) for c in self.coords) + ")"


def enumerate_points(q: int) -> list[PlanePoint]:
    """All points of P^2(F_q): (1:y:z), then (0:1:z), then (0:0:1)."""
    F = base_field(q)
    els = F.elements()
    one, zero = F.one, F.zero
    pts = [PlanePoint((one, y, z)) for y in els for z in els]
    pts += [PlanePoint((zero, one, z)) for z in els]
    pts.append(PlanePoint((zero, zero, one)))
    return pts


def galois_orbit(p: PlanePoint, q: int) -> list[PlanePoint]:
    orbit = [p]
    nxt = p.frobenius(q)
    while nxt != p:
        orbit.append(nxt)
        nxt = nxt.frobenius(q)
    return orbit


def collinear(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> bool:
    K = _bigger(_bigger(a.field, b.field), c.field)
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = (x.over(K).coords for x in (a, b, c))
    det = a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
    return det.is_zero()


# --- forms --------------------------------------------------------------------


def monomials(d: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree d, lexicographically largest first."""
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


class Form:
    """A homogeneous polynomial in X, Y, Z over a finite field."""

    __slots__ = ("degree", "field", "coeffs")

    def __init__(self, degree: int, field: FiniteField, coeffs: Mapping[tuple[int, int, int], FieldElement] | None = None):
        self.degree = degree
        self.field = field
        clean: dict[tuple[int, int, int], FieldElement] = {}
        for exps, c in (coeffs or {}).items():
            if sum(exps) != degree:
                raise ValueError(f"monomial {exps} is not of degree {degree}")
            c = c if isinstance(c, FieldElement) else field(c)
            if c.field != field:
                c = to_field(c, field)
            if c:
                clean[tuple(exps)] = c  # type: ignore[index]
        self.coeffs = clean

    # constructors
    @classmethod
    def variable(cls, name: str, field: FiniteField) -> "Form":
        exps = {"X": (1, 0, 0), "Y": (0, 1, 0), "Z": (0, 0, 1)}[name]
        return cls(1, field, {exps: field.one})

    @classmethod
    def xyz(cls, field: FiniteField) -> tuple["Form", "Form", "Form"]:
        return cls.variable("X", field), cls.variable("Y", field), cls.variable("Z", field)

    @classmethod
    def from_vector(cls, degree: int, field: FiniteField, vec: Sequence[FieldElement]) -> "Form":
        return cls(degree, field, dict(zip(monomials(degree), vec)))

    def vector(self) -> list[FieldElement]:
        return [self.coeffs.get(m, self.field.zero) for m in monomials(self.degree)]

    def coefficient(self, exps: tuple[int, int, int]) -> FieldElement:
        return self.coeffs.get(exps, self.field.zero)

    # arithmetic
    def _lift(self, other: "Form") -> tuple["Form", "Form"]:
        if other.field == self.field:
            return self, other
        K = _bigger(self.field, other.field)
        return self.over(K), other.over(K)

    def __add__(self, other: "Form") -> "Form":
        a, b = self._lift(other)
        if a.degree != b.degree:
            raise ValueError("degree mismatch")
        out = dict(a.coeffs)
        for m, c in b.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return Form(a.degree, a.field, out)

    def __neg__(self) -> "Form":
        return Form(self.degree, self.field, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other: "Form | FieldElement | int") -> "Form":
        if isinstance(other, Form):
            a, b = self._lift(other)
            out: dict[tuple[int, int, int], FieldElement] = {}
            for m1, c1 in a.coeffs.items():
                for m2, c2 in b.coeffs.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    v = c1 * c2
                    out[m] = out[m] + v if m in out else v
            return Form(a.degree + b.degree, a.field, out)
        if isinstance(other, FieldElement) and other.field != self.field:
            K = _bigger(self.field, other.field)
            return self.over(K) * to_field(other, K)
        return Form(self.degree, self.field, {m: c * other for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Form":
        out = Form(0, self.field, {(0, 0, 0): self.field.one})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if self.field != other.field:
            a, b = self._lift(other)
            return a.degree == b.degree and a.coeffs == b.coeffs
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, frozenset((m, c.code) for m, c in self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def over(self, field: FiniteField) -> "Form":
        return Form(self.degree, field, {m: to_field(c, field) for m, c in self.coeffs.items()})

    def frobenius(self, q: int) -> "Form":
        return Form(self.degree, self.field, {m: c**q for m, c in self.coeffs.items()})

    def normalized(self) -> "Form":
        """Scaled so that the first nonzero coefficient (monomial order) is one."""
        for m in monomials(self.degree):
            c = self.coeffs.get(m)
            if c is not None:
                return self * c.inverse() if not c.is_one() else self
        return self

    def is_rational(self, q: int) -> bool:
        return all(c**q == c for c in self.coeffs.values())

    def rational(self, q: int) -> "Form":
        """The same form written over the F_q model (coefficients must be fixed by x -> x^q)."""
        return self.over(base_field(q))

    def __call__(self, p: PlanePoint | Sequence[FieldElement]) -> FieldElement:
        return evaluate(self, p)

    def serialize(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [[list(m), self.coeffs[m].code] for m in monomials(self.degree) if m in self.coeffs],
        }

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m in monomials(self.degree):
            if m in self.coeffs:
                mono = "".join(
                    v + (f"^{k}" if k > 1 else "") for v, k in zip("XYZ", m) if k
                )
                c = self.coeffs[m]
                parts.append(mono if c.is_one() and mono else f"({c!r}){mono}")
        return " + ".join(parts)


def evaluate(f: Form, p: PlanePoint | Sequence[FieldElement]) -> FieldElement:
    """Evaluate at the given coordinates (the normalized representative for a point)."""
    coords = p.coords if isinstance(p, PlanePoint) else tuple(p)
    K = _bigger(f.field, coords[0].field)
    x, y, z = (to_field(c, K) for c in coords)
    if f.field != K:
        f = f.over(K)
    px, py, pz = [K.one], [K.one], [K.one]
    for _ in range(f.degree):
        px.append(px[-1] * x)
        py.append(py[-1] * y)
        pz.append(pz[-1] * z)
    total = K.zero
    for (a, b, c), coef in f.coeffs.items():
        total = total + coef * px[a] * py[b] * pz[c]
    return total


def line_through(p: PlanePoint, r: PlanePoint) -> Form:
    K = _bigger(p.field, r.field)
    (a0, a1, a2), (b0, b1, b2) = p.over(K).coords, r.over(K).coords
    cross = (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    if all(c.is_zero() for c in cross):
        raise EqualPoints(f"{p} and {r} coincide")
    return Form(1, K, dict(zip(monomials(1), cross))).normalized()


def conic_through(points: Sequence[PlanePoint]) -> Form:
    if len(points) != 5:
        raise ValueError("a conic is fixed by five points")
    K = points[0].field
    for pt in points[1:]:
        K = _bigger(K, pt.field)
    mons = monomials(2)
    rows = []
    for pt in points:
        x, y, z = pt.over(K).coords
        vals = {"X": x, "Y": y, "Z": z}
        rows.append([vals["X"] ** a * vals["Y"] ** b * vals["Z"] ** c for (a, b, c) in mons])
    ker = nullspace(rows, len(mons), K)
    if len(ker) != 1:
        raise DegenerateConditions(f"conditions have rank {len(mons) - len(ker)} < 5")
    return Form.from_vector(2, K, ker[0]).normalized()


# --- Galois-stable families of forms --------------------------------------


def _form_orbit(f: Form, q: int) -> list[Form]:
    orbit = [f.normalized()]
    nxt = orbit[0].frobenius(q).normalized()
    while nxt != orbit[0]:
        orbit.append(nxt)
        nxt = nxt.frobenius(q).normalized()
    return orbit


def orbit_product(f: Form, q: int) -> Form:
    """Product of the distinct conjugates of f, written over F_q."""
    prod = None
    for g in _form_orbit(f, q):
        prod = g if prod is None else prod * g
    assert prod is not None
    prod = prod.normalized()
    if not prod.is_rational(q):
        raise NotRationalizable("orbit product is not defined over F_q")
    return prod.rational(q)


def rationalize_span(forms: Sequence[Form], q: int) -> list[Form]:
    """F_q-rational basis ``C_j = sum_i sigma^i(theta^j) sigma^i(f)`` of a conjugate family."""
    m = len(forms)
    if m == 1:
        if not forms[0].is_rational(q):
            raise NotStableSpan("a single form must be rational")
        return [forms[0].rational(q)]
    K = forms[0].field
    for i in range(m):
        if forms[(i + 1) % m] != forms[i].frobenius(q):
            raise NotStableSpan("forms are not successive Frobenius conjugates")
    theta = canonical_generator(K, q, m)
    out = []
    for j in range(m):
        c = theta**j
        total = Form(forms[0].degree, K)
        for i in range(m):
            total = total + forms[i] * c
            c = c**q
        if not total.is_rational(q):
            raise NotStableSpan("combination is not rational")
        out.append(total.rational(q))
    return out


# --- local expansions and interpolation -------------------------------------

LinearPoly = dict[tuple[int, int], list[FieldElement]]


@dataclass(frozen=True)
class PointCondition:
    """Vanishing condition at a point, or along a chain of infinitely near points.

    ``directions`` lists the successive points of the chain, each as a pair
    ``(u, v)`` in the chart of the previous blow-up: the tangent direction
    ``(u:v)`` in local coordinates (x, y) centred at the previous point.  For
    an ordinary point ``directions`` is empty and ``multiplicities`` has one
    entry.
    """

    point: PlanePoint
    multiplicities: tuple[int, ...] = (1,)
    directions: tuple[tuple[FieldElement, FieldElement], ...] = ()

    def __post_init__(self) -> None:
        if len(self.multiplicities) != len(self.directions) + 1:
            raise ValueError("need one multiplicity per chain level")
        if any(n < 1 for n in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if len(self.multiplicities) > 5:
            raise ValueError("chains are limited to five points")
        dirs = tuple(_normalize_direction(d) for d in self.directions)
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def ordinary(cls, point: PlanePoint, multiplicity: int = 1) -> "PointCondition":
        return cls(point, (multiplicity,))

    @classmethod
    def chain(cls, point: PlanePoint, directions: Sequence[tuple[FieldElement, FieldElement]], multiplicities: Sequence[int] | None = None) -> "PointCondition":
        mults = tuple(multiplicities) if multiplicities is not None else (1,) * (len(directions) + 1)
        return cls(point, mults, tuple(directions))

    @property
    def field(self) -> FiniteField:
        K = self.point.field
        for u, v in self.directions:
            K = _bigger(_bigger(K, u.field), v.field)
        return K

    def frobenius(self, q: int) -> "PointCondition":
        return PointCondition(
            self.point.frobenius(q),
            self.multiplicities,
            tuple((u**q, v**q) for u, v in self.directions),
        )

    def conjugates(self, q: int) -> list["PointCondition"]:
        out = [self]
        nxt = self.frobenius(q)
        while nxt != self:
            out.append(nxt)
            nxt = nxt.frobenius(q)
        return out


def _normalize_direction(d: tuple[FieldElement, FieldElement]) -> tuple[FieldElement, FieldElement]:
    u, v = d
    if u.field != v.field:
        K = _bigger(u.field, v.field)
        u, v = to_field(u, K), to_field(v, K)
    if u:
        return (u.field.one, v / u)
    if v:
        return (u, v.field.one)
    raise ValueError("(0:0) is not a direction")


def _chart(point: PlanePoint) -> tuple[int, int, int, tuple[FieldElement, ...]]:
    """Affine chart at a point: dehomogenize by the last nonzero coordinate."""
    k = max(i for i, c in enumerate(point.coords) if c)
    i, j = [t for t in range(3) if t != k]
    return k, i, j, point.scaled(k)


def _binomial_expand(a: FieldElement, n: int) -> list[FieldElement]:
    """Coefficients of (a + x)^n in x."""
    p = a.field.p
    return [a ** (n - s) * (comb(n, s) % p) for s in range(n + 1)]


def _local_monomials(point: PlanePoint, degree: int, K: FiniteField) -> LinearPoly:
    """Expansion of every degree-d monomial in local coordinates centred at the point."""
    k, i, j, rep = _chart(point)
    rep = tuple(to_field(c, K) for c in rep)
    mons = monomials(degree)
    zero = K.zero
    poly: LinearPoly = {}
    for col, exps in enumerate(mons):
        ex = _binomial_expand(rep[i], exps[i])
        ey = _binomial_expand(rep[j], exps[j])
        for s, cx in enumerate(ex):
            if not cx:
                continue
            for t, cy in enumerate(ey):
                v = cx * cy
                if v:
                    vec = poly.setdefault((s, t), [zero] * len(mons))
                    vec[col] = vec[col] + v
    return poly


def _blow_up(poly: LinearPoly, direction: tuple[FieldElement, FieldElement], mult: int) -> LinearPoly:
    """Virtual transform: substitute a blow-up chart, divide by the exceptional variable, recentre."""
    u, v = direction
    out: LinearPoly = {}
    if u:  # (x, y) -> (x, x y), exceptional divisor x = 0, point y = v/u
        for (s, t), vec in poly.items():
            if s + t >= mult:
                out[(s + t - mult, t)] = vec
        a = v / u
        if a:
            shifted: LinearPoly = {}
            for (s, t), vec in out.items():
                for r, c in enumerate(_binomial_expand(a, t)):
                    if c:
                        tgt = shifted.get((s, r))
                        scaled = [x * c for x in vec]
                        shifted[(s, r)] = scaled if tgt is None else [x + y for x, y in zip(tgt, scaled)]
            out = shifted
    else:  # (x, y) -> (x y, y) rewritten with the exceptional variable first; point at 0
        for (s, t), vec in poly.items():
            if s + t >= mult:
                out[(s + t - mult, s)] = vec
    return out


def _jet_conditions(poly: LinearPoly, mult: int) -> list[list[FieldElement]]:
    return [vec for (s, t), vec in sorted(poly.items()) if s + t < mult and any(vec)]


def _condition_rows(cond: PointCondition, degree: int, K: FiniteField) -> list[list[FieldElement]]:
    mults, dirs = cond.multiplicities, cond.directions
    if any(n != 1 for n in mults[1:]):
        raise Unsupported("only the base of a chain may carry multiplicity above one")
    poly = _local_monomials(cond.point, degree, K)
    rows = _jet_conditions(poly, mults[0])
    for level, d in enumerate(dirs):
        d = (to_field(d[0], K), to_field(d[1], K))
        poly = _blow_up(poly, d, mults[level])
        rows += _jet_conditions(poly, mults[level + 1])
    return rows


def local_jet(f: Form, cond: PointCondition) -> dict[tuple[int, int], FieldElement]:
    """Local polynomial of f at the last point of the condition's chain.

    The transform is taken with the declared multiplicities, so it is the
    virtual transform only when f satisfies the earlier conditions.
    """
    K = _bigger(f.field, cond.field)
    g = f.over(K)
    vec = g.vector()
    poly = _local_monomials(cond.point, f.degree, K)
    for level, d in enumerate(cond.directions):
        d = (to_field(d[0], K), to_field(d[1], K))
        poly = _blow_up(poly, d, cond.multiplicities[level])
    out = {}
    for key, row in poly.items():
        val = K.zero
        for a, b in zip(row, vec):
            if a and b:
                val = val + a * b
        if val:
            out[key] = val
    return out


def vanishes_to_order(f: Form, cond: PointCondition) -> bool:
    """Re-check a condition on a concrete form, level by level along the chain."""
    for depth in range(len(cond.multiplicities)):
        partial = PointCondition(cond.point, cond.multiplicities[: depth + 1], cond.directions[:depth])
        jet = local_jet(f, partial)
        if any(s + t < cond.multiplicities[depth] for (s, t) in jet):
            return False
    return True


def tangent_direction(point: PlanePoint, line: Form) -> tuple[FieldElement, FieldElement]:
    """Direction (u:v) of a line through ``point`` in the point's local chart."""
    cond = PointCondition.ordinary(point, 1)
    jet = local_jet(line, cond)
    if (0, 0) in jet:
        raise GeometryError("line does not pass through the point")
    K = _bigger(line.field, point.field)
    a = jet.get((1, 0), K.zero)
    b = jet.get((0, 1), K.zero)
    return _normalize_direction((b, -a))


def _check_stable(conditions: Sequence[PointCondition], q: int) -> None:
    keyset = set(conditions)
    for c in conditions:
        if c.frobenius(q) not in keyset:
            raise UnstableConditions(f"conjugate of the condition at {c.point} is missing")


def linear_system(d: int, conditions: Sequence[PointCondition], q: int) -> list[Form]:
    """F_q-basis (reduced echelon form) of degree-d forms satisfying all conditions."""
    if d > 4:
        raise ValueError("degree above 4 is not supported")
    _check_stable(conditions, q)
    Fq = base_field(q)
    K = Fq
    for c in conditions:
        K = _bigger(K, c.field)
    emb = field_embedding(Fq, K)
    mons = monomials(d)
    N, eq, E, p = len(mons), Fq.e, K.e, K.p
    # unknown c_j = sum_s c_{js} t^s with c_{js} in F_p; t^s seen inside K
    basis_images = [emb(Fq.from_code(p**s)) for s in range(eq)]
    seen: set[PointCondition] = set()
    rows_p: list[list[int]] = []
    for cond in conditions:
        if cond in seen:
            continue
        # one representative per orbit suffices for rational solutions
        seen.update(cond.conjugates(q))
        for row in _condition_rows(cond, d, K):
            digits = [[0] * (N * eq) for _ in range(E)]
            for j, a in enumerate(row):
                if not a:
                    continue
                for s, b in enumerate(basis_images):
                    for pos, dig in enumerate(K.decode((a * b).code)):
                        digits[pos][j * eq + s] = dig
            rows_p.extend(digits)
    sols = nullspace_mod_p(rows_p, N * eq, p) if rows_p else [
        [int(i == j) for i in range(N * eq)] for j in range(N * eq)
    ]
    if not sols:
        raise EmptySystem("only the zero form satisfies the conditions")
    vectors = [[Fq.encode(sol[j * eq:(j + 1) * eq]) for j in range(N)] for sol in sols]
    vecs = [[Fq.from_code(c) for c in v] for v in vectors]
    reduced, _ = rref(vecs, Fq)
    return [Form.from_vector(d, Fq, r) for r in reduced]


def span_equal(a: Sequence[Form], b: Sequence[Form]) -> bool:
    """Whether two families of forms span the same space (rank test)."""
    if not a or not b:
        return not a and not b
    K = a[0].field
    for f in list(a) + list(b):
        K = _bigger(K, f.field)
    d = a[0].degree
    va = [f.over(K).vector() for f in a]
    vb = [f.over(K).vector() for f in b]
    ra = len(rref(va, K)[0])
    rb = len(rref(vb, K)[0])
    rab = len(rref(va + vb, K)[0])
    return ra == rb == rab and all(f.degree == d for f in list(a) + list(b))


def points_on(f: Form, points: Iterable[PlanePoint]) -> list[PlanePoint]:
    return [pt for pt in points if evaluate(f, pt).is_zero()]


def no_three_collinear(points: Sequence[PlanePoint]) -> bool:
    return not any(collinear(a, b, c) for a, b, c in combinations(points, 3))
