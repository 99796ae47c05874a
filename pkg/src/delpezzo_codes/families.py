"""The eight anticanonical code families.

Each builder fixes a configuration of points in P^2 (deterministically, by a
sweep over field elements in code order), writes down an F_q-basis of the
anticanonical sections as plane forms, and assembles the ordered evaluation
plan: plane points, one representative per contracted rational curve, and for
``deg4-d5`` the q+1 columns coming from the last exceptional line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, count
from typing import Callable, Iterator, Sequence

from .code import nq1_weil_serre
from .gf import FieldElement, FiniteField, make_field, minimal_polynomial, prime_power, trace_norm
from .lattice import LatticeData
from .plane import (
    Form,
    PlanePoint,
    PointCondition,
    base_field,
    collinear,
    enumerate_points,
    evaluate,
    galois_orbit,
    line_through,
    linear_system,
    orbit_product,
    rationalize_span,
    span_equal,
    tangent_direction,
    vanishes_to_order,
)

__all__ = [
    "FamilyError",
    "ExcludedFieldOrder",
    "UnknownFamily",
    "ConfigurationNotFound",
    "ValidationFailed",
    "NoValidRepresentative",
    "FamilyDescriptor",
    "ExpectedParameters",
    "EvalColumn",
    "ContractedCurve",
    "CodeInstance",
    "ValidationReport",
    "FAMILIES",
    "FAMILY_IDS",
    "get_family",
    "expected_parameters",
    "build_instance",
    "contracted_representative",
    "validate_configuration",
]


class FamilyError(ValueError):
    pass


class ExcludedFieldOrder(FamilyError):
    pass


class UnknownFamily(FamilyError):
    pass


class ConfigurationNotFound(FamilyError):
    pass


class ValidationFailed(FamilyError):
    pass


class NoValidRepresentative(FamilyError):
    pass


# --- static descriptors -------------------------------------------------------


def _vec(n: int, entries: dict[int, int]) -> tuple[int, ...]:
    return tuple(entries.get(i, 0) for i in range(n))


def _line_class(n: int, *points: int) -> tuple[int, ...]:
    """E_0 - E_i - E_j - ... in rank n."""
    return _vec(n, {0: 1, **{i: -1 for i in points}})


@dataclass(frozen=True)
class FamilyDescriptor:
    id: str
    degree: int
    label: str
    excluded_q: frozenset[int]
    blown_points: int
    lattice: LatticeData
    expected_report: dict
    length: Callable[[int], int] = field(repr=False)
    exact_distance: Callable[[int], int] | None = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return self.degree + 1

    @property
    def contracted_curves(self) -> int:
        return len(self.lattice.contracted)


FAMILIES: dict[str, FamilyDescriptor] = {
    "deg6-a1": FamilyDescriptor(
        "deg6-a1", 6, "A1", frozenset({2}), 3,
        LatticeData(4, (_line_class(4, 1, 2, 3),), (), ((1, 2, 3),)),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [], "embedding_factors": [2]},
        lambda q: q * q + 1, lambda q: q * q - 2 * q,
    ),
    "deg5-2a1": FamilyDescriptor(
        "deg5-2a1", 5, "2A1", frozenset(), 4,
        LatticeData(5, (_vec(5, {1: 1, 2: -1}), _vec(5, {3: 1, 4: -1})), (), ((1, 3), (2, 4))),
        {"cartier_rank": 2, "weil_free_rank": 2, "torsion": [], "embedding_factors": [1, 2]},
        lambda q: q * q + q + 1, lambda q: q * q - q - 1,
    ),
    "deg4-a1": FamilyDescriptor(
        "deg4-a1", 4, "A1", frozenset({2, 3}), 6,
        LatticeData(7, ((2, -1, -1, -1, -1, -1, -1),), (_line_class(7, 1, 2),), ((1, 2), (3, 4, 5, 6))),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [], "embedding_factors": [1]},
        lambda q: q * q - q + 1,
    ),
    "deg4-4a1": FamilyDescriptor(
        "deg4-4a1", 4, "4A1", frozenset({2}), 6,
        LatticeData(
            7,
            (_line_class(7, 1, 2, 5), _line_class(7, 2, 3, 6), _line_class(7, 3, 4, 5), _line_class(7, 1, 4, 6)),
            (_line_class(7, 5, 6),),
            ((1, 2, 3, 4), (5, 6)),
        ),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [2], "embedding_factors": [1]},
        lambda q: q * q + 1,
    ),
    "deg4-a2": FamilyDescriptor(
        "deg4-a2", 4, "A2", frozenset({2}), 6,
        LatticeData(7, (_line_class(7, 1, 3, 5), _line_class(7, 2, 4, 6)), (_line_class(7, 5, 6),), ((1, 2, 3, 4), (5, 6))),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [], "embedding_factors": [1]},
        lambda q: q * q + 1,
    ),
    "deg4-d5": FamilyDescriptor(
        "deg4-d5", 4, "D5", frozenset(), 5,
        LatticeData(
            6,
            (_line_class(6, 1, 2, 3), _vec(6, {1: 1, 2: -1}), _vec(6, {2: 1, 3: -1}), _vec(6, {3: 1, 4: -1}), _vec(6, {4: 1, 5: -1})),
            (),
            (),
        ),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [], "embedding_factors": [4]},
        lambda q: q * q + q + 1, lambda q: q * q - q,
    ),
    "deg3-a1": FamilyDescriptor(
        "deg3-a1", 3, "A1", frozenset({2}), 6,
        LatticeData(7, ((2, -1, -1, -1, -1, -1, -1),), (), ((1, 2, 3, 4, 5, 6),)),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [], "embedding_factors": [1]},
        lambda q: q * q + 1,
    ),
    "deg3-3a2": FamilyDescriptor(
        "deg3-3a2", 3, "3A2", frozenset(), 6,
        LatticeData(
            7,
            (
                _vec(7, {1: 1, 4: -1}), _vec(7, {2: 1, 5: -1}), _vec(7, {3: 1, 6: -1}),
                _line_class(7, 1, 2, 4), _line_class(7, 2, 3, 5), _line_class(7, 1, 3, 6),
            ),
            (),
            ((1, 2, 3), (4, 5, 6)),
        ),
        {"cartier_rank": 1, "weil_free_rank": 1, "torsion": [3], "embedding_factors": [1]},
        lambda q: q * q + q + 1,
    ),
}

FAMILY_IDS: tuple[str, ...] = tuple(FAMILIES)


def get_family(family_id: str) -> FamilyDescriptor:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise UnknownFamily(f"unknown family {family_id!r}; expected one of {', '.join(FAMILY_IDS)}") from None


@dataclass(frozen=True)
class ExpectedParameters:
    n: int
    k: int
    d: int
    exact: bool
    nq1: int

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "exact": self.exact, "nq1": self.nq1}


def _check_q(desc: FamilyDescriptor, q: int) -> None:
    prime_power(q)
    if q in desc.excluded_q:
        excluded = ", ".join(str(x) for x in sorted(desc.excluded_q))
        raise ExcludedFieldOrder(f"{desc.id} requires q not in {{{excluded}}}, got q = {q}")


def expected_parameters(family_id: str, q: int) -> ExpectedParameters:
    """Length, dimension and minimum distance (exact, or the lower bound n - N_q(1))."""
    desc = get_family(family_id)
    _check_q(desc, q)
    n = desc.length(q)
    nq1 = nq1_weil_serre(q)
    if desc.exact_distance is not None:
        return ExpectedParameters(n, desc.k, desc.exact_distance(q), True, nq1)
    return ExpectedParameters(n, desc.k, n - nq1, False, nq1)


# --- instances ----------------------------------------------------------------


Monomial = tuple[int, int, int]


@dataclass(frozen=True)
class EvalColumn:
    """One coordinate of the code.

    ``plane`` and ``contracted`` columns evaluate at ``coords``; an
    ``exceptional`` column applies the linear functional ``sum w_m * f_m`` to
    the coefficients of a section.
    """

    kind: str
    point: PlanePoint | None = None
    coords: tuple[FieldElement, ...] | None = None
    curve: str | None = None
    p1_point: tuple[FieldElement, FieldElement] | None = None
    functional: tuple[tuple[Monomial, FieldElement], ...] | None = None

    def value(self, f: Form) -> FieldElement:
        if self.kind == "exceptional":
            total = f.field.zero
            for mono, w in self.functional or ():
                total = total + w * f.coefficient(mono)
            return total
        return evaluate(f, self.coords)  # type: ignore[arg-type]

    def describe(self) -> dict:
        if self.kind == "exceptional":
            u, v = self.p1_point  # type: ignore[misc]
            return {"kind": "exceptional", "p1": [u.code, v.code]}
        out = {"kind": self.kind, "point": [c.code for c in self.coords]}  # type: ignore[union-attr]
        if self.curve:
            out["curve"] = self.curve
        return out


@dataclass(frozen=True)
class ContractedCurve:
    name: str
    form: Form


@dataclass
class CodeInstance:
    descriptor: FamilyDescriptor
    q: int
    field: FiniteField
    extension: FiniteField | None
    configuration: dict
    sections: list[Form]
    plan: list[EvalColumn]
    conditions: list[PointCondition]
    contracted: list[ContractedCurve]
    expected: ExpectedParameters
    points: dict[str, PlanePoint] = field(default_factory=dict)
    collinear_triples: tuple[tuple[str, str, str], ...] = ()
    explicit_basis: bool = True

    @property
    def family(self) -> str:
        return self.descriptor.id

    @property
    def n(self) -> int:
        return len(self.plan)

    @property
    def k(self) -> int:
        return len(self.sections)

    def configuration_summary(self) -> dict:
        out = {}
        for key, val in self.configuration.items():
            if isinstance(val, FieldElement):
                out[key] = val.code
            elif isinstance(val, (list, tuple)) and val and isinstance(val[0], FieldElement):
                out[key] = [v.code for v in val]
            elif isinstance(val, Form):
                out[key] = val.serialize()
            else:
                out[key] = val
        if self.extension is not None:
            out["extension"] = self.extension.descriptor()
        out["points"] = {name: pt.codes() for name, pt in self.points.items()}
        return out


@dataclass
class ValidationReport:
    checks: dict[str, bool]
    messages: list[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _plane_column(pt: PlanePoint, y_chart: bool) -> EvalColumn:
    coords = pt.scaled(1) if y_chart else pt.coords
    return EvalColumn("plane", pt, tuple(coords))


def _section_vector(sections: Sequence[Form], coords: Sequence[FieldElement]) -> list[FieldElement]:
    return [evaluate(f, coords) for f in sections]


def contracted_representative(curve: Form, sections: Sequence[Form], q: int) -> PlanePoint:
    """First rational point of the curve, in enumeration order, where some section is nonzero."""
    for pt in enumerate_points(q):
        if evaluate(curve, pt).is_zero() and any(not v.is_zero() for v in _section_vector(sections, pt.coords)):
            return pt
    raise NoValidRepresentative("all sections vanish on every rational point of the curve")


def _assemble_plan(
    q: int,
    sections: Sequence[Form],
    contracted: Sequence[ContractedCurve],
    *,
    keep: Callable[[PlanePoint], bool] = lambda pt: True,
    y_chart: bool = False,
) -> list[EvalColumn]:
    plan = []
    for pt in enumerate_points(q):
        if any(evaluate(c.form, pt).is_zero() for c in contracted):
            continue
        if keep(pt):
            plan.append(_plane_column(pt, y_chart))
    for c in contracted:
        rep = contracted_representative(c.form, sections, q)
        plan.append(EvalColumn("contracted", rep, rep.coords, curve=c.name))
    return plan


def _elements_of_degree(K: FiniteField, q: int, m: int) -> Iterator[FieldElement]:
    """Elements of K of degree exactly m over F_q, in code order."""
    for code in count():
        if code >= K.order:
            return
        x = K.from_code(code)
        y, size = x**q, 1
        while y != x and size <= m:
            y, size = y**q, size + 1
        if size == m:
            yield x


def _meet(l1: Form, l2: Form) -> PlanePoint:
    """Intersection point of two distinct lines."""
    a = l1.vector()
    b = l2.over(l1.field).vector() if l2.field != l1.field else l2.vector()
    cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    return PlanePoint(cross)  # type: ignore[arg-type]


def _extension(q: int, m: int) -> tuple[FiniteField, FiniteField]:
    p, e = prime_power(q)
    return make_field(p, e), make_field(p, e * m)


# --- per-family builders -------------------------------------------------------


def _build_deg6_a1(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 3)
    zeta = K.gen
    p1 = PlanePoint((zeta, K.zero, K.one))
    orbit = galois_orbit(p1, q)
    X, Y, Z = Form.xyz(F)
    a0, a1, a2, _ = minimal_polynomial(zeta, q)
    cubic = X**3 + X * X * Z * a2 + X * Z * Z * a1 + Z**3 * a0
    sections = [Y**3, X * Y * Y, Y * Y * Z, X * X * Y, Y * Z * Z, X * Y * Z, cubic]
    line = line_through(orbit[0], orbit[2]).rational(q)
    contracted = [ContractedCurve("l123", line)]
    plan = _assemble_plan(q, sections, contracted, y_chart=True)
    return CodeInstance(
        FAMILIES["deg6-a1"], q, F, K,
        {"zeta": zeta, "minimal_polynomial": [a0, a1, a2], "l123": line},
        sections, plan, [PointCondition.ordinary(pt) for pt in orbit], contracted,
        expected_parameters("deg6-a1", q),
        points={f"p{i + 1}": pt for i, pt in enumerate(orbit)},
        collinear_triples=(("p1", "p2", "p3"),),
    )


def _build_deg5_2a1(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 2)
    zeta = K.gen
    X, Y, Z = Form.xyz(K)
    L = X - (Y + Z) * zeta
    p1 = PlanePoint((zeta, K.zero, K.one))
    base = PointCondition.chain(p1, [tangent_direction(p1, L)])
    conditions = base.conjugates(q)
    Pi = orbit_product(L, q)
    tr, nm = trace_norm(zeta, q)
    Xf, Yf, Zf = Form.xyz(F)
    sections = [Yf**3, Yf * Yf * Xf, Yf * Yf * (Yf + Zf), Yf * Pi, Xf * Pi, (Yf + Zf) * Pi]
    plan = _assemble_plan(q, sections, [])
    p3 = p1.frobenius(q)
    return CodeInstance(
        FAMILIES["deg5-2a1"], q, F, K,
        {"zeta": zeta, "trace": tr, "norm": nm, "Pi": Pi},
        sections, plan, conditions, [], expected_parameters("deg5-2a1", q),
        points={"p1": p1, "p3": p3},
    )


def _conic_point(t: FieldElement) -> PlanePoint:
    return PlanePoint((t * t, t, t.field.one))


def _build_deg4_a1(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 4)
    Xf, Yf, Zf = Form.xyz(F)
    Q = Yf * Yf - Xf * Zf
    for t1 in _elements_of_degree(K, q, 2):
        for t3 in _elements_of_degree(K, q, 4):
            pts = galois_orbit(_conic_point(t1), q) + galois_orbit(_conic_point(t3), q)
            if len(pts) != 6:
                continue
            p = dict(zip(["p1", "p2", "p3", "p4", "p5", "p6"], pts))
            L12 = line_through(p["p1"], p["p2"]).rational(q)
            L3546 = orbit_product(line_through(p["p3"], p["p5"]), q)
            L13orb = orbit_product(line_through(p["p1"], p["p3"]), q)
            sections = [Q * L12 * Xf, Q * L12 * Yf, Q * L12 * Zf, L12 * L12 * L3546, L13orb]
            conditions = [PointCondition.ordinary(p["p1"], 2), PointCondition.ordinary(p["p2"], 2)]
            conditions += [PointCondition.ordinary(p[f"p{i}"]) for i in range(3, 7)]
            contracted = [ContractedCurve("l12", L12), ContractedCurve("conic", Q)]
            plan = _assemble_plan(q, sections, contracted)
            inst = CodeInstance(
                FAMILIES["deg4-a1"], q, F, K,
                {"t1": t1, "t3": t3, "conic": Q, "l12": L12},
                sections, plan, conditions, contracted, expected_parameters("deg4-a1", q),
                points=p,
            )
            if validate_configuration(inst).ok:
                return inst
    raise ConfigurationNotFound(f"no deg4-a1 configuration over F_{q}")


def _degree4_orbits(q: int, K: FiniteField) -> Iterator[list[PlanePoint]]:
    """Degree-4 orbits (zeta : c : 1), no three collinear, c in code order."""
    zeta = K.gen
    for code in range(K.order):
        c = K.from_code(code)
        orbit = galois_orbit(PlanePoint((zeta, c, K.one)), q)
        if len(orbit) != 4:
            continue
        if any(collinear(a, b, d) for a, b, d in combinations(orbit, 3)):
            continue
        yield orbit


def _build_deg4_4a1(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 4)
    for orbit in _degree4_orbits(q, K):
        p = dict(zip(["p1", "p2", "p3", "p4"], orbit))
        p["p5"] = _meet(line_through(p["p1"], p["p2"]), line_through(p["p3"], p["p4"]))
        p["p6"] = _meet(line_through(p["p2"], p["p3"]), line_through(p["p1"], p["p4"]))
        if p["p5"] == p["p6"] or p["p5"].frobenius(q) != p["p6"]:
            continue
        conditions = [PointCondition.ordinary(p[f"p{i}"]) for i in range(1, 5)]
        conditions += [PointCondition.ordinary(p["p5"], 2), PointCondition.ordinary(p["p6"], 2)]
        sections = linear_system(4, conditions, q)
        if len(sections) != 5:
            continue
        l56 = line_through(p["p5"], p["p6"]).rational(q)
        contracted = [ContractedCurve("l56", l56)]
        inst = CodeInstance(
            FAMILIES["deg4-4a1"], q, F, K,
            {"c": orbit[0].coords[1], "l56": l56},
            sections, _assemble_plan(q, sections, contracted), conditions, contracted,
            expected_parameters("deg4-4a1", q),
            points=p,
            collinear_triples=(("p1", "p2", "p5"), ("p2", "p3", "p6"), ("p3", "p4", "p5"), ("p1", "p4", "p6")),
            explicit_basis=False,
        )
        if validate_configuration(inst).ok:
            return inst
    raise ConfigurationNotFound(f"no deg4-4a1 configuration over F_{q}")


def _points_of_line_over(line: Form, K: FiniteField, q2: int) -> Iterator[PlanePoint]:
    """Points of the line with coordinates in F_{q2} (inside K), in enumeration order."""
    sub = [x for x in K.elements() if x**q2 == x]
    one, zero = K.one, K.zero
    cands = [(one, y, z) for y in sub for z in sub] + [(zero, one, z) for z in sub] + [(zero, zero, one)]
    for c in cands:
        if evaluate(line, c).is_zero():
            yield PlanePoint(c)  # type: ignore[arg-type]


def _build_deg4_a2(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 4)
    for orbit in _degree4_orbits(q, K):
        p = dict(zip(["p1", "p2", "p3", "p4"], orbit))
        l13 = line_through(p["p1"], p["p3"])
        l24 = line_through(p["p2"], p["p4"])
        meet = _meet(l13, l24)
        for p5 in _points_of_line_over(l13, K, q * q):
            if p5 in (p["p1"], p["p3"], meet) or p5.degree(q) != 2:
                continue
            p["p5"], p["p6"] = p5, p5.frobenius(q)
            conditions = [PointCondition.ordinary(p[f"p{i}"]) for i in range(1, 5)]
            conditions += [PointCondition.ordinary(p["p5"], 2), PointCondition.ordinary(p["p6"], 2)]
            sections = linear_system(4, conditions, q)
            if len(sections) != 5:
                continue
            l56 = line_through(p["p5"], p["p6"]).rational(q)
            contracted = [ContractedCurve("l56", l56)]
            inst = CodeInstance(
                FAMILIES["deg4-a2"], q, F, K,
                {"c": orbit[0].coords[1], "l56": l56},
                sections, _assemble_plan(q, sections, contracted), conditions, contracted,
                expected_parameters("deg4-a2", q),
                points=dict(p),
                collinear_triples=(("p1", "p3", "p5"), ("p2", "p4", "p6")),
                explicit_basis=False,
            )
            if validate_configuration(inst).ok:
                return inst
    raise ConfigurationNotFound(f"no deg4-a2 configuration over F_{q}")


def _field_option(F: FiniteField, value: int | FieldElement | None, default: int) -> FieldElement:
    if value is None:
        return F.from_code(default)
    if isinstance(value, FieldElement):
        return value if value.field == F else F(value)
    return F.from_code(value)


def _build_deg4_d5(q: int, opts: dict) -> CodeInstance:
    F = base_field(q)
    alpha = _field_option(F, opts.get("alpha"), 1)
    beta = _field_option(F, opts.get("beta"), 0)
    if alpha.is_zero():
        raise FamilyError("alpha must be nonzero")
    one, zero = F.one, F.zero
    X, Y, Z = Form.xyz(F)
    sections = [
        Y * Z * Z * alpha - X * Y * Z * beta - X**3 * (alpha * alpha),
        Y**3, X * X * Y, X * Y * Y, Y * Y * Z,
    ]
    p1 = PlanePoint((zero, zero, one))
    chain = PointCondition.chain(p1, [(one, zero), (one, zero), (one, alpha), (one, beta)])
    plan = [_plane_column(pt, True) for pt in enumerate_points(q) if pt.coords[1]]
    directions = [(one, v) for v in F.elements()] + [(zero, one)]
    for u, v in directions:
        weights = (((2, 1, 0), alpha * u), ((1, 1, 1), beta * u), ((0, 1, 2), v))
        plan.append(EvalColumn("exceptional", p1_point=(u, v), functional=weights))
    return CodeInstance(
        FAMILIES["deg4-d5"], q, F, None,
        {"alpha": alpha, "beta": beta},
        sections, plan, [chain], [], expected_parameters("deg4-d5", q),
        points={"p1": p1},
    )


def _build_deg3_a1(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 6)
    Xf, Yf, Zf = Form.xyz(F)
    Q = Yf * Yf - Xf * Zf
    for t in _elements_of_degree(K, q, 6):
        pts = galois_orbit(_conic_point(t), q)
        p = {f"p{i + 1}": pt for i, pt in enumerate(pts)}
        L = orbit_product(line_through(p["p1"], p["p4"]), q)
        sections = [Xf * Q, Yf * Q, Zf * Q, L]
        contracted = [ContractedCurve("conic", Q)]
        inst = CodeInstance(
            FAMILIES["deg3-a1"], q, F, K,
            {"t": t, "conic": Q},
            sections, _assemble_plan(q, sections, contracted),
            [PointCondition.ordinary(pt) for pt in pts], contracted,
            expected_parameters("deg3-a1", q),
            points=p,
        )
        if validate_configuration(inst).ok:
            return inst
    raise ConfigurationNotFound(f"no deg3-a1 configuration over F_{q}")


def _build_deg3_3a2(q: int, opts: dict) -> CodeInstance:
    F, K = _extension(q, 3)
    zeta = K.gen
    for code in range(K.order):
        c = K.from_code(code)
        orbit = galois_orbit(PlanePoint((zeta, c, K.one)), q)
        if len(orbit) != 3 or collinear(*orbit):
            continue
        p = dict(zip(["p1", "p2", "p3"], orbit))
        L12 = line_through(p["p1"], p["p2"])
        L23 = L12.frobenius(q)
        L31 = L23.frobenius(q)
        base = PointCondition.chain(p["p1"], [tangent_direction(p["p1"], L12)])
        conditions = base.conjugates(q)
        f = L12 * L23 * L23
        sections = rationalize_span([f, f.frobenius(q), f.frobenius(q).frobenius(q)], q)
        sections.append(orbit_product(L12, q))
        inst = CodeInstance(
            FAMILIES["deg3-3a2"], q, F, K,
            {"zeta": zeta, "c": c, "theta": K.gen, "l12": L12, "l23": L23, "l31": L31},
            sections, _assemble_plan(q, sections, []), conditions, [],
            expected_parameters("deg3-3a2", q),
            points=p,
        )
        if validate_configuration(inst).ok:
            return inst
    raise ConfigurationNotFound(f"no deg3-3a2 configuration over F_{q}")


_BUILDERS: dict[str, Callable[[int, dict], CodeInstance]] = {
    "deg6-a1": _build_deg6_a1,
    "deg5-2a1": _build_deg5_2a1,
    "deg4-a1": _build_deg4_a1,
    "deg4-4a1": _build_deg4_4a1,
    "deg4-a2": _build_deg4_a2,
    "deg4-d5": _build_deg4_d5,
    "deg3-a1": _build_deg3_a1,
    "deg3-3a2": _build_deg3_3a2,
}


def build_instance(
    family_id: str,
    q: int,
    *,
    alpha: int | FieldElement | None = None,
    beta: int | FieldElement | None = None,
    seed: int | None = None,
) -> CodeInstance:
    """Build the code instance of a family over F_q.

    ``alpha`` and ``beta`` (deg4-d5 only) may be field elements or integer
    codes.  ``seed`` is accepted for interface stability; the configuration
    search is deterministic and does not use it.
    """
    desc = get_family(family_id)
    _check_q(desc, q)
    inst = _BUILDERS[family_id](q, {"alpha": alpha, "beta": beta})
    report = validate_configuration(inst)
    if not report.ok:
        raise ValidationFailed("; ".join(report.messages))
    return inst


# --- validation -----------------------------------------------------------------


def _proportional(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> bool:
    return all((x * y2 - x2 * y).is_zero() for (x, x2), (y, y2) in combinations(zip(a, b), 2)) if len(a) > 1 else True


def validate_configuration(inst: CodeInstance) -> ValidationReport:
    """Check the geometric hypotheses behind an instance."""
    checks: dict[str, bool] = {}
    msgs: list[str] = []
    q = inst.q

    def record(name: str, ok: bool, msg: str) -> None:
        checks[name] = checks.get(name, True) and ok
        if not ok:
            msgs.append(msg)

    # orbit degrees: every blown-up point is non-rational, conjugates come in full orbits
    for name, pt in inst.points.items():
        if inst.family == "deg4-d5":
            continue
        record("orbit_degrees", not pt.is_rational(q), f"{name} is rational")
    for cond in inst.conditions:
        record("orbit_degrees", all(c in inst.conditions for c in cond.conjugates(q)), "condition set not Galois stable")

    # collinear triples are exactly the declared ones
    if inst.collinear_triples or inst.family in ("deg4-a1", "deg3-a1"):
        declared = {frozenset(t) for t in inst.collinear_triples}
        for trio in combinations(sorted(inst.points), 3):
            is_col = collinear(*(inst.points[n] for n in trio))
            record("collinearity", is_col == (frozenset(trio) in declared), f"collinearity of {trio} is {is_col}")

    # sections: count, rationality, vanishing at the configuration
    record("section_count", len(inst.sections) == inst.descriptor.k, f"{len(inst.sections)} sections")
    record("rationality", all(f.field == inst.field for f in inst.sections), "section not over F_q")
    for f in inst.sections:
        for cond in inst.conditions:
            record("base_points", vanishes_to_order(f, cond), f"section does not satisfy condition at {cond.point}")

    # section space is the full solution space
    try:
        solved = linear_system(inst.sections[0].degree, inst.conditions, q)
    except ValueError as exc:
        solved = []
        msgs.append(str(exc))
    record("dimension", len(solved) == inst.descriptor.k, f"system dimension {len(solved)}")
    record("dimension", span_equal(solved, inst.sections), "sections do not span the solution space")

    # plan: length, nonvanishing columns, contraction consistency
    record("length", len(inst.plan) == inst.expected.n, f"plan length {len(inst.plan)} != {inst.expected.n}")
    for col in inst.plan:
        if col.kind == "exceptional":
            continue
        vec = [col.value(f) for f in inst.sections]
        record("nonzero_columns", any(not v.is_zero() for v in vec), f"all sections vanish at {col.point}")
    rational = enumerate_points(q)
    for curve in inst.contracted:
        vecs = [
            _section_vector(inst.sections, pt.coords)
            for pt in rational
            if evaluate(curve.form, pt).is_zero()
        ]
        vecs = [v for v in vecs if any(not x.is_zero() for x in v)]
        record("contraction", bool(vecs), f"{curve.name}: no nonvanishing rational point")
        for v in vecs[1:]:
            record("contraction", _proportional(vecs[0], v), f"{curve.name}: section vectors not proportional")
    return ValidationReport(checks, msgs)
