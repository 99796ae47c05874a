"""Arithmetic in small finite fields F_{p^e}.

Elements are stored by their integer code ``sum(c_i * p**i)`` where ``c_i`` are
the polynomial-basis coordinates (constant term first).  The integer code is
also the serialization format and the enumeration order of the field.

Fields are built over the prime field only; a field F_{q^m} with q = p^e is the
field of absolute degree e*m, and F_q sits inside it as the set of x with
x^q = x.  :func:`field_embedding` fixes one explicit embedding between the two
models so that constants computed in an extension can be brought back to the
base-field model (and vice versa).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

__all__ = [
    "FieldError",
    "NonPrimeCharacteristic",
    "DegreeOutOfRange",
    "NotASubfield",
    "NotPrimePower",
    "FiniteField",
    "FieldElement",
    "FieldEmbedding",
    "make_field",
    "field_of_order",
    "is_prime",
    "prime_power",
    "frobenius",
    "minimal_polynomial",
    "trace_norm",
    "enumerate_field",
    "field_embedding",
    "relative_degree",
    "rref",
    "nullspace",
    "rank",
    "nullspace_mod_p",
]

MAX_DEGREE = 18
# Fields up to this order get log/antilog tables for multiplication.
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    """Base class for field construction errors."""


class NonPrimeCharacteristic(FieldError):
    pass


class DegreeOutOfRange(FieldError):
    pass


class NotASubfield(FieldError):
    pass


class NotPrimePower(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise :class:`NotPrimePower`."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def _factor(n: int) -> list[int]:
    primes, f = [], 2
    while f * f <= n:
        if n % f == 0:
            primes.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        primes.append(n)
    return primes


# --- dense polynomials over F_p, lists of ints, constant term first ---------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    """Product of two reduced residues modulo a monic ``mod``."""
    e = len(mod) - 1
    prod = [0] * (2 * e - 1 if e else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(e):
                prod[k - e + j] -= c * mod[j]
        prod[k] = 0
    return [c % p for c in prod[:e]]


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    inv = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return quot, a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: gcd(f, x^{p^i} - x) = 1 for i <= deg/2."""
    e = len(f) - 1
    if e == 1:
        return True
    if f[0] % p == 0:
        return False
    x = [0, 1] + [0] * (e - 2)
    power = list(x)
    for _ in range(e // 2):
        # power <- power^p mod f
        acc = [1] + [0] * (e - 1)
        base, k = power, p
        while k:
            if k & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            k >>= 1
        power = acc
        diff = [(power[i] - x[i]) % p for i in range(e)]
        if len(_poly_gcd(list(f), diff, p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e with the smallest integer code."""
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        cand = low + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """The field F_{p^e} = F_p[t]/(modulus).

    Instances are interned by :func:`make_field`; compare them with ``is`` or
    ``==`` (equality is by ``(p, e)``).
    """

    __slots__ = ("p", "e", "order", "modulus", "_exp", "_log", "_elements", "__weakref__")

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus = tuple(modulus)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._elements: list[FieldElement] | None = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # -- descriptors ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __reduce__(self):
        return (make_field, (self.p, self.e))

    def descriptor(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    # -- element construction ------------------------------------------------

    def __call__(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        """Build an element from an integer of F_p, a coefficient list or an element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        coeffs = list(value)
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        return FieldElement(self, self.encode(coeffs))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t; it generates the field over every subfield."""
        return FieldElement(self, self.p if self.e > 1 else 1)

    def elements(self) -> list["FieldElement"]:
        if self._elements is None:
            self._elements = [FieldElement(self, c) for c in range(self.order)]
        return list(self._elements)

    # -- codec -----------------------------------------------------------------

    def encode(self, coeffs: Iterable[int]) -> int:
        code, scale = 0, 1
        for c in coeffs:
            code += (c % self.p) * scale
            scale *= self.p
        return code

    def decode(self, code: int) -> list[int]:
        out = []
        for _ in range(self.e):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    # -- raw arithmetic on codes -----------------------------------------------

    def add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg_code(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        p, out, scale = self.p, 0, 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * scale
            scale *= p
        return out

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self.encode(_poly_mulmod(self.decode(a), self.decode(b), self.modulus, self.p))

    def pow_code(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv_code(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        if self.e == 1:
            return pow(a, k, self.p)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul_codes(result, base)
            base = self.mul_codes(base, base)
            k >>= 1
        return result

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self.pow_code(a, self.order - 2)

    def _build_tables(self) -> None:
        if self.e == 1:
            return
        n = self.order - 1
        cofactors = [n // f for f in _factor(n)]
        gen = None
        for code in range(2, self.order):
            if all(self._slow_pow(code, c) != 1 for c in cofactors):
                gen = code
                break
        assert gen is not None
        p, e, mod = self.p, self.e, self.modulus
        g_terms = [(j, c) for j, c in enumerate(self.decode(gen)) if c]
        exp = [0] * n
        log = [0] * self.order
        cur = [1] + [0] * (e - 1)
        for i in range(n):
            c = self.encode(cur)
            exp[i] = c
            log[c] = i
            prod = [0] * (2 * e)
            for j, gj in g_terms:
                for k, ck in enumerate(cur):
                    if ck:
                        prod[j + k] += gj * ck
            for k in range(2 * e - 1, e - 1, -1):
                top = prod[k] % p
                if top:
                    for j in range(e):
                        prod[k - e + j] -= top * mod[j]
            cur = [v % p for v in prod[:e]]
        self._exp, self._log = exp, log

    def _slow_pow(self, a: int, k: int) -> int:
        result, base = [1] + [0] * (self.e - 1), self.decode(a)
        while k:
            if k & 1:
                result = _poly_mulmod(result, base, self.modulus, self.p)
            base = _poly_mulmod(base, base, self.modulus, self.p)
            k >>= 1
        return self.encode(result)


class FieldElement:
    """An element of a :class:`FiniteField`, identified by its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.code == other.code and self.field == other.field
        if isinstance(other, int):
            return self.code == other % self.field.p and (self.code < self.field.p)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.code))

    def __reduce__(self):
        return (FieldElement, (self.field, self.code))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.decode(self.code))

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "FieldElement":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_codes(self.code, b))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __sub__(self, other: object) -> "FieldElement":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_codes(self.code, self.field.neg_code(b)))

    def __rsub__(self, other: object) -> "FieldElement":
        return (-self) + other

    def __mul__(self, other: object) -> "FieldElement":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_codes(self.code, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_code(self.code))

    def __truediv__(self, other: object) -> "FieldElement":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_codes(self.code, self.field.inv_code(b)))

    def __rtruediv__(self, other: object) -> "FieldElement":
        return self.inverse() * other

    def __pow__(self, k: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow_code(self.code, k))

    def __bool__(self) -> bool:
        return self.code != 0

    def is_zero(self) -> bool:
        return self.code == 0

    def is_one(self) -> bool:
        return self.code == 1

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = "" if (c == 1 and mono) else str(c)
                terms.append(f"{coef}{mono}")
        return " + ".join(reversed(terms)) or "0"


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> FiniteField:
    """Return F_{p^e} with the lexicographically smallest monic irreducible modulus.

    "Smallest" means smallest integer code ``sum(c_i p^i)`` of the coefficient
    vector.  The result is cached, so repeated calls return the same object.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise DegreeOutOfRange(f"degree {e} outside 1..{MAX_DEGREE}")
    return FiniteField(p, e, _smallest_irreducible(p, e))


def field_of_order(q: int) -> FiniteField:
    p, e = prime_power(q)
    return make_field(p, e)


def relative_degree(field: FiniteField, q: int) -> int:
    """Return m with q^m = |field|, or raise :class:`NotASubfield`."""
    try:
        p, e = prime_power(q)
    except NotPrimePower as exc:
        raise NotASubfield(str(exc)) from None
    if p != field.p or field.e % e:
        raise NotASubfield(f"F_{q} is not a subfield of {field!r}")
    return field.e // e


def frobenius(x: FieldElement, q: int) -> FieldElement:
    """Return x^q, where F_q must be a subfield of x's field."""
    relative_degree(x.field, q)
    return x**q


def _orbit(x: FieldElement, q: int) -> list[FieldElement]:
    relative_degree(x.field, q)
    orbit = [x]
    y = x**q
    while y != x:
        orbit.append(y)
        y = y**q
    return orbit


def enumerate_field(field: FiniteField) -> list[FieldElement]:
    """All elements in increasing integer-code order."""
    return field.elements()


# --- embeddings -------------------------------------------------------------


class FieldEmbedding:
    """The embedding of the model ``small`` = F_q into ``big`` = F_{q^m}.

    The image of the generator t of ``small`` is the smallest-code root of
    ``small.modulus`` in ``big``.  The inverse map (for elements of the image)
    uses a precomputed lookup table.
    """

    def __init__(self, small: FiniteField, big: FiniteField):
        relative_degree(big, small.order)
        self.small, self.big = small, big
        self.image_of_gen = self._root()
        powers = [big.one]
        for _ in range(small.e - 1):
            powers.append(powers[-1] * self.image_of_gen)
        self._forward: list[int] = []
        for code in range(small.order):
            acc = big.zero
            for c, pw in zip(small.decode(code), powers):
                if c:
                    acc = acc + pw * c
            self._forward.append(acc.code)
        self._backward = {b: a for a, b in enumerate(self._forward)}

    def _root(self) -> FieldElement:
        small, big = self.small, self.big
        if small.e == 1:
            return big.one
        mod = small.modulus
        # the subfield F_q of big is {0} together with the (|big|-1)/(q-1) powers
        exponent = (big.order - 1) // (small.order - 1)
        members: set[int] = set()
        for code in range(1, big.order):
            members.add(big.pow_code(code, exponent))
            if len(members) == small.order - 1:
                break
        roots = []
        for code in sorted(members):
            x = big.from_code(code)
            val = big.zero
            for c in reversed(mod):
                val = val * x + c
            if val.is_zero():
                roots.append(x)
        return min(roots, key=lambda r: r.code)

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field == self.big:
            return x
        if x.field != self.small:
            raise ValueError(f"{x!r} is not in {self.small!r}")
        return FieldElement(self.big, self._forward[x.code])

    def restrict(self, y: FieldElement) -> FieldElement:
        """Inverse map; raises :class:`NotASubfield` if y is not in the image."""
        if y.field == self.small:
            return y
        try:
            return FieldElement(self.small, self._backward[y.code])
        except KeyError:
            raise NotASubfield(f"{y!r} does not lie in F_{self.small.order}") from None

    def contains(self, y: FieldElement) -> bool:
        return y.code in self._backward

    def subfield_elements(self) -> list[FieldElement]:
        """Image of the small field, listed in the small field's order."""
        return [FieldElement(self.big, c) for c in self._forward]


@lru_cache(maxsize=None)
def field_embedding(small: FiniteField, big: FiniteField) -> FieldEmbedding:
    return FieldEmbedding(small, big)


def _to_base(values: Sequence[FieldElement], q: int) -> list[FieldElement]:
    field = values[0].field
    base = make_field(field.p, prime_power(q)[1])
    emb = field_embedding(base, field)
    return [emb.restrict(v) for v in values]


def minimal_polynomial(x: FieldElement, q: int) -> list[FieldElement]:
    """Minimal polynomial of x over F_q, coefficients in the F_q model, constant first."""
    orbit = _orbit(x, q)
    coeffs = [x.field.one]
    for root in orbit:
        # multiply by (X - root)
        shifted = [x.field.zero] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - root * c
        coeffs = shifted
    return _to_base(coeffs, q)


def trace_norm(x: FieldElement, q: int) -> tuple[FieldElement, FieldElement]:
    """Relative trace and norm of x down to F_q, returned in the F_q model."""
    m = relative_degree(x.field, q)
    tr, nm, y = x.field.zero, x.field.one, x
    for _ in range(m):
        tr = tr + y
        nm = nm * y
        y = y**q
    return tuple(_to_base([tr, nm], q))  # type: ignore[return-value]


# --- linear algebra over a field ------------------------------------------


def rref(rows: Sequence[Sequence[FieldElement]], field: FiniteField) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[FieldElement]], field: FiniteField) -> int:
    return len(rref(rows, field)[0])


def nullspace(rows: Sequence[Sequence[FieldElement]], ncols: int, field: FiniteField) -> list[list[FieldElement]]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Same as :func:`nullspace` for plain integers modulo a prime p."""
    m = [[v % p for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(m[:r], pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def iter_vectors(field: FiniteField, length: int) -> Iterator[tuple[FieldElement, ...]]:
    """All vectors of the given length, in odometer order."""
    return product(field.elements(), repeat=length)
