"""Exact arithmetic in GF(p^h) with canonical subfield embeddings.

Elements are plain ints: the coefficient vector (c0, ..., c_{h-1}) of an
element with respect to the power basis 1, x, ..., x^{h-1} of the modulus
root x is encoded as c0 + c1*p + ... + c_{h-1}*p^{h-1}.  Integer order
therefore coincides with lexicographic order on (c_{h-1}, ..., c0).
"""
from __future__ import annotations

import functools
import itertools
import re

import numpy as np


class FieldError(ValueError):
    """Invalid field construction or field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- polynomials over GF(p), coefficient lists low -> high -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_powmod(a, e, m, p):
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def monic_polys(p, deg):
    """Monic polynomials of degree ``deg`` ordered by (c_{deg-1}, ..., c0)."""
    for coeffs in itertools.product(range(p), repeat=deg):
        yield list(reversed(coeffs)) + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in monic_polys(p, d):
            if not poly_mod(poly, f, p):
                return False
    return True


def _root_is_primitive(poly, p) -> bool:
    h = len(poly) - 1
    order = p ** h - 1
    x = [0, 1]
    if poly_powmod(x, order, poly, p) != [1]:
        return False
    return all(poly_powmod(x, order // l, poly, p) != [1]
               for l in prime_factors(order))


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, h: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree h whose root is primitive."""
    if h == 1:
        return (0, 1)
    for f in monic_polys(p, h):
        if is_irreducible(f, p) and _root_is_primitive(f, p):
            return tuple(f)
    raise FieldError(f"no primitive polynomial of degree {h} over GF({p})")


# -- the field ---------------------------------------------------------------

class FieldTower:
    """GF(p^h) with its subfield chain.

    Arithmetic tables are numpy arrays (``add_t``, ``mul_t``, ...) for
    vectorised work, mirrored as nested lists (``add_l``, ``mul_l``) for
    scalar loops.
    """

    def __init__(self, p: int, h: int, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if h < 1:
            raise FieldError("extension degree must be positive")
        if modulus is None:
            modulus = default_modulus(p, h)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != h + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree h")
        if h > 1 and not is_irreducible(list(modulus), p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.h = h
        self.modulus = modulus
        self.order = p ** h
        self.subfield_degrees = tuple(divisors(h))
        self._build_tables()

    # construction ---------------------------------------------------------

    def _poly_to_int(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a))

    def _int_to_poly(self, x):
        out = []
        for _ in range(self.h):
            out.append(x % self.p)
            x //= self.p
        return out

    def _slow_mul(self, a, b):
        if self.h == 1:
            return a * b % self.p
        prod = poly_mod(poly_mul(self._int_to_poly(a), self._int_to_poly(b), self.p),
                        list(self.modulus), self.p)
        return self._poly_to_int(prod)

    def _slow_order(self, a):
        k, x = 1, a
        while x != 1:
            x = self._slow_mul(x, a)
            k += 1
        return k

    def _build_tables(self):
        p, h, N = self.p, self.h, self.order
        if h == 1:
            gen = next(a for a in range(1, p) if self._slow_order(a) == p - 1)
        elif _root_is_primitive(list(self.modulus), p):
            gen = p  # the class of x
        else:
            # root of the given modulus is not primitive: use the smallest
            # primitive element as generator instead
            gen = next(a for a in range(2, N) if self._slow_order(a) == N - 1)
        self.generator = gen

        exp = np.zeros(2 * (N - 1), dtype=np.int64)
        x = 1
        for i in range(N - 1):
            exp[i] = x
            x = self._slow_mul(x, gen)
        exp[N - 1:] = exp[:N - 1]
        log = np.full(N, -1, dtype=np.int64)
        log[exp[:N - 1]] = np.arange(N - 1)
        self.exp_t = exp
        self.log_t = log

        digits = np.array([self._int_to_poly(a) for a in range(N)], dtype=np.int64)
        weights = p ** np.arange(h, dtype=np.int64)
        self.digits = digits
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        la = log[:, None] + log[None, :]
        mul = exp[la % (N - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = np.zeros(N, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (N - 1)]
        self.add_t = add
        self.mul_t = mul
        self.neg_t = neg
        self.sub_t = add[:, neg]
        self.inv_t = inv
        self.add_l = add.tolist()
        self.mul_l = mul.tolist()
        self.neg_l = neg.tolist()
        self.inv_l = inv.tolist()
        self._subfields = {}

    # identity -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldTower) and self.p == other.p
                and self.h == other.h and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.h})"

    def spec(self) -> str:
        return f"{self.p}^{self.h}:poly=" + ",".join(map(str, self.modulus))

    # scalar arithmetic on ints ------------------------------------------------

    def _check(self, a):
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of {self!r}")

    def add(self, a, b):
        return self.add_l[a][b]

    def sub(self, a, b):
        return self.add_l[a][self.neg_l[b]]

    def neg(self, a):
        return self.neg_l[a]

    def mul(self, a, b):
        return self.mul_l[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_l[a]

    def div(self, a, b):
        return self.mul_l[a][self.inv(b)]

    def power(self, a, e):
        """a^e by square-and-multiply."""
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul_l[result][a]
            a = self.mul_l[a][a]
            e >>= 1
        return result

    def scalar(self, k):
        """Image of the integer k in the prime field."""
        return k % self.p

    def elements(self):
        return range(self.order)

    def frob(self, a, d=1):
        """a^(p^d)."""
        if self.h % d:
            raise FieldError(f"{d} does not divide {self.h}")
        for _ in range(d):
            a = self.power(a, self.p)
        return a

    def frob_array(self, arr, s):
        """Entrywise x -> x^(p^s) on an int array."""
        s %= self.h
        if s == 0:
            return np.asarray(arr)
        tables = self.__dict__.setdefault("_frob_tables", {})
        if s not in tables:
            e = self.p ** s
            tables[s] = np.array([self.power(a, e) for a in range(self.order)], dtype=np.int64)
        return tables[s][np.asarray(arr)]

    def trace(self, a, d=1):
        """Trace to the subfield of order p^d (result as an element of self)."""
        if self.h % d:
            raise FieldError(f"{d} does not divide {self.h}")
        total, y = 0, a
        for _ in range(self.h // d):
            total = self.add_l[total][y]
            y = self.frob(y, d)
        return total

    def norm(self, a, d=1):
        if self.h % d:
            raise FieldError(f"{d} does not divide {self.h}")
        total, y = 1, a
        for _ in range(self.h // d):
            total = self.mul_l[total][y]
            y = self.frob(y, d)
        return total

    def is_square(self, a):
        if a == 0:
            raise FieldError("squareness of 0 is not defined")
        if self.p == 2:
            return True
        return self.power(a, (self.order - 1) // 2) == 1

    def in_subfield(self, a, d):
        return self.frob(a, d) == a

    def element(self, a) -> "FieldElement":
        self._check(a)
        return FieldElement(self, a)

    def subfield(self, d) -> "Subfield":
        if self.h % d:
            raise FieldError(f"{d} does not divide {self.h}")
        if d not in self._subfields:
            self._subfields[d] = Subfield(self, d)
        return self._subfields[d]


class Subfield:
    """Canonical copy of GF(p^d) inside a tower GF(p^h).

    ``small`` is exactly ``make_tower(p, d)``; ``embed[c]`` is the image of
    the small-field element c in the big field, chosen so that the default
    modulus root of the small field maps to the least root in the big field.
    The big field is then a vector space of dimension t = h/d over the
    subfield with power basis 1, g, ..., g^{t-1} (g the big generator).
    """

    def __init__(self, big: FieldTower, d: int):
        self.big = big
        self.d = d
        self.t = big.h // d
        self.small = make_tower(big.p, d)
        p = big.p
        if d == big.h:
            embed = np.arange(big.order, dtype=np.int64)
            if self.small != big:
                raise FieldError("subfield of full degree must use the default modulus")
        else:
            fixed = [a for a in big.elements() if big.frob(a, d) == a]
            mod = self.small.modulus
            rho = None
            for a in fixed:
                val, pw = 0, 1
                for c in mod:
                    val = big.add(val, big.mul(big.scalar(c), pw))
                    pw = big.mul(pw, a)
                if val == 0:
                    rho = a
                    break
            if d == 1:
                rho = 0 if rho is None else rho
            if rho is None:
                raise FieldError("could not embed subfield")
            powers = [1]
            for _ in range(d - 1):
                powers.append(big.mul(powers[-1], rho))
            embed = np.zeros(self.small.order, dtype=np.int64)
            for c in range(self.small.order):
                digs = self.small.digits[c]
                v = 0
                for i in range(d):
                    v = big.add(v, big.mul(big.scalar(int(digs[i])), powers[i]))
                embed[c] = v
        self.embed = embed
        restrict = np.full(big.order, -1, dtype=np.int64)
        restrict[embed] = np.arange(self.small.order)
        self.restrict = restrict

        g = big.generator
        basis = [1]
        for _ in range(self.t - 1):
            basis.append(big.mul(basis[-1], g))
        self.basis = tuple(basis)
        # from_coords[code] for code = sum c_j q^j
        q = self.small.order
        combos = np.array(list(itertools.product(range(q), repeat=self.t)),
                          dtype=np.int64)[:, ::-1]
        codes = combos @ (q ** np.arange(self.t, dtype=np.int64))
        vals = np.zeros(len(combos), dtype=np.int64)
        for j, b in enumerate(basis):
            vals = big.add_t[vals, big.mul_t[embed[combos[:, j]], b]]
        from_code = np.zeros(q ** self.t, dtype=np.int64)
        from_code[codes] = vals
        if len(set(vals.tolist())) != big.order:
            raise FieldError("power basis is not a basis over the subfield")
        to_coords = np.zeros((big.order, self.t), dtype=np.int64)
        to_coords[vals] = combos
        self.from_code = from_code
        self.coords = to_coords
        self.coords_l = to_coords.tolist()

    @property
    def q(self):
        return self.small.order

    def to_small(self, a):
        s = int(self.restrict[a])
        if s < 0:
            raise FieldError(f"{a} is not in the subfield of order {self.q}")
        return s

    def to_big(self, c):
        return int(self.embed[c])

    def to_vector(self, a):
        return tuple(self.coords_l[a])

    def from_vector(self, vec):
        if len(vec) != self.t:
            raise FieldError(f"expected {self.t} coordinates, got {len(vec)}")
        code = 0
        for j, c in enumerate(vec):
            if not 0 <= c < self.q:
                raise FieldError(f"coordinate {c} outside GF({self.q})")
            code += c * self.q ** j
        return int(self.from_code[code])


@functools.lru_cache(maxsize=None)
def _cached_tower(p, h, modulus):
    return FieldTower(p, h, modulus)


def make_tower(p: int, h: int, modulus=None) -> FieldTower:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if h < 1:
        raise FieldError("extension degree must be positive")
    if modulus is None:
        modulus = default_modulus(p, h)
    return _cached_tower(p, h, tuple(int(c) for c in modulus))


def field_of_order(q: int) -> FieldTower:
    for p in prime_factors(q)[:1]:
        h = 0
        n = q
        while n % p == 0:
            n //= p
            h += 1
        if n == 1:
            return make_tower(p, h)
    raise FieldError(f"{q} is not a prime power")


def prime_power(q: int) -> tuple[int, int]:
    f = prime_factors(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    p, h = f[0], 0
    while q > 1:
        q //= p
        h += 1
    return p, h


# -- element wrapper ---------------------------------------------------------

class FieldElement:
    """An element of a specific tower, with operator overloads."""

    __slots__ = ("tower", "value")

    def __init__(self, tower: FieldTower, value: int):
        self.tower = tower
        self.value = int(value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.tower != self.tower:
                raise FieldError("elements of different towers")
            return other.value
        if isinstance(other, int):
            return self.tower.scalar(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.tower, v)

    def __add__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.tower.neg(self.value))

    def __pow__(self, e):
        return self._wrap(self.tower.power(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower == other.tower and self.value == other.value
        if isinstance(other, int):
            return self.value == self.tower.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.tower, self.value))

    def __repr__(self):
        return serialize_element(self.tower, self.value)

    def inverse(self):
        return self._wrap(self.tower.inv(self.value))

    def frobenius(self, d=1):
        return frobenius(self, d)

    def trace(self, d=1):
        return trace_to(self, d)

    def is_square(self):
        return is_square(self)

    def to_vector(self, d):
        return vector_convert(self, d, "to_vector")


# -- free-function interface -------------------------------------------------

def arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.tower != b.tower:
        raise FieldError("tower mismatch")
    ops = {"add": a.tower.add, "sub": a.tower.sub, "mul": a.tower.mul, "div": a.tower.div}
    if op not in ops:
        raise FieldError(f"unknown operation {op!r}")
    return FieldElement(a.tower, ops[op](a.value, b.value))


def frobenius(x: FieldElement, d: int) -> FieldElement:
    return FieldElement(x.tower, x.tower.frob(x.value, d))


def trace_to(x: FieldElement, d: int) -> FieldElement:
    return FieldElement(x.tower, x.tower.trace(x.value, d))


def is_square(x: FieldElement) -> bool:
    return x.tower.is_square(x.value)


def vector_convert(x, d, direction="to_vector"):
    """Coordinates over the subfield of order p^d, or back.

    ``to_vector`` takes a FieldElement and returns small-field ints;
    ``from_vector`` takes ``(tower, coords)`` and returns a FieldElement.
    """
    if direction == "to_vector":
        return x.tower.subfield(d).to_vector(x.value)
    if direction == "from_vector":
        tower, vec = x
        return FieldElement(tower, tower.subfield(d).from_vector(vec))
    raise FieldError(f"unknown direction {direction!r}")


# -- text formats --------------------------------------------------------------

_SPEC_RE = re.compile(r"^\s*(\d+)\^(\d+)\s*(?::\s*poly\s*=\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str) -> FieldTower:
    """Parse ``p^h`` or ``p^h:poly=c0,c1,...,1``; a bare prime power ``q`` also works."""
    m = _SPEC_RE.match(text)
    if m is None:
        if text.strip().isdigit():
            return field_of_order(int(text))
        raise FieldError(f"bad field spec {text!r}")
    p, h = int(m.group(1)), int(m.group(2))
    poly = None
    if m.group(3):
        poly = [int(c) for c in m.group(3).split(",") if c.strip()]
    return make_tower(p, h, poly)


def serialize_element(tower: FieldTower, a: int) -> str:
    return "[" + ",".join(str(int(c)) for c in tower.digits[a]) + "]"


def parse_element(tower: FieldTower, text: str) -> int:
    """``[c0,...,c_{h-1}]`` digit list, or a plain integer encoding."""
    text = text.strip()
    if text.startswith("["):
        digs = [int(c) for c in text.strip("[]").split(",") if c.strip()]
        if len(digs) > tower.h or any(not 0 <= c < tower.p for c in digs):
            raise FieldError(f"bad element {text!r} for {tower!r}")
        return sum(c * tower.p ** i for i, c in enumerate(digs))
    a = int(text)
    tower._check(a)
    return a
