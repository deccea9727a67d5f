"""Independent slow references used by the tests.

Nothing here imports from fieldred: field elements are handled as digit
lists and reduced against the tower's modulus by schoolbook arithmetic.
"""
import itertools


def digits(x, p, h):
    return [(x // p ** i) % p for i in range(h)]


def undigits(d, p):
    return sum(c * p ** i for i, c in enumerate(d))


def poly_mulmod(a, b, modulus, p):
    h = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, h - 1, -1):
        c = prod[deg]
        if c:
            for k in range(h + 1):
                prod[deg - h + k] = (prod[deg - h + k] - c * modulus[k]) % p
    return (prod + [0] * h)[:h]


class SlowField:
    def __init__(self, p, h, modulus):
        self.p, self.h, self.modulus = p, h, list(modulus)
        self.order = p ** h

    def add(self, a, b):
        da, db = digits(a, self.p, self.h), digits(b, self.p, self.h)
        return undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def mul(self, a, b):
        d = poly_mulmod(digits(a, self.p, self.h), digits(b, self.p, self.h), self.modulus, self.p)
        return undigits(d, self.p)

    def pow(self, a, e):
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out


def span_size(F, rows, n):
    """Number of vectors in the span, by listing all combinations."""
    vecs = set()
    for coeffs in itertools.product(range(F.order), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
        vecs.add(tuple(v))
    return len(vecs)


def gaussian(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den
