"""Quadratic and sesquilinear forms over finite fields: classification
and reduction to a subfield through x -> Tr(alpha x).

Degeneracy convention: a form is degenerate when its (polar) bilinear form
has a nontrivial radical.  For quadratic forms in characteristic 2 and odd
dimension this always happens; the geometric classification (which would
call such a nonsingular quadric parabolic) is reported separately.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .gf import FieldError, FieldTower, make_tower, prime_power
from .projspace import canonical, enumerate_subspaces, make_space, normalized_coefficients
from .reduction import make_context

QUADRATIC_KINDS = ("hyperbolic", "elliptic", "parabolic")
LABELS = ("hyperbolic", "elliptic", "parabolic", "hermitian", "symplectic",
          "pseudo-symplectic", "atypical", "degenerate")


@dataclass(frozen=True)
class FormSpec:
    """A form on F^n.

    ``kind == "quadratic"``: ``matrix`` is upper triangular and
    Q(x) = sum_{i<=j} a_ij x_i x_j.  Otherwise ``matrix`` is the Gram matrix
    of beta(x, y) = x^T M y^sigma with sigma: x -> x^(p^sigma).
    """

    field: FieldTower
    n: int
    kind: str
    matrix: tuple
    sigma: int = 0

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "sigma", self.sigma % self.field.h)
        if len(M) != self.n or any(len(r) != self.n for r in M):
            raise FieldError("form matrix must be n x n")
        if self.kind == "quadratic":
            if any(M[i][j] for i in range(self.n) for j in range(i)):
                raise FieldError("quadratic form matrix must be upper triangular")
            if self.sigma:
                raise FieldError("quadratic forms carry no field automorphism")
        elif self.kind == "alternating":
            F = self.field
            if any(M[i][i] for i in range(self.n)) or any(
                    M[i][j] != F.neg(M[j][i]) for i in range(self.n) for j in range(self.n)):
                raise FieldError("alternating form must be skew with zero diagonal")
        elif self.kind == "hermitian":
            if self.sigma == 0 or (2 * self.sigma) % self.field.h:
                raise FieldError("hermitian forms need an involutory field automorphism")
            if not _is_hermitian(self.field, M, self.sigma):
                raise FieldError("matrix is not hermitian")
        elif self.kind not in ("sesquilinear", "bilinear-symmetric", "pseudo-symplectic"):
            raise FieldError(f"unknown form kind {self.kind!r}")

    @property
    def is_quadratic(self):
        return self.kind == "quadratic"

    def gram(self):
        """Gram matrix of the bilinear/sesquilinear form (polarization for quadratics)."""
        F, M = self.field, self.matrix
        if not self.is_quadratic:
            return M
        n = self.n
        B = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    B[i][i] = F.add(M[i][i], M[i][i])
                elif i < j:
                    B[i][j] = M[i][j]
                else:
                    B[i][j] = M[j][i]
        return tuple(tuple(r) for r in B)

    def evaluate(self, X):
        """Q(x) for quadratics, beta(x, x) otherwise; X is an (N, n) int array."""
        F = self.field
        X = np.asarray(X, dtype=np.int64)
        out = np.zeros(len(X), dtype=np.int64)
        M = self.matrix
        if self.is_quadratic:
            for i in range(self.n):
                for j in range(i, self.n):
                    if M[i][j]:
                        out = F.add_t[out, F.mul_t[M[i][j], F.mul_t[X[:, i], X[:, j]]]]
            return out
        # beta(x, x) = sum_i x_i (M x^sigma)_i
        Y = la.np_matmul(F, F.frob_array(X, self.sigma), np.array(M, dtype=np.int64).T)
        for i in range(self.n):
            out = F.add_t[out, F.mul_t[X[:, i], Y[:, i]]]
        return out

    def bilinear(self, X, y):
        """beta(x, y) (polarization for quadratics) for rows x of X."""
        F = self.field
        B = self.gram()
        s = 0 if self.is_quadratic else self.sigma
        ys = la.frob_vec(F, y, s)
        By = la.mat_vec(F, B, ys)
        X = np.asarray(X, dtype=np.int64)
        out = np.zeros(len(X), dtype=np.int64)
        for i in range(self.n):
            if By[i]:
                out = F.add_t[out, F.mul_t[X[:, i], By[i]]]
        return out


@dataclass
class PolarType:
    label: str
    witt_index: int | None = None
    sign: int | None = None
    gamma: int | None = None
    zero_count: int | None = None
    radical_dim: int = 0
    geometric: str | None = None
    details: dict = field(default_factory=dict)


def _is_hermitian(F, M, s):
    n = len(M)
    return all(M[j][i] == F.frob(M[i][j], s) if s else M[j][i] == M[i][j]
               for i in range(n) for j in range(n))


@functools.lru_cache(maxsize=None)
def elliptic_binary(F: FieldTower):
    """Least (b, c) with X0^2 + b X0 X1 + c X1^2 irreducible."""
    for b in range(F.order):
        for c in range(F.order):
            if all(F.add(F.add(F.mul(x, x), F.mul(b, x)), c) for x in range(F.order)):
                return b, c
    raise FieldError("no irreducible binary quadratic form")


def _upper(n):
    return [[0] * n for _ in range(n)]


def standard_form(kind: str, n: int, F: FieldTower, gamma: int = 1) -> FormSpec:
    """Canonical forms: X0X1 + X2X3 + ...; f(X0,X1) + X2X3 + ...;
    gamma X0^2 + X1X2 + ...; sum x_i y_i^sigma; sum x_{2i} y_{2i+1} - x_{2i+1} y_{2i}."""
    if kind == "hyperbolic":
        if n % 2:
            raise FieldError("hyperbolic forms need even dimension")
        M = _upper(n)
        for i in range(0, n, 2):
            M[i][i + 1] = 1
        return FormSpec(F, n, "quadratic", M)
    if kind == "elliptic":
        if n % 2 or n == 0:
            raise FieldError("elliptic forms need positive even dimension")
        b, c = elliptic_binary(F)
        M = _upper(n)
        M[0][0], M[0][1], M[1][1] = 1, b, c
        for i in range(2, n, 2):
            M[i][i + 1] = 1
        return FormSpec(F, n, "quadratic", M)
    if kind == "parabolic":
        if n % 2 == 0:
            raise FieldError("parabolic forms need odd dimension")
        if gamma == 0:
            raise FieldError("gamma must be nonzero")
        M = _upper(n)
        M[0][0] = gamma
        for i in range(1, n, 2):
            M[i][i + 1] = 1
        return FormSpec(F, n, "quadratic", M)
    if kind == "hermitian":
        if F.h % 2:
            raise FieldError("hermitian forms need a square field order")
        return FormSpec(F, n, "hermitian", la.identity(n), F.h // 2)
    if kind in ("alternating", "symplectic"):
        if n % 2:
            raise FieldError("alternating forms need even vector dimension")
        M = [[0] * n for _ in range(n)]
        for i in range(0, n, 2):
            M[i][i + 1] = 1
            M[i + 1][i] = F.neg(1)
        return FormSpec(F, n, "alternating", M)
    if kind == "pseudo-symplectic":
        if F.p != 2:
            raise FieldError("pseudo-symplectic forms need even characteristic")
        return FormSpec(F, n, "pseudo-symplectic", la.identity(n))
    raise FieldError(f"unknown standard form {kind!r}")


# -- classification -------------------------------------------------------------------

def _radical(f: FormSpec):
    B = f.gram()
    return la.nullspace(f.field, B, f.n)


def _points(F, n):
    return make_space(F, n).points


def _greedy_witt(f: FormSpec, singular):
    """Dimension of a maximal totally singular subspace grown greedily."""
    F = f.field
    space = make_space(F, f.n)
    cand = singular
    basis = []
    while len(cand):
        x = tuple(int(v) for v in cand[0])
        basis.append(x)
        S = canonical(F, basis, f.n)
        # reflexive forms only, so beta(c, x) = 0 iff beta(x, c) = 0
        cand = cand[f.bilinear(cand, x) == 0]
        if len(cand):
            cand = cand[~np.isin(space.indices(cand), S.point_indices())]
    return len(basis), basis


def _split_hyperbolic(f: FormSpec):
    """Split off hyperbolic pairs until the remaining subspace has no singular vector.

    Returns (number of pairs, basis of the anisotropic remainder).
    """
    F = f.field
    n = f.n
    W = [tuple(r) for r in la.identity(n)]
    pairs = 0
    while W:
        C = normalized_coefficients(F.order, len(W))
        V = la.np_matmul(F, C, np.array(W, dtype=np.int64))
        sing = V[f.evaluate(V) == 0]
        if not len(sing):
            break
        e = tuple(int(x) for x in sing[0])
        be = f.bilinear(V, e)
        nz = np.nonzero(be)[0]
        if not len(nz):
            raise FieldError("form is degenerate on the working subspace")
        g = tuple(int(x) for x in V[nz[0]])
        c = F.inv(int(be[nz[0]]))
        g = la.scale(F, c, g)
        # make g singular: g - Q(g) e
        qg = int(f.evaluate(np.array([g]))[0])
        g = la.vadd(F, g, la.scale(F, F.neg(qg), e))
        pairs += 1
        # W <- W cap <e, g>^perp
        Wm = np.array(W, dtype=np.int64)
        cols = [f.bilinear(Wm, e), f.bilinear(Wm, g)]
        # coefficients c with sum c_i beta(W_i, e) = sum c_i beta(W_i, g) = 0
        ker = la.nullspace(F, [tuple(int(x) for x in col) for col in cols], len(W))
        W = [tuple(int(x) for x in la.vec_mat(F, k, W)) for k in ker]
    return pairs, W


def classify(f: FormSpec) -> PolarType:
    rad = _radical(f)
    if f.is_quadratic:
        return _classify_quadratic(f, rad)
    return _classify_sesquilinear(f, rad)


def _classify_quadratic(f: FormSpec, rad) -> PolarType:
    F, n = f.field, f.n
    pts = _points(F, n)
    vals = f.evaluate(pts)
    zeros = int((vals == 0).sum())
    if rad:
        geometric = "degenerate"
        if F.p == 2 and n % 2 and len(rad) == 1 and int(f.evaluate(np.array([rad[0]]))[0]):
            geometric = "parabolic"
        return PolarType("degenerate", radical_dim=len(rad), zero_count=zeros, geometric=geometric)
    witt, _ = _greedy_witt(f, pts[vals == 0])
    pairs, rest = _split_hyperbolic(f)
    details = {"hyperbolic_pairs": pairs, "anisotropic_dim": len(rest)}
    if pairs != witt:
        raise AssertionError("greedy and splitting Witt indices disagree")
    if n % 2 == 0:
        m = n // 2
        label = "hyperbolic" if witt == m else "elliptic" if witt == m - 1 else "degenerate"
        return PolarType(label, witt, zero_count=zeros, geometric=label, details=details)
    gamma = int(f.evaluate(np.array([rest[0]]))[0])
    sign = None if F.p == 2 else (1 if F.is_square(gamma) else -1)
    return PolarType("parabolic", witt, sign, gamma, zeros, geometric="parabolic", details=details)


def _classify_sesquilinear(f: FormSpec, rad) -> PolarType:
    F, n, M, s = f.field, f.n, f.matrix, f.sigma
    if rad:
        return PolarType("degenerate", radical_dim=len(rad))
    pts = _points(F, n)

    def absolute():
        return pts[f.evaluate(pts) == 0]

    if s == 0:
        symmetric = all(M[i][j] == M[j][i] for i in range(n) for j in range(n))
        skew = all(M[i][j] == F.neg(M[j][i]) for i in range(n) for j in range(n))
        zero_diag = all(M[i][i] == 0 for i in range(n))
        if skew and zero_diag:
            witt, _ = _greedy_witt(f, pts)
            return PolarType("symplectic", witt, zero_count=len(pts), geometric="symplectic")
        if symmetric and F.p == 2:
            absolute = absolute()
            witt, _ = _greedy_witt(f, absolute)
            return PolarType("pseudo-symplectic", witt, zero_count=len(absolute))
        if symmetric:
            # odd characteristic: the quadric x -> beta(x, x)
            half = F.inv(2 % F.p)
            Q = _upper(n)
            for i in range(n):
                Q[i][i] = F.mul(M[i][i], half)
                for j in range(i + 1, n):
                    Q[i][j] = M[i][j]
            qt = _classify_quadratic(FormSpec(F, n, "quadratic", Q), [])
            qt.details["from_symmetric_bilinear"] = True
            return qt
        return PolarType("atypical", details={"reason": "neither symmetric nor alternating"})
    if (2 * s) % F.h == 0 and _is_hermitian(F, M, s):
        absolute = absolute()
        witt, _ = _greedy_witt(f, absolute)
        return PolarType("hermitian", witt, zero_count=len(absolute), geometric="hermitian")
    return PolarType("atypical", details={"reason": "not hermitian"})


def zero_count_formula(label, n, q):
    """Projective zero counts of nondegenerate quadrics on GF(q)^n."""
    if label == "hyperbolic":
        m = n // 2
        return (q ** (m - 1) + 1) * (q ** m - 1) // (q - 1)
    if label == "elliptic":
        m = n // 2
        return (q ** (m - 1) - 1) * (q ** m + 1) // (q - 1)
    if label == "parabolic":
        return (q ** (n - 1) - 1) // (q - 1)
    return None


# -- trace reduction ---------------------------------------------------------------------

@dataclass(frozen=True)
class TraceFunctional:
    alpha: int
    q: int

    def __post_init__(self):
        if self.alpha == 0:
            raise FieldError("alpha must be nonzero")


def _trace_small(ctx, x):
    """Tr_{q^t/q}(x) as an element of the small field."""
    return int(ctx.sub.restrict[ctx.big.trace(x, ctx.e)])


def trace_compose(f: FormSpec, L: TraceFunctional) -> FormSpec:
    """The form x -> Tr(alpha f(x)) on GF(q)^{rt} in block coordinates."""
    F = f.field
    if L.alpha == 0:
        raise FieldError("alpha must be nonzero")
    p, e = prime_power(L.q)
    if F.p != p or F.h % e:
        raise FieldError(f"GF({L.q}) is not a subfield of {F!r}")
    t = F.h // e
    ctx = make_context(f.n, t, L.q)
    N = ctx.n
    E = ctx.lift_array(np.eye(N, dtype=np.int64))
    small = ctx.small
    if f.is_quadratic:
        q1 = f.evaluate(E)
        M = _upper(N)
        for a in range(N):
            M[a][a] = _trace_small(ctx, F.mul(L.alpha, int(q1[a])))
        for a in range(N):
            for b in range(a + 1, N):
                qab = int(f.evaluate(F.add_t[E[a], E[b]][None])[0])
                pol = F.sub(F.sub(qab, int(q1[a])), int(q1[b]))
                M[a][b] = _trace_small(ctx, F.mul(L.alpha, pol))
        return FormSpec(small, N, "quadratic", M)
    M = [[0] * N for _ in range(N)]
    for b in range(N):
        col = f.bilinear(E, tuple(int(x) for x in E[b]))
        for a in range(N):
            M[a][b] = _trace_small(ctx, F.mul(L.alpha, int(col[a])))
    tau = f.sigma % e if e else 0
    return FormSpec(small, N, "sesquilinear", M, tau)


def predicted_type(kind: str, r: int, t: int, q: int, alpha: int = None, gamma: int = None,
                   field_: FieldTower = None, sigma: int = None) -> str:
    """Type of the reduced form predicted from the input type and parameters alone."""
    if kind == "degenerate":
        return "degenerate"
    if kind in QUADRATIC_KINDS:
        if q % 2 == 0 and r % 2:
            return "degenerate"
        if kind in ("hyperbolic", "elliptic"):
            return kind
        if q % 2 == 0:
            return "degenerate"
        if t % 2:
            return "parabolic"
        F = field_
        ag = F.mul(alpha, gamma)
        sq = F.is_square(ag)
        m4 = (q ** (t // 2)) % 4
        if (m4 == 1 and not sq) or (m4 == 3 and sq):
            return "hyperbolic"
        return "elliptic"
    if kind in ("alternating", "symplectic"):
        return "symplectic"
    if kind == "pseudo-symplectic":
        return "pseudo-symplectic"
    if kind == "hermitian":
        F = field_
        sa = F.frob(alpha, sigma)
        if t % 2:
            return "hermitian" if sa == alpha else "atypical"
        if q % 2 == 0:
            return "symplectic" if sa == alpha else "atypical"
        if sa == F.neg(alpha):
            return "symplectic"
        if sa == alpha:
            return "hyperbolic" if r % 2 == 0 else "elliptic"
        return "atypical"
    raise FieldError(f"no prediction for input kind {kind!r}")


def nondegeneracy_predicted(f_label: str, is_quadratic: bool, r: int, q: int) -> bool:
    """Whether the reduced form is non-degenerate (alpha != 0 assumed)."""
    if f_label == "degenerate":
        return False
    if is_quadratic and q % 2 == 0 and r % 2:
        return False
    return True


# -- absolute subspaces -----------------------------------------------------------------

def _totally_isotropic(f: FormSpec, rows):
    F = f.field
    if not rows:
        return True
    R = np.array(rows, dtype=np.int64)
    if f.is_quadratic:
        if (f.evaluate(R) != 0).any():
            return False
    for y in rows:
        if (f.bilinear(R, y) != 0).any():
            return False
    return True


def absolute_image_check(f: FormSpec, L: TraceFunctional, budget=None):
    """Every totally isotropic (singular) subspace of f reduces to one of Tr(alpha f).

    Returns (ok, number of subspaces checked).
    """
    F = f.field
    g = trace_compose(f, L)
    if classify(g).label == "degenerate":
        raise FieldError("composed form is degenerate")
    p, e = prime_power(L.q)
    ctx = make_context(f.n, F.h // e, L.q)
    checked = 0
    ok = True
    for k in range(f.n):
        for S in enumerate_subspaces(F, f.n, k, budget):
            if not _totally_isotropic(f, list(S.rows)):
                continue
            checked += 1
            R = ctx.field_reduce(S)
            if not _totally_isotropic(g, list(R.rows)):
                ok = False
    return ok, checked


# -- verification grid ---------------------------------------------------------------

@dataclass
class GridCase:
    family: str
    q: int
    t: int
    r: int
    kind: str
    alpha: int
    gamma: int | None
    predicted: str
    computed: str
    nondegenerate_predicted: bool
    nondegenerate_computed: bool
    zero_count_ok: bool | None = None

    @property
    def ok(self):
        return (self.predicted == self.computed
                and self.nondegenerate_predicted == self.nondegenerate_computed
                and self.zero_count_ok is not False)


def _nonsquare(F):
    return next((x for x in range(1, F.order) if not F.is_square(x)), None)


def _degenerate_quadratic(F, r):
    M = _upper(r)
    if r >= 3:
        M[0][1] = 1
    else:
        M[0][0] = 1
    return FormSpec(F, r, "quadratic", M)


def quadratic_inputs(F, r):
    """(kind, form) pairs for the grid; parabolic comes with both gamma classes."""
    out = []
    if r % 2 == 0:
        out += [("hyperbolic", standard_form("hyperbolic", r, F)),
                ("elliptic", standard_form("elliptic", r, F))]
    else:
        gammas = [1] + ([_nonsquare(F)] if F.p != 2 else [])
        out += [("parabolic", standard_form("parabolic", r, F, g)) for g in gammas]
    if r >= 2:
        out.append(("degenerate", _degenerate_quadratic(F, r)))
    return out


def sesquilinear_inputs(F, r, q):
    out = []
    if F.h % 2 == 0:
        out.append(("hermitian", standard_form("hermitian", r, F)))
        if r >= 2:
            M = [list(row) for row in la.identity(r)]
            M[-1][-1] = 0
            out.append(("degenerate", FormSpec(F, r, "hermitian", M, F.h // 2)))
    if r % 2 == 0:
        out.append(("alternating", standard_form("alternating", r, F)))
    if F.p == 2:
        out.append(("pseudo-symplectic", standard_form("pseudo-symplectic", r, F)))
    return out


def _run_case(family, f, kind, q, t, r, alpha, gamma=None):
    F = f.field
    g = trace_compose(f, TraceFunctional(alpha, q))
    res = classify(g)
    sigma = F.h // 2 if kind == "hermitian" else None
    pred = predicted_type(kind, r, t, q, alpha, gamma, F, sigma)
    zc = None
    if res.label in QUADRATIC_KINDS:
        zc = res.zero_count == zero_count_formula(res.label, g.n, q)
    return GridCase(family, q, t, r, kind, alpha, gamma, pred, res.label,
                    nondegeneracy_predicted(kind, f.is_quadratic, r, q),
                    res.label != "degenerate", zc)


def quadratic_grid(qs=(2, 3, 5), ts=(2, 3), rs=(1, 2, 3), max_dim=8):
    cases = []
    for q in qs:
        for t in ts:
            p, e = prime_power(q)
            F = make_tower(p, e * t)
            for r in rs:
                if r * t > max_dim:
                    continue
                for kind, f in quadratic_inputs(F, r):
                    info = classify(f)
                    gamma = info.gamma
                    if kind == "parabolic" and gamma is None:
                        # even characteristic: the square part of the form
                        gamma = f.matrix[0][0]
                    for alpha in range(1, F.order):
                        cases.append(_run_case("quadratic", f, kind, q, t, r, alpha, gamma))
    return cases


def sesquilinear_grid(qs=(2, 3, 4, 5), ts=(2, 3, 4), max_dim=8):
    cases = []
    for q in qs:
        for t in ts:
            p, e = prime_power(q)
            F = make_tower(p, e * t)
            for r in range(1, max_dim // t + 1):
                for kind, f in sesquilinear_inputs(F, r, q):
                    for alpha in range(1, F.order):
                        cases.append(_run_case("sesquilinear", f, kind, q, t, r, alpha))
    return cases
