"""Integer linear algebra: Hermite and Smith normal forms and an exact solver
for A x = b over Z returning a particular solution and a Z-basis of the kernel.

Matrices are lists of rows of Python ints (arbitrary precision).
"""

from __future__ import annotations

import heapq
import logging
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import NoSolution

log = logging.getLogger(__name__)

Matrix = list[list[int]]

# original-system size up to which a NoSolution certificate is computed via SNF
CERTIFICATE_LIMIT = 250_000


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * v for a, v in zip(row, x)) for row in A]


def _sub_row(target: list, source: list, q: int, start: int = 0):
    for k in range(start, len(target)):
        s = source[k]
        if s:
            target[k] -= q * s


def row_echelon(M: Sequence[Sequence[int]], ncols: int, track: bool = False):
    """Unimodular row reduction to echelon form with positive pivots.

    Returns ``(E, U, pivots)`` with ``U @ M == E`` (U is None unless ``track``).
    """
    E = [list(r) for r in M]
    m = len(E)
    U = identity(m) if track else None
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            piv = None
            for i in range(r, m):
                v = E[i][c]
                if v and (piv is None or abs(v) < abs(E[piv][c])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                E[r], E[piv] = E[piv], E[r]
                if track:
                    U[r], U[piv] = U[piv], U[r]
            pv = E[r][c]
            clean = True
            for i in range(r + 1, m):
                v = E[i][c]
                if v:
                    q = v // pv
                    _sub_row(E[i], E[r], q, c)
                    if track:
                        _sub_row(U[i], U[r], q)
                    if E[i][c]:
                        clean = False
            if clean:
                break
        if E[r][c] == 0:
            continue
        if E[r][c] < 0:
            E[r] = [-x for x in E[r]]
            if track:
                U[r] = [-x for x in U[r]]
        pivots.append(c)
        r += 1
    return E, U, pivots


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style HNF of the lattice spanned by ``rows`` (zero rows dropped).

    Canonical: two generating sets span the same lattice iff their HNFs agree.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    E, _, pivots = row_echelon(rows, ncols)
    H = E[: len(pivots)]
    for k, c in enumerate(pivots):
        p = H[k][c]
        for i in range(k):
            q = H[i][c] // p
            if q:
                _sub_row(H[i], H[k], q, c)
    return H


def _pivot_columns(H: Matrix) -> list[int]:
    return [next(j for j, v in enumerate(row) if v) for row in H]


def reduce_mod_lattice(v: Sequence[int], H: Matrix) -> list[int]:
    """Canonical representative of v + L, with L given by its HNF ``H``."""
    v = list(v)
    for row, c in zip(H, _pivot_columns(H)):
        q = v[c] // row[c]
        if q:
            _sub_row(v, row, q, c)
    return v


def lattice_contains(H: Matrix, v: Sequence[int]) -> bool:
    return not any(reduce_mod_lattice(v, H))


def lattice_equal(gens1, gens2, ncols: int) -> bool:
    return hermite_normal_form(gens1, ncols) == hermite_normal_form(gens2, ncols)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` diagonal, d_1 | d_2 | ..., d_i >= 0."""
    D = [list(r) for r in A]
    m = len(D)
    n = ncols if ncols is not None else (len(D[0]) if D else 0)
    U = identity(m)
    V = identity(n)

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def sub_col(M, a, b, q):  # col a -= q * col b
        for row in M:
            if row[b]:
                row[a] -= q * row[b]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            swap_cols(D, t, j)
            swap_cols(V, t, j)
        p = D[t][t]
        dirty = False
        for i in range(t + 1, m):
            if D[i][t]:
                q = D[i][t] // p
                _sub_row(D[i], D[t], q)
                _sub_row(U[i], U[t], q)
                dirty = dirty or bool(D[i][t])
        for j in range(t + 1, n):
            if D[t][j]:
                q = D[t][j] // p
                sub_col(D, j, t, q)
                sub_col(V, j, t, q)
                dirty = dirty or bool(D[t][j])
        if dirty:
            continue
        bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                    if D[i][j] % p), None)
        if bad is not None:
            i = bad[0]
            for k in range(n):
                D[t][k] += D[i][k]
            for k in range(m):
                U[t][k] += U[i][k]
            continue
        if p < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def smith_invariants(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    D, _, _ = smith_normal_form(A, ncols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def certificate(A: Sequence[Sequence[int]], b: Sequence[int], ncols: int):
    """A rational row vector w with w A integral and w b not integral, or None."""
    D, U, _ = smith_normal_form(A, ncols)
    c = matvec(U, b)
    for i, ci in enumerate(c):
        d = D[i][i] if i < min(len(D), ncols) else 0
        if d:
            if ci % d:
                return [Fraction(u, d) for u in U[i]]
        elif ci:
            return [Fraction(u, 2 * ci) for u in U[i]]
    return None


class IntegerSolution:
    """Particular solution and kernel basis of an integer linear system."""

    def __init__(self, particular: list[int], kernel: list[list[int]] | None):
        self.particular = particular
        self.kernel = kernel

    def __iter__(self):
        yield self.particular
        yield self.kernel


def _dense_solve(rows: Matrix, rhs: list[int], nvars: int, want_kernel: bool):
    """Solve rows @ x = rhs via column-style Hermite reduction (row echelon of the transpose)."""
    E, U, pivots = row_echelon(transpose(rows, nvars) if rows else [[] for _ in range(nvars)],
                               len(rows), track=True)
    # rows @ U^T = E^T; solve E^T y = rhs
    y = [0] * nvars
    k = 0
    for i in range(len(rows)):
        acc = rhs[i] - sum(E[kk][i] * y[kk] for kk in range(k))
        if k < len(pivots) and pivots[k] == i:
            piv = E[k][i]
            if acc % piv:
                return None
            y[k] = acc // piv
            k += 1
        elif acc:
            return None
    x = [0] * nvars
    for kk in range(len(pivots)):
        if y[kk]:
            for j, u in enumerate(U[kk]):
                if u:
                    x[j] += y[kk] * u
    kernel = [U[kk] for kk in range(len(pivots), nvars)] if want_kernel else None
    return x, kernel


def solve_sparse(rows: Sequence[dict[int, int]], rhs: Sequence[int], ncols: int,
                 want_kernel: bool = True) -> IntegerSolution:
    """Solve a sparse system ``sum_j rows[i][j] x_j = rhs[i]`` over Z.

    Variables that occur with coefficient +-1 are eliminated first (a unimodular
    substitution, so integer solutions correspond exactly); the leftover core is
    solved densely. Raises NoSolution.
    """
    R = [dict(r) for r in rows]
    B = list(rhs)
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(R):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    alive = set(range(len(R)))
    for i in list(alive):
        if not R[i]:
            if B[i]:
                raise NoSolution(message="inconsistent equation 0 = nonzero")
            alive.discard(i)
    heap = [(len(R[i]), i) for i in alive]
    heapq.heapify(heap)
    elim: list[tuple[int, int, dict[int, int]]] = []
    eliminated: set[int] = set()
    while heap:
        size, i = heapq.heappop(heap)
        if i not in alive or size != len(R[i]):
            continue
        units = [j for j, v in R[i].items() if v in (1, -1)]
        if not units:
            continue
        v = min(units, key=lambda j: (len(col_rows[j]), j))
        a = R[i][v]
        row_i, b_i = R[i], B[i]
        expr = {w: -a * c for w, c in row_i.items() if w != v}
        elim.append((v, a * b_i, expr))
        eliminated.add(v)
        alive.discard(i)
        for w in row_i:
            col_rows[w].discard(i)
        for k in list(col_rows[v]):
            row_k = R[k]
            ck = row_k.pop(v)
            f = ck * a
            for w, c in row_i.items():
                if w == v:
                    continue
                nv = row_k.get(w, 0) - f * c
                if nv:
                    if w not in row_k:
                        col_rows[w].add(k)
                    row_k[w] = nv
                elif w in row_k:
                    del row_k[w]
                    col_rows[w].discard(k)
            B[k] -= f * b_i
            if not row_k:
                alive.discard(k)
                if B[k]:
                    raise NoSolution(message="inconsistent equation after elimination")
            else:
                heapq.heappush(heap, (len(row_k), k))
        col_rows[v] = set()
    core_rows = sorted(alive)
    core_vars = sorted({j for i in core_rows for j in R[i]})
    local = {j: t for t, j in enumerate(core_vars)}
    dense = [[0] * len(core_vars) for _ in core_rows]
    for r, i in enumerate(core_rows):
        for j, c in R[i].items():
            dense[r][local[j]] = c
    log.debug("integer solve: %d vars, %d eliminated, core %dx%d",
              ncols, len(elim), len(core_rows), len(core_vars))
    res = _dense_solve(dense, [B[i] for i in core_rows], len(core_vars), want_kernel)
    if res is None:
        raise NoSolution(message="core system has no integer solution")
    core_x, core_kernel = res
    free = [j for j in range(ncols) if j not in eliminated and j not in local]

    def back_substitute(assign: dict[int, int], with_const: bool) -> list[int]:
        for v, const, expr in reversed(elim):
            val = const if with_const else 0
            for w, c in expr.items():
                x = assign.get(w, 0)
                if x:
                    val += c * x
            if val:
                assign[v] = val
        out = [0] * ncols
        for j, x in assign.items():
            out[j] = x
        return out

    particular = back_substitute({core_vars[t]: x for t, x in enumerate(core_x) if x}, True)
    kernel = None
    if want_kernel:
        kernel = []
        for vec in core_kernel:
            kernel.append(back_substitute(
                {core_vars[t]: x for t, x in enumerate(vec) if x}, False))
        for j in free:
            kernel.append(back_substitute({j: 1}, False))
    return IntegerSolution(particular, kernel)


def solve_integer_linear(A: Sequence[Sequence[int]], b: Sequence[int],
                         ncols: int | None = None, want_kernel: bool = True) -> IntegerSolution:
    """Particular integer solution of A x = b and a Z-basis of {x : A x = 0}.

    The kernel basis is returned in Hermite normal form.
    Raises NoSolution carrying a certificate row w (w A integral, w b not).
    """
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if len(b) != len(A):
        raise ValueError("dimension mismatch between A and b")
    rows = [{j: v for j, v in enumerate(r) if v} for r in A]
    try:
        sol = solve_sparse(rows, b, ncols, want_kernel)
    except NoSolution as exc:
        if len(A) * max(ncols, 1) <= CERTIFICATE_LIMIT:
            exc.certificate = certificate(A, b, ncols)
        raise
    if want_kernel:
        H = hermite_normal_form(sol.kernel, ncols)
        sol = IntegerSolution(sol.particular, H)
    return sol


def solve_rational_linear(A: Sequence[Sequence], b: Sequence, ncols: int | None = None):
    """Solve A x = b over Q by reduced row echelon form.

    Returns (particular with free variables 0, kernel basis) or raises NoSolution.
    """
    if ncols is None:
        ncols = len(A[0]) if A else 0
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(M)):
        if M[i][ncols]:
            raise NoSolution(message="inconsistent rational system")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = M[i][ncols]
    kernel = []
    pivset = set(pivots)
    for f in range(ncols):
        if f in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -M[i][f]
        kernel.append(vec)
    return x, kernel


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(row_echelon(rows, ncols)[2])
