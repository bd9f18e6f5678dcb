"""Quadratic forms by coefficient matrix, Clifford algebras on a subset-indexed
basis, the Azumaya test for the even part, and quaternion extraction.

A form on n + 2 variables is stored as a symmetric matrix b with
Q(sum lambda_i e_i) = sum_{i <= j} b_ij lambda_i lambda_j: diagonal entries are
the square coefficients, each off-diagonal coefficient is stored symmetrically
and counted once. The polar form is Phi(e_i, e_j) = b_ij for i != j and
Phi(e_i, e_i) = 2 b_ii. Coefficients live in Q (Fraction) or in a prime field
GF(p) (GFElement); characteristic 2 is allowed everywhere except where noted.

The Clifford algebra has basis e_S indexed by subsets S of {0, ..., n+1},
encoded as bitmasks, with e_i e_j + e_j e_i = Phi(e_i, e_j) for i != j and
e_i^2 = Q(e_i). Products are normal-ordered by insertion. The even part is the
span of the even-cardinality subsets and has rank 2^(n+1).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .linalg import GFElement, nullspace, rank, rref
from .models import ConicFiber

Scalar = Union[Fraction, GFElement]


class QuadraticFormB:
    """Quadratic form given by its coefficient matrix b (see module docstring)."""

    def __init__(self, b: Sequence[Sequence], char: int = 0):
        size = len(b)
        if size < 1 or any(len(row) != size for row in b):
            raise ValueError("b must be a nonempty square matrix")
        if char == 0:
            mat = tuple(tuple(Fraction(x) for x in row) for row in b)
        else:
            if char < 2 or any(char % k == 0 for k in range(2, int(math.isqrt(char)) + 1)):
                raise ValueError(f"characteristic must be 0 or a prime, got {char}")
            zero = GFElement(char, 0)
            mat = tuple(
                tuple(x if isinstance(x, GFElement) else zero + x for x in row)
                for row in b
            )
        for i in range(size):
            for j in range(size):
                if mat[i][j] != mat[j][i]:
                    raise ValueError("b must be symmetric")
        self.b = mat
        self.char = char
        self.size = size

    @property
    def n(self) -> int:
        """Quadric dimension: the form has n + 2 variables."""
        return self.size - 2

    def zero(self) -> Scalar:
        return Fraction(0) if self.char == 0 else GFElement(self.char, 0)

    def one(self) -> Scalar:
        return Fraction(1) if self.char == 0 else GFElement(self.char, 1)

    def value(self, vec: Sequence) -> Scalar:
        if len(vec) != self.size:
            raise ValueError("vector length mismatch")
        total = self.zero()
        for i in range(self.size):
            for j in range(i, self.size):
                total = total + self.b[i][j] * vec[i] * vec[j]
        return total

    def polar(self, u: Sequence, v: Sequence) -> Scalar:
        """Phi(u, v) = Q(u + v) - Q(u) - Q(v), evaluated via the Gram matrix."""
        g = self.gram()
        total = self.zero()
        for i in range(self.size):
            for j in range(self.size):
                total = total + g[i][j] * u[i] * v[j]
        return total

    def gram(self) -> tuple[tuple[Scalar, ...], ...]:
        return tuple(
            tuple(self.b[i][j] if i != j else 2 * self.b[i][i] for j in range(self.size))
            for i in range(self.size)
        )

    def diagonalize(self) -> tuple[list[Scalar], list[list[Scalar]]]:
        """Exact congruence diagonalization, characteristic != 2 only.

        Returns (coeffs, P) with Q(P w) = sum coeffs_i w_i^2. Pivoting is
        deterministic: the first nonzero diagonal Gram entry is used; if the
        remaining diagonal vanishes, the first nonzero off-diagonal pair is
        merged into a square first.
        """
        if self.char == 2:
            raise ValueError("diagonalization needs characteristic != 2")
        size = self.size
        g = [list(row) for row in self.gram()]
        one, zero = self.one(), self.zero()
        p = [[one if i == j else zero for j in range(size)] for i in range(size)]

        def col_op(dst: int, src: int, factor: Scalar):
            # basis change v_dst <- v_dst + factor * v_src, applied symmetrically
            for r in range(size):
                g[r][dst] = g[r][dst] + factor * g[r][src]
            for c in range(size):
                g[dst][c] = g[dst][c] + factor * g[src][c]
            for r in range(size):
                p[r][dst] = p[r][dst] + factor * p[r][src]

        def swap(i: int, j: int):
            for r in range(size):
                g[r][i], g[r][j] = g[r][j], g[r][i]
            g[i], g[j] = g[j], g[i]
            for r in range(size):
                p[r][i], p[r][j] = p[r][j], p[r][i]

        for k in range(size):
            if g[k][k] == 0:
                pivot = next((i for i in range(k + 1, size) if g[i][i] != 0), None)
                if pivot is not None:
                    swap(k, pivot)
                else:
                    pair = next(
                        (
                            (i, j)
                            for i in range(k, size)
                            for j in range(i + 1, size)
                            if g[i][j] != 0
                        ),
                        None,
                    )
                    if pair is None:
                        break  # remaining block is zero
                    i, j = pair
                    col_op(i, j, one)  # v_i <- v_i + v_j makes g[i][i] = 2 g_ij != 0
                    if i != k:
                        swap(k, i)
            piv = g[k][k]
            for i in range(k + 1, size):
                if g[k][i] != 0:
                    col_op(i, k, -g[k][i] / piv)
        coeffs = [g[i][i] / 2 for i in range(size)]
        return coeffs, p


def standard_form(n: int, char: int = 0) -> QuadraticFormB:
    """Split form: sum_{i<r} lambda_i lambda_{i+r} + lambda_{n+1}^2 with r = (n+1)//2.

    Matches the hyperbolic-plus-square shape used for smooth quadrics in odd
    ambient dimension; defined for even n by the same recipe but then the
    middle variable is absent from the form.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = n + 2
    b = [[0] * size for _ in range(size)]
    r = (n + 1) // 2
    for i in range(r):
        b[i][i + r] = 1
        b[i + r][i] = 1
    b[size - 1][size - 1] = 1
    return QuadraticFormB(b, char=char)


def _field_rank(rows: list[list[Scalar]]) -> int:
    return rank(rows)


def is_smooth_quadric(q: QuadraticFormB) -> bool:
    """Smoothness of the projective quadric Q = 0.

    Characteristic != 2: the Gram matrix is nonsingular. Characteristic 2 with
    n + 2 odd: the polar form is alternating, so its radical is checked to be a
    line on which Q does not vanish. Characteristic 2 with n + 2 even: the
    polar form must be nonsingular.
    """
    g = [list(row) for row in q.gram()]
    if q.char != 2:
        return _field_rank(g) == q.size
    if q.size % 2 == 0:
        return _field_rank(g) == q.size
    kernel = nullspace(g, one=q.one())
    if len(kernel) != 1:
        return False
    return q.value(kernel[0]) != 0


class CliffordAlgebra:
    """Clifford algebra of a QuadraticFormB on the bitmask-indexed basis."""

    def __init__(self, q: QuadraticFormB):
        self.q = q
        self.size = q.size
        self.dim = 1 << q.size
        self._sq = [q.b[i][i] for i in range(q.size)]
        self._phi = q.gram()
        self._one = q.one()
        self._zero = q.zero()

    @lru_cache(maxsize=None)
    def _mul_mask_gen(self, mask: int, i: int) -> tuple[tuple[int, Scalar], ...]:
        """e_mask * e_i, normal ordered."""
        if mask == 0:
            return ((1 << i, self._one),)
        j = mask.bit_length() - 1  # largest generator present
        rest = mask & ~(1 << j)
        if j < i:
            return ((mask | (1 << i), self._one),)
        if j == i:
            return ((rest, self._sq[i]),)
        # e_j e_i = Phi(i, j) - e_i e_j
        acc: dict[int, Scalar] = {}
        phi = self._phi[i][j]
        if phi != 0:
            acc[rest] = phi
        for m2, c2 in self._mul_mask_gen(rest, i):
            for m3, c3 in self._mul_mask_gen(m2, j):
                coeff = acc.get(m3, self._zero) - c2 * c3
                if coeff == 0:
                    acc.pop(m3, None)
                else:
                    acc[m3] = coeff
        return tuple(acc.items())

    def mul_basis(self, s: int, t: int) -> dict[int, Scalar]:
        """Product e_s * e_t as a sparse dict mask -> coefficient."""
        acc: dict[int, Scalar] = {s: self._one}
        for i in range(self.size):
            if (t >> i) & 1:
                nxt: dict[int, Scalar] = {}
                for m, c in acc.items():
                    for m2, c2 in self._mul_mask_gen(m, i):
                        coeff = nxt.get(m2, self._zero) + c * c2
                        if coeff == 0:
                            nxt.pop(m2, None)
                        else:
                            nxt[m2] = coeff
                acc = nxt
        return acc

    def multiply(self, x: dict[int, Scalar], y: dict[int, Scalar]) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for s, cx in x.items():
            for t, cy in y.items():
                for m, c in self.mul_basis(s, t).items():
                    coeff = out.get(m, self._zero) + cx * cy * c
                    if coeff == 0:
                        out.pop(m, None)
                    else:
                        out[m] = coeff
        return out

    def even_masks(self) -> list[int]:
        return [m for m in range(self.dim) if bin(m).count("1") % 2 == 0]

    def even_part(self) -> "StructureConstantAlgebra":
        masks = self.even_masks()
        index = {m: i for i, m in enumerate(masks)}
        d = len(masks)
        zero = self._zero
        table = [[None] * d for _ in range(d)]
        for i, s in enumerate(masks):
            for j, t in enumerate(masks):
                row = [zero] * d
                for m, c in self.mul_basis(s, t).items():
                    row[index[m]] = c
                table[i][j] = tuple(row)
        return StructureConstantAlgebra(
            dim=d, table=tuple(tuple(r) for r in table), char=self.q.char, unit_index=0
        )


def build_clifford(q: QuadraticFormB) -> CliffordAlgebra:
    return CliffordAlgebra(q)


@dataclass(frozen=True)
class StructureConstantAlgebra:
    """Finite-dimensional algebra: table[i][j][k] is the e_k coefficient of e_i e_j."""

    dim: int
    table: tuple
    char: int
    unit_index: Optional[int] = None

    def coefficient_ints(self) -> Optional[list[list[list[int]]]]:
        """Structure constants as Python ints when exactly representable, else None."""
        out = []
        for row in self.table:
            r2 = []
            for cell in row:
                r3 = []
                for c in cell:
                    if isinstance(c, GFElement):
                        r3.append(c.v)
                    elif isinstance(c, Fraction):
                        if c.denominator != 1:
                            return None
                        r3.append(int(c))
                    else:
                        r3.append(int(c))
                r2.append(r3)
            out.append(r2)
        return out


_AZUMAYA_PRIMES = (2147483629, 2147483587, 2147483563)


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = mat % p
    rows, cols = a.shape
    r = 0
    for col in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col_vals = a[r + 1:, col]
        nz = col_vals != 0
        if nz.any():
            a[r + 1:][nz] = (a[r + 1:][nz] - np.outer(col_vals[nz], a[r])) % p
        r += 1
        if r == rows:
            break
    return r


def _nullvector_mod_p(mat: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One kernel vector of mat mod p in reduced echelon coordinates, or None."""
    a = mat % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        other = a[:, col] != 0
        other[r] = False
        if other.any():
            a[other] = (a[other] - np.outer(a[other, col], a[r])) % p
        pivots.append(col)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    vec = np.zeros(cols, dtype=np.int64)
    vec[fc] = 1
    for row_idx, pc in enumerate(pivots):
        vec[pc] = (-int(a[row_idx, fc])) % p
    return vec


def _rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """n/d with n*1 == a*d mod m, |n|, d <= sqrt(m/2), via half extended Euclid."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 <= bound and t1 != 0 and abs(t1) <= bound and math.gcd(r1, abs(t1)) == 1:
        if t1 < 0:
            return Fraction(-r1, -t1)
        return Fraction(r1, t1)
    return None


def _left_right_matrices(alg: StructureConstantAlgebra):
    d = alg.dim
    consts = alg.coefficient_ints()
    if consts is None:
        return None, None
    lefts = [
        np.array([[consts[i][t][s] for t in range(d)] for s in range(d)], dtype=object)
        for i in range(d)
    ]
    rights = [
        np.array([[consts[t][j][s] for t in range(d)] for s in range(d)], dtype=object)
        for j in range(d)
    ]
    return lefts, rights


def _enveloping_matrix_int(lefts, rights, d: int) -> np.ndarray:
    m = np.zeros((d * d, d * d), dtype=object)
    col = 0
    for i in range(d):
        li = lefts[i]
        for j in range(d):
            m[:, col] = (li @ rights[j]).reshape(-1)
            col += 1
    return m


def is_azumaya_over_field(alg: StructureConstantAlgebra) -> bool:
    """Is the enveloping map alg (x) alg-op -> End(alg) bijective?

    Decided by the exact rank of the dim^2 x dim^2 matrix of the map. Over a
    prime field the rank is computed directly. Over Q with integral structure
    constants the matrix is integral: full rank modulo a prime certifies
    bijectivity, and a rank deficit is certified by lifting a modular kernel
    vector to an exact rational kernel vector and verifying it; if no lift
    verifies, exact elimination settles it.
    """
    d = alg.dim
    if d > 64:
        raise ValueError(f"capacity: algebra dimension {d} exceeds 64")
    if alg.char != 0:
        p = alg.char
        consts = alg.coefficient_ints()
        lefts = [
            np.array([[consts[i][t][s] for t in range(d)] for s in range(d)], dtype=np.int64)
            for i in range(d)
        ]
        rights = [
            np.array([[consts[t][j][s] for t in range(d)] for s in range(d)], dtype=np.int64)
            for j in range(d)
        ]
        m = np.zeros((d * d, d * d), dtype=np.int64)
        col = 0
        for i in range(d):
            li = lefts[i] % p
            for j in range(d):
                m[:, col] = ((li @ (rights[j] % p)) % p).reshape(-1)
                col += 1
        return _rank_mod_p(m, p) == d * d

    lefts, rights = _left_right_matrices(alg)
    if lefts is None:
        return _is_azumaya_exact_rational(alg)
    m_int = _enveloping_matrix_int(lefts, rights, d)
    residues: list[np.ndarray] = []
    for p in _AZUMAYA_PRIMES:
        m_p = (m_int.astype(object) % p).astype(np.int64)
        if _rank_mod_p(m_p.copy(), p) == d * d:
            return True
        vec = _nullvector_mod_p(m_p, p)
        if vec is not None and _verify_kernel(lefts, rights, d, _lift_vector(vec, p)):
            return False
        residues.append(vec)
    # multi-prime rational reconstruction before the exact fallback
    if residues[0] is not None and residues[1] is not None:
        p1, p2 = _AZUMAYA_PRIMES[0], _AZUMAYA_PRIMES[1]
        mod = p1 * p2
        inv = pow(p1, -1, p2)
        combined = []
        ok = True
        for a1, a2 in zip(residues[0], residues[1]):
            x = (int(a1) + p1 * ((int(a2) - int(a1)) * inv % p2)) % mod
            f = _rational_reconstruct(x, mod)
            if f is None:
                ok = False
                break
            combined.append(f)
        if ok and _verify_kernel(lefts, rights, d, combined):
            return False
    return _is_azumaya_exact_envelope(m_int, d)


def _lift_vector(vec: np.ndarray, p: int) -> list[Fraction]:
    """Symmetric-range integer lift of a mod-p vector."""
    out = []
    for x in vec:
        x = int(x) % p
        out.append(Fraction(x - p if x > p // 2 else x))
    return out


def _verify_kernel(lefts, rights, d: int, vec: Sequence[Fraction]) -> bool:
    if all(x == 0 for x in vec):
        return False
    total = np.zeros((d, d), dtype=object)
    for i in range(d):
        acc = np.zeros((d, d), dtype=object)
        used = False
        for j in range(d):
            c = vec[i * d + j]
            if c != 0:
                acc = acc + np.array([[c]], dtype=object) * rights[j]
                used = True
        if used:
            total = total + lefts[i] @ acc
    return all(total[r][c] == 0 for r in range(d) for c in range(d))


def _is_azumaya_exact_envelope(m_int: np.ndarray, d: int) -> bool:
    rows = [[Fraction(int(x)) for x in m_int[r]] for r in range(d * d)]
    return rank(rows) == d * d


def _is_azumaya_exact_rational(alg: StructureConstantAlgebra) -> bool:
    d = alg.dim
    table = alg.table
    rows = []
    for k_out in range(d):
        for k_in in range(d):
            row = []
            for i in range(d):
                for j in range(d):
                    total = Fraction(0)
                    for m in range(d):
                        cim = table[i][k_in][m]
                        if cim != 0:
                            total += cim * table[m][j][k_out]
                    row.append(total)
            rows.append(row)
    return rank(rows) == d * d


@dataclass(frozen=True)
class QuaternionAlgebra:
    """Basis 1, i, j, k with i^2 = u, j^2 = v, ij = -ji = k."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        if self.u == 0 or self.v == 0:
            raise ValueError("quaternion parameters must be nonzero")

    def norm_form_conic(self) -> ConicFiber:
        """u x^2 + v y^2 - z^2: isotropic exactly when the algebra splits."""
        zero = Fraction(0)
        return ConicFiber(
            xx=Fraction(self.u), yy=Fraction(self.v), zz=Fraction(-1),
            xy=zero, xz=zero, yz=zero,
        )


def quaternion_from_ternary(q: QuadraticFormB) -> QuaternionAlgebra:
    """Even Clifford algebra of a nondegenerate ternary form as a quaternion algebra.

    Diagonalizing to <alpha, beta, gamma>, the even part has i = e0 e1 and
    j = e1 e2 with i^2 = -alpha beta and j^2 = -beta gamma. The returned pair is
    validated against the structure constants of the diagonal form's even
    Clifford algebra.
    """
    if q.size != 3:
        raise ValueError("expected a ternary form")
    if q.char == 2:
        raise ValueError("quaternion extraction needs characteristic != 2")
    if not is_smooth_quadric(q):
        raise ValueError("form is degenerate")
    coeffs, _ = q.diagonalize()
    alpha, beta, gamma = coeffs
    u = -alpha * beta
    v = -beta * gamma
    diag = QuadraticFormB(
        [[alpha, 0, 0], [0, beta, 0], [0, 0, gamma]], char=q.char
    )
    cl = build_clifford(diag)
    i_mask, j_mask = 0b011, 0b110
    one_mask = 0
    ii = cl.mul_basis(i_mask, i_mask)
    jj = cl.mul_basis(j_mask, j_mask)
    ij = cl.mul_basis(i_mask, j_mask)
    ji = cl.mul_basis(j_mask, i_mask)
    if ii != {one_mask: u} or jj != {one_mask: v}:
        raise AssertionError("even Clifford structure constants disagree with (u, v)")
    k_elem = ij
    k_neg = {m: -c for m, c in ji.items()}
    if k_elem != k_neg:
        raise AssertionError("i j != -j i in the even Clifford algebra")
    kk = cl.multiply(k_elem, k_elem)
    if kk != {one_mask: -u * v}:
        raise AssertionError("(i j)^2 != -u v in the even Clifford algebra")
    return QuaternionAlgebra(u, v)


def form_from_conic(conic: ConicFiber, char: int = 0) -> QuadraticFormB:
    """Ternary QuadraticFormB with the conic's coefficients (b_ij = coefficient of x_i x_j)."""
    c = conic
    return QuadraticFormB(
        [[c.xx, c.xy, c.xz], [c.xy, c.yy, c.yz], [c.xz, c.yz, c.zz]], char=char
    )


def hilbert_polynomial_quadric(n: int, t: int) -> int:
    """binom(t+n+1, n+1) - binom(t+n-1, n+1) with binomials extended polynomially.

    This is the Euler characteristic of O(t) on a quadric hypersurface in
    projective (n+1)-space, valid for every integer t.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _binom_poly(t + n + 1, n + 1) - _binom_poly(t + n - 1, n + 1)


def _binom_poly(top: int, k: int) -> int:
    """binom(top, k) as the polynomial top (top-1) ... (top-k+1) / k!, any integer top."""
    num = 1
    for i in range(k):
        num *= top - i
    den = math.factorial(k)
    q, r = divmod(num, den)
    assert r == 0
    return q
