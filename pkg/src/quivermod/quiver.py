"""Quivers, dimension vectors, and the homological Euler form.

All arithmetic is exact: integers and fractions.Fraction only, never floats.
Dimension vectors and stability vectors are plain tuples of ints, indexed by
vertex. Multiplicities arrows[i][j] count arrows from vertex i to vertex j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Quiver:
    """Finite quiver on vertices 0..vertex_count-1 with an arrow multiplicity matrix."""

    vertex_count: int
    arrows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = self.vertex_count
        if k < 1:
            raise ValueError("quiver needs at least one vertex")
        if len(self.arrows) != k or any(len(row) != k for row in self.arrows):
            raise ValueError(f"arrow matrix must be {k}x{k}")
        if any(m < 0 for row in self.arrows for m in row):
            raise ValueError("arrow multiplicities must be nonnegative")

    @staticmethod
    def from_matrix(rows: Sequence[Sequence[int]]) -> "Quiver":
        return Quiver(len(rows), tuple(tuple(int(m) for m in row) for row in rows))

    def to_text(self) -> str:
        lines = [f"vertices {self.vertex_count}"]
        for i, row in enumerate(self.arrows):
            for j, m in enumerate(row):
                if m:
                    lines.append(f"arrow {i} {j} {m}")
        return "\n".join(lines) + "\n"


def loop_quiver(m: int) -> Quiver:
    """One vertex, m loops."""
    if m < 0:
        raise ValueError("loop count must be nonnegative")
    return Quiver(1, ((m,),))


def kronecker_quiver(m: int) -> Quiver:
    """Two vertices, m arrows from vertex 0 to vertex 1."""
    if m < 0:
        raise ValueError("arrow count must be nonnegative")
    return Quiver(2, ((0, m), (0, 0)))


def parse_quiver(text: str) -> Quiver:
    """Parse the plain text format: a `vertices <k>` line, then `arrow <i> <j> <mult>` lines.

    Blank lines and lines starting with `#` are ignored. Vertex indices are 0-based.
    """
    vertex_count = None
    arrow_lines: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if vertex_count is not None:
                raise ValueError(f"line {lineno}: duplicate vertices line")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'vertices <k>'")
            vertex_count = int(parts[1])
        elif parts[0] == "arrow":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 'arrow <i> <j> <mult>'")
            arrow_lines.append((int(parts[1]), int(parts[2]), int(parts[3])))
        else:
            raise ValueError(f"line {lineno}: unknown directive {parts[0]!r}")
    if vertex_count is None:
        raise ValueError("missing 'vertices' line")
    if vertex_count < 1:
        raise ValueError("vertex count must be positive")
    rows = [[0] * vertex_count for _ in range(vertex_count)]
    for i, j, m in arrow_lines:
        if not (0 <= i < vertex_count and 0 <= j < vertex_count):
            raise ValueError(f"arrow ({i},{j}) out of range for {vertex_count} vertices")
        if m < 0:
            raise ValueError("arrow multiplicity must be nonnegative")
        rows[i][j] += m
    return Quiver.from_matrix(rows)


def load_quiver(spec: str) -> Quiver:
    """Load a quiver from a file path, or from the shorthands `loop:m` / `kronecker:m`."""
    if spec.startswith("loop:"):
        return loop_quiver(int(spec.split(":", 1)[1]))
    if spec.startswith("kronecker:"):
        return kronecker_quiver(int(spec.split(":", 1)[1]))
    with open(spec, encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def _check_dim(q: Quiver, d: Sequence[int], name: str = "d") -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if len(d) != q.vertex_count:
        raise ValueError(f"{name} has {len(d)} entries, quiver has {q.vertex_count} vertices")
    if any(x < 0 for x in d):
        raise ValueError(f"{name} entries must be nonnegative")
    return d


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d,e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j. Bilinear, generally asymmetric."""
    d = _check_dim(q, d, "d")
    e = _check_dim(q, e, "e")
    total = sum(di * ei for di, ei in zip(d, e))
    for i, row in enumerate(q.arrows):
        for j, mult in enumerate(row):
            if mult:
                total -= mult * d[i] * e[j]
    return total


def slope(theta: Sequence[int], d: Sequence[int]) -> Fraction:
    """theta(d) / (sum of entries of d), exact and in lowest terms. d must be nonzero."""
    theta = tuple(int(x) for x in theta)
    d = tuple(int(x) for x in d)
    if len(theta) != len(d):
        raise ValueError("theta and d must have equal length")
    total = sum(d)
    if total == 0:
        raise ValueError("slope undefined for the zero dimension vector")
    return Fraction(sum(t * x for t, x in zip(theta, d)), total)


def gcd_of(d: Sequence[int]) -> int:
    """gcd of the entries of a nonzero dimension vector."""
    d = tuple(int(x) for x in d)
    if not d or all(x == 0 for x in d):
        raise ValueError("gcd undefined for the zero vector")
    return math.gcd(*d)


def _bezout_min(g: int, di: int) -> tuple[int, int, int]:
    """Solve x*g + y*di = gcd(g, di) with |y| minimal, positive y on ties.

    Returns (g2, x, y). Assumes g, di >= 0, not both zero.
    """
    g2 = math.gcd(g, di)
    if g == 0:
        return g2, 0, 1 if di else 0
    if di == 0:
        return g2, 1, 0
    old_r, r = g, di
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    x, y = old_s, old_t
    step = g // g2
    if step:
        k = round(y / step)
        best = min((y - kk * step for kk in (k - 1, k, k + 1)), key=lambda w: (abs(w), w <= 0))
        x = (g2 - best * di) // g
        y = best
    return g2, x, y


def linearization_weights(d: Sequence[int]) -> tuple[int, ...]:
    """Integers a_i with sum a_i d_i = 1, computed by iterated extended gcd.

    Each step keeps the newly introduced weight minimal in absolute value
    (positive on ties), so the result is deterministic. Requires gcd_of(d) == 1.
    """
    d = tuple(int(x) for x in d)
    if not d or any(x < 0 for x in d):
        raise ValueError("dimension vector must be nonempty with nonnegative entries")
    if gcd_of(d) != 1:
        raise ValueError(f"no integral weights: gcd of {d} is {gcd_of(d)}, not 1")
    g = d[0]
    coeffs = [1]
    for di in d[1:]:
        g2, x, y = _bezout_min(g, di)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    assert g == 1 and sum(c * x for c, x in zip(coeffs, d)) == 1
    return tuple(coeffs)


def moduli_dimension(q: Quiver, d: Sequence[int]) -> int:
    """1 - <d,d>, the dimension of the stable moduli space when stables exist."""
    d = _check_dim(q, d)
    if all(x == 0 for x in d):
        raise ValueError("dimension vector must be nonzero")
    return 1 - euler_form(q, d, d)


def framed_bundle_relative_dimension(d: Sequence[int], n: Sequence[int]) -> int:
    """n.d - 1, the fiber dimension of the projectivized framed bundle P_n."""
    d = tuple(int(x) for x in d)
    n = tuple(int(x) for x in n)
    if len(d) != len(n):
        raise ValueError("d and n must have equal length")
    nd = sum(a * b for a, b in zip(n, d))
    if nd == 0:
        raise ValueError("n.d = 0: the framed bundle is empty")
    return nd - 1
