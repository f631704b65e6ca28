"""Symmetric integer bilinear forms and the 4-manifolds they name.

Everything is exact: signatures come from rational congruence
diagonalization, determinants from fraction-free elimination.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (DefiniteNotSupported, IndexOutOfRange, NotSymmetric, NotUnimodular,
                     ParseError, SameIndex, Unrecognized)

BRUTE_FORCE_MAX_RANK = 8


@dataclass(frozen=True)
class IntForm:
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise NotSymmetric("form matrix must be square")
        for i in range(n):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def empty(cls):
        return cls(())

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def hyperbolic(cls):
        return cls(((0, 1), (1, 0)))

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, data) -> "IntForm":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad matrix JSON: {exc}") from None
        try:
            rows = data["rows"]
            n = data.get("n", len(rows))
        except (TypeError, KeyError):
            raise ParseError('matrix JSON needs {"n": k, "rows": [...]}') from None
        if n != len(rows):
            raise ParseError(f"n = {n} but {len(rows)} rows given")
        return cls(tuple(tuple(r) for r in rows))

    def __neg__(self):
        return IntForm(tuple(tuple(-x for x in row) for row in self.matrix))


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    signature: int
    parity: str  # "even" | "odd"
    unimodular: bool
    definiteness: str  # "positive" | "negative" | "indefinite" | "zero-rank"

    @property
    def b_plus(self) -> int:
        return (self.rank + self.signature) // 2

    @property
    def b_minus(self) -> int:
        return (self.rank - self.signature) // 2


def rational_diagonal(q: IntForm) -> list[Fraction]:
    """Diagonal entries of a rational congruence diagonalization (zeros for the radical)."""
    a = [[Fraction(x) for x in row] for row in q.matrix]
    n = len(a)
    out = []
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][i] != 0), None)
        if p is None:
            # all remaining diagonal entries vanish: e_i -> e_i + e_j makes one nonzero
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                out.extend([Fraction(0)] * (n - k))
                break
            i, j = pair
            for r in range(n):
                a[r][i] += a[r][j]
            for c in range(n):
                a[i][c] += a[j][c]
            p = i
        if p != k:
            a[p], a[k] = a[k], a[p]
            for row in a:
                row[p], row[k] = row[k], row[p]
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][i] -= f * a[r][k]
        out.append(piv)
    return out


def determinant(q: IntForm) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(row) for row in q.matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def invariants(q: IntForm) -> FormInvariants:
    d = rational_diagonal(q)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    rank = pos + neg
    parity = "even" if all(q.matrix[i][i] % 2 == 0 for i in range(q.n)) else "odd"
    if rank == 0:
        definiteness = "zero-rank"
    elif neg == 0:
        definiteness = "positive"
    elif pos == 0:
        definiteness = "negative"
    else:
        definiteness = "indefinite"
    return FormInvariants(rank, pos - neg, parity, abs(determinant(q)) == 1, definiteness)


def direct_sum(q1: IntForm, q2: IntForm) -> IntForm:
    n1, n2 = q1.n, q2.n
    rows = [tuple(r) + (0,) * n2 for r in q1.matrix]
    rows += [(0,) * n1 + tuple(r) for r in q2.matrix]
    return IntForm(tuple(rows))


def direct_sum_all(forms: Sequence[IntForm]) -> IntForm:
    out = IntForm.empty()
    for f in forms:
        out = direct_sum(out, f)
    return out


def handle_slide(q: IntForm, i: int, j: int, sign: int = 1) -> IntForm:
    """E^T q E for the basis change e_j -> e_j + sign * e_i."""
    n = q.n
    for k in (i, j):
        if not 0 <= k < n:
            raise IndexOutOfRange(f"index {k} not in 0..{n - 1}")
    if i == j:
        raise SameIndex("cannot slide a handle over itself")
    if sign not in (1, -1):
        raise ValueError("slide sign must be +1 or -1")
    a = [list(r) for r in q.matrix]
    for r in range(n):
        a[r][j] += sign * a[r][i]
    for c in range(n):
        a[j][c] += sign * a[i][c]
    return IntForm(tuple(tuple(r) for r in a))


# Short vectors in a positive definite lattice


def _ldl(q: IntForm):
    n = q.n
    A = q.matrix
    D = [Fraction(0)] * n
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        D[i] = Fraction(A[i][i]) - sum(L[i][k] ** 2 * D[k] for k in range(i))
        if D[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            L[j][i] = (Fraction(A[j][i]) - sum(L[j][k] * L[i][k] * D[k] for k in range(i))) / D[i]
    return L, D


def vectors_of_norm(q: IntForm, norm: int) -> list[tuple[int, ...]]:
    """All integer v with v^T q v == norm, for positive definite q (Fincke-Pohst)."""
    n = q.n
    L, D = _ldl(q)
    A = q.matrix
    out = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            v = tuple(x)
            if sum(v[a] * A[a][b] * v[b] for a in range(n) for b in range(n)) == norm:
                out.append(v)
            return
        center = -sum(L[j][i] * x[j] for j in range(i + 1, n))
        radius = math.sqrt(float(remaining / D[i])) + 1e-9
        lo = math.ceil(float(center) - radius)
        hi = math.floor(float(center) + radius)
        for xi in range(lo, hi + 1):
            used = D[i] * (xi - center) ** 2
            if used <= remaining:
                x[i] = xi
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(norm))
    return out


def _is_standard_diagonal(q: IntForm) -> bool:
    """Positive definite unimodular q is isomorphic to I_n iff it has 2n vectors of norm 1."""
    return len(vectors_of_norm(q, 1)) == 2 * q.n


def _pair_reduce(q: IntForm) -> IntForm:
    """Pairwise reduction of a positive definite form by handle slides.

    Slide e_i -> e_i - k e_j with k the nearest integer to q_ij / q_jj
    while that lowers q_ii; the trace strictly decreases, so this stops.
    """
    m = [list(r) for r in q.matrix]
    n = len(m)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                k = round(Fraction(m[i][j], m[j][j]))
                if k and k * k * m[j][j] - 2 * k * m[i][j] < 0:
                    for r in range(n):
                        m[r][i] -= k * m[r][j]
                    for c in range(n):
                        m[i][c] -= k * m[j][c]
                    changed = True
    return IntForm(tuple(tuple(r) for r in m))


def _find_isometry(a: IntForm, b: IntForm) -> list[tuple[int, ...]] | None:
    """Vectors v_1..v_n in the lattice of ``a`` whose Gram matrix is ``b``."""
    n = b.n
    A = a.matrix
    cands: dict[int, list] = {}
    for i in range(n):
        cands.setdefault(b.matrix[i][i], None)
    for k in cands:
        cands[k] = vectors_of_norm(a, k)

    def ip(u, v):
        return sum(u[r] * A[r][c] * v[c] for r in range(n) for c in range(n))

    chosen: list = []

    def rec(i: int) -> bool:
        if i == n:
            return True
        for v in cands[b.matrix[i][i]]:
            if all(ip(v, chosen[j]) == b.matrix[i][j] for j in range(i)):
                chosen.append(v)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if rec(0) else None


def stably_equivalent(q1: IntForm, q2: IntForm) -> bool:
    """Isomorphism of unimodular forms.

    Indefinite forms are decided by rank, signature and parity; definite
    forms up to rank 8 by searching for an explicit isometry.
    """
    i1, i2 = invariants(q1), invariants(q2)
    if not (i1.unimodular and i2.unimodular):
        raise NotUnimodular("both forms must be unimodular")
    if (i1.rank, i1.signature, i1.parity) != (i2.rank, i2.signature, i2.parity):
        return False
    if i1.definiteness in ("indefinite", "zero-rank"):
        return True
    if i1.rank > BRUTE_FORCE_MAX_RANK:
        raise DefiniteNotSupported(f"definite forms of rank {i1.rank} > {BRUTE_FORCE_MAX_RANK}")
    if i1.definiteness == "negative":
        q1, q2 = -q1, -q2
    return _find_isometry(_pair_reduce(q1), _pair_reduce(q2)) is not None


# Names of standard simply connected (and S3xS1) summands

_NAME_PARTS = (("s2xs2", "S2xS2"), ("cp2", "CP2"), ("cp2bar", "CP2bar"), ("s3xs1", "S3xS1"))


@dataclass(frozen=True)
class ManifoldName:
    s2xs2: int = 0
    cp2: int = 0
    cp2bar: int = 0
    s3xs1: int = 0

    def __post_init__(self):
        for attr, _ in _NAME_PARTS:
            if getattr(self, attr) < 0:
                raise ValueError(f"negative count for {attr}")

    def __str__(self):
        parts = [f"#^{getattr(self, a)} {label}" for a, label in _NAME_PARTS if getattr(self, a)]
        return " # ".join(parts) if parts else "S4"

    def counts(self) -> dict[str, int]:
        return {label: getattr(self, a) for a, label in _NAME_PARTS if getattr(self, a)}


def parse_manifold_name(text: str) -> ManifoldName:
    text = text.strip()
    if text == "S4":
        return ManifoldName()
    counts = {}
    labels = {label: attr for attr, label in _NAME_PARTS}
    # split on the connected-sum separators, keeping the '#^k' prefixes
    for piece in re.split(r"\s+#\s+", text):
        m = re.fullmatch(r"(?:#\^(\d+)\s*)?(S2xS2|CP2bar|CP2|S3xS1)", piece.strip())
        if not m:
            raise ParseError(f"cannot read manifold summand {piece!r}")
        attr = labels[m.group(2)]
        counts[attr] = counts.get(attr, 0) + int(m.group(1) or 1)
    return ManifoldName(**counts)


def form_of_name(name: ManifoldName) -> IntForm:
    """a*H + b*<1> + c*<-1>; S3xS1 summands carry no form."""
    parts = [IntForm.hyperbolic()] * name.s2xs2
    parts += [IntForm.diag(1)] * name.cp2 + [IntForm.diag(-1)] * name.cp2bar
    return direct_sum_all(parts)


def name_standard(q: IntForm) -> ManifoldName:
    inv = invariants(q)
    if not inv.unimodular:
        raise NotUnimodular("only unimodular forms name closed 4-manifolds")
    if inv.rank == 0:
        return ManifoldName()
    if inv.parity == "even":
        if inv.signature == 0:
            return ManifoldName(s2xs2=inv.rank // 2)
        raise Unrecognized(f"even form of signature {inv.signature} needs E8 summands")
    if inv.definiteness == "indefinite":
        return ManifoldName(cp2=inv.b_plus, cp2bar=inv.b_minus)
    # odd definite: standard only when it is the diagonal lattice
    pos = q if inv.definiteness == "positive" else -q
    if _is_standard_diagonal(pos):
        return ManifoldName(cp2=inv.b_plus, cp2bar=inv.b_minus)
    raise Unrecognized("odd definite form is not diagonalizable over the integers")
