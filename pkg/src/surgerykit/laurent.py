"""Integer Laurent polynomials in finitely many named variables.

A polynomial is a map from integer exponent vectors to nonzero integer
coefficients.  Values are immutable; all operations return new objects.

Text form is ``3 - 2*t + t^-1``; terms print in descending lexicographic
order of their exponent vectors and ``parse_laurent`` reads the same
syntax back (``*`` between factors is optional).
"""
from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, ParseError, VariableMismatch, ZeroPolynomial

Exps = tuple  # tuple[int, ...]


class LaurentPoly:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exps, int] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise VariableMismatch(f"repeated variable in {variables!r}")
        n = len(variables)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise VariableMismatch(f"exponent vector {e} has length != {n}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.variables = variables
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, variables=("t",)):
        return cls(variables)

    @classmethod
    def constant(cls, c: int, variables=("t",)):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def one(cls, variables=("t",)):
        return cls.constant(1, variables)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1, variables=("t",)):
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None, power: int = 1):
        variables = tuple(variables) if variables is not None else (name,)
        try:
            k = variables.index(name)
        except ValueError:
            raise VariableMismatch(f"{name!r} not among {variables!r}") from None
        e = [0] * len(variables)
        e[k] = power
        return cls(variables, {tuple(e): 1})

    # basic accessors

    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient map, lexicographically sorted."""
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def leading(self) -> tuple[Exps, int]:
        """Lexicographically largest term."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def min_exponents(self) -> Exps:
        return tuple(min(col) for col in zip(*self._terms)) if self._terms else (0,) * self.nvars

    def max_exponents(self) -> Exps:
        return tuple(max(col) for col in zip(*self._terms)) if self._terms else (0,) * self.nvars

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    # arithmetic

    def _check(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.variables)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.variables != self.variables:
            raise VariableMismatch(f"{self.variables!r} vs {other.variables!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.variables, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise NotDivisible("only monomials are invertible")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise NotDivisible("only unit monomials are invertible")
            return LaurentPoly(self.variables, {tuple(-x * -k for x in e): c ** (-k)})
        result = LaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.constant(other, self.variables)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r}, variables={self.variables!r})"

    def __str__(self):
        return format_laurent(self)

    # transformations

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPoly(self.variables, {tuple(a + b for a, b in zip(e, exps)): c
                                            for e, c in self._terms.items()})

    def invert_variables(self) -> "LaurentPoly":
        """Substitute every variable by its inverse."""
        return LaurentPoly(self.variables, {tuple(-x for x in e): c for e, c in self._terms.items()})

    def substitute_one(self, name: str) -> "LaurentPoly":
        """Set variable ``name`` to 1 and drop it from the variable list."""
        k = self.variables.index(name)
        rest = self.variables[:k] + self.variables[k + 1:]
        out: dict = {}
        for e, c in self._terms.items():
            e2 = e[:k] + e[k + 1:]
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(rest, out)

    def rename(self, variables: Sequence[str]) -> "LaurentPoly":
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise VariableMismatch("rename must keep the variable count")
        return LaurentPoly(variables, self._terms)

    def embed(self, variables: Sequence[str], mapping: Mapping[str, str] | None = None) -> "LaurentPoly":
        """Re-express in a larger variable list; ``mapping`` renames own variables first."""
        variables = tuple(variables)
        mapping = mapping or {}
        idx = []
        for v in self.variables:
            target = mapping.get(v, v)
            if target not in variables:
                raise VariableMismatch(f"{target!r} not among {variables!r}")
            idx.append(variables.index(target))
        out: dict = {}
        for e, c in self._terms.items():
            e2 = [0] * len(variables)
            for k, x in zip(idx, e):
                e2[k] += x
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(variables, out)


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


# Operation-style API


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval_one(a: LaurentPoly) -> int:
    """Value at t_1 = ... = t_n = 1, i.e. the coefficient sum."""
    return sum(c for _, c in a)


def lp_normalize(a: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``a`` up to multiplication by units +-t^k.

    Per variable, the exponent range is centred on zero when its width is
    even and otherwise starts at zero.  The sign makes the coefficient sum
    positive, or the leading coefficient positive if that sum vanishes.
    """
    if a.is_zero():
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    lo, hi = a.min_exponents(), a.max_exponents()
    shift = []
    for l, h in zip(lo, hi):
        shift.append(-((l + h) // 2) if (l + h) % 2 == 0 else -l)
    b = a.shift(shift)
    s = lp_eval_one(b)
    if s < 0 or (s == 0 and b.leading()[1] < 0):
        b = -b
    return b


def lp_equal_up_to_units(a: LaurentPoly, b: LaurentPoly) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return lp_normalize(a) == lp_normalize(b)


# Exact division and gcd.  Both work on ordinary polynomials (all
# exponents >= 0) obtained by clearing the Laurent denominators.


def _to_poly(a: LaurentPoly) -> tuple[dict, Exps]:
    lo = a.min_exponents()
    return {tuple(x - l for x, l in zip(e, lo)): c for e, c in a}, lo


def _pdivexact(a: dict, b: dict) -> dict:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lb = max(b)
    cb = b[lb]
    q: dict = {}
    r = dict(a)
    while r:
        lt = max(r)
        d = tuple(x - y for x, y in zip(lt, lb))
        c, rem = divmod(r[lt], cb)
        if rem or min(d, default=0) < 0:
            raise NotDivisible("polynomial division is not exact")
        q[d] = c
        for e, cc in b.items():
            e2 = tuple(x + y for x, y in zip(e, d))
            v = r.get(e2, 0) - c * cc
            if v:
                r[e2] = v
            else:
                r.pop(e2, None)
    return q


def lp_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a / b in the Laurent ring; NotDivisible otherwise."""
    if a.variables != b.variables:
        raise VariableMismatch(f"{a.variables!r} vs {b.variables!r}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    pa, sa = _to_poly(a)
    pb, sb = _to_poly(b)
    q = _pdivexact(pa, pb)
    return LaurentPoly(a.variables, q).shift([x - y for x, y in zip(sa, sb)])


def _deg(a: dict, v: int) -> int:
    return max(e[v] for e in a)


def _coeffs_in(a: dict, v: int) -> dict:
    """Split ``a`` by the exponent of variable v; coefficients keep full-length keys."""
    out: dict = {}
    for e, c in a.items():
        k = e[v]
        out.setdefault(k, {})[e[:v] + (0,) + e[v + 1:]] = c
    return out


def _pmul(a: dict, b: dict) -> dict:
    return _mul_terms(a, b)


def _psub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _content(a: dict, v: int, nv: int) -> dict:
    coeffs = list(_coeffs_in(a, v).values())
    return reduce(lambda x, y: _pgcd(x, y, v + 1, nv), coeffs[1:], coeffs[0])


def _prem(a: dict, b: dict, v: int) -> dict:
    db = _deg(b, v)
    lcb = _coeffs_in(b, v)[db]
    r = a
    while r and _deg(r, v) >= db:
        dr = _deg(r, v)
        lcr = _coeffs_in(r, v)[dr]
        xs = tuple(dr - db if i == v else 0 for i in range(len(next(iter(b)))))
        r = _psub(_pmul(lcb, r), _pmul(_pmul(lcr, {xs: 1}), b))
    return r


def _pgcd(a: dict, b: dict, v: int, nv: int) -> dict:
    if not a:
        return b
    if not b:
        return a
    if v == nv:
        zero = next(iter(a))
        return {zero: math.gcd(a[zero], b[zero])}
    ca, cb = _content(a, v, nv), _content(b, v, nv)
    pa, pb = _pdivexact(a, ca), _pdivexact(b, cb)
    c = _pgcd(ca, cb, v + 1, nv)
    if _deg(pa, v) < _deg(pb, v):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb, v)
        pa, pb = pb, (_pdivexact(r, _content(r, v, nv)) if r else {})
    return _pmul(c, pa)


def lp_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor, determined up to units +-t^k.

    Primitive polynomial remainder sequences, recursing on the variables.
    """
    if a.variables != b.variables:
        raise VariableMismatch(f"{a.variables!r} vs {b.variables!r}")
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    pa, _ = _to_poly(a)
    pb, _ = _to_poly(b)
    g = _pgcd(pa, pb, 0, a.nvars)
    return LaurentPoly(a.variables, g)


def lp_gcd_all(polys: Iterable[LaurentPoly], variables: Sequence[str]) -> LaurentPoly:
    return reduce(lp_gcd, polys, LaurentPoly.zero(variables))


# Text form

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z_]+\d*)|(?P<op>[-+*^]))")


def _natural_key(name: str):
    m = re.match(r"([A-Za-z_]+)(\d*)$", name)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def _format_monomial(e: Exps, variables: Sequence[str]) -> str:
    parts = []
    for v, x in zip(variables, e):
        if x == 1:
            parts.append(v)
        elif x:
            parts.append(f"{v}^{x}")
    return "*".join(parts)


def format_laurent(a: LaurentPoly) -> str:
    if a.is_zero():
        return "0"
    out = []
    for e, c in sorted(a, reverse=True):
        mono = _format_monomial(e, a.variables)
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, toks = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
        pos = m.end()
    return toks


def parse_laurent(text: str, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Parse ``3 - 2*t + t^-1`` style text.

    Without ``variables`` the variable list is the naturally sorted set of
    names that occur, or ``("t",)`` for constants.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial text")
    names = sorted({v for k, v in toks if k == "var"}, key=_natural_key)
    if variables is None:
        variables = tuple(names) or ("t",)
    variables = tuple(variables)
    for v in names:
        if v not in variables:
            raise ParseError(f"unknown variable {v!r}; expected one of {variables!r}")

    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def signed_int() -> int:
        sign = 1
        if peek() == ("op", "-") or peek() == ("op", "+"):
            sign = -1 if take()[1] == "-" else 1
        kind, val = take() if i < len(toks) else (None, None)
        if kind != "num":
            raise ParseError(f"expected integer exponent in {text!r}")
        return sign * int(val)

    terms: dict = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    while True:
        coeff, exps, nfactors = 1, [0] * len(variables), 0
        while True:
            kind, val = peek()
            if kind == "num":
                take()
                coeff *= int(val)
            elif kind == "var":
                take()
                power = 1
                if peek() == ("op", "^"):
                    take()
                    power = signed_int()
                exps[variables.index(val)] += power
            else:
                break
            nfactors += 1
            if peek() == ("op", "*"):
                take()
                if peek()[0] not in ("num", "var"):
                    raise ParseError(f"dangling '*' in {text!r}")
        if not nfactors:
            raise ParseError(f"expected a term in {text!r}")
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + sign * coeff
        kind, val = peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            continue
        raise ParseError(f"unexpected {val!r} in {text!r}")
    return LaurentPoly(variables, terms)
