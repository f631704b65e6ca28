"""Link surgery on S2xS2, Seiberg-Witten products, and Scharlemann verdicts.

``classify_link_surgery`` reads off the diffeomorphism type of A_L from the
linking-number parities of L.  The SW helpers multiply Laurent polynomials
(the basis fiber classes stay implicit).  ``scharlemann_verdict`` looks up
the known diffeomorphism types of B^eps(z) for curves z in the
(-1)-surgery on the trefoil, keyed by the conjugacy class of z.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Sequence

from .errors import ArityMismatch, InvalidDiagram, InvariantError, VariableMismatch
from .forms import IntForm, ManifoldName, direct_sum_all, name_standard
from .groups import Word, binary_icosahedral_table, check_word, evaluate_word, named_class
from .laurent import LaurentPoly
from .linkdiag import LinkDiagram, parity_vector

S2xS2 = ManifoldName(s2xs2=1)
S3xS1_S2xS2 = ManifoldName(s2xs2=1, s3xs1=1)
S3xS1_CP2_CP2bar = ManifoldName(cp2=1, cp2bar=1, s3xs1=1)


def classify_link_surgery(d: LinkDiagram) -> ManifoldName:
    n = d.n_components
    if n < 1:
        raise InvalidDiagram("link has no components")
    k = 2 * n - 1
    if parity_vector(d).all_zero():
        return ManifoldName(s2xs2=k)
    return ManifoldName(cp2=k, cp2bar=k)


# Seiberg-Witten values


@dataclass(frozen=True)
class SWValue:
    poly: LaurentPoly

    def __str__(self):
        return str(self.poly)


def knot_surgery_sw(sw_base: SWValue, delta_k: LaurentPoly) -> SWValue:
    """SW of the knot surgery X_K: SW_X times Delta_K."""
    if sw_base.poly.variables != delta_k.variables:
        raise VariableMismatch(f"{sw_base.poly.variables!r} vs {delta_k.variables!r}")
    return SWValue(sw_base.poly * delta_k)


def link_surgery_sw(delta_l: LaurentPoly, factors: Sequence[SWValue]) -> SWValue:
    """Delta_L(t_1..t_n) times the fiber-sum SW values, one per component.

    A factor given in one variable is placed on the t_i of its component.
    """
    variables = delta_l.variables
    if len(factors) != len(variables):
        raise ArityMismatch(f"{len(factors)} factors for {len(variables)} variables")
    out = delta_l
    for v, f in zip(variables, factors):
        p = f.poly
        if p.variables != variables:
            if p.nvars > 1:
                raise VariableMismatch(f"factor in {p.variables!r} cannot be placed on {v!r}")
            p = p.embed(variables, {p.variables[0]: v} if p.nvars else None)
        out = out * p
    return SWValue(out)


def e1_fibersum_form() -> IntForm:
    """<1> + 9<-1> + 2H: the form of E(1) # 2(S2xS2)."""
    return direct_sum_all([IntForm.diag(1), IntForm.diag(*([-1] * 9)),
                           IntForm.hyperbolic(), IntForm.hyperbolic()])


def e1_fibersum_check() -> ManifoldName:
    name = name_standard(e1_fibersum_form())
    if name != ManifoldName(cp2=3, cp2bar=11):
        raise InvariantError(f"E(1) # 2(S2xS2) named {name}")
    return name


# Surgery descriptors


@dataclass(frozen=True)
class LogTransform:
    multiplicity: int = 1
    auxiliary: int = 0
    direction: str = ""


@dataclass(frozen=True)
class SurgeryDescriptor:
    knot: LinkDiagram
    aux_multiplicity: int = 0
    log_transform: LogTransform = field(default_factory=LogTransform)

    def __post_init__(self):
        if self.knot.n_components != 1:
            raise InvalidDiagram("a surgery descriptor carries a knot (one component)")


def canonicalize_descriptor(s: SurgeryDescriptor) -> SurgeryDescriptor:
    """Gluing twisted by n meridians gives the same manifold as n = 0."""
    return replace(s, aux_multiplicity=0)


def classify_descriptor(s: SurgeryDescriptor) -> ManifoldName:
    return classify_link_surgery(canonicalize_descriptor(s).knot)


# Scharlemann manifolds B^eps(z) over the (-1)-surgered trefoil


@dataclass(frozen=True)
class Verdict:
    status: str  # "known" | "open"
    manifold: ManifoldName | None = None

    def to_json(self) -> dict:
        if self.status == "known":
            return {"status": "known", "manifold": str(self.manifold)}
        return {"status": "open"}


# (eps, class representative) -> manifold.  Missing pairs are open.
VERDICT_TABLE = {
    (1, "x"): S3xS1_S2xS2,          # meridian, twisted framing
    (1, "x y"): S3xS1_S2xS2,
    (0, "x"): S3xS1_CP2_CP2bar,     # meridian, trivial framing
    (0, "x y"): S3xS1_CP2_CP2bar,
    (1, "x^2"): S3xS1_CP2_CP2bar,
    (0, "x^3"): S3xS1_CP2_CP2bar,
    (1, "x^4"): S3xS1_CP2_CP2bar,
    (0, "x y x"): S3xS1_CP2_CP2bar,
    (1, "(x y)^2"): S3xS1_CP2_CP2bar,
}

OPEN_CASES = ((0, "x^2"), (1, "x^3"), (0, "x^4"), (1, "x y x"), (0, "(x y)^2"))


@lru_cache(maxsize=None)
def _class_table() -> dict[tuple[int, int], ManifoldName]:
    g = binary_icosahedral_table()
    return {(eps, named_class(g, rep)): name for (eps, rep), name in VERDICT_TABLE.items()}


def scharlemann_verdict(epsilon: int, w: Word) -> Verdict:
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    g = binary_icosahedral_table()
    check_word(w, g.generators)
    cls = g.class_index[evaluate_word(g, w)]
    name = _class_table().get((epsilon, cls))
    return Verdict("known", name) if name is not None else Verdict("open")
