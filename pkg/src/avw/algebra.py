"""The affine-Virasoro algebra of type A1 and its named subalgebras.

The algebra has basis {e_i, f_i, h_i, d_i : i in Z} together with one central
element C, and bracket

    [e_i, f_j] = h_{i+j} + i * delta_{i+j,0} C
    [h_i, e_j] = 2 e_{i+j}          [h_i, f_j] = -2 f_{i+j}
    [h_i, h_j] = 2 i delta_{i+j,0} C
    [d_i, x_j] = j x_{i+j}            for x in {e, f, h}
    [d_i, d_j] = (j - i) d_{i+j} + (j^3 - j)/12 * delta_{i+j,0} C
    [e_i, e_j] = [f_i, f_j] = 0       [C, -] = 0

Everything is exact over the rationals.  Elements are immutable and all
operations are pure functions, so concurrent use needs no locking.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple, Union

from .errors import AvwError
from .linalg import Vec

FAMILY_ORDER = {"d": 0, "h": 1, "f": 2, "e": 3, "C": 4}


class Gen(NamedTuple):
    """One basis symbol: a family tag ('e','f','h','d','C') and a degree."""

    family: str
    degree: int = 0

    def sort_key(self):
        return (self.degree, FAMILY_ORDER[self.family])

    def __str__(self):
        if self.family == "C":
            return "C"
        return f"{self.family}_{self.degree}"


def e(i: int) -> Gen:
    return Gen("e", i)


def f(i: int) -> Gen:
    return Gen("f", i)


def h(i: int) -> Gen:
    return Gen("h", i)


def d(i: int) -> Gen:
    return Gen("d", i)


C = Gen("C", 0)

# A LieElement is a Vec keyed by Gen.
LieElement = Vec


def as_element(x: Union[Gen, Vec]) -> Vec:
    return Vec.basis(x) if isinstance(x, Gen) else x


def degree(g: Gen) -> int:
    """Z-grading degree; the bracket adds degrees and C sits in degree 0."""
    return g.degree


def bracket_gens(x: Gen, y: Gen) -> Vec:
    """Bracket of two basis generators from the defining relations."""
    fx, fy = x.family, y.family
    i, j = x.degree, y.degree
    if fx == "C" or fy == "C":
        return Vec.zero()
    if fx == "d":
        if fy == "d":
            out = {d(i + j): Fraction(j - i)} if j != i else {}
            if i + j == 0:
                central = Fraction(j ** 3 - j, 12)
                if central:
                    out[C] = central
            return Vec(out)
        # [d_i, x_j] = j x_{i+j}
        return Vec({Gen(fy, i + j): Fraction(j)}) if j else Vec.zero()
    if fy == "d":
        return bracket_gens(y, x).scaled(-1)
    if fx == "h":
        if fy == "h":
            return Vec({C: Fraction(2 * i)}) if (i + j == 0 and i) else Vec.zero()
        sign = 2 if fy == "e" else -2
        return Vec({Gen(fy, i + j): Fraction(sign)})
    if fy == "h":
        return bracket_gens(y, x).scaled(-1)
    if fx == fy:  # [e,e] = [f,f] = 0
        return Vec.zero()
    if fx == "e":  # [e_i, f_j] = h_{i+j} + i delta C
        out = {h(i + j): Fraction(1)}
        if i + j == 0 and i:
            out[C] = Fraction(i)
        return Vec(out)
    # fx == "f", fy == "e"
    return bracket_gens(y, x).scaled(-1)


def bracket(x: Union[Gen, Vec], y: Union[Gen, Vec]) -> Vec:
    """Bilinear extension of the defining relations to whole elements."""
    xe, ye = as_element(x), as_element(y)
    out = Vec.zero()
    for gx, cx in xe:
        for gy, cy in ye:
            out = out + bracket_gens(gx, gy).scaled(cx * cy)
    return out


def jacobi_defect(x: Gen, y: Gen, z: Gen) -> Vec:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero exactly when Jacobi holds."""
    return (bracket(x, bracket_gens(y, z))
            + bracket(y, bracket_gens(z, x))
            + bracket(z, bracket_gens(x, y)))


class AlgebraSpec(NamedTuple):
    """A named subalgebra given by its generating families and degree rules.

    ``families`` maps a family tag to the allowed degrees: "all" or a frozen
    set of specific degrees.  ``has_center`` states whether C belongs.
    """

    name: str
    families: tuple  # tuple of (family, "all" | frozenset of degrees)
    has_center: bool

    def contains(self, g: Gen) -> bool:
        if g.family == "C":
            return self.has_center
        for fam, degs in self.families:
            if fam == g.family and (degs == "all" or g.degree in degs):
                return True
        return False

    def generators(self, lo: int, hi: int) -> Iterator[Gen]:
        """Basis generators with degree in [lo, hi], C last if present."""
        for fam, degs in self.families:
            for k in range(lo, hi + 1):
                if degs == "all" or k in degs:
                    yield Gen(fam, k)
        if self.has_center:
            yield C


VIR = AlgebraSpec("Vir", (("d", "all"),), True)
HVIR = AlgebraSpec("D", (("d", "all"), ("h", "all")), True)
T2 = AlgebraSpec("T2", (("d", "all"), ("h", "all"), ("e", "all")), True)
SL2LOOP = AlgebraSpec(
    "Sl2Loop",
    (("e", "all"), ("f", "all"), ("h", "all"), ("d", frozenset({0}))),
    True,
)
SL2 = AlgebraSpec(
    "Sl2",
    (("e", frozenset({0})), ("f", frozenset({0})), ("h", frozenset({0}))),
    False,
)
FULL = AlgebraSpec("L", (("d", "all"), ("e", "all"), ("f", "all"), ("h", "all")), True)

ALGEBRAS = {a.name: a for a in (VIR, HVIR, T2, SL2LOOP, SL2, FULL)}


def algebra_by_name(name: str) -> AlgebraSpec:
    try:
        return ALGEBRAS[name]
    except KeyError:
        raise AvwError(f"unknown algebra {name!r}; choose from {sorted(ALGEBRAS)}") from None


def in_subalgebra(x: Union[Gen, Vec], spec: AlgebraSpec) -> bool:
    """True iff every generator in the support of x lies in the subalgebra."""
    return all(spec.contains(g) for g, _ in as_element(x))


def element_str(x: Vec) -> str:
    """Canonical human-readable form, terms sorted by (degree, family)."""
    if x.is_zero():
        return "0"
    bits = []
    for g, coeff in x.sorted_items(key=Gen.sort_key):
        if coeff == 1:
            bits.append(str(g))
        elif coeff == -1:
            bits.append(f"-{g}")
        else:
            bits.append(f"{coeff}*{g}")
    return " + ".join(bits).replace("+ -", "- ")
