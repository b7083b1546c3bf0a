"""Hori-Vafa superpotential and the mirror algebra presentation.

The superpotential is g = sum over dual vertices alpha of (1 + c_alpha)
t^{f(alpha)} u^alpha.  The exponents f are the lifting heights of the dual
vertices relative to a base point: f vanishes on the distinguished face and
grows by the pairing of the dual-edge difference with any point of the
crossed diagram edge.  Correction series c_alpha are user input with positive
valuation (their integer coefficients are invariants this package never
computes); with no corrections every coefficient of the normalized g is a
plain power of t.

The mirror algebra is Lambda[u_1^{+-1}, ..., u_{n-1}^{+-1}, x, y] / (x y - g)
with winding gradings |u_i| = 0, |x| = 1, |y| = -1.  Normalization makes the
presentation canonical: the distinguished vertex goes to the lattice origin
and the affine-linear part of f is absorbed into rescalings of the u_i and an
overall power of t, which also makes the result independent of the base
point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .diagram import TropicalDiagram, dual_subdivision, face_heights
from .lattice import Vec, vsub
from .novikov import (
    NOV_ONE,
    NovikovElement,
    nov,
    nov_add,
    nov_from_json,
    nov_shift,
    nov_to_json,
    nov_to_text,
    nov_truncate,
    nov_val,
)

Q = Fraction

DEFAULT_TRUNCATION = Q(10)


class MirrorError(ValueError):
    pass


@dataclass(frozen=True)
class CorrectionMap:
    """User-supplied correction series per dual vertex, val > 0 each."""

    terms: tuple[tuple[Vec, NovikovElement], ...]

    def __post_init__(self):
        for alpha, c in self.terms:
            v = nov_val(c)
            if v is not None and v <= 0:
                raise MirrorError("corrections must have positive valuation")
        object.__setattr__(
            self, "terms", tuple((tuple(int(a) for a in al), c) for al, c in self.terms)
        )

    def get(self, alpha: Vec) -> NovikovElement:
        for a, c in self.terms:
            if a == alpha:
                return c
        return nov()

    def support(self) -> set[Vec]:
        return {a for a, _ in self.terms}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, s in self.terms for _, c in s.terms)


def corrections_from_json(data) -> CorrectionMap:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        terms = tuple(
            (tuple(int(a) for a in item["vertex"]), nov_from_json(item["series"]))
            for item in data
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MirrorError(f"malformed corrections JSON: {exc}") from exc
    return CorrectionMap(terms)


def corrections_to_json(cm: CorrectionMap) -> list:
    return [{"vertex": list(a), "series": nov_to_json(c)} for a, c in cm.terms]


def _term_sort_key(alpha: Vec):
    return (sum(alpha), tuple(reversed(alpha)))


@dataclass(frozen=True)
class Superpotential:
    dim: int  # diagram dimension d; the mirror has n = d + 1
    terms: tuple[tuple[Vec, NovikovElement], ...]  # (dual vertex, coefficient)
    root: Vec
    truncation: Fraction

    def coefficient(self, alpha: Vec) -> NovikovElement:
        for a, c in self.terms:
            if a == alpha:
                return c
        raise MirrorError(f"{alpha} is not in the superpotential support")

    def support(self) -> tuple[Vec, ...]:
        return tuple(a for a, _ in self.terms)


def face_distance(diag: TropicalDiagram, alpha: Sequence[int], base: Optional[Sequence] = None) -> Fraction:
    """The t-exponent of the dual vertex alpha relative to a base point.

    Pinned by f(root) = 0; increments across a diagram edge pair the dual-edge
    difference with any point of the edge (constancy asserted).  Base point
    defaults to the origin.
    """
    dual = dual_subdivision(diag)
    alpha = tuple(int(a) for a in alpha)
    heights = face_heights(diag, base, dual)
    for f, pos in enumerate(dual.lattice_points):
        if pos == alpha:
            return heights[f]
    raise MirrorError(f"{alpha} is not a vertex of the dual graph")


def superpotential(
    diag: TropicalDiagram,
    base: Optional[Sequence] = None,
    corrections: Optional[CorrectionMap] = None,
    truncation=DEFAULT_TRUNCATION,
    root_face: Optional[int] = None,
    sign: int = 1,
) -> Superpotential:
    """g = sum (1 + c_alpha) t^{f(alpha)} u^alpha over the dual vertices.

    f is normalized so its minimum over the support is 0.  Correction series
    are truncated at the energy level on input; the leading part of g is
    polynomial, so any truncation works.
    """
    truncation = Q(truncation)
    if truncation <= 0:
        raise MirrorError("truncation must be positive")
    dual = dual_subdivision(diag, root_face=root_face, sign=sign)
    heights = face_heights(diag, base, dual)
    fmin = min(heights.values())
    corrections = corrections or CorrectionMap(())
    known = set(dual.lattice_points)
    for a in corrections.support():
        if a not in known:
            raise MirrorError(f"correction vertex {a} is not in the dual graph")
    terms = []
    for f, alpha in enumerate(dual.lattice_points):
        c = nov_truncate(corrections.get(alpha), truncation)
        coeff = nov_shift(heights[f] - fmin, nov_add(NOV_ONE, NovikovElement(c.terms)))
        terms.append((alpha, coeff))
    terms.sort(key=lambda item: _term_sort_key(item[0]))
    root = dual.lattice_points[dual.root_face]
    return Superpotential(diag.dim, tuple(terms), root, truncation)


@dataclass(frozen=True)
class MirrorPresentation:
    """Generators u_1^{+-1}..u_{n-1}^{+-1}, x, y with the single relation xy - g."""

    dim: int
    variables: tuple[str, ...]
    gradings: tuple[tuple[str, int], ...]
    relation: Superpotential

    @property
    def n(self) -> int:
        return self.dim + 1

    def grading(self, name: str) -> int:
        for k, v in self.gradings:
            if k == name:
                return v
        raise MirrorError(f"unknown generator {name}")


def _variables(dim: int) -> tuple[str, ...]:
    return ("u",) if dim == 1 else tuple(f"u{i + 1}" for i in range(dim))


def presentation(
    diag: TropicalDiagram,
    base: Optional[Sequence] = None,
    corrections: Optional[CorrectionMap] = None,
    truncation=DEFAULT_TRUNCATION,
    root_face: Optional[int] = None,
    sign: int = 1,
) -> MirrorPresentation:
    g = superpotential(diag, base, corrections, truncation, root_face, sign)
    variables = _variables(diag.dim)
    gradings = tuple((v, 0) for v in variables) + (("x", 1), ("y", -1))
    pres = MirrorPresentation(diag.dim, variables, gradings, g)
    assert pres.grading("x") + pres.grading("y") == 0  # |xy| = |g| = 0
    return pres


def winding_degree(pres: MirrorPresentation, word: Sequence[tuple[str, int]]) -> int:
    """Winding degree of a monomial word [(generator, exponent), ...]."""
    return sum(pres.grading(name) * e for name, e in word)


# --- normalization -----------------------------------------------------------


def _lower_hull_cells_1d(support: Sequence[Vec], vals: Sequence[Fraction]) -> list[tuple[int, ...]]:
    order = sorted(range(len(support)), key=lambda i: support[i][0])
    xs = [support[i][0] for i in order]
    ys = [vals[i] for i in order]
    # lower convex hull by monotone scan
    hull: list[int] = []
    for idx in range(len(order)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            lhs = (ys[b] - ys[a]) * (xs[idx] - xs[b])
            rhs = (ys[idx] - ys[b]) * (xs[b] - xs[a])
            if lhs >= rhs:
                hull.pop()
            else:
                break
        hull.append(idx)
    cells = []
    for a, b in zip(hull, hull[1:]):
        members = [
            order[t]
            for t in range(len(order))
            if xs[a] <= xs[t] <= xs[b]
            and (ys[t] - ys[a]) * (xs[b] - xs[a]) == (ys[b] - ys[a]) * (xs[t] - xs[a])
        ]
        cells.append(tuple(sorted(members)))
    return cells


def _lower_hull_cells_2d(support: Sequence[Vec], vals: Sequence[Fraction]) -> list[tuple[int, ...]]:
    from .charges import regular_subdivision

    sub = regular_subdivision(support, vals)
    return [c.indices for c in sub.cells]


def _affine_on_root_cell(support, vals, root_index, dim):
    """The affine function interpolating vals on the lex-least hull cell at the root."""
    cells = (
        _lower_hull_cells_1d(support, vals) if dim == 1 else _lower_hull_cells_2d(support, vals)
    )
    containing = [c for c in cells if root_index in c]
    if not containing:
        raise MirrorError("root vertex is not on the lower hull")
    cell = min(containing, key=lambda c: tuple(support[i] for i in c))
    if dim == 1:
        i, j = cell[0], cell[-1]
        x0, x1 = support[i][0], support[j][0]
        slope = (vals[j] - vals[i]) / (x1 - x0)
        return lambda a: vals[i] + slope * (a[0] - x0)
    i = cell[0]
    others = [t for t in cell[1:]]
    d1 = vsub(support[others[0]], support[i])
    d2 = None
    for t in others[1:]:
        cand = vsub(support[t], support[i])
        if d1[0] * cand[1] - d1[1] * cand[0] != 0:
            d2 = cand
            v2 = t
            break
    if d2 is None:
        raise MirrorError("root hull cell is degenerate")
    det = d1[0] * d2[1] - d1[1] * d2[0]
    r1 = vals[others[0]] - vals[i]
    r2 = vals[v2] - vals[i]
    sx = Q(r1 * d2[1] - r2 * d1[1], det)
    sy = Q(r2 * d1[0] - r1 * d2[0], det)
    c0 = vals[i] - (sx * support[i][0] + sy * support[i][1])
    return lambda a: sx * a[0] + sy * a[1] + c0


def normalize_presentation(pres: MirrorPresentation) -> MirrorPresentation:
    """Canonical form: root vertex at the origin, affine part of f absorbed.

    Shifting the support moves the root to 0; subtracting the affine function
    that interpolates the t-exponents on the hull cell at the root rescales
    the u_i and the overall power of t.  The result is idempotent and
    independent of the base point used to build the superpotential.
    """
    g = pres.relation
    shift = g.root
    support = [vsub(a, shift) for a, _ in g.terms]
    coeffs = [c for _, c in g.terms]
    vals = []
    for c in coeffs:
        v = nov_val(c)
        if v is None:
            raise MirrorError("superpotential coefficient vanished")
        vals.append(v)
    root_index = support.index(tuple(0 for _ in range(g.dim)))
    ell = _affine_on_root_cell(support, vals, root_index, g.dim)
    new_terms = []
    for alpha, c in zip(support, coeffs):
        delta = ell(alpha)
        new_terms.append((alpha, nov_shift(-delta, c)))
    for alpha, c in new_terms:
        v = nov_val(c)
        if v is None or v < 0:
            raise MirrorError("normalization produced a negative valuation")
    new_terms.sort(key=lambda item: _term_sort_key(item[0]))
    new_g = Superpotential(g.dim, tuple(new_terms), tuple(0 for _ in range(g.dim)), g.truncation)
    return replace(pres, relation=new_g)


# --- rendering ---------------------------------------------------------------


def _coeff_text(c: NovikovElement) -> Optional[str]:
    if len(c.terms) == 1:
        e, q = c.terms[0]
        if e == 0 and q == 1:
            return None
        if e == 0:
            return str(q)
        if q == 1:
            return f"t^{{{e}}}"
        return f"{q}*t^{{{e}}}"
    return "(" + nov_to_text(c) + ")"


def _monomial_text(alpha: Vec, variables: tuple[str, ...]) -> Optional[str]:
    parts = []
    for name, e in zip(variables, alpha):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else None


def superpotential_text(g: Superpotential) -> str:
    variables = _variables(g.dim)
    chunks = []
    for alpha, c in g.terms:
        cpart = _coeff_text(c)
        mpart = _monomial_text(alpha, variables)
        if cpart is None and mpart is None:
            chunks.append("1")
        elif cpart is None:
            chunks.append(mpart)
        elif mpart is None:
            chunks.append(cpart)
        else:
            chunks.append(f"{cpart}*{mpart}")
    return " + ".join(chunks)


def relation_text(pres: MirrorPresentation) -> str:
    return f"x*y - ({superpotential_text(pres.relation)})"


def presentation_to_json(pres: MirrorPresentation) -> dict:
    g = pres.relation
    gens = []
    for v in pres.variables:
        gens.extend([v, f"{v}^-1"])
    gens.extend(["x", "y"])
    return {
        "n": pres.n,
        "generators": gens,
        "gradings": {k: v for k, v in pres.gradings},
        "relation": relation_text(pres),
        "superpotential": [
            {"vertex": list(alpha), "coefficient": nov_to_json(c)} for alpha, c in g.terms
        ],
        "truncation": str(g.truncation),
        "root": list(g.root),
    }
