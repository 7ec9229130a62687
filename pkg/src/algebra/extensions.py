import logging
from typing import Dict, List, Optional
from src.algebra.algebra import BasisElement, FiniteDimAlgebra, add_into, same_structure
from src.algebra.filtration import IdealFiltration, loewy_lengths, radical_filtration, grading_filtration
from src.algebra.paths import QuiverAlgebra, compute_basis
from src.models.models import AlgebraPresentation, ArrowSpec

logger = logging.getLogger(__name__)


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def tilde_presentation(p: AlgebraPresentation) -> AlgebraPresentation:
    """Attach a sink vertex k~ and an arrow k -> k~ to every vertex k."""
    taken = set(p.vertices) | {a.name for a in p.arrows}
    tilde = {k: _fresh(f"{k}~", taken) for k in p.vertices}
    arrows = list(p.arrows)
    grading = dict(p.grading) if p.grading is not None else None
    for k in p.vertices:
        name = _fresh(f"t{k}", taken)
        arrows.append(ArrowSpec(name=name, source=k, target=tilde[k]))
        if grading is not None:
            grading[name] = 1
    return AlgebraPresentation(
        name=f"{p.name}~",
        field=p.field,
        vertices=list(p.vertices) + [tilde[k] for k in p.vertices],
        arrows=arrows,
        relations=p.relations,
        degree_cap=p.degree_cap + 1,
        grading=grading,
    )


class TildeExtension:
    def __init__(self, algebra: QuiverAlgebra, filtration: IdealFiltration, untilded: List[str], checks: Dict[str, bool]):
        self.algebra = algebra
        self.filtration = filtration
        self.untilded = untilded
        self.checks = checks

    @property
    def TILDED(self) -> List[str]:
        return [v for v in self.algebra.VERTICES if v not in self.untilded]

    @property
    def PASSED(self) -> bool:
        return all(self.checks.values())


def tilde_extension(a: QuiverAlgebra, kind: str = "radical") -> TildeExtension:
    """
    Build A~ and certify the relations it must keep with A: A is the corner at
    the untilded idempotents and the quotient by the tilded ones, rad A~ has
    nilpotency one more than rad A, and every untilded right projective has
    Loewy length below that nilpotency.
    """
    at = compute_basis(tilde_presentation(a.presentation))
    untilded = list(a.VERTICES)
    identity = {b.label: b.label for b in a.BASIS}
    corner, _ = at.full_subcategory(untilded)
    tilded_units = [{at.UNITS[v]: at.FIELD.one} for v in at.VERTICES if v not in untilded]
    quotient, _ = at.quotient(at.ideal_closure(tilded_units))
    f = grading_filtration(at) if kind == "grading" else radical_filtration(at)
    radical = radical_filtration(at) if kind == "grading" else f
    loewy = loewy_lengths(at, radical)
    checks = {
        "centralizer": same_structure(a, corner, identity),
        "idempotent_quotient": same_structure(a, quotient, identity),
        "nilpotency": at.MAX_LENGTH == a.MAX_LENGTH + 1,
        "right_loewy_below_nilpotency": all(loewy[k][1] < radical.N for k in untilded),
    }
    logger.info("tilde extension %s: dim %d, checks %s", at.name, at.DIM, checks)
    return TildeExtension(at, f, untilded, checks)


def dual_element(b: BasisElement, idx: int, N: Optional[int]) -> BasisElement:
    origin = ("D",) + tuple(b.origin[1:]) if b.origin else ("D", idx)
    grade = N - 1 - b.grade if N is not None else 0
    return BasisElement(f"{b.label}*", b.target, b.source, b.level, grade, origin)


def dual_tables(alg: FiniteDimAlgebra) -> Dict[tuple, dict]:
    """
    Bimodule structure of the linear dual, with dual basis elements numbered
    after the basis of alg: (a f b)(c) = f(b c a).
    """
    n = alg.DIM
    zero = alg.FIELD.zero
    table: Dict[tuple, dict] = {}
    for (u, v), w in alg.TABLE.items():
        for c, coeff in w.items():
            add_into(table.setdefault((v, n + c), {}), {n + u: coeff}, alg.FIELD.one, zero)
            add_into(table.setdefault((n + c, u), {}), {n + v: coeff}, alg.FIELD.one, zero)
    return {key: value for key, value in table.items() if value}


def trivial_extension(alg: FiniteDimAlgebra, N: Optional[int] = None, name: str = "") -> FiniteDimAlgebra:
    """A + A* with (a, f)(b, g) = (ab, a g + f b); the dual is a square-zero ideal."""
    basis = list(alg.BASIS) + [dual_element(b, idx, N) for idx, b in enumerate(alg.BASIS)]
    table = dict(alg.TABLE)
    table.update(dual_tables(alg))
    return FiniteDimAlgebra(alg.FIELD, alg.OBJECTS, basis, table, alg.UNITS, name or f"T({alg.name})")


def canonical_functional(te: FiniteDimAlgebra, base_dim: int) -> Dict[int, object]:
    """lambda(a, f) = sum of f(e_x) over the objects."""
    return {base_dim + idx: te.FIELD.one for idx in te.UNITS.values()}


def graded_components(te: FiniteDimAlgebra) -> Dict[int, List[str]]:
    components: Dict[int, List[str]] = {}
    for b in te.BASIS:
        components.setdefault(b.grade, []).append(b.label)
    return dict(sorted(components.items()))


def graded_report(te: FiniteDimAlgebra) -> Dict[str, object]:
    """Graded components of a trivial extension with the dual regraded by N - 1 - i."""
    components = graded_components(te)
    degree_zero = [idx for idx, b in enumerate(te.BASIS) if b.grade == 0]
    return {
        "components": {str(g): labels for g, labels in components.items()},
        "negative_vanish": all(g >= 0 for g in components),
        "degree_zero_semisimple": all(te.is_unit(idx) for idx in degree_zero),
    }
