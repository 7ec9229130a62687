import logging
from typing import Dict, Hashable, List, Tuple
from src.algebra.algebra import FiniteDimAlgebra
from src.envelope.category import WindowedCategory
from src.linalg.matrix import EchelonBasis, Mat, kernel_basis
from src.models.models import GoldenArrow, GoldenPresentation

logger = logging.getLogger(__name__)


class QuiverPresentation:
    """Generators of a finite category and the quadratic relations among them, block by block."""

    def __init__(self, algebra: FiniteDimAlgebra, generators: List[int], relations: Dict[tuple, Mat], paths: Dict[tuple, list]):
        self.algebra = algebra
        self.generators = generators
        self.relations = relations
        self.paths = paths

    def rendered_relations(self) -> List[dict]:
        """Relations as coefficient and traversal-ordered label pairs."""
        field = self.algebra.FIELD
        out = []
        for (x, z), span in self.relations.items():
            paths = self.paths[(x, z)]
            for row in span.data:
                terms = []
                for coeff, (first, second) in zip(row, paths):
                    if coeff != field.zero:
                        terms.append(
                            [field.render(coeff), [self.algebra.BASIS[first].label, self.algebra.BASIS[second].label]]
                        )
                out.append({"source": x, "target": z, "terms": terms})
        return out


def quiver_presentation(a: FiniteDimAlgebra, objects: List[Hashable] = None) -> QuiverPresentation:
    """
    Generators are a basis complement of rad^2 in rad. For each pair of
    objects, the quadratic relations form the kernel of evaluating formal
    combinations of length-two generator paths, normalized to reduced row
    echelon form. Paths are written in traversal order (first, second).
    """
    field = a.FIELD
    allowed = set(objects) if objects is not None else set(a.OBJECTS)
    generators = [g for g in a.generators() if a.BASIS[g].source in allowed and a.BASIS[g].target in allowed]
    outgoing: Dict[Hashable, List[int]] = {}
    for g in generators:
        outgoing.setdefault(a.BASIS[g].source, []).append(g)
    paths: Dict[tuple, list] = {}
    for first in generators:
        for second in outgoing.get(a.BASIS[first].target, []):
            key = (a.BASIS[first].source, a.BASIS[second].target)
            paths.setdefault(key, []).append((first, second))
    relations: Dict[tuple, Mat] = {}
    for (x, z), pair_list in paths.items():
        block = a.hom(x, z)
        columns = [a.local(a.multiply(second, first), x, z) for first, second in pair_list]
        evaluation = Mat.from_columns(field, columns, len(block))
        kernel = kernel_basis(evaluation)
        if kernel:
            relations[(x, z)] = EchelonBasis(field, len(pair_list)).extend(kernel).canonical()
    logger.debug("presentation of %s: %d generators, %d relation blocks", a.name, len(generators), len(relations))
    return QuiverPresentation(a, generators, relations, paths)


def _anchor(obj_a: tuple, obj_b: tuple) -> int:
    return min(obj_a[1], obj_b[1])


def _endpoint(golden: GoldenPresentation, end: Tuple[str, int], s: int) -> tuple:
    return golden.vertices[end[0]], s + end[1]


def _element_label(golden: GoldenPresentation, arrow: GoldenArrow, s: int) -> str:
    return f"{arrow.element}[{s + arrow.source[1]}>{s + arrow.target[1]}]"


def compare_golden(c: WindowedCategory, d: WindowedCategory, golden: GoldenPresentation) -> Dict[str, object]:
    """
    Compare the presentations of C and D with a golden quiver at every interior
    anchor level s. Solid arrows and relations are compared as sets over the
    blocks anchored at interior levels. A dotted arrow names the C element it
    dualizes; the dotted arrows must exist in D with reversed endpoints, have
    vanishing pairwise products and generate the dual part as an ideal.
    """
    field = c.FIELD
    presentation = quiver_presentation(c)
    interior = set(c.window.interior_levels())
    mismatches: List[str] = []

    expected = set()
    for s in sorted(interior):
        for name, arrow in golden.generators.items():
            label = _element_label(golden, arrow, s)
            expected.add(label)
            if not c.has_label(label):
                mismatches.append(f"generator {name}@{s} ({label}) missing")
                continue
            b = c.BASIS[c.index(label)]
            if b.source != _endpoint(golden, arrow.source, s) or b.target != _endpoint(golden, arrow.target, s):
                mismatches.append(f"generator {name}@{s} has endpoints {b.source} -> {b.target}")
    actual = {
        c.BASIS[g].label
        for g in presentation.generators
        if _anchor(c.BASIS[g].source, c.BASIS[g].target) in interior
    }
    generators_match = expected == actual
    if not generators_match:
        mismatches.append(f"generator sets differ: {sorted(actual ^ expected)}")

    golden_spans: Dict[tuple, EchelonBasis] = {}
    relations_match = True
    for s in sorted(interior):
        for relation in golden.relations:
            vec, block = _relation_vector(c, golden, presentation, relation, s)
            if vec is None:
                relations_match = False
                mismatches.append(f"relation at {s} uses paths outside the presentation")
                continue
            golden_spans.setdefault(block, EchelonBasis(field, len(vec))).add(vec)
    for block, span in presentation.relations.items():
        if _anchor(*block) not in interior:
            continue
        mine = EchelonBasis(field, span.cols).extend(span.data)
        theirs = golden_spans.get(block, EchelonBasis(field, span.cols))
        if not mine.same_span(theirs):
            relations_match = False
            mismatches.append(f"relations differ on block {block}")
    for block in golden_spans:
        if block not in presentation.relations:
            relations_match = False
            mismatches.append(f"golden relation on block {block} has no counterpart")

    dotted, dotted_ok = _dotted_arrows(c, d, golden, mismatches)
    products_vanish = all(not d.multiply(u, v) for u in dotted for v in dotted)
    generate = _dual_generated(d, dotted)
    if not products_vanish:
        mismatches.append("a product of two dotted arrows is nonzero")
    if not generate:
        mismatches.append("dotted arrows do not generate the dual part")
    result = {
        "anchors": sorted(interior),
        "generators": generators_match,
        "relations": relations_match,
        "relation_blocks": presentation.rendered_relations(),
        "dotted": dotted_ok,
        "dotted_products_vanish": products_vanish,
        "dotted_generate_dual": generate,
        "mismatches": mismatches,
    }
    logger.info("golden %s: %d mismatches", golden.name, len(mismatches))
    return result


def _relation_vector(c, golden, presentation, relation, s):
    field = c.FIELD
    vec = None
    block = None
    for term in relation:
        labels = []
        for name, offset in term.path:
            labels.append(_element_label(golden, golden.generators[name], s + offset))
        if len(labels) != 2 or not all(c.has_label(label) for label in labels):
            return None, None
        first, second = c.index(labels[0]), c.index(labels[1])
        key = (c.BASIS[first].source, c.BASIS[second].target)
        paths = presentation.paths.get(key, [])
        if (first, second) not in paths or (block is not None and key != block):
            return None, None
        block = key
        if vec is None:
            vec = [field.zero] * len(paths)
        vec[paths.index((first, second))] += field.parse(term.coeff)
    return vec, block


def _dotted_arrows(c, d, golden, mismatches) -> Tuple[List[int], bool]:
    interior = set(c.window.interior_levels())
    ok = True
    dotted = []
    for s in c.window.levels:
        for name, arrow in golden.dotted.items():
            label = f"{_element_label(golden, arrow, s)}*"
            if not d.has_label(label):
                if s in interior:
                    ok = False
                    mismatches.append(f"dotted arrow {name}@{s} ({label}) missing")
                continue
            idx = d.index(label)
            dotted.append(idx)
            b = d.BASIS[idx]
            if s in interior and (
                b.source != _endpoint(golden, arrow.target, s) or b.target != _endpoint(golden, arrow.source, s)
            ):
                ok = False
                mismatches.append(f"dotted arrow {name}@{s} has endpoints {b.source} -> {b.target}")
    return dotted, ok


def _dual_generated(d: WindowedCategory, dotted: List[int]) -> bool:
    """Every dual element between interior objects lies in the ideal generated by the dotted arrows."""
    one = d.FIELD.one
    spans = d.ideal_closure([{idx: one} for idx in dotted])
    interior = d.window.interior
    for idx, b in enumerate(d.BASIS):
        if b.origin[0] != "D" or not (interior(b.source[1]) and interior(b.target[1])):
            continue
        span = spans.get((b.source, b.target))
        unit = d.local({idx: one}, b.source, b.target)
        if span is None or not span.contains(unit):
            return False
    return True
