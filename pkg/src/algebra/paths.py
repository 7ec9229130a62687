import logging
from collections import defaultdict
from typing import Dict, List, Tuple
from src.algebra.algebra import BasisElement, FiniteDimAlgebra, Vector
from src.linalg.field import Field
from src.linalg.matrix import EchelonBasis
from src.models.models import AlgebraPresentation
from src.models.m_errors import AlgebraErrors
from src.models.base_errors import (
    DimensionNotStabilized,
    NonHomogeneousRelations,
    PresentationError,
)

logger = logging.getLogger(__name__)

Path = Tuple[str, ...]


class QuiverAlgebra(FiniteDimAlgebra):
    """Quotient of a path algebra by homogeneous relations, on a basis of paths."""

    def __init__(self, presentation: AlgebraPresentation, field: Field, basis, table, units, paths, relations):
        super().__init__(field, presentation.vertices, basis, table, units, presentation.name)
        self.presentation = presentation
        self.paths: List[Path] = paths
        self.relations: List[List[Tuple[object, Path]]] = relations
        self.arrows = {a.name: a for a in presentation.arrows}

    @property
    def VERTICES(self) -> List[str]:
        return self.presentation.vertices

    @property
    def MAX_LENGTH(self) -> int:
        return max(len(p) for p in self.paths)

    def functional(self, coefficients: Dict[str, str]) -> Vector:
        """Linear functional given by coefficients on basis labels."""
        out = {}
        for label, text in coefficients.items():
            value = self.FIELD.parse(text)
            if value != self.FIELD.zero:
                out[self.index(label)] = value
        return out


def path_label(path: Path, vertex: str) -> str:
    return ".".join(path) if path else f"e{vertex}"


def _parse_relations(p: AlgebraPresentation, field: Field) -> List[List[Tuple[object, Path]]]:
    vertices = set()
    for v in p.vertices:
        if v in vertices:
            raise PresentationError(AlgebraErrors.DUPLICATE_NAME.value.format(name=v))
        vertices.add(v)
    arrows = {}
    for a in p.arrows:
        if a.name in arrows:
            raise PresentationError(AlgebraErrors.DUPLICATE_NAME.value.format(name=a.name))
        for end in (a.source, a.target):
            if end not in vertices:
                raise PresentationError(AlgebraErrors.UNKNOWN_VERTEX.value.format(arrow=a.name, vertex=end))
        arrows[a.name] = a
    parsed = []
    for index, relation in enumerate(p.relations):
        terms = []
        ends = set()
        lengths = []
        for term in relation:
            if not term.path:
                raise PresentationError(AlgebraErrors.EMPTY_PATH.value)
            for name in term.path:
                if name not in arrows:
                    raise PresentationError(AlgebraErrors.UNKNOWN_ARROW.value.format(arrow=name))
            for first, second in zip(term.path, term.path[1:]):
                if arrows[first].target != arrows[second].source:
                    raise PresentationError(AlgebraErrors.NOT_A_PATH.value.format(path=term.path))
            ends.add((arrows[term.path[0]].source, arrows[term.path[-1]].target))
            lengths.append(len(term.path))
            terms.append((field.parse(term.coeff), tuple(term.path)))
        if len(ends) > 1:
            raise PresentationError(AlgebraErrors.NOT_PARALLEL.value.format(index=index))
        if len(set(lengths)) > 1:
            raise NonHomogeneousRelations(
                AlgebraErrors.NON_HOMOGENEOUS.value.format(index=index, lengths=sorted(set(lengths)))
            )
        if terms:
            parsed.append(terms)
    return parsed


def compute_basis(p: AlgebraPresentation) -> QuiverAlgebra:
    """
    Basis of the bound path algebra by length-graded linear reduction.

    Degree d of the relation ideal is spanned by the relations of length d
    and by degree d - 1 of the ideal padded with one arrow on either side.
    Paths of a block are ordered by decreasing arrow key, so each pivot is
    the largest path of its relation and the surviving paths form the basis.

    Raises:
        DimensionNotStabilized: when basis paths still appear at degree_cap.
    """
    field = Field(p.field)
    relations = _parse_relations(p, field)
    arrows = {a.name: a for a in p.arrows}
    arrow_rank = {a.name: k for k, a in enumerate(p.arrows)}

    def key(path: Path):
        return tuple(arrow_rank[a] for a in path)

    def ends(path: Path):
        return arrows[path[0]].source, arrows[path[-1]].target

    # degree d data: block -> ordered path list, block -> ideal span
    blocks_prev: Dict[tuple, List[Path]] = {}
    ideal_prev: Dict[tuple, EchelonBasis] = {}
    normal_forms: Dict[Path, Dict[Path, object]] = {}
    surviving: List[Path] = []
    degree = 0
    frontier: List[Path] = [()]
    while True:
        degree += 1
        if degree == 1:
            candidates = [(a.name,) for a in p.arrows]
        else:
            candidates = [
                path + (a.name,)
                for path in frontier
                for a in p.arrows
                if a.source == arrows[path[-1]].target
            ]
        if not candidates:
            break
        blocks: Dict[tuple, List[Path]] = defaultdict(list)
        for path in candidates:
            blocks[ends(path)].append(path)
        for block in blocks.values():
            block.sort(key=key, reverse=True)
        columns = {b: {path: k for k, path in enumerate(paths)} for b, paths in blocks.items()}
        ideal = {b: EchelonBasis(field, len(paths)) for b, paths in blocks.items()}

        def push(vec: Dict[Path, object]):
            if not vec:
                return
            b = ends(next(iter(vec)))
            dense = [field.zero] * len(blocks[b])
            for path, c in vec.items():
                dense[columns[b][path]] += c
            ideal[b].add(dense)

        for relation in relations:
            if len(relation[0][1]) == degree:
                vec: Dict[Path, object] = {}
                for c, path in relation:
                    vec[path] = vec.get(path, field.zero) + c
                push(vec)
        for b, span in ideal_prev.items():
            paths = blocks_prev[b]
            for row in span.rows:
                vec = {paths[k]: c for k, c in enumerate(row) if c != field.zero}
                for a in p.arrows:
                    if a.source == b[1]:
                        push({path + (a.name,): c for path, c in vec.items()})
                    if a.target == b[0]:
                        push({(a.name,) + path: c for path, c in vec.items()})

        new_basis = []
        for b, paths in blocks.items():
            canonical = ideal[b].canonical()
            pivots = {}
            for r, row in enumerate(canonical.data):
                lead = next(k for k, c in enumerate(row) if c != field.zero)
                pivots[lead] = r
            for k, path in enumerate(paths):
                if k not in pivots:
                    new_basis.append(path)
                    normal_forms[path] = {path: field.one}
            for k, r in pivots.items():
                row = canonical.data[r]
                normal_forms[paths[k]] = {
                    paths[j]: -c for j, c in enumerate(row) if c != field.zero and j != k
                }
        logger.debug("degree %d: %d paths, %d survive", degree, len(candidates), len(new_basis))
        if not new_basis:
            break
        if degree >= p.degree_cap:
            raise DimensionNotStabilized(AlgebraErrors.NOT_STABILIZED.value.format(cap=p.degree_cap))
        surviving.extend(sorted(new_basis, key=lambda path: (len(path), key(path))))
        blocks_prev, ideal_prev, frontier = dict(blocks), ideal, candidates

    paths: List[Path] = []
    basis: List[BasisElement] = []
    units = {}
    for v in p.vertices:
        units[v] = len(basis)
        paths.append(())
        basis.append(BasisElement(f"e{v}", v, v, 0, 0))
    for path in surviving:
        source, target = ends(path)
        grade = sum(p.arrow_degree(a) for a in path)
        paths.append(path)
        basis.append(BasisElement(path_label(path, source), source, target, len(path), grade))
    index = {path: k for k, path in enumerate(paths) if path}

    table = {}
    for v, bv in enumerate(basis):
        for u, bu in enumerate(basis):
            if bu.source != bv.target:
                continue
            if not paths[u]:
                table[(u, v)] = {v: field.one}
            elif not paths[v]:
                table[(u, v)] = {u: field.one}
            else:
                nf = normal_forms.get(paths[v] + paths[u])
                if nf:
                    table[(u, v)] = {index[q]: c for q, c in nf.items()}
    logger.info("computed basis of %s: dim %d", p.name or "algebra", len(basis))
    return QuiverAlgebra(p, field, basis, table, units, paths, relations)
