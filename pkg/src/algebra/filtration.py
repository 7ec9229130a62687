import logging
from typing import Dict, List, Tuple
from src.algebra.algebra import BasisElement, FiniteDimAlgebra, Vector
from src.algebra.paths import QuiverAlgebra
from src.linalg.matrix import EchelonBasis, Mat, inverse, kernel_basis
from src.models.m_errors import AlgebraErrors, FiltrationErrors
from src.models.base_errors import (
    FiltrationError,
    LayerNotSemisimple,
    NonAdmissibleRelations,
    NonSplitSimple,
    NotAnIdeal,
    NotGraded,
    NotMultiplicative,
)

logger = logging.getLogger(__name__)


class IdealFiltration:
    """
    Filtration A = I_0 > I_1 > ... > I_N = 0 carried by an adapted basis.

    I_j is spanned by the basis elements of level >= j. The algebra held here
    may be a rebased copy of the input algebra when the layers were supplied
    as arbitrary subspaces.
    """

    def __init__(self, algebra: FiniteDimAlgebra, levels: List[int], N: int, kind: str, expressions: List[Vector] = None):
        self._algebra = algebra
        self._levels = list(levels)
        self._N = N
        self._kind = kind
        self._expressions = expressions

    @property
    def ALGEBRA(self) -> FiniteDimAlgebra:
        return self._algebra

    @property
    def LEVELS(self) -> List[int]:
        return self._levels

    @property
    def N(self) -> int:
        return self._N

    @property
    def KIND(self) -> str:
        return self._kind

    def level(self, idx: int) -> int:
        return self._levels[idx]

    def layer(self, j: int) -> List[int]:
        return [idx for idx, lv in enumerate(self._levels) if lv >= j]

    def dims(self) -> List[int]:
        return [len(self.layer(j)) for j in range(self._N + 1)]

    def pull_back(self, functional: Vector) -> Vector:
        """Functional on the input basis expressed on the adapted basis."""
        if self._expressions is None:
            return dict(functional)
        zero = self._algebra.FIELD.zero
        out = {}
        for k, vec in enumerate(self._expressions):
            value = zero
            for idx, c in vec.items():
                value += c * functional.get(idx, zero)
            if value != zero:
                out[k] = value
        return out


def check_levels(algebra: FiniteDimAlgebra, levels: List[int], N: int) -> None:
    """Multiplicativity of the level filtration, classified by the offending factors."""
    for u, v in algebra.composable_pairs():
        product = algebra.multiply(u, v)
        if not product:
            continue
        lu, lv = levels[u], levels[v]
        required = lu + lv
        if required < N and min(levels[w] for w in product) >= required:
            continue
        required = min(required, N)
        if lu == 0 or lv == 0:
            index, side = max(lu, lv), "left" if lu == 0 else "right"
            raise NotAnIdeal(FiltrationErrors.NOT_AN_IDEAL.value.format(index=index, side=side), index, side)
        if lu == 1 or lv == 1:
            index, side = (lv, "left") if lu == 1 else (lu, "right")
            raise LayerNotSemisimple(
                FiltrationErrors.LAYER_NOT_SEMISIMPLE.value.format(index=index, side=side), index, side
            )
        raise NotMultiplicative(
            FiltrationErrors.NOT_MULTIPLICATIVE.value.format(i=lu, j=lv, target=required), lu
        )


def check_split(algebra: FiniteDimAlgebra, levels: List[int]) -> None:
    top = [idx for idx, lv in enumerate(levels) if lv == 0]
    units = set(algebra.UNITS.values())
    if len(top) != len(algebra.OBJECTS) or not units.issubset(top):
        raise NonSplitSimple(
            AlgebraErrors.NON_SPLIT.value.format(dim=len(top), vertices=len(algebra.OBJECTS))
        )


def radical_filtration(a: QuiverAlgebra) -> IdealFiltration:
    for index, relation in enumerate(a.relations):
        length = len(relation[0][1])
        if length < 2:
            raise NonAdmissibleRelations(AlgebraErrors.NON_ADMISSIBLE.value.format(index=index, length=length))
    levels = [b.level for b in a.BASIS]
    N = max(levels) + 1
    check_levels(a, levels, N)
    check_split(a, levels)
    logger.info("radical filtration of %s: N = %d", a.name, N)
    return IdealFiltration(a, levels, N, "radical")


def grading_filtration(a: QuiverAlgebra) -> IdealFiltration:
    degrees = {arrow.name: a.presentation.arrow_degree(arrow.name) for arrow in a.presentation.arrows}
    low = [name for name, d in degrees.items() if d < 1]
    if low:
        raise NotGraded(FiltrationErrors.NOT_GRADED.value.format(reason=f"arrows {low} have degree < 1"))
    for index, relation in enumerate(a.relations):
        grades = {sum(degrees[x] for x in path) for _, path in relation}
        if len(grades) > 1:
            raise NotGraded(FiltrationErrors.NOT_GRADED.value.format(reason=f"relation {index} mixes degrees"))
    levels = [b.grade for b in a.BASIS]
    N = max(levels) + 1
    check_levels(a, levels, N)
    check_split(a, levels)
    return IdealFiltration(a, levels, N, "grading")


def _dense(a: FiniteDimAlgebra, vec: Vector) -> list:
    out = [a.FIELD.zero] * a.DIM
    for idx, c in vec.items():
        out[idx] = c
    return out


def validate_filtration(a: FiniteDimAlgebra, layers: List[List[Vector]]) -> IdealFiltration:
    """
    Validate an explicit filtration and rebase the algebra onto an adapted basis.

    Parameters:
        a (FiniteDimAlgebra): the algebra.
        layers (list): spanning vectors of I_0 = A, I_1, ..., I_N = 0.

    Returns:
        IdealFiltration: filtration over the rebased algebra.

    Raises:
        FiltrationError, NotAnIdeal, NotMultiplicative, LayerNotSemisimple, NonSplitSimple
    """
    field = a.FIELD
    spans = [EchelonBasis(field, a.DIM).extend(_dense(a, v) for v in layer) for layer in layers]
    N = len(spans) - 1
    if N < 1 or spans[0].rank != a.DIM or spans[-1].rank != 0:
        raise FiltrationError(FiltrationErrors.NOT_DESCENDING.value.format(index=0), 0)
    for j in range(1, N + 1):
        if spans[j].rank >= spans[j - 1].rank or not all(spans[j - 1].contains(r) for r in spans[j].rows):
            raise FiltrationError(FiltrationErrors.NOT_DESCENDING.value.format(index=j), j)
    for j in range(1, N):
        for row in spans[j].rows:
            vec = {k: c for k, c in enumerate(row) if c != field.zero}
            for b in range(a.DIM):
                for side, product in (
                    ("left", a.product({b: field.one}, vec)),
                    ("right", a.product(vec, {b: field.one})),
                ):
                    if not spans[j].contains(_dense(a, product)):
                        raise NotAnIdeal(FiltrationErrors.NOT_AN_IDEAL.value.format(index=j, side=side), j, side)
    rebased, levels, vectors = _adapted(a, spans)
    check_levels(rebased, levels, N)
    check_split(rebased, levels)
    return IdealFiltration(rebased, levels, N, "file", vectors)


def _adapted(a: FiniteDimAlgebra, spans: List[EchelonBasis]) -> Tuple[FiniteDimAlgebra, List[int], List[Vector]]:
    """Basis adapted to every layer, built deepest layer first inside each hom block."""
    field = a.FIELD
    N = len(spans) - 1
    basis: List[BasisElement] = []
    levels: List[int] = []
    vectors: List[Vector] = []
    change: Dict[tuple, Tuple[List[int], Mat]] = {}
    for x, y in a.blocks():
        block = a.hom(x, y)
        units = [idx for idx in block if a.is_unit(idx)]
        current = EchelonBasis(field, len(block))
        chosen: List[Tuple[list, int]] = []
        for j in range(N - 1, -1, -1):
            if j == 0:
                order = units + [idx for idx in block if idx not in units]
                candidates = []
                for idx in order:
                    unit = [field.zero] * len(block)
                    unit[a.position(idx)] = field.one
                    candidates.append(unit)
            else:
                candidates = [[row[idx] for idx in block] for row in spans[j].rows]
            for vec in candidates:
                if current.add(vec):
                    chosen.append((vec, j))
        new_indices = []
        for vec, j in chosen:
            new_indices.append(len(basis))
            terms = [(idx, c) for idx, c in zip(block, vec) if c != field.zero]
            if len(terms) == 1 and terms[0][1] == field.one:
                label = a.BASIS[terms[0][0]].label
            else:
                label = "+".join(f"{field.render(c)}*{a.BASIS[idx].label}" for idx, c in terms)
            basis.append(BasisElement(label, x, y, j, j))
            levels.append(j)
            vectors.append(dict(terms))
        T = Mat.from_rows(field, [vec for vec, _ in chosen], len(block))
        change[(x, y)] = (new_indices, inverse(T.T))
    table = {}
    for v, bv in enumerate(basis):
        for u in range(len(basis)):
            if basis[u].source != bv.target:
                continue
            product = a.product(vectors[u], vectors[v])
            if not product:
                continue
            key = (bv.source, basis[u].target)
            new_indices, conv = change[key]
            coords = conv.apply(a.local(product, *key))
            image = {new_indices[k]: c for k, c in enumerate(coords) if c != field.zero}
            if image:
                table[(u, v)] = image
    units = {}
    for obj, idx in a.UNITS.items():
        units[obj] = next(k for k, vec in enumerate(vectors) if vec == {idx: field.one})
    rebased = FiniteDimAlgebra(field, a.OBJECTS, basis, table, units, a.name)
    return rebased, levels, vectors


def layer_vectors_from_labels(a: FiniteDimAlgebra, layers: List[List[Dict[str, str]]]) -> List[List[Vector]]:
    """Parse file layers I_1 .. I_{N-1} given as label -> scalar maps, adding A and 0."""
    field = a.FIELD
    parsed = [[{idx: field.one} for idx in range(a.DIM)]]
    for layer in layers:
        vectors = []
        for entry in layer:
            vec = {}
            for label, text in entry.items():
                value = field.parse(text)
                if value != field.zero:
                    vec[a.index(label)] = value
            vectors.append(vec)
        parsed.append(vectors)
    parsed.append([])
    return parsed


def _power_spans(a: FiniteDimAlgebra, f: IdealFiltration) -> List[EchelonBasis]:
    """rad^m = I_1^m for m = 0, 1, ... until zero, as spans in A."""
    field = a.FIELD
    radical = [{idx: field.one} for idx in f.layer(1)]
    powers = [EchelonBasis(field, a.DIM).extend(_dense(a, {i: field.one}) for i in range(a.DIM))]
    current = radical
    while True:
        span = EchelonBasis(field, a.DIM).extend(_dense(a, v) for v in current)
        if span.rank == 0:
            powers.append(span)
            return powers
        powers.append(span)
        rows = [{k: c for k, c in enumerate(r) if c != field.zero} for r in span.rows]
        current = [a.product(r, v) for r in radical for v in rows]
        current = [v for v in current if v]


def loewy_lengths(a: FiniteDimAlgebra, f: IdealFiltration) -> Dict[str, Tuple[int, int]]:
    """Loewy lengths (left projective A e_k, right projective e_k A) by iterated radicals."""
    field = a.FIELD
    radical = [{idx: field.one} for idx in f.layer(1)]
    out = {}
    for obj in a.OBJECTS:
        lengths = []
        for left in (True, False):
            current = [{a.UNITS[obj]: field.one}]
            length = 0
            while current:
                length += 1
                span = EchelonBasis(field, a.DIM).extend(_dense(a, v) for v in current)
                rows = [{k: c for k, c in enumerate(r) if c != field.zero} for r in span.rows]
                products = [a.product(r, v) if left else a.product(v, r) for r in radical for v in rows]
                current = [v for v in products if v]
            lengths.append(length)
        out[str(obj)] = (lengths[0], lengths[1])
    return out


def socle_filtration(a: FiniteDimAlgebra, f: IdealFiltration) -> List[EchelonBasis]:
    """soc^m = {v : I_1^m v = 0} of the left regular module, for m = 0 .. Loewy length."""
    field = a.FIELD
    powers = _power_spans(a, f)
    chain = []
    for m in range(len(powers)):
        rows = []
        for r in powers[m].rows:
            vec = {k: c for k, c in enumerate(r) if c != field.zero}
            images = [a.product(vec, {b: field.one}) for b in range(a.DIM)]
            for w in range(a.DIM):
                rows.append([img.get(w, field.zero) for img in images])
        if not rows:
            chain.append(EchelonBasis(field, a.DIM).extend(_dense(a, {i: field.one}) for i in range(a.DIM)))
            continue
        chain.append(EchelonBasis(field, a.DIM).extend(kernel_basis(Mat.from_rows(field, rows, a.DIM))))
    return chain


def radical_chain(a: FiniteDimAlgebra, f: IdealFiltration) -> List[EchelonBasis]:
    return _power_spans(a, f)


def is_rigid(a: FiniteDimAlgebra, f: IdealFiltration) -> bool:
    radical = radical_chain(a, f)
    socle = socle_filtration(a, f)
    L = len(radical) - 1
    return all(socle[m].same_span(radical[L - m]) for m in range(L + 1))
