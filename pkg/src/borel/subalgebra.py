import logging
from typing import Dict, List
from src.algebra.algebra import FiniteDimAlgebra
from src.algebra.filtration import grading_filtration
from src.algebra.paths import QuiverAlgebra
from src.envelope.category import WindowedCategory
from src.linalg.matrix import Mat
from src.models.m_errors import BorelErrors, FiltrationErrors
from src.models.base_errors import FiltrationMismatch, SplittingNotClosed
from src.qh.order import Order

logger = logging.getLogger(__name__)


class SubalgebraEmbedding:
    """
    Subalgebra of a windowed category spanned by ambient basis elements.

    The subalgebra keeps the labels and origins of the ambient elements;
    kept maps an ambient index to its index in the subalgebra. direction is
    "ascending" when non-unit maps raise the level and "descending" when they
    lower it.
    """

    def __init__(self, ambient: WindowedCategory, indices: List[int], name: str, direction: str):
        self.ambient = ambient
        self.indices = sorted(indices)
        self.name = name
        self.direction = direction
        self.kept: Dict[int, int] = {idx: k for k, idx in enumerate(self.indices)}
        self.check_closed()
        basis = [ambient.BASIS[idx] for idx in self.indices]
        table = {}
        for u in self.indices:
            for v in self.indices:
                w = ambient.multiply(u, v)
                if w:
                    table[(self.kept[u], self.kept[v])] = {self.kept[k]: c for k, c in w.items()}
        units = {obj: self.kept[idx] for obj, idx in ambient.UNITS.items()}
        self.sub = WindowedCategory(
            ambient.FIELD,
            ambient.OBJECTS,
            basis,
            table,
            units,
            name,
            ambient.window,
            ambient.base,
            ambient.filtration,
            ambient.kind,
            ambient.untilded,
        )

    def check_closed(self) -> None:
        """
        Raises:
            SplittingNotClosed: with the first product leaving the span.
        """
        members = set(self.indices)
        for v in self.indices:
            for u in self.ambient.out_of(self.ambient.BASIS[v].target):
                if u not in members:
                    continue
                if any(w not in members for w in self.ambient.multiply(u, v)):
                    labels = self.ambient.BASIS[u].label, self.ambient.BASIS[v].label
                    raise SplittingNotClosed(
                        BorelErrors.NOT_CLOSED.value.format(name=self.name, u=labels[0], v=labels[1]),
                        {"pair": list(labels)},
                    )

    def non_units(self) -> List[int]:
        return [idx for idx in self.indices if not self.ambient.is_unit(idx)]

    def inclusions(self) -> Dict[tuple, Mat]:
        """Per hom block, the matrix embedding the subalgebra block into the ambient block."""
        field = self.ambient.FIELD
        out = {}
        for x, y in self.sub.blocks():
            block = self.ambient.hom(x, y)
            columns = []
            for k in self.sub.hom(x, y):
                column = [field.zero] * len(block)
                column[self.ambient.position(self.indices[k])] = field.one
                columns.append(column)
            out[(x, y)] = Mat.from_columns(field, columns, len(block))
        return out

    def dims(self) -> Dict[int, int]:
        """Hom dimensions of the subalgebra by level offset j - i."""
        counts: Dict[int, int] = {}
        for idx in self.indices:
            b = self.ambient.BASIS[idx]
            offset = b.target[1] - b.source[1]
            counts[offset] = counts.get(offset, 0) + 1
        return dict(sorted(counts.items()))

    def describe(self) -> dict:
        return {"name": self.name, "dim": len(self.indices), "direction": self.direction, "offsets": self.dims()}


def build_tildeB(c: WindowedCategory) -> SubalgebraEmbedding:
    """Idempotents of A in every slot i -> j with 0 <= i - j < N: N copies of S = A/I_1 per row."""
    units = set(c.base.UNITS.values())
    indices = []
    for idx, b in enumerate(c.BASIS):
        kind, w, i, j = b.origin
        if kind == "C" and w in units and 0 <= i - j < c.N:
            indices.append(idx)
    return SubalgebraEmbedding(c, indices, f"tildeB({c.name})", "descending")


def require_graded(c: WindowedCategory) -> None:
    """
    The active filtration must be the grading filtration of a positively
    graded algebra.

    Raises:
        NotGraded: from the grading of the presentation.
        FiltrationMismatch: when some basis element has filtration level different from its degree.
    """
    f = c.filtration
    if f.KIND == "file":
        raise FiltrationMismatch(FiltrationErrors.MISMATCH.value.format(index=0))
    base = c.base
    if isinstance(base, QuiverAlgebra):
        grading_filtration(base)
    for w, b in enumerate(base.BASIS):
        if f.level(w) != b.grade:
            raise FiltrationMismatch(FiltrationErrors.MISMATCH.value.format(index=f.level(w)))


def _graded_indices(c: WindowedCategory) -> List[int]:
    indices = []
    for idx, b in enumerate(c.BASIS):
        kind, w, i, j = b.origin
        if kind == "C" and j >= i and c.base.BASIS[w].grade == j - i:
            indices.append(idx)
    return indices


def build_B_graded(c: WindowedCategory) -> SubalgebraEmbedding:
    """Degree j - i component of A in every slot i -> j with j >= i."""
    require_graded(c)
    return SubalgebraEmbedding(c, _graded_indices(c), f"B({c.name})", "ascending")


def build_Bbar(d: WindowedCategory) -> SubalgebraEmbedding:
    """
    The graded band of the envelope together with the duals of C elements
    (Y -> X, level(Y) - level(X) = s >= 0) of degree N - 1 - s.
    """
    require_graded(d)
    indices = _graded_indices(d)
    for idx, b in enumerate(d.BASIS):
        kind, w, i, j = b.origin
        if kind == "D" and i >= j and d.base.BASIS[w].grade == d.N - 1 - (i - j):
            indices.append(idx)
    return SubalgebraEmbedding(d, indices, f"Bbar({d.name})", "ascending")


def check_directed(a: FiniteDimAlgebra, order: Order) -> Dict[str, bool]:
    """Whether every non-unit basis element strictly raises, or strictly lowers, the order."""
    increasing = decreasing = True
    for idx, b in enumerate(a.BASIS):
        if a.is_unit(idx):
            continue
        increasing = increasing and order.greater(b.target, b.source)
        decreasing = decreasing and order.greater(b.source, b.target)
    return {"increasing": increasing, "decreasing": decreasing, "directed": increasing or decreasing}


def line_corner(s: SubalgebraEmbedding, vertex) -> Dict[str, object]:
    """
    Corner of the band subalgebra at one vertex: one-dimensional homs for
    offsets 0..N-1, generated by the offset-one maps, with every composite of
    N generators zero and composites of N - 1 nonzero.
    """
    sub = s.sub
    N = sub.N
    objects = [(vertex, i) for i in sub.window.levels]
    corner, _ = sub.full_subcategory(objects, f"{s.name}_{vertex}")
    interior = [i for i in sub.window.levels if sub.window.interior(i)]
    dims_ok = all(
        len(corner.hom((vertex, i), (vertex, i - d))) == (1 if d < N else 0)
        for i in interior
        for d in range(0, N + 1)
    )
    generators = corner.generators()
    offsets_ok = all(corner.BASIS[g].source[1] - corner.BASIS[g].target[1] == 1 for g in generators)
    step = {corner.BASIS[g].source: g for g in generators}
    one = corner.FIELD.one

    def composite(start: int, length: int) -> dict:
        vec = {corner.UNITS[(vertex, start)]: one}
        level = start
        for _ in range(length):
            g = step.get((vertex, level))
            if g is None:
                return {}
            vec = corner.product({g: one}, vec)
            level -= 1
        return vec

    vanishing = N == 1 or all(not composite(i, N) and composite(i, N - 1) for i in interior)
    return {
        "vertex": vertex,
        "dims": dims_ok,
        "generators_offset_one": offsets_ok,
        "nilpotency": vanishing,
        "ok": dims_ok and offsets_ok and vanishing,
    }
