import logging
from typing import Dict, Hashable, List, Optional, Tuple
from src.algebra.algebra import BasisElement, FiniteDimAlgebra, Vector
from src.algebra.filtration import IdealFiltration
from src.envelope.window import Window
from src.models.m_errors import EnvelopeErrors
from src.models.base_errors import PreconditionError

logger = logging.getLogger(__name__)

Obj = Tuple[Hashable, int]


class WindowedCategory(FiniteDimAlgebra):
    """
    Finite window of a level-indexed envelope, held as a locally unital algebra.

    Objects are (vertex, level). Every basis element carries the origin
    (kind, index in A, source level, target level) where kind is "C" for an
    element of the envelope and "D" for the dual of the C element with that
    index and slot.
    """

    def __init__(
        self,
        field,
        objects,
        basis,
        table,
        units,
        name: str,
        window: Window,
        base: FiniteDimAlgebra,
        filtration: IdealFiltration,
        kind: str = "C",
        untilded: Optional[List[Hashable]] = None,
    ):
        super().__init__(field, objects, basis, table, units, name)
        self.window = window
        self.base = base
        self.filtration = filtration
        self.kind = kind
        self.untilded = untilded
        self.form: Optional[Vector] = None
        self._slots: Optional[Dict[tuple, int]] = None

    @property
    def N(self) -> int:
        return self.window.N

    @property
    def VERTICES(self) -> List[Hashable]:
        return list(self.base.OBJECTS)

    def interior_objects(self) -> List[Obj]:
        return [obj for obj in self.OBJECTS if self.window.interior(obj[1])]

    def is_tilded(self, vertex: Hashable) -> bool:
        return self.untilded is not None and vertex not in self.untilded

    def slot_index(self, origin: tuple) -> Optional[int]:
        """Basis index for an origin tuple, or None when the window lacks it."""
        if self._slots is None:
            self._slots = {b.origin: idx for idx, b in enumerate(self.BASIS)}
        return self._slots.get(origin)

    def shifted(self, idx: int, s: int) -> Optional[int]:
        kind, a_idx, i, j = self.BASIS[idx].origin
        return self.slot_index((kind, a_idx, i + s, j + s))

    def _meta(self) -> dict:
        return {
            "window": self.window,
            "base": self.base,
            "filtration": self.filtration,
            "kind": self.kind,
            "untilded": self.untilded,
        }

    def _make_opposite(self, basis, table) -> "WindowedCategory":
        return WindowedCategory(
            self.FIELD, self.OBJECTS, basis, table, self.UNITS, f"{self.name}^op", **self._meta()
        )

    def _rebuild(self, basis, table, units) -> "WindowedCategory":
        return WindowedCategory(self.FIELD, self.OBJECTS, basis, table, units, self.name, **self._meta())

    def header(self) -> dict:
        return {
            "category": self.name,
            "kind": self.kind,
            "field": self.FIELD.NAME,
            "window": self.window.header(),
            "reading": "locally unital, finite window, certified at interior levels",
            "objects": len(self.OBJECTS),
            "dim": self.DIM,
        }


def slot_cutoff(f: IdealFiltration, i: int, j: int) -> Tuple[int, int]:
    """
    Admissible A-levels [low, high) for the slot from level i to level j:
    I_{j-i} above the diagonal, all of A on it and A/I_{N-(i-j)} below it.
    """
    N = f.N
    d = j - i
    if d >= N or -d >= N:
        return 0, 0
    if d > 0:
        return d, N
    if d == 0:
        return 0, N
    return 0, N + d


def _reduce(f: IdealFiltration, lookup: Dict[tuple, int], vec: Vector, i: int, k: int) -> Vector:
    """Image in slot i -> k of an element of A; components above the quotient cutoff are dropped."""
    low, high = slot_cutoff(f, i, k)
    out: Vector = {}
    for w, c in vec.items():
        level = f.level(w)
        if level >= high:
            continue
        if level < low:
            raise PreconditionError(EnvelopeErrors.INEXACT.value.format(element=w, slot=(i, k)))
        out[lookup[(w, i, k)]] = c
    return out


def _level_pairs(window: Window, N: int, lower_unbounded: bool = False) -> List[Tuple[int, int]]:
    pairs = []
    for i in window.levels:
        for j in window.levels:
            if abs(j - i) < N or (lower_unbounded and j < i):
                pairs.append((i, j))
    return pairs


def build_C(
    a: FiniteDimAlgebra,
    f: IdealFiltration,
    window: Window,
    name: str = "",
    untilded: Optional[List[Hashable]] = None,
) -> WindowedCategory:
    """
    Window of the envelope: hom((x,i),(y,j)) is I_{j-i}(x,y) for j > i, A(x,y)
    for j = i and (A/I_{N-(i-j)})(x,y) for 0 < i - j < N. Composition is the
    product of A followed by reduction into the target slot.
    """
    # file filtrations carry a rebased copy of the algebra
    a = f.ALGEBRA
    field = a.FIELD
    objects = [(v, i) for i in window.levels for v in a.OBJECTS]
    basis: List[BasisElement] = []
    lookup: Dict[tuple, int] = {}
    for i, j in _level_pairs(window, f.N):
        low, high = slot_cutoff(f, i, j)
        for w, b in enumerate(a.BASIS):
            if low <= f.level(w) < high:
                lookup[(w, i, j)] = len(basis)
                basis.append(
                    BasisElement(f"{b.label}[{i}>{j}]", (b.source, i), (b.target, j), f.level(w), b.grade, ("C", w, i, j))
                )
    table = _compose(a, f, basis, lookup)
    units = {(v, i): lookup[(a.UNITS[v], i, i)] for v, i in objects}
    c = WindowedCategory(
        field, objects, basis, table, units, name or f"C({a.name})", window, a, f, "C", untilded
    )
    logger.info("built %s on levels [%d, %d]: %d objects, dim %d", c.name, window.lo, window.hi, len(objects), c.DIM)
    return c


def _compose(a: FiniteDimAlgebra, f: IdealFiltration, basis, lookup, band: bool = True) -> dict:
    by_source: Dict[Obj, List[int]] = {}
    for idx, b in enumerate(basis):
        by_source.setdefault(b.source, []).append(idx)
    table = {}
    for v, bv in enumerate(basis):
        _, q, i, j = bv.origin
        for u in by_source.get(bv.target, []):
            _, p, _, k = basis[u].origin
            product = a.multiply(p, q)
            if not product:
                continue
            if band:
                image = _reduce(f, lookup, product, i, k)
            else:
                image = _reduce_unbounded(f, lookup, product, i, k)
            if image:
                table[(u, v)] = image
    return table


def build_B(a: FiniteDimAlgebra, f: IdealFiltration, window: Window) -> Tuple[FiniteDimAlgebra, List[int]]:
    """
    Unreduced model on a window: I_{j-i} above the diagonal and all of A on and
    below it. Returns the algebra and the basis indices spanning the ideal J,
    which holds I_{N-(i-j)} for 0 < i - j < N and everything for i - j >= N.
    """
    a = f.ALGEBRA
    basis: List[BasisElement] = []
    lookup: Dict[tuple, int] = {}
    ideal: List[int] = []
    for i, j in _level_pairs(window, f.N, lower_unbounded=True):
        for w, b in enumerate(a.BASIS):
            level = f.level(w)
            if j > i and level < j - i:
                continue
            lookup[(w, i, j)] = len(basis)
            if i - j >= f.N or (i > j and level >= f.N - (i - j)):
                ideal.append(len(basis))
            basis.append(BasisElement(f"{b.label}[{i}>{j}]", (b.source, i), (b.target, j), level, b.grade, ("C", w, i, j)))
    table = _compose(a, f, basis, lookup, band=False)
    objects = [(v, i) for i in window.levels for v in a.OBJECTS]
    units = {(v, i): lookup[(a.UNITS[v], i, i)] for v, i in objects}
    return FiniteDimAlgebra(a.FIELD, objects, basis, table, units, f"B({a.name})"), ideal


def _reduce_unbounded(f: IdealFiltration, lookup: Dict[tuple, int], vec: Vector, i: int, k: int) -> Vector:
    out: Vector = {}
    for w, c in vec.items():
        if k > i and f.level(w) < k - i:
            raise PreconditionError(EnvelopeErrors.INEXACT.value.format(element=w, slot=(i, k)))
        out[lookup[(w, i, k)]] = c
    return out


def reduce_into_slot(c: WindowedCategory, vec: Vector, i: int, k: int) -> Vector:
    """Class in slot i -> k of an element of A, for lift-independence checks."""
    f = c.filtration
    low, high = slot_cutoff(f, i, k)
    out: Vector = {}
    for w, coeff in vec.items():
        level = f.level(w)
        if level >= high:
            continue
        idx = c.slot_index(("C", w, i, k))
        if level < low or idx is None:
            raise PreconditionError(EnvelopeErrors.INEXACT.value.format(element=w, slot=(i, k)))
        out[idx] = coeff
    return out


def dump_category(c: FiniteDimAlgebra) -> dict:
    """Objects, hom dimensions, labels and composition table of a finite category."""
    homs = []
    for x in c.OBJECTS:
        for y in c.OBJECTS:
            block = c.hom(x, y)
            if block:
                homs.append(
                    {
                        "source": list(x) if isinstance(x, tuple) else x,
                        "target": list(y) if isinstance(y, tuple) else y,
                        "dim": len(block),
                        "labels": [c.BASIS[idx].label for idx in block],
                    }
                )
    table = []
    for (u, v), w in sorted(c.TABLE.items()):
        table.append(
            {
                "left": c.BASIS[u].label,
                "right": c.BASIS[v].label,
                "product": {c.BASIS[k].label: c.FIELD.render(coeff) for k, coeff in w.items()},
            }
        )
    return {
        "objects": [list(x) if isinstance(x, tuple) else x for x in c.OBJECTS],
        "dim": c.DIM,
        "homs": homs,
        "composition": table,
    }
