import logging
from typing import Dict, Hashable, List, Optional, Tuple
from src.algebra.algebra import FiniteDimAlgebra
from src.linalg.matrix import EchelonBasis, Mat

logger = logging.getLogger(__name__)

Span = Dict[Hashable, EchelonBasis]


class ModuleRep:
    """
    Finite-dimensional left module over a finite category.

    One vector space per object and one matrix per non-unit basis element b
    whose source and target both carry the module; b maps the space at its
    source to the space at its target. Units act as identities. Right
    modules are left modules over the opposite algebra and keep side="right".
    """

    def __init__(
        self,
        algebra: FiniteDimAlgebra,
        dims: Dict[Hashable, int],
        acts: Dict[int, Mat],
        side: str = "left",
        name: str = "",
    ):
        self.algebra = algebra
        self.dims = {obj: d for obj, d in dims.items() if d > 0}
        self.acts = acts
        self.side = side
        self.name = name

    @property
    def DIM(self) -> int:
        return sum(self.dims.values())

    @property
    def FIELD(self):
        return self.algebra.FIELD

    def support(self) -> List[Hashable]:
        return [obj for obj in self.algebra.OBJECTS if obj in self.dims]

    def dim_at(self, obj: Hashable) -> int:
        return self.dims.get(obj, 0)

    def dimension_vector(self) -> Dict[str, int]:
        return {render_object(obj): self.dims[obj] for obj in self.support()}

    def action(self, idx: int) -> Optional[Mat]:
        return self.acts.get(idx)

    def apply(self, idx: int, vec: list) -> list:
        b = self.algebra.BASIS[idx]
        if self.algebra.is_unit(idx):
            return list(vec)
        m = self.acts.get(idx)
        if m is None:
            return [self.FIELD.zero] * self.dim_at(b.target)
        return m.apply(vec)

    def active(self) -> List[int]:
        """Non-unit basis elements between objects of the support."""
        support = self.dims
        out = []
        for x in self.support():
            for idx in self.algebra.out_of(x):
                if not self.algebra.is_unit(idx) and self.algebra.BASIS[idx].target in support:
                    out.append(idx)
        return out

    def zero_span(self) -> Span:
        return {obj: EchelonBasis(self.FIELD, d) for obj, d in self.dims.items()}

    def generated(self, seeds: List[Tuple[Hashable, list]]) -> Span:
        """Submodule generated by (object, vector) pairs, as spans per object."""
        spans = self.zero_span()
        queue: List[Tuple[Hashable, list]] = []
        for obj, vec in seeds:
            if obj in spans and spans[obj].add(vec):
                queue.append((obj, vec))
        while queue:
            obj, vec = queue.pop()
            for idx in self.algebra.out_of(obj):
                if self.algebra.is_unit(idx):
                    continue
                target = self.algebra.BASIS[idx].target
                if target not in spans:
                    continue
                image = self.apply(idx, vec)
                if spans[target].add(image):
                    queue.append((target, image))
        return spans

    def radical(self) -> Span:
        seeds = []
        for idx in self.active():
            m = self.acts[idx]
            target = self.algebra.BASIS[idx].target
            for k in range(m.cols):
                seeds.append((target, m.column(k)))
        return self.generated(seeds)

    def top(self) -> Dict[Hashable, int]:
        rad = self.radical()
        return {obj: self.dims[obj] - rad[obj].rank for obj in self.support() if self.dims[obj] > rad[obj].rank}

    def is_submodule(self, spans: Span) -> bool:
        for idx in self.active():
            b = self.algebra.BASIS[idx]
            for row in spans[b.source].rows:
                if not spans[b.target].contains(self.apply(idx, row)):
                    return False
        return True

    def submodule(self, spans: Span, name: str = "") -> Tuple["ModuleRep", Dict[Hashable, Mat]]:
        """Submodule on the stored rows of spans, with its inclusion maps."""
        dims = {obj: span.rank for obj, span in spans.items()}
        acts = {}
        for idx in self.active():
            b = self.algebra.BASIS[idx]
            source, target = spans[b.source], spans[b.target]
            if not source.rank or not target.rank:
                continue
            columns = [target.coordinates(self.apply(idx, row)) for row in source.rows]
            acts[idx] = Mat.from_columns(self.FIELD, columns, target.rank)
        inclusions = {
            obj: Mat.from_columns(self.FIELD, span.rows, self.dims[obj]) for obj, span in spans.items() if span.rank
        }
        return ModuleRep(self.algebra, dims, acts, self.side, name), inclusions

    def quotient(self, spans: Span, name: str = "") -> Tuple["ModuleRep", Dict[Hashable, Mat]]:
        """Quotient by a submodule on the free coordinates of each span, with the projections."""
        field = self.FIELD
        free = {obj: spans[obj].complement() for obj in self.dims}
        dims = {obj: len(cols) for obj, cols in free.items()}
        acts = {}
        for idx in self.active():
            b = self.algebra.BASIS[idx]
            if not dims[b.source] or not dims[b.target]:
                continue
            columns = []
            for k in free[b.source]:
                unit = [field.zero] * self.dims[b.source]
                unit[k] = field.one
                residual, _ = spans[b.target].reduce(self.apply(idx, unit))
                columns.append([residual[p] for p in free[b.target]])
            acts[idx] = Mat.from_columns(field, columns, dims[b.target])
        projections = {}
        for obj, cols in free.items():
            if not cols:
                continue
            rows = []
            for k in range(self.dims[obj]):
                unit = [field.zero] * self.dims[obj]
                unit[k] = field.one
                residual, _ = spans[obj].reduce(unit)
                rows.append([residual[p] for p in cols])
            projections[obj] = Mat.from_rows(field, rows, len(cols)).T
        return ModuleRep(self.algebra, dims, acts, self.side, name), projections

    def dual(self, name: str = "") -> "ModuleRep":
        """Linear dual, a left module over the opposite algebra."""
        acts = {idx: m.T for idx, m in self.acts.items()}
        side = "right" if self.side == "left" else "left"
        return ModuleRep(self.algebra.opposite(), dict(self.dims), acts, side, name or f"{self.name}*")

    def restrict(self, sub: FiniteDimAlgebra, indices: Dict[int, int]) -> "ModuleRep":
        """Restriction to a subalgebra whose basis element k is ambient basis element indices[k]."""
        acts = {k: self.acts[idx] for k, idx in indices.items() if idx in self.acts}
        return ModuleRep(sub, dict(self.dims), acts, self.side, self.name)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "side": self.side,
            "dim": self.DIM,
            "dimension_vector": self.dimension_vector(),
        }


def render_object(obj: Hashable) -> str:
    if isinstance(obj, tuple):
        return f"({obj[0]},{obj[1]})"
    return str(obj)


def projective_module(algebra: FiniteDimAlgebra, x: Hashable, side: str = "left") -> ModuleRep:
    """Representable module on the elements with source x; algebra acts by composition on the left."""
    field = algebra.FIELD
    dims: Dict[Hashable, int] = {}
    for idx in algebra.out_of(x):
        y = algebra.BASIS[idx].target
        dims[y] = dims.get(y, 0) + 1
    acts = {}
    for y in dims:
        for idx in algebra.out_of(y):
            if algebra.is_unit(idx):
                continue
            z = algebra.BASIS[idx].target
            if z not in dims:
                continue
            m = Mat.zeros(field, dims[z], dims[y])
            for col, p in enumerate(algebra.hom(x, y)):
                for w, c in algebra.multiply(idx, p).items():
                    m.data[algebra.position(w)][col] = c
            acts[idx] = m
    return ModuleRep(algebra, dims, acts, side, f"P{render_object(x)}")


def simple_module(algebra: FiniteDimAlgebra, x: Hashable, side: str = "left") -> ModuleRep:
    return ModuleRep(algebra, {x: 1}, {}, side, f"L{render_object(x)}")


def radical_layers(m: ModuleRep) -> List[Dict[str, int]]:
    """Dimension vectors of M/rad M, rad M/rad^2 M, ... by iterating the radical."""
    layers = []
    current = m
    while current.DIM:
        rad = current.radical()
        layers.append(
            {render_object(obj): current.dims[obj] - rad[obj].rank for obj in current.support() if current.dims[obj] > rad[obj].rank}
        )
        current, _ = current.submodule(rad)
    return layers
