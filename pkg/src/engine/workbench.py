import json
import logging
import os
from typing import Optional
from pydantic import BaseModel, ValidationError
from src.algebra.extensions import TildeExtension, tilde_extension
from src.algebra.filtration import (
    IdealFiltration,
    grading_filtration,
    layer_vectors_from_labels,
    radical_filtration,
    validate_filtration,
)
from src.algebra.paths import QuiverAlgebra, compute_basis
from src.envelope.category import WindowedCategory, build_C
from src.envelope.dual import build_D
from src.envelope.window import Window
from src.models.models import AlgebraPresentation, RunConfig
from src.models.m_errors import FiltrationErrors
from src.models.base_errors import FiltrationError, PreconditionError

logger = logging.getLogger(__name__)


class FiltrationFile(BaseModel):
    """Layers I_1 .. I_{N-1} as lists of label -> scalar vectors."""

    layers: list


class Workbench:
    """
    Lazily built pipeline stages for one presentation: the algebra, the
    active filtration, the tilde extension and the windowed categories.
    Each stage is computed once.
    """

    BUILT_IN = ("radical", "grading")

    def __init__(self, config: RunConfig, presentation: AlgebraPresentation):
        self.config = config
        self.presentation = presentation
        self._algebra: Optional[QuiverAlgebra] = None
        self._filtration: Optional[IdealFiltration] = None
        self._tilde: Optional[TildeExtension] = None
        self._C: Optional[WindowedCategory] = None
        self._D: Optional[WindowedCategory] = None
        self._tilde_C: Optional[WindowedCategory] = None

    @property
    def algebra(self) -> QuiverAlgebra:
        if self._algebra is None:
            self._algebra = compute_basis(self.presentation)
        return self._algebra

    @property
    def filtration(self) -> IdealFiltration:
        if self._filtration is None:
            kind = self.config.filtration
            if kind == "radical":
                self._filtration = radical_filtration(self.algebra)
            elif kind == "grading":
                self._filtration = grading_filtration(self.algebra)
            else:
                self._filtration = self._from_file(kind)
        return self._filtration

    def _from_file(self, path: str) -> IdealFiltration:
        """
        Raises:
            FiltrationError: when the file is missing or malformed.
        """
        if not os.path.isfile(path):
            raise FiltrationError(FiltrationErrors.BAD_FILE.value.format(path=path, reason="not found"))
        try:
            with open(path, "r", encoding="utf-8") as f:
                spec = FiltrationFile(**json.load(f))
            layers = layer_vectors_from_labels(self.algebra, spec.layers)
        except (json.JSONDecodeError, ValidationError, AttributeError) as e:
            raise FiltrationError(FiltrationErrors.BAD_FILE.value.format(path=path, reason=e)) from e
        return validate_filtration(self.algebra, layers)

    @property
    def tilde(self) -> TildeExtension:
        if self._tilde is None:
            if self.config.filtration not in self.BUILT_IN:
                raise PreconditionError(FiltrationErrors.FILE_WITH_TILDE.value)
            self._tilde = tilde_extension(self.algebra, self.config.filtration)
        return self._tilde

    def window(self, N: int) -> Window:
        half = self.config.window or 4 * N
        return Window.around(half, N)

    def _drop(self, c: WindowedCategory) -> WindowedCategory:
        labels = self.presentation.drop_basis
        if not labels:
            return c
        logger.warning("dropping %d envelope basis elements from %s", len(labels), c.name)
        return c.without(labels)

    @property
    def C(self) -> WindowedCategory:
        if self._C is None:
            f = self.filtration
            self._C = self._drop(build_C(f.ALGEBRA, f, self.window(f.N)))
        return self._C

    @property
    def tilde_C(self) -> WindowedCategory:
        """Envelope of the tilde extension, with its untilded vertices marked."""
        if self._tilde_C is None:
            t = self.tilde
            f = t.filtration
            self._tilde_C = self._drop(build_C(f.ALGEBRA, f, self.window(f.N), untilded=t.untilded))
        return self._tilde_C

    @property
    def D(self) -> WindowedCategory:
        if self._D is None:
            self._D = build_D(self.tilde_C)
        return self._D

    def category(self, target: str) -> WindowedCategory:
        return self.D if target == "D" else self.C
