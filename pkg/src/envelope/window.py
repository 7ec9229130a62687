from typing import Hashable, List, Tuple
from pydantic import BaseModel, Field, model_validator
from src.models.m_errors import EnvelopeErrors
from src.models.base_errors import BoundaryTruncated, WindowTooSmall


class Window(BaseModel):
    """Finite level range [lo, hi] of a band of width N."""

    lo: int
    hi: int
    N: int = Field(ge=1)

    @model_validator(mode="after")
    def check_bounds(self) -> "Window":
        if self.hi < self.lo:
            raise ValueError(f"hi = {self.hi} is below lo = {self.lo}")
        return self

    @classmethod
    def around(cls, half_width: int, N: int) -> "Window":
        return cls(lo=-half_width, hi=half_width, N=N)

    @property
    def margin(self) -> int:
        return 2 * self.N

    @property
    def levels(self) -> List[int]:
        return list(range(self.lo, self.hi + 1))

    def contains(self, level: int) -> bool:
        return self.lo <= level <= self.hi

    def interior(self, level: int) -> bool:
        return self.lo + self.margin <= level <= self.hi - self.margin

    def interior_levels(self) -> List[int]:
        return [i for i in self.levels if self.interior(i)]

    def safe(self, level: int) -> bool:
        """Levels whose projectives and standard modules are untouched by the boundary."""
        return self.lo + self.N - 1 <= level <= self.hi - self.N + 1

    @property
    def module_span(self) -> int:
        """Smallest hi - lo for module-level work: half-width at least 2N + 1."""
        return 4 * self.N + 2

    def require_module_scale(self) -> None:
        if self.hi - self.lo < self.module_span:
            raise WindowTooSmall(
                EnvelopeErrors.WINDOW_TOO_SMALL.value.format(lo=self.lo, hi=self.hi, N=self.N, need=self.module_span)
            )

    def require_interior(self, obj: Tuple[Hashable, int]) -> None:
        self.require_module_scale()
        if not self.interior(obj[1]):
            raise BoundaryTruncated(
                EnvelopeErrors.BOUNDARY.value.format(obj=obj, lo=self.lo, hi=self.hi, margin=self.margin)
            )

    def require_safe(self, obj: Tuple[Hashable, int]) -> None:
        if not self.safe(obj[1]):
            raise BoundaryTruncated(
                EnvelopeErrors.BOUNDARY.value.format(obj=obj, lo=self.lo, hi=self.hi, margin=self.N - 1)
            )

    def header(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "N": self.N, "margin": self.margin}
