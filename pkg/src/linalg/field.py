from sympy import QQ, GF
from src.models.models import FieldSpec
from src.models.m_errors import LinalgErrors
from src.models.base_errors import PresentationError


class Field:
    """Exact scalars over QQ or GF(p), backed by sympy ground domains."""

    def __init__(self, spec: FieldSpec = None):
        self._spec = spec or FieldSpec()
        if self._spec.kind == "prime":
            self._domain = GF(self._spec.p)
        else:
            self._domain = QQ
        self.zero = self._domain.zero
        self.one = self._domain.one

    @property
    def DOMAIN(self):
        return self._domain

    @property
    def NAME(self) -> str:
        if self._spec.kind == "prime":
            return f"GF({self._spec.p})"
        return "QQ"

    def search_attempts(self, base: int) -> int:
        """Random draws needed before a rank test is trusted; small prime fields need more."""
        if self._spec.kind == "prime":
            return base * max(1, -(-32 // self._spec.p))
        return base

    def of(self, value: int):
        return self._domain(value)

    def parse(self, text) -> object:
        """Parse "3", "-2" or "3/2" into a field element."""
        raw = str(text).strip()
        num, _, den = raw.partition("/")
        try:
            value = self._domain(int(num))
            if den:
                divisor = self._domain(int(den))
                if divisor == self.zero:
                    raise PresentationError(LinalgErrors.ZERO_DENOMINATOR.value.format(text=raw))
                value = value / divisor
        except ValueError as err:
            raise PresentationError(LinalgErrors.BAD_SCALAR.value.format(text=raw)) from err
        return value

    def render(self, value) -> str:
        if self._spec.kind == "prime":
            return str(int(self._domain.to_sympy(value)) % self._spec.p)
        return str(self._domain.to_sympy(value))

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self._spec == other._spec

    def __hash__(self):
        return hash((self._spec.kind, self._spec.p))
