import logging
from typing import Optional, Tuple
from src.algebra.algebra import FiniteDimAlgebra, same_structure
from src.algebra.extensions import trivial_extension
from src.envelope.category import WindowedCategory
from src.models.models import Certificate, Verdict
from src.models.m_errors import EnvelopeErrors
from src.models.base_errors import PreconditionError

logger = logging.getLogger(__name__)


def subquotient_recovery(
    a: FiniteDimAlgebra, d: WindowedCategory, level: int, digest: str = ""
) -> Tuple[Optional[FiniteDimAlgebra], Certificate]:
    """
    Recover A from the corner of D at one level: the corner is the trivial
    extension of A~ and its quotient by the ideal generated by the tilded
    idempotents has the structure constants of A.
    """
    if d.kind != "D":
        raise PreconditionError(EnvelopeErrors.NOT_TRIVIAL_EXTENSION.value.format(name=d.name))
    objects = [(v, level) for v in d.VERTICES]
    for obj in objects:
        d.window.require_interior(obj)
    base = d.base
    corner, _ = d.full_subcategory(objects, f"corner_{level}")
    slot = {b.label: f"{b.label}[{level}>{level}]" for b in base.BASIS}
    te_map = dict(slot)
    te_map.update({f"{label}*": f"{image}*" for label, image in slot.items()})
    stages = {"corner_is_trivial_extension": same_structure(trivial_extension(base), corner, te_map)}
    one = d.FIELD.one
    tilded = [{corner.UNITS[(v, level)]: one} for v in d.VERTICES if d.is_tilded(v)]
    quotient, _ = corner.quotient(corner.ideal_closure(tilded), f"{corner.name}/tilde")
    stages["recovers"] = same_structure(a, quotient, {b.label: f"{b.label}[{level}>{level}]" for b in a.BASIS})
    failed = [stage for stage, ok in stages.items() if not ok]
    logger.info("subquotient at level %d: corner dim %d, quotient dim %d", level, corner.DIM, quotient.DIM)
    certificate = Certificate(
        claim="idempotent_subquotient",
        target=d.kind,
        input_digest=digest,
        header=d.header(),
        witnesses=[
            {
                "level": level,
                "corner_dim": corner.DIM,
                "quotient_dim": quotient.DIM,
                "quotient_labels": [b.label for b in quotient.BASIS],
                "stages": stages,
                "failed_stage": failed[0] if failed else None,
            }
        ],
        verdict=Verdict.FAIL.value if failed else Verdict.PASS.value,
    )
    return (None if failed else quotient), certificate
