import logging
import random
from typing import Callable, Dict, List, Optional, Tuple
from src.algebra.extensions import canonical_functional, graded_report, trivial_extension
from src.algebra.filtration import is_rigid, loewy_lengths, radical_chain, socle_filtration
from src.algebra.forms import (
    TraceForm,
    check_pairing_condition,
    check_symmetric,
    find_symmetric_form,
    gram_matrix,
    symmetric_functionals,
)
from src.borel.induction import induction_suite, projective_dimension_vectors
from src.borel.subalgebra import build_B_graded, build_Bbar, build_tildeB, line_corner
from src.borel.triangular import triangular_decomposition
from src.engine.renderer import OutputRenderer
from src.engine.workbench import Workbench
from src.envelope.category import WindowedCategory, dump_category
from src.envelope.checks import structural_suite
from src.envelope.presentation import compare_golden
from src.envelope.symmetric import form_on_C, form_on_D
from src.models.models import (
    Certificate,
    ClaimStatus,
    GoldenPresentation,
    ResultOutput,
    RunConfig,
    Verdict,
)
from src.models.m_errors import CliErrors, EnvelopeErrors
from src.models.base_errors import PairingFailed, PreconditionError, QHEError
from src.qh.certify import certify_quasi_hereditary, costandard_shift_certificate, dual_extension_certificate
from src.qh.layout import rhombal_layout
from src.qh.order import Order
from src.qh.subquotient import subquotient_recovery
from src.utils.utils import input_digest, seeded_rng

logger = logging.getLogger(__name__)


def _status(claim: str, output, passed: bool, target: Optional[str] = None) -> ClaimStatus:
    return ClaimStatus(
        claim=claim,
        output=output,
        status=Verdict.PASS.value if passed else Verdict.FAIL.value,
        target=target,
    )


def _from_certificate(cert: Certificate) -> ClaimStatus:
    return ClaimStatus(claim=cert.claim, output=cert.model_dump(), status=cert.verdict, target=cert.target)


class Engine:
    # commands whose text report carries a rhombal layout
    LAYOUT_COMMANDS = ("envelope", "certify")

    def __init__(self):
        self.config: RunConfig = None
        self.workbench: Workbench = None
        self.renderer: OutputRenderer = None
        self.golden: Optional[GoldenPresentation] = None
        self.digest: str = ""
        self.result: ResultOutput = None

    def create(
        self,
        config: RunConfig,
        workbench: Workbench,
        renderer: OutputRenderer,
        golden: Optional[GoldenPresentation] = None,
    ) -> "Engine":
        if not config:
            raise ValueError("Run configuration is required")

        if config.command not in self.commands:
            raise ValueError(f"Unknown command {config.command}")

        if not workbench:
            raise ValueError("Workbench is required")

        if not renderer:
            raise ValueError("Renderer is required")

        if config.command == "example" and golden is None:
            raise ValueError("Golden presentation is required for example")

        setattr(self, "config", config)
        setattr(self, "workbench", workbench)
        setattr(self, "renderer", renderer)
        setattr(self, "golden", golden)
        setattr(self, "digest", input_digest(workbench.presentation))
        return self

    @property
    def commands(self) -> Dict[str, Callable[[], None]]:
        return {
            "basis": self.basis,
            "filtration": self.filtration,
            "envelope": self.envelope,
            "certify": self.certify,
            "symmetric": self.symmetric,
            "borel": self.borel,
            "triangular": self.triangular,
            "subquotient": self.subquotient,
            "example": self.example,
        }

    def run(self) -> Tuple[dict, int]:
        config = self.config
        self.result = ResultOutput(
            command=config.command,
            input=config.input,
            header={
                "input_digest": self.digest,
                "target": config.target,
                "order": config.order,
                "filtration": config.filtration,
            },
        )
        logger.info("running %s on %s", config.command, config.input)
        try:
            self.commands[config.command]()
            failed = any(s.status != Verdict.PASS.value for s in self.result.stdout)
            code = 1 if failed else 0
        except QHEError as e:
            logger.error("%s: %s", type(e).__name__, e)
            self.result.stderr.append(
                ClaimStatus(
                    claim=config.command,
                    output={"error": type(e).__name__, "message": str(e), "witness": e.witness},
                    status=Verdict.ERROR.value,
                    target=config.target,
                )
            )
            code = e.EXIT_CODE
        self.result.exit_code = code
        return self.result.model_dump(), code

    def render(self, output: dict) -> str:
        return self.renderer.format(output)

    def _rng(self) -> random.Random:
        return seeded_rng(self.digest)

    def _emit(self, status: ClaimStatus) -> None:
        self.result.stdout.append(status)

    def _category(self) -> WindowedCategory:
        """
        Raises:
            PreconditionError: for target A, which has no windowed category.
        """
        if self.config.target == "A":
            raise PreconditionError(
                CliErrors.BAD_TARGET.value.format(command=self.config.command, target=self.config.target)
            )
        c = self.workbench.category(self.config.target)
        self.result.header.update(c.header())
        return c

    def _layout(self, c: WindowedCategory) -> None:
        if self.config.format != "text" or self.config.command not in self.LAYOUT_COMMANDS:
            return
        objects = c.interior_objects()
        if not objects:
            return
        reference = next((obj for obj in objects if obj[1] == 0), objects[0])
        self._emit(_status("rhombal_layout", rhombal_layout(c, reference), True, c.kind))

    def _active(self):
        """Filtration of A, or of the tilde extension for target D."""
        wb = self.workbench
        return wb.tilde.filtration if self.config.target == "D" else wb.filtration

    def basis(self) -> None:
        f = self._active()
        a = f.ALGEBRA
        dims = {}
        for x, y in a.blocks():
            dims[f"{x}->{y}"] = len(a.hom(x, y))
        output = {
            "name": a.name,
            "field": a.FIELD.NAME,
            "dim": a.DIM,
            "N": f.N,
            "vertices": [str(v) for v in a.OBJECTS],
            "basis": [
                {"label": b.label, "source": b.source, "target": b.target, "level": f.level(idx), "grade": b.grade}
                for idx, b in enumerate(a.BASIS)
            ],
            "dims": dims,
            "layer_dims": f.dims(),
        }
        self._emit(_status("basis", output, True, self.config.target))

    def filtration(self) -> None:
        f = self._active()
        a = f.ALGEBRA
        output = {
            "kind": f.KIND,
            "N": f.N,
            "layer_dims": f.dims(),
            "levels": {b.label: f.level(idx) for idx, b in enumerate(a.BASIS)},
            "loewy_lengths": {k: {"left": l, "right": r} for k, (l, r) in loewy_lengths(a, f).items()},
            "radical_dims": [span.rank for span in radical_chain(a, f)],
            "socle_dims": [span.rank for span in socle_filtration(a, f)],
            "rigid": is_rigid(a, f),
        }
        passed = True
        if self.config.target == "D":
            t = self.workbench.tilde
            output["tilde_checks"] = t.checks
            output["untilded"] = t.untilded
            output["tilded"] = t.TILDED
            passed = t.PASSED
        self._emit(_status("filtration", output, passed, self.config.target))

    def envelope(self) -> None:
        c = self._category()
        suite = structural_suite(c, self.config.samples, self._rng())
        self._emit(_status("structure", suite, all(bool(v) for v in suite.values()), c.kind))
        self._emit(_status("category", dump_category(c), True, c.kind))
        self._layout(c)

    def certify(self) -> None:
        config = self.config
        c = self._category()
        order = Order(config.order, c)
        for side in ("left", "right"):
            cert = certify_quasi_hereditary(c, order, side, self._rng(), config.workers, self.digest)
            self._emit(_from_certificate(cert))
        if c.kind == "C":
            self._emit(_from_certificate(costandard_shift_certificate(c, self._rng(), workers=config.workers, digest=self.digest)))
        elif config.order == "first":
            cert = dual_extension_certificate(self.workbench.tilde_C, c, self._rng(), config.workers, self.digest)
            self._emit(_from_certificate(cert))
        self._layout(c)

    def _trace_form(self) -> Optional[TraceForm]:
        """The form named by the presentation, else a nondegenerate symmetric one if any exists."""
        a = self.workbench.algebra
        trace = self.workbench.presentation.trace
        if trace:
            return check_symmetric(a, a.functional(trace), self.config.samples, self._rng())
        return find_symmetric_form(a, self._rng())

    def symmetric(self) -> None:
        target = self.config.target
        wb = self.workbench
        if target == "D":
            d = self._category()
            self._emit(_status("symmetric", form_on_D(d, self.config.samples, self._rng()), True, "D"))
            return
        f = wb.filtration
        t = self._trace_form()
        if target == "A":
            a = wb.algebra
            te = trivial_extension(a, f.N)
            check_symmetric(te, canonical_functional(te, a.DIM), self.config.samples, self._rng())
            self._emit(_status("trivial_extension", {"dim": te.DIM, **graded_report(te)}, True, "A"))
            if t is None:
                output = {"functionals": len(symmetric_functionals(a)), "form": None}
                self._emit(_status("symmetric", output, False, "A"))
                return
            output = {"form": t.rendered_functional(), "rigid": is_rigid(f.ALGEBRA, f)}
            if f.ALGEBRA is a:
                output["pairing"] = check_pairing_condition(a, f, t)[0]
            self._emit(_status("symmetric", output, True, "A"))
            return
        if t is None:
            raise PairingFailed(EnvelopeErrors.PAIRING.value.format(index="any"), {"j": None})
        c = self._category()
        functional = f.pull_back(t.functional)
        adapted = TraceForm(f.ALGEBRA, functional, gram_matrix(f.ALGEBRA, functional))
        output = form_on_C(c, adapted, self.config.samples, self._rng())
        output["rigid"] = is_rigid(f.ALGEBRA, f)
        self._emit(_status("symmetric", output, True, "C"))

    def _borel_pair(self, c: WindowedCategory):
        if c.kind == "D":
            return build_tildeB(c), build_Bbar(c)
        return build_tildeB(c), build_B_graded(c)

    def borel(self) -> None:
        c = self._category()
        tilde_b, band = self._borel_pair(c)
        subalgebras = {"tildeB": tilde_b, ("Bbar" if c.kind == "D" else "B"): band}
        cert = induction_suite(subalgebras, self.config.order, self._rng(), self.config.workers, self.digest)
        self._emit(_from_certificate(cert))
        corners = [line_corner(tilde_b, v) for v in c.VERTICES]
        self._emit(_status("line_corner", {"corners": corners}, all(x["ok"] for x in corners), c.kind))
        if c.kind == "C":
            projectives = projective_dimension_vectors(tilde_b, c)
            self._emit(_status("tildeB_projectives", projectives, projectives["ok"], c.kind))

    def triangular(self) -> None:
        c = self._category()
        tilde_b, band = self._borel_pair(c)
        self._emit(_from_certificate(triangular_decomposition(c, tilde_b, band, self.digest)))

    def subquotient(self) -> None:
        # the corner lives in the envelope of the tilde extension whatever the target
        d = self.workbench.D
        self.result.header.update(d.header())
        _, cert = subquotient_recovery(self.workbench.algebra, d, self.config.level, self.digest)
        self._emit(_from_certificate(cert))

    def example(self) -> None:
        wb = self.workbench
        c, d = wb.tilde_C, wb.D
        self.result.header.update(d.header())
        comparison = compare_golden(c, d, self.golden)
        self._emit(_status("golden_presentation", comparison, not comparison["mismatches"], "D"))
