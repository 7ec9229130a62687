import argparse
import logging
import os
import sys
from os import getenv
from typing import List, Optional
from dotenv import load_dotenv
from pydantic import ValidationError
from src.engine.engine import Engine
from src.engine.renderer import RendererFactory
from src.engine.workbench import Workbench
from src.models.models import AlgebraPresentation, ClaimStatus, GoldenPresentation, ResultOutput, RunConfig, Verdict
from src.models.m_errors import CliErrors
from src.models.base_errors import InputError, QHEError
from src.utils.utils import configure_logging, load_model, write_atomic

logger = logging.getLogger(__name__)

COMMANDS = ["basis", "filtration", "envelope", "certify", "symmetric", "borel", "triangular", "subquotient", "example"]


def load_example(corpus: str, name: str):
    """Golden presentation named name and the algebra it is generated from."""
    path = os.path.join(corpus, "golden", f"{name}.json")
    if not os.path.isfile(path):
        raise InputError(CliErrors.UNKNOWN_EXAMPLE.value.format(name=name), {"path": path})
    golden = load_model(path, GoldenPresentation)
    presentation = load_model(os.path.join(corpus, "algebras", golden.input), AlgebraPresentation)
    return golden, presentation


class CLI(Engine):
    def __init__(self, config: RunConfig):
        super().__init__()
        self.request_config = config
        self.__load_engine()

    def __load_engine(self):
        config = self.request_config
        golden = None
        if config.command == "example":
            golden, presentation = load_example(config.corpus, config.input)
        else:
            presentation = load_model(config.input, AlgebraPresentation)
        workbench = Workbench(config, presentation)
        renderer = RendererFactory.get_renderer(config.format)
        self.create(config, workbench, renderer, golden)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Workbench for quasi-hereditary envelopes of finite-dimensional algebras")
    parser.add_argument("command", choices=COMMANDS, help="Pipeline to run")
    parser.add_argument("input", help="Algebra presentation (JSON), or the example name for example")
    parser.add_argument("--window", type=int, help="Window half-width, default 4N, at least 2N + 1 for module-level commands")
    parser.add_argument("--order", choices=["first", "second"], default="first", help="Order on objects")
    parser.add_argument("--target", choices=["A", "C", "D"], default="C", help="Algebra, envelope or its trivial extension")
    parser.add_argument("--filtration", default="radical", help="radical, grading or a filtration file")
    parser.add_argument("--out", type=str, help="Write the report to this path instead of stdout")
    parser.add_argument("--format", choices=["json", "text", "yaml"], default="json", help="Output format, default is JSON")
    parser.add_argument("--level", type=int, default=0, help="Interior level for subquotient")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input=args.input,
            window=args.window,
            order=args.order,
            target=args.target,
            filtration=args.filtration,
            out=args.out,
            format=args.format,
            level=args.level,
            log_level=getenv("QHE_LOG", "WARNING"),
            workers=int(getenv("QHE_WORKERS", "1")),
            samples=int(getenv("QHE_SAMPLES", "10000")),
            corpus=getenv("QHE_CORPUS", "corpus"),
        )
    except (ValidationError, ValueError) as e:
        parser.error(str(e))
    configure_logging(config.log_level)

    renderer = RendererFactory.get_renderer(config.format)
    try:
        cli = CLI(config)
        output, code = cli.run()
    except QHEError as e:
        logger.error("%s: %s", type(e).__name__, e)
        code = e.EXIT_CODE
        output = ResultOutput(
            command=config.command,
            input=config.input,
            stderr=[
                ClaimStatus(
                    claim=config.command,
                    output={"error": type(e).__name__, "message": str(e), "witness": e.witness},
                    status=Verdict.ERROR.value,
                    target=config.target,
                )
            ],
            exit_code=code,
        ).model_dump()

    text = renderer.format(output)
    if config.out:
        write_atomic(config.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
