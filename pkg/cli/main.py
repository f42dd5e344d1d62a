"""Command-line entry point"""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from cli import commands
from config.config import ExtractionConfig, ModelConfig, STRATEGIES, SUPPORTED_ORDERS
from models.run import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage-error code"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = UsageParser(add_help=False)
    common.add_argument("--config", type=Path, help="KEY=VALUE configuration file")
    common.add_argument("--format", dest="output_format", choices=["text", "records"], default="text")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    parser = UsageParser(prog="lattice-nlg", description="Two-level sentence generation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", parents=[common], help="Train an n-gram model")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--order", type=int, choices=SUPPORTED_ORDERS)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("generate", parents=[common], help="Realize an SPL input as a lattice")
    p.add_argument("--grammar", type=Path, required=True)
    p.add_argument("--lexicon", type=Path, required=True)
    p.add_argument("--exceptions", type=Path, help="Irregular inflection table")
    p.add_argument("--input", type=Path, required=True, help="SPL input file")
    p.add_argument("--goal", default="s", help="Category to realize")
    p.add_argument("--terminal", default=".", help="Last word of a sentence lattice; empty for none")
    p.add_argument("--out", type=Path, required=True, help="Lattice file to write")

    p = sub.add_parser("extract", parents=[common], help="Extract sentences from a lattice")
    p.add_argument("--lattice", type=Path, required=True)
    p.add_argument("--strategy", choices=sorted(STRATEGIES))
    p.add_argument("--model", type=Path)
    p.add_argument("--n", type=int)
    p.add_argument("--beam", type=int, help="Hypotheses kept per LM context (K)")
    p.add_argument("--global-beam", type=int, help="Hypotheses kept per state (approximate)")
    p.add_argument("--seed", type=int)
    p.add_argument("--per-arc", action="store_true", default=None, help="Uniform over arcs, not paths")
    p.add_argument("--verify", action="store_true", help="Check the N-best list against exhaustive scoring")

    p = sub.add_parser("score", parents=[common], help="Score sentences")
    p.add_argument("--model", type=Path, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sentence")
    group.add_argument("--sentences", type=Path, help="One sentence per line")

    p = sub.add_parser("rank", parents=[common], help="Rank sentences by corrected score")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--sentences", type=Path, required=True, help="One sentence per line")

    p = sub.add_parser("stats", parents=[common], help="Lattice size figures")
    p.add_argument("--lattice", type=Path, required=True)

    p = sub.add_parser("validate", parents=[common], help="Check lattice invariants")
    p.add_argument("--lattice", type=Path, required=True)

    return parser


def _pick(value, fallback):
    return fallback if value is None else value


def _run_config(args: argparse.Namespace, model_config: ModelConfig, extraction: ExtractionConfig) -> RunConfig:
    """Merge flags over config file values"""
    return RunConfig(
        command=args.command,
        corpus=getattr(args, "corpus", None),
        grammar=getattr(args, "grammar", None),
        lexicon=getattr(args, "lexicon", None),
        exceptions=getattr(args, "exceptions", None),
        input=getattr(args, "input", None),
        lattice=getattr(args, "lattice", None),
        model=getattr(args, "model", None),
        sentences=getattr(args, "sentences", None),
        out=getattr(args, "out", None),
        order=_pick(getattr(args, "order", None), model_config.order),
        strategy=_pick(getattr(args, "strategy", None), extraction.strategy),
        n=_pick(getattr(args, "n", None), extraction.nbest),
        beam=_pick(getattr(args, "beam", None), extraction.beam),
        global_beam=_pick(getattr(args, "global_beam", None), extraction.global_beam),
        seed=getattr(args, "seed", None),
        per_arc=_pick(getattr(args, "per_arc", None), extraction.per_arc_random),
        verify=getattr(args, "verify", False),
        output_format=args.output_format,
        verbose=args.verbose,
    )


def dispatch(args: argparse.Namespace) -> tuple[str, int]:
    """Run one parsed command; returns its output and exit code"""
    model_config = ModelConfig.from_file(args.config)
    extraction = ExtractionConfig.from_file(args.config)
    try:
        run = _run_config(args, model_config, extraction)
    except ValidationError as e:
        raise commands.UsageError(str(e)) from e

    if run.command == "train":
        return commands.cmd_train(run, model_config), EXIT_OK
    if run.command == "generate":
        return commands.cmd_generate(run, extraction, goal=args.goal, terminal=args.terminal), EXIT_OK
    if run.command == "extract":
        return commands.cmd_extract(run, extraction), EXIT_OK
    if run.command == "score":
        return commands.cmd_score(run, sentence=args.sentence), EXIT_OK
    if run.command == "rank":
        return commands.cmd_rank(run), EXIT_OK
    if run.command == "stats":
        return commands.cmd_stats(run), EXIT_OK
    output, ok = commands.cmd_validate(run)
    return output, EXIT_OK if ok else EXIT_DATA


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    started = time.process_time()
    try:
        output, code = dispatch(args)
    except commands.UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    sys.stdout.write(output)
    logger.info(f"Total execution time: {time.process_time() - started:.2f} CPU seconds")
    return code


if __name__ == "__main__":
    sys.exit(main())
