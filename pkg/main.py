import argparse
import json
import logging
import sys
from pathlib import Path

from tabulate import tabulate

from src.config import load_run_config
from src.config_validation import RunConfig
from src.constants import EXIT_OK, SUPPORTED_PLOT_KINDS
from src.error_handlers import exit_code_for
from src.exceptions import ConfigurationError, RadifAnalysisError
from src.logging_config import setup_logging
from src.pitch import QuartertoneNote
from src.pitch.scales import REFERENCE_SCALES, scales_document
from src.readers import PieceInput, read_manifest
from src.services import (
    analyze_corpus,
    analyze_piece,
    compare_report,
    emit_plot_data,
    load_bundle,
    load_report,
)
from src.utils import print_header, print_progress
from src.writers import write_corpus_outputs, write_piece_outputs

logger = logging.getLogger(__name__)


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="KEY=value configuration file")
    common.add_argument(
        "--output-dir", type=str, help="Directory for result files (default ./output)"
    )
    common.add_argument(
        "--json",
        action="store_true",
        help="Mirror the main result as JSON on standard output",
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", action="store_true", help="Warnings only")

    # analysis parameters that override the config file
    tuning = argparse.ArgumentParser(add_help=False)
    tuning.add_argument("--bin-width", type=float, help="Histogram bin width in cents")
    tuning.add_argument(
        "--smoothing-window", type=int, help="Moving-average window in bins (odd)"
    )
    tuning.add_argument(
        "--unvoiced-penalty", type=float, help="DTW cost of an unvoiced frame in cents"
    )
    tuning.add_argument("--dtw-band", type=int, help="Sakoe-Chiba band half width")

    parser = argparse.ArgumentParser(
        description="Radif interval analysis - measure performed intervals from F0 traces"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", parents=[common, tuning], help="Analyze one piece"
    )
    analyze.add_argument("--f0", required=True, help="time_sec,f0_hz CSV")
    analyze.add_argument(
        "--transcription",
        required=True,
        help="note_doubled_midi,duration_sec[,label] CSV",
    )
    analyze.add_argument("--onsets", help="Optional onset_sec CSV for evaluation")
    analyze.add_argument("--id", help="Piece id (defaults to the F0 file stem)")

    corpus = sub.add_parser(
        "corpus", parents=[common, tuning], help="Analyze every piece of a manifest"
    )
    corpus.add_argument(
        "--manifest",
        required=True,
        help="piece_id,f0_path,transcription_path[,onsets_path] CSV",
    )
    corpus.add_argument("--jobs", type=int, help="Worker processes (default: all CPUs)")
    corpus.add_argument("--min-samples", type=int, help="Minimum samples per interval")
    corpus.add_argument("--tonic", help="Tonic note label, e.g. C4")
    corpus.add_argument("--scales", help="Comma-separated reference scales")

    compare = sub.add_parser(
        "compare", parents=[common], help="Recompute scale comparisons of a report"
    )
    compare.add_argument("--report", required=True, help="report.json from corpus")
    compare.add_argument("--tonic", help="Tonic note label, e.g. C4")
    compare.add_argument("--scales", help="Comma-separated reference scales")

    scales = sub.add_parser(
        "scales", parents=[common], help="Print the built-in reference scales"
    )
    scales.add_argument("--format", choices=["json", "table"], default="table")

    plot = sub.add_parser(
        "plot-data", parents=[common], help="Write the data behind one figure type"
    )
    plot.add_argument("--bundle", required=True, help="bundle.json from analyze")
    plot.add_argument("--kind", required=True, choices=list(SUPPORTED_PLOT_KINDS))

    return parser.parse_args(argv)


def config_overrides(args: argparse.Namespace) -> dict[str, object]:
    """CLI flags as flat configuration keys; unset flags are skipped."""
    flags = {
        "BIN_WIDTH": "bin_width",
        "SMOOTHING_WINDOW": "smoothing_window",
        "UNVOICED_PENALTY": "unvoiced_penalty",
        "DTW_BAND": "dtw_band",
        "MIN_SAMPLES": "min_samples",
        "TONIC": "tonic",
        "REFERENCE_SCALES": "scales",
        "OUTPUT_DIR": "output_dir",
        "JOBS": "jobs",
    }
    return {
        key: getattr(args, attr)
        for key, attr in flags.items()
        if getattr(args, attr, None) is not None
    }


def _emit_json(payload: str) -> None:
    sys.stdout.write(payload + "\n")


def run_analyze(args: argparse.Namespace, config: RunConfig) -> None:
    """Analyze one piece and write its artifacts."""
    piece = PieceInput(
        id=args.id or Path(args.f0).stem,
        f0_path=Path(args.f0),
        transcription_path=Path(args.transcription),
        onsets_path=Path(args.onsets) if args.onsets else None,
    )
    piece.check_files()
    result = analyze_piece(piece, config)
    piece_dir = write_piece_outputs(result.bundle, Path(config.output.output_dir))

    bundle = result.bundle
    print_progress(
        f"Shahed {bundle.calibration.transcription_shahed} at "
        f"{bundle.calibration.audio_shahed_cents:.1f} cents "
        f"(offset {bundle.calibration.offset_cents:+.1f})"
    )
    for interval in bundle.intervals:
        print_progress(
            f"  {interval.lower}-{interval.upper}: {interval.size_cents:.1f} cents"
        )
    print_progress(f"Results written to {piece_dir}")
    if args.json:
        _emit_json(bundle.model_dump_json(indent=2))


def run_corpus(args: argparse.Namespace, config: RunConfig) -> None:
    """Analyze a manifest of pieces and write the corpus report."""
    pieces = read_manifest(args.manifest)
    for piece in pieces:
        piece.check_files()
    result = analyze_corpus(
        pieces, config, jobs=config.output.jobs, show_progress=not args.quiet
    )

    outdir = Path(config.output.output_dir)
    for bundle in result.bundles.values():
        write_piece_outputs(bundle, outdir)
    write_corpus_outputs(result.report, outdir)

    report = result.report
    if report.failed:
        logger.warning(f"{len(report.failed)} piece(s) failed: {', '.join(report.failed)}")
    print_progress(
        f"{len(report.pieces)} pieces, {report.n_measurements} measurements, "
        f"{len(report.intervals)} intervals"
    )
    if args.json:
        _emit_json(report.model_dump_json(indent=2))


def run_compare(args: argparse.Namespace, config: RunConfig) -> None:
    """Recompute scale rows and comparisons of a saved report."""
    saved = load_report(args.report)
    tonic = QuartertoneNote.from_label(args.tonic) if args.tonic else None
    report = compare_report(
        saved, config, tonic=tonic, scales=config.analysis.reference_scales
    )
    write_corpus_outputs(report, Path(config.output.output_dir))
    for comparison in report.comparisons:
        print_progress(
            f"{comparison.scale}: "
            + ", ".join(f"{row.degree} {row.delta:+.0f}" for row in comparison.rows)
        )
    if args.json:
        _emit_json(report.model_dump_json(indent=2))


def run_scales(args: argparse.Namespace) -> None:
    """Print every built-in reference scale."""
    if args.json or args.format == "json":
        _emit_json(json.dumps(scales_document(), ensure_ascii=False, indent=2))
        return
    for name, scale in REFERENCE_SCALES.items():
        print(f"\n{name}")
        print(tabulate(scale.as_pairs(), headers=["degree", "cents"], floatfmt=".0f"))


def run_plot_data(args: argparse.Namespace, config: RunConfig, outdir_given: bool) -> None:
    """Write the data behind one figure type from a saved bundle."""
    bundle_path = Path(args.bundle)
    bundle = load_bundle(bundle_path)
    outdir = Path(config.output.output_dir) if outdir_given else bundle_path.parent
    written = emit_plot_data(bundle, args.kind, outdir)
    print_progress(f"{SUPPORTED_PLOT_KINDS[args.kind]} data written: {written}")


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    setup_logging(level)

    try:
        if args.command == "scales":
            run_scales(args)
            return EXIT_OK

        config = load_run_config(args.config, overrides=config_overrides(args))
        if args.command != "plot-data":
            print_header()
        if args.command == "analyze":
            run_analyze(args, config)
        elif args.command == "corpus":
            run_corpus(args, config)
        elif args.command == "compare":
            run_compare(args, config)
        elif args.command == "plot-data":
            run_plot_data(args, config, outdir_given=args.output_dir is not None)
    except (RadifAnalysisError, ConfigurationError) as e:
        logger.error(str(e), exc_info=logger.isEnabledFor(logging.DEBUG))
        return exit_code_for(e)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
