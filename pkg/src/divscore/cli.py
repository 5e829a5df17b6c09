"""Command-line interface.

Subcommands: score, intdiv, ngram-div, mode-div, report. Output goes to
stdout as a single JSON object (default) or TSV lines, with every float
printed to 6 significant digits; identical inputs and flags produce
byte-identical output. Exit codes: 0 success, 2 invalid input, 3 numerical
failure. Nothing is printed on failure except the diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .baselines import intdiv, intdiv_from_features, mean_ngram_diversity, mode_diversity
from .errors import KindMismatchError, NumericalError, ValidationError
from .loaders import (
    DatasetHandle,
    load_dense_csv,
    load_fingerprints,
    load_kernel_csv,
    load_labels,
    load_texts,
    load_weights,
)
from .matrix import FeatureMatrix, KernelSpec, SimilarityMatrix, WeightVector, gram_from_features
from .similarity import ClassDistributionSample, build_kernel
from .spectrum import (
    SpectrumResult,
    nystrom_vendi,
    vendi_score,
    vendi_score_from_features,
    vendi_score_weighted,
)

KIND_CHOICES = ["cosine", "rbf", "ngram", "tanimoto", "prob-product", "precomputed"]


# --- deterministic rendering ----------------------------------------------


def _fmt(x: float) -> str:
    """6 significant digits, trailing zeros kept (1 -> '1.00000')."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:#.6g}"


def _render_json(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_render_json(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_render_json(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def _render_single_tsv(obj: dict) -> str:
    cols = ["metric", "score", "n"]
    if "per_n" in obj:
        cols.append("per_n")
    head = "\t".join(cols)
    row = [obj["metric"], _fmt(obj["score"]), str(obj["n"])]
    if "per_n" in obj:
        row.append(",".join(_fmt(v) for v in obj["per_n"]))
    return head + "\n" + "\t".join(row)


def _render_report_tsv(obj: dict) -> str:
    cols = ["category", "n", "vendi_score", "intdiv", "ngram_diversity", "mode_diversity", "eigenvalues_top10"]
    lines = ["\t".join(cols)]
    for rec in obj["records"]:
        lines.append(
            "\t".join(
                [
                    rec["category"],
                    str(rec["n"]),
                    _fmt(rec["vendi_score"]),
                    _fmt(rec["intdiv"]),
                    _fmt(rec["ngram_diversity"]) if "ngram_diversity" in rec else "",
                    _fmt(rec["mode_diversity"]) if "mode_diversity" in rec else "",
                    ",".join(_fmt(v) for v in rec["eigenvalues_top10"]),
                ]
            )
        )
    return "\n".join(lines)


# --- loading and scoring pipeline ------------------------------------------


def _with_path(path: str, fn, *args, **kwargs):
    """Run a loader, prefixing any failure with the file it came from."""
    try:
        return fn(*args, **kwargs)
    except (ValidationError, NumericalError) as e:
        e.args = (f"{path}: {e.args[0] if e.args else e}",)
        raise
    except OSError as e:
        raise ValidationError(f"{path}: {e.strerror or e}") from None


def _resolve_spec(args) -> KernelSpec:
    kind = args.kernel
    if kind is None:
        kind = "cosine" if args.input.lower().endswith(".csv") else "ngram"
    if kind == "rbf":
        if args.rbf_sigma is None:
            raise ValidationError("--kernel rbf requires --rbf-sigma")
        return KernelSpec("rbf", sigma=args.rbf_sigma)
    if kind == "ngram":
        return KernelSpec("ngram", max_n=args.ngram_max)
    if kind == "tanimoto":
        if args.bits is None:
            raise ValidationError("--kernel tanimoto requires --bits")
        return KernelSpec("tanimoto", bits=args.bits)
    return KernelSpec(kind)


def _load_input(spec: KernelSpec, args) -> DatasetHandle | SimilarityMatrix:
    path = args.input
    if spec.kind == "precomputed":
        return _with_path(path, load_kernel_csv, path, header=args.header)
    if spec.kind in ("cosine", "rbf"):
        return _with_path(path, load_dense_csv, path, header=args.header)
    if spec.kind == "prob-product":
        handle = _with_path(path, load_dense_csv, path, header=args.header)
        return _distributions(handle, args.header, path)
    if spec.kind == "ngram":
        return _with_path(
            path, load_texts, path, lowercase=args.lowercase, allow_empty=args.allow_empty
        )
    if spec.kind == "tanimoto":
        return _with_path(path, load_fingerprints, path, args.bits)
    raise ValidationError(f"unsupported kernel kind {spec.kind!r}")


def _distributions(handle: DatasetHandle, header: bool, path: str) -> DatasetHandle:
    offset = 2 if header else 1
    samples = []
    for i, row in enumerate(handle.items):
        try:
            samples.append(ClassDistributionSample(row))
        except ValidationError as e:
            raise type(e)(f"{path}: line {i + offset}: {e}") from None
    return replace(handle, kind="distributions", items=samples)


def _attach(handle: DatasetHandle, args) -> DatasetHandle:
    if args.labels:
        handle = replace(handle, labels=_with_path(args.labels, load_labels, args.labels))
    if args.weights:
        handle = replace(handle, weights=_with_path(args.weights, load_weights, args.weights))
    return handle


def _to_similarity(built: FeatureMatrix | SimilarityMatrix) -> SimilarityMatrix:
    return gram_from_features(built) if isinstance(built, FeatureMatrix) else built


def _spectrum(
    built: FeatureMatrix | SimilarityMatrix,
    weights: WeightVector | None,
    nystrom_m: int,
    seed: int,
) -> SpectrumResult:
    """One scoring path for score and report: weighted and Nystrom need the
    full Gram; otherwise the covariance route is used whenever d < n."""
    if weights is not None:
        return vendi_score_weighted(_to_similarity(built), weights)
    if nystrom_m:
        return nystrom_vendi(_to_similarity(built), nystrom_m, seed)
    if isinstance(built, FeatureMatrix):
        if built.dim < built.n:
            return vendi_score_from_features(built)
        return vendi_score(gram_from_features(built))
    return vendi_score(built)


def _reject(args, *, weights_ok: bool = False, nystrom_ok: bool = False):
    if args.weights and not weights_ok:
        raise ValidationError(f"--weights does not apply to {args.command}")
    if args.nystrom and not nystrom_ok:
        raise ValidationError(f"--nystrom does not apply to {args.command}")
    if args.weights and args.nystrom:
        raise ValidationError("--weights cannot be combined with --nystrom")


# --- subcommands ------------------------------------------------------------


def _cmd_score(args) -> str:
    _reject(args, weights_ok=True, nystrom_ok=True)
    spec = _resolve_spec(args)
    data = _load_input(spec, args)
    weights = _with_path(args.weights, load_weights, args.weights) if args.weights else None
    if isinstance(data, SimilarityMatrix):
        built: FeatureMatrix | SimilarityMatrix = data
    else:
        built = build_kernel(data.items, spec)
    if weights is not None and len(weights) != data.n:
        raise ValidationError(f"{args.weights}: {len(weights)} weights for {data.n} samples")
    res = _spectrum(built, weights, args.nystrom, args.seed)
    obj = {
        "metric": "vendi-score",
        "score": res.score,
        "n": res.n,
        "kernel": spec.echo(),
        "eigenvalues_top10": [float(v) for v in res.top_eigenvalues(10)],
    }
    return _render_json(obj) if args.format == "json" else _render_single_tsv(obj)


def _cmd_intdiv(args) -> str:
    _reject(args)
    spec = _resolve_spec(args)
    data = _load_input(spec, args)
    if isinstance(data, SimilarityMatrix):
        value, n = intdiv(data), data.n
    else:
        built = build_kernel(data.items, spec)
        if isinstance(built, FeatureMatrix):
            value, n = intdiv_from_features(built), built.n
        else:
            value, n = intdiv(built), built.n
    obj = {
        "metric": "intdiv",
        "score": value,
        "n": n,
        "kernel": spec.echo(),
        "eigenvalues_top10": [],
    }
    return _render_json(obj) if args.format == "json" else _render_single_tsv(obj)


def _cmd_ngram_div(args) -> str:
    _reject(args)
    if args.kernel not in (None, "ngram"):
        raise KindMismatchError("ngram-div works on text input; drop --kernel or use ngram")
    handle = _with_path(
        args.input, load_texts, args.input, lowercase=args.lowercase, allow_empty=args.allow_empty
    )
    per_n, mean = mean_ngram_diversity(handle.items, args.ngram_max)
    obj = {
        "metric": "ngram-diversity",
        "score": mean,
        "n": handle.n,
        "kernel": {"kind": "ngram", "max_n": args.ngram_max},
        "per_n": per_n,
        "eigenvalues_top10": [],
    }
    return _render_json(obj) if args.format == "json" else _render_single_tsv(obj)


def _cmd_mode_div(args) -> str:
    _reject(args)
    if args.kernel not in (None, "prob-product"):
        raise KindMismatchError(
            "mode-div works on class-distribution rows; drop --kernel or use prob-product"
        )
    handle = _with_path(args.input, load_dense_csv, args.input, header=args.header)
    handle = _distributions(handle, args.header, args.input)
    value = mode_diversity(handle.items)
    obj = {
        "metric": "mode-diversity",
        "score": value,
        "n": handle.n,
        "kernel": None,
        "eigenvalues_top10": [],
    }
    return _render_json(obj) if args.format == "json" else _render_single_tsv(obj)


def _subset(data: DatasetHandle | SimilarityMatrix, idx: list[int]):
    if isinstance(data, SimilarityMatrix):
        return SimilarityMatrix(np.array(data.entries[np.ix_(idx, idx)]))
    if data.kind == "dense":
        return replace(data, items=data.items[idx], labels=None, weights=None)
    return replace(data, items=[data.items[i] for i in idx], labels=None, weights=None)


def _cmd_report(args) -> str:
    _reject(args, weights_ok=True)
    if not args.labels:
        raise ValidationError("report requires --labels")
    spec = _resolve_spec(args)
    data = _load_input(spec, args)
    labels = _with_path(args.labels, load_labels, args.labels)
    weights = _with_path(args.weights, load_weights, args.weights) if args.weights else None
    n_total = data.n
    if len(labels) != n_total:
        raise ValidationError(f"{args.labels}: {len(labels)} labels for {n_total} samples")
    if weights is not None and len(weights) != n_total:
        raise ValidationError(f"{args.weights}: {len(weights)} weights for {n_total} samples")

    groups: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)

    records = []
    for lab, idx in groups.items():
        sub = _subset(data, idx)
        sub_weights = None
        if weights is not None:
            w = weights.p[idx]
            total = float(w.sum())
            if total <= 0:
                raise ValidationError(f"category {lab!r} has zero total weight")
            sub_weights = WeightVector(w / total)
        if isinstance(sub, SimilarityMatrix):
            built: FeatureMatrix | SimilarityMatrix = sub
        else:
            built = build_kernel(sub.items, spec)
        res = _spectrum(built, sub_weights, 0, args.seed)
        div = intdiv_from_features(built) if isinstance(built, FeatureMatrix) else intdiv(built)
        rec = {
            "category": lab,
            "n": len(idx),
            "vendi_score": res.score,
            "intdiv": div,
        }
        if spec.kind == "ngram":
            _, rec["ngram_diversity"] = mean_ngram_diversity(sub.items, args.ngram_max)
        if spec.kind == "prob-product":
            rec["mode_diversity"] = mode_diversity(sub.items)
        rec["eigenvalues_top10"] = [float(v) for v in res.top_eigenvalues(10)]
        records.append(rec)

    obj = {
        "metric": "report",
        "version": __version__,
        "kernel": spec.echo(),
        "records": records,
    }
    return _render_json(obj) if args.format == "json" else _render_report_tsv(obj)


# --- entry point ------------------------------------------------------------


_COMMANDS = {
    "score": _cmd_score,
    "intdiv": _cmd_intdiv,
    "ngram-div": _cmd_ngram_div,
    "mode-div": _cmd_mode_div,
    "report": _cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input file (CSV, text lines, or hex lines)")
    common.add_argument("--kernel", choices=KIND_CHOICES, default=None,
                        help="similarity kind; defaults to cosine for .csv input, ngram otherwise")
    common.add_argument("--weights", default=None, help="per-sample probability file")
    common.add_argument("--labels", default=None, help="per-sample category file")
    common.add_argument("--rbf-sigma", type=float, default=None, help="bandwidth for --kernel rbf")
    common.add_argument("--ngram-max", type=int, default=4, help="largest n-gram order (default 4)")
    common.add_argument("--bits", type=int, default=None, help="fingerprint width for --kernel tanimoto")
    common.add_argument("--nystrom", type=int, default=0, metavar="M",
                        help="approximate with M sampled columns (0 = exact)")
    common.add_argument("--seed", type=int, default=0, help="seed for --nystrom sampling")
    common.add_argument("--format", choices=["json", "tsv"], default="json")
    common.add_argument("--lowercase", action="store_true", help="lowercase text before tokenizing")
    common.add_argument("--header", action="store_true", help="skip one CSV header row")
    common.add_argument("--allow-empty", action="store_true", help="skip empty text lines")

    parser = argparse.ArgumentParser(
        prog="divscore",
        description="Diversity scores for sample collections via similarity spectra.",
    )
    parser.add_argument("--version", action="version", version=f"divscore {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("score", parents=[common], help="Vendi Score (effective sample count)")
    sub.add_parser("intdiv", parents=[common], help="1 - mean pairwise similarity")
    sub.add_parser("ngram-div", parents=[common], help="distinct/total n-gram ratio")
    sub.add_parser("mode-div", parents=[common], help="effective class count of the mean distribution")
    sub.add_parser("report", parents=[common], help="per-category breakdown")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = _COMMANDS[args.command](args)
    except ValidationError as e:
        print(f"divscore: error: {e}", file=sys.stderr)
        return 2
    except NumericalError as e:
        print(f"divscore: numerical error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"divscore: error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
