"""Command line entry point: ``rankrank <subcommand> [options]``.

Every subcommand writes its tables into ``--out``. On failure a JSON object
``{"error": ..., "message": ...}`` goes to stderr and the exit status is 1.
The environment variable ``RANKRANK_SEED`` overrides ``--seed``.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import FitUnavailableWarning, RankRankError
from .export import svg_scatter, write_csv, write_json
from .fakegen import DISTRIBUTIONS, FakeSpec, generate_fake_corpus
from .freqstats import compare_models_aic, fit_heaps, fit_zipf, rank_by_rule1, vocabulary_growth
from .ingest import SCHEME_KINDS, Corpus, SegmentationScheme, tokenize
from .linkcol import fit_col_sqrtlog, fit_link_log, heaps_link_consistency, linkcol_tables
from .network import build_network, degree_distribution, network_metrics
from .rrd import build_rrd, fit_scaling, fog_geometry_checks, geometric_ratio, layer_curves
from .segeval import correlate, evaluate_segmentation, segmentation_battery

DEFAULT_SEED = 0
FORMATS = ("csv", "json", "svg")


# --------------------------------------------------------------------- helpers


def _seed(args) -> int:
    env = os.environ.get("RANKRANK_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"RANKRANK_SEED must be an integer, got {env!r}") from None
    return args.seed


def _formats(args) -> set[str]:
    out = {f.strip() for f in args.format.split(",") if f.strip()}
    bad = out - set(FORMATS)
    if bad:
        raise ValueError(f"unknown format(s) {sorted(bad)}; choose from {FORMATS}")
    return out


def _scheme(args) -> SegmentationScheme:
    return SegmentationScheme(kind=args.scheme, syll_delim=args.syll_delim, n=args.ngram)


def _read(path) -> str:
    return Path(path).read_bytes().decode("utf-8")


def _load(args, paths=None) -> Corpus:
    paths = args.input if paths is None else paths
    if not paths:
        raise ValueError("--input is required")
    scheme = _scheme(args)
    corpus = None
    for p in paths:
        c = tokenize(_read(p), scheme)
        corpus = c if corpus is None else corpus + c
    return corpus


def _out(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fit_dict(fit, *names) -> dict:
    return {n: getattr(fit, n) for n in names}


# ----------------------------------------------------------------- subcommands


def cmd_analyze(args) -> dict:
    corpus = _load(args)
    out, fmts = _out(args), _formats(args)
    summary = {"L": corpus.length_L, "V_1": len(corpus.word_types), "H_1": len(corpus.syllable_types)}
    for unit in ("word", "syllable"):
        frd = rank_by_rule1(corpus, unit)
        if "csv" in fmts:
            write_csv(
                out / f"{unit}_frd.csv",
                ["rank", "form", "freq", "normalized", "first"],
                zip(frd.ranks, frd.forms, frd.freqs, frd.normalized, frd.first),
            )
        z = fit_zipf(frd)
        summary[f"zipf_{unit}"] = _fit_dict(z, "a", "b", "goodness", "fit_range", "available")
        try:
            cmp = compare_models_aic(frd)
            summary[f"aic_{unit}"] = {
                "aic": cmp.aic, "params": cmp.params, "winner": cmp.winner, "n_min": cmp.n_min, "n": cmp.n_samples,
            }
        except ValueError as exc:
            summary[f"aic_{unit}"] = {"available": False, "reason": str(exc)}
    h = fit_heaps(corpus)
    summary["heaps"] = _fit_dict(h, "kappa", "beta", "goodness", "available")
    if "csv" in fmts:
        growth = vocabulary_growth(corpus)
        pts = np.unique(np.geomspace(1, len(growth), 200).astype(np.int64)) if len(growth) else []
        write_csv(out / "heaps.csv", ["prefix_length", "vocabulary"], ((int(n), growth[n - 1]) for n in pts))
    if "json" in fmts:
        write_json(out / "analyze.json", summary)
    return summary


def cmd_rrd(args) -> dict:
    corpus = _load(args)
    out, fmts = _out(args), _formats(args)
    rrd = build_rrd(corpus)
    fit = fit_scaling(rrd, delta=args.delta, n_max=args.nmax)
    rho, r2, truncated = geometric_ratio(rrd.boundaries.H, n_max=max(3, args.nmax or 20))
    fog = fog_geometry_checks(rrd, fit if fit.available else None, delta=args.delta)
    summary = {
        **fit.to_dict(),
        "n_max": args.nmax,
        "points": len(rrd),
        "f1_points": int(rrd.f1.sum()),
        "V_1": int(rrd.boundaries.V[0]),
        "H_1": int(rrd.boundaries.H[0]),
        "geometric_ratio": {"rho": rho, "R2": r2, "truncated": truncated},
        "fog": fog.to_dict(),
    }
    if "csv" in fmts:
        write_csv(
            out / "rrd.csv",
            ["x", "y", "n_w", "n_s", "residual", "layer_residual", "on_f1", "word", "syllable"],
            zip(rrd.x, rrd.y, rrd.n_w, rrd.n_s, fit.residuals, fit.layer_residuals, rrd.f1, rrd.words, rrd.syllables),
        )
        write_csv(out / "boundaries.csv", ["n", "V_n", "H_n"], _boundary_rows(rrd.boundaries))
        if fit.available:
            curves = layer_curves(rrd, fit)
            rows = ((x + 1, o, ys[x]) for o, ys in curves.items() for x in range(len(ys)))
            write_csv(out / "layers.csv", ["x", "offset", "y_fit"], rows)
    if "json" in fmts:
        write_json(out / "scaling.json", summary)
    if "svg" in fmts:
        svg_scatter(out / "rrd.svg", rrd.x, rrd.y)
    return summary


def _boundary_rows(b):
    n = max(len(b.V), len(b.H))
    for i in range(n):
        yield i + 1, (b.V[i] if i < len(b.V) else 0), (b.H[i] if i < len(b.H) else 0)


def cmd_network(args) -> dict:
    corpus = _load(args)
    out, fmts = _out(args), _formats(args)
    net = build_network(corpus)
    metrics = network_metrics(net, k_min=args.kmin, sample_size=args.sample_size, seed=_seed(args))
    if "csv" in fmts:
        rows = [("word", u, v) for u, v in net.edges("word")] + [("syllable", u, v) for u, v in net.edges("syllable")]
        write_csv(out / "edges.csv", ["layer", "u", "v"], rows)
        drows = []
        for layer in ("word", "syllable"):
            d = degree_distribution(net, layer)
            drows.append((layer, 0, d.n_zero, ""))
            drows.extend((layer, k, int(round(p * (d.n_vertices - d.n_zero))), p) for k, p in zip(d.k, d.P))
        write_csv(out / "degrees.csv", ["layer", "k", "count", "P"], drows)
    if "json" in fmts:
        write_json(out / "metrics.json", metrics)
    return metrics


def cmd_linkcol(args) -> dict:
    corpus = _load(args)
    out, fmts = _out(args), _formats(args)
    t = linkcol_tables(corpus)
    lf = fit_link_log(t.link_values)
    cf = fit_col_sqrtlog(t.col_values)
    V1, H1 = len(corpus.word_types), len(corpus.syllable_types)
    summary = {
        "C": lf.C, "D": lf.D, "link_R2": lf.goodness,
        "E": cf.E, "F": cf.F, "col_R2": cf.goodness,
        "M": t.M, "D_over_C": lf.ratio, "ln_V1": math.log(V1),
        "F_over_E": cf.ratio, "ln_H1": math.log(H1),
    }
    h = fit_heaps(corpus)
    if lf.available and h.available and t.M > 0:
        summary["heaps_link"] = heaps_link_consistency(lf.C, h, corpus.length_L, t.M).to_dict()
    else:
        summary["heaps_link"] = {"available": False}
    if "csv" in fmts:
        write_csv(out / "link.csv", ["x_new", "word", "link"], zip(range(1, V1 + 1), t.link_forms, t.link_values))
        write_csv(out / "col.csv", ["y_new", "syllable", "col"], zip(range(1, H1 + 1), t.col_forms, t.col_values))
    if "json" in fmts:
        write_json(out / "linkcol.json", summary)
    return summary


def _params(items) -> dict:
    params = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {item!r}")
        params[key] = float(val)
    return params


def cmd_fakegen(args) -> dict:
    out = _out(args)
    spec = FakeSpec(
        n=args.n,
        alphabet_size=args.alphabet,
        vocab_size=args.vocab,
        length_L=args.length,
        distribution=args.distribution,
        params=_params(args.param),
        seed=_seed(args),
        exact_quota=args.exact_quota,
    )
    fake = generate_fake_corpus(spec)
    (out / "fake.txt").write_text(fake.corpus.to_text(syll_delim=args.syll_delim) + "\n", encoding="utf-8")
    (out / "fake_spec.json").write_text(spec.to_json() + "\n", encoding="utf-8")
    return {"L": fake.corpus.length_L, "V_1": len(fake.corpus.word_types)}


def cmd_segeval(args) -> dict:
    if not args.input:
        raise ValueError("--input (reference corpus) is required")
    reference = _load(args, args.input[:1])
    out, fmts = _out(args), _formats(args)
    name = Path(args.input[0]).stem
    if args.candidate:
        reports = []
        for path in args.candidate:
            cand = _load(args, [path])
            reports.append(evaluate_segmentation(cand, reference, Path(path).stem, name, args.delta, args.nmax))
    else:
        reports = segmentation_battery(reference, args.ngram or 2, name, _seed(args), delta=args.delta, n_max=args.nmax)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FitUnavailableWarning)
        rho = correlate([r.A for r in reports], [r.index for r in reports]) if len(reports) >= 3 else math.nan
    summary = {"reports": [r.to_dict() for r in reports], "spearman_rho": rho}
    if "csv" in fmts:
        cols = ["algorithm", "corpus", "A", "A_bank", "G", "L", "M", "V_1", "index"]
        write_csv(out / "segeval.csv", cols, ([getattr(r, c) for c in cols] for r in reports))
    if "json" in fmts:
        write_json(out / "segeval.json", summary)
        for r in reports:
            write_json(out / f"segeval_{r.algorithm}.json", r.to_dict())
    return summary


def table1_row(corpus: Corpus, delta: float = 0.5, n_max: int | None = 20) -> dict:
    """Zipf ``(a, b)`` and ``(SP, M, V_1, L)`` for one corpus."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FitUnavailableWarning)
        z = fit_zipf(rank_by_rule1(corpus, "word"))
        sp = fit_scaling(build_rrd(corpus), delta=delta, n_max=n_max).SP if len(corpus) else math.nan
    M = linkcol_tables(corpus).M
    return {"a": z.a, "b": z.b, "SP": sp, "M": M, "V_1": len(corpus.word_types), "L": corpus.length_L}


def cmd_table1(args) -> dict:
    if not args.input:
        raise ValueError("--input is required")
    out, fmts = _out(args), _formats(args)
    rows = []
    for path in args.input:
        row = table1_row(_load(args, [path]), args.delta, args.nmax)
        rows.append({"name": Path(path).stem, **row})
    cols = ["name", "a", "b", "SP", "M", "V_1", "L"]
    if "csv" in fmts:
        write_csv(out / "table1.csv", cols, ([_nan_text(r[c]) for c in cols] for r in rows))
    if "json" in fmts:
        write_json(out / "table1.json", rows)
    return {"rows": rows}


def _nan_text(v):
    return "NAN" if isinstance(v, float) and math.isnan(v) else v


COMMANDS = {
    "analyze": cmd_analyze,
    "rrd": cmd_rrd,
    "network": cmd_network,
    "linkcol": cmd_linkcol,
    "fakegen": cmd_fakegen,
    "segeval": cmd_segeval,
    "table1": cmd_table1,
}


# ---------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], help="input file (repeatable)")
    common.add_argument("--scheme", default="presegmented", choices=SCHEME_KINDS)
    common.add_argument("--syll-delim", default="-", help="syllable delimiter for presegmented input")
    common.add_argument("--ngram", type=int, default=None, help="word length for the ngram-fixed scheme")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (RANKRANK_SEED overrides)")
    common.add_argument("--format", default="csv,json", help="comma list of csv, json, svg")
    common.add_argument("--delta", type=float, default=0.5, help="layer half-width in layer spacings")
    common.add_argument("--nmax", type=int, default=20, help="frequency window of the scaling and ratio fits")
    common.add_argument("--kmin", type=int, default=2, help="smallest degree in the power-law fit")
    common.add_argument("--sample-size", type=int, default=1000, help="BFS sources for path lengths")

    parser = argparse.ArgumentParser(prog="rankrank", description="Word/syllable rank-rank analysis toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="FRD, Zipf, Heaps and AIC")
    sub.add_parser("rrd", parents=[common], help="rank-rank distribution, scaling fit, SP/G")
    sub.add_parser("network", parents=[common], help="word/syllable network metrics")
    sub.add_parser("linkcol", parents=[common], help="Link/Col tables and fits")
    fg = sub.add_parser("fakegen", parents=[common], help="synthetic N-gram corpus")
    fg.add_argument("--n", type=int, default=2)
    fg.add_argument("--alphabet", type=int, default=3000)
    fg.add_argument("--vocab", type=int, default=4000)
    fg.add_argument("--length", type=int, default=20_000)
    fg.add_argument("--distribution", default="zipf", choices=DISTRIBUTIONS)
    fg.add_argument("--param", action="append", help="shape parameter key=value (repeatable)")
    fg.add_argument("--exact-quota", action="store_true")
    se = sub.add_parser("segeval", parents=[common], help="segmentation accuracy and index")
    se.add_argument("--candidate", action="append", default=[], help="candidate segmentation (repeatable)")
    sub.add_parser("table1", parents=[common], help="one summary row per input")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", FitUnavailableWarning)
            COMMANDS[args.command](args)
    except (RankRankError, ValueError, TypeError, OSError, UnicodeDecodeError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
