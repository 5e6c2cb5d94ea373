"""Word/syllable rank-rank analysis.

The public API re-exports the main entry point of each module; the
modules themselves hold the full set of helpers.
"""
from .exceptions import FitUnavailableWarning, MalformedInputError, RankRankError
from .ingest import Corpus, SegmentationScheme, tokenize
from .freqstats import compare_models_aic, fit_heaps, fit_zipf, rank_by_rule1
from .rrd import build_rrd, compute_sp, extract_f1, fit_scaling, partition_count, predict_midpoint
from .network import build_network, network_metrics
from .linkcol import fit_col_sqrtlog, fit_link_log, linkcol_tables
from .fakegen import FakeSpec, generate_fake_corpus
from .segeval import accuracy, correlate, evaluate_segmentation, seg_index

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "FakeSpec",
    "FitUnavailableWarning",
    "MalformedInputError",
    "RankRankError",
    "SegmentationScheme",
    "accuracy",
    "build_network",
    "build_rrd",
    "compare_models_aic",
    "compute_sp",
    "correlate",
    "evaluate_segmentation",
    "extract_f1",
    "fit_col_sqrtlog",
    "fit_heaps",
    "fit_link_log",
    "fit_scaling",
    "fit_zipf",
    "generate_fake_corpus",
    "linkcol_tables",
    "network_metrics",
    "partition_count",
    "predict_midpoint",
    "rank_by_rule1",
    "seg_index",
    "tokenize",
]
