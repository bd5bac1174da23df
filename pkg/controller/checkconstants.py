"""
This module defines constants shared by the law checkers, plus the logging setup.

Constants:
    ENUMERATION_CEILING (int): Largest number of candidate tables an oracle
        enumeration may visit before a `ScaleGuardError` is raised.
    DEFAULT_PSI_CAP (int): Ψ-subset cap used when a CLI bounds string omits it.
    DEFAULT_CARRIER_LIMIT (int): Carrier limit used when a CLI bounds string omits it.
    DEFAULT_WORKERS (int): Worker count of the suite work pool.
    DEFAULT_UNIVERSE_FUEL (int): Reduction budget used to normalize enumerated
        terms into codes when no bounds are at hand.
    LOG_FORMAT (str): Format string of the stream handler.
    LAW_* (str): Law names reported in `CheckResult.law`.
Functions:
    configureLogging(level): Installs a single stream handler on the root logger.
"""

import logging
import os
import sys

ENUMERATION_CEILING: int = 1000000
DEFAULT_PSI_CAP: int = 2
DEFAULT_CARRIER_LIMIT: int = 2
DEFAULT_WORKERS: int = 1
DEFAULT_UNIVERSE_FUEL: int = 10000
LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL_VARIABLE: str = "WORKBENCH_LOG_LEVEL"

LAW_ORDER: str = "order"
LAW_BOUNDS: str = "top-bottom"
LAW_MEET: str = "meet"
LAW_JOIN: str = "join"
LAW_RESIDUATION: str = "residuation"
LAW_EVIDENCE: str = "evidence"
LAW_REFLEXIVITY: str = "reflexivity"
LAW_TRANSITIVITY: str = "transitivity"
LAW_TOP: str = "top"
LAW_CONJUNCTION: str = "conjunction"
LAW_UIMP_INTRO: str = "universal-implication-intro"
LAW_UIMP_EVAL: str = "universal-implication-eval"
LAW_DEDUCTION: str = "deduction"
LAW_UFAM_ORDER: str = "ufam-order"
LAW_ADJUNCTION: str = "adjunction"
LAW_BECK_CHEVALLEY: str = "beck-chevalley"
LAW_SYM: str = "sym"
LAW_TRS: str = "trs"
LAW_EXT: str = "ext"
LAW_SV: str = "sv"
LAW_TOT: str = "tot"
LAW_EQ: str = "eq"
LAW_FEXT: str = "fext"
LAW_MONO: str = "mono"
LAW_CLASSIFIER: str = "classifier"
LAW_ET_ORDER: str = "et-order"
LAW_NATURALITY: str = "naturality"
LAW_INC: str = "inc"
LAW_IDM: str = "idm"
LAW_PRS: str = "prs"
LAW_DEN: str = "den"
LAW_SEP: str = "sep"
LAW_DSC: str = "dsc"
LAW_J_DISTRIBUTION: str = "j-distribution"
LAW_LEQ: str = "leq"
LAW_ORACLE: str = "sheaf-oracle"
LAW_POLE: str = "pole"
LAW_MODALITY: str = "modality"
LAW_AFTER_RETURN: str = "after-return"
LAW_MACHINE_EQUATIONS: str = "machine-equations"
LAW_PROOF_LIKE: str = "proof-like"
LAW_DNE: str = "dne"
LAW_LIFT: str = "lift"


def configureLogging(level: str | int | None = None):
    """
    Configures the root logger once for the CLI and the HTTP app.
    Args:
        level (str | int | None): Explicit level. Falls back to the
            `WORKBENCH_LOG_LEVEL` environment variable, then to WARNING.
    """
    if level is None:
        level = os.environ.get(LOG_LEVEL_VARIABLE, "WARNING")
    root = logging.getLogger()
    handler = next((h for h in root.handlers if getattr(h, "_workbench", False)), None)
    if handler is None:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._workbench = True
        root.addHandler(handler)
    # follow sys.stderr when it is swapped between invocations
    handler.stream = sys.stderr
    root.setLevel(level)
