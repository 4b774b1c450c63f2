"""
Verifier package for qdual.
Contains the report model and one module per verification suite.
"""
from .report import (
    CONJECTURAL, EXIT_FALSIFIED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, EXPLORATORY, PROVED, SKIPPED,
    CaseRecord, Check, Report, compare, compare_float, compare_series, run_suite,
)
from .conjecture import duality_check, pair_representatives, sweep_main, verify_main
from .s41 import suite_41
from .s42 import suite_42
from .s43 import suite_43
from .s44 import suite_44
from .section2 import suite_section2
from .section3 import suite_section3
from .classical import ClassicalResult, classical_limit_check, suite_classical

__all__ = [
    'CONJECTURAL',
    'EXIT_FALSIFIED',
    'EXIT_INTERNAL',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXPLORATORY',
    'PROVED',
    'SKIPPED',
    'CaseRecord',
    'Check',
    'Report',
    'compare',
    'compare_float',
    'compare_series',
    'run_suite',
    'duality_check',
    'pair_representatives',
    'sweep_main',
    'verify_main',
    'suite_41',
    'suite_42',
    'suite_43',
    'suite_44',
    'suite_section2',
    'suite_section3',
    'ClassicalResult',
    'classical_limit_check',
    'suite_classical',
]
