"""Model generators, the formula bank and the invariant suites."""

from .bank import BANK_VERSION, FILLERS, BankEntry, bank_text, formula_bank
from .generate import GenSpec, generate
from .suites import SUITE_NAMES, SuiteReport, find_countermodel, run_suite

__all__ = [
    "BANK_VERSION",
    "FILLERS",
    "BankEntry",
    "GenSpec",
    "SUITE_NAMES",
    "SuiteReport",
    "bank_text",
    "find_countermodel",
    "formula_bank",
    "generate",
    "run_suite",
]
