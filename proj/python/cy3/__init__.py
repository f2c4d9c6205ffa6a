"""Exact analysis of cubic and c2 forms on rank 2 divisor lattices.

Forms are passed as dicts in the CLI's JSON schema, or as JSON strings.
"""

import json

from . import _cy3
from ._cy3 import DomainError

__all__ = ["DomainError", "classify", "analyze", "enumerate_pairs", "apply_flop", "min_effectivity", "run_cli"]


def _text(forms):
    return forms if isinstance(forms, str) else json.dumps(forms)


def classify(forms):
    return json.loads(_cy3.classify(_text(forms)))


def analyze(forms, mu0=None, r=1, m_cap=None):
    return json.loads(_cy3.analyze(_text(forms), None if mu0 is None else str(mu0), r, m_cap))


def enumerate_pairs(c2e_upper):
    return json.loads(_cy3.enumerate_pairs(c2e_upper))


def apply_flop(forms, eta, counts):
    return json.loads(_cy3.apply_flop(_text(forms), list(eta), dict(counts)))


def min_effectivity(forms, cls, m_cap=10000):
    x, y = cls
    return json.loads(_cy3.min_effectivity(_text(forms), x, y, m_cap))


def run_cli(args, input=""):
    """Returns (exit_code, stdout, stderr)."""
    return _cy3.run_cli(list(args), input)
