"""Non-abelian tensor squares, exterior squares and Schur multipliers of finite groups."""

import json

from . import _tsq
from ._tsq import FamilyError, ParseError, ResourceLimitError, case_ids, coset_index, gamma, tensor_abelian

__all__ = [
    "FamilyError",
    "ParseError",
    "ResourceLimitError",
    "case_ids",
    "compute",
    "coset_index",
    "gamma",
    "order_only",
    "tensor_abelian",
    "verify",
]


def compute(presentation=None, *, family=None, **options):
    """Full report for one group, as the JSON document the CLI prints."""
    return json.loads(_tsq.compute_json(presentation, family, **options))


def order_only(presentation=None, *, family=None, **options):
    """|G (x) G| from one coset enumeration; structures are not computed."""
    return json.loads(_tsq.order_only_json(presentation, family, **options))


def verify(theorem="all", case="", **options):
    """Run catalog cases; returns {"cases": [...], "summary": {...}}."""
    return json.loads(_tsq.verify_json(theorem, case, **options))
