"""Exact F-signatures and dual F-signatures of Veronese subrings and Segre
products of polynomial rings."""

from .combinatorics import Rational, binomial, eulerian, irwin_hall_cdf
from .signatures import (
    SegreParams,
    SignatureReport,
    SubsetCapExceeded,
    Veronese,
    conic_classes,
    conjecture_probe,
    dual_classes,
    equality_case,
    eulerian_dual_closed_form,
    f_signature,
    gen_f_signature,
    segre_upper_bound,
    smirnov_tucker_min,
    veronese_dual,
)

__all__ = [
    "Rational",
    "SegreParams",
    "SignatureReport",
    "SubsetCapExceeded",
    "Veronese",
    "binomial",
    "conic_classes",
    "conjecture_probe",
    "dual_classes",
    "equality_case",
    "eulerian",
    "eulerian_dual_closed_form",
    "f_signature",
    "gen_f_signature",
    "irwin_hall_cdf",
    "segre_upper_bound",
    "smirnov_tucker_min",
    "veronese_dual",
]
