"""Factorization invariants of block monoids over finite abelian groups.

Core objects: finite abelian groups with zero-sum machinery (``abelian``),
reduced finitely primary monoids given by unit-level tables (``primary``),
block monoids over a class group with such components (``tblock``), the
exhaustive factorization engine with distance/chain invariants
(``factorization``), closed-form predictions (``predict``), and the
prediction-versus-brute-force harness (``verify``).
"""

from .abelian import (
    FiniteAbelianGroup,
    davenport_constant,
    minimal_zero_sum_sequences,
    sequence,
    sigma,
)
from .errors import (
    BlockfactError,
    InstanceError,
    ResourceCapError,
    UnsupportedInstanceError,
)
from .predict import Prediction, check_hf_criterion_quadratic, compute_I, compute_J, compute_k, predict
from .primary import PrimaryMonoidSpec, primary_spec
from .tblock import Component, InstanceSpec
from .verify import BruteResult, SuiteConfig, VerificationReport, brute_invariants, run_suite

__version__ = "0.1.0"

__all__ = [
    "BlockfactError",
    "BruteResult",
    "Component",
    "FiniteAbelianGroup",
    "InstanceError",
    "InstanceSpec",
    "Prediction",
    "PrimaryMonoidSpec",
    "ResourceCapError",
    "SuiteConfig",
    "UnsupportedInstanceError",
    "VerificationReport",
    "brute_invariants",
    "check_hf_criterion_quadratic",
    "compute_I",
    "compute_J",
    "compute_k",
    "davenport_constant",
    "minimal_zero_sum_sequences",
    "predict",
    "primary_spec",
    "run_suite",
    "sequence",
    "sigma",
    "__version__",
]
