"""Laguerre functions, the su(1,1) Lie algebra and parabolic Clebsch-Gordan coefficients.

Special functions (numkernel, hypfun, orthopoly), the doubly infinite
Jacobi operator and its spectral theory (laguerreop), Jacobi functions
(jacobifn), representations of su(1,1) (su11), tensor-product coupling
(coupling) and a verification harness (suites, cli).
"""
from . import coupling, hypfun, jacobifn, laguerreop, numkernel, orthopoly, report, su11, suites
from .errors import (BranchCutError, DomainError, LimitRegimeWarning, NonConvergenceError,
                     PoleError, RegimeError, SpecError, TruncationWarning, UnknownSuiteError)
from .report import VerificationReport, emit
from .suites import SweepSpec, run_suite

__version__ = "0.1.0"

__all__ = [
    "coupling", "hypfun", "jacobifn", "laguerreop", "numkernel", "orthopoly", "report",
    "su11", "suites", "VerificationReport", "emit", "SweepSpec", "run_suite",
    "BranchCutError", "DomainError", "LimitRegimeWarning", "NonConvergenceError", "PoleError",
    "RegimeError", "SpecError", "TruncationWarning", "UnknownSuiteError",
]
