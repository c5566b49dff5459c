# -*- coding: utf-8 -*-
"""
Custom exceptions for the composition_lab library.
"""


class CompositionLabError(Exception):
    """Base exception class for composition_lab errors."""
    pass


class ConfigurationError(CompositionLabError):
    """Raised when configuration parameters or specs are invalid."""
    pass


class SolverUnavailableError(CompositionLabError):
    """Raised when a symbol has no preimage solver."""
    pass


class DomainError(CompositionLabError):
    """Raised when a planar domain precondition fails (start point, containment)."""
    pass


class NumericalError(CompositionLabError):
    """Raised when bracketing, quadrature or root polishing does not converge."""
    pass


class NonterminatingWalkError(NumericalError):
    """Raised when too many walk-on-spheres paths hit the step cap."""
    pass


class StatisticalFloorError(CompositionLabError):
    """Raised when a requested resolution is below the Monte Carlo floor."""
    pass


class ArtifactError(CompositionLabError):
    """Raised when an output artifact (JSON, CSV, PDF, manifest) cannot be written."""
    pass
