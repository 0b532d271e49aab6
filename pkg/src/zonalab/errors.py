"""Failure types that should abort a run rather than produce numbers."""


class NumericalError(RuntimeError):
    """A computation lost control of its error budget."""


class QuadratureError(NumericalError):
    """Successive quadrature refinements disagreed beyond tolerance."""


class TailDominanceError(NumericalError):
    """A spectral truncation was too short for its discarded tail."""


class CertificateError(NumericalError):
    """A lower bound exceeded its certified upper bound."""
