"""Tagged classification results shared by every recognition pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Kind(Enum):
    REGULAR = "regular"
    CROSS_CAP = "cross_cap"
    S1_PLUS = "S1+"
    S1_MINUS = "S1-"
    CUSPIDAL_EDGE = "cuspidal_edge"
    CUSPIDAL_CROSS_CAP = "cCR"
    CUSPIDAL_SK = "cSk"
    CUSP25 = "cusp25"
    NOT_CUSP25 = "not_cusp25"
    UNRECOGNIZED = "unrecognized"


@dataclass(frozen=True)
class Classification:
    """Outcome of a recognition pipeline with its diagnostic payload.

    ``k`` and ``sign`` are set only for cuspidal S_k results (``sign`` is
    None for even ``k``, where both signs are equivalent).  ``reasons``
    names the failed gates for UNRECOGNIZED / NOT_CUSP25 results.
    ``diagnostics`` carries the numeric evidence (gradients, Hessian
    determinant, psi coefficients, ...) keyed by stable field names.
    """

    kind: Kind
    k: int | None = None
    sign: int | None = None
    reasons: tuple[str, ...] = ()
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def label(self) -> str:
        """Stable machine-readable tag, e.g. ``cS1+`` or ``cuspidal_edge``."""
        if self.kind is Kind.CUSPIDAL_SK:
            suffix = {1: "+", -1: "-", None: ""}[self.sign]
            return f"cS{self.k}{suffix}"
        return self.kind.value

    @property
    def definite(self) -> bool:
        """True when the result is a classification rather than a failure report."""
        return self.kind is not Kind.UNRECOGNIZED

    def describe(self) -> str:
        text = {
            Kind.REGULAR: "regular (immersion) point",
            Kind.CROSS_CAP: "cross cap (Whitney umbrella)",
            Kind.S1_PLUS: "S1+ singularity",
            Kind.S1_MINUS: "S1- singularity",
            Kind.CUSPIDAL_EDGE: "cuspidal edge",
            Kind.CUSPIDAL_CROSS_CAP: "cuspidal cross cap",
            Kind.CUSP25: "(2,5)-cusp",
            Kind.NOT_CUSP25: "not a (2,5)-cusp",
            Kind.UNRECOGNIZED: "unrecognized",
        }.get(self.kind)
        if self.kind is Kind.CUSPIDAL_SK:
            text = f"cuspidal S{self.k} singularity"
            if self.sign is not None:
                text += " (+)" if self.sign > 0 else " (-)"
        if self.reasons:
            text += " [" + "; ".join(self.reasons) + "]"
        return text


def regular(**diag) -> Classification:
    return Classification(Kind.REGULAR, diagnostics=diag)


def unrecognized(*reasons: str, **diag) -> Classification:
    return Classification(Kind.UNRECOGNIZED, reasons=tuple(reasons), diagnostics=diag)


def cuspidal_sk(k: int, sign: int | None, **diag) -> Classification:
    if k == 0:
        return Classification(Kind.CUSPIDAL_CROSS_CAP, k=0, diagnostics=diag)
    return Classification(Kind.CUSPIDAL_SK, k=k, sign=sign, diagnostics=diag)
