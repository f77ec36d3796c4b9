"""Global parameter pack: q, its logarithm, truncation order and tolerances.

All three base fields (meromorphic germs, convergent germs, formal Laurent
series) share the same truncated-series data model; the formal/convergent
distinction lives in :attr:`QContext.mode` and only changes which solver
branches are legal.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass, replace


class Mode(enum.Enum):
    FORMAL = "formal"
    CONVERGENT = "convergent"


@dataclass(frozen=True)
class QContext:
    """Parameters shared by every series, operator and solver.

    ``q`` must satisfy |q| > 1 and ``tau`` is a logarithm of it (principal
    branch under :meth:`create`); ramified contexts keep ``exp(tau) == q``
    exact to machine precision so that nested ramifications stay compatible.
    ``trunc_order`` is the number of coefficient orders tracked beyond the
    valuation of each series.
    """

    q: complex
    tau: complex
    trunc_order: int = 40
    tol_zero: float = 1e-12
    tol_match: float = 1e-8
    mode: Mode = Mode.FORMAL
    ramification: int = 1

    def __post_init__(self):
        if abs(self.q) <= 1.0:
            raise ValueError(f"|q| must exceed 1, got q={self.q!r}")
        if abs(cmath.exp(self.tau) - self.q) > 1e-9 * abs(self.q):
            raise ValueError("tau is not a logarithm of q")
        if self.trunc_order < 1:
            raise ValueError("trunc_order must be >= 1")
        if self.tol_zero <= 0 or self.tol_match <= 0:
            raise ValueError("tolerances must be positive")

    @classmethod
    def create(cls, q, *, trunc_order: int = 40, tol_zero: float = 1e-12,
               tol_match: float = 1e-8, mode: Mode = Mode.FORMAL) -> "QContext":
        q = complex(q)
        return cls(q=q, tau=cmath.log(q), trunc_order=trunc_order,
                   tol_zero=tol_zero, tol_match=tol_match, mode=mode)

    def ramify(self, level: int) -> "QContext":
        """Context of the level-``level`` ramified variable (q -> exp(tau/level))."""
        if level == 1:
            return self
        if level < 1:
            raise ValueError("ramification level must be >= 1")
        return QContext(q=cmath.exp(self.tau / level), tau=self.tau / level,
                        trunc_order=self.trunc_order * level,
                        tol_zero=self.tol_zero, tol_match=self.tol_match,
                        mode=self.mode, ramification=self.ramification * level)

    def with_mode(self, mode: Mode) -> "QContext":
        return replace(self, mode=mode)

    @property
    def is_formal(self) -> bool:
        return self.mode is Mode.FORMAL

    def q_pow(self, k: int) -> complex:
        """Integer power of q (exact repeated multiplication semantics)."""
        return self.q ** k
