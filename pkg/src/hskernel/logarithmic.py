"""J-logarithmic derivations and HS derivations, and one-step extension tests.

For a principal ideal J = (F), a J-logarithmic HS derivation D of length m
extends to a J-logarithmic one of length m+1 exactly when D_{m+1}(F), taken
from the canonical lift, lies in (dF/dx_1, ..., dF/dx_n, F).  Greedy
iteration of that test is only a heuristic: a blocked path does not prove
that no longer integral exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from .diffop import DiffOp, op_apply
from .groebner import Ideal
from .hs import (
    HSDerivation,
    _check_derivation,
    canonical_lift,
    hs_compose,
    hs_of_derivation,
    hs_scale,
    taylor_hs,
)
from .poly import Poly
from .series import TruncSeries


class UnsupportedIdeal(ValueError):
    """Obstruction machinery is only available for principal ideals."""


class NotLogarithmic(ValueError):
    pass


def is_log_derivation(delta: DiffOp, J: Ideal) -> bool:
    """delta(J) in J, checked on generators."""
    _check_derivation(delta)
    return all(J.member(op_apply(delta, g)) for g in J.generators)


def is_log_hs(D: HSDerivation, J: Ideal, method: str = "series") -> bool:
    """D_i(J) in J for all i.

    ``series`` checks Phi(g) in J R_m coefficient by coefficient; ``components``
    applies the extracted operators D_i to each generator.
    """
    if method == "series":
        for g in J.generators:
            if not all(J.member(c) for c in D.phi(g).coeffs[1:]):
                return False
        return True
    if method == "components":
        comps = D.components()
        for g in J.generators:
            for P in comps[1:]:
                if not J.member(op_apply(P, g)):
                    return False
        return True
    raise ValueError(f"unknown method {method!r}")


def log_failures(D: HSDerivation, J: Ideal) -> List[Tuple[int, Poly, Poly]]:
    """(i, generator, normal form of D_i(g) mod J) for every failing pair."""
    out = []
    for g in J.generators:
        for i, c in enumerate(D.phi(g).coeffs[1:], start=1):
            nf = J.reduce(c)
            if nf:
                out.append((i, g, nf))
    return out


def obstruction_ideal(F: Poly) -> Ideal:
    return Ideal([F.partial(i) for i in range(F.ring.n)] + [F])


def _principal_generator(J: Ideal) -> Poly:
    if not J.is_principal:
        raise UnsupportedIdeal("the extension criterion is only implemented for principal ideals J = (F)")
    return J.generators[0]


@dataclass
class ObstructionReport:
    step: int
    ok: bool
    obstruction_poly: Poly
    correction: Optional[DiffOp] = None
    extended: Optional[HSDerivation] = field(default=None, repr=False)

    def render(self) -> str:
        if self.ok:
            corr = self.correction if self.correction is not None else "0"
            return f"step {self.step}: OK (correction: {corr})"
        return f"step {self.step}: BLOCKED (obstruction NF: {self.obstruction_poly})"


def obstruction_step(D: HSDerivation, J: Ideal) -> ObstructionReport:
    """Try to extend a J-logarithmic D of length m to length m+1."""
    F = _principal_generator(J)
    if not is_log_hs(D, J):
        raise NotLogarithmic("obstruction_step needs a J-logarithmic HS derivation")
    ring = D.ring
    m = D.length
    lift = canonical_lift(D)
    top = lift.phi(F)[m + 1]
    O = obstruction_ideal(F)
    cof, nf = O.divide(top)
    if nf:
        return ObstructionReport(m + 1, False, nf)
    # top = sum c_i dF/dx_i + q F, so subtracting sum c_i d/dx_i at t^{m+1} leaves q F
    correction = DiffOp(ring, {})
    for i in range(ring.n):
        if cof[i]:
            correction = correction + DiffOp.partial(ring, i, coeff=-cof[i])
    images = []
    for j, s in enumerate(lift.images):
        coeffs = list(s.coeffs)
        coeffs[m + 1] = coeffs[m + 1] - cof[j]
        images.append(TruncSeries(ring, coeffs))
    extended = HSDerivation(ring, images)
    if not is_log_hs(extended, J):
        raise AssertionError("corrected extension is not J-logarithmic")
    return ObstructionReport(m + 1, True, nf, correction, extended)


@dataclass
class StepTrace:
    reports: List[ObstructionReport]
    target: int
    final: Optional[HSDerivation] = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return bool(self.reports) and all(r.ok for r in self.reports) and self.reports[-1].step >= self.target

    def render(self) -> str:
        lines = [r.render() for r in self.reports]
        if not self.ok:
            lines.append("greedy path blocked (this does not show the derivation is not integrable)")
        return "\n".join(lines)


def step_integrate(start: Union[DiffOp, HSDerivation], J: Ideal, target: int) -> StepTrace:
    """Greedy extension, one length at a time, with corrections applied."""
    F = _principal_generator(J)
    D = hs_of_derivation(start) if isinstance(start, DiffOp) else start
    m = D.length
    if not is_log_hs(D, J):
        return StepTrace([ObstructionReport(m, False, log_failures(D, J)[0][2])], target)
    reports = [ObstructionReport(m, True, F.ring.zero())]
    while D.length < target:
        rep = obstruction_step(D, J)
        reports.append(rep)
        if not rep.ok:
            return StepTrace(reports, target)
        D = rep.extended
    return StepTrace(reports, target, D)


def induced_on_quotient(delta: DiffOp, J: Ideal) -> Tuple[Poly, ...]:
    """Normal forms of delta(x_j) mod J: equal tuples mean the same derivation of R/J."""
    if not is_log_derivation(delta, J):
        raise NotLogarithmic("derivation is not J-logarithmic")
    return tuple(J.reduce(op_apply(delta, x)) for x in delta.ring.gens)


def transfer_integral(D: HSDerivation, delta: DiffOp, J: Ideal) -> HSDerivation:
    """Turn a J-logarithmic integral D of delta' into one of delta, when both induce the same derivation of R/J.

    With a_i = (delta - D_1)(x_i) in J, composes D with the truncated
    product (a_1 . Taylor_1) o ... o (a_n . Taylor_n).
    """
    ring = D.ring
    m = D.length
    diff = delta - D.component(1)
    a = [op_apply(diff, x) for x in ring.gens]
    if not all(J.member(ai) for ai in a):
        raise NotLogarithmic("delta and D_1 induce different derivations of R/J")
    E = None
    for i, ai in enumerate(a):
        Ei = hs_scale(ai, taylor_hs(ring, i, m))
        E = Ei if E is None else hs_compose(E, Ei)
    return hs_compose(D, E)

