"""Multi-quanta states: vacuum construction, inner products, eigen-actions.

A FockState is an OperatorExpr of pure creation monomials understood as
acting on the vacuum. Applying an arbitrary expression normal-orders it and
drops every monomial that still contains an annihilator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import opalg
from .kinematics import FourVector, cone_classify, ConeClass, on_shell_energy
from .opalg import (GAUGE, LadderOperator, Monomial, OperatorExpr,
                    reduce_to_normal_form, vev)


class SupportError(ValueError):
    """Inner momentum outside the closed forward/backward cones."""


def _check_support(op: LadderOperator) -> None:
    if isinstance(op.inner, tuple):
        K = FourVector.of(op.inner)
        if cone_classify(K) not in (ConeClass.TIMELIKE_PLUS,
                                    ConeClass.LIGHTLIKE_PLUS):
            raise SupportError(f"inner momentum {op.inner} lies outside "
                               "the closed forward cone")


@dataclass(frozen=True)
class FockState:
    expr: OperatorExpr

    @classmethod
    def vacuum(cls) -> "FockState":
        return cls(OperatorExpr.number(1))

    @classmethod
    def ket(cls, *creators: LadderOperator) -> "FockState":
        """Basis ket: a product of creation operators applied to |0>."""
        for op in creators:
            if not op.dagger:
                raise ValueError("kets are built from creation operators")
            _check_support(op)
        expr = OperatorExpr.from_monomials(
            [opalg.make_monomial(1, ops=tuple(creators))])
        return cls(reduce_to_normal_form(expr))

    def is_zero(self) -> bool:
        return self.expr.is_zero()

    def __add__(self, other: "FockState") -> "FockState":
        return FockState(self.expr + other.expr)

    def scale(self, c) -> "FockState":
        return FockState(self.expr.scale(c))


def apply(e: OperatorExpr, s: FockState) -> FockState:
    """Left-multiply and annihilate the vacuum on the right."""
    reduced = reduce_to_normal_form(e * s.expr)
    kept = [m for m in reduced.terms if all(op.dagger for op in m.ops)]
    return FockState(OperatorExpr.from_monomials(kept))


def inner_product(bra: FockState, ket: FockState) -> OperatorExpr:
    """<bra|ket> as an exact coefficient sum (a pure-number OperatorExpr)."""
    return vev(bra.expr.dagger() * ket.expr)


@dataclass(frozen=True)
class NormSign:
    sign: int


def norm_sign(ket: Monomial | FockState) -> NormSign:
    """Product of eta^{gg} eta^{GG} over gauge quanta; matter contributes +1."""
    if isinstance(ket, FockState):
        if len(ket.expr.terms) != 1:
            raise ValueError("norm sign is defined for basis kets")
        (ket,) = ket.expr.terms
    sign = 1
    for op in ket.ops:
        if op.field == GAUGE:
            if not isinstance(op.pol, int) or not isinstance(op.ipol, int):
                raise ValueError("norm sign needs bound polarization labels")
            sign *= (1 if op.pol == 0 else -1) * (-1)  # eta^{GG} = -1, G in 1..3
    return NormSign(sign)


def physical_filter(s: FockState) -> FockState:
    """Drop every ket containing a gauge quantum with spacetime pol 0."""
    kept = []
    for m in s.expr.terms:
        bad = False
        for op in m.ops:
            if op.field == GAUGE:
                if not isinstance(op.pol, int):
                    raise ValueError("physical filter needs bound polarizations")
                if op.pol == 0:
                    bad = True
                    break
        if not bad:
            kept.append(m)
    return FockState(OperatorExpr.from_monomials(kept))


@dataclass(frozen=True)
class FieldMasses:
    """Mass of each field species, used wherever an on-shell energy is needed."""

    scalar: float = 1.0
    dirac: float = 1.0
    gauge: float = 1.0

    def of(self, field: str) -> float:
        if field == opalg.SCALAR:
            return self.scalar
        if field == opalg.GAUGE:
            return self.gauge
        return self.dirac


def _quantum_weight(op: LadderOperator) -> int:
    if op.field != GAUGE:
        return 1
    if not isinstance(op.pol, int) or not isinstance(op.ipol, int):
        raise ValueError("eigen-actions need bound polarization labels")
    return (1 if op.pol == 0 else -1) * (-1)


def momentum_action(which: str, s: FockState,
                    masses: FieldMasses = FieldMasses()) -> list:
    """Per-ket eigenvalues of the inertial (p) or inner (P) momentum.

    Returns [(monomial, eigenvalue 4-tuple), ...]; gauge quanta contribute
    with their eta^{gg} eta^{GG} weight. Labels must be bound.
    """
    if which not in ("p", "P"):
        raise ValueError("which must be 'p' or 'P'")
    out = []
    for m in s.expr.terms:
        total = [0, 0, 0, 0]
        for op in m.ops:
            w = _quantum_weight(op)
            if which == "p":
                if not isinstance(op.mom, tuple):
                    raise ValueError("eigenvalues need bound momentum labels")
                energy = on_shell_energy(op.mom, masses.of(op.field))
                vec = (energy,) + tuple(Fraction(c) if isinstance(c, (int, Fraction))
                                        else float(c) for c in op.mom)
            else:
                if not isinstance(op.inner, tuple):
                    raise ValueError("eigenvalues need bound inner labels")
                vec = op.inner
            for i in range(4):
                total[i] = total[i] + w * vec[i]
        out.append((m, tuple(total)))
    return out
