"""Explicit constants of the decision procedure for D(Z_k^l + Z_n) > delta + kn,
and the resulting bounds on the least such n."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ConstantsLedger:
    k: int
    ell: int
    delta: int
    c: int
    c_defect: int
    c_less: int
    c_more: int
    c_card: int
    c_ws: int
    c_nn: int
    c_var: int
    c_eq: int
    n_min: int
    thresholds: dict
    coefficient_bound: int
    rhs_bound: int
    var_count: int
    eq_count_bound: int

    def record(self) -> dict:
        return asdict(self)

    def generic_bounds(self) -> dict[str, tuple[int, int]]:
        """(value, closed-form bound) pairs valid for c <= k^(l+1),
        k >= 2, l >= 3, delta >= 2."""
        k, l, d = self.k, self.ell, self.delta
        return {
            "c_defect": (self.c_defect, 3 * k**l),
            "c_less": (self.c_less, k ** (l + 1) - d),
            "c_more": (self.c_more, 4 * k ** (l + 1)),
            "c_card": (self.c_card, 5 * k ** (l + 1)),
            "c_ws": (self.c_ws, 3 * k**l),
            "c_var": (self.c_var, 7 * k ** (l + 1) + d),
            "c_eq": (self.c_eq, 12 * k ** (l + 1) + d),
            "n_min": (self.n_min, 27 * k ** (l + 1) + 2 * d),
            "rhs_bound": (self.rhs_bound, 14 * k ** (l + 2) + k * d),
        }

    def table(self) -> str:
        rows = [(name, getattr(self, name)) for name in (
            "k", "ell", "delta", "c", "c_defect", "c_less", "c_more", "c_card", "c_ws",
            "c_nn", "c_var", "c_eq", "n_min", "coefficient_bound", "rhs_bound", "var_count")]
        rows.append(("eq_count_bound", f"2^{self.c_var}"))
        rows += [(f"  needs n >= ({k})", v) for k, v in self.thresholds.items()]
        w = max(len(r[0]) for r in rows)
        return "\n".join(f"{name:<{w}}  {val}" for name, val in rows)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def constants_ledger(k: int, ell: int, delta: int, c: int, nn_zero: bool = False,
                     floor: int = 0) -> ConstantsLedger:
    """Evaluate every constant from (k, l, delta) and c = c(k, l).

    ``nn_zero`` takes c_nn = 0, as obtained when c_defect is replaced by its
    upper bound 3k^l; otherwise c_nn is the rational expression rounded up.
    c_defect and c_less are floored at ``floor``.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if c < 0:
        raise ValueError("c must be >= 0")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    c_defect = max(floor, 1 + _ceil_div(2 * c - delta, k))
    c_less = max(floor, c - delta - 1)
    c_more = delta + k * c_defect + c_less
    c_card = c_more + c_less
    c_ws = max(0, c_defect - 1)
    if nn_zero:
        c_nn = 0
    else:
        c_nn = max(0, math.ceil((k - 1) * k ** (ell - 1) - Fraction(delta, k) - c_defect))
    c_var = delta + k * (c_defect + c_nn + c_ws + k**ell - 1)
    c_eq = c_card + c_var
    thresholds = {
        "3.1": 3 * c_defect,
        "3.2": c_defect + c_more + 2 * c_ws + 1 + k * (c_ws + 1),
        # (k n + delta - c_var) / k^l >= k - 1
        "3.4": max(0, _ceil_div((k - 1) * k**ell + c_var - delta, k)),
        "7a": 4 * c_defect,
        "7b": 2 * (c_defect + c_eq),
    }
    return ConstantsLedger(
        k=k, ell=ell, delta=delta, c=c,
        c_defect=c_defect, c_less=c_less, c_more=c_more, c_card=c_card, c_ws=c_ws,
        c_nn=c_nn, c_var=c_var, c_eq=c_eq,
        n_min=max(thresholds.values()), thresholds=thresholds,
        coefficient_bound=k, rhs_bound=k * (c_defect + c_eq),
        var_count=c_var, eq_count_bound=2**c_var,
    )


def _check_standing(k: int, ell: int, delta: int) -> None:
    if k < 2 or ell < 3 or delta < 2:
        raise ValueError("bounds require k >= 2, ell >= 3, delta >= 2")


def bound_infinite(k: int, ell: int, delta: int) -> int:
    """ceil(6 l (7 k^(l+1) + delta) ln(k delta)): if infinitely many n give
    D > delta + kn, the least one is at most this."""
    _check_standing(k, ell, delta)
    return math.ceil(6 * ell * (7 * k ** (ell + 1) + delta) * math.log(k * delta))


@dataclass(frozen=True)
class TowerBound:
    """n_1 <= 2^(2^(C * m)) with an unspecified absolute constant C."""

    m: int
    constant: str = "C"

    def render(self) -> str:
        return f"2^(2^({self.constant}*{self.m}))"

    def record(self) -> dict:
        return {"form": "2^(2^(C*m))", "m": self.m, "constant": self.constant}


def bound_finite_symbolic(k: int, ell: int, delta: int) -> TowerBound:
    _check_standing(k, ell, delta)
    return TowerBound(m=k ** (ell + 1) + delta)
