"""Multi-step rational Darboux chains for second-order operators.

A chain starts from ``T0 = p D^2 + q0 D + r0`` and a list of seeds
``(phi_k, lambda_k, b_k)`` with ``T0 phi_k = lambda_k phi_k``.  Step ``k``
factors through ``A_k = b_k (D - w_k)`` and lands on
``T_k = p D^2 + q_k D + r_k``.  Everything is computed in closed form from the
Wronskian tower and then checked by operator composition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diffop import DiffOp, apply, compose, conjugate, intertwines
from .exceptions import (
    ConsistencyError,
    DegenerateSeedsError,
    GaugeError,
    NotEigenfunctionError,
)
from .ratalg import QuasiRat, RatFunc, rat, wronskian2

__all__ = [
    "SeedSpec",
    "DarbouxChain",
    "build_chain",
    "partner",
    "riccati_residual",
    "wronskian_tower",
    "crum_schrodinger_check",
    "gauge_check",
    "factorization_check",
]


@dataclass(frozen=True)
class SeedSpec:
    """Seed eigenfunction, its eigenvalue and the factorization gauge."""

    phi: QuasiRat
    lam: object
    gauge_b: RatFunc = field(default_factory=lambda: RatFunc(1))

    def __post_init__(self):
        object.__setattr__(self, "phi", QuasiRat.coerce(self.phi))
        object.__setattr__(self, "lam", rat(self.lam))
        object.__setattr__(self, "gauge_b", RatFunc.coerce(self.gauge_b))
        if self.phi.is_zero():
            raise ValueError("seed function must be non-zero")
        if self.gauge_b.is_zero():
            raise ValueError("gauge must be non-zero")


@dataclass(frozen=True)
class DarbouxChain:
    """A built chain.  Index ``k`` in the per-step tuples refers to step ``k+1``;
    ``t[k]`` is ``T_k`` with ``t[0]`` the starting operator."""

    t0: DiffOp
    seeds: tuple
    wr: tuple = ()
    sigma: tuple = ()
    upsilon: tuple = ()
    w: tuple = ()
    a: tuple = ()
    t: tuple = ()

    @property
    def n(self) -> int:
        return len(self.seeds)

    @property
    def p(self) -> RatFunc:
        return self.t0.coeff(2)

    def q(self, k: int) -> RatFunc:
        return self.t[k].coeff(1)

    def r(self, k: int) -> RatFunc:
        return self.t[k].coeff(0)

    def __str__(self) -> str:
        lines = [f"T0 = {self.t0}"]
        for k in range(1, self.n + 1):
            lines.append(f"A{k} = {self.a[k - 1]}")
            lines.append(f"T{k} = {self.t[k]}")
        return "\n".join(lines)


def _check_distinct(seeds: Sequence[SeedSpec]) -> None:
    lams = [s.lam for s in seeds]
    if len(set(lams)) != len(lams):
        raise DegenerateSeedsError(
            f"degenerate seeds (repeated eigenvalue?): eigenvalues {[str(x) for x in lams]}"
        )


def _tower(phis: Sequence[QuasiRat]) -> list[list[QuasiRat]]:
    """rows[k][j] = Wr[phi_1..phi_k, phi_j] for j >= k (1-based k, 0-based storage)."""
    n = len(phis)
    rows: list[list[QuasiRat]] = [list(phis)]
    prev = QuasiRat(1)
    for k in range(1, n):
        cur = rows[-1]
        head = cur[k - 1]
        if head.is_zero():
            raise DegenerateSeedsError("degenerate seeds (repeated eigenvalue?): vanishing Wronskian")
        nxt = [QuasiRat(0)] * n
        for j in range(k, n):
            nxt[j] = wronskian2(head, cur[j]) / prev
        rows.append(nxt)
        prev = head
    if n and rows[-1][n - 1].is_zero():
        raise DegenerateSeedsError("degenerate seeds (repeated eigenvalue?): vanishing Wronskian")
    return rows


def wronskian_tower(seeds: Sequence, verify: bool = False) -> list[QuasiRat]:
    """Wronskians ``Wr[phi_1..phi_k]`` for ``k = 1..n``.

    With ``verify`` the tilde-gauge product ``(A_{k-1} ... A_1) phi_j`` is
    applied directly and compared with the Wronskian quotient for every
    ``k <= j``.
    """
    seeds = [s if isinstance(s, SeedSpec) else SeedSpec(*s) for s in seeds]
    _check_distinct(seeds)
    phis = [s.phi for s in seeds]
    rows = _tower(phis)
    out = [rows[k][k] for k in range(len(phis))]
    if verify:
        ups = [QuasiRat(1).log_deriv()] + [f.log_deriv() for f in out]
        for j, phi in enumerate(phis):
            g = phi
            for k in range(j + 1):
                denom = out[k - 1] if k else QuasiRat(1)
                if g != rows[k][j] / denom:
                    raise ConsistencyError(
                        f"Wronskian quotient mismatch at k={k + 1}, j={j + 1}: {g} vs {rows[k][j] / denom}"
                    )
                if k < j:
                    g = apply(DiffOp([-(ups[k + 1] - ups[k]), 1]), g)
    return out


def _step_operator(p, q0, r0, k, sigma_k, ups_k) -> DiffOp:
    dp = p.deriv()
    q = q0 + dp * k - p * sigma_k * 2
    r = (
        r0
        + q0.deriv() * k
        + dp.deriv() * (k * (k - 1) // 2)
        + ups_k * dp
        - sigma_k * (q0 + dp * k)
        + (sigma_k * sigma_k - sigma_k.deriv() + ups_k.deriv() * 2) * p
    )
    return DiffOp([r, q, p])


def build_chain(t0: DiffOp, seeds: Sequence) -> DarbouxChain:
    """Build and verify an ``n``-step chain over ``t0``."""
    if t0.order != 2:
        raise ValueError(f"starting operator must have order 2, got order {t0.order}")
    seeds = tuple(s if isinstance(s, SeedSpec) else SeedSpec(*s) for s in seeds)
    for k, s in enumerate(seeds, 1):
        res = apply(t0, s.phi) - s.phi * QuasiRat(s.lam)
        if not res.is_zero():
            raise NotEigenfunctionError(
                f"seed {k} is not an eigenfunction for eigenvalue {s.lam}: residual {res}"
            )
    if not seeds:
        return DarbouxChain(t0=t0, seeds=(), t=(t0,))
    wr = tuple(wronskian_tower(seeds))
    p, q0, r0 = t0.coeff(2), t0.coeff(1), t0.coeff(0)
    sig, ups, ws, ops, ts = [], [], [], [], [t0]
    sigma_prev, ups_prev = RatFunc(0), RatFunc(0)
    for k, s in enumerate(seeds, 1):
        ups_k = wr[k - 1].log_deriv()
        sigma_k = sigma_prev + s.gauge_b.log_deriv()
        w_k = sigma_prev + ups_k - ups_prev
        a_k = DiffOp([-s.gauge_b * w_k, s.gauge_b])
        t_k = _step_operator(p, q0, r0, k, sigma_k, ups_k)
        if not intertwines(a_k, ts[-1], t_k):
            raise ConsistencyError(f"step {k} fails A_k T_(k-1) = T_k A_k")
        sig.append(sigma_k)
        ups.append(ups_k)
        ws.append(w_k)
        ops.append(a_k)
        ts.append(t_k)
        sigma_prev, ups_prev = sigma_k, ups_k
    return DarbouxChain(
        t0=t0, seeds=seeds, wr=wr, sigma=tuple(sig), upsilon=tuple(ups),
        w=tuple(ws), a=tuple(ops), t=tuple(ts),
    )


def _check_index(chain: DarbouxChain, k: int) -> None:
    if not 1 <= k <= chain.n:
        raise IndexError(f"step index {k} outside 1..{chain.n}")


def partner(chain: DarbouxChain, k: int) -> DiffOp:
    """``B_k = (p / b_k) (D - w_hat_k)``, the other half of the factorization."""
    _check_index(chain, k)
    b = chain.seeds[k - 1].gauge_b
    p = chain.p
    w_hat = -chain.w[k - 1] - chain.q(k - 1) / p + b.log_deriv()
    bh = p / b
    return DiffOp([-bh * w_hat, bh])


def riccati_residual(chain: DarbouxChain, k: int) -> RatFunc:
    _check_index(chain, k)
    w = chain.w[k - 1]
    lam = chain.seeds[k - 1].lam
    return chain.p * (w.deriv() + w * w) + chain.q(k - 1) * w + chain.r(k - 1) - lam


def crum_schrodinger_check(chain: DarbouxChain) -> bool:
    """For constant ``p`` and ``q0 = 0`` with unit gauges: ``T_n - T_0 = 2 p (log Wr)''``.

    At ``p = -1`` this is the familiar ``-2 (log Wr)''`` potential shift.
    """
    p, q0 = chain.p, chain.t0.coeff(1)
    if not (p.is_poly() and p.as_poly().is_const()) or not q0.is_zero():
        raise GaugeError("not in Schrodinger gauge: need constant p and q0 = 0")
    if any(s.gauge_b != RatFunc(1) for s in chain.seeds):
        raise GaugeError("not in Schrodinger gauge: all gauges must be 1")
    if not chain.n:
        return True
    shift = chain.wr[-1].log_deriv().deriv() * p * 2
    return chain.t[-1] - chain.t0 == DiffOp.mult(shift)


def gauge_check(chain: DarbouxChain) -> bool:
    """``T_k = s_k T~_k s_k^-1`` with ``s_k = b_1 ... b_k`` and ``T~`` the unit-gauge chain."""
    plain = build_chain(chain.t0, [SeedSpec(s.phi, s.lam) for s in chain.seeds])
    s = RatFunc(1)
    for k in range(1, chain.n + 1):
        s = s * chain.seeds[k - 1].gauge_b
        if conjugate(plain.t[k], QuasiRat(s)) != chain.t[k]:
            return False
    return True


def factorization_check(chain: DarbouxChain, k: int) -> bool:
    """``B_k A_k = T_(k-1) - lambda_k`` and ``A_k B_k = T_k - lambda_k``."""
    b = partner(chain, k)
    a = chain.a[k - 1]
    lam = chain.seeds[k - 1].lam
    return compose(b, a) == chain.t[k - 1] - lam and compose(a, b) == chain.t[k] - lam
