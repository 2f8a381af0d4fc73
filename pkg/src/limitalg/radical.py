"""Radical membership certificates for tower matrix units.

Membership in the Jacobson radical of the limit algebra is certified,
never guessed: InRadical via an all-linkless decomposition (the TUHF
criterion) or a uniform-nilpotency pattern argument, NotInRadical via a
recurrent Donsig chain, and Unknown otherwise.  A finite-level
trace-form oracle cross-checks everything at desk scale.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import multi_matrix_algebra
from .links import CertifiedLinkless, link_status
from .tower import (Element, MatrixUnit, TowerSpec, decompose, embed_element,
                    embed_unit)

DEFAULT_EXPAND_HORIZON = 6
DEFAULT_LINK_HORIZON = 12


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class LinklessDecomposition:
    level: int
    units: tuple[MatrixUnit, ...]

    def to_json(self):
        return {"kind": "linkless-decomposition", "level": self.level,
                "units": [[u.summand, u.row, u.col] for u in self.units]}


@dataclass(frozen=True)
class UniformNilpotency:
    exponent: int
    horizon: int
    pattern_closed: bool

    def to_json(self):
        return {"kind": "uniform-nilpotency", "exponent": self.exponent,
                "horizon": self.horizon, "pattern_closed": self.pattern_closed}


@dataclass(frozen=True)
class DonsigChain:
    t_units: tuple[MatrixUnit, ...]  # T_0, ..., T_d
    s_units: tuple[MatrixUnit, ...]  # S_1, ..., S_d

    @property
    def depth(self) -> int:
        return len(self.s_units)

    def verify(self, tower: TowerSpec) -> bool:
        """Re-check T_{l+1} = embed(T_l) * S_{l+1} * embed(T_l) exactly."""
        for l, s in enumerate(self.s_units):
            t_prev = embed_unit(tower, self.t_units[l], s.level).to_element()
            prod = t_prev * Element.from_unit(s) * t_prev
            if prod != Element.from_unit(self.t_units[l + 1]):
                return False
        return True

    def to_json(self):
        return {"kind": "donsig-chain",
                "t": [[u.level, u.summand, u.row, u.col] for u in self.t_units],
                "s": [[u.level, u.summand, u.row, u.col] for u in self.s_units]}


@dataclass(frozen=True)
class ChainCycle:
    chain: DonsigChain
    cycle_start: int
    cycle_end: int

    def to_json(self):
        return {"kind": "chain-cycle", "cycle": [self.cycle_start, self.cycle_end],
                "chain": self.chain.to_json()}


@dataclass(frozen=True)
class InRadical:
    certificate: object
    status = "in-radical"

    def to_json(self):
        return {"status": self.status, "certificate": self.certificate.to_json()}


@dataclass(frozen=True)
class NotInRadical:
    certificate: object
    status = "not-in-radical"

    def to_json(self):
        return {"status": self.status, "certificate": self.certificate.to_json()}


@dataclass(frozen=True)
class Unknown:
    expand_horizon: int
    link_horizon: int
    status = "unknown"

    def to_json(self):
        return {"status": self.status, "expand_horizon": self.expand_horizon,
                "link_horizon": self.link_horizon}


RadicalStatus = InRadical | NotInRadical | Unknown


# ---------------------------------------------------------------------------
# Donsig chains


def _chain_step(tower: TowerSpec, t: MatrixUnit,
                horizon: int) -> tuple[MatrixUnit, MatrixUnit] | None:
    """Least-level canonical (S, T') with T' = embed(T) S embed(T) != 0."""
    top = horizon if tower.max_level is None else min(horizon, tower.max_level)
    for n in range(t.level, top + 1):
        img = embed_unit(tower, t, n)
        by_summand: dict[int, list[MatrixUnit]] = {}
        for u in img.units:
            by_summand.setdefault(u.summand, []).append(u)
        best = None
        for s, occ in by_summand.items():
            for a in occ:
                for b in occ:
                    if a.col <= b.row:
                        cand = (MatrixUnit(n, s, a.col, b.row),
                                MatrixUnit(n, s, a.row, b.col))
                        if best is None or cand[0].key() < best[0].key():
                            best = cand
        if best is not None:
            return best
    return None


def donsig_chain(tower: TowerSpec, t0: MatrixUnit, depth: int,
                 horizon: int = DEFAULT_LINK_HORIZON) -> DonsigChain | None:
    """Chain T_{l+1} = T_l S_{l+1} T_l with canonical connecting units."""
    ts = [t0]
    ss: list[MatrixUnit] = []
    for _ in range(depth):
        step = _chain_step(tower, ts[-1], horizon)
        if step is None:
            return None
        s, t_next = step
        ss.append(s)
        ts.append(t_next)
    return DonsigChain(tuple(ts), tuple(ss))


def _anchored_state(tower: TowerSpec, t: MatrixUnit, k0: int):
    """Scale-anchored position pattern of a chain unit.

    Residues mod the start-level block size plus the block distance from
    the start (rows) and from the end (cols), as exact fractions; equal
    states in a self-similar tower reproduce the same continuation.
    """
    k = tower.shape(t.level)[t.summand]
    if k % k0:
        return None
    blocks = k // k0
    return (t.summand, (t.row - 1) % k0, (t.col - 1) % k0,
            Fraction((t.row - 1) // k0, blocks),
            Fraction(blocks - 1 - (t.col - 1) // k0, blocks))


def chain_cycle_certificate(tower: TowerSpec, e: MatrixUnit,
                            max_depth: int = 10,
                            horizon: int = DEFAULT_LINK_HORIZON
                            ) -> ChainCycle | None:
    """Recurrent Donsig chain witnessing an infinite chain (e not radical)."""
    if tower.finite or not tower.rule.self_similar:
        raise ValueError("chain-cycle certificates require a stationary tower")
    if e.diagonal:
        # T0 S=T0 T0 = T0: the chain is constant from the start
        chain = DonsigChain((e, e), (e,))
        return ChainCycle(chain, 0, 0)
    k0 = tower.shape(e.level)[e.summand]
    ts = [e]
    ss: list[MatrixUnit] = []
    states = [_anchored_state(tower, e, k0)]
    for depth in range(1, max_depth + 1):
        step = _chain_step(tower, ts[-1], horizon)
        if step is None:
            return None
        s, t_next = step
        ss.append(s)
        ts.append(t_next)
        st = _anchored_state(tower, t_next, k0)
        if st is None:
            return None
        if st in states:
            start = states.index(st)
            chain = DonsigChain(tuple(ts), tuple(ss))
            if not chain.verify(tower):
                raise AssertionError("chain failed exact re-verification")
            return ChainCycle(chain, start, depth)
        states.append(st)
    return None


# ---------------------------------------------------------------------------
# uniform nilpotency


@dataclass
class NilpotencyReport:
    ok: bool
    exponent: int
    horizon: int
    pattern_closed: bool = False
    counterexample: MatrixUnit | None = None
    certificate: UniformNilpotency | None = None

    def to_json(self):
        out = {"ok": self.ok, "exponent": self.exponent, "horizon": self.horizon,
               "pattern_closed": self.pattern_closed}
        if self.counterexample is not None:
            u = self.counterexample
            out["counterexample"] = [u.level, u.summand, u.row, u.col]
        return out


def _support_nilpotent(tower: TowerSpec, e: MatrixUnit, level: int,
                       k: int) -> bool:
    """Boolean-support check: (e x)^k = 0 for every x, mixed terms included."""
    img = embed_element(tower, Element.from_unit(e), level)
    shape = tower.shape(level)
    # reachability pairs (i -> j) of the support pattern e * (anything)
    per_summand_rows: dict[int, set[int]] = {}
    per_summand: dict[int, set[tuple[int, int]]] = {}
    for (s, i, j), _ in img.coeffs.items():
        per_summand_rows.setdefault(s, set()).add((i, j))
    for s, pairs in per_summand_rows.items():
        size = shape[s]
        # e*b has support {(i, l): (i, j) in supp(e), j <= l} for upper b
        reach = {(i, l) for (i, j) in pairs for l in range(j, size + 1)}
        per_summand[s] = reach
    for s, reach in per_summand.items():
        cur = set(reach)
        for _ in range(k - 1):
            cur = {(i, l) for (i, j) in cur for (j2, l) in reach if j == j2}
            if not cur:
                break
        if cur:
            return False
    return True


def uniform_nilpotency(tower: TowerSpec, e: MatrixUnit, exponent: int,
                       horizon: int = 4,
                       pattern_closure: bool = False) -> NilpotencyReport:
    """Verify (embed(e) * b)^exponent = 0 for all units b at levels <= horizon.

    With pattern_closure (Example-4.3-shaped towers: identity carries plus
    a level-independent creation word) the finite check extends soundly to
    all levels, and the boolean-support closure additionally covers
    arbitrary (mixed) elements b.
    """
    if exponent < 1:
        raise ValueError("exponent must be >= 1")
    top = horizon if tower.max_level is None else min(horizon, tower.max_level)
    for level in range(e.level, top + 1):
        x = embed_element(tower, Element.from_unit(e), level)
        for b in tower.units_at(level):
            prod = x * Element.from_unit(b)
            if prod and prod.power(exponent):
                return NilpotencyReport(False, exponent, horizon,
                                        counterexample=b)
    # ok = no counterexample up to the horizon; a certificate additionally
    # covers every later level (finite towers are exhausted outright, and
    # the boolean support closure handles mixed elements b)
    closed = False
    if pattern_closure:
        closed = (not tower.finite and tower.rule.pattern_closed
                  and all(_support_nilpotent(tower, e, lv, exponent)
                          for lv in range(e.level, top + 1)))
    cert = None
    if tower.finite or closed:
        cert = UniformNilpotency(exponent, horizon, closed)
    return NilpotencyReport(True, exponent, horizon,
                            pattern_closed=closed, certificate=cert)


# ---------------------------------------------------------------------------
# finite-level oracle


def finite_level_radical(shape: tuple[int, ...],
                         triangular: bool = True) -> list[dict]:
    """Radical basis of the finite-level algebra by the trace-form oracle."""
    return multi_matrix_algebra(shape, triangular).radical_basis()


def strictly_upper_units(shape: tuple[int, ...]) -> list[tuple[int, int, int]]:
    return [(s, i, j) for s, k in enumerate(shape)
            for i in range(1, k + 1) for j in range(i + 1, k + 1)]


# ---------------------------------------------------------------------------
# membership


def radical_membership(tower: TowerSpec, e: MatrixUnit,
                       expand_horizon: int = DEFAULT_EXPAND_HORIZON,
                       link_horizon: int = DEFAULT_LINK_HORIZON,
                       exponent: int | None = None) -> RadicalStatus:
    top = expand_horizon if tower.max_level is None \
        else min(expand_horizon, tower.max_level)
    # (1) all-linkless decomposition (TUHF criterion; sound for TAF too)
    for n in range(e.level, top + 1):
        dec = decompose(tower, e, n)
        if all(isinstance(link_status(tower, u, link_horizon), CertifiedLinkless)
               for u in dec.units):
            return InRadical(LinklessDecomposition(n, dec.units))
    # (2) recurrent Donsig chain
    if not tower.finite and tower.rule.self_similar:
        cc = chain_cycle_certificate(tower, e, horizon=link_horizon)
        if cc is not None:
            return NotInRadical(cc)
    # (3) uniform nilpotency with pattern closure
    max_block = max(max(tower.shape(n)) for n in range(e.level, top + 1))
    exponents = [exponent] if exponent else list(range(2, max_block + 1))
    for k in exponents:
        rep = uniform_nilpotency(tower, e, k, horizon=top, pattern_closure=True)
        if rep.ok and rep.certificate is not None:
            return InRadical(rep.certificate)
    return Unknown(expand_horizon, link_horizon)


# ---------------------------------------------------------------------------
# extremal subordinate factorization audit


def extremal_subordinate_check(tower: TowerSpec, e: MatrixUnit,
                               level: int) -> dict:
    """Verify e_{i_k,I} e_{I,J} e_{J,j_k} = e_{i_k,j_k} per summand.

    I is the max subordinate row, J the min subordinate col; the lemma's
    hypothesis configuration needs I >= J, which is flagged per summand.
    The products are verified in the full matrix algebra (e_{I,J} may be
    lower-triangular).
    """
    dec = decompose(tower, e, level)
    summands: list[dict] = []
    by_summand: dict[int, list[MatrixUnit]] = {}
    for u in dec.units:
        by_summand.setdefault(u.summand, []).append(u)
    all_ok = True
    for s in sorted(by_summand):
        big_i, small_j = dec.extremal[s]
        checks = []
        for u in by_summand[s]:
            left = Element(level, {(s, u.row, big_i): Fraction(1)})
            mid = Element(level, {(s, big_i, small_j): Fraction(1)})
            right = Element(level, {(s, small_j, u.col): Fraction(1)})
            prod = left * mid * right
            ok = prod == Element.from_unit(u)
            checks.append({"subordinate": [u.row, u.col], "ok": ok})
            all_ok &= ok
        summands.append({"summand": s, "I": big_i, "J": small_j,
                         "lemma_configuration": big_i >= small_j,
                         "factorizations": checks})
    return {"unit": [e.level, e.summand, e.row, e.col], "level": level,
            "summands": summands, "ok": all_ok}
