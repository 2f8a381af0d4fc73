"""Link detection, linkless certificates, and the semisimplicity report.

A matrix unit e has a link when e*A*e != 0; concretely, when two
occurrences r, r' of an embedded image of e sit in the same summand with
col(r) <= row(r').  Linklessness is only co-semi-decidable, so the API is
tri-state: Linked / CertifiedLinkless / NotLinkedUpTo(horizon).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tower import LevelRangeError, MatrixUnit, TowerSpec, embed_unit

DEFAULT_HORIZON = 12


@dataclass(frozen=True)
class Linked:
    level: int
    witness: MatrixUnit

    kind = "linked"

    def to_json(self):
        return {"status": "linked", "level": self.level,
                "witness": list((self.witness.summand, self.witness.row,
                                 self.witness.col))}


@dataclass(frozen=True)
class CertifiedLinkless:
    certificate: str  # "frozen" | "separation" | "finite-tower"
    detail: tuple = ()

    kind = "linkless"

    def to_json(self):
        return {"status": "linkless", "certificate": self.certificate}


@dataclass(frozen=True)
class NotLinkedUpTo:
    horizon: int

    kind = "unknown"

    def to_json(self):
        return {"status": "not-linked-up-to", "horizon": self.horizon}


LinkStatus = Linked | CertifiedLinkless | NotLinkedUpTo


def has_link_at(tower: TowerSpec, e: MatrixUnit, level: int) -> MatrixUnit | None:
    """Lexicographically least link witness for e at `level`, or None.

    A witness is f = e_{col(r), row(r')} for occurrences r, r' of the
    embedded image in one summand with col(r) <= row(r'); then
    embed(e)*f*embed(e) = e_{row(r), col(r')} != 0.
    """
    img = embed_unit(tower, e, level)
    by_summand: dict[int, list[MatrixUnit]] = {}
    for u in img.units:
        by_summand.setdefault(u.summand, []).append(u)
    for s, occ in sorted(by_summand.items()):
        rows = sorted(u.row for u in occ)
        # least witness: smallest col with some row >= it, then that row
        for c in sorted(u.col for u in occ):
            r = next((r for r in rows if r >= c), None)
            if r is not None:
                return MatrixUnit(level, s, c, r)
    return None


def _reachable_frozen(tower: TowerSpec, e: MatrixUnit) -> bool:
    """Certificate (F): e's summand is identity-carried forever.

    Walks frozen-carry links; succeeds once a rule-backed tower confirms
    the carried summand is frozen at the stationary tail (presets expose
    this structurally), or fails at the first non-identity step.
    """
    if tower.finite:
        return False
    level, summand = e.level, e.summand
    # explicit prefix must carry identically too
    while level < len(tower.steps):
        target = tower.frozen_carry(level, summand)
        if target is None:
            return False
        summand = target
        level += 1
    return tower.rule.frozen_forever(level - tower.rule_start, summand)


def _separation_certificate(tower: TowerSpec, e: MatrixUnit,
                            max_steps: int = 64) -> tuple | None:
    """Certificate (S): separation induction on stationary towers.

    Abstract state (maxRow, minCol) per level; the transfer
    over-approximates row occurrences and under-approximates column
    occurrences, so preserved separation plus recurrence of the
    normalized state ((maxRow)/K, (minCol-1)/K) certifies linklessness
    at every level.
    """
    if tower.finite or not tower.rule.self_similar:
        return None
    if not tower.is_tuhf_at(e.level):
        return None
    max_row, min_col = e.row, e.col
    if min_col <= max_row:
        return None
    level = e.level
    seen: dict[tuple, int] = {}
    trace = []
    for step in range(max_steps):
        k = tower.shape(level)[0]
        norm = (Fraction(max_row, k), Fraction(min_col - 1, k))
        trace.append((level, max_row, min_col))
        if norm in seen:
            return tuple(trace)
        seen[norm] = step
        if not tower.is_tuhf_at(level + 1):
            return None
        word = tower.words(level)[0]
        rows = [q for q, (_, p) in enumerate(word, start=1) if p <= max_row]
        cols = [q for q, (_, p) in enumerate(word, start=1) if p >= min_col]
        if not rows or not cols:
            return None
        max_row, min_col = max(rows), min(cols)
        if min_col <= max_row:
            return None
        level += 1
    return None


def certify_linkless(tower: TowerSpec, e: MatrixUnit) -> CertifiedLinkless | None:
    """Sound linkless certificate, or None when no certificate applies."""
    # any certificate needs no link at the unit's own level
    if has_link_at(tower, e, e.level) is not None:
        return None
    if _reachable_frozen(tower, e):
        return CertifiedLinkless("frozen")
    trace = _separation_certificate(tower, e)
    if trace is not None:
        return CertifiedLinkless("separation", trace)
    if tower.finite:
        # the tower IS the finite algebra: exhaustive search decides
        top = tower.max_level
        if all(has_link_at(tower, e, n) is None for n in range(e.level, top + 1)):
            return CertifiedLinkless("finite-tower")
        return None
    return None


def link_status(tower: TowerSpec, e: MatrixUnit,
                horizon: int = DEFAULT_HORIZON) -> LinkStatus:
    if horizon < e.level:
        raise LevelRangeError("horizon below the unit's level")
    # certificates are sound, so they short-circuit the horizon scan
    cert = certify_linkless(tower, e)
    if cert is not None:
        return cert
    top = horizon if tower.max_level is None else min(horizon, tower.max_level)
    for n in range(e.level, top + 1):
        w = has_link_at(tower, e, n)
        if w is not None:
            return Linked(n, w)
    return NotLinkedUpTo(horizon)


def linkless_units_at(tower: TowerSpec, level: int,
                      horizon: int = DEFAULT_HORIZON) -> list[MatrixUnit]:
    """Units at `level` with linkless certificates, canonical order."""
    out = []
    for u in tower.units_at(level):
        if isinstance(link_status(tower, u, horizon), CertifiedLinkless):
            out.append(u)
    return out


def donsig_report(tower: TowerSpec, level: int,
                  horizon: int = DEFAULT_HORIZON) -> dict:
    """Classify all units at levels <= `level`; Donsig's criterion verdict."""
    if level > horizon:
        raise LevelRangeError("level exceeds horizon")
    entries = []
    any_linkless = False
    any_unknown = False
    top = level if tower.max_level is None else min(level, tower.max_level)
    for n in range(top + 1):
        for u in tower.units_at(n):
            st = link_status(tower, u, horizon)
            entries.append({"unit": [u.level, u.summand, u.row, u.col],
                            **st.to_json()})
            any_linkless |= isinstance(st, CertifiedLinkless)
            any_unknown |= isinstance(st, NotLinkedUpTo)
    if any_linkless:
        verdict = "not semisimple"
    elif any_unknown:
        verdict = "inconclusive"
    else:
        verdict = "semisimple (evidence)"
    return {"level": top, "horizon": horizon, "verdict": verdict,
            "units": entries}
