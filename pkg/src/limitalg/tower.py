"""Finite stages of triangular limit algebras presented by embedding words.

A tower is a sequence of multi-matrix triangular algebras (level shapes)
together with one embedding word collection per consecutive level pair.
Each target summand carries a word of diagonal labels (source summand,
diagonal position); the embedding sends the r-th occurrence of a row
label to pair with the r-th occurrence of a column label.  Diagonal
unitary twists are ignored throughout: only supports matter for every
criterion implemented here.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

Label = tuple[int, int]  # (source summand index, 1-based diagonal position)
Word = tuple[Label, ...]


class LevelRangeError(ValueError):
    pass


class TowerValidationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix units and exact elements


@dataclass(frozen=True, order=True)
class MatrixUnit:
    level: int
    summand: int
    row: int
    col: int

    def key(self) -> tuple[int, int, int]:
        return (self.summand, self.row, self.col)

    @property
    def diagonal(self) -> bool:
        return self.row == self.col


@dataclass(frozen=True)
class MatrixUnitSum:
    level: int
    units: tuple[MatrixUnit, ...]

    def __post_init__(self):
        assert all(u.level == self.level for u in self.units)
        object.__setattr__(self, "units", tuple(sorted(set(self.units))))
        # orthogonal supports per summand
        for axis in (lambda u: (u.summand, u.row), lambda u: (u.summand, u.col)):
            seen = set()
            for u in self.units:
                k = axis(u)
                assert k not in seen, "overlapping supports in MatrixUnitSum"
                seen.add(k)

    def to_element(self, one=Fraction(1)) -> "Element":
        return Element(self.level, {u.key(): one for u in self.units})


class Element:
    """Exact linear combination of matrix-unit coordinates at one level.

    Coefficients may be Fraction or Cyc; zero coefficients are dropped.
    Arithmetic does not enforce upper-triangularity (the extremal
    factorization checks need lower-triangular units), but everything
    produced by tower embeddings stays upper-triangular.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: dict):
        self.level = level
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    @staticmethod
    def from_unit(u: MatrixUnit, one=Fraction(1)) -> "Element":
        return Element(u.level, {u.key(): one})

    @staticmethod
    def zero(level: int) -> "Element":
        return Element(level, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.level == other.level
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.level, frozenset(self.coeffs.items())))

    def __add__(self, other: "Element") -> "Element":
        if self.level != other.level:
            raise ValueError("level mismatch in Element addition")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Element(self.level, out)

    def scale(self, scalar) -> "Element":
        return Element(self.level, {k: scalar * v for k, v in self.coeffs.items()})

    def __mul__(self, other: "Element") -> "Element":
        if self.level != other.level:
            raise ValueError("level mismatch in Element multiplication")
        out: dict = {}
        right_by_row: dict = {}
        for (s, r, c), v in other.coeffs.items():
            right_by_row.setdefault((s, r), []).append((c, v))
        for (s, i, j), a in self.coeffs.items():
            for c, b in right_by_row.get((s, j), ()):
                k = (s, i, c)
                out[k] = out.get(k, 0) + a * b
        return Element(self.level, out)

    def power(self, n: int) -> "Element":
        if n < 1:
            raise ValueError("power requires n >= 1")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def support(self) -> set[tuple[int, int, int]]:
        return set(self.coeffs)

    def __repr__(self):
        items = ", ".join(f"{k}:{v}" for k, v in sorted(self.coeffs.items()))
        return f"Element(level={self.level}, {{{items}}})"


# ---------------------------------------------------------------------------
# embedding word validation


@dataclass
class ValidationReport:
    ok: bool
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations}


def multiplicities(source: tuple[int, ...], word: Word) -> dict[int, int]:
    """m_{t,s} per source summand, assuming COUNT holds."""
    counts: dict[Label, int] = {}
    for lab in word:
        counts[lab] = counts.get(lab, 0) + 1
    return {s: counts.get((s, 1), 0) for s in range(len(source))}


def validate_embedding(source: tuple[int, ...], target: tuple[int, ...],
                       words: tuple[Word, ...]) -> ValidationReport:
    """Check COUNT, LATTICE, INJECTIVE and shape invariants; report-style."""
    violations: list[dict] = []
    if len(words) != len(target):
        violations.append({"kind": "SHAPE",
                           "detail": "one word per target summand required"})
        return ValidationReport(False, violations)
    for t, word in enumerate(words):
        if len(word) != target[t]:
            violations.append({"kind": "SHAPE", "target": t,
                               "detail": f"word length {len(word)} != target size {target[t]}"})
        for q, (s, p) in enumerate(word):
            if not (0 <= s < len(source)) or not (1 <= p <= source[s]):
                violations.append({"kind": "LABEL", "target": t,
                                   "position": q + 1, "label": [s, p]})
        counts: dict[Label, int] = {}
        for lab in word:
            counts[lab] = counts.get(lab, 0) + 1
        for s in range(len(source)):
            per_pos = [counts.get((s, p), 0) for p in range(1, source[s] + 1)]
            if len(set(per_pos)) > 1:
                violations.append({"kind": "COUNT", "target": t, "source": s,
                                   "counts": per_pos})
        # LATTICE (ballot): every prefix has #(s,p) >= #(s,q) for p < q
        running: dict[Label, int] = {}
        witness_done = set()
        for q, (s, p) in enumerate(word):
            running[(s, p)] = running.get((s, p), 0) + 1
            if p > 1 and (t, s) not in witness_done:
                if running[(s, p)] > running.get((s, p - 1), 0):
                    violations.append({"kind": "LATTICE", "target": t, "source": s,
                                       "positions": [p - 1, p],
                                       "prefix": q + 1})
                    witness_done.add((t, s))
    # INJECTIVE over all targets
    reached = set()
    for word in words:
        reached.update(s for s, _ in word)
    for s in range(len(source)):
        if s not in reached:
            violations.append({"kind": "INJECTIVE", "source": s})
    return ValidationReport(not violations, violations)


# ---------------------------------------------------------------------------
# tower rules (level generators for stationary / preset towers)


class TowerRule:
    """Generates shapes and embedding steps for every level."""

    name = "rule"
    self_similar = False      # transfer maps commute with K-normalization
    pattern_closed = False    # Example-4.3 shape: identity carries + fixed new word

    def shape(self, level: int) -> tuple[int, ...]:
        raise NotImplementedError

    def words(self, level: int) -> tuple[Word, ...]:
        raise NotImplementedError

    def frozen_carry(self, level: int, summand: int) -> int | None:
        """Target summand that identity-carries `summand` exclusively, if any."""
        return None

    def frozen_forever(self, level: int, summand: int) -> bool:
        """Whether `summand` is identity-carried at every level >= `level`."""
        return False


class ScaledTUHFRule(TowerRule):
    """Single-summand tower T_K -> T_(c*K) with a scale-covariant word rule."""

    self_similar = True

    def __init__(self, base_size: int, factor: int, label_fn, name: str):
        self.base_size = base_size
        self.factor = factor
        self._label = label_fn  # (position q, source size K, target size cK) -> pos
        self.name = name

    def shape(self, level: int) -> tuple[int, ...]:
        return (self.base_size * self.factor ** level,)

    def words(self, level: int) -> tuple[Word, ...]:
        k = self.base_size * self.factor ** level
        m = k * self.factor
        return (tuple((0, self._label(q, k, m)) for q in range(1, m + 1)),)


def standard_rule(base_size: int = 2) -> ScaledTUHFRule:
    # word [1..K, 1..K]: e_ij -> e_ij + e_(i+K)(j+K)
    return ScaledTUHFRule(base_size, 2,
                          lambda q, k, m: (q - 1) % k + 1, "standard")


def refinement_rule(base_size: int = 2) -> ScaledTUHFRule:
    # word [1,1,2,2,...]: e_ij -> e_(2i-1)(2j-1) + e_(2i)(2j)
    return ScaledTUHFRule(base_size, 2,
                          lambda q, k, m: (q + 1) // 2, "refinement")


class PaperExampleRule(TowerRule):
    """T_2 plus a growing stack of identically-carried T_4 summands.

    Level n has shape (2, 4, ..., 4) with n copies of 4.  The step keeps
    the T_2 summand, doubles it into a fresh T_4, and carries every old
    T_4 to the next slot by an identity word.
    """

    name = "paper-example-taf"
    pattern_closed = True

    def shape(self, level: int) -> tuple[int, ...]:
        return (2,) + (4,) * level

    def words(self, level: int) -> tuple[Word, ...]:
        out: list[Word] = [((0, 1), (0, 2)),
                           ((0, 1), (0, 2), (0, 1), (0, 2))]
        for m in range(1, level + 1):
            out.append(tuple((m, p) for p in range(1, 5)))
        return tuple(out)

    def frozen_carry(self, level: int, summand: int) -> int | None:
        return summand + 1 if summand >= 1 else None

    def frozen_forever(self, level: int, summand: int) -> bool:
        return summand >= 1


class ConstantRule(TowerRule):
    """Verbatim repetition of a fixed word collection on a fixed shape."""

    name = "repeat"
    self_similar = True

    def __init__(self, shape: tuple[int, ...], words: tuple[Word, ...]):
        self._shape = shape
        self._words = words
        # frozen-carry table: source s identity-carried to a unique target
        self._carry: dict[int, int | None] = {}
        for s in range(len(shape)):
            targets = [t for t, w in enumerate(words) if any(l[0] == s for l in w)]
            carry = None
            if len(targets) == 1:
                t = targets[0]
                ident = tuple((s, p) for p in range(1, shape[s] + 1))
                if words[t] == ident:
                    carry = t
            self._carry[s] = carry

    def shape(self, level: int) -> tuple[int, ...]:
        return self._shape

    def words(self, level: int) -> tuple[Word, ...]:
        return self._words

    def frozen_carry(self, level: int, summand: int) -> int | None:
        return self._carry.get(summand)

    def frozen_forever(self, level: int, summand: int) -> bool:
        seen = set()
        s = summand
        while s not in seen:
            seen.add(s)
            t = self._carry.get(s)
            if t is None:
                return False
            s = t
        return True


# ---------------------------------------------------------------------------
# tower spec


class TowerSpec:
    """Levels, embedding words, and optional generating rule."""

    def __init__(self, levels: list[tuple[int, ...]] | None = None,
                 steps: list[tuple[Word, ...]] | None = None,
                 rule: TowerRule | None = None,
                 rule_start: int = 0,
                 name: str = ""):
        self.levels = [tuple(l) for l in (levels or [])]
        self.steps = [tuple(tuple(w) for w in s) for s in (steps or [])]
        self.rule = rule
        self.rule_start = rule_start
        self.name = name
        if rule is None and not self.levels:
            raise TowerValidationError("tower needs levels or a rule")
        if self.levels and len(self.steps) != len(self.levels) - 1:
            raise TowerValidationError("need exactly one embedding per level pair")
        for n, words in enumerate(self.steps):
            rep = validate_embedding(self.levels[n], self.levels[n + 1], words)
            if not rep.ok:
                raise TowerValidationError(
                    f"embedding {n}->{n + 1} invalid: {rep.violations}")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def from_rule(rule: TowerRule, name: str = "") -> "TowerSpec":
        return TowerSpec(rule=rule, name=name or rule.name)

    @property
    def stationary(self) -> bool:
        return self.rule is not None

    @property
    def finite(self) -> bool:
        return self.rule is None

    @property
    def max_level(self) -> int | None:
        return None if self.rule is not None else len(self.levels) - 1

    def has_level(self, n: int) -> bool:
        if n < 0:
            return False
        return self.rule is not None or n < len(self.levels)

    def shape(self, n: int) -> tuple[int, ...]:
        if n < len(self.levels):
            return self.levels[n]
        if self.rule is not None:
            return self.rule.shape(n - self.rule_start)
        raise LevelRangeError(f"level {n} out of range")

    def words(self, n: int) -> tuple[Word, ...]:
        """Embedding words for the step level n -> n+1."""
        if n < len(self.steps):
            return self.steps[n]
        if self.rule is not None:
            return self.rule.words(n - self.rule_start)
        raise LevelRangeError(f"no embedding at level {n}")

    def frozen_carry(self, level: int, summand: int) -> int | None:
        if self.rule is not None and level >= len(self.steps):
            return self.rule.frozen_carry(level - self.rule_start, summand)
        if level < len(self.steps):
            # compute from the explicit word collection
            words = self.steps[level]
            shape = self.shape(level)
            targets = [t for t, w in enumerate(words) if any(l[0] == summand for l in w)]
            if len(targets) == 1:
                t = targets[0]
                ident = tuple((summand, p) for p in range(1, shape[summand] + 1))
                if words[t] == ident:
                    return t
            return None
        return None

    def units_at(self, level: int, triangular: bool = True):
        """All matrix units at a level, canonical (summand,row,col) order."""
        for s, k in enumerate(self.shape(level)):
            for i in range(1, k + 1):
                cols = range(i, k + 1) if triangular else range(1, k + 1)
                for j in cols:
                    yield MatrixUnit(level, s, i, j)

    def is_tuhf_at(self, level: int) -> bool:
        return len(self.shape(level)) == 1


# ---------------------------------------------------------------------------
# embedding of units and elements


def occurrence_positions(word: Word, label: Label) -> list[int]:
    return [q + 1 for q, lab in enumerate(word) if lab == label]


def _embed_one_step(tower: TowerSpec, units: list[MatrixUnit],
                    level: int) -> list[MatrixUnit]:
    words = tower.words(level)
    out: list[MatrixUnit] = []
    for t, word in enumerate(words):
        for u in units:
            rows = occurrence_positions(word, (u.summand, u.row))
            cols = occurrence_positions(word, (u.summand, u.col))
            for r, c in zip(rows, cols):
                out.append(MatrixUnit(level + 1, t, r, c))
    return out


def embed_unit(tower: TowerSpec, e: MatrixUnit, target_level: int) -> MatrixUnitSum:
    """Image of a matrix unit at a later level (r-th-occurrence pairing)."""
    if target_level < e.level or not tower.has_level(target_level):
        raise LevelRangeError(
            f"target level {target_level} out of range for unit at {e.level}")
    units = [e]
    for n in range(e.level, target_level):
        units = _embed_one_step(tower, units, n)
    return MatrixUnitSum(target_level, tuple(units))


def embed_element(tower: TowerSpec, x: Element, target_level: int) -> Element:
    if target_level < x.level:
        raise LevelRangeError("cannot embed to an earlier level")
    out: dict = {}
    for (s, i, j), v in x.coeffs.items():
        img = embed_unit(tower, MatrixUnit(x.level, s, i, j), target_level)
        for u in img.units:
            k = u.key()
            out[k] = out.get(k, 0) + v
    return Element(target_level, out)


@dataclass
class Decomposition:
    units: tuple[MatrixUnit, ...]
    extremal: dict[int, tuple[int, int]]  # summand -> (I = max row, J = min col)


def decompose(tower: TowerSpec, e: MatrixUnit, level: int) -> Decomposition:
    """Subordinates of e at `level` plus per-summand extremal index pairs."""
    img = embed_unit(tower, e, level)
    extremal: dict[int, tuple[int, int]] = {}
    for u in img.units:
        big_i, small_j = extremal.get(u.summand, (0, None))
        extremal[u.summand] = (max(big_i, u.row),
                               u.col if small_j is None else min(small_j, u.col))
    return Decomposition(img.units, extremal)


# ---------------------------------------------------------------------------
# embedding-order audit (diagonal occurrence bounds for unital TUHF steps)


def verify_embedding_order(tower: TowerSpec, level: int) -> dict:
    """Audit min/max occurrence bounds of diagonal units across one step.

    For a unital single-summand step T_n -> T_m every valid word satisfies
    min_occ(i) <= (i-1)m/n + 1 and max_occ(i) >= i*m/n; a violation here
    indicates a bug in word validation or generation.
    """
    if not (tower.is_tuhf_at(level) and tower.is_tuhf_at(level + 1)):
        raise TowerValidationError("embedding-order audit requires a TUHF step")
    n = tower.shape(level)[0]
    m = tower.shape(level + 1)[0]
    word = tower.words(level)[0]
    entries = []
    violations = []
    for i in range(1, n + 1):
        occ = occurrence_positions(word, (0, i))
        lo_bound = Fraction(i - 1, 1) * Fraction(m, n) + 1
        hi_bound = Fraction(i, 1) * Fraction(m, n)
        ok = Fraction(occ[0]) <= lo_bound and Fraction(occ[-1]) >= hi_bound
        entries.append({"diagonal": i, "first": occ[0], "last": occ[-1],
                        "first_bound": str(lo_bound), "last_bound": str(hi_bound),
                        "ok": ok})
        if not ok:
            violations.append(i)
    return {"level": level, "source": n, "target": m,
            "entries": entries, "violations": violations, "ok": not violations}


# ---------------------------------------------------------------------------
# random valid words (seeded property tests)


def random_lattice_word(source: tuple[int, ...], reps_per_source: dict[int, int],
                        rng: random.Random) -> Word:
    """Uniform-ish random word satisfying COUNT and LATTICE.

    Greedy sampling: at every step pick any label whose ballot constraint
    still allows it.
    """
    remaining = {(s, p): reps_per_source[s]
                 for s in range(len(source)) for p in range(1, source[s] + 1)}
    used: dict[Label, int] = {k: 0 for k in remaining}
    word: list[Label] = []
    total = sum(remaining.values())
    for _ in range(total):
        options = [lab for lab, rem in remaining.items()
                   if rem > 0 and (lab[1] == 1 or used[(lab[0], lab[1] - 1)] > used[lab])]
        lab = rng.choice(sorted(options))
        word.append(lab)
        remaining[lab] -= 1
        used[lab] += 1
    return tuple(word)


# ---------------------------------------------------------------------------
# presets


PRESETS = {
    "standard-2": lambda: TowerSpec.from_rule(standard_rule(2), "standard-2"),
    "refinement-2": lambda: TowerSpec.from_rule(refinement_rule(2), "refinement-2"),
    "paper-example-taf": lambda: TowerSpec.from_rule(PaperExampleRule(),
                                                     "paper-example-taf"),
}


def preset(name: str) -> TowerSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise TowerValidationError(f"unknown preset {name!r}") from None
