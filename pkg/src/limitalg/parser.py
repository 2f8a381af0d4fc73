"""Line-oriented parser for tower spec files (with optional action blocks).

Format::

    level 0 = [2]
    level 1 = [2,4]
    embed 0 -> 1 {
      target 0 : (0,1) (0,2)
      target 1 : (0,1) (0,2) (0,1) (0,2)
    }
    repeat                     # repeat last embedding pattern forever
    action g order 2 {         # optional finite abelian action data
      level 0 -> 0 {
        target 0 : (0,1) (0,2)
      }
    }

'#' starts a comment.  `repeat` requires the last two level shapes to be
equal so the final word collection can be reused verbatim.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .tower import (ConstantRule, TowerSpec, TowerValidationError, Word,
                    preset as builtin_preset, validate_embedding)


class TowerSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ActionSpecData:
    """Raw action data: one generator with its per-level embedding words."""
    name: str
    order: int
    maps: dict[int, tuple[int, tuple[Word, ...]]] = field(default_factory=dict)


_LABEL_RE = re.compile(r"\((\d+)\s*,\s*(\d+)\)")


def _parse_word(text: str, lineno: int) -> Word:
    stripped = _LABEL_RE.sub("", text).strip()
    if stripped:
        col = text.find(stripped[0]) + 1
        raise TowerSyntaxError(f"unexpected token {stripped.split()[0]!r} in word",
                               lineno, col)
    return tuple((int(s), int(p)) for s, p in _LABEL_RE.findall(text))


def _parse_shape(text: str, lineno: int) -> tuple[int, ...]:
    m = re.fullmatch(r"\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]", text.strip())
    if not m:
        raise TowerSyntaxError(f"malformed level shape {text.strip()!r}", lineno)
    return tuple(int(x) for x in m.group(1).split(","))


def parse_tower_file(text: str):
    """Parse tower source; returns (TowerSpec, list[ActionSpecData])."""
    lines = text.splitlines()
    levels: dict[int, tuple[int, ...]] = {}
    embeds: dict[int, tuple[Word, ...]] = {}
    actions: list[ActionSpecData] = []
    repeat = False
    preset_name: str | None = None

    i = 0

    def syntax(msg: str, lineno: int, column: int = 1):
        raise TowerSyntaxError(msg, lineno, column)

    def strip(line: str) -> str:
        return line.split("#", 1)[0].strip()

    def read_block(start: int, header_words: dict | None = None):
        """Collect `target t : word` lines until the closing brace."""
        j = start
        targets: dict[int, Word] = {}
        while j < len(lines):
            s = strip(lines[j])
            j += 1
            if not s:
                continue
            if s == "}":
                if not targets:
                    syntax("empty block", j)
                n = max(targets) + 1
                if sorted(targets) != list(range(n)):
                    syntax("target indices must be 0..r-1", j)
                return tuple(targets[t] for t in range(n)), j
            m = re.match(r"target\s+(\d+)\s*:\s*(.*)$", s)
            if not m:
                syntax(f"expected 'target t : ...' or '}}', got {s!r}", j)
            t = int(m.group(1))
            if t in targets:
                syntax(f"duplicate target {t}", j)
            targets[t] = _parse_word(m.group(2), j)
        syntax("unterminated block", len(lines))

    while i < len(lines):
        s = strip(lines[i])
        i += 1
        if not s:
            continue
        if m := re.match(r"level\s+(\d+)\s*=\s*(.*)$", s):
            n = int(m.group(1))
            if n in levels:
                syntax(f"duplicate level {n}", i)
            levels[n] = _parse_shape(m.group(2), i)
        elif m := re.match(r"embed\s+(\d+)\s*->\s*(\d+)\s*\{\s*$", s):
            a, b = int(m.group(1)), int(m.group(2))
            if b != a + 1:
                syntax("embeddings must map consecutive levels", i)
            if a in embeds:
                syntax(f"duplicate embedding {a} -> {b}", i)
            words, i = read_block(i)
            embeds[a] = words
        elif s == "repeat":
            repeat = True
        elif m := re.match(r"preset\s+(\S+)\s*$", s):
            preset_name = m.group(1)
        elif m := re.match(r"action\s+(\w+)\s+order\s+(\d+)\s*\{\s*$", s):
            act = ActionSpecData(m.group(1), int(m.group(2)))
            while i < len(lines):
                t = strip(lines[i])
                i += 1
                if not t:
                    continue
                if t == "}":
                    break
                mm = re.match(r"level\s+(\d+)\s*->\s*(\d+)\s*\{\s*$", t)
                if not mm:
                    syntax(f"expected 'level n -> N {{' in action block, got {t!r}", i)
                src, dst = int(mm.group(1)), int(mm.group(2))
                words, i = read_block(i)
                act.maps[src] = (dst, words)
            else:
                syntax("unterminated action block", len(lines))
            actions.append(act)
        else:
            syntax(f"unrecognized directive {s!r}", i)

    if preset_name is not None:
        if levels or embeds or repeat:
            raise TowerSyntaxError(
                "'preset' cannot be combined with level/embed/repeat", 1)
        return builtin_preset(preset_name), actions

    if not levels:
        raise TowerSyntaxError("no levels defined", max(1, len(lines)))
    count = max(levels) + 1
    if sorted(levels) != list(range(count)):
        raise TowerSyntaxError("levels must be numbered 0..N contiguously", 1)
    shapes = [levels[n] for n in range(count)]
    steps = []
    for n in range(count - 1):
        if n not in embeds:
            raise TowerSyntaxError(f"missing embedding {n} -> {n + 1}", 1)
        steps.append(embeds[n])
    if set(embeds) - set(range(count - 1)):
        raise TowerSyntaxError("embedding refers to an undefined level", 1)

    rule = None
    if repeat:
        if count < 2:
            raise TowerValidationError("repeat needs at least one embedding")
        if shapes[-1] != shapes[-2]:
            raise TowerValidationError(
                "repeat requires the last two level shapes to be equal "
                f"(got {shapes[-2]} -> {shapes[-1]})")
        rule = ConstantRule(shapes[-1], steps[-1])

    for n in range(count - 1):
        rep = validate_embedding(shapes[n], shapes[n + 1], steps[n])
        if not rep.ok:
            raise TowerValidationError(
                f"embedding {n}->{n + 1} invalid: {rep.violations}")

    return TowerSpec(shapes, steps, rule=rule), actions


def parse_tower(text: str) -> TowerSpec:
    return parse_tower_file(text)[0]


def render_tower(tower: TowerSpec, levels: int | None = None) -> str:
    """Render a tower back to spec text (rule-backed towers need `levels`)."""
    if tower.finite:
        n_levels = len(tower.levels)
    else:
        if levels is None:
            raise ValueError("rule-backed tower needs an explicit level count")
        n_levels = levels
    out = []
    for n in range(n_levels):
        out.append(f"level {n} = [{','.join(map(str, tower.shape(n)))}]")
    for n in range(n_levels - 1):
        out.append(f"embed {n} -> {n + 1} {{")
        for t, word in enumerate(tower.words(n)):
            labels = " ".join(f"({s},{p})" for s, p in word)
            out.append(f"  target {t} : {labels}")
        out.append("}")
    return "\n".join(out) + "\n"
