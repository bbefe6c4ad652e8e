"""
Sliced (Morse) presentations of framed oriented homogeneous tangles.

A diagram is read bottom to top.  Each strand carries an orientation flag:
``d`` (downward, the space V) or ``u`` (upward, the dual V*).  Slices:

    cup_plain    @p   inserts (d, u) at p        1 -> e_i (x) e^i
    cup_twisted  @p   inserts (u, d) at p        1 -> e^i (x) K^-1 e_i
    cap_plain    @p   removes (u, d) at p, p+1   phi (x) v -> phi(v)
    cap_twisted  @p   removes (d, u) at p, p+1   v (x) phi -> phi(K v)
    cross+       @p   R-check on the (d, d) strands p, p+1
    cross-       @p   inverse R-check on (d, d) strands p, p+1
    id           @p   no-op on strand p

Text format::

    tangle v1
    bottom: d
    cup_twisted @0
    ...
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .operator import DOWN, UP

CUP_PLAIN = "cup_plain"
CUP_TWISTED = "cup_twisted"
CAP_PLAIN = "cap_plain"
CAP_TWISTED = "cap_twisted"
CROSS_POS = "cross_pos"
CROSS_NEG = "cross_neg"
IDENTITY = "id"

KINDS = (CUP_PLAIN, CUP_TWISTED, CAP_PLAIN, CAP_TWISTED, CROSS_POS, CROSS_NEG, IDENTITY)
_TOKEN = {CROSS_POS: "cross+", CROSS_NEG: "cross-"}
_KIND_OF_TOKEN = {_TOKEN.get(k, k): k for k in KINDS}

# strands produced by a cup / consumed by a cap, left to right
CUP_OUTPUT = {CUP_PLAIN: (DOWN, UP), CUP_TWISTED: (UP, DOWN)}
CAP_INPUT = {CAP_PLAIN: (UP, DOWN), CAP_TWISTED: (DOWN, UP)}


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(loc + message)


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Slice:
    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DiagramError(f"unknown slice kind {self.kind!r}")

    @property
    def token(self) -> str:
        return _TOKEN.get(self.kind, self.kind)

    def __str__(self) -> str:
        return f"{self.token} @{self.position}"


def apply_slice(sig: tuple[str, ...], s: Slice) -> tuple[str, ...]:
    """Signature after ``s``; raises DiagramError when the slice does not fit."""
    p = s.position
    width = len(sig)
    if s.kind in CUP_OUTPUT:
        if not 0 <= p <= width:
            raise DiagramError(f"{s}: cup position outside 0..{width}")
        return sig[:p] + CUP_OUTPUT[s.kind] + sig[p:]
    if s.kind == IDENTITY:
        if not 0 <= p < width:
            raise DiagramError(f"{s}: no strand at position {p} (width {width})")
        return sig
    if not 0 <= p <= width - 2:
        raise DiagramError(f"{s}: needs strands {p},{p + 1} but width is {width}")
    pair = sig[p:p + 2]
    if s.kind in CAP_INPUT:
        if pair != CAP_INPUT[s.kind]:
            raise DiagramError(f"{s}: expects orientations {CAP_INPUT[s.kind]}, found {pair}")
        return sig[:p] + sig[p + 2:]
    if pair != (DOWN, DOWN):
        raise DiagramError(f"{s}: crossings are only allowed between two downward strands, found {pair}")
    return sig


@dataclass(frozen=True)
class Diagram:
    slices: tuple[Slice, ...]
    bottom: tuple[str, ...]
    top: tuple[str, ...] = field(default=None)  # derived when omitted
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        if self.top is None:
            sig = self.bottom
            try:
                for s in self.slices:
                    sig = apply_slice(sig, s)
            except DiagramError:
                sig = ()
            object.__setattr__(self, "top", sig)
        else:
            object.__setattr__(self, "top", tuple(self.top))

    @property
    def boundary_class(self) -> str:
        shape = (len(self.bottom), len(self.top))
        return {(1, 1): "(1,1)", (2, 2): "(2,2)"}.get(shape, f"({shape[0]},{shape[1]})")

    def widths(self) -> list[int]:
        sig = self.bottom
        out = [len(sig)]
        for s in self.slices:
            sig = apply_slice(sig, s)
            out.append(len(sig))
        return out

    def max_width(self) -> int:
        return max(self.widths())

    def count(self, *kinds: str) -> int:
        return sum(1 for s in self.slices if s.kind in kinds)

    def label(self) -> str:
        if self.name:
            return self.name
        return "sha256:" + hashlib.sha256(serialize(self).encode()).hexdigest()[:16]


@dataclass
class ValidationReport:
    valid: bool
    boundary_class: str
    problems: list[str]
    signatures: list[tuple[str, ...]]


def validate(d: Diagram) -> ValidationReport:
    problems = []
    sigs = [d.bottom]
    sig = d.bottom
    for bad in (x for x in d.bottom if x not in (DOWN, UP)):
        problems.append(f"bottom signature has invalid flag {bad!r}")
    for n, s in enumerate(d.slices):
        try:
            sig = apply_slice(sig, s)
        except DiagramError as exc:
            problems.append(f"slice {n}: {exc}")
            break
        sigs.append(sig)
    else:
        if sig != d.top:
            problems.append(f"top signature {d.top} does not match derived {sig}")
    return ValidationReport(not problems, d.boundary_class, problems, sigs)


# -- text format --------------------------------------------------------------

_SLICE_RE = re.compile(r"^(\S+)\s*@\s*(-?\d+)$")


def parse(text: str, name: str | None = None) -> Diagram:
    """Parse and validate the line-oriented tangle format."""
    header_seen = False
    bottom = None
    slices: list[Slice] = []
    sig: tuple[str, ...] = ()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        col = len(line) - len(line.lstrip()) + 1
        line = line.strip()
        if not line:
            continue
        if not header_seen:
            if line != "tangle v1":
                raise ParseError(f"expected header 'tangle v1', got {line!r}", lineno, col)
            header_seen = True
            continue
        if bottom is None:
            if not line.startswith("bottom:"):
                raise ParseError("expected 'bottom: <d|u list>'", lineno, col)
            body = line[len("bottom:"):].strip()
            flags = tuple(f.strip() for f in body.split(",")) if body else ()
            for f in flags:
                if f not in (DOWN, UP):
                    raise ParseError(f"malformed signature flag {f!r} (use d or u)", lineno, col)
            bottom = sig = flags
            continue
        m = _SLICE_RE.match(line)
        if not m:
            raise ParseError(f"malformed slice {line!r}; expected '<kind> @<int>'", lineno, col)
        token, pos = m.group(1), int(m.group(2))
        kind = _KIND_OF_TOKEN.get(token)
        if kind is None:
            raise ParseError(f"unknown keyword {token!r}", lineno, col)
        s = Slice(kind, pos)
        try:
            sig = apply_slice(sig, s)
        except DiagramError as exc:
            raise ParseError(str(exc), lineno, col) from None
        slices.append(s)
    if not header_seen:
        raise ParseError("empty input; expected header 'tangle v1'")
    if bottom is None:
        raise ParseError("missing 'bottom:' line")
    return Diagram(tuple(slices), bottom, sig, name=name)


def serialize(d: Diagram) -> str:
    lines = ["tangle v1", "bottom: " + ",".join(d.bottom)]
    lines += [str(s) for s in d.slices]
    return "\n".join(lines) + "\n"


# -- built-in diagrams -----------------------------------------------------------

def _diagram(bottom: str, spec: str, name: str | None = None) -> Diagram:
    slices = []
    for item in spec.split(";"):
        item = item.strip()
        if item:
            token, pos = item.split("@")
            slices.append(Slice(_KIND_OF_TOKEN[token.strip()], int(pos)))
    d = Diagram(tuple(slices), tuple(bottom.split(",")) if bottom else (), name=name)
    report = validate(d)
    if not report.valid:
        raise DiagramError("; ".join(report.problems))
    return d


# The figure-eight opens the closure of (s2 s1^-1)^2 on the three downward
# strands 2, 3, 4: two twisted cups, four crossings, two plain caps.
_BUILTINS = {
    "unknot": ("d", "id@0"),
    "unknot_twisted": ("d", "cup_twisted@0; cross+@1; cap_plain@0"),
    "trefoil": ("d", "cup_twisted@0; cross+@1; cross+@1; cross+@1; cap_plain@0"),
    "figure_eight": ("d", "cup_twisted@0; cup_twisted@1; cross+@3; cross-@2; cross+@3; cross-@2; cap_plain@1; cap_plain@0"),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> Diagram:
    try:
        bottom, spec = _BUILTINS[name]
    except KeyError:
        raise DiagramError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    return _diagram(bottom, spec, name)


# -- Turaev move pairs --------------------------------------------------------------
#
# Each entry lists (bottom signature, left slices, right slices).  Variants run
# over orientations and crossing signs.

def _sideways(first: str, second: str) -> str:
    """(u, d) -> (d, u) -> (u, d) through two sideways crossings."""
    return (f"cup_plain@2; {first}@1; cap_plain@0; "
            f"cup_twisted@0; {second}@1; cap_twisted@2")


def _sideways_rev(first: str, second: str) -> str:
    """(d, u) -> (u, d) -> (d, u)."""
    return (f"cup_twisted@0; {first}@1; cap_twisted@2; "
            f"cup_plain@2; {second}@1; cap_plain@0")


_MOVES: dict[int, list[tuple[str, str, str]]] = {
    # zigzag on a downward strand, both sides
    1: [
        ("d", "cup_twisted@1; cap_twisted@0", ""),
        ("d", "cup_plain@0; cap_plain@1", ""),
    ],
    # zigzag on an upward strand, both sides
    2: [
        ("u", "cup_plain@1; cap_plain@0", ""),
        ("u", "cup_twisted@0; cap_twisted@1", ""),
    ],
    # crossing of two upward strands, rotated through plain vs twisted cups and caps
    3: [
        ("u,u", "cup_plain@2; cup_plain@3; cross+@2; cap_plain@1; cap_plain@0",
                "cup_twisted@0; cup_twisted@1; cross+@2; cap_twisted@3; cap_twisted@2"),
        ("u,u", "cup_plain@2; cup_plain@3; cross-@2; cap_plain@1; cap_plain@0",
                "cup_twisted@0; cup_twisted@1; cross-@2; cap_twisted@3; cap_twisted@2"),
    ],
    # opposite curls on either side of a strand cancel
    4: [
        ("d", "cup_twisted@0; cross+@1; cap_plain@0; cup_plain@1; cross-@0; cap_twisted@1", ""),
        ("d", "cup_twisted@0; cross-@1; cap_plain@0; cup_plain@1; cross+@0; cap_twisted@1", ""),
    ],
    # second Reidemeister move, parallel downward strands
    5: [
        ("d,d", "cross+@0; cross-@0", ""),
        ("d,d", "cross-@0; cross+@0", ""),
    ],
    # second Reidemeister move, antiparallel strands
    6: [
        ("u,d", _sideways("cross+", "cross-"), ""),
        ("u,d", _sideways("cross-", "cross+"), ""),
        ("d,u", _sideways_rev("cross+", "cross-"), ""),
        ("d,u", _sideways_rev("cross-", "cross+"), ""),
    ],
    # third Reidemeister move
    7: [
        ("d,d,d", "cross+@0; cross+@1; cross+@0", "cross+@1; cross+@0; cross+@1"),
        ("d,d,d", "cross-@0; cross-@1; cross-@0", "cross-@1; cross-@0; cross-@1"),
        ("d,d,d", "cross+@0; cross+@1; cross-@0", "cross-@1; cross+@0; cross+@1"),
    ],
}


def turaev_variants(move: int) -> int:
    if move not in _MOVES:
        raise DiagramError(f"Turaev move must be in 1..7, got {move}")
    return len(_MOVES[move])


def turaev_pair(move: int, variant: int = 0) -> tuple[Diagram, Diagram]:
    count = turaev_variants(move)
    if not 0 <= variant < count:
        raise DiagramError(f"move {move} has variants 0..{count - 1}, got {variant}")
    bottom, left, right = _MOVES[move][variant]
    width = len(bottom.split(","))
    if not right:
        right = "; ".join(f"id@{p}" for p in range(width))
    return (_diagram(bottom, left, f"move{move}.{variant}L"),
            _diagram(bottom, right, f"move{move}.{variant}R"))


def all_turaev_pairs():
    for move in sorted(_MOVES):
        for variant in range(len(_MOVES[move])):
            yield move, variant, turaev_pair(move, variant)
