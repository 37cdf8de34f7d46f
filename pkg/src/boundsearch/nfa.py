"""Thompson construction and nondeterministic state-machine simulation.

Compiled automata have exactly one accept state with no outgoing
transitions and at most two outgoing transitions per state. Matching is
epsilon-closure set simulation: active state sets are bitmasks, advanced
one input symbol at a time, so full-string matching costs O(len(input) *
state_count) with no backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .patterns import AnySymbol, Concat, Epsilon, Literal, PatternAst, Star, Union

EPSILON = "eps"
ANY = "any"
SYMBOL = "sym"

# transition label: ("sym", ch) | ("any", None) | ("eps", None)
Label = tuple[str, str | None]


@dataclass(frozen=True)
class MatchSpan:
    """Half-open character-offset interval, counting Unicode scalars."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span [{self.start},{self.end})")


@dataclass(frozen=True)
class Nfa:
    state_count: int
    start: int
    accept: int
    transitions: tuple[tuple[int, Label, int], ...]

    def __post_init__(self) -> None:
        ids = range(self.state_count)
        if self.start not in ids or self.accept not in ids:
            raise ValueError("start/accept out of range")
        for frm, _, to in self.transitions:
            if frm not in ids or to not in ids:
                raise ValueError(f"transition ({frm}->{to}) out of range")


class _Builder:
    def __init__(self) -> None:
        self.count = 0
        self.transitions: list[tuple[int, Label, int]] = []

    def state(self) -> int:
        self.count += 1
        return self.count - 1

    def edge(self, frm: int, label: Label, to: int) -> None:
        self.transitions.append((frm, label, to))

    def build(self, ast: PatternAst) -> tuple[int, int]:
        if isinstance(ast, Epsilon):
            s, a = self.state(), self.state()
            self.edge(s, (EPSILON, None), a)
            return s, a
        if isinstance(ast, Literal):
            s, a = self.state(), self.state()
            self.edge(s, (SYMBOL, ast.symbol), a)
            return s, a
        if isinstance(ast, AnySymbol):
            s, a = self.state(), self.state()
            self.edge(s, (ANY, None), a)
            return s, a
        if isinstance(ast, Concat):
            ls, la = self.build(ast.left)
            rs, ra = self.build(ast.right)
            self.edge(la, (EPSILON, None), rs)
            return ls, ra
        if isinstance(ast, Union):
            ls, la = self.build(ast.left)
            rs, ra = self.build(ast.right)
            s, a = self.state(), self.state()
            self.edge(s, (EPSILON, None), ls)
            self.edge(s, (EPSILON, None), rs)
            self.edge(la, (EPSILON, None), a)
            self.edge(ra, (EPSILON, None), a)
            return s, a
        if isinstance(ast, Star):
            xs, xa = self.build(ast.inner)
            s, a = self.state(), self.state()
            self.edge(s, (EPSILON, None), xs)
            self.edge(s, (EPSILON, None), a)
            self.edge(xa, (EPSILON, None), xs)
            self.edge(xa, (EPSILON, None), a)
            return s, a
        raise TypeError(f"not a pattern node: {ast!r}")


def compile_nfa(ast: PatternAst) -> Nfa:
    """Compile a pattern tree into an automaton accepting the same language."""
    builder = _Builder()
    start, accept = builder.build(ast)
    return Nfa(
        state_count=builder.count,
        start=start,
        accept=accept,
        transitions=tuple(builder.transitions),
    )


@dataclass
class _Tables:
    """Per-automaton simulation tables; active sets are integer bitmasks."""

    start_mask: int
    accept_mask: int
    # symbol -> [(from_mask, closure-of-target mask)]
    sym_edges: dict[str, list[tuple[int, int]]]
    any_edges: list[tuple[int, int]]
    closures: list[int]

    def step(self, active: int, ch: str) -> int:
        nxt = 0
        for frm, to in self.sym_edges.get(ch, ()):
            if active & frm:
                nxt |= to
        for frm, to in self.any_edges:
            if active & frm:
                nxt |= to
        return nxt


def _tables(nfa: Nfa) -> _Tables:
    cached = nfa.__dict__.get("_sim_tables")
    if cached is not None:
        return cached

    eps_next: list[list[int]] = [[] for _ in range(nfa.state_count)]
    for frm, (kind, _), to in nfa.transitions:
        if kind == EPSILON:
            eps_next[frm].append(to)

    closures = []
    for state in range(nfa.state_count):
        mask = 0
        stack = [state]
        while stack:
            cur = stack.pop()
            bit = 1 << cur
            if mask & bit:
                continue
            mask |= bit
            stack.extend(eps_next[cur])
        closures.append(mask)

    sym_edges: dict[str, list[tuple[int, int]]] = {}
    any_edges: list[tuple[int, int]] = []
    for frm, (kind, sym), to in nfa.transitions:
        if kind == SYMBOL:
            assert sym is not None
            sym_edges.setdefault(sym, []).append((1 << frm, closures[to]))
        elif kind == ANY:
            any_edges.append((1 << frm, closures[to]))

    tables = _Tables(
        start_mask=closures[nfa.start],
        accept_mask=1 << nfa.accept,
        sym_edges=sym_edges,
        any_edges=any_edges,
        closures=closures,
    )
    object.__setattr__(nfa, "_sim_tables", tables)
    return tables


def match_full(nfa: Nfa, text: str) -> bool:
    """True iff the whole input is in the automaton's language."""
    tables = _tables(nfa)
    active = tables.start_mask
    for ch in text:
        active = tables.step(active, ch)
        if not active:
            return False
    return bool(active & tables.accept_mask)


def find_first(nfa: Nfa, text: str) -> MatchSpan | None:
    """Leftmost match: scan start positions left to right, restarting the
    machine at each; return the first start that admits a match, with the
    longest match at that start. None when no substring matches."""
    tables = _tables(nfa)

    if not tables.start_mask & tables.accept_mask:
        # One containment pass (a fresh machine injected at every position)
        # rejects match-free inputs without the quadratic rescan.
        active = tables.start_mask
        for ch in text:
            active = tables.step(active, ch) | tables.start_mask
            if active & tables.accept_mask:
                break
        else:
            return None

    for start in range(len(text) + 1):
        active = tables.start_mask
        last = start if active & tables.accept_mask else -1
        for pos in range(start, len(text)):
            active = tables.step(active, text[pos])
            if not active:
                break
            if active & tables.accept_mask:
                last = pos + 1
        if last >= 0:
            return MatchSpan(start, last)
    return None


@dataclass(frozen=True)
class TraceStep:
    symbol: str
    states: tuple[int, ...]


@dataclass(frozen=True)
class StartTrace:
    """One machine restart: the states reached per consumed symbol and the
    verdict for this start position."""

    start: int
    initial_states: tuple[int, ...]
    steps: tuple[TraceStep, ...]
    matched_end: int | None

    @property
    def accepted(self) -> bool:
        return self.matched_end is not None


def scan_trace(nfa: Nfa, text: str) -> list[StartTrace]:
    """Scan like :func:`find_first` but record every restart: active state
    sets after each consumed symbol, stopping after the first accepting
    start position (or after trying every start)."""
    tables = _tables(nfa)
    traces: list[StartTrace] = []
    for start in range(len(text) + 1):
        active = tables.start_mask
        last = start if active & tables.accept_mask else -1
        steps: list[TraceStep] = []
        for pos in range(start, len(text)):
            active = tables.step(active, text[pos])
            steps.append(TraceStep(text[pos], _mask_states(active)))
            if not active:
                break
            if active & tables.accept_mask:
                last = pos + 1
        traces.append(
            StartTrace(
                start=start,
                initial_states=_mask_states(tables.start_mask),
                steps=tuple(steps),
                matched_end=last if last >= 0 else None,
            )
        )
        if last >= 0:
            break
    return traces


def _mask_states(mask: int) -> tuple[int, ...]:
    states = []
    state = 0
    while mask:
        if mask & 1:
            states.append(state)
        mask >>= 1
        state += 1
    return tuple(states)


def nfa_out_degrees(nfa: Nfa) -> list[int]:
    """Outgoing-transition count per state (shape checks live in tests)."""
    degrees = [0] * nfa.state_count
    for frm, _, _ in nfa.transitions:
        degrees[frm] += 1
    return degrees
