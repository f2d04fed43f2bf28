"""Finite sorts, program variables and the event alphabet.

A universe fixes the carriers every relation is built over.  It is parsed
from a small line-oriented config::

    # comments run to end of line
    var x : 0..3
    sort A = {0, 1, 2}
    events a b
    event a = 1

The ``state`` sort is derived from the ``var`` declarations: its carrier is
every assignment of the declared variables, enumerated lexicographically with
variables taken in name order.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

DEFAULT_TUPLE_LIMIT = 10**6


class RelsemError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(RelsemError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SortMismatch(RelsemError):
    pass


class SizeLimitError(RelsemError):
    pass


@dataclass(frozen=True)
class State:
    """A total assignment of integers to program variables."""

    names: tuple
    values: tuple

    def __getitem__(self, var):
        return self.values[self.names.index(var)]

    def as_dict(self):
        return dict(zip(self.names, self.values))

    def update(self, var, value):
        i = self.names.index(var)
        return State(self.names, self.values[:i] + (value,) + self.values[i + 1:])

    def __str__(self):
        return "(" + ",".join(f"{n}={v}" for n, v in zip(self.names, self.values)) + ")"


def atom_key(atom):
    """Total order on atoms: integers, then labels, then states."""
    if isinstance(atom, bool):
        raise TypeError(f"not an atom: {atom!r}")
    if isinstance(atom, int):
        return (0, atom)
    if isinstance(atom, str):
        return (1, atom)
    if isinstance(atom, State):
        return (2, atom.values)
    raise TypeError(f"not an atom: {atom!r}")


def tuple_key(components):
    return tuple(atom_key(a) for a in components)


def render_atom(atom):
    return str(atom)


@dataclass(frozen=True)
class Sort:
    name: str
    carrier: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        carrier = tuple(self.carrier)
        if not carrier:
            raise ConfigError(f"sort {self.name} has an empty carrier")
        members = frozenset(carrier)
        if len(members) != len(carrier):
            raise ConfigError(f"sort {self.name} has duplicate atoms")
        for a in carrier:
            atom_key(a)
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "_members", members)

    def __contains__(self, atom):
        return atom in self._members

    def __len__(self):
        return len(self.carrier)

    def __str__(self):
        return self.name


def make_sort(name, atoms):
    return Sort(name, tuple(atoms))


def tuple_space_size(sig):
    return math.prod(len(s) for s in sig)


def enumerate_tuples(sig, limit=DEFAULT_TUPLE_LIMIT):
    """All tuples of the product of ``sig`` in lexicographic carrier order."""
    size = tuple_space_size(sig)
    if size > limit:
        raise SizeLimitError(f"tuple space of size {size} exceeds limit {limit}")
    return list(itertools.product(*(s.carrier for s in sig)))


def check_tuple(t, sig):
    if len(t) != len(sig):
        raise SortMismatch(f"tuple {t!r} has arity {len(t)}, expected {len(sig)}")
    for a, s in zip(t, sig):
        if a not in s:
            raise SortMismatch(f"atom {a!r} is not in sort {s.name}")


@dataclass(frozen=True)
class Universe:
    sorts: dict = field(default_factory=dict)
    state_vars: tuple = ()
    events: Sort | None = None
    event_values: dict = field(default_factory=dict)

    def __hash__(self):
        return hash((tuple(self.sorts), self.state_vars, self.events))

    @property
    def var_names(self):
        return tuple(name for name, _, _ in self.state_vars)

    def var_range(self, name):
        for n, lo, hi in self.state_vars:
            if n == name:
                return lo, hi
        raise KeyError(name)

    def sort(self, name):
        if name == "state":
            return self.state
        if self.events is not None and name == self.events.name:
            return self.events
        try:
            return self.sorts[name]
        except KeyError:
            raise ConfigError(f"unknown sort {name}") from None

    @property
    def state(self):
        # cached on first use; dataclass is frozen so bypass __setattr__
        cached = self.__dict__.get("_state")
        if cached is None:
            ordered = sorted(self.state_vars)
            names = tuple(n for n, _, _ in ordered)
            ranges = [range(lo, hi + 1) for _, lo, hi in ordered]
            carrier = tuple(State(names, vals) for vals in itertools.product(*ranges))
            cached = Sort("state", carrier)
            object.__setattr__(self, "_state", cached)
        return cached

    def in_range(self, var, value):
        lo, hi = self.var_range(var)
        return lo <= value <= hi

    def event_for(self, value):
        return self.event_values.get(value)


_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_VAR_RE = re.compile(rf"var\s+({_IDENT})\s*:\s*(-?\d+)\s*\.\.\s*(-?\d+)$")
_SORT_RE = re.compile(rf"sort\s+({_IDENT})\s*=\s*\{{(.*)\}}$")
_EVENTS_RE = re.compile(rf"events((?:\s+{_IDENT})+)$")
_EVENT_RE = re.compile(rf"event\s+({_IDENT})\s*=\s*(-?\d+)$")


def parse_atom(text):
    text = text.strip()
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    if re.fullmatch(_IDENT, text):
        return text
    raise ValueError(f"bad atom {text!r}")


def parse_universe(text, event_sort_name="E"):
    sorts = {}
    variables = []
    labels = []
    event_values = {}
    seen = set()

    def claim(name, lineno):
        if name in seen:
            raise ConfigError(f"duplicate name {name}", lineno)
        seen.add(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _VAR_RE.match(line):
            name, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
            claim(name, lineno)
            if lo > hi:
                raise ConfigError(f"empty range {lo}..{hi} for {name}", lineno)
            variables.append((name, lo, hi))
        elif m := _SORT_RE.match(line):
            name = m.group(1)
            claim(name, lineno)
            if name in ("state", event_sort_name):
                raise ConfigError(f"sort name {name} is reserved", lineno)
            body = m.group(2).strip()
            try:
                atoms = [parse_atom(a) for a in body.split(",")] if body else []
                sorts[name] = Sort(name, tuple(atoms))
            except (ValueError, ConfigError) as exc:
                raise ConfigError(str(exc), lineno) from None
        elif m := _EVENTS_RE.match(line):
            for label in m.group(1).split():
                if label in labels:
                    raise ConfigError(f"duplicate event {label}", lineno)
                labels.append(label)
        elif m := _EVENT_RE.match(line):
            label, value = m.group(1), int(m.group(2))
            if value in event_values:
                raise ConfigError(f"value {value} already mapped to an event", lineno)
            event_values[value] = label
            if label not in labels:
                labels.append(label)
        else:
            raise ConfigError(f"syntax error: {line!r}", lineno)

    events = Sort(event_sort_name, tuple(labels)) if labels else None
    return Universe(sorts, tuple(variables), events, event_values)
