"""Pants decompositions as gluing graphs, plus a few standard fixtures."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InvalidDecomposition
from .pants import GENERATORS, slot_name

Slot = tuple[int, str]


def _slot(raw) -> Slot:
    try:
        p, s = raw
        return int(p), slot_name(s)
    except (TypeError, ValueError) as exc:
        raise InvalidDecomposition(f"bad slot {raw!r}") from exc


@dataclass(frozen=True)
class Curve:
    ends: tuple[Slot, Slot]

    @property
    def is_self(self) -> bool:
        return self.ends[0][0] == self.ends[1][0]


@dataclass(frozen=True)
class PantsDecomposition:
    n_pants: int
    curves: tuple[Curve, ...]
    peripherals: tuple[Slot, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(
            c if isinstance(c, Curve) else Curve(tuple(_slot(e) for e in c)) for c in self.curves))
        object.__setattr__(self, "peripherals", tuple(_slot(p) for p in self.peripherals))
        self.validate()

    # -- structure ---------------------------------------------------------
    def validate(self) -> None:
        if self.n_pants < 1:
            raise InvalidDecomposition("need at least one pants")
        seen: dict[Slot, str] = {}
        for i, c in enumerate(self.curves):
            if len(c.ends) != 2:
                raise InvalidDecomposition(f"curve {i} must have two ends")
            if c.ends[0] == c.ends[1]:
                raise InvalidDecomposition(f"curve {i} joins a slot to itself")
            for e in c.ends:
                self._claim(seen, e, f"curve {i}")
        for j, p in enumerate(self.peripherals):
            self._claim(seen, p, f"peripheral {j}")
        if 3 * self.n_pants != 2 * len(self.curves) + len(self.peripherals):
            raise InvalidDecomposition("3 * pants != 2 * curves + peripherals")
        if len(seen) != 3 * self.n_pants:
            raise InvalidDecomposition("some slot is neither glued nor peripheral")
        if (self.n_pants + 2 - len(self.peripherals)) % 2:
            raise InvalidDecomposition("Euler characteristic does not give an integer genus")
        if len(self.components()) != 1:
            raise InvalidDecomposition("gluing graph is disconnected")

    def _claim(self, seen, slot: Slot, owner: str) -> None:
        p, _ = slot
        if not 0 <= p < self.n_pants:
            raise InvalidDecomposition(f"{owner} refers to missing pants {p}")
        if slot in seen:
            raise InvalidDecomposition(f"slot {slot} used by both {seen[slot]} and {owner}")
        seen[slot] = owner

    @property
    def genus(self) -> int:
        return (self.n_pants + 2 - len(self.peripherals)) // 2

    @property
    def n_punctures(self) -> int:
        return len(self.peripherals)

    def components(self, removed=()) -> list[list[int]]:
        """Connected components of the pants graph after cutting ``removed`` curves."""
        removed = set(removed)
        adj: dict[int, list[int]] = {p: [] for p in range(self.n_pants)}
        for i, c in enumerate(self.curves):
            if i in removed:
                continue
            (p, _), (q, _) = c.ends
            adj[p].append(q)
            adj[q].append(p)
        comps, seen = [], set()
        for start in range(self.n_pants):
            if start in seen:
                continue
            comp, queue = [], deque([start])
            seen.add(start)
            while queue:
                p = queue.popleft()
                comp.append(p)
                for q in adj[p]:
                    if q not in seen:
                        seen.add(q)
                        queue.append(q)
            comps.append(sorted(comp))
        return comps

    def spanning_tree(self) -> tuple[int, list[tuple[int, int]], set[int]]:
        """BFS from the pants of the first curve's first end (or pants 0).

        Returns ``(root, tree, tree_edges)`` where ``tree`` lists
        ``(curve index, parent end index)`` in placement order.
        """
        root = self.curves[0].ends[0][0] if self.curves else 0
        placed = {root}
        order: list[tuple[int, int]] = []
        frontier = deque([root])
        while frontier:
            p = frontier.popleft()
            for i, c in enumerate(self.curves):
                if c.is_self:
                    continue
                for k in (0, 1):
                    if c.ends[k][0] == p and c.ends[1 - k][0] not in placed:
                        placed.add(c.ends[1 - k][0])
                        order.append((i, k))
                        frontier.append(c.ends[1 - k][0])
        return root, order, {i for i, _ in order}

    def slot_owner(self, slot: Slot):
        for i, c in enumerate(self.curves):
            if slot in c.ends:
                return ("curve", i)
        for j, p in enumerate(self.peripherals):
            if slot == p:
                return ("peripheral", j)
        raise KeyError(slot)

    def sub_decomposition(self, pants: list[int], removed=()):
        """Restriction to a set of pants; cut curves become peripherals.

        Returns ``(sub, pants_map, curve_map, peripheral_map)`` where the
        maps send global indices to local ones.  ``peripheral_map`` keys
        are ``("peripheral", j)`` or ``("cut", i, end)``.
        """
        removed = set(removed)
        pants_map = {p: k for k, p in enumerate(sorted(pants))}
        curves, curve_map = [], {}
        periph, periph_map = [], {}
        for i, c in enumerate(self.curves):
            ins = [e[0] in pants_map for e in c.ends]
            if i in removed:
                for end, e in enumerate(c.ends):
                    if ins[end]:
                        periph_map[("cut", i, end)] = len(periph)
                        periph.append((pants_map[e[0]], e[1]))
            elif all(ins):
                curve_map[i] = len(curves)
                curves.append(Curve(tuple((pants_map[e[0]], e[1]) for e in c.ends)))
        for j, s in enumerate(self.peripherals):
            if s[0] in pants_map:
                periph_map[("peripheral", j)] = len(periph)
                periph.append((pants_map[s[0]], s[1]))
        sub = PantsDecomposition(len(pants_map), tuple(curves), tuple(periph))
        return sub, pants_map, curve_map, periph_map

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "pants": self.n_pants,
            "curves": [{"ends": [[p, s] for p, s in c.ends]} for c in self.curves],
            "peripherals": [[p, s] for p, s in self.peripherals],
        }

    @classmethod
    def from_json(cls, data) -> "PantsDecomposition":
        try:
            n = int(data["pants"])
            curves = tuple(Curve(tuple(_slot(e) for e in c["ends"])) for c in data["curves"])
            periph = tuple(_slot(p) for p in data.get("peripherals", []))
        except (KeyError, TypeError) as exc:
            raise InvalidDecomposition(f"malformed decomposition: {exc}") from exc
        return cls(n, curves, periph)


def _make(n, curves, peripherals=()) -> PantsDecomposition:
    return PantsDecomposition(n, tuple(Curve(tuple(_slot(e) for e in c)) for c in curves),
                              tuple(peripherals))


def genus2_theta() -> PantsDecomposition:
    """Two pants glued slot to slot (no self-gluing)."""
    return _make(2, [((0, "r"), (1, "r")), ((0, "s"), (1, "t")), ((0, "t"), (1, "s"))])


def genus2_dumbbell() -> PantsDecomposition:
    """Two one-holed tori joined along a separating curve."""
    return _make(2, [((0, "r"), (0, "s")), ((0, "t"), (1, "t")), ((1, "r"), (1, "s"))])


def genus3_k4() -> PantsDecomposition:
    """Four pants on the complete graph K4."""
    return _make(4, [((0, "r"), (1, "r")), ((0, "s"), (2, "r")), ((0, "t"), (3, "r")),
                     ((1, "s"), (2, "s")), ((1, "t"), (3, "s")), ((2, "t"), (3, "t"))])


def genus3_loop() -> PantsDecomposition:
    """Genus three with one self-glued pants."""
    return _make(4, [((0, "r"), (0, "s")), ((0, "t"), (1, "r")), ((1, "s"), (2, "r")),
                     ((1, "t"), (3, "r")), ((2, "s"), (3, "s")), ((2, "t"), (3, "t"))])


def sphere4() -> PantsDecomposition:
    """Four-punctured sphere."""
    return _make(2, [((0, "r"), (1, "r"))], [(0, "s"), (0, "t"), (1, "s"), (1, "t")])


def torus1() -> PantsDecomposition:
    """Once-punctured torus."""
    return _make(1, [((0, "r"), (0, "s"))], [(0, "t")])


def torus2() -> PantsDecomposition:
    """Twice-punctured torus."""
    return _make(2, [((0, "r"), (1, "r")), ((0, "s"), (1, "s"))], [(0, "t"), (1, "t")])


FIXTURES = {
    "genus2-theta": genus2_theta,
    "genus2-dumbbell": genus2_dumbbell,
    "genus3-k4": genus3_k4,
    "genus3-loop": genus3_loop,
    "sphere4": sphere4,
    "torus1": torus1,
    "torus2": torus2,
}

__all__ = ["Curve", "PantsDecomposition", "FIXTURES", "GENERATORS"] + [f.__name__ for f in FIXTURES.values()]
