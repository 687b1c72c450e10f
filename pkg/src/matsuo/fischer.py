"""Point-line geometry of a 3-transposition group: closures, planes, near-solid lines."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .transpo import TranspoGroup


class FischerAxiomViolation(Exception):
    """A connected 3-point closure whose size is not in {1, 3, 6, 9}."""


class PlaneType(Enum):
    DEGENERATE = "degenerate"
    LINE = "line"
    DUAL_AFFINE_2 = "dual_affine_2"
    AFFINE_3 = "affine_3"


@dataclass(frozen=True)
class FourGenType:
    kind: str  # "S5" | "WD4" | "AffA3" | "Mou3" | "ThreeGen" | "Unknown"
    plane: PlaneType | None = None
    size: int = 0

    def __str__(self):
        if self.kind == "ThreeGen":
            return f"ThreeGen({self.plane.value})"
        if self.kind == "Unknown":
            return f"Unknown({self.size})"
        return self.kind


# realizable connected closure sizes are pairwise distinct within the catalog
_SIZE_TO_TYPE = {10: "S5", 12: "WD4", 18: "AffA3", 27: "Mou3"}
_PLANE_SIZES = {1: PlaneType.DEGENERATE, 3: PlaneType.LINE, 6: PlaneType.DUAL_AFFINE_2, 9: PlaneType.AFFINE_3}


class FischerSpace:
    """Partial linear space with lines {a, b, b^a} over noncommuting pairs.

    Stands alone from the group so that disjoint unions (for direct-sum
    algebras) are representable; `third[i][j]` is -1 for non-collinear pairs.
    """

    def __init__(self, n, third, labels, family, payloads=None, group=None):
        self.n = n
        self.third = third
        self.labels = labels
        self.family = family
        self.payloads = payloads
        self.group = group
        self._closure_cache: dict = {}
        lines = set()
        for i in range(n):
            for j in range(i + 1, n):
                k = third[i][j]
                if k >= 0:
                    lines.add(tuple(sorted((i, j, k))))
        self.lines = sorted(lines)
        self.adjacency = [
            frozenset(j for j in range(n) if third[i][j] >= 0) for i in range(n)
        ]

    @classmethod
    def from_group(cls, g: TranspoGroup) -> "FischerSpace":
        n = g.size
        third = [
            [g.conj[i][j] if g.collinear(i, j) else -1 for j in range(n)]
            for i in range(n)
        ]
        labels = [g.payload_str(i) for i in range(n)]
        return cls(n, third, labels, g.family, payloads=g.points, group=g)

    def collinear(self, i: int, j: int) -> bool:
        return self.third[i][j] >= 0

    def line_through(self, i: int, j: int) -> tuple[int, int, int]:
        k = self.third[i][j]
        if k < 0:
            raise ValueError("points are not collinear")
        return tuple(sorted((i, j, k)))

    # -- closures -----------------------------------------------------------

    def closure(self, seed) -> frozenset:
        """Smallest subspace containing the seed (third-point fixed point)."""
        seed = frozenset(seed)
        if not seed:
            raise ValueError("closure needs a nonempty seed")
        cached = self._closure_cache.get(seed)
        if cached is not None:
            return cached
        elems = list(seed)
        members = set(seed)
        third = self.third
        i = 0
        while i < len(elems):
            x = elems[i]
            row = third[x]
            for y in elems[:i]:
                z = row[y]
                if z >= 0 and z not in members:
                    members.add(z)
                    elems.append(z)
            i += 1
        result = frozenset(members)
        self._closure_cache[seed] = result
        return result

    def component_of(self, subset, start: int) -> frozenset:
        """Connected component of `start` in the collinearity graph on `subset`."""
        subset = set(subset)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x] & subset:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def components(self, subset=None) -> list[frozenset]:
        points = set(range(self.n)) if subset is None else set(subset)
        out = []
        while points:
            comp = self.component_of(points, next(iter(points)))
            out.append(comp)
            points -= comp
        return sorted(out, key=lambda c: (len(c), sorted(c)))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- classification -----------------------------------------------------

    def plane_type(self, triple) -> PlaneType:
        pts = set(triple)
        if len(pts) != len(tuple(triple)):
            raise ValueError("plane_type needs pairwise distinct points")
        c = self.closure(pts)
        if len(c) in _PLANE_SIZES:
            return _PLANE_SIZES[len(c)]
        if self.component_of(c, next(iter(pts))) == c:
            raise FischerAxiomViolation(
                f"connected 3-point closure of size {len(c)}"
            )
        raise ValueError("seed does not span a plane (closure is disconnected)")

    def four_gen_type(self, seeds) -> FourGenType:
        seeds = tuple(seeds)
        c = self.closure(seeds)
        comp = self.component_of(c, seeds[0])
        return self._component_type(comp)

    def _component_type(self, comp: frozenset) -> FourGenType:
        size = len(comp)
        if size in _PLANE_SIZES:
            return FourGenType("ThreeGen", plane=_PLANE_SIZES[size], size=size)
        if size in _SIZE_TO_TYPE:
            return FourGenType(_SIZE_TO_TYPE[size], size=size)
        return FourGenType("Unknown", size=size)

    # -- near-solid machinery ------------------------------------------------

    def line_orbit_class(self, line) -> str:
        """Vertical/Horizontal split of lines in a 3^n:W Fischer space."""
        if self.family != "affine_weyl":
            raise ValueError("line orbits are defined for affine Weyl spaces only")
        roots = {self.payloads[i][1] for i in line}
        return "vertical" if len(roots) == 1 else "horizontal"

    def _is_vertical_in(self, line, comp: frozenset) -> bool:
        if self.family == "affine_weyl":
            return len({self.payloads[i][1] for i in line}) == 1
        # plane criterion: every plane through the line inside comp is affine
        lset = set(line)
        a = line[0]
        for p in comp - lset:
            sub = self.component_of(self.closure(lset | {p}), a)
            if len(sub) == 3:
                continue
            if len(sub) != 9:
                return False
        return True

    def is_near_solid(self, line) -> tuple[bool, dict | None]:
        """Decide near-solidity of a line; on failure return the offending subspace.

        Enumerates closures of line + {c, d} over all point pairs and
        classifies the connected component of the line in each.
        """
        line = tuple(sorted(line))
        if line not in set(map(tuple, self.lines)):
            raise ValueError("not a line of this space")
        lset = frozenset(line)
        a = line[0]
        for c in range(self.n):
            base = self.closure(lset | {c})
            for d in range(c, self.n):
                if d in base:
                    continue  # closure is 3-generated or less on top of the line
                comp = self.component_of(self.closure(lset | {c, d}), a)
                t = self._component_type(comp)
                if t.kind in ("ThreeGen", "S5"):
                    continue
                if t.kind == "AffA3" and self._is_vertical_in(line, comp):
                    continue
                return False, {"type": str(t), "points": sorted(comp)}
        return True, None

    def union(self, other: "FischerSpace") -> "FischerSpace":
        """Disjoint union (geometry of a direct product of groups)."""
        n = self.n + other.n
        third = [[-1] * n for _ in range(n)]
        for i in range(self.n):
            for j in range(self.n):
                third[i][j] = self.third[i][j]
        for i in range(other.n):
            for j in range(other.n):
                t = other.third[i][j]
                third[self.n + i][self.n + j] = t + self.n if t >= 0 else -1
        labels = [f"L.{s}" for s in self.labels] + [f"R.{s}" for s in other.labels]
        return FischerSpace(n, third, labels, "sum")


def space_of(g: TranspoGroup) -> FischerSpace:
    return FischerSpace.from_group(g)
