"""Catalog of finite 3-transposition groups, stored as the transposition set D.

The abstract group is never materialised; a TranspoGroup holds the points of
D with payloads, the conjugation action b^a as an index table, and the order
predicate o(ab) derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .roots import RootSystem, parse_root_system


@dataclass(frozen=True)
class TranspoGroup:
    label: str
    family: str  # "symmetric" | "weyl" | "affine_weyl" | "moufang"
    points: tuple  # payloads
    conj: tuple  # conj[i][j] = index of points[i] ^ points[j]
    root_system: RootSystem | None = None

    @property
    def size(self) -> int:
        return len(self.points)

    def conjugate(self, i: int, j: int) -> int:
        return self.conj[i][j]

    def order(self, i: int, j: int) -> int:
        """o(ab) for the transpositions at indices i, j."""
        if i == j:
            return 1
        return 3 if self.conj[i][j] != i else 2

    def collinear(self, i: int, j: int) -> bool:
        return i != j and self.conj[i][j] != i

    def third(self, i: int, j: int) -> int:
        """Third point of the line through two noncommuting points."""
        if not self.collinear(i, j):
            raise ValueError("points are not collinear")
        return self.conj[i][j]

    def payload_str(self, i: int) -> str:
        p = self.points[i]
        if self.family == "symmetric":
            return f"({p[0]}{p[1]})" if max(p) < 10 else f"({p[0]},{p[1]})"
        if self.family == "weyl":
            return "r" + "".join(str(c) for c in p) if max(p) < 10 else str(p)
        if self.family == "affine_weyl":
            eps, alpha = p
            return f"{eps}|r" + "".join(str(c) for c in alpha)
        return "v" + "".join(str(c) for c in p)


def _finish(label, family, points, conj_fn, root_system=None) -> TranspoGroup:
    index = {p: i for i, p in enumerate(points)}
    table = tuple(
        tuple(index[conj_fn(a, b)] for b in points) for a in points
    )
    return TranspoGroup(label, family, tuple(points), table, root_system)


def build_symmetric(n: int) -> TranspoGroup:
    """S_n acting on its transpositions {i, j}."""
    if n < 2:
        raise ValueError("build_symmetric needs n >= 2")
    points = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def conj(a, b):
        # relabel a by the transposition b
        swap = {b[0]: b[1], b[1]: b[0]}
        x, y = swap.get(a[0], a[0]), swap.get(a[1], a[1])
        return (x, y) if x < y else (y, x)

    return _finish(f"S{n}", "symmetric", points, conj)


def build_weyl(rs: RootSystem) -> TranspoGroup:
    """Reflections of a simply laced Weyl group, identified with Phi^+."""
    points = list(rs.positive_roots)

    def conj(a, b):
        return rs.to_positive(rs.reflect(a, b))

    return _finish(f"W:{rs.name}", "weyl", points, conj, rs)


def build_affine_weyl(rs: RootSystem) -> TranspoGroup:
    """3^n : W for a simply laced Weyl group W of rank n.

    Points are (eps, alpha) with alpha in Phi^+ and eps in F_3, standing for
    (eps*alpha, sigma_alpha) in the semidirect product Lambda/3Lambda x| W
    with the convention (v, g)(w, h) = (v + g.w, gh).  The identification
    (eps*(-alpha), sigma_alpha) = ((-eps)*alpha, sigma_alpha) is applied when
    canonicalising to a positive root.
    """
    points = [(eps, alpha) for alpha in rs.positive_roots for eps in (0, 1, 2)]

    def conj(a, b):
        (e1, alpha), (e2, beta) = a, b
        v = tuple(e1 * c % 3 for c in alpha)
        w = tuple(e2 * c % 3 for c in beta)
        sw = rs.reflect(tuple(e2 * c for c in beta), alpha)
        inner = tuple((x - y + z) % 3 for x, y, z in zip(v, w, sw))
        vnew = tuple(c % 3 for c in rs.reflect(inner, beta))
        # sigma_{-gamma} = sigma_gamma, so the reflection part is carried by the
        # positive representative and the vector part is matched against it
        gamma = rs.to_positive(rs.reflect(alpha, beta))
        for eps in (0, 1, 2):
            if all((eps * c - x) % 3 == 0 for c, x in zip(gamma, vnew)):
                return (eps, gamma)
        raise AssertionError("conjugate did not land on a multiple of the root")

    return _finish(f"3W:{rs.name}", "affine_weyl", points, conj, rs)


def build_moufang(n: int) -> TranspoGroup:
    """3^n : 2, points identified with F_3^n, v^w = -v-w."""
    if n < 1:
        raise ValueError("build_moufang needs n >= 1")
    points = [tuple(v) for v in product(range(3), repeat=n)]

    def conj(a, b):
        return tuple((-x - y) % 3 for x, y in zip(a, b))

    return _finish(f"M3:{n}", "moufang", points, conj)


def parse_group(desc: str) -> TranspoGroup:
    """Catalog descriptors: S<n>, W:<type><rank>, 3W:<type><rank>, M3:<n>."""
    desc = desc.strip()
    if desc.startswith("S") and desc[1:].isdigit():
        return build_symmetric(int(desc[1:]))
    if desc.startswith("W:"):
        return build_weyl(parse_root_system(desc[2:]))
    if desc.startswith("3W:"):
        return build_affine_weyl(parse_root_system(desc[3:]))
    if desc.startswith("M3:") and desc[3:].isdigit():
        return build_moufang(int(desc[3:]))
    raise ValueError(f"cannot parse group descriptor {desc!r}")


# Catalog instances used by the verification and acceptance suites.
CATALOG = (
    "S3",
    "S4",
    "S5",
    "W:A2",
    "W:A3",
    "W:D4",
    "3W:A1",
    "3W:A2",
    "3W:A3",
    "3W:D4",
    "M3:2",
    "M3:3",
)
