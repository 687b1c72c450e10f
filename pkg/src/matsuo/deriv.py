"""Derivation Lie algebras of Matsuo algebras.

Two routes to the same nullspace: the generic Leibniz linearisation (any
eta), and the sparse relation system specific to eta = 1/2.  Unknowns are
the coefficients d(a)_b, indexed column-major as a * dim + b (a the argument
point, b the image coordinate).
"""

from __future__ import annotations

from .algebra import BadEta, MatsuoAlgebra
from .linalg import Echelon, nullspace as _nullspace


class LinearEndo:
    """Basis-indexed linear self map; cols[a] = sparse image of basis point a."""

    def __init__(self, dim: int, cols: list[dict]):
        self.dim = dim
        self.cols = cols

    @classmethod
    def zero(cls, dim: int) -> "LinearEndo":
        return cls(dim, [{} for _ in range(dim)])

    @classmethod
    def identity(cls, A: MatsuoAlgebra) -> "LinearEndo":
        one = A.field.one_raw()
        return cls(A.dim, [{a: one} for a in range(A.dim)])

    @classmethod
    def from_vector(cls, dim: int, vec: dict) -> "LinearEndo":
        cols = [{} for _ in range(dim)]
        for u, v in vec.items():
            cols[u // dim][u % dim] = v
        return cls(dim, cols)

    def to_vector(self) -> dict:
        return {
            a * self.dim + b: v for a, col in enumerate(self.cols) for b, v in col.items()
        }

    def entry(self, a: int, b: int):
        """Coefficient d(a)_b."""
        return self.cols[a].get(b)

    def apply(self, A: MatsuoAlgebra, x: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            out = A.add(out, A.scale(xa, self.cols[a]))
        return out

    def compose(self, A: MatsuoAlgebra, other: "LinearEndo") -> "LinearEndo":
        """self after other."""
        return LinearEndo(self.dim, [self.apply(A, col) for col in other.cols])

    def commutator(self, A: MatsuoAlgebra, other: "LinearEndo") -> "LinearEndo":
        de = self.compose(A, other)
        ed = other.compose(A, self)
        return LinearEndo(self.dim, [A.sub(x, y) for x, y in zip(de.cols, ed.cols)])


def leibniz_residual(A: MatsuoAlgebra, d: LinearEndo) -> dict:
    """Residuals d(ab) - d(a)b - a d(b) over all unordered basis pairs."""
    bad = {}
    for a in range(A.dim):
        ea = A.basis_element(a)
        for b in range(a, A.dim):
            eb = A.basis_element(b)
            res = A.sub(
                d.apply(A, A.basis_product(a, b)),
                A.add(A.multiply(d.cols[a], eb), A.multiply(ea, d.cols[b])),
            )
            if res:
                bad[(a, b)] = res
    return bad


def is_derivation(A: MatsuoAlgebra, d: LinearEndo) -> bool:
    return not leibniz_residual(A, d)


def build_leibniz_system(A: MatsuoAlgebra) -> list[dict]:
    """Linear constraints on the unknowns d(a)_b equivalent to the Leibniz rule."""
    F = A.field
    n = A.dim
    rows = []
    for a in range(n):
        for b in range(a, n):
            ab = A.basis_product(a, b)
            # coordinate c of d(a)b + a d(b) - d(ab):
            #   sum_y (y*b)_c u[a,y] + sum_y (a*y)_c u[b,y] - sum_x (ab)_x u[x,c]
            byc: dict[int, dict] = {}

            def acc(c, unknown, v):
                row = byc.setdefault(c, {})
                cur = row.get(unknown)
                nv = F.add(cur, v) if cur is not None else v
                if F.is_zero(nv):
                    row.pop(unknown, None)
                else:
                    row[unknown] = nv

            for y in range(n):
                for c, v in A.basis_product(y, b).items():
                    acc(c, a * n + y, v)
                if a != b:
                    for c, v in A.basis_product(a, y).items():
                        acc(c, b * n + y, v)
            if a == b:
                # d(a)a + a d(a) counts the same sum twice
                for c in list(byc):
                    byc[c] = {u: F.add(v, v) for u, v in byc[c].items()}
            for x, w in ab.items():
                for c in range(n):
                    acc(c, x * n + c, F.neg(w))
            rows.extend(r for r in byc.values() if r)
    return rows


def build_r_system(A: MatsuoAlgebra, include_r7: bool = True) -> list[dict]:
    """The seven relation families characterising derivations at eta = 1/2.

    `include_r7` exists to measure how much the non-planar family (R7)
    contributes beyond (R1)-(R6).
    """
    F = A.field
    half = F.div(F.one_raw(), F.coerce(2))
    if A.eta != half:
        raise BadEta("the relation system is specific to eta = 1/2")
    n = A.dim
    fs = A.fs
    third = fs.third
    one = F.one_raw()
    two = F.coerce(2)
    neg1 = F.neg(one)
    rows = []

    def coll(i, j):
        return third[i][j] >= 0

    for a in range(n):
        # (R1)
        rows.append({a * n + a: one})
        for b in range(n):
            if b == a:
                continue
            if coll(a, b):
                # (R2)
                rows.append({a * n + b: one, a * n + third[a][b]: one})
            else:
                # (R3)
                rows.append({a * n + b: one})

    for a in range(n):
        for b in range(a + 1, n):
            if coll(a, b) or a == b:
                continue
            # (R4): a perp b, c a common neighbour
            for c in range(n):
                if coll(a, c) and coll(b, c):
                    cab = third[third[c][a]][b]
                    row: dict = {}
                    for u in (a * n + c, b * n + c, a * n + cab, b * n + cab):
                        row[u] = F.add(row.get(u, F.zero_raw()), one)
                    rows.append({u: v for u, v in row.items() if not F.is_zero(v)})

    for a in range(n):
        for b in range(n):
            if a == b or not coll(a, b):
                continue
            ab = third[a][b]
            # (R5): d(a^b)_e = d(a)_e + d(b)_{e^a} for a noncommuting with b, e and b perp e
            for e in range(n):
                if e != b and coll(a, e) and not coll(b, e) and e != a:
                    row = {ab * n + e: one}
                    for u, s in ((a * n + e, neg1), (b * n + third[e][a], neg1)):
                        cur = row.get(u, F.zero_raw())
                        row[u] = F.add(cur, s)
                    rows.append({u: v for u, v in row.items() if not F.is_zero(v)})
            # (R6): e noncommuting with a, b and a^b
            for e in range(n):
                if e in (a, b, ab):
                    continue
                if coll(a, e) and coll(b, e) and coll(ab, e):
                    row = {ab * n + e: one}
                    for u in (a * n + third[e][b], b * n + third[e][a]):
                        row[u] = F.add(row.get(u, F.zero_raw()), neg1)
                    rows.append({u: v for u, v in row.items() if not F.is_zero(v)})
            # (R7): 2 d(b)_a + d(a)_b + d(a^b)_a - sum_{a perp e, b noncommuting e} d(b)_e
            if not include_r7:
                continue
            row = {}

            def add(u, v):
                cur = row.get(u, F.zero_raw())
                nv = F.add(cur, v)
                if F.is_zero(nv):
                    row.pop(u, None)
                else:
                    row[u] = nv

            add(b * n + a, two)
            add(a * n + b, one)
            add(ab * n + a, one)
            for e in range(n):
                if e == a or coll(a, e):
                    continue  # e must commute with a, e != a
                if coll(b, e):
                    add(b * n + e, neg1)
            rows.append(row)
    return rows


def satisfies_r_system(A: MatsuoAlgebra, d: LinearEndo) -> bool:
    F = A.field
    vec = d.to_vector()
    for row in build_r_system(A):
        acc = F.zero_raw()
        for u, v in row.items():
            w = vec.get(u)
            if w is not None:
                acc = F.add(acc, F.mul(v, w))
        if not F.is_zero(acc):
            return False
    return True


def nullspace_endos(A: MatsuoAlgebra, rows) -> list[LinearEndo]:
    n = A.dim
    vecs = _nullspace(rows, n * n, A.field)
    return [LinearEndo.from_vector(n, v) for v in vecs]


def derivation_basis(A: MatsuoAlgebra, system: str = "leibniz") -> list[LinearEndo]:
    if system == "leibniz":
        rows = build_leibniz_system(A)
    elif system == "r":
        rows = build_r_system(A)
    else:
        raise ValueError(f"unknown system {system!r}")
    return nullspace_endos(A, rows)


def spans_agree(A: MatsuoAlgebra, basis1, basis2) -> bool:
    """Mutual span containment of two endo families (as coefficient vectors)."""
    F = A.field
    e1, e2 = Echelon(F), Echelon(F)
    for d in basis1:
        e1.insert(d.to_vector())
    for d in basis2:
        e2.insert(d.to_vector())
    return all(e2.contains(d.to_vector()) for d in basis1) and all(
        e1.contains(d.to_vector()) for d in basis2
    )


def vanishing_report(A: MatsuoAlgebra, basis: list[LinearEndo]) -> dict:
    """For each ordered collinear pair (a, b): is d(a)_b zero across the basis."""
    F = A.field
    report = {}
    for a in range(A.dim):
        for b in range(A.dim):
            if a != b and A.fs.collinear(a, b):
                report[(a, b)] = all(
                    d.entry(a, b) is None or F.is_zero(d.entry(a, b)) for d in basis
                )
    return report
