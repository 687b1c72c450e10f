"""Automorphism constructions for the two exceptional families.

Covers the zero-row-sum symmetric matrix model of M(S_n), the block model of
M(3^n:W) over a field containing sqrt(3), its explicit isomorphism, the torus
of rotation automorphisms, root-system-induced automorphisms, and the
character bookkeeping of the torus action.
"""

from __future__ import annotations

from .algebra import BadCharacteristic, MatsuoAlgebra, SparseAlgebra
from .deriv import LinearEndo
from .fields import Field, sqrt_in_field
from .linalg import Echelon
from .roots import RootSystem


class AutosError(Exception):
    pass


class NoSqrt3(AutosError):
    pass


class CircleRelationViolated(AutosError):
    pass


class NotRootAutomorphism(AutosError):
    pass


class VerificationFailure(AutosError):
    """A constructed map failed its exact multiplicativity check."""


# -- model B ---------------------------------------------------------------


class ModelB(SparseAlgebra):
    """Block algebra on {1_a, x_a, y_a : a in Phi+} isomorphic to M(3^n:W).

    Basis index 3r is the block unit, 3r+1 and 3r+2 the x/y vectors of the
    r-th positive root.  Each block is the Jordan algebra of a bilinear form
    with b(x, x) = b(y, y) = 9/2, b(x, y) = 0; cross products between
    non-orthogonal blocks twist by the sixth-root rotation theta.
    """

    def __init__(self, rs: RootSystem, field: Field):
        if field.characteristic in (2, 3):
            raise BadCharacteristic("model B needs char k not in {2, 3}")
        s3 = sqrt_in_field(field, 3)
        if s3 is None:
            raise NoSqrt3(f"3 is not a square in {field}")
        self.rs = rs
        self.field = field
        self.sqrt3 = s3.raw
        m = len(rs.positive_roots)
        self.dim = 3 * m
        F = field
        half = F.div(F.one_raw(), F.coerce(2))
        self._half = half
        # in-block Jordan product: v . w = (1/2) b(v, w) 1, so x.x = (9/4) 1
        nine_quarter = F.div(F.coerce(9), F.coerce(4))
        three_q = F.div(F.coerce(3), F.coerce(4))

        products: dict = {}

        def put(i, j, vec):
            key = (i, j) if i <= j else (j, i)
            products[key] = {k: v for k, v in vec.items() if not F.is_zero(v)}

        roots = rs.positive_roots
        ridx = {a: r for r, a in enumerate(roots)}
        for r, alpha in enumerate(roots):
            u, x, y = 3 * r, 3 * r + 1, 3 * r + 2
            put(u, u, {u: F.one_raw()})
            put(u, x, {x: F.one_raw()})
            put(u, y, {y: F.one_raw()})
            put(x, x, {u: nine_quarter})
            put(y, y, {u: nine_quarter})
            put(x, y, {})
        for r, alpha in enumerate(roots):
            for s in range(r + 1, len(roots)):
                beta = roots[s]
                pair = rs.pairing(alpha, beta)
                if pair == 0:
                    continue
                ua, xa, ya = 3 * r, 3 * r + 1, 3 * r + 2
                ub, xb, yb = 3 * s, 3 * s + 1, 3 * s + 2
                refl = ridx[rs.to_positive(rs.reflect(beta, alpha))]
                put(ua, ub, {ua: half, ub: half, 3 * refl: F.neg(half)})
                put(ua, xb, {xb: half})
                put(ua, yb, {yb: half})
                put(ub, xa, {xa: half})
                put(ub, ya, {ya: half})
                if pair < 0:
                    # alpha + beta is a root: the theta-twisted rules
                    g = ridx[tuple(a + b for a, b in zip(alpha, beta))]
                    put(xa, xb, self._theta(g, {}, F.neg(three_q), +1))
                    put(xa, yb, self._theta(g, three_q, {}, +1))
                    put(ya, xb, self._theta(g, three_q, {}, +1))
                    put(ya, yb, self._theta(g, {}, three_q, +1))
                else:
                    # one root is the sum of the other and the remainder
                    big, small = (r, s) if sum(alpha) > sum(beta) else (s, r)
                    diff = tuple(
                        a - b for a, b in zip(roots[big], roots[small])
                    )
                    rem = ridx[diff]
                    xg, yg = 3 * big + 1, 3 * big + 2
                    xs_, ys_ = 3 * small + 1, 3 * small + 2
                    put(xg, xs_, self._theta(rem, {}, three_q, -1))
                    put(xg, ys_, self._theta(rem, three_q, {}, -1))
                    put(xs_, yg, self._theta(rem, F.neg(three_q), {}, -1))
                    put(ys_, yg, self._theta(rem, {}, three_q, -1))
        self.products = products

    def _theta(self, r: int, cx, cy, power: int) -> dict:
        """coeff_x * theta^power(x_r) + coeff_y * theta^power(y_r)."""
        F = self.field
        if isinstance(cx, dict):
            cx = F.zero_raw()
        if isinstance(cy, dict):
            cy = F.zero_raw()
        half = self._half
        h3 = F.mul(self.sqrt3, half)
        if power < 0:
            h3 = F.neg(h3)
        # theta(x) = x/2 - (sqrt3/2) y, theta(y) = (sqrt3/2) x + y/2
        nx = F.add(F.mul(cx, half), F.mul(cy, h3))
        ny = F.add(F.neg(F.mul(cx, h3)), F.mul(cy, half))
        out = {}
        if not F.is_zero(nx):
            out[3 * r + 1] = nx
        if not F.is_zero(ny):
            out[3 * r + 2] = ny
        return out

    def unit_index(self, r: int) -> int:
        return 3 * r

    def bilinear_form(self, r: int):
        """The Gram matrix entries of b on (x_r, y_r): ((9/2, 0), (0, 9/2))."""
        F = self.field
        nine_half = F.div(F.coerce(9), F.coerce(2))
        return ((nine_half, F.zero_raw()), (F.zero_raw(), nine_half))


def build_model_b(rs: RootSystem, field: Field) -> ModelB:
    return ModelB(rs, field)


# -- generic verification ---------------------------------------------------


def is_multiplicative(src, dst, image_cols: list[dict]) -> tuple[bool, tuple | None]:
    """Check f(u v) = f(u) f(v) on all basis pairs for a linear map src -> dst."""
    F = src.field

    def f(vec):
        out: dict = {}
        for i, c in vec.items():
            out = dst.add(out, dst.scale(c, image_cols[i]))
        return out

    for i in range(src.dim):
        for j in range(i, src.dim):
            lhs = f(src.basis_product(i, j))
            rhs = dst.multiply(image_cols[i], image_cols[j])
            if dst.sub(lhs, rhs):
                return False, (i, j)
    return True, None


def is_bijective(field: Field, image_cols: list[dict], dim: int) -> bool:
    ech = Echelon(field)
    for col in image_cols:
        ech.insert(col)
    return ech.rank == dim


def verify_automorphism(A, endo: LinearEndo) -> None:
    ok, pair = is_multiplicative(A, A, endo.cols)
    if not ok:
        raise VerificationFailure(f"multiplicativity fails on basis pair {pair}")
    if not is_bijective(A.field, endo.cols, A.dim):
        raise VerificationFailure("map is not bijective")


# -- model B isomorphism -----------------------------------------------------


def model_b_iso(B: ModelB, M: MatsuoAlgebra) -> list[dict]:
    """The basis map B -> M(3^n:W); verified multiplicative and bijective.

    Images: 1_a -> (2/3)((0) + (+a) + (-a)), x_a -> sqrt3((0) - (+a)),
    y_a -> 2(-a) - (0) - (+a).
    """
    if M.field != B.field:
        raise AutosError("both algebras must live over the same field")
    F = B.field
    rs = B.rs
    payloads = M.fs.payloads
    if payloads is None or M.fs.family != "affine_weyl":
        raise AutosError("target must be a Matsuo algebra of 3^n:W type")
    pt = {p: i for i, p in enumerate(payloads)}
    two_thirds = F.div(F.coerce(2), F.coerce(3))
    cols: list[dict] = []
    for alpha in rs.positive_roots:
        z, p, m = pt[(0, alpha)], pt[(1, alpha)], pt[(2, alpha)]
        cols.append({z: two_thirds, p: two_thirds, m: two_thirds})
        cols.append({z: B.sqrt3, p: F.neg(B.sqrt3)})
        cols.append({m: F.coerce(2), z: F.coerce(-1), p: F.coerce(-1)})
    ok, pair = is_multiplicative(B, M, cols)
    if not ok:
        raise VerificationFailure(f"model-B map not multiplicative at {pair}")
    if not is_bijective(F, cols, M.dim):
        raise VerificationFailure("model-B map is not bijective")
    return cols


# -- the torus ---------------------------------------------------------------


def so2_mul(field: Field, a, b):
    (c1, s1), (c2, s2) = a, b
    F = field
    return (
        F.sub(F.mul(c1, c2), F.mul(s1, s2)),
        F.add(F.mul(c1, s2), F.mul(s1, c2)),
    )


def so2_inv(field: Field, a):
    return (a[0], field.neg(a[1]))


def check_circle(field: Field, param) -> None:
    c, s = param
    F = field
    if F.add(F.mul(c, c), F.mul(s, s)) != F.one_raw():
        raise CircleRelationViolated(f"c^2 + s^2 != 1 for {F.format(c)}, {F.format(s)}")


def pythagorean_param(field: Field, t):
    """Exact point on c^2 + s^2 = 1 from a rational parameter t."""
    F = field
    t = F.coerce(t)
    denom = F.add(F.one_raw(), F.mul(t, t))
    if F.is_zero(denom):
        raise CircleRelationViolated("1 + t^2 = 0 has no Pythagorean point")
    return (
        F.div(F.sub(F.one_raw(), F.mul(t, t)), denom),
        F.div(F.add(t, t), denom),
    )


def torus_params_for_roots(B: ModelB, simple_params) -> list:
    """Extend SO_2 parameters on the simple roots to all positive roots."""
    F = B.field
    rs = B.rs
    for p in simple_params:
        check_circle(F, p)
    ident = (F.one_raw(), F.zero_raw())

    def power(p, e):
        out = ident
        q = p if e >= 0 else so2_inv(F, p)
        for _ in range(abs(e)):
            out = so2_mul(F, out, q)
        return out

    params = []
    ridx = {a: r for r, a in enumerate(rs.positive_roots)}
    for alpha in rs.positive_roots:
        rho = ident
        for i, e in enumerate(alpha):
            rho = so2_mul(F, rho, power(simple_params[i], e))
        params.append(rho)
    # decomposition-independence: rho_{beta + alpha_i} = rho_beta rho_i
    simples = rs.simple_roots()
    for alpha in rs.positive_roots:
        if sum(alpha) <= 1:
            continue
        for i, e in enumerate(alpha):
            if e > 0:
                beta = tuple(a - b for a, b in zip(alpha, simples[i]))
                if beta in ridx:
                    got = so2_mul(F, params[ridx[beta]], simple_params[i])
                    if got != params[ridx[alpha]]:
                        raise CircleRelationViolated(
                            "inconsistent rotation assignment across decompositions"
                        )
                    break
    return params


def torus_automorphism(B: ModelB, simple_params, verify: bool = True) -> LinearEndo:
    """The unique automorphism restricting to the given rotations on simple blocks."""
    F = B.field
    params = torus_params_for_roots(B, simple_params)
    cols = [{} for _ in range(B.dim)]
    for r, (c, s) in enumerate(params):
        u, x, y = 3 * r, 3 * r + 1, 3 * r + 2
        cols[u] = {u: F.one_raw()}
        xi = {x: c, y: s}
        yi = {x: F.neg(s), y: c}
        cols[x] = {k: v for k, v in xi.items() if not F.is_zero(v)}
        cols[y] = {k: v for k, v in yi.items() if not F.is_zero(v)}
    endo = LinearEndo(B.dim, cols)
    if verify:
        verify_automorphism(B, endo)
    return endo


# -- root-system-induced automorphisms ---------------------------------------


def weyl_reflection_matrix(rs: RootSystem, root) -> list:
    """Images of the simple roots under sigma_root."""
    return [rs.reflect(s, root) for s in rs.simple_roots()]


def diagram_automorphism_matrix(rs: RootSystem, perm) -> list:
    """Images of the simple roots under a permutation of the Dynkin diagram."""
    simples = rs.simple_roots()
    return [simples[perm[i]] for i in range(rs.rank)]


def _apply_matrix(mat, v):
    out = [0] * len(mat[0])
    for c, e in zip(mat, v):
        if e:
            for k, x in enumerate(c):
                out[k] += e * x
    return tuple(out)


def root_automorphism(M: MatsuoAlgebra, mat, verify: bool = True) -> LinearEndo:
    """Automorphism of M(3^n:W) induced by an automorphism of the root system.

    `mat` lists the images of the simple roots (in simple-root coordinates).
    """
    fs = M.fs
    if fs.family != "affine_weyl" or fs.payloads is None:
        raise AutosError("root automorphisms act on 3^n:W Matsuo algebras")
    rs = fs.group.root_system
    simples = rs.simple_roots()
    for a in mat:
        if not rs.is_root(tuple(a)):
            raise NotRootAutomorphism("a simple root is not mapped to a root")
    for i in range(rs.rank):
        for j in range(rs.rank):
            if rs.pairing(tuple(mat[i]), tuple(mat[j])) != rs.pairing(
                simples[i], simples[j]
            ):
                raise NotRootAutomorphism("the Cartan pairing is not preserved")
    pt = {p: i for i, p in enumerate(fs.payloads)}
    F = M.field
    cols = [{} for _ in range(M.dim)]
    for i, (eps, alpha) in enumerate(fs.payloads):
        image = _apply_matrix(mat, alpha)
        if not rs.is_root(image):
            raise NotRootAutomorphism(f"{alpha} is not mapped to a root")
        if RootSystem.is_positive(image):
            target = (eps, image)
        else:
            target = ((-eps) % 3, tuple(-c for c in image))
        cols[i] = {pt[target]: F.one_raw()}
    endo = LinearEndo(M.dim, cols)
    if verify:
        verify_automorphism(M, endo)
    return endo


# -- zero-sum symmetric matrix model of M(S_n) --------------------------------


class ZeroSumJordan:
    """Symmetric n x n matrices with zero row sums under the Jordan product."""

    def __init__(self, n: int, field: Field):
        if n < 2:
            raise ValueError("need n >= 2")
        p = field.characteristic
        if p and (2 * n) % p == 0:
            raise BadCharacteristic("char k must not divide 2n")
        self.n = n
        self.field = field

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1) // 2

    def transposition_image(self, i: int, j: int) -> dict:
        """(ij) -> (1/2)(e_ii + e_jj - e_ij - e_ji), keyed by r * n + c (0-based)."""
        F = self.field
        half = F.div(F.one_raw(), F.coerce(2))
        i, j = i - 1, j - 1
        n = self.n
        return {
            i * n + i: half,
            j * n + j: half,
            i * n + j: F.neg(half),
            j * n + i: F.neg(half),
        }

    def jordan_product(self, x: dict, y: dict) -> dict:
        F = self.field
        n = self.n
        out: dict = {}
        for k1, v1 in x.items():
            r1, c1 = divmod(k1, n)
            for k2, v2 in y.items():
                r2, c2 = divmod(k2, n)
                val = F.mul(v1, v2)
                for (r, c, ok) in ((r1, c2, c1 == r2), (r2, c1, c2 == r1)):
                    if not ok:
                        continue
                    key = r * n + c
                    cur = out.get(key)
                    nv = F.add(cur, val) if cur is not None else val
                    if F.is_zero(nv):
                        out.pop(key, None)
                    else:
                        out[key] = nv
        half = F.div(F.one_raw(), F.coerce(2))
        return {k: F.mul(half, v) for k, v in out.items()}

    def is_zero_sum_symmetric(self, x: dict) -> bool:
        F = self.field
        n = self.n
        for r in range(n):
            acc = F.zero_raw()
            for c in range(n):
                acc = F.add(acc, x.get(r * n + c, F.zero_raw()))
            if not F.is_zero(acc):
                return False
        return all(
            x.get(r * n + c, F.zero_raw()) == x.get(c * n + r, F.zero_raw())
            for r in range(n)
            for c in range(r + 1, n)
        )


def symmetric_model_iso(M: MatsuoAlgebra, verify: bool = True) -> tuple[ZeroSumJordan, list[dict]]:
    """Verified isomorphism M(S_n) -> zero-sum symmetric Jordan matrices."""
    fs = M.fs
    if fs.family != "symmetric" or fs.payloads is None:
        raise AutosError("the matrix model applies to M(S_n)")
    n = max(max(p) for p in fs.payloads)
    Z = ZeroSumJordan(n, M.field)
    cols = [Z.transposition_image(*p) for p in fs.payloads]
    if verify:
        F = M.field
        for col in cols:
            if not Z.is_zero_sum_symmetric(col):
                raise VerificationFailure("image leaves the zero-sum symmetric space")
        for i in range(M.dim):
            for j in range(i, M.dim):
                lhs: dict = {}
                for k, c in M.basis_product(i, j).items():
                    for key, v in cols[k].items():
                        cur = lhs.get(key)
                        nv = F.add(cur, F.mul(c, v)) if cur is not None else F.mul(c, v)
                        if F.is_zero(nv):
                            lhs.pop(key, None)
                        else:
                            lhs[key] = nv
                rhs = Z.jordan_product(cols[i], cols[j])
                diff = dict(lhs)
                for k, v in rhs.items():
                    cur = diff.get(k)
                    nv = F.sub(cur, v) if cur is not None else F.neg(v)
                    if F.is_zero(nv):
                        diff.pop(k, None)
                    else:
                        diff[k] = nv
                if diff:
                    raise VerificationFailure(
                        f"matrix model not multiplicative at pair {(i, j)}"
                    )
        if not is_bijective(M.field, cols, M.dim):
            raise VerificationFailure("matrix model map is not injective")
    return Z, cols


# -- torus characters ----------------------------------------------------------


def character_report(B: ModelB, simple_params) -> dict:
    """Eigenvalues of a torus element on e_a = x_a + i y_a and their additivity."""
    F = B.field
    i_unit = sqrt_in_field(F, -1)
    if i_unit is None:
        raise AutosError(f"-1 is not a square in {F}")
    i_raw = i_unit.raw
    params = torus_params_for_roots(B, simple_params)
    endo = torus_automorphism(B, simple_params, verify=False)
    rs = B.rs
    lambdas = []
    for r, (c, s) in enumerate(params):
        x, y = 3 * r + 1, 3 * r + 2
        e_vec = {x: F.one_raw(), y: i_raw}
        f_vec = {x: F.one_raw(), y: F.neg(i_raw)}
        lam = F.sub(c, F.mul(i_raw, s))
        for vec, ev in ((e_vec, lam), (f_vec, F.inv(lam))):
            got = endo.apply(B, vec)
            want = B.scale(ev, vec)
            if B.sub(got, want):
                raise VerificationFailure("torus element does not act diagonally")
        lambdas.append(lam)
    ridx = {a: r for r, a in enumerate(rs.positive_roots)}
    additive = True
    proportional = True
    for alpha, r in ridx.items():
        for beta, s in ridx.items():
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            t = ridx.get(gamma)
            if t is None:
                continue
            if F.mul(lambdas[r], lambdas[s]) != lambdas[t]:
                additive = False
            e_a = {3 * r + 1: F.one_raw(), 3 * r + 2: i_raw}
            e_b = {3 * s + 1: F.one_raw(), 3 * s + 2: i_raw}
            prod = B.multiply(e_a, e_b)
            # proportionality to e_gamma: prod = mu * (x + i y)
            mu = prod.get(3 * t + 1, F.zero_raw())
            want = {3 * t + 1: mu, 3 * t + 2: F.mul(mu, i_raw)}
            if B.sub(prod, want) or F.is_zero(mu):
                proportional = False
    return {
        "eigenvalues": [F.format(l) for l in lambdas],
        "additive": additive,
        "pair_products_proportional": proportional,
    }
