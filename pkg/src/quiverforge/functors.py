"""Constructive functors: image-vertex insertion and collapse, BGP
reflections, universal extension functors and their inverses, membership
predicates, and the maximal-rank-type checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConstructionError, DomainError, InputError
from .linalg import (
    Mat,
    hstack,
    image_complement,
    inverse,
    kernel_basis,
    mat_solve,
    pivot_columns,
    rank,
    vstack,
)
from .quiver import Arrow, Quiver, sym_form, unit_vector
from .reps import (
    Representation,
    end_dim,
    ext_dim,
    ext_unit_basis,
    hom_dim,
    simple_rep,
)


@dataclass
class InsertionResult:
    new_quiver: Quiver
    new_rep: Representation
    z_vertex: object
    inclusion: Mat
    original: Representation
    vertex: object
    arrow_ids: Tuple[object, ...]


@dataclass
class MembershipReport:
    hom_x_s: int
    hom_s_x: int
    ext_s_x: int
    ext_x_s: int

    @property
    def in_minus_upper(self) -> bool:
        """X in M^{-S}: Hom(X, S) = 0."""
        return self.hom_x_s == 0

    @property
    def in_minus_lower(self) -> bool:
        """X in M_{-S}: Hom(S, X) = 0."""
        return self.hom_s_x == 0

    def to_json(self) -> dict:
        return {
            "hom_X_S": self.hom_x_s,
            "hom_S_X": self.hom_s_x,
            "ext_S_X": self.ext_s_x,
            "ext_X_S": self.ext_x_s,
            "in_minus_upper": self.in_minus_upper,
            "in_minus_lower": self.in_minus_lower,
        }


@dataclass
class RankViolation:
    vertex: object
    arrow_ids: Tuple[object, ...]
    side: str  # "in" | "out"
    achieved: int
    required: int

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "arrows": sorted(map(str, self.arrow_ids)),
            "side": self.side,
            "achieved": self.achieved,
            "required": self.required,
        }


def _fresh_vertex(q: Quiver, base="z"):
    name = base
    k = 0
    while name in q.vertices:
        k += 1
        name = f"{base}{k}"
    return name


def insert_image_vertex(x: Representation, i, arrow_ids: Sequence) -> InsertionResult:
    """Attach a new vertex carrying the image of the stacked map into i.

    The subset must consist of arrows with head i.  The image basis is
    the set of pivot columns of the column-stacked matrix, and each
    original map is refactored through the inclusion.
    """
    q = x.quiver
    aset = []
    for a in q.arrows:
        if a.id in set(arrow_ids):
            if a.head != i:
                raise InputError(f"arrow {a.id!r} does not point into vertex {i!r}")
            aset.append(a)
    if len(aset) != len(set(arrow_ids)):
        raise InputError("unknown arrow id in subset")
    di = x.dims[i]
    stacked = hstack([x.mats[a.id] for a in aset], rows=di, field=x.field)
    pivots = pivot_columns(stacked)
    inclusion = Mat(
        di, len(pivots), [[stacked.data[r][c] for c in pivots] for r in range(di)], x.field
    )
    z = _fresh_vertex(q)
    keep = [a for a in q.arrows if a not in aset]
    gammas = [Arrow(f"g_{a.id}", a.tail, z) for a in aset]
    delta = Arrow("ins_delta", z, i)
    new_q = Quiver(tuple(q.vertices) + (z,), tuple(keep + gammas + [delta]))
    dims = dict(x.dims)
    dims[z] = len(pivots)
    mats = {a.id: x.mats[a.id] for a in keep}
    for a, g in zip(aset, gammas):
        hat = mat_solve(inclusion, x.mats[a.id])
        if hat is None:
            raise ConstructionError("factorization through the image failed")
        mats[g.id] = hat
    mats[delta.id] = inclusion
    new_rep = Representation(new_q, dims, mats, x.field)
    return InsertionResult(new_q, new_rep, z, inclusion, x, i, tuple(a.id for a in aset))


def collapse(y: Representation, data: InsertionResult) -> Representation:
    """Compose each gamma arrow with delta, recovering a representation of
    the original quiver."""
    if y.quiver != data.new_quiver:
        raise InputError("representation does not live over the inserted quiver")
    q = data.original.quiver
    dims = {v: y.dims[v] for v in q.vertices}
    mats = {}
    subset = set(data.arrow_ids)
    delta = y.mats["ins_delta"]
    for a in q.arrows:
        if a.id in subset:
            mats[a.id] = delta.mul(y.mats[f"g_{a.id}"])
        else:
            mats[a.id] = y.mats[a.id]
    return Representation(q, dims, mats, y.field)


def _subsets_binary(arrows: List[Arrow]):
    """Nonempty subsets in binary-counter order over the arrow list."""
    n = len(arrows)
    for mask in range(1, 1 << n):
        yield [arrows[k] for k in range(n) if mask >> k & 1]


def maximal_rank_report(x: Representation) -> List[RankViolation]:
    """All (vertex, subset) maximal-rank violations, incoming and outgoing."""
    q = x.quiver
    violations = []
    for i in q.vertices:
        di = x.dims[i]
        for sub in _subsets_binary(q.incoming(i)):
            stacked = hstack([x.mats[a.id] for a in sub], rows=di, field=x.field)
            required = min(stacked.cols, di)
            achieved = rank(stacked)
            if achieved != required:
                violations.append(
                    RankViolation(i, tuple(a.id for a in sub), "in", achieved, required)
                )
        for sub in _subsets_binary(q.outgoing(i)):
            stacked = vstack([x.mats[a.id] for a in sub], cols=di, field=x.field)
            required = min(stacked.rows, di)
            achieved = rank(stacked)
            if achieved != required:
                violations.append(
                    RankViolation(i, tuple(a.id for a in sub), "out", achieved, required)
                )
    return violations


def is_maximal_rank_type(x: Representation) -> bool:
    return not maximal_rank_report(x)


def _reversed_at(q: Quiver, i) -> Quiver:
    arrows = [
        Arrow(a.id, a.head, a.tail) if i in (a.head, a.tail) else a for a in q.arrows
    ]
    return Quiver(q.vertices, arrows)


def bgp_reflect(x: Representation, i, direction: str) -> Representation:
    """BGP reflection functor at a sink (plus) or source (minus).

    The result lives over the quiver with all arrows at i reversed; its
    dimension vector is s_i(dim x) for indecomposables other than S(i).
    """
    q = x.quiver
    if x.dims[i] == x.total_dim() and x.dims[i] > 0:
        raise DomainError("reflection functor is undefined on representations "
                          "concentrated at the reflection vertex")
    if direction == "plus":
        if q.outgoing(i):
            raise DomainError(f"vertex {i!r} is not a sink")
        inc = q.incoming(i)
        stacked = hstack([x.mats[a.id] for a in inc], rows=x.dims[i], field=x.field)
        ker = kernel_basis(stacked)
        dims = dict(x.dims)
        dims[i] = ker.cols
        mats = {a.id: x.mats[a.id] for a in q.arrows if a not in inc}
        off = 0
        for a in inc:
            da = x.dims[a.tail]
            mats[a.id] = ker.submatrix(off, off + da, 0, ker.cols)
            off += da
        return Representation(_reversed_at(q, i), dims, mats, x.field)
    if direction == "minus":
        if q.incoming(i):
            raise DomainError(f"vertex {i!r} is not a source")
        out = q.outgoing(i)
        stacked = vstack([x.mats[a.id] for a in out], cols=x.dims[i], field=x.field)
        pivots = pivot_columns(stacked)
        img = Mat(
            stacked.rows,
            len(pivots),
            [[stacked.data[r][c] for c in pivots] for r in range(stacked.rows)],
            x.field,
        )
        comp = image_complement(img, stacked.rows)
        basis = hstack([img, comp], rows=stacked.rows, field=x.field)
        proj = inverse(basis).submatrix(img.cols, img.cols + comp.cols, 0, stacked.rows)
        dims = dict(x.dims)
        dims[i] = comp.cols
        mats = {a.id: x.mats[a.id] for a in q.arrows if a not in out}
        off = 0
        for a in out:
            da = x.dims[a.head]
            mats[a.id] = proj.submatrix(0, proj.rows, off, off + da)
            off += da
        return Representation(_reversed_at(q, i), dims, mats, x.field)
    raise InputError("direction must be 'plus' or 'minus'")


def assert_exceptional(s: Representation) -> None:
    e = end_dim(s)
    x = ext_dim(s, s)
    if e != 1 or x != 0:
        raise DomainError(
            f"representation is not exceptional: dim End = {e}, dim Ext = {x}"
        )


def membership(x: Representation, s: Representation) -> MembershipReport:
    if x.quiver != s.quiver or x.field != s.field:
        raise InputError("membership needs the same quiver and field")
    assert_exceptional(s)
    return MembershipReport(
        hom_x_s=hom_dim(x, s),
        hom_s_x=hom_dim(s, x),
        ext_s_x=ext_dim(s, x),
        ext_x_s=ext_dim(x, s),
    )


def _unit_mat(rows: int, cols: int, r: int, c: int, field) -> Mat:
    z, o = field.zero(), field.one()
    return Mat(rows, cols, [[o if (i == r and j == c) else z for j in range(cols)] for i in range(rows)], field)


def sigma_bar(s: Representation, x: Representation) -> Representation:
    """Universal extension on top: 0 -> X -> Z -> S^r -> 0 with r = dim Ext(S,X).

    Requires Hom(X,S) = 0 and S exceptional.  Basis order: basis of X,
    then r copies of the basis of S; couplings are the matrix units
    selected by ext_unit_basis(S, X).
    """
    assert_exceptional(s)
    h = hom_dim(x, s)
    if h != 0:
        raise DomainError(f"sigma_bar requires Hom(X,S) = 0, got dim {h}")
    units = ext_unit_basis(s, x)
    r = len(units)
    if r == 0:
        return x
    q = x.quiver
    z = x.field.zero()
    dims = {v: x.dims[v] + r * s.dims[v] for v in q.vertices}
    mats = {}
    for a in q.arrows:
        u, v = a.tail, a.head
        nrows, ncols = dims[v], dims[u]
        grid = [[z] * ncols for _ in range(nrows)]
        xm = x.mats[a.id]
        for rr in range(xm.rows):
            row = grid[rr]
            for cc in range(xm.cols):
                row[cc] = xm.data[rr][cc]
        sm = s.mats[a.id]
        for k in range(r):
            ro = x.dims[v] + k * s.dims[v]
            co = x.dims[u] + k * s.dims[u]
            for rr in range(sm.rows):
                row = grid[ro + rr]
                for cc in range(sm.cols):
                    row[co + cc] = sm.data[rr][cc]
        for k, (aid, col, rowi) in enumerate(units):
            if aid == a.id:
                co = x.dims[u] + k * s.dims[u]
                grid[rowi - 1][co + col - 1] = x.field.one()
        mats[a.id] = Mat(nrows, ncols, grid, x.field)
    return Representation(q, dims, mats, x.field)


def sigma_under(s: Representation, y: Representation) -> Representation:
    """Universal extension below: 0 -> S^t -> U -> Y -> 0 with t = dim Ext(Y,S).

    Requires Hom(S,Y) = 0 and S exceptional.  Basis order: t copies of
    the basis of S, then the basis of Y.
    """
    assert_exceptional(s)
    h = hom_dim(s, y)
    if h != 0:
        raise DomainError(f"sigma_under requires Hom(S,Y) = 0, got dim {h}")
    units = ext_unit_basis(y, s)
    t = len(units)
    if t == 0:
        return y
    q = y.quiver
    z = y.field.zero()
    dims = {v: t * s.dims[v] + y.dims[v] for v in q.vertices}
    mats = {}
    for a in q.arrows:
        u, v = a.tail, a.head
        nrows, ncols = dims[v], dims[u]
        grid = [[z] * ncols for _ in range(nrows)]
        sm = s.mats[a.id]
        for k in range(t):
            ro = k * s.dims[v]
            co = k * s.dims[u]
            for rr in range(sm.rows):
                row = grid[ro + rr]
                for cc in range(sm.cols):
                    row[co + cc] = sm.data[rr][cc]
        ym = y.mats[a.id]
        ro = t * s.dims[v]
        co = t * s.dims[u]
        for rr in range(ym.rows):
            row = grid[ro + rr]
            for cc in range(ym.cols):
                row[co + cc] = ym.data[rr][cc]
        for k, (aid, col, rowi) in enumerate(units):
            if aid == a.id:
                grid[k * s.dims[v] + rowi - 1][t * s.dims[u] + col - 1] = y.field.one()
        mats[a.id] = Mat(nrows, ncols, grid, y.field)
    return Representation(q, dims, mats, y.field)


def sigma(s: Representation, x: Representation) -> Representation:
    """sigma_S = sigma_under o sigma_bar on M^{-S} cap M_{-S}.

    Verifies the intermediate vanishing Hom(S, sigma_bar(S,X)) = 0 and
    the dimension formula dim out = dim in - (dim in, dim S) dim S.
    """
    hs = hom_dim(s, x)
    hx = hom_dim(x, s)
    if hs != 0 or hx != 0:
        raise DomainError(
            f"sigma requires Hom(X,S) = Hom(S,X) = 0, got {hx} and {hs}"
        )
    z = sigma_bar(s, x)
    mid = hom_dim(s, z)
    if mid != 0:
        raise ConstructionError(
            f"intermediate vanishing failed: dim Hom(S, sigma_bar) = {mid}"
        )
    u = sigma_under(s, z)
    q = x.quiver
    c = sym_form(q, x.dims, s.dims)
    expected = {v: x.dims[v] - c * s.dims[v] for v in q.vertices}
    if u.dims != expected:
        raise ConstructionError(
            f"sigma dimension formula violated: got {u.dims}, expected {expected}"
        )
    return u


def sigma_bar_inv(s: Representation, z: Representation) -> Representation:
    """Intersection of the kernels of all maps Z -> S, with restricted maps."""
    from .reps import hom_basis  # local import to avoid a cycle at module load

    assert_exceptional(s)
    phis = hom_basis(z, s).basis
    q = z.quiver
    incl = {}
    for v in q.vertices:
        stacked = vstack([p.parts[v] for p in phis], cols=z.dims[v], field=z.field)
        incl[v] = kernel_basis(stacked)
    dims = {v: incl[v].cols for v in q.vertices}
    mats = {}
    for a in q.arrows:
        rhs = z.mats[a.id].mul(incl[a.tail])
        m = mat_solve(incl[a.head], rhs)
        if m is None:
            raise ConstructionError("kernel subspace is not arrow-stable")
        mats[a.id] = m
    return Representation(q, dims, mats, z.field)


def sigma_under_inv(s: Representation, u: Representation) -> Representation:
    """Quotient of U by the sum of images of all maps S -> U."""
    from .reps import hom_basis

    assert_exceptional(s)
    psis = hom_basis(s, u).basis
    q = u.quiver
    proj = {}
    rep_inj = {}
    for v in q.vertices:
        dv = u.dims[v]
        spans = hstack([p.parts[v] for p in psis], rows=dv, field=u.field)
        pivots = pivot_columns(spans)
        img = Mat(dv, len(pivots), [[spans.data[r][c] for c in pivots] for r in range(dv)], u.field)
        comp = image_complement(img, dv)
        basis = hstack([img, comp], rows=dv, field=u.field)
        proj[v] = inverse(basis).submatrix(img.cols, dv, 0, dv)
        rep_inj[v] = comp
    dims = {v: proj[v].rows for v in q.vertices}
    mats = {}
    for a in q.arrows:
        mats[a.id] = proj[a.head].mul(u.mats[a.id]).mul(rep_inj[a.tail])
    return Representation(q, dims, mats, u.field)


def sigma_inv(s: Representation, x: Representation) -> Representation:
    y = sigma_under_inv(s, x)
    return sigma_bar_inv(s, y)


def find_isomorphism(x: Representation, y: Representation):
    """A mutually inverse pair of morphisms, or None.

    Scans deterministic linear combinations sum_k t^k f_k of the Hom
    basis; when an isomorphism exists, the non-invertible t form a
    finite root set, so enough sample points always hit one.
    """
    from .reps import Morphism, hom_basis, identity_morphism

    if x.dims != y.dims:
        return None
    fwd = hom_basis(x, y).basis
    if not fwd:
        return None
    idx = identity_morphism(x)
    bad_bound = sum(x.dims.values()) * max(1, len(fwd) - 1)
    for t in range(bad_bound + 2):
        c = x.field.of(1)
        f = fwd[0]
        for m in fwd[1:]:
            c = c * x.field.of(t)
            f = f.add(m.scale(c))
        try:
            parts = {v: inverse(f.parts[v]) for v in x.quiver.vertices}
        except InputError:
            continue
        g = Morphism(y, x, parts)
        if g.compose(f) == idx and g.is_valid():
            return f, g
    return None
