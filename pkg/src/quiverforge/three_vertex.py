"""The three-vertex family: quiver construction, the alternating-word
dictionary, the star-form rewriting algorithm, and the full pipeline
building the unique indecomposable for every positive real root.

Vertices are 1, 2, 3; arrows are la1..laf (1 -> 2), mu1..mug (2 -> 3)
and nu1..nuh (3 -> 2), in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .errors import ConstructionError, DomainError, InputError
from .linalg import QQ, Mat
from .quiver import (
    REAL,
    SIMPLE,
    Arrow,
    Quiver,
    apply_word,
    classify_root,
    ringel_form,
    root_expression,
    support,
    sym_form,
    unit_vector,
)
from .reps import Representation, simple_rep
from .functors import bgp_reflect, sigma


@dataclass(frozen=True)
class FamilyParams:
    f: int
    g: int
    h: int

    def __post_init__(self):
        if min(self.f, self.g, self.h) < 1:
            raise InputError("family parameters must all be >= 1")


def build_family(p: FamilyParams) -> Quiver:
    arrows = [Arrow(f"la{k}", 1, 2) for k in range(1, p.f + 1)]
    arrows += [Arrow(f"mu{k}", 2, 3) for k in range(1, p.g + 1)]
    arrows += [Arrow(f"nu{k}", 3, 2) for k in range(1, p.h + 1)]
    return Quiver((1, 2, 3), arrows)


def build_subquiver(f: int) -> Quiver:
    """The two-vertex subquiver with f parallel arrows 1 -> 2."""
    return Quiver((1, 2), [Arrow(f"la{k}", 1, 2) for k in range(1, f + 1)])


# ---------------------------------------------------------------------------
# The alternating elements zeta/rho and their word calculus


@dataclass(frozen=True)
class EElement:
    kind: str  # zeta1 | zeta2 | rho1 | rho2 | id
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("zeta1", "zeta2", "rho1", "rho2", "id"):
            raise InputError(f"unknown element kind {self.kind!r}")
        if self.kind == "id" and self.n != 0:
            raise InputError("identity carries n = 0")
        if self.kind in ("rho1", "rho2") and self.n < 1:
            raise InputError("rho elements need n >= 1; use kind 'id' for n = 0")
        if self.n < 0:
            raise InputError("negative exponent")

    def __str__(self):
        return "1" if self.kind == "id" else f"{self.kind}({self.n})"


IDENTITY_E = EElement("id", 0)


def word_of(e: EElement) -> Tuple[int, ...]:
    if e.kind == "id":
        return ()
    if e.kind == "zeta1":
        return tuple([1, 2] * e.n + [1])
    if e.kind == "zeta2":
        return tuple([2, 1] * e.n + [2])
    if e.kind == "rho1":
        return tuple([1, 2] * e.n)
    return tuple([2, 1] * e.n)


def recognize_E(w: Sequence[int]) -> Optional[EElement]:
    """Syntactic match of a letter sequence against the five shapes."""
    w = tuple(w)
    if not w:
        return IDENTITY_E
    if any(c not in (1, 2) for c in w):
        return None
    for a, b in zip(w, w[1:]):
        if a == b:
            return None
    L = len(w)
    if w[0] == 1:
        return EElement("zeta1", (L - 1) // 2) if L % 2 else EElement("rho1", L // 2)
    return EElement("zeta2", (L - 1) // 2) if L % 2 else EElement("rho2", L // 2)


def f1_reduce(e: EElement) -> EElement:
    """Canonical form under the f = 1 braid relation (n <= 1 everywhere)."""
    L = len(word_of(e))
    start = word_of(e)[0] if L else 0
    L %= 6
    if L == 0:
        return IDENTITY_E
    if L == 1:
        return EElement("zeta1" if start == 1 else "zeta2", 0)
    if L == 2:
        return EElement("rho1" if start == 1 else "rho2", 1)
    if L == 3:
        return EElement("zeta1", 1)
    if L == 4:
        return EElement("rho2" if start == 1 else "rho1", 1)
    return EElement("zeta2" if start == 1 else "zeta1", 0)


def s1_mul(e: EElement, f: int) -> EElement:
    """Left-multiply by s_1, staying inside the element set."""
    if e.kind == "id":
        out = EElement("zeta1", 0)
    elif e.kind == "zeta1":
        out = EElement("rho2", e.n) if e.n >= 1 else IDENTITY_E
    elif e.kind == "zeta2":
        out = EElement("rho1", e.n + 1)
    elif e.kind == "rho1":
        out = EElement("zeta2", e.n - 1)
    else:  # rho2
        out = EElement("zeta1", e.n)
    return f1_reduce(out) if f == 1 else out


def apply_e(q: Quiver, e: EElement, v) -> dict:
    return apply_word(q, word_of(e), v)


# ---------------------------------------------------------------------------
# Star form and the five-case rewriting algorithm


@dataclass
class StarForm:
    """Blocks chi_m, ..., chi_1 (left to right) with implicit s_3 separators."""

    chis: Tuple[EElement, ...]

    def flatten(self) -> Tuple[int, ...]:
        out: List[int] = []
        for k, chi in enumerate(self.chis):
            if k:
                out.append(3)
            out.extend(word_of(chi))
        return tuple(out)

    def grammar_ok(self, f: int) -> bool:
        if len(self.chis) < 2:
            return False
        head, interior, tail = self.chis[0], self.chis[1:-1], self.chis[-1]

        def head_ok(e):
            return e.kind == "id" or (e.kind == "zeta1" and e.n >= 1) or e.kind == "zeta2"

        if not head_ok(head):
            return False
        for e in interior:
            if not ((e.kind == "zeta1" and e.n >= 1) or e.kind == "zeta2"):
                return False
        if f == 1 and any(e.n > 1 for e in self.chis):
            return False
        return True


def segment_word(w: Sequence[int], p: FamilyParams, strict: bool = True) -> List[EElement]:
    """Split a word on the letter 3 into blocks chi'_m, ..., chi'_1.

    Raises InputError when a block is not an alternating 1-2 pattern,
    when an interior block is trivial, or when the leading block is s_1.
    For f = 1 blocks are first reduced modulo the braid relation.
    """
    w = list(w)
    if any(c not in (1, 2, 3) for c in w):
        raise InputError("letters must be vertices 1, 2 or 3")
    if 3 not in w:
        raise InputError("word contains no letter 3; it lies in the element set E")
    chunks: List[List[int]] = [[]]
    for c in w:
        if c == 3:
            chunks.append([])
        else:
            chunks[-1].append(c)
    blocks = []
    for idx, chunk in enumerate(chunks):
        e = recognize_E(chunk)
        if e is None:
            raise InputError(f"block {''.join(map(str, chunk))!r} is not an alternating pattern")
        if p.f == 1:
            e = f1_reduce(e)
        blocks.append(e)
    m = len(blocks)
    if strict:
        for idx, e in enumerate(blocks):
            is_leading = idx == 0
            is_tail = idx == m - 1
            if not is_tail:
                if e.kind == "zeta1" and e.n == 0:
                    raise InputError(f"block {idx} is the bare s_1, not segmentable")
                if not is_leading and e.kind == "id":
                    raise InputError(f"interior block {idx} is trivial, not segmentable")
    return blocks


def rewrite_to_star(w: Sequence[int], p: FamilyParams) -> StarForm:
    """Rewrite a segmentable word into the star normal form.

    Descending pass over the blocks: zeta blocks are kept, a rho1(n)
    block becomes zeta1(n) and a rho2(n) block becomes zeta2(n-1), in
    both cases pushing an s_1 into the block to its right.
    """
    blocks = segment_word(w, p)
    m = len(blocks)
    for j in range(m - 1):  # positions chi'_m .. chi'_2, left to right
        e = blocks[j]
        if e.kind == "id":
            if j != 0:
                raise ConstructionError("trivial block surfaced at an interior position")
            continue
        if e.kind == "zeta1":
            if e.n == 0:
                raise ConstructionError("bare s_1 surfaced during rewriting")
            continue
        if e.kind == "zeta2":
            continue
        if e.kind == "rho1":
            blocks[j] = EElement("zeta1", e.n)
        else:  # rho2
            blocks[j] = EElement("zeta2", e.n - 1)
        if p.f == 1:
            blocks[j] = f1_reduce(blocks[j])
        blocks[j + 1] = s1_mul(blocks[j + 1], p.f)
    form = StarForm(tuple(blocks))
    if not form.grammar_ok(p.f):
        raise ConstructionError(f"rewriting produced an out-of-grammar form {list(map(str, blocks))}")
    return form


# ---------------------------------------------------------------------------
# Construction pipeline


@dataclass
class Stage:
    tag: str
    s_dims: Optional[dict]  # dims of the reflecting module, None for the base
    input_dims: Optional[dict]
    dims: dict
    predicted_end: int

    def to_json(self, q: Quiver) -> dict:
        return {
            "tag": self.tag,
            "s_dims": None if self.s_dims is None else [self.s_dims[v] for v in q.vertices],
            "dims": [self.dims[v] for v in q.vertices],
            "predicted_end_dim": self.predicted_end,
        }


@dataclass
class ConstructionTrace:
    quiver: Quiver
    stages: List[Stage] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"stages": [s.to_json(self.quiver) for s in self.stages]}


def predicted_end_dim(trace: ConstructionTrace) -> int:
    """Recompute the endomorphism dimension from the recorded stages.

    Starts at one for the base representation and adds
    <dims, s> * <s, dims> at every extension stage.
    """
    total = 1
    q = trace.quiver
    for st in trace.stages:
        if st.s_dims is not None:
            total += ringel_form(q, st.input_dims, st.s_dims) * ringel_form(
                q, st.s_dims, st.input_dims
            )
    if trace.stages and trace.stages[-1].predicted_end != total:
        raise ConstructionError("trace end-dimension bookkeeping is inconsistent", trace)
    return total


class _Builder:
    def __init__(self, q: Quiver, field):
        self.q = q
        self.field = field
        self.rep: Optional[Representation] = None
        self.trace = ConstructionTrace(q)
        self.end = 1

    def base(self, rep: Representation, tag: str):
        self.rep = rep
        self.end = 1
        self.trace.stages.append(Stage(tag, None, None, dict(rep.dims), 1))

    def extend(self, s: Representation, tag: str):
        before = dict(self.rep.dims)
        self.rep = sigma(s, self.rep)
        self.end += ringel_form(self.q, before, s.dims) * ringel_form(self.q, s.dims, before)
        self.trace.stages.append(Stage(tag, dict(s.dims), before, dict(self.rep.dims), self.end))


def kronecker_rep(alpha: Tuple[int, int], f: int, field=QQ) -> Representation:
    """The unique indecomposable of the f-arrow two-vertex quiver for a
    real root (a, b), built with reflection functors.

    Intermediate steps live over alternating orientations; the parity of
    the reflection word is used to land back on arrows 1 -> 2.
    """
    qk = build_subquiver(f)
    a = {1: alpha[0], 2: alpha[1]}
    tag = classify_root(qk, a)
    if tag not in (SIMPLE, REAL):
        raise DomainError(f"({alpha[0]},{alpha[1]}) is {tag} over the subquiver")
    word, j = root_expression(qk, a)
    start_q = qk if len(word) % 2 == 0 else Quiver((1, 2), [Arrow(ar.id, 2, 1) for ar in qk.arrows])
    x = simple_rep(start_q, j, field)
    for i in reversed(word):
        direction = "plus" if not x.quiver.outgoing(i) else "minus"
        x = bgp_reflect(x, i, direction)
    if x.quiver != qk:
        raise ConstructionError("reflection parity did not return to the base orientation")
    return x


def embed_subquiver_rep(x: Representation, p: FamilyParams) -> Representation:
    """Extend a two-vertex representation by a zero space at vertex 3."""
    q = build_family(p)
    dims = {1: x.dims[1], 2: x.dims[2], 3: 0}
    mats = {}
    for a in q.arrows:
        if str(a.id).startswith("la"):
            mats[a.id] = x.mats[a.id]
        else:
            mats[a.id] = Mat.zeros(dims[a.head], dims[a.tail], x.field)
    return Representation(q, dims, mats, x.field)


def sigma_zeta_root(i: int, n: int, p: FamilyParams) -> dict:
    """The subquiver real root chi' with sigma_{zeta_i(n)} = sigma_{X_chi'}.

    Parity dictionary: zeta_1(n) uses rho_1(n/2)(e_1) for even n and
    zeta_1((n-1)/2)(e_2) for odd n; zeta_2(n) uses rho_2(n/2)(e_2) for
    even n and zeta_2((n-1)/2)(e_1) for odd n.
    """
    if i not in (1, 2):
        raise InputError("zeta index must be 1 or 2")
    if i == 1 and n < 1:
        raise InputError("zeta_1 functor needs n >= 1")
    if i == 2 and n < 0:
        raise InputError("zeta_2 functor needs n >= 0")
    if p.f == 1 and n > 1:
        raise InputError("f = 1 restricts exponents to n <= 1")
    q = build_family(p)
    if i == 1:
        if n % 2 == 0:
            e = EElement("rho1", n // 2) if n else IDENTITY_E
            base = 1
        else:
            e = EElement("zeta1", (n - 1) // 2)
            base = 2
    else:
        if n % 2 == 0:
            e = EElement("rho2", n // 2) if n else IDENTITY_E
            base = 2
        else:
            e = EElement("zeta2", (n - 1) // 2)
            base = 1
    return apply_e(q, e, unit_vector(q, base))


def _rho_to_zeta_at_e3(e: EElement) -> Optional[EElement]:
    """Convert a rho-form to the zeta-form with the same action on e_3."""
    if e.kind == "rho1":
        return EElement("zeta1", e.n)
    if e.kind == "rho2":
        return EElement("zeta2", e.n - 1)
    return e


def base_rep(chi1: EElement, j: int, p: FamilyParams, field=QQ,
             builder: Optional[_Builder] = None) -> _Builder:
    """First-stage representation X_{chi1(e_j)} with its trace.

    For j in {1, 2} this is a subquiver representation built by
    reflection functors; for j = 3 it is a universal extension of S(3).
    """
    q = build_family(p)
    b = builder or _Builder(q, field)
    alpha = apply_e(q, chi1, unit_vector(q, j))
    if any(x < 0 for x in alpha.values()):
        raise DomainError(f"{chi1}(e_{j}) is not a positive root")
    sup = support(alpha)
    if len(sup) == 1 and max(alpha.values()) == 1:
        v = next(iter(sup))
        b.base(simple_rep(q, v, field), f"base S({v})")
        return b
    if sup <= {1, 2}:
        x = embed_subquiver_rep(kronecker_rep((alpha[1], alpha[2]), p.f, field), p)
        b.base(x, f"base subquiver X_({alpha[1]},{alpha[2]},0)")
        return b
    if j != 3:
        raise DomainError(f"unexpected support {sorted(sup)} for a first-stage root")
    chi = _rho_to_zeta_at_e3(chi1)
    if chi.kind == "id":
        b.base(simple_rep(q, 3, field), "base S(3)")
        return b
    i = 1 if chi.kind == "zeta1" else 2
    chi_root = sigma_zeta_root(i, chi.n, p)
    s = _subquiver_root_rep(chi_root, p, field)
    b.base(simple_rep(q, 3, field), "base S(3)")
    b.extend(s, f"sigma X_{tuple(chi_root[v] for v in q.vertices)}")
    return b


def _subquiver_root_rep(chi_root: dict, p: FamilyParams, field) -> Representation:
    if chi_root[3] != 0:
        raise ConstructionError("expected a subquiver-supported root")
    if chi_root[1] == 0 and chi_root[2] == 1:
        return simple_rep(build_family(p), 2, field)
    if chi_root[1] == 1 and chi_root[2] == 0:
        return simple_rep(build_family(p), 1, field)
    return embed_subquiver_rep(kronecker_rep((chi_root[1], chi_root[2]), p.f, field), p)


def construct(alpha: dict, p: FamilyParams, field=QQ) -> Tuple[Representation, ConstructionTrace]:
    """Build the unique indecomposable X_alpha for a positive real root.

    Dispatch: simple roots directly; roots supported on {1,2} via
    reflection functors; roots supported on {2,3} by alternating
    extensions along the greedy descent; sincere roots through the star
    form and the extension-functor dictionary.
    """
    q = build_family(p)
    tag = classify_root(q, alpha)
    if tag not in (SIMPLE, REAL):
        raise DomainError(f"dimension vector is {tag}, not a real root")
    b = _Builder(q, field)
    sup = support(alpha)

    if tag == SIMPLE:
        v = next(iter(sup))
        b.base(simple_rep(q, v, field), f"base S({v})")
        return _finish(b, alpha)

    if sup <= {1, 2}:
        x = embed_subquiver_rep(kronecker_rep((alpha[1], alpha[2]), p.f, field), p)
        b.base(x, f"base subquiver X_({alpha[1]},{alpha[2]},0)")
        return _finish(b, alpha)

    if sup <= {2, 3}:
        word, j = root_expression(q, alpha)
        if any(i == 1 for i in word):
            raise ConstructionError("descent left the {2,3} subquiver", b.trace)
        b.base(simple_rep(q, j, field), f"base S({j})")
        for i in reversed(word):
            b.extend(simple_rep(q, i, field), f"sigma S({i})")
        return _finish(b, alpha)

    # sincere root: star form pipeline
    word, j = root_expression(q, alpha)
    e = recognize_E(word)
    if e is not None:
        base_rep(e, j, p, field, builder=b)
        return _finish(b, alpha)
    blocks = segment_word(word, p, strict=False)
    # pre-normalize the tail so that chi_1(e_j) is never e_1 (absorbed via
    # s_3(e_1) = e_1) nor a vector the extension stage cannot start from
    while len(blocks) >= 2 and apply_e(q, blocks[-1], unit_vector(q, j)) == unit_vector(q, 1):
        blocks = blocks[:-1]
        j = 1
    # a leading bare s_1 commutes across the separator (no arrows join
    # vertices 1 and 3), so fold it into the next block
    if len(blocks) >= 2 and blocks[0] == EElement("zeta1", 0):
        blocks = [IDENTITY_E, s1_mul(blocks[1], p.f)] + blocks[2:]
    if len(blocks) == 1:
        base_rep(blocks[0], j, p, field, builder=b)
        return _finish(b, alpha)
    form = rewrite_to_star(_flatten_blocks(blocks), p)
    chis = list(form.chis)
    base_rep(chis[-1], j, p, field, builder=b)
    s3 = simple_rep(q, 3, field)
    for chi in reversed(chis[:-1]):
        b.extend(s3, "sigma S(3)")
        if chi.kind == "id":
            continue
        i = 1 if chi.kind == "zeta1" else 2
        chi_root = sigma_zeta_root(i, chi.n, p)
        s = _subquiver_root_rep(chi_root, p, field)
        b.extend(s, f"sigma X_{tuple(chi_root[v] for v in q.vertices)}")
    return _finish(b, alpha)


def _flatten_blocks(blocks: List[EElement]) -> Tuple[int, ...]:
    out: List[int] = []
    for k, e in enumerate(blocks):
        if k:
            out.append(3)
        out.extend(word_of(e))
    return tuple(out)


def _finish(b: _Builder, alpha: dict) -> Tuple[Representation, ConstructionTrace]:
    if b.rep.dims != alpha:
        raise ConstructionError(
            f"pipeline produced dims {b.rep.dims}, expected {alpha}", b.trace
        )
    return b.rep, b.trace
