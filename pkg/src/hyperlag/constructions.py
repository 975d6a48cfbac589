"""Hypergraph families feeding the certification pipelines.

Four kinds of object are built here: the apex family B(2k, n) whose limit
Lagrangian is alpha_k/6; weighted multipartite edge patterns (three parts
with rational weights for the 2/25 bound, 2k+1 parts with exact surd
weights for the alpha_k/6 bound) together with an integer instantiation
policy; locally sparse "adder" hypergraphs that raise the Lagrangian of a
base construction without creating dense small subgraphs; and the assembly
that injects an adder into one part of a base.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .closedform import Surd
from .hypercore import UniformHypergraph

__all__ = [
    "PartitionPattern",
    "SparseAdderParams",
    "SparsityCheck",
    "AdderGenerationError",
    "build_b2k",
    "build_theorem1_base",
    "theorem1_pattern",
    "theorem1_parts",
    "build_theorem3_pattern",
    "instantiate_pattern",
    "pattern_part_sizes",
    "pattern_parts",
    "check_local_sparsity",
    "check_local_sparsity_naive",
    "generate_sparse_adder",
    "assemble_gstar",
    "construction_metadata",
]

ExactWeight = Union[Fraction, Surd]


class AdderGenerationError(RuntimeError):
    """Raised when randomized add-and-repair exhausts its attempt budget."""


@dataclass(frozen=True)
class PartitionPattern:
    """Weighted multipartite edge pattern.

    Parts are 1..p with exact nonnegative weights (Fraction or Surd) summing
    to 1.  Each template is a sorted r-tuple of part identifiers, repeats
    allowed; a template like (1, 1, 2) expands to all pairs inside part 1
    joined with every vertex of part 2.
    """

    r: int
    part_weights: tuple[ExactWeight, ...]
    templates: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"arity must be >= 2, got {self.r}")
        weights = tuple(self.part_weights)
        if not weights:
            raise ValueError("pattern needs at least one part")
        for w in weights:
            if (w.sign() if isinstance(w, Surd) else (w > 0) - (w < 0)) < 0:
                raise ValueError(f"negative part weight {w}")
        total = reduce(lambda acc, w: acc + w, weights)
        if total != 1:
            raise ValueError(f"part weights sum to {total}, not 1")
        p = len(weights)
        canon = []
        for t in self.templates:
            tt = tuple(sorted(int(x) for x in t))
            if len(tt) != self.r:
                raise ValueError(f"template {t} has multiplicity {len(tt)}, expected {self.r}")
            if tt[0] < 1 or tt[-1] > p:
                raise ValueError(f"template {t} names a part outside 1..{p}")
            canon.append(tt)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate templates")
        object.__setattr__(self, "part_weights", weights)
        object.__setattr__(self, "templates", tuple(sorted(canon)))

    @property
    def num_parts(self) -> int:
        return len(self.part_weights)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_parts + 1))


@dataclass(frozen=True)
class SparseAdderParams:
    """Parameters for randomized generation of a locally sparse adder:
    t vertices, at least c * t^(r-1) edges, and every vertex subset of size
    at most s spanning at most |subset| - r + 1 edges."""

    s: int
    c: Union[float, Fraction]
    t: int
    r: int = 3
    seed: int = 0
    max_attempts: int | None = None

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"arity must be >= 2, got {self.r}")
        if self.s < self.r:
            raise ValueError(f"s must be >= r = {self.r}, got {self.s}")
        if self.t < self.r:
            raise ValueError(f"t must be >= r = {self.r}, got {self.t}")
        if self.c <= 0:
            raise ValueError(f"density constant must be positive, got {self.c}")

    def target_edges(self) -> int:
        c = self.c if isinstance(self.c, Fraction) else Fraction(self.c).limit_denominator(10**6)
        return math.ceil(c * self.t ** (self.r - 1))

    def attempt_budget(self) -> int:
        if self.max_attempts is not None:
            return self.max_attempts
        return 200 * self.target_edges() + 10_000


@dataclass(frozen=True)
class SparsityCheck:
    ok: bool
    witness: tuple[int, ...] | None


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def build_b2k(k: int, n: int) -> UniformHypergraph:
    """All triples on 1..n meeting {1..2k}; edge count C(n,3) - C(n-2k,3)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    edges = [e for e in itertools.combinations(range(1, n + 1), 3) if e[0] <= 2 * k]
    return UniformHypergraph(3, n, edges)


def theorem1_pattern() -> PartitionPattern:
    """Three parts weighted 2/5, 2/5, 1/5 with templates (1,1,2), (1,2,3), (2,2,3)."""
    return PartitionPattern(
        r=3,
        part_weights=(Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)),
        templates=((1, 1, 2), (1, 2, 3), (2, 2, 3)),
    )


def theorem1_parts(t: int) -> list[tuple[int, int]]:
    """Block boundaries of the three parts in build_theorem1_base(t)."""
    _require_mult_of_5(t)
    a = 2 * t // 5
    return [(1, a), (a + 1, 2 * a), (2 * a + 1, t)]


def _require_mult_of_5(t: int) -> None:
    if t % 5 != 0 or t < 10:
        raise ValueError(f"t must be a multiple of 5 with t >= 10, got {t}")


def build_theorem1_base(t: int) -> UniformHypergraph:
    """Three-part base on t vertices, |V1| = |V2| = 2t/5 and |V3| = t/5.

    Edges: one vertex from each part, or two from V1 and one from V2, or two
    from V2 and one from V3.  The count is exactly 2t^3/25 - 3t^2/25.
    """
    _require_mult_of_5(t)
    (l1, h1), (l2, h2), (l3, h3) = theorem1_parts(t)
    v1, v2, v3 = range(l1, h1 + 1), range(l2, h2 + 1), range(l3, h3 + 1)
    edges = list(itertools.product(v1, v2, v3))
    edges.extend((a, b, c) for a, b in itertools.combinations(v1, 2) for c in v2)
    edges.extend((a, b, c) for a, b in itertools.combinations(v2, 2) for c in v3)
    return UniformHypergraph(3, t, edges)


def build_theorem3_pattern(k: int) -> PartitionPattern:
    """2k parts of exact weight (2k+1 - sqrt(4k-1))/(4k^2+2) and one apex part
    of weight (k sqrt(4k-1) + 1 - k)/(2k^2+1).

    Templates: all transversal triples among the first 2k parts, every pair
    of them joined with the apex, and every first-block part joined with a
    pair inside the apex.  The weights sum to 1 exactly in surd arithmetic.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    root = Surd.sqrt(4 * k - 1)
    den = 4 * k * k + 2
    small = Fraction(2 * k + 1, den) - Fraction(1, den) * root
    apex = Fraction(1 - k, 2 * k * k + 1) + Fraction(k, 2 * k * k + 1) * root
    templates = [tuple(t) for t in itertools.combinations(range(1, 2 * k + 1), 3)]
    templates += [(i, j, 2 * k + 1) for i, j in itertools.combinations(range(1, 2 * k + 1), 2)]
    templates += [(i, 2 * k + 1, 2 * k + 1) for i in range(1, 2 * k + 1)]
    return PartitionPattern(r=3, part_weights=(small,) * (2 * k) + (apex,), templates=tuple(templates))


def pattern_part_sizes(pattern: PartitionPattern, t: int) -> list[int]:
    """Integer part sizes for t vertices: floors of w_i * t, with the deficit
    handed out by largest fractional remainder (ties to the lowest index)."""
    if t < pattern.num_parts:
        raise ValueError(f"t = {t} is below the number of parts {pattern.num_parts}")
    scaled = [w * t for w in pattern.part_weights]
    floors = [math.floor(x) for x in scaled]
    remainders = [x - f for x, f in zip(scaled, floors)]
    deficit = t - sum(floors)
    by_remainder = sorted(
        range(pattern.num_parts),
        key=lambda i: (_neg_key(remainders[i]), i),
    )
    sizes = list(floors)
    for i in by_remainder[:deficit]:
        sizes[i] += 1
    return sizes


def _neg_key(x: ExactWeight):
    # sort helper: descending exact value without leaving exact arithmetic
    class _Key:
        __slots__ = ("v",)

        def __init__(self, v):
            self.v = v

        def __lt__(self, other):
            return self.v > other.v

        def __eq__(self, other):
            return self.v == other.v

    return _Key(x)


def pattern_parts(pattern: PartitionPattern, t: int) -> list[tuple[int, int]]:
    """Block boundaries of the instantiated parts."""
    sizes = pattern_part_sizes(pattern, t)
    blocks, lo = [], 1
    for s in sizes:
        blocks.append((lo, lo + s - 1))
        lo += s
    return blocks


def instantiate_pattern(pattern: PartitionPattern, t: int) -> UniformHypergraph:
    """Expand every template over the rounded integer parts on t vertices."""
    sizes = pattern_part_sizes(pattern, t)
    blocks = pattern_parts(pattern, t)
    members = [list(range(lo, hi + 1)) for lo, hi in blocks]
    edges: list[tuple[int, ...]] = []
    for template in pattern.templates:
        mult: dict[int, int] = {}
        for part in template:
            mult[part] = mult.get(part, 0) + 1
        for part, need in mult.items():
            if sizes[part - 1] < need:
                raise ValueError(
                    f"part {part} has size {sizes[part - 1]}, template {template} needs {need}"
                )
        pools = [itertools.combinations(members[part - 1], need) for part, need in sorted(mult.items())]
        for combo in itertools.product(*pools):
            edges.append(tuple(v for group in combo for v in group))
    return UniformHypergraph(pattern.r, t, edges)


# ---------------------------------------------------------------------------
# Local sparsity: every V0 with r <= |V0| <= s spans at most |V0| - r + 1 edges
# ---------------------------------------------------------------------------

def check_local_sparsity_naive(A: UniformHypergraph, s: int) -> SparsityCheck:
    """Reference checker: enumerate every vertex subset of size r..s."""
    if s < A.r:
        raise ValueError(f"s must be >= r = {A.r}, got {s}")
    for size in range(A.r, min(s, A.n) + 1):
        allowed = size - A.r + 1
        for v0 in itertools.combinations(range(1, A.n + 1), size):
            inside = set(v0)
            count = sum(1 for e in A.edges if inside.issuperset(e))
            if count > allowed:
                return SparsityCheck(False, v0)
    return SparsityCheck(True, None)


def check_local_sparsity(A: UniformHypergraph, s: int) -> SparsityCheck:
    """Fast checker via the equivalent edge-subset criterion.

    A violating V0 with v vertices holds at least v - r + 2 >= 2 edges that
    span at most v = (v - r + 2) + r - 2 vertices, and if every connected
    component of an edge set is span-safe the disjoint union is too (it only
    gains vertices).  So it suffices that every *connected* set of m edges,
    2 <= m <= s - r + 2, spans at least m + r - 1 vertices.  Enumeration is
    exponential in s - r, not in the number of vertices.  On failure the
    witness is the span of the offending edge set.
    """
    if s < A.r:
        raise ValueError(f"s must be >= r = {A.r}, got {s}")
    max_edges = s - A.r + 2
    if max_edges < 2 or A.m < 2:
        return SparsityCheck(True, None)

    edges = A.edges
    touching: dict[int, set[int]] = {}
    for idx, e in enumerate(edges):
        for v in e:
            touching.setdefault(v, set()).add(idx)
    neighbors = [
        sorted(set().union(*(touching[v] for v in e)) - {idx})
        for idx, e in enumerate(edges)
    ]

    def span_violation(subset: list[int]) -> tuple[int, ...] | None:
        verts = set()
        for idx in subset:
            verts.update(edges[idx])
        if len(verts) <= len(subset) + A.r - 2:
            return tuple(sorted(verts))
        return None

    # connected-subset enumeration rooted at the lowest edge index; ``seen``
    # holds everything ever placed in an extension list along the path, so
    # each subset is visited exactly once (exclusive-extension scheme)
    for root in range(len(edges)):
        ext0 = [j for j in neighbors[root] if j > root]
        stack = [([root], ext0, {root, *ext0})]
        while stack:
            subset, ext, seen = stack.pop()
            if len(subset) >= 2:
                witness = span_violation(subset)
                if witness is not None:
                    return SparsityCheck(False, witness)
            if len(subset) == max_edges:
                continue
            for pos, cand in enumerate(ext):
                fresh = [j for j in neighbors[cand] if j > root and j not in seen]
                stack.append((subset + [cand], ext[pos + 1:] + fresh, seen | set(fresh)))
    return SparsityCheck(True, None)


def _insertion_violation(
    edge_set: set[tuple[int, ...]], new_edge: tuple[int, ...], t: int, s: int, r: int
) -> tuple[int, ...] | None:
    """A fresh violation after inserting new_edge must contain it, so only
    supersets of the new edge up to size s need scanning."""
    base = set(new_edge)
    others = [v for v in range(1, t + 1) if v not in base]
    for extra in range(1, s - r + 1):
        allowed = r + extra - r + 1
        for added in itertools.combinations(others, extra):
            v0 = sorted(base.union(added))
            count = sum(1 for e in itertools.combinations(v0, r) if e in edge_set)
            if count > allowed:
                return tuple(v0)
    return None


def generate_sparse_adder(params: SparseAdderParams) -> UniformHypergraph:
    """Seeded add-and-repair: draw a random edge, keep it if no subset of size
    at most s becomes too dense, otherwise drop it; stop at the target count.

    Deterministic given the seed.  Raises AdderGenerationError when the
    attempt budget runs out; dense targets at small t may simply not exist,
    in which case a larger t (or smaller c) is the fix.
    """
    rng = random.Random(params.seed)
    target = params.target_edges()
    budget = params.attempt_budget()
    vertices = range(1, params.t + 1)
    edge_set: set[tuple[int, ...]] = set()
    attempts = 0
    while len(edge_set) < target:
        if attempts >= budget:
            raise AdderGenerationError(
                f"no {target}-edge locally sparse hypergraph found on t = {params.t} "
                f"vertices within {budget} attempts (s = {params.s}, c = {params.c}); "
                "retry with a larger t or a smaller c"
            )
        attempts += 1
        e = tuple(sorted(rng.sample(vertices, params.r)))
        if e in edge_set:
            continue
        edge_set.add(e)
        if _insertion_violation(edge_set, e, params.t, params.s, params.r) is not None:
            edge_set.discard(e)
    return UniformHypergraph(params.r, params.t, sorted(edge_set))


def assemble_gstar(
    base: UniformHypergraph, adder: UniformHypergraph, target_part: Sequence[int]
) -> UniformHypergraph:
    """Inject the adder into ``target_part`` of the base via the
    order-preserving vertex bijection and take the edge union.

    The mapped adder edges must be disjoint from the base edges, so the
    resulting count is exactly |E(base)| + |E(adder)|.
    """
    part = sorted(set(int(v) for v in target_part))
    if part and (part[0] < 1 or part[-1] > base.n):
        raise ValueError(f"target part leaves the vertex range 1..{base.n}")
    if adder.n != len(part):
        raise ValueError(f"adder has {adder.n} vertices, target part has {len(part)}")
    if adder.r != base.r:
        raise ValueError(f"arity mismatch: base r = {base.r}, adder r = {adder.r}")
    mapped = [tuple(sorted(part[v - 1] for v in e)) for e in adder.edges]
    clash = base.edge_set.intersection(mapped)
    if clash:
        raise ValueError(f"mapped adder edge {sorted(clash)[0]} already in the base")
    return UniformHypergraph(base.r, base.n, base.edges + tuple(mapped))


def construction_metadata(
    kind: str,
    *,
    k: int | None = None,
    t: int | None = None,
    s: int | None = None,
    c: float | None = None,
    seed: int | None = None,
    parts: Iterable[tuple[int, int]] = (),
) -> dict:
    """Sidecar metadata with fixed field names."""
    return {
        "kind": kind,
        "k": k,
        "t": t,
        "s": s,
        "c": c,
        "seed": seed,
        "parts": [[lo, hi] for lo, hi in parts],
    }
