"""The 165-ray / 130-context orthogonality hypergraph, rebuilt from the MUBs.

The four mutually unbiased bases of C^3 seed a conjugate-cross-product
closure; completions are kept while their squared norm divides a small bound
(6 by default, the stratum of the published configuration).  Rays are held in
a projective canonical form so that equality, hashing and file round-trips
are exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import gcd

from .exact import (
    E_ZERO,
    E_ONE,
    OMEGA,
    OMEGA2,
    EisensteinInt,
    ParallelInput,
    VecC3,
    conj_cross,
    eis_gcd,
    hermitian_inner,
)


class ZeroVector(ValueError):
    """Raised when a ray representative is the zero vector."""


class DivergenceGuard(RuntimeError):
    """Closure exceeded its ray cap; the seed does not generate a finite
    configuration under the chosen insertion rule."""


class NonTriangleClique(ValueError):
    """The orthogonality graph has a maximal clique of size != 3."""


class ParseError(ValueError):
    """Malformed ray file; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DuplicateRay(ValueError):
    """Two input rays canonicalize to the same projective class."""


def canonicalize(v: VecC3) -> VecC3:
    """Projective canonical form: divide by the first nonzero coordinate over
    Q(w), then clear denominators to a Z[w] vector.

    The first nonzero coordinate of the result is a positive rational
    integer.  Idempotent, and constant on parallel classes.  Integer-only
    implementation: with z0 the first nonzero coordinate and N = norm(z0),
    the result is (z_j * conj(z0)) / G where G = gcd(N, all coefficients).
    """
    z0 = next((z for z in v if not z.is_zero()), None)
    if z0 is None:
        raise ZeroVector("cannot canonicalize the zero vector")
    n = z0.norm()
    w = [z * z0.conjugate() for z in v]
    g = n
    for z in w:
        g = gcd(g, gcd(abs(z.a), abs(z.b)))
    return VecC3(tuple(EisensteinInt(z.a // g, z.b // g) for z in w))  # type: ignore[arg-type]


def is_content_free(v: VecC3) -> bool:
    """True iff the coordinates have no common Z[w] divisor of norm > 1."""
    g = E_ZERO
    for z in v:
        g = eis_gcd(g, z)
    return g.is_unit()


def mub_bases() -> list[list[VecC3]]:
    """The four mutually unbiased bases of C^3, canonicalized.

    Basis 0 is the computational basis; the other three are the w-phase
    bases.  Each basis is internally orthogonal and every cross-basis pair u,
    v satisfies norm(<u,v>) * 3 = |u|^2 * |v|^2 exactly.
    """
    one, w, w2 = E_ONE, OMEGA, OMEGA2
    zero = E_ZERO
    raw = [
        [VecC3.make(one, zero, zero), VecC3.make(zero, one, zero), VecC3.make(zero, zero, one)],
        [VecC3.make(one, one, one), VecC3.make(one, w, w2), VecC3.make(one, w2, w)],
        [VecC3.make(one, one, w), VecC3.make(one, w, one), VecC3.make(w, one, one)],
        [VecC3.make(one, one, w2), VecC3.make(one, w2, one), VecC3.make(w2, one, one)],
    ]
    return [[canonicalize(v) for v in basis] for basis in raw]


def mub_seed() -> list[VecC3]:
    """The 12 MUB rays as a flat closure seed."""
    return [v for basis in mub_bases() for v in basis]


def is_unbiased(u: VecC3, v: VecC3) -> bool:
    """Exact unbiasedness test in dimension 3, square-root free:
    norm(<u,v>) * 3 == |u|^2 * |v|^2."""
    return hermitian_inner(u, v).norm() * 3 == u.sq_norm() * v.sq_norm()


@dataclass(frozen=True, slots=True)
class Ray:
    """A canonical-form ray with its dense id and integer squared norm."""

    id: int
    vec: VecC3
    sq_norm: int


@dataclass(frozen=True, slots=True)
class Context:
    """A sorted triple of ray ids that are pairwise Hermitian-orthogonal."""

    ray_ids: tuple[int, int, int]

    def __iter__(self):
        return iter(self.ray_ids)


@dataclass(frozen=True)
class Configuration:
    """Rays plus their orthogonality edges and 3-element contexts."""

    rays: list[Ray]
    edges: frozenset[tuple[int, int]]
    contexts: list[Context]
    adjacency: list[set[int]] = field(repr=False)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def vec(self, i: int) -> VecC3:
        return self.rays[i].vec

    def pair_inner(self, i: int, j: int) -> EisensteinInt:
        return hermitian_inner(self.rays[i].vec, self.rays[j].vec)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


def _canonical_sort_key(v: VecC3):
    return (v.sq_norm(), tuple((z.a, z.b) for z in v))


def _assemble(vecs: list[VecC3], strict: bool = True) -> Configuration:
    """Sort canonical vectors into stable ids, scan all pairs for edges and
    enumerate contexts (with clique validation)."""
    ordered = sorted(vecs, key=_canonical_sort_key)
    rays = [Ray(i, v, v.sq_norm()) for i, v in enumerate(ordered)]
    n = len(rays)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if hermitian_inner(rays[i].vec, rays[j].vec).is_zero():
                edges.add((i, j))
                adjacency[i].add(j)
                adjacency[j].add(i)
    contexts = build_contexts(rays, edges, adjacency, strict=strict)
    return Configuration(rays=rays, edges=frozenset(edges), contexts=contexts,
                         adjacency=adjacency)


def build_contexts(
    rays: list[Ray],
    edges: set[tuple[int, int]],
    adjacency: list[set[int]] | None = None,
    strict: bool = True,
) -> list[Context]:
    """All triangles of the orthogonality graph, as sorted id triples.

    Validates the hypergraph shape: no triangle may extend to a 4-clique
    (impossible for genuine rays of C^3, so it signals corrupt input), and in
    strict mode every maximal clique must have size exactly 3: no edge
    outside every triangle, no isolated ray.  Raises NonTriangleClique
    otherwise.  Non-strict mode serves partial ray files, where lone rays and
    uncompleted orthogonal pairs are legitimate.
    """
    n = len(rays)
    if adjacency is None:
        adjacency = [set() for _ in range(n)]
        for i, j in edges:
            adjacency[i].add(j)
            adjacency[j].add(i)
    triangles: list[Context] = []
    covered_edges: set[tuple[int, int]] = set()
    for i, j in sorted(edges):
        for k in sorted(adjacency[i] & adjacency[j]):
            if k > j:
                triangles.append(Context((i, j, k)))
                covered_edges.update([(i, j), (i, k), (j, k)])
    for i, j, k in (t.ray_ids for t in triangles):
        extension = adjacency[i] & adjacency[j] & adjacency[k]
        if extension:
            raise NonTriangleClique(
                f"triangle {(i, j, k)} extends by {sorted(extension)}"
            )
    if strict:
        uncovered = set(edges) - covered_edges
        if uncovered:
            raise NonTriangleClique(
                f"{len(uncovered)} edges lie in no triangle, e.g. {sorted(uncovered)[0]}"
            )
        isolated = [i for i in range(n) if not adjacency[i]]
        if isolated:
            raise NonTriangleClique(
                f"isolated rays (maximal cliques of size 1): {isolated}"
            )
    return triangles


def closure_generate(
    seed: list[VecC3],
    keep_norm_dividing: int | None = 6,
    cap: int = 10_000,
) -> Configuration:
    """Generate a configuration by conjugate-cross-product closure.

    Repeatedly, for every non-parallel ray pair, canonicalize
    conj_cross(u, v) and insert it if new, iterating to a fixed point.  A
    completion is kept only when its squared norm divides
    ``keep_norm_dividing`` (pass None to keep everything).  The default bound
    6 makes the 12-ray MUB seed converge to exactly the published 165-ray /
    130-context configuration; the unfiltered closure of that seed diverges.

    Raises DivergenceGuard when the ray count exceeds ``cap``, which signals
    a wrong seed (or an unfiltered run).
    """
    if not seed:
        raise ZeroVector("empty seed")
    vecs: list[VecC3] = []
    seen: set[VecC3] = set()
    for v in seed:
        c = canonicalize(v)
        if c not in seen:
            seen.add(c)
            vecs.append(c)
    i = 0
    while i < len(vecs):
        u = vecs[i]
        for j in range(i):
            try:
                w = conj_cross(u, vecs[j])
            except ParallelInput:
                continue
            c = canonicalize(w)
            if c in seen:
                continue
            if keep_norm_dividing is not None and keep_norm_dividing % c.sq_norm() != 0:
                continue
            seen.add(c)
            vecs.append(c)
            if len(vecs) > cap:
                raise DivergenceGuard(
                    f"closure exceeded {cap} rays; seed does not generate a "
                    f"finite configuration under this insertion rule"
                )
        i += 1
    return _assemble(vecs)


def configuration_from_vectors(vecs: list[VecC3], strict: bool = True) -> Configuration:
    """Canonicalize, deduplicate-check and assemble an explicit ray list."""
    canon = [canonicalize(v) for v in vecs]
    seen: dict[VecC3, int] = {}
    for pos, c in enumerate(canon):
        if c in seen:
            raise DuplicateRay(f"rays {seen[c]} and {pos} are the same projective class")
        seen[c] = pos
    return _assemble(canon, strict=strict)


def subconfiguration(cfg: Configuration, ids: list[int]) -> Configuration:
    """Induced sub-configuration on a subset of ray ids.

    Edges are induced; contexts are the original contexts fully inside the
    subset.  No clique validation: induced graphs legitimately contain edges
    outside every triangle.
    """
    keep = sorted(set(ids))
    remap = {old: new for new, old in enumerate(keep)}
    rays = [Ray(remap[i], cfg.rays[i].vec, cfg.rays[i].sq_norm) for i in keep]
    edges = frozenset(
        (remap[i], remap[j]) for (i, j) in cfg.edges if i in remap and j in remap
    )
    adjacency: list[set[int]] = [set() for _ in keep]
    for i, j in edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    contexts = [
        Context(tuple(sorted(remap[r] for r in ctx)))  # type: ignore[arg-type]
        for ctx in cfg.contexts
        if all(r in remap for r in ctx)
    ]
    return Configuration(rays=rays, edges=edges, contexts=contexts, adjacency=adjacency)


# --- ray file format -------------------------------------------------------
#
# One ray per line, three whitespace-separated coordinates, each "a,b"
# meaning a + b*w.  "#" begins a comment.


def _in_published_alphabet(z: EisensteinInt) -> bool:
    # c*w^k with |c| <= 2: two-coefficient forms (c,0), (0,c), (-c,-c)
    a, b = z.a, z.b
    if b == 0:
        return abs(a) <= 2
    if a == 0:
        return abs(b) <= 2
    return a == b and abs(a) <= 2


def export_rays(cfg: Configuration) -> str:
    """Serialize rays in id order; ingest of the result is the identity."""
    lines = [f"# {cfg.n_rays} rays"]
    for ray in cfg.rays:
        lines.append(" ".join(f"{z.a},{z.b}" for z in ray.vec))
    return "\n".join(lines) + "\n"


def ingest_rays(text: str) -> Configuration:
    """Parse a ray file and assemble the configuration it describes.

    Raises ParseError (with line number) on malformed input and DuplicateRay
    when two lines canonicalize identically.  For a 165-ray configuration the
    published coefficient-range claim (every coordinate an integer in
    {-2..2} times a power of w) is checked and violations warn, not error.
    """
    vecs: list[VecC3] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(lineno, f"expected 3 coordinates, got {len(fields)}")
        coords = []
        for f in fields:
            parts = f.split(",")
            if len(parts) != 2:
                raise ParseError(lineno, f"coordinate {f!r} is not of the form a,b")
            try:
                coords.append(EisensteinInt(int(parts[0]), int(parts[1])))
            except ValueError:
                raise ParseError(lineno, f"non-integer coefficient in {f!r}") from None
        v = VecC3(tuple(coords))  # type: ignore[arg-type]
        if v.is_zero():
            raise ParseError(lineno, "zero vector is not a ray")
        vecs.append(v)
    if not vecs:
        raise ParseError(0, "no rays in input")
    cfg = configuration_from_vectors(vecs, strict=False)
    if cfg.n_rays == 165:
        bad = [r.id for r in cfg.rays
               if not all(_in_published_alphabet(z) for z in r.vec)]
        if bad:
            warnings.warn(
                f"165-ray configuration has {len(bad)} rays outside the "
                f"published coefficient alphabet, e.g. ray {bad[0]}",
                stacklevel=2,
            )
    return cfg


def export_edges(cfg: Configuration) -> str:
    """Edge report: one sorted id pair per line."""
    lines = [f"# {len(cfg.edges)} edges"]
    lines += [f"{i} {j}" for i, j in sorted(cfg.edges)]
    return "\n".join(lines) + "\n"


def export_contexts(cfg: Configuration) -> str:
    """Context report: one sorted id triple per line."""
    lines = [f"# {len(cfg.contexts)} contexts"]
    lines += [" ".join(map(str, ctx.ray_ids)) for ctx in cfg.contexts]
    return "\n".join(lines) + "\n"
