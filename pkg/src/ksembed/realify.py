"""Phase-adjusted realification of a ray configuration into R^6.

The canonical coordinate-wise map preserves complex orthogonality for every
phase choice, but non-orthogonal pairs can collapse onto spurious real
orthogonality.  For a pair with inner product c != 0 the real dot product of
the images is Re(e^{i(theta_l - theta_k)} c), so each pair forbids at most
two phase differences.  This module provides the continuous greedy
construction, the rational search theta_k = n_k*pi/K, and exact plus
high-precision verification that an assignment is faithful.

The exact zero test rests on an algebraic fact: Re(e^{i*dn*pi/K} c) = 0 iff
e^{2i*dn*pi/K} = -conj(c)/c.  The left side is a K-th root of unity; the
right side lies in Q(w), whose only roots of unity are sixth roots.  With
gcd(K, 6) = 1 the two sets meet only at 1, so the dot vanishes iff c is
purely imaginary and dn = 0 (mod K).  No floating point is needed to decide.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from math import gcd

import mpmath as mp

from .configuration import Configuration
from .exact import EisensteinInt


class ZeroInnerProduct(ValueError):
    """Forbidden phases are only defined for non-orthogonal pairs."""


class InvalidK(ValueError):
    """K must be a positive integer with gcd(K, 6) = 1."""


class SearchExhausted(RuntimeError):
    """No valid phase assignment exists for this K under this strategy."""


class PrecisionDisagreement(RuntimeError):
    """Exact and high-precision floating verdicts differ for some pair."""


STRATEGIES = ("distinct", "backtracking", "greedy-random")


def _check_k(k: int) -> None:
    if k <= 0 or gcd(k, 6) != 1:
        raise InvalidK(f"K={k}: need a positive integer coprime to 6")


@dataclass(frozen=True)
class PhaseAssignment:
    """Integers n_k defining per-ray phases theta_k = n_k*pi/K, n_k mod 2K."""

    K: int
    n: tuple[int, ...]

    def __post_init__(self):
        _check_k(self.K)
        object.__setattr__(self, "n", tuple(v % (2 * self.K) for v in self.n))

    def shifted(self, t: int) -> PhaseAssignment:
        """Global phase shift n_k -> n_k + t; leaves all verdicts invariant."""
        return PhaseAssignment(self.K, tuple(v + t for v in self.n))


@dataclass
class FaithfulnessReport:
    """Outcome of the all-pairs embedding check.

    ``spurious``: non-orthogonal pairs whose images are orthogonal.
    ``missing``: orthogonal pairs whose images are not orthogonal; empty for
    every phase assignment (orthogonality is preserved unconditionally).
    """

    spurious: list[tuple[int, int]] = field(default_factory=list)
    missing: list[tuple[int, int]] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def faithful(self) -> bool:
        return not self.spurious and not self.missing


@dataclass(frozen=True)
class ForbiddenPhases:
    """The two phases of ray l excluded by a fixed theta_k and inner product
    c != 0: theta_l = theta_k - arg(c) + pi/2 (mod pi), reported as the two
    representatives mod 2*pi."""

    c: EisensteinInt
    theta_k: float
    angles: tuple[float, float]

    def contains(self, theta: float, margin: float = 1e-12) -> bool:
        return any(_circle_dist(theta, a) <= margin for a in self.angles)


def _circle_dist(x: float, y: float) -> float:
    d = abs(x - y) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _arg(c: EisensteinInt) -> float:
    re = c.a - c.b / 2
    im = c.b * math.sqrt(3) / 2
    return math.atan2(im, re)


def forbidden_phase_pair(c: EisensteinInt, theta_k: float = 0.0) -> ForbiddenPhases:
    """The two forbidden values of theta_l for a pair with inner product c.

    Raises ZeroInnerProduct when c = 0 (orthogonal pairs forbid nothing).
    """
    if c.is_zero():
        raise ZeroInnerProduct("orthogonal pair has no forbidden phases")
    phi = _arg(c)
    a0 = (theta_k - phi + math.pi / 2) % (2 * math.pi)
    a1 = (theta_k - phi + 3 * math.pi / 2) % (2 * math.pi)
    return ForbiddenPhases(c=c, theta_k=theta_k, angles=(a0, a1))


def greedy_continuous_phases(
    cfg: Configuration,
    rng_seed: int = 0,
    margin: float = 1e-6,
) -> list[float]:
    """Inductive continuous phase choice: theta_0 = 0, each later theta drawn
    uniformly from the circle minus a ``margin`` neighbourhood of the finite
    forbidden set accumulated against earlier rays.

    The forbidden set for ray m holds at most 2m points, so for margin below
    pi/(2*deg) a valid sample always exists; the margin halves automatically
    if rejection sampling stalls.  The returned phases pass a floating-point
    faithfulness check: every non-orthogonal pair keeps a normalized dot
    product above 1e-8.
    """
    rng = random.Random(rng_seed)
    n = cfg.n_rays
    thetas: list[float] = [0.0]
    for m in range(1, n):
        forbidden: list[float] = []
        for k in range(m):
            c = cfg.pair_inner(k, m)
            if c.is_zero():
                continue
            forbidden.extend(forbidden_phase_pair(c, thetas[k]).angles)
        eps = margin
        while True:
            for _ in range(200):
                theta = rng.uniform(0.0, 2 * math.pi)
                if all(_circle_dist(theta, f) > eps for f in forbidden):
                    break
            else:
                eps /= 2
                continue
            break
        thetas.append(theta)
    _float_faithfulness_check(cfg, thetas)
    return thetas


def _float_faithfulness_check(cfg: Configuration, thetas: list[float],
                              min_dot: float = 1e-8) -> None:
    sqrt3 = math.sqrt(3)
    for i in range(cfg.n_rays):
        for j in range(i + 1, cfg.n_rays):
            c = cfg.pair_inner(i, j)
            if c.is_zero():
                continue
            re = c.a - c.b / 2
            im = c.b * sqrt3 / 2
            dth = thetas[j] - thetas[i]
            val = re * math.cos(dth) - im * math.sin(dth)
            scale = math.sqrt(cfg.rays[i].sq_norm * cfg.rays[j].sq_norm)
            if abs(val) / scale <= min_dot:
                raise RuntimeError(
                    f"continuous phases too close to spurious orthogonality "
                    f"on pair ({i}, {j}): |dot| = {abs(val) / scale:.3e}"
                )


def is_spurious_exact(c: EisensteinInt, dn: int, k: int) -> bool:
    """Exact zero test for Re(e^{i*dn*pi/K} * c): true iff c is purely
    imaginary (2a = b) and dn = 0 (mod K).  Valid because gcd(K, 6) = 1
    keeps nontrivial K-th roots of unity out of Q(w)."""
    _check_k(k)
    if c.is_zero():
        raise ZeroInnerProduct("zero test is for non-orthogonal pairs")
    return c.is_purely_imaginary() and dn % k == 0


def _imaginary_adjacency(cfg: Configuration) -> list[list[int]]:
    """For each ray, the earlier rays whose inner product with it is nonzero
    and purely imaginary: the only pairs the rational criterion constrains."""
    n = cfg.n_rays
    out: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = cfg.pair_inner(i, j)
            if not c.is_zero() and c.is_purely_imaginary():
                out[j].append(i)
    return out


def rational_phase_search(
    cfg: Configuration,
    k: int = 1009,
    strategy: str = "distinct",
    rng_seed: int = 0,
) -> PhaseAssignment:
    """Find integers n with no spurious pair under theta = n*pi/K.

    The criterion constrains only pairs with purely imaginary inner product:
    those need n_l != n_k (mod K).  Strategies:

    - "distinct": n_k = k, valid whenever K exceeds the ray count;
    - "backtracking": ordered depth-first search over residues with
      forbidden-residue pruning (useful for probing small K);
    - "greedy-random": seeded random residue per ray among the allowed ones.

    Every output is verified before return.  Raises SearchExhausted when no
    assignment exists for this K (only possible for small K), InvalidK when
    gcd(K, 6) != 1.
    """
    _check_k(k)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    n = cfg.n_rays
    iadj = _imaginary_adjacency(cfg)

    if strategy == "distinct":
        ns = list(range(n))
        if n > k:
            _verify_or_exhausted(cfg, iadj, ns, k)
    elif strategy == "backtracking":
        ns = _backtracking_search(iadj, n, k)
    else:
        rng = random.Random(rng_seed)
        ns = []
        for m in range(n):
            banned = {ns[j] % k for j in iadj[m]}
            allowed = [r for r in range(k) if r not in banned]
            if not allowed:
                raise SearchExhausted(
                    f"greedy-random: ray {m} has no free residue mod {k}"
                )
            ns.append(rng.choice(allowed))

    _verify_or_exhausted(cfg, iadj, ns, k)
    return PhaseAssignment(K=k, n=tuple(ns))


def _verify_or_exhausted(cfg, iadj, ns, k) -> None:
    for m in range(cfg.n_rays):
        for j in iadj[m]:
            if (ns[m] - ns[j]) % k == 0:
                raise SearchExhausted(
                    f"assignment leaves pair ({j}, {m}) spurious at K={k}"
                )


def _backtracking_search(iadj: list[list[int]], n: int, k: int) -> list[int]:
    ns: list[int] = []

    def extend(m: int) -> bool:
        if m == n:
            return True
        banned = {ns[j] % k for j in iadj[m]}
        for r in range(k):
            if r in banned:
                continue
            ns.append(r)
            if extend(m + 1):
                return True
            ns.pop()
        return False

    if not extend(0):
        raise SearchExhausted(f"backtracking exhausted all residues mod {k}")
    return ns


def verify_faithful(
    cfg: Configuration,
    pa: PhaseAssignment,
    float_dps: int = 60,
    zero_threshold_exp: int = -50,
) -> FaithfulnessReport:
    """Check all unordered ray pairs for the faithfulness conditions.

    Orthogonal pairs stay orthogonal for every phase choice (the real dot is
    Re(e^{i dtheta} * 0)), so ``missing`` can only remain empty; it is kept in
    the report as the structural assertion.  Non-orthogonal pairs are
    classified by the exact criterion, and every pair is additionally
    evaluated at ``float_dps`` decimal digits; the norm-scaled value must
    agree with the exact verdict against the 10^zero_threshold_exp cutoff,
    otherwise PrecisionDisagreement is raised.
    """
    if len(pa.n) != cfg.n_rays:
        raise ValueError(
            f"phase assignment covers {len(pa.n)} rays, configuration has {cfg.n_rays}"
        )
    k = pa.K
    report = FaithfulnessReport()
    with mp.workdps(float_dps):
        sqrt3 = mp.sqrt(3)
        threshold = mp.mpf(10) ** zero_threshold_exp
        trig_cache: dict[int, tuple[mp.mpf, mp.mpf]] = {}

        def trig(dn: int) -> tuple[mp.mpf, mp.mpf]:
            dn %= 2 * k
            if dn not in trig_cache:
                theta = mp.pi * dn / k
                trig_cache[dn] = (mp.cos(theta), mp.sin(theta))
            return trig_cache[dn]

        for i in range(cfg.n_rays):
            for j in range(i + 1, cfg.n_rays):
                report.pairs_checked += 1
                c = cfg.pair_inner(i, j)
                if c.is_zero():
                    # real dot of images is Re(e^{i dtheta} * 0) = 0 exactly
                    continue
                dn = pa.n[j] - pa.n[i]
                exact_zero = is_spurious_exact(c, dn, k)
                cth, sth = trig(dn)
                val = mp.mpf(2 * c.a - c.b) / 2 * cth - sqrt3 * c.b / 2 * sth
                scaled = val / mp.sqrt(c.norm())
                if (abs(scaled) < threshold) != exact_zero:
                    raise PrecisionDisagreement(
                        f"pair ({i}, {j}): exact says "
                        f"{'zero' if exact_zero else 'nonzero'}, "
                        f"{float_dps}-digit value is {mp.nstr(scaled, 8)}"
                    )
                if exact_zero:
                    report.spurious.append((i, j))
    return report


def scan_spurious_zero_phases(cfg: Configuration) -> list[tuple[int, int]]:
    """Pairs spurious under the canonical realification (all phases zero):
    exactly the non-orthogonal pairs with purely imaginary inner product."""
    out = []
    for i in range(cfg.n_rays):
        for j in range(i + 1, cfg.n_rays):
            c = cfg.pair_inner(i, j)
            if not c.is_zero() and c.is_purely_imaginary():
                out.append((i, j))
    return out


def minimal_k_probe(
    cfg: Configuration,
    strategy: str = "backtracking",
    candidates: tuple[int, ...] = (5, 7, 11, 13, 17, 19, 23, 25),
) -> tuple[int, PhaseAssignment] | None:
    """Smallest K from ``candidates`` for which the strategy succeeds.

    An experiment, not a minimality proof: it records what worked, nothing
    more.  Candidates with gcd(K, 6) != 1 are skipped.
    """
    for k in candidates:
        if gcd(k, 6) != 1:
            continue
        try:
            pa = rational_phase_search(cfg, k, strategy)
        except SearchExhausted:
            continue
        return k, pa
    return None


def phase_apply_export(
    cfg: Configuration,
    pa: PhaseAssignment,
    precision: int = 20,
) -> list[tuple[str, ...]]:
    """Evaluate each phase-adjusted realified ray to ``precision`` significant
    digits (correctly rounded), as 6-tuples of decimal strings.

    The rotation acts per complex coordinate: for z with exact parts
    (re, im), the image contributes (re*cos - im*sin, re*sin + im*cos) to the
    real and imaginary slots.
    """
    if precision < 15:
        raise ValueError(f"precision must be >= 15 significant digits, got {precision}")
    if len(pa.n) != cfg.n_rays:
        raise ValueError("phase assignment does not cover the configuration")
    rows: list[tuple[str, ...]] = []
    with mp.workdps(precision + 15):
        sqrt3 = mp.sqrt(3)

        def fmt(x: mp.mpf) -> str:
            if mp.almosteq(x, 0, abs_eps=mp.mpf(10) ** (-(precision + 10))):
                return "0"
            s = mp.nstr(x, precision, strip_zeros=True)
            return s[:-2] if s.endswith(".0") else s

        for ray, nk in zip(cfg.rays, pa.n):
            theta = mp.pi * nk / pa.K
            cth, sth = mp.cos(theta), mp.sin(theta)
            res, ims = [], []
            for z in ray.vec:
                re = mp.mpf(2 * z.a - z.b) / 2
                im = sqrt3 * z.b / 2
                res.append(re * cth - im * sth)
                ims.append(re * sth + im * cth)
            rows.append(tuple(fmt(x) for x in res + ims))
    return rows


# --- file formats ----------------------------------------------------------


def save_phases(pa: PhaseAssignment) -> str:
    """Phase file: header "K <value>", then one "ray_id n_k" per line."""
    lines = [f"K {pa.K}"]
    lines += [f"{i} {nk}" for i, nk in enumerate(pa.n)]
    return "\n".join(lines) + "\n"


def load_phases(text: str) -> PhaseAssignment:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("K "):
        raise ValueError("phase file must start with a 'K <value>' header")
    k = int(lines[0].split()[1])
    entries: dict[int, int] = {}
    for ln in lines[1:]:
        fields = ln.split()
        if len(fields) != 2:
            raise ValueError(f"bad phase line: {ln!r}")
        entries[int(fields[0])] = int(fields[1])
    if sorted(entries) != list(range(len(entries))):
        raise ValueError("phase file must cover ray ids 0..N-1")
    return PhaseAssignment(K=k, n=tuple(entries[i] for i in range(len(entries))))


def save_vectors(rows: list[tuple[str, ...]], precision: int) -> str:
    """Vector export: "# precision=<p>" header, six decimal fields per line."""
    lines = [f"# precision={precision}"]
    lines += [" ".join(row) for row in rows]
    return "\n".join(lines) + "\n"
