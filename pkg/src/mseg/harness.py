"""Random instance generation and property suites.

Each suite draws deterministic pseudo-random instances, filters them to the
hypothesis of one consistency statement (rejection sampling, except where a
gap construction guarantees the hypothesis), evaluates the statement through
the randomized condition checks, and reports violations.  Expected outcome
on every suite: none.

Verdicts of the condition checks are treated as ground truth; since FALSE
verdicts are probabilistic, every report carries the accumulated error
bound, and each violation is flagged as possibly spurious when its evidence
includes a probabilistic FALSE.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .conditions import check_gls, check_lc, gls_matrix, lc_matrix, CoeffVector
from .linalg import RankConfig, mix_stream, sample_coeffs
from .segments import (
    DEFAULT_LINE,
    CuspidalPoint,
    Multisegment,
    Segment,
    ms_filter,
    precedes,
)
from .zelevinsky import (
    best_matching,
    derivative,
    enumerate_maximal_matchings,
    is_maximal_matching,
    leading_indices,
    matching_equivalent,
    mw_dual,
    mw_frontier,
    mw_step,
    pairset_x,
    pairset_x_cross,
    pairset_y,
    pairset_y_cross,
    rho_frontier,
    rho_sets,
    soc_cuspidal,
)


@dataclass(frozen=True)
class GenParams:
    """Shape of the random instances: count, coordinate box, lengths."""

    max_segments: int = 4
    coord_range: int = 4
    max_length: int = 4
    lines: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.max_segments < 0 or self.coord_range < 0:
            raise ValueError("sizes must be nonnegative")


def _rng(p: GenParams, index: int, tag: int = 0) -> random.Random:
    return random.Random(mix_stream(p.seed, index, tag))


def _line_name(rng: random.Random, p: GenParams) -> str:
    if p.lines <= 1:
        return DEFAULT_LINE
    return str(rng.randrange(p.lines))


def _random_segment(rng: random.Random, p: GenParams, lo: int, hi: int) -> Segment:
    b = rng.randint(lo, hi)
    e = min(b + rng.randint(1, max(1, p.max_length)) - 1, hi)
    return Segment(_line_name(rng, p), b, e)


def gen_ms(p: GenParams, index: int) -> Multisegment:
    """A random multisegment, deterministic in (p.seed, index)."""
    rng = _rng(p, index, 1)
    k = rng.randint(0, p.max_segments)
    r = p.coord_range
    return Multisegment(tuple(_random_segment(rng, p, -r, r) for _ in range(k)))


def gen_ladder(p: GenParams, index: int) -> Multisegment:
    """A random ladder: consecutive segments strictly climb in begin and end."""
    rng = _rng(p, index, 2)
    k = rng.randint(1, max(1, p.max_segments))
    r = p.coord_range
    seg = _random_segment(rng, p, -r, r)
    chain = [seg]
    while len(chain) < k and seg.e < r:
        b = rng.randint(seg.b + 1, seg.e + 1)
        e = rng.randint(seg.e + 1, min(seg.e + max(1, p.max_length), r))
        seg = Segment(seg.line, b, e)
        chain.append(seg)
    return Multisegment(tuple(chain))


@dataclass
class PropertyReport:
    """Result of one suite run; empty violations means the property passed."""

    name: str
    instances_generated: int
    hypothesis_satisfied: int
    violations: List[dict]
    accumulated_bound: Fraction
    gen: GenParams
    cfg: RankConfig
    details: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instances_generated": self.instances_generated,
            "hypothesis_satisfied": self.hypothesis_satisfied,
            "violations": self.violations,
            "accumulated_bound": str(self.accumulated_bound),
            "passed": self.passed,
            "details": dict(sorted(self.details.items())),
        }


def _bound_of(*verdicts) -> Fraction:
    return sum((v.false_verdict_bound for v in verdicts), Fraction(0))


def _violation(name: str, inputs: Dict[str, str], detail: dict, bound: Fraction) -> dict:
    return {
        "property": name,
        "inputs": inputs,
        "detail": detail,
        "false_verdict_bound": str(bound),
        "possibly_spurious": bound > 0,
    }


CheckResult = Tuple[bool, Optional[dict], Fraction]


# ---------------------------------------------------------------------------
# single-instance checkers (also the replay targets)
# ---------------------------------------------------------------------------


def _check_mm_minus(m: Multisegment, m2: Multisegment, cfg: RankConfig) -> CheckResult:
    if not m or not m2 or len(set(m.lines()) | set(m2.lines())) != 1:
        return False, None, Fraction(0)
    if not m.max_end() < m2.max_end():
        return False, None, Fraction(0)
    lhs = check_lc(m, m2, cfg)
    _, m2r = mw_step(m2)
    _, sumr = mw_step(m + m2)
    reduction_commutes = sumr == m + m2r
    rhs = check_lc(m, m2r, cfg)
    bound = _bound_of(lhs, rhs)
    if lhs.holds != (rhs.holds and reduction_commutes):
        return (
            True,
            _violation(
                "mm-minus",
                {"m": str(m), "m2": str(m2)},
                {
                    "lc": lhs.holds,
                    "lc_reduced": rhs.holds,
                    "reduction_commutes": reduction_commutes,
                },
                bound,
            ),
            bound,
        )
    return True, None, bound


def _check_splitdisj(
    m1: Multisegment,
    m1p: Multisegment,
    m2: Multisegment,
    m2p: Multisegment,
    cfg: RankConfig,
) -> CheckResult:
    group1 = list(m1) + list(m1p)
    group2 = list(m2) + list(m2p)
    for a in group1:
        for b in group2:
            if precedes(a, b) or precedes(a.shift(-1), b):
                return False, None, Fraction(0)
    whole = check_lc(m1 + m2, m1p + m2p, cfg)
    if not whole.holds:
        return False, None, Fraction(0)
    part1 = check_lc(m1, m1p, cfg)
    part2 = check_lc(m2, m2p, cfg)
    bound = _bound_of(whole, part1, part2)
    if not (part1.holds and part2.holds):
        return (
            True,
            _violation(
                "splitdisj",
                {"m1": str(m1), "m1p": str(m1p), "m2": str(m2), "m2p": str(m2p)},
                {"part1": part1.holds, "part2": part2.holds},
                bound,
            ),
            bound,
        )
    return True, None, bound


def _check_gedelta(
    m: Multisegment, m2: Multisegment, d: Segment, cfg: RankConfig
) -> CheckResult:
    whole = check_lc(m, m2, cfg)
    if not whole.holds:
        return False, None, Fraction(0)
    bad = {}
    bound = _bound_of(whole)
    for kind in ("ge_seg", "end_in", "begin_in"):
        v = check_lc(ms_filter(m, kind, d), ms_filter(m2, kind, d), cfg)
        bound += _bound_of(v)
        if not v.holds:
            bad[kind] = False
    if bad:
        return (
            True,
            _violation(
                "gedelta",
                {"m": str(m), "m2": str(m2), "delta": str(d)},
                bad,
                bound,
            ),
            bound,
        )
    return True, None, bound


def _check_3ms_part(
    part: int, m: Multisegment, m2: Multisegment, n: Multisegment, cfg: RankConfig
) -> CheckResult:
    inputs = {"m": str(m), "m2": str(m2), "n": str(n)}
    if part == 2:
        h1, h2 = check_lc(m, m2, cfg), check_lc(m + m2, n, cfg)
        if not (h1.holds and h2.holds):
            return False, None, Fraction(0)
        c1, c2 = check_lc(m, m2 + n, cfg), check_lc(m, n, cfg)
        bound = _bound_of(h1, h2, c1, c2)
        if not (c1.holds and c2.holds):
            return (
                True,
                _violation(
                    "3ms-2", inputs, {"sum": c1.holds, "single": c2.holds}, bound
                ),
                bound,
            )
        return True, None, bound
    if part == 3:
        h1, h2 = check_lc(m, m2, cfg), check_lc(m, n, cfg)
        if not (h1.holds and h2.holds):
            return False, None, Fraction(0)
        c = check_lc(m, m2 + n, cfg)
        bound = _bound_of(h1, h2, c)
        if not c.holds:
            return True, _violation("3ms-3", inputs, {"sum": c.holds}, bound), bound
        return True, None, bound
    if part == 4:
        h1, h2 = check_lc(m, n, cfg), check_lc(m2, n, cfg)
        if not (h1.holds and h2.holds):
            return False, None, Fraction(0)
        c = check_lc(m + m2, n, cfg)
        bound = _bound_of(h1, h2, c)
        if not c.holds:
            return True, _violation("3ms-4", inputs, {"sum": c.holds}, bound), bound
        return True, None, bound
    if part == 5:
        h1, h2 = check_lc(m, m2, cfg), check_lc(m2, m, cfg)
        if not (h1.holds and h2.holds):
            return False, None, Fraction(0)
        lhs = check_lc(m + m2, n, cfg)
        r1, r2 = check_lc(m, n, cfg), check_lc(m2, n, cfg)
        bound = _bound_of(h1, h2, lhs, r1, r2)
        if lhs.holds != (r1.holds and r2.holds):
            return (
                True,
                _violation(
                    "3ms-5",
                    inputs,
                    {"sum": lhs.holds, "first": r1.holds, "second": r2.holds},
                    bound,
                ),
                bound,
            )
        return True, None, bound
    raise ValueError(f"no such part {part}")


def _check_sumofseg(m: Multisegment, m2: Multisegment, cfg: RankConfig) -> CheckResult:
    g1, g2 = check_gls(m, cfg), check_gls(m2, cfg)
    if not (g1.holds and g2.holds):
        return False, None, Fraction(0)
    n = m + m2
    l1, l2 = check_lc(m, m2, cfg), check_lc(n, m, cfg)
    if not (l1.holds and l2.holds):
        return False, None, Fraction(0)
    g = check_gls(n, cfg)
    bound = _bound_of(g1, g2, l1, l2, g)
    if not g.holds:
        return (
            True,
            _violation("sumofseg", {"m": str(m), "m2": str(m2)}, {"gls_sum": g.holds}, bound),
            bound,
        )
    return True, None, bound


def _check_rhoext(
    m: Multisegment, m2: Multisegment, rho: CuspidalPoint, cfg: RankConfig
) -> CheckResult:
    if not m:
        return False, None, Fraction(0)
    if derivative(m2, rho).mu != 0:
        return False, None, Fraction(0)
    lhs = check_lc(m, m2, cfg)
    xt, yt = rho_frontier(m, m2, rho)
    dm = derivative(m, rho).derived
    rhs = check_lc(dm, m2, cfg)
    counts_match = len(xt) == len(yt)
    bound = _bound_of(lhs, rhs)
    if lhs.holds != (rhs.holds and counts_match):
        return (
            True,
            _violation(
                "rhoext",
                {"m": str(m), "m2": str(m2), "rho": str(rho)},
                {
                    "lc": lhs.holds,
                    "lc_derived": rhs.holds,
                    "frontier_counts_match": counts_match,
                },
                bound,
            ),
            bound,
        )
    return True, None, bound


# ---------------------------------------------------------------------------
# suite drivers
# ---------------------------------------------------------------------------

_ATTEMPT_FACTOR = 200


def _drive(
    name: str,
    p: GenParams,
    cfg: RankConfig,
    target: int,
    make_and_check: Callable[[int], CheckResult],
) -> PropertyReport:
    violations: List[dict] = []
    bound = Fraction(0)
    satisfied = 0
    attempts = 0
    while satisfied < target and attempts < target * _ATTEMPT_FACTOR:
        hyp, violation, b = make_and_check(attempts)
        attempts += 1
        if hyp:
            satisfied += 1
            bound += b
            if violation is not None:
                violations.append(violation)
    return PropertyReport(name, attempts, satisfied, violations, bound, p, cfg)


def prop_mm_minus(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 300
) -> PropertyReport:
    def step(i: int) -> CheckResult:
        return _check_mm_minus(gen_ms(p, 2 * i), gen_ms(p, 2 * i + 1), cfg)

    return _drive("mm-minus", p, cfg, instances, step)


def prop_splitdisj(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 200
) -> PropertyReport:
    r = max(p.coord_range, 3)

    def block(rng: random.Random, lo: int, hi: int) -> Multisegment:
        k = rng.randint(0, max(1, p.max_segments // 2))
        segs = []
        for _ in range(k):
            b = rng.randint(lo, hi)
            e = min(b + rng.randint(1, max(1, p.max_length)) - 1, hi)
            segs.append(Segment(DEFAULT_LINE, b, e))
        return Multisegment(tuple(segs))

    def step(i: int) -> CheckResult:
        rng = _rng(p, i, 3)
        m1 = block(rng, -r, -2)
        m1p = block(rng, -r, -2)
        m2 = block(rng, 2, r)
        m2p = block(rng, 2, r)
        return _check_splitdisj(m1, m1p, m2, m2p, cfg)

    return _drive("splitdisj", p, cfg, instances, step)


def prop_gedelta(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 200
) -> PropertyReport:
    def step(i: int) -> CheckResult:
        rng = _rng(p, i, 4)
        d = _random_segment(rng, p, -p.coord_range, p.coord_range)
        return _check_gedelta(gen_ms(p, 2 * i), gen_ms(p, 2 * i + 1), d, cfg)

    return _drive("gedelta", p, cfg, instances, step)


def prop_3ms(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 300
) -> PropertyReport:
    violations: List[dict] = []
    bound = Fraction(0)
    counts = {part: 0 for part in (2, 3, 4, 5)}
    attempts = 0
    while min(counts.values()) < instances and attempts < instances * _ATTEMPT_FACTOR:
        m = gen_ms(p, 3 * attempts)
        m2 = gen_ms(p, 3 * attempts + 1)
        n = gen_ms(p, 3 * attempts + 2)
        attempts += 1
        for part in (2, 3, 4, 5):
            hyp, violation, b = _check_3ms_part(part, m, m2, n, cfg)
            if hyp:
                counts[part] += 1
                bound += b
                if violation is not None:
                    violations.append(violation)
    report = PropertyReport(
        "3ms",
        attempts,
        sum(counts.values()),
        violations,
        bound,
        p,
        cfg,
        {f"part{k}": v for k, v in counts.items()},
    )
    return report


def prop_sumofseg_geom(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 200
) -> PropertyReport:
    def step(i: int) -> CheckResult:
        return _check_sumofseg(gen_ms(p, 2 * i), gen_ms(p, 2 * i + 1), cfg)

    return _drive("sumofseg", p, cfg, instances, step)


def prop_rhoext_geom(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 300
) -> PropertyReport:
    def step(i: int) -> CheckResult:
        m = gen_ms(p, 2 * i)
        m2 = gen_ms(p, 2 * i + 1)
        if not m:
            return False, None, Fraction(0)
        rng = _rng(p, i, 5)
        rho = rng.choice(sorted(m.supp()))
        return _check_rhoext(m, m2, rho, cfg)

    return _drive("rhoext", p, cfg, instances, step)


# ---------------------------------------------------------------------------
# invariance bundle
# ---------------------------------------------------------------------------


def _pair_multiset(m: Multisegment, pairs, m2: Optional[Multisegment] = None) -> Counter:
    other = m if m2 is None else m2
    return Counter((m.seg(i), other.seg(j)) for (i, j) in pairs)


def suite_invariances(
    p: GenParams, cfg: RankConfig = RankConfig(), instances: int = 200
) -> PropertyReport:
    """Randomized checks of the structural identities behind the other suites:
    involution properties, pair-set bookkeeping, matchings, dualities."""
    violations: List[dict] = []
    bound = Fraction(0)
    details: Dict[str, int] = {}

    def note(name: str, ok: bool, inputs: Dict[str, str], detail: dict, b: Fraction):
        nonlocal bound
        bound += b
        details[name] = details.get(name, 0) + 1
        if not ok:
            violations.append(_violation(f"invariances/{name}", inputs, detail, b))

    for i in range(instances):
        m = gen_ms(p, i)
        sm = str(m)

        # involution squares to the identity and preserves point multiplicities
        md = mw_dual(m)
        note(
            "mw-involution",
            mw_dual(md) == m and md.supp() == m.supp(),
            {"m": sm},
            {"dual": str(md)},
            Fraction(0),
        )

        if m:
            delta, _ = mw_step(m)
            cands = [s for s in md if s.end_point() == m.max_end()]
            note(
                "mw-delta-minimal",
                bool(cands) and min(cands) == delta,
                {"m": sm},
                {"delta": str(delta)},
                Fraction(0),
            )

        ys = pairset_y(m)
        note(
            "y-diagonal",
            all((i_, i_) in ys for i_ in range(1, len(m) + 1)),
            {"m": sm},
            {},
            Fraction(0),
        )

        m2 = gen_ms(p, instances + i)
        total = m + m2
        got_x = _pair_multiset(total, pairset_x(total))
        want_x = (
            _pair_multiset(m, pairset_x(m))
            + _pair_multiset(m2, pairset_x(m2))
            + _pair_multiset(m, pairset_x_cross(m, m2), m2)
            + _pair_multiset(m2, pairset_x_cross(m2, m), m)
        )
        got_y = _pair_multiset(total, pairset_y(total))
        want_y = (
            _pair_multiset(m, pairset_y(m))
            + _pair_multiset(m2, pairset_y(m2))
            + _pair_multiset(m, pairset_y_cross(m, m2), m2)
            + _pair_multiset(m2, pairset_y_cross(m2, m), m)
        )
        note(
            "pairset-decomposition",
            got_x == want_x and got_y == want_y,
            {"m": sm, "m2": str(m2)},
            {},
            Fraction(0),
        )

        if m and m2 and m.max_end() < m2.max_end():
            xt, yt, f = mw_frontier(m, m2)
            chain = leading_indices(m2)
            pos = {idx: k for k, idx in enumerate(chain)}
            image = sorted(f.values())
            keys = sorted(f, key=lambda pr: (pr[0], pos[pr[1]]))
            monotone = all(
                (keys[a][0], pos[keys[a][1]]) < (keys[a + 1][0], pos[keys[a + 1][1]])
                and (f[keys[a]][0], pos[f[keys[a]][1]])
                < (f[keys[a + 1]][0], pos[f[keys[a + 1]][1]])
                for a in range(len(keys) - 1)
            )
            injective = len(set(f.values())) == len(f)
            onto = len(f) == len(xt)
            _, sumr = mw_step(m + m2)
            _, m2r = mw_step(m2)
            commutes = sumr == m + m2r
            note(
                "frontier-map",
                injective
                and monotone
                and set(image) <= set(xt.pairs)
                and (onto == commutes)
                and (len(xt) > len(yt) or onto),
                {"m": sm, "m2": str(m2)},
                {"xt": len(xt), "yt": len(yt), "onto": onto, "commutes": commutes},
                Fraction(0),
            )

        if m:
            rng = _rng(p, i, 6)
            rho = rng.choice(sorted(m.supp()))
            r = best_matching(m, rho)
            crossing = any(
                m.seg(i1) < m.seg(i2)
                and precedes(m.seg(i2), m.seg(j1))
                and m.seg(j1) < m.seg(j2)
                for (i1, j1) in r.pairs
                for (i2, j2) in r.pairs
            )
            note(
                "best-matching-maximal",
                is_maximal_matching(m, rho, r) and not crossing,
                {"m": sm, "rho": str(rho)},
                {},
                Fraction(0),
            )

            xr, yr = rho_sets(m, rho)
            if len(xr) + len(yr) <= 10:
                others = enumerate_maximal_matchings(m, rho)
                note(
                    "matching-unmatched-equivalence",
                    all(
                        matching_equivalent(m, r.a_set, o.a_set)
                        and matching_equivalent(m, r.b_set, o.b_set)
                        for o in others
                    ),
                    {"m": sm, "rho": str(rho)},
                    {"maximal_count": len(others)},
                    Fraction(0),
                )

            dv = derivative(m, rho)
            back = dv.derived
            for _ in range(dv.mu):
                back = soc_cuspidal(back, rho)
            note(
                "derivative-soc-supp",
                back.supp() == m.supp(),
                {"m": sm, "rho": str(rho)},
                {"mu": dv.mu},
                Fraction(0),
            )

            if m2:
                if derivative(m2, rho).mu == 0:
                    xt2, yt2 = rho_frontier(m, m2, rho)
                    note(
                        "frontier-inequality",
                        len(xt2) >= len(yt2),
                        {"m": sm, "m2": str(m2), "rho": str(rho)},
                        {"xt": len(xt2), "yt": len(yt2)},
                        Fraction(0),
                    )

        # condition-level invariances
        g = check_gls(m, cfg)
        gd = check_gls(m.dual(), cfg)
        gmw = check_gls(mw_dual(m), cfg)
        note(
            "gls-involution-invariance",
            g.holds == gd.holds == gmw.holds,
            {"m": sm},
            {"gls": g.holds, "dual": gd.holds, "mw": gmw.holds},
            _bound_of(g, gd, gmw),
        )

        lc = check_lc(m, m2, cfg)
        lcd = check_lc(m2.dual(), m.dual(), cfg)
        note(
            "lc-dual-symmetry",
            lc.holds == lcd.holds,
            {"m": sm, "m2": str(m2)},
            {"lc": lc.holds, "dual": lcd.holds},
            _bound_of(lc, lcd),
        )

        if g.holds:
            lcself = check_lc(m, m, cfg)
            note(
                "gls-implies-lc-self",
                lcself.holds,
                {"m": sm},
                {"lc_self": lcself.holds},
                _bound_of(g, lcself),
            )

        xs = sorted(pairset_x(m).pairs)
        lam = CoeffVector(tuple(xs), sample_coeffs(xs, cfg.prime, cfg.seed, 1))
        note(
            "gls-lc-diagonal-rows",
            gls_matrix(m, lam).entries == lc_matrix(m, m, lam, lam).entries,
            {"m": sm},
            {},
            Fraction(0),
        )

    return PropertyReport(
        "invariances",
        instances,
        instances,
        violations,
        bound,
        p,
        cfg,
        details,
    )


SUITES: Dict[str, Callable[..., PropertyReport]] = {
    "mm-minus": prop_mm_minus,
    "splitdisj": prop_splitdisj,
    "gedelta": prop_gedelta,
    "3ms": prop_3ms,
    "sumofseg": prop_sumofseg_geom,
    "rhoext": prop_rhoext_geom,
    "invariances": suite_invariances,
}


_REPLAY: Dict[str, Callable[..., CheckResult]] = {
    "mm-minus": lambda inp, cfg: _check_mm_minus(inp["m"], inp["m2"], cfg),
    "splitdisj": lambda inp, cfg: _check_splitdisj(
        inp["m1"], inp["m1p"], inp["m2"], inp["m2p"], cfg
    ),
    "gedelta": lambda inp, cfg: _check_gedelta(inp["m"], inp["m2"], inp["delta"], cfg),
    "3ms-2": lambda inp, cfg: _check_3ms_part(2, inp["m"], inp["m2"], inp["n"], cfg),
    "3ms-3": lambda inp, cfg: _check_3ms_part(3, inp["m"], inp["m2"], inp["n"], cfg),
    "3ms-4": lambda inp, cfg: _check_3ms_part(4, inp["m"], inp["m2"], inp["n"], cfg),
    "3ms-5": lambda inp, cfg: _check_3ms_part(5, inp["m"], inp["m2"], inp["n"], cfg),
    "sumofseg": lambda inp, cfg: _check_sumofseg(inp["m"], inp["m2"], cfg),
    "rhoext": lambda inp, cfg: _check_rhoext(inp["m"], inp["m2"], inp["rho"], cfg),
}


def replay_violation(violation: dict, cfg: RankConfig = RankConfig()) -> bool:
    """Re-run a recorded violation in isolation; True when it reproduces."""
    from .cli import parse_mseg, parse_rho

    name = violation["property"]
    if name not in _REPLAY:
        raise ValueError(f"no replay available for {name!r}")
    parsed = {}
    for key, text in violation["inputs"].items():
        if key == "rho":
            parsed[key] = parse_rho(text)
        elif key == "delta":
            only = parse_mseg(text)
            parsed[key] = only.seg(1)
        else:
            parsed[key] = parse_mseg(text)
    hyp, again, _ = _REPLAY[name](parsed, cfg)
    return hyp and again is not None
