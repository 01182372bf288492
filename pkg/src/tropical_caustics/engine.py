"""Kinetic particle process computing the caustic of a rational polygon.

Wave-front vertices move as particles.  Each particle sits between two
consecutive active monomials (L, R) and moves with the velocity v solving
<L,v> = <R,v> = 1.  When an active edge shrinks to a point its two end
particles merge; momenta add up.
"""

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .caustic import BRANCH, FINAL_POINT, FINAL_SEGMENT_END, LEAF, CausticGraph
from .domain import Monomial, RationalPoint, monomial_set, to_fraction
from .lattice import LatticeVector, det2, primitive


class EngineError(AssertionError):
    """The process reached a state the local theory rules out."""


@dataclass
class Particle:
    id: int
    birth_pos: RationalPoint
    birth_time: Fraction
    direction: LatticeVector
    mass: int
    left: Monomial
    right: Monomial
    vertex: int = None  # caustic vertex the particle was born at

    @property
    def momentum(self):
        return (self.mass * self.direction[0], self.mass * self.direction[1])

    def position(self, t):
        dt = t - self.birth_time
        return RationalPoint(self.birth_pos[0] + dt * self.direction[0],
                             self.birth_pos[1] + dt * self.direction[1])


@dataclass
class EngineResult:
    caustic: CausticGraph
    final_time: Fraction
    final_locus: tuple  # ("point", p) or ("segment", a, b)
    event_log: list = field(default_factory=list)
    monomials: list = field(default_factory=list)


def meet(m1, m2, t=0):
    """Point where lam1(p) + c1 = lam2(p) + c2 = t."""
    (a1, b1), (a2, b2) = m1.normal, m2.normal
    d = a1 * b2 - b1 * a2
    r1, r2 = t - m1.c, t - m2.c
    return RationalPoint((r1 * b2 - b1 * r2) / d, (a1 * r2 - r1 * a2) / d)


def pair_motion(left, right):
    """Primitive direction and mass of the particle flanked by left, right."""
    L, R = left.normal, right.normal
    d = det2(L, R)
    if d <= 0:
        raise EngineError(f"monomials {tuple(L)}, {tuple(R)} are not positively oriented")
    mom = (R[1] - L[1], L[0] - R[0])
    direction, mass = primitive(mom)
    if mass != d:
        raise EngineError(f"vertex flanked by {tuple(L)}, {tuple(R)} is not of type A_n")
    return direction, mass


def edge_collapse_time(left, right, shared, now=Fraction(0)):
    """Time the active edge of `shared` between two particles shrinks to a point.

    Returns None when the edge never shrinks.
    """
    if left.right != shared or right.left != shared:
        raise ValueError("particles are not adjacent across the shared monomial")
    a, b = shared.normal
    d = (b, -a)
    dd = a * a + b * b
    pl, pr = left.position(now), right.position(now)
    length = ((pr[0] - pl[0]) * d[0] + (pr[1] - pl[1]) * d[1]) / dd
    rate = Fraction((right.direction[0] - left.direction[0]) * d[0]
                    + (right.direction[1] - left.direction[1]) * d[1], dd)
    if rate >= 0:
        return None
    return now + length / -rate


def seed_particles(P):
    """Particles born at the corners of P, in boundary order."""
    mons = monomial_set(P)
    out = []
    for i, m in enumerate(mons):
        n = mons[(i + 1) % len(mons)]
        direction, mass = pair_motion(m, n)
        out.append(Particle(i, meet(m, n), Fraction(0), direction, mass, m, n))
    return out


def run(P):
    return run_monomials(monomial_set(P))


def run_monomials(monomials, tol=None):
    """Run the particle process from a cyclic list of active monomials.

    Consecutive monomials must be positively oriented; their lines meet at
    the corners of the initial domain.  With `tol` set, events closer than
    tol in time are treated as simultaneous (for constants rounded from
    floats); otherwise all arithmetic is exact.
    """
    mons = [Monomial(m.normal, to_fraction(m.c)) for m in monomials]
    k = len(mons)
    if k < 3:
        raise ValueError("need at least three monomials")
    nxt = [(i + 1) % k for i in range(k)]
    prv = [(i - 1) % k for i in range(k)]
    alive = [True] * k
    version = [0] * k
    g = CausticGraph(exact=tol is None)
    leaves = {}
    part = {}  # left monomial index -> particle between i and nxt[i]
    ids = iter(range(10 ** 9))

    for i in range(k):
        j = nxt[i]
        pos = meet(mons[i], mons[j])
        if pos not in leaves:
            leaves[pos] = g.add_vertex(pos, Fraction(0), LEAF)
        direction, mass = pair_motion(mons[i], mons[j])
        part[i] = Particle(next(ids), pos, Fraction(0), direction, mass, mons[i], mons[j], leaves[pos])

    heap = []
    now = Fraction(0)

    def schedule(i):
        version[i] += 1
        left, right = part[prv[i]], part[i]
        t = edge_collapse_time(left, right, mons[i], now)
        if t is not None:
            p = left.position(t)
            heapq.heappush(heap, (t, p, min(left.id, right.id), i, version[i]))

    for i in range(k):
        schedule(i)

    def close(p, target, t):
        g.add_edge(p.vertex, target, p.direction, p.mass, t - p.birth_time,
                   normals=(p.left.normal, p.right.normal))

    log = []
    final = None
    while heap and final is None:
        t, _, _, i, ver = heapq.heappop(heap)
        if not alive[i] or ver != version[i]:
            continue
        batch = [i]
        limit = t if tol is None else t + to_fraction(tol)
        while heap and heap[0][0] <= limit:
            _, _, _, j, vj = heapq.heappop(heap)
            if alive[j] and vj == version[j] and j not in batch:
                batch.append(j)
        if t < now:
            raise EngineError("event times went backwards")
        now = t
        collapsing = set(batch)
        live = [j for j in range(k) if alive[j]]

        if collapsing == set(live):
            # the whole front shrinks to one point
            start = min(live)
            order = [start]
            while nxt[order[-1]] != start:
                order.append(nxt[order[-1]])
            q = part[start].position(now)
            v = g.add_vertex(q, now, FINAL_POINT)
            incoming = [part[j] for j in order]
            for p in incoming:
                _check_at(p, q, now, tol)
                close(p, v, now)
            log.append(_record(now, q, incoming, "annihilation"))
            g.final_kind = "point"
            g.final_normals = [mons[j].normal for j in order]
            final = ("point", q)
            break

        runs = []
        for j in batch:
            if prv[j] in collapsing:
                continue
            run_ = [j]
            while nxt[run_[-1]] in collapsing:
                run_.append(nxt[run_[-1]])
            runs.append(run_)
        runs.sort(key=lambda r: (part[prv[r[0]]].position(now), r[0]))

        pending_segment = []
        for run_ in runs:
            a, b = prv[run_[0]], nxt[run_[-1]]
            incoming = [part[a]] + [part[j] for j in run_]
            q = part[a].position(now)
            for p in incoming:
                _check_at(p, q, now, tol)
            for j in run_:
                alive[j] = False
                del part[j]
            nxt[a], prv[b] = b, a
            la, lb = mons[a].normal, mons[b].normal
            if det2(la, lb) == 0 and (la[0] + lb[0], la[1] + lb[1]) == (0, 0):
                v = g.add_vertex(q, now, FINAL_SEGMENT_END)
                for p in incoming:
                    close(p, v, now)
                pending_segment.append((v, q, a, b, run_, incoming))
                continue
            if len(incoming) != 2:
                raise EngineError(f"{len(incoming)} particles merge at {tuple(q)}, t={now}")
            heavy = [p for p in incoming if p.mass > 1]
            direction, mass = pair_motion(mons[a], mons[b])
            if mass != 1 or len(heavy) > 1:
                raise EngineError(f"non-A_n branching at {tuple(q)}, t={now}")
            v = g.add_vertex(q, now, BRANCH)
            for p in incoming:
                close(p, v, now)
            part[a] = Particle(next(ids), q, now, direction, mass, mons[a], mons[b], v)
            log.append(_record(now, q, incoming, {"dir": list(direction), "mass": mass}))
            schedule(a)
            schedule(b)

        if pending_segment:
            if len(pending_segment) != 2 or sum(alive) != 2:
                raise EngineError(f"front degenerates irregularly at t={now}")
            ends = sorted(pending_segment, key=lambda s: s[1])
            (v1, q1, a1, b1, run1, in1), (v2, q2, a2, b2, run2, in2) = ends
            n = mons[a1].normal
            # the weight-2 particle of the first end moves along rot(-2n)/2
            direction = LatticeVector(-n[1], n[0])
            dd = n[0] * n[0] + n[1] * n[1]
            length = ((q2[0] - q1[0]) * direction[0] + (q2[1] - q1[1]) * direction[1]) / dd
            if tol is None and (q1[0] + length * direction[0], q1[1] + length * direction[1]) != q2:
                raise EngineError("final segment ends are not aligned")
            g.add_edge(v1, v2, direction, 2, length, normals=(n, mons[b1].normal), final=True)
            for q, inc in ((q1, in1), (q2, in2)):
                log.append(_record(now, q, inc, "final-segment"))
            g.final_kind = "segment"
            g.final_normals = [n] + [mons[j].normal for j in run1] + [mons[b1].normal] + \
                [mons[j].normal for j in run2]
            final = ("segment", q1, q2)

    if final is None:
        raise EngineError("the process ended without a final locus")
    g.t_final = now
    return EngineResult(g, now, final, log, mons)


def _check_at(p, q, t, tol):
    pos = p.position(t)
    if tol is None:
        if pos != q:
            raise EngineError(f"particle {p.id} is at {tuple(pos)}, not {tuple(q)}, at t={t}")
    elif abs(pos[0] - q[0]) + abs(pos[1] - q[1]) > 1000 * to_fraction(tol):
        raise EngineError(f"particle {p.id} misses the collision point at t={float(t)}")


def _record(t, q, incoming, out):
    return {
        "t": t,
        "point": q,
        "in": [{"dir": list(p.direction), "mass": p.mass} for p in incoming],
        "out": out,
    }
