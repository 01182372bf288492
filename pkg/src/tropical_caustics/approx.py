"""Discrete wave fronts: interior-hull steps and basis-dependent lattice erosion."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial.distance import directed_hausdorff

from .domain import classify, convex_hull, propagate, state_vertices
from .lattice import LatticeVector, det2


def interior_hull_step(P):
    """Convex hull of the lattice points strictly inside a lattice polygon."""
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    pts = []
    for x in range(math.floor(min(xs)), math.ceil(max(xs)) + 1):
        for y in range(math.floor(min(ys)), math.ceil(max(ys)) + 1):
            if P.contains((x, y), strict=True):
                pts.append((x, y))
    from .domain import point

    return classify(convex_hull([point(p) for p in pts]))


@dataclass(frozen=True)
class Basis:
    b1: LatticeVector
    b2: LatticeVector

    def __post_init__(self):
        if abs(det2(self.b1, self.b2)) != 1:
            raise ValueError(f"basis {tuple(self.b1)}, {tuple(self.b2)} has |det| != 1")

    @classmethod
    def parse(cls, text):
        """Parse "x1,y1;x2,y2"."""
        try:
            a, b = text.split(";")
            b1 = LatticeVector(*(int(s) for s in a.split(",")))
            b2 = LatticeVector(*(int(s) for s in b.split(",")))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"cannot parse basis {text!r}") from exc
        return cls(b1, b2)

    def reach(self):
        return max(abs(self.b1[0]), abs(self.b1[1]), abs(self.b2[0]), abs(self.b2[1]))


STANDARD = Basis(LatticeVector(1, 0), LatticeVector(0, 1))


def shear_bases(n):
    """The standard basis followed by elementary shears, n bases in all."""
    out = [STANDARD]
    k = 1
    while len(out) < n:
        for b in (Basis(LatticeVector(1, 0), LatticeVector(k, 1)),
                  Basis(LatticeVector(1, 0), LatticeVector(-k, 1)),
                  Basis(LatticeVector(1, k), LatticeVector(0, 1)),
                  Basis(LatticeVector(1, -k), LatticeVector(0, 1))):
            if len(out) < n:
                out.append(b)
        k += 1
    return out


@dataclass
class LatticeSet:
    """Lattice points inside a box [x0, x0+nx) x [y0, y0+ny).

    mask[i, j] says whether (x0 + i, y0 + j) belongs to the set.  When a
    predicate is attached, membership outside the box is defined by it;
    otherwise points outside the box are not members.
    """

    x0: int
    y0: int
    mask: np.ndarray
    predicate: object = None

    @classmethod
    def from_points(cls, pts):
        pts = sorted(set((int(x), int(y)) for x, y in pts))
        if not pts:
            return cls(0, 0, np.zeros((0, 0), bool))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        x0, y0 = min(xs), min(ys)
        mask = np.zeros((max(xs) - x0 + 1, max(ys) - y0 + 1), bool)
        for x, y in pts:
            mask[x - x0, y - y0] = True
        return cls(x0, y0, mask)

    @classmethod
    def from_predicate(cls, pred, box):
        """pred maps integer arrays X, Y to booleans; box = (xmin, xmax, ymin, ymax)."""
        xmin, xmax, ymin, ymax = box
        X, Y = np.meshgrid(np.arange(xmin, xmax + 1), np.arange(ymin, ymax + 1), indexing="ij")
        return cls(xmin, ymin, np.asarray(pred(X, Y), bool), pred)

    @property
    def box(self):
        nx, ny = self.mask.shape
        return (self.x0, self.x0 + nx - 1, self.y0, self.y0 + ny - 1)

    def points(self):
        idx = np.argwhere(self.mask)
        return {(int(i) + self.x0, int(j) + self.y0) for i, j in idx}

    def __contains__(self, p):
        i, j = p[0] - self.x0, p[1] - self.y0
        return 0 <= i < self.mask.shape[0] and 0 <= j < self.mask.shape[1] and bool(self.mask[i, j])

    def __len__(self):
        return int(self.mask.sum())

    def restrict(self, box):
        xmin, xmax, ymin, ymax = box
        out = np.zeros((xmax - xmin + 1, ymax - ymin + 1), bool)
        sx0, sx1, sy0, sy1 = self.box
        ax0, ax1 = max(xmin, sx0), min(xmax, sx1)
        ay0, ay1 = max(ymin, sy0), min(ymax, sy1)
        if ax0 <= ax1 and ay0 <= ay1:
            out[ax0 - xmin:ax1 - xmin + 1, ay0 - ymin:ay1 - ymin + 1] = \
                self.mask[ax0 - sx0:ax1 - sx0 + 1, ay0 - sy0:ay1 - sy0 + 1]
        return LatticeSet(xmin, ymin, out)

    def __and__(self, other):
        a, b = self.box, other.box
        box = (min(a[0], b[0]), max(a[1], b[1]), min(a[2], b[2]), max(a[3], b[3]))
        r1, r2 = self.restrict(box), other.restrict(box)
        return LatticeSet(box[0], box[2], r1.mask & r2.mask)


def _structure(b):
    k = b.reach()
    s = np.zeros((2 * k + 1, 2 * k + 1), bool)
    s[k, k] = True
    for v in (b.b1, b.b2):
        s[k + v[0], k + v[1]] = True
        s[k - v[0], k - v[1]] = True
    return s


def erosion(S, b=STANDARD, m=1):
    """Points of S whose graph ball of radius m (steps +-b1, +-b2) lies in S.

    This is the m-fold one-step erosion.  For predicate-backed sets the box
    is widened by the reach of m steps before eroding, so the result is
    exact on the original box.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return LatticeSet(S.x0, S.y0, S.mask.copy(), S.predicate)
    box = S.box
    if S.predicate is not None:
        g = m * b.reach()
        wide = LatticeSet.from_predicate(S.predicate, (box[0] - g, box[1] + g, box[2] - g, box[3] + g))
    else:
        wide = S
    mask = ndimage.binary_erosion(wide.mask, structure=_structure(b), iterations=m, border_value=0)
    out = LatticeSet(wide.x0, wide.y0, mask).restrict(box)
    out.predicate = None
    return out


# domains in the plane, given by the indicator of an open set

@dataclass
class Domain:
    indicator: object  # float arrays X, Y -> bool, for the open domain
    box: tuple  # (xmin, xmax, ymin, ymax) in plane coordinates
    name: str = ""


def disc_domain(r=1.0):
    return Domain(lambda X, Y: X * X + Y * Y < r * r, (-r, r, -r, r), "disc")


def ellipse_domain(alpha):
    return Domain(lambda X, Y: X * X + (Y / alpha) ** 2 < 1, (-1, 1, -alpha, alpha), "ellipse")


def polygon_domain(P):
    from .domain import monomial_set

    mons = [(float(m.normal[0]), float(m.normal[1]), float(m.c)) for m in monomial_set(P)]
    xs = [float(v[0]) for v in P.vertices]
    ys = [float(v[1]) for v in P.vertices]

    def ind(X, Y):
        out = np.ones(np.shape(X), bool)
        for a, b, c in mons:
            out &= a * X + b * Y + c > 0
        return out

    return Domain(ind, (min(xs), max(xs), min(ys), max(ys)), "polygon")


def staircase_cone(which=1):
    """The two lattice-equivalent non-convex cones with apex (2, 3).

    Cone 1 is the complement of the quadrant {x <= 2, y >= 3}; cone 2 is
    its shear, the complement of {y >= 3, y >= x + 1}.
    """
    if which == 1:
        ind = lambda X, Y: (Y < 3) | (X > 2)
    elif which == 2:
        ind = lambda X, Y: (Y < 3) | (Y < X + 1)
    else:
        raise ValueError("staircase cone index is 1 or 2")
    return Domain(ind, (0, 5, 0, 5), f"staircase{which}")


def lattice_sample(domain, h, margin=0):
    """Phi_h: lattice points p with h p in the (open) domain, windowed."""
    xmin, xmax, ymin, ymax = domain.box
    box = (math.floor(xmin / h) - margin, math.ceil(xmax / h) + margin,
           math.floor(ymin / h) - margin, math.ceil(ymax / h) + margin)
    pred = lambda X, Y: domain.indicator(X * h, Y * h)
    return LatticeSet.from_predicate(pred, box)


def front_set(domain, h, m, b=STANDARD):
    """Lattice points of Phi_h at graph distance at least m from its complement."""
    S = lattice_sample(domain, h)
    if m <= 1:
        return S
    return erosion(S, b, m - 1)


def scaled_front(domain, h, t, b=STANDARD):
    """h * Phi_h(b, floor(t/h)) as an array of plane points."""
    m = math.floor(t / h + 1e-12)
    return h * to_array(front_set(domain, h, m, b))


def basis_intersection_front(domain, h, t, bases):
    m = math.floor(t / h + 1e-12)
    sets = [front_set(domain, h, m, b) for b in bases]
    out = sets[0]
    for s in sets[1:]:
        out = out & s
    return h * to_array(out)


def to_array(S):
    pts = sorted(S.points())
    return np.array(pts, float).reshape(-1, 2)


def hausdorff(A, B):
    A, B = np.asarray(A, float), np.asarray(B, float)
    if len(A) == 0 or len(B) == 0:
        return math.inf if len(A) != len(B) else 0.0
    return max(directed_hausdorff(A, B)[0], directed_hausdorff(B, A)[0])


def exact_front_points(P, t, h):
    """Lattice points of h Z^2 inside the exact wave front Phi(t) of a polygon."""
    st = propagate(P, t)
    vs = state_vertices(st)
    if not vs:
        return np.zeros((0, 2))
    if st.kind != "polygon":
        return np.array([[float(v[0]), float(v[1])] for v in vs])
    xs = [float(v[0]) for v in vs]
    ys = [float(v[1]) for v in vs]
    X, Y = np.meshgrid(np.arange(math.floor(min(xs) / h), math.ceil(max(xs) / h) + 1),
                       np.arange(math.floor(min(ys) / h), math.ceil(max(ys) / h) + 1), indexing="ij")
    inside = np.ones(X.shape, bool)
    poly = st.polygon
    for a, c in poly.edges():
        # exact enough in floats for sampling purposes
        ax, ay, cx, cy = float(a[0]), float(a[1]), float(c[0]), float(c[1])
        inside &= (cx - ax) * (Y * h - ay) - (cy - ay) * (X * h - ax) >= -1e-12
    return h * np.column_stack([X[inside], Y[inside]]).astype(float)
