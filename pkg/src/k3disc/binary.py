"""Exact representation decisions for binary even forms.

A Gram matrix [[a, b], [b, c]] is the form f = (a, 2b, c), f(x, y) = a x^2 + 2b xy + c y^2.
Indefinite, nonsquare discriminants are handled with cycles of reduced forms;
square discriminants by moving to the shape y (B x + C y).
"""
from __future__ import annotations

from math import gcd, isqrt
from typing import List, Optional, Tuple

from .enumeration import EnumerationError, first_hit, Verdict, canonical_sign, enumerate_positive
from .lattice import Lattice

NODE_CAP = 10 ** 5
SMALL_BOX = 12  # try a short direct scan first so witnesses stay small



class NodeCapExceeded(RuntimeError):
    pass


Form = Tuple[int, int, int]
Mat = Tuple[int, int, int, int]  # (p, q, r, s) for [[p, q], [r, s]]


def form_of(L: Lattice) -> Form:
    if L.rank != 2:
        raise EnumerationError("binary form needs rank 2")
    (a, b), (_, c) = L.gram
    return (a, 2 * b, c)


def evaluate(f: Form, x: int, y: int) -> int:
    a, b, c = f
    return a * x * x + b * x * y + c * y * y


def discriminant(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def _mul(m: Mat, n: Mat) -> Mat:
    p, q, r, s = m
    t, u, v, w = n
    return (p * t + q * v, p * u + q * w, r * t + s * v, r * u + s * w)


def _inv(m: Mat) -> Mat:
    p, q, r, s = m  # determinant 1
    return (s, -q, -r, p)


def act(f: Form, m: Mat) -> Form:
    p, q, r, s = m
    a, b, c = f
    return (evaluate(f, p, r), 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s, evaluate(f, q, s))


# --- nonsquare indefinite discriminants -------------------------------------

def _lt_sqrt(x: int, D: int) -> bool:
    return x < 0 or x * x < D


def _gt_sqrt(x: int, D: int) -> bool:
    return x > 0 and x * x > D


def is_reduced(f: Form) -> bool:
    a, b, c = f
    D = discriminant(f)
    return _lt_sqrt(b, D) and b > 0 and _lt_sqrt(2 * abs(a) - b, D) and _gt_sqrt(b + 2 * abs(a), D)


def rho(f: Form) -> Tuple[Form, Mat]:
    """One reduction step: f . [[0, -1], [1, s]] = (c, b', c')."""
    a, b, c = f
    D = discriminant(f)
    m = 2 * abs(c)
    if c * c > D:
        r = (-b) % m
        if r > abs(c):
            r -= m
        b2 = r
    else:
        r0 = isqrt(D)
        b2 = r0 - ((r0 + b) % m)
    s = (b2 + b) // (2 * c)
    M = (0, -1, 1, s)
    g = act(f, M)
    assert g[0] == c and g[1] == b2
    return g, M


def reduce_form(f: Form) -> Tuple[Form, Mat]:
    M: Mat = (1, 0, 0, 1)
    g = f
    steps = 0
    while not is_reduced(g):
        g, R = rho(g)
        M = _mul(M, R)
        steps += 1
        if steps > NODE_CAP:
            raise NodeCapExceeded("reduction did not terminate within the node cap")
    return g, M


def cycle(f: Form) -> List[Tuple[Form, Mat]]:
    """Reduced cycle of f: list of (g, M) with f . M = g, starting at the reduced form of f."""
    g0, M0 = reduce_form(f)
    out = [(g0, M0)]
    g, M = g0, M0
    while len(out) <= NODE_CAP:
        g, R = rho(g)
        M = _mul(M, R)
        if g == g0:
            return out
        out.append((g, M))
    raise NodeCapExceeded("cycle exceeds the node cap")


def equivalence(f: Form, g: Form) -> Optional[Mat]:
    """M in SL2(Z) with f . M = g, or None when the forms are not properly equivalent."""
    if discriminant(f) != discriminant(g):
        return None
    gr, Mg = reduce_form(g)
    for h, M in cycle(f):
        if h == gr:
            W = _mul(M, _inv(Mg))
            assert act(f, W) == g
            return W
    return None


def _primitive_reps(f: Form, t: int, cycle_forms) -> Optional[Tuple[int, int]]:
    """A primitive (x, y) with f(x, y) = t, t != 0, using the cycle of f."""
    D = discriminant(f)
    m = 4 * abs(t)
    index = {h: M for h, M in cycle_forms}
    for B in range(2 * abs(t)):
        if (B * B - D) % m:
            continue
        g = (t, B, (B * B - D) // (4 * t))
        gr, Mg = reduce_form(g)
        M = index.get(gr)
        if M is not None:
            W = _mul(M, _inv(Mg))
            return W[0], W[2]
    return None


def _square_divisors(t: int):
    k = 1
    while k * k <= abs(t):
        if t % (k * k) == 0:
            yield k
        k += 1


def _represents_nonsquare(f: Form, t: int) -> Verdict:
    if t == 0:
        return Verdict.no({"kind": "anisotropic-binary", "discriminant": discriminant(f)})
    try:
        return _nonsquare_search(f, t)
    except NodeCapExceeded:
        return Verdict.unknown(NODE_CAP)


def _nonsquare_search(f: Form, t: int) -> Verdict:
    cyc = cycle(f)
    for k in _square_divisors(t):
        w = _primitive_reps(f, t // (k * k), cyc)
        if w is not None:
            return Verdict.yes(canonical_sign((k * w[0], k * w[1])))
    return Verdict.no({"kind": "cycle", "cycle": [list(h) for h, _ in cyc]})


# --- square discriminants -----------------------------------------------------

def _xgcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def isotropic_normal_form(f: Form) -> Tuple[Form, Mat]:
    """(0, B, C) with 0 <= C < |B| and M with f . M = (0, B, C)."""
    a, b, c = f
    D = discriminant(f)
    s = isqrt(D)
    if a == 0:
        x0, y0 = 1, 0
    else:
        num, den = -b + s, 2 * a
        g = gcd(num, den)
        x0, y0 = num // g, den // g
    g, u, v = _xgcd(x0, y0)  # u x0 + v y0 = 1
    M: Mat = (x0, -v, y0, u)
    h = act(f, M)
    assert h[0] == 0
    B, C = h[1], h[2]
    k = -(C // abs(B)) * (1 if B > 0 else -1)
    T: Mat = (1, k, 0, 1)
    M = _mul(M, T)
    h = act(f, M)
    assert h[0] == 0 and 0 <= h[2] < abs(h[1])
    return h, M


def _represents_square(f: Form, t: int) -> Verdict:
    h, M = isotropic_normal_form(f)
    p, q, r, s = M
    if t == 0:
        return Verdict.yes(canonical_sign((p, r)))
    _, B, C = h
    for y in range(1, abs(t) + 1):
        if t % y:
            continue
        for yy in (y, -y):
            rest = t // yy - C * yy
            if rest % B == 0:
                x = rest // B
                return Verdict.yes(canonical_sign((p * x + q * yy, r * x + s * yy)))
    return Verdict.no({"kind": "isotropic-divisors", "normal_form": list(h)})


def _represents_definite(L: Lattice, t: int) -> Verdict:
    sig = L.signature
    sign = 1 if sig.p == 2 else -1
    if t == 0 or t * sign < 0:
        return Verdict.no({"kind": "definite-sign", "signature": [sig.p, sig.q]})
    G = [[sign * x for x in row] for row in L.gram]
    vecs = enumerate_positive(G, sign * t, sign * t)
    if vecs:
        return Verdict.yes(canonical_sign(vecs[0]))
    return Verdict.no({"kind": "definite-empty"})


def binary_represents(L: Lattice, target: int) -> Verdict:
    """Decide whether a nonzero vector of the rank-2 lattice L has norm ``target``."""
    if L.rank != 2:
        raise EnumerationError("binary_represents needs a rank-2 lattice")
    f = form_of(L)
    D = discriminant(f)
    if D == 0:
        raise EnumerationError("degenerate binary form")
    if D < 0:
        return _represents_definite(L, target)
    c = gcd(gcd(f[0], f[1]), f[2])
    if target % c:
        return Verdict.no({"kind": "content", "content": c})
    f0 = (f[0] // c, f[1] // c, f[2] // c)
    t0 = target // c
    small = first_hit(L.gram, target, SMALL_BOX)
    if small is not None:
        return Verdict.yes(canonical_sign(small))
    if isqrt(D) ** 2 == D:
        return _represents_square(f0, t0)
    return _represents_nonsquare(f0, t0)


def check_binary_certificate(L: Lattice, target: int, v: Verdict) -> bool:
    """Recompute a binary verdict from scratch and compare."""
    if v.is_yes:
        x, y = v.witness
        return (x, y) != (0, 0) and L.norm((x, y)) == target
    again = binary_represents(L, target)
    return again.to_json() == v.to_json()
