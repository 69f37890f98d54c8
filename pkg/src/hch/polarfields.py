"""Exact symbolic action of 2x2 matrix vector fields on homogeneous functions.

Functions are finite combinations sum_n c_n r^lam z^n with z = e^{i phi}; the
right-translation vector field of a 2x2 matrix X acts via

    (X f)(x) = d/dt f(x exp(tX)) |_{t=0} = (x X) . grad f,

and everything (cos phi, sin phi, x_1, x_2, the polar derivatives) is a
Laurent polynomial in z over Q(i) times a power of r, so the result is again
a combination of r^lam z^m with exact coefficients.  Used to derive K-type
band tables from first principles instead of trusting hand algebra.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .scalars import I, Scalar, as_scalar

# a K-finite function is a sparse map {n: c_n} standing for sum c_n r^lam z^n
KFunction = Dict[int, Scalar]


def _addto(acc: KFunction, n: int, c: Scalar) -> None:
    s = acc.get(n, Scalar(0)) + c
    if s.is_zero():
        acc.pop(n, None)
    else:
        acc[n] = s


def vector_field_apply(X: Tuple[Tuple, Tuple], lam, f: KFunction) -> KFunction:
    """Apply the vector field of X = [[a,b],[c,d]] to f, both exact.

    Uses d1 f_n = r^{lam-1} (((lam-n)/2) z^{n+1} + ((lam+n)/2) z^{n-1}),
         d2 f_n = r^{lam-1} ((i(n-lam)/2) z^{n+1} + (i(n+lam)/2) z^{n-1}),
    and x1 = r (z + 1/z)/2, x2 = r (z - 1/z)/(2i).
    """
    (a, b), (c, d) = X
    a, b, c, d = (as_scalar(x) for x in (a, b, c, d))
    lam = as_scalar(lam)
    half = Scalar("1/2")
    out: KFunction = {}
    for n, cn in f.items():
        ns = as_scalar(n)
        # r^{lam-1}-graded pieces of the partial derivatives
        d1 = {n + 1: (lam - ns) * half, n - 1: (lam + ns) * half}
        d2 = {n + 1: I * (ns - lam) * half, n - 1: I * (ns + lam) * half}
        # first slot coefficient  a*x1 + c*x2, second  b*x1 + d*x2 (row vector x X)
        for coeff, dd in (({1: a * half, -1: a * half}, d1),
                          ({1: c * half / I, -1: -c * half / I}, d1),
                          ({1: b * half, -1: b * half}, d2),
                          ({1: d * half / I, -1: -d * half / I}, d2)):
            for s, u in coeff.items():
                if u.is_zero():
                    continue
                for m, v in dd.items():
                    _addto(out, m + s, cn * u * v)
    return out


def x1x2_power(k: int) -> KFunction:
    """Exact K-type expansion of (x1 x2)^k, dropping the overall r^{2k}.

    x1 x2 = r^2 (z^2 - z^{-2}) / (4i), multiplied out as a Laurent polynomial.
    """
    base: KFunction = {2: Scalar(1) / (Scalar(4) * I), -2: Scalar(-1) / (Scalar(4) * I)}
    out: KFunction = {0: Scalar(1)}
    for _ in range(k):
        nxt: KFunction = {}
        for n, c in out.items():
            for m, d in base.items():
                _addto(nxt, n + m, c * d)
        out = nxt
    return out


def quarter_rotation_apply(k: int, f: KFunction) -> KFunction:
    """Rotation by k quarter turns: f(x . w^k) with w = [[0,1],[-1,0]].

    x . w = (-x2, x1) is the rotation phi -> phi + pi/2, so z^n picks up i^{kn}.
    """
    out: KFunction = {}
    for n, c in f.items():
        _addto(out, n, c * (I ** ((k * n) % 4)))
    return out
