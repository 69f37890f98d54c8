"""h-complexes: complexes of weak modules with a degree -1 contraction family.

The contraction i_xi (one per torus generator of K) must be K-equivariant,
commute with the g-action, anticommute with itself, and satisfy the homotopy
identity d i_xi + i_xi d = w(xi).  Cohomologies of such a complex carry a
genuine module structure, which is verified degreewise.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from . import signs
from .complexes import Complex, ComplexMap, TensorLayout, cone, tensor_complex
from .gkmodules import FiniteModule, kron
from .liepairs import ValidationReport
from .linalg import Matrix, Subspace, kernel_basis
from .scalars import as_scalar


class HComplex:
    """A Complex plus contraction maps i[t][n]: term n -> term n-1."""

    def __init__(self, base: Complex, i_maps: Dict[int, Dict[int, Matrix]]):
        self.base = base
        self.i_maps: Dict[int, Dict[int, Matrix]] = {}
        for t in range(base.pair.K.torus_rank):
            per = {}
            for n, m in (i_maps.get(t) or {}).items():
                if m.rows == 0 or m.cols == 0:
                    continue
                if m.cols != base.dim_at(n) or m.rows != base.dim_at(n - 1):
                    raise ValueError(f"i-map shape mismatch at degree {n}")
                per[n] = m
            self.i_maps[t] = per

    def i_at(self, t: int, n: int) -> Matrix:
        m = self.i_maps.get(t, {}).get(n)
        if m is not None:
            return m
        return Matrix.zeros(self.base.dim_at(n - 1), self.base.dim_at(n))

    def degrees(self) -> List[int]:
        return self.base.degrees()


def check_h_axioms(h: HComplex) -> ValidationReport:
    """All four contraction axioms plus d^2 = 0 and term validity.

    On complexes carrying interior marks, each identity is asserted on the
    interior columns only.  The report names the first failing axiom with
    its degree and generator.
    """
    base = h.base
    pair = base.pair
    bad = []
    rep = base.check_complex()
    if not rep:
        bad.extend(rep.violations)
    trank = pair.K.torus_rank
    for n in base.degrees():
        cols = base.interior_cols(n)
        tn = base.term(n)
        tprev = base.term(n - 1)
        d_r = base.diff(n).restrict_columns(cols)
        for t in range(trank):
            i_m = h.i_at(t, n)
            i_r = i_m.restrict_columns(cols)
            # (i) K-equivariance: i_xi preserves weights
            for (r, c), _ in i_m.entries.items():
                if tprev.k_weights[r] != tn.k_weights[c]:
                    bad.append(f"axiom i: i_xi{t} mixes K-weights at degree {n}")
                    break
            # (ii) commutes with the g-action
            for j in range(pair.g.dim):
                lhs = tprev.g_action[j] @ i_r
                rhs = i_m @ tn.g_action[j].restrict_columns(cols)
                if lhs != rhs:
                    bad.append(f"axiom ii: i_xi{t} vs g-basis {j} at degree {n}")
            # (iii) anticommutation
            for s in range(t, trank):
                anti = (h.i_at(s, n - 1) @ i_r
                        + h.i_at(t, n - 1) @ h.i_at(s, n).restrict_columns(cols))
                if not anti.is_zero():
                    bad.append(f"axiom iii: i_xi{t} i_xi{s} + i_xi{s} i_xi{t} != 0 at degree {n}")
            # (iv) homotopy identity d i + i d = w
            w = tn.defect().maps[t].restrict_columns(cols)
            hom = base.diff(n - 1) @ i_r + h.i_at(t, n + 1) @ d_r
            if hom != w:
                bad.append(f"axiom iv: d i + i d != w for xi{t} at degree {n}")
    return ValidationReport.good() if not bad else ValidationReport.bad(*bad)


def h_cohomology_modules(h: HComplex) -> ValidationReport:
    """Check the induced defect vanishes on cohomology: w(xi) ker d ⊆ im d."""
    base = h.base
    bad = []
    for n in base.degrees():
        cycles = kernel_basis(base.diff(n))
        prev = base.diff(n - 1)
        image = Subspace(base.dim_at(n),
                         [prev.column(c) for c in range(prev.cols)])
        for t in range(base.pair.K.torus_rank):
            w = base.term(n).defect().maps[t]
            for v in cycles:
                if not image.contains(w.apply(v)):
                    bad.append(f"defect of xi{t} does not vanish on H^{n}")
                    break
    return ValidationReport.good() if not bad else ValidationReport.bad(*bad)


def h_shift(h: HComplex, k: int = 1) -> HComplex:
    base = h.base.shift(k)
    sgn = signs.shift_contraction_sign(k)
    i_maps: Dict[int, Dict[int, Matrix]] = {}
    for t, per in h.i_maps.items():
        i_maps[t] = {n - k: (m if sgn == 1 else -m) for n, m in per.items()}
    return HComplex(base, i_maps)


class HComplexMap(ComplexMap):
    """Chain map between the bases of two h-complexes, commuting with i."""

    def __init__(self, source: HComplex, target: HComplex, maps: Dict[int, Matrix]):
        super().__init__(source.base, target.base, maps)
        self.hsource = source
        self.htarget = target

    def validate(self) -> ValidationReport:
        rep = super().validate()
        bad = list(rep.violations)
        for t in range(self.source.pair.K.torus_rank):
            for n in self.source.degrees():
                lhs = self.htarget.i_at(t, n) @ self.at(n)
                rhs = self.at(n - 1) @ self.hsource.i_at(t, n)
                if lhs != rhs:
                    bad.append(f"map does not commute with i_xi{t} at degree {n}")
        return ValidationReport.good() if not bad else ValidationReport.bad(*bad)

    @staticmethod
    def identity_h(h: HComplex) -> "HComplexMap":
        return HComplexMap(h, h, {n: Matrix.identity(h.base.dim_at(n))
                                  for n in h.degrees()})


def h_cone(f: HComplexMap) -> HComplex:
    rep = f.validate()
    if not rep:
        raise ValueError("h-cone of an invalid map: " + "; ".join(rep.violations))
    M, N = f.hsource, f.htarget
    base, _, _ = cone(f)
    sgn = as_scalar(signs.cone_contraction_shifted_sign())
    i_maps: Dict[int, Dict[int, Matrix]] = {}
    for t in range(base.pair.K.torus_rank):
        per = {}
        for n in base.degrees():
            rows = M.base.dim_at(n) + N.base.dim_at(n - 1)
            cols = M.base.dim_at(n + 1) + N.base.dim_at(n)
            if rows == 0 or cols == 0:
                continue
            ents = {}
            for (r, c), v in M.i_at(t, n + 1).entries.items():
                ents[(r, c)] = sgn * v
            for (r, c), v in N.i_at(t, n).entries.items():
                ents[(M.base.dim_at(n) + r, M.base.dim_at(n + 1) + c)] = v
            m = Matrix(rows, cols, ents)
            if not m.is_zero():
                per[n] = m
        i_maps[t] = per
    return HComplex(base, i_maps)


def h_tensor(a: HComplex, b: HComplex) -> HComplex:
    base = tensor_complex(a.base, b.base)
    lay = TensorLayout(a.base, b.base)
    i_maps: Dict[int, Dict[int, Matrix]] = {}
    for t in range(base.pair.K.torus_rank):
        per = {}
        for n in sorted(lay.blocks):
            rows = lay.dim_at(n - 1)
            cols = lay.dim_at(n)
            if rows == 0 or cols == 0:
                continue
            ents: Dict = {}
            for i in lay.blocks[n]:
                j = n - i
                ia = a.i_at(t, i)
                if not ia.is_zero() and (n - 1, i - 1) in lay.offsets:
                    _place_down(lay, n, i, kron(ia, Matrix.identity(b.base.dim_at(j))),
                                i - 1, ents)
                ib = b.i_at(t, j)
                if not ib.is_zero() and (n - 1, i) in lay.offsets:
                    sgn = as_scalar(signs.tensor_contraction_right_sign(i))
                    _place_down(lay, n, i,
                                kron(Matrix.identity(a.base.dim_at(i)), ib).scale(sgn),
                                i, ents)
            m = Matrix(rows, cols, ents)
            if not m.is_zero():
                per[n] = m
        i_maps[t] = per
    return HComplex(base, i_maps)


def _place_down(lay: TensorLayout, n: int, i: int, block: Matrix, target_i: int,
                ents: Dict) -> None:
    """Like TensorLayout.place but for degree-lowering maps (into degree n-1)."""
    roff = lay.offsets[(n - 1, target_i)]
    coff = lay.offsets[(n, i)]
    for (r, c), v in block.entries.items():
        key = (roff + r, coff + c)
        s = ents.get(key, as_scalar(0)) + v
        if s.is_zero():
            ents.pop(key, None)
        else:
            ents[key] = s


def zero_contraction(base: Complex) -> HComplex:
    """Any complex of genuine modules is an h-complex with i = 0."""
    return HComplex(base, {})
