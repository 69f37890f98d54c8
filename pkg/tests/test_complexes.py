"""Complex constructions and their sign conventions."""

import random

from hch.complexes import (
    Complex,
    ComplexMap,
    chain_maps,
    cone,
    hom_complex,
    homotopy_classes_dim,
    plain_space,
    single_term,
    tensor_complex,
    trivial_pair,
)
from hch.linalg import Matrix
from hch.scalars import Scalar


def plain_complex(dims, diffs):
    """Complex of plain spaces from dim list (starting at degree 0) and diff rows."""
    terms = {n: plain_space(d) for n, d in enumerate(dims) if d}
    dmats = {}
    for n, rows in diffs.items():
        m = Matrix.from_rows(rows)
        if not m.is_zero():
            dmats[n] = m
    return Complex(trivial_pair(), terms, dmats)


def random_complex(rng, max_terms=3, max_dim=3):
    """A random bounded complex with exact d^2 = 0 (build d, then correct)."""
    k = rng.randint(1, max_terms)
    dims = [rng.randint(0, max_dim) for _ in range(k + 1)]
    terms = {n: plain_space(d) for n, d in enumerate(dims) if d}
    diffs = {}
    prev = None
    for n in range(k):
        rows, cols = dims[n + 1], dims[n]
        if rows == 0 or cols == 0:
            prev = None
            continue
        m = Matrix(rows, cols, {
            (r, c): Scalar(rng.randint(-2, 2), rng.randint(-1, 1))
            for r in range(rows) for c in range(cols) if rng.random() < 0.6
        })
        if prev is not None:
            # force d^n to kill the image of d^{n-1}: compose with a projector
            # cheap trick: zero out the composite by subtracting a solve; instead
            # just use m = 0 when composition would fail
            if not (m @ prev).is_zero():
                m = Matrix.zeros(rows, cols)
        if not m.is_zero():
            diffs[n] = m
            prev = m
        else:
            prev = None
    return Complex(trivial_pair(), terms, diffs)


def test_check_complex_basic():
    c = plain_complex([1], {})
    assert c.check_complex().ok
    c2 = plain_complex([1, 1], {0: [[1]]})
    assert c2.check_complex().ok
    bad = plain_complex([1, 1, 1], {0: [[1]], 1: [[1]]})
    assert not bad.check_complex().ok


def test_homology_examples():
    exact = plain_complex([1, 1], {0: [[1]]})
    h = exact.homology()
    assert h.dims == {0: 0, 1: 0}

    lazy = plain_complex([2, 3], {})
    assert lazy.homology().dims == {0: 2, 1: 3}

    koszul = plain_complex([2, 2], {0: [[0, 0], [1, 0]]})
    assert koszul.homology().dims == {0: 1, 1: 1}
    rep0 = koszul.homology().representatives[0]
    assert len(rep0) == 1


def test_euler_characteristic_matches_homology():
    rng = random.Random(3)
    for _ in range(50):
        c = random_complex(rng)
        assert c.check_complex().ok
        h = c.homology()
        assert c.euler_characteristic() == h.euler_characteristic()


def test_shift_involution_and_sign():
    c = plain_complex([2, 2, 1], {0: [[0, 0], [1, 0]], 1: [[1, 0]]})
    assert c.check_complex().ok
    s = c.shift(1)
    assert s.check_complex().ok
    assert s.diff(-1) == -c.diff(0)
    back = s.shift(-1)
    assert back.diffs == c.diffs and back.degrees() == c.degrees()
    # homology reindexes
    assert s.homology().dims == {n - 1: d for n, d in c.homology().dims.items()}


def test_cone_of_identity_is_exact():
    c = plain_complex([2, 2], {0: [[0, 0], [1, 0]]})
    cn, incl, proj = cone(ComplexMap.identity(c))
    assert cn.check_complex().ok
    assert incl.validate().ok and proj.validate().ok
    assert all(d == 0 for d in cn.homology().dims.values())


def test_cone_of_zero_splits():
    m = plain_complex([1, 1], {0: [[1]]})
    n = plain_complex([2], {})
    cn, _, _ = cone(ComplexMap.zero(m, n))
    assert cn.check_complex().ok
    # degreewise M[1] (+) N
    assert cn.dim_at(-1) == 1 and cn.dim_at(0) == 1 + 2
    d = cn.diff(-1)
    assert d.rows == 3 and d.cols == 1
    assert d[(0, 0)] == Scalar(-1) and len(d.entries) == 1


def test_cone_euler_additivity():
    rng = random.Random(5)
    for _ in range(20):
        m = random_complex(rng)
        n = random_complex(rng)
        cn, _, _ = cone(ComplexMap.zero(m, n))
        assert cn.euler_characteristic() == n.euler_characteristic() - m.euler_characteristic()


def test_tensor_unit_and_exactness():
    c = plain_complex([2, 2], {0: [[0, 0], [1, 0]]})
    unit = single_term(plain_space(1))
    t = tensor_complex(c, unit)
    assert t.check_complex().ok
    assert [t.dim_at(n) for n in (0, 1)] == [2, 2]
    assert t.diff(0) == c.diff(0)

    e = plain_complex([1, 1], {0: [[1]]})
    sq = tensor_complex(e, e)
    assert sq.check_complex().ok
    assert all(d == 0 for d in sq.homology().dims.values())


def test_tensor_braiding_is_chain_map():
    rng = random.Random(9)
    for _ in range(10):
        m = random_complex(rng, max_terms=2, max_dim=2)
        n = random_complex(rng, max_terms=2, max_dim=2)
        mn = tensor_complex(m, n)
        nm = tensor_complex(n, m)
        maps = {}
        from hch.complexes import TensorLayout
        lmn, lnm = TensorLayout(m, n), TensorLayout(n, m)
        for deg in lmn.blocks:
            rows, cols = lnm.dim_at(deg), lmn.dim_at(deg)
            if rows == 0 or cols == 0:
                continue
            ents = {}
            for i in lmn.blocks[deg]:
                j = deg - i
                sgn = Scalar(-1) if (i * j) % 2 else Scalar(1)
                for a in range(m.dim_at(i)):
                    for b in range(n.dim_at(j)):
                        r = lnm.offsets[(deg, j)] + b * m.dim_at(i) + a
                        c = lmn.offsets[(deg, i)] + a * n.dim_at(j) + b
                        ents[(r, c)] = sgn
            maps[deg] = Matrix(rows, cols, ents)
        swap = ComplexMap(mn, nm, maps)
        assert swap.validate().ok


def test_hom_complex_basics():
    unit = single_term(plain_space(1))
    h = hom_complex(unit, unit)
    assert h.degrees() == [0] and h.dim_at(0) == 1
    assert homotopy_classes_dim(unit, unit) == 1


def test_chain_maps_against_direct_enumeration():
    rng = random.Random(21)
    for _ in range(10):
        m = random_complex(rng, max_terms=2, max_dim=2)
        n = random_complex(rng, max_terms=2, max_dim=2)
        cm = chain_maps(m, n)
        for f in cm:
            fmap = ComplexMap(m, n, f)
            assert fmap.validate().ok
        # independent count: solve the commuting constraints directly
        from hch.linalg import kernel_basis
        rows = []
        total = sum(m.dim_at(i) * n.dim_at(i) for i in range(0, 4))
        # reuse hom machinery is cheating; enumerate entries manually
        coords = {}
        off = 0
        for i in range(0, 4):
            for r in range(n.dim_at(i)):
                for c in range(m.dim_at(i)):
                    coords[(i, r, c)] = off
                    off += 1
        eqs = []
        for i in range(0, 4):
            dn, dm = n.diff(i), m.diff(i)
            for r in range(n.dim_at(i + 1)):
                for c in range(m.dim_at(i)):
                    row = {}
                    for b in range(n.dim_at(i)):
                        v = dn[(r, b)]
                        if not v.is_zero():
                            row[coords[(i, b, c)]] = row.get(coords[(i, b, c)], Scalar(0)) + v
                    for b in range(m.dim_at(i + 1)):
                        v = dm[(b, c)]
                        if not v.is_zero():
                            k = coords[(i + 1, r, b)]
                            row[k] = row.get(k, Scalar(0)) - v
                    row = {k: v for k, v in row.items() if not v.is_zero()}
                    if row:
                        eqs.append(row)
        ents = {(ri, k): v for ri, row in enumerate(eqs) for k, v in row.items()}
        mat = Matrix(len(eqs), off, ents)
        assert len(cm) == len(kernel_basis(mat))


def test_homotopy_kills_cone_of_identity():
    unit = single_term(plain_space(1))
    cn, _, _ = cone(ComplexMap.identity(unit))
    assert homotopy_classes_dim(cn, unit) == 0
    assert homotopy_classes_dim(unit, cn) == 0
