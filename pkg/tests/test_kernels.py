from __future__ import annotations

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critsurf import _pykernels, kernels, samples
from critsurf.census import enumerate_plane_maps

try:
    from critsurf import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


@st.composite
def graphs_with_domains(draw):
    n = draw(st.integers(1, 14))
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    dom = draw(st.lists(st.integers(0, 7), min_size=n, max_size=n))
    return adj, dom


@needs_c
@settings(max_examples=300, deadline=None)
@given(graphs_with_domains())
def test_solve_backends_agree(case):
    adj, dom = case
    a = _pykernels.solve(adj, dom)
    b = _ckernels.solve(adj, dom)
    assert a == b
    if a is not None:
        for v in range(len(adj)):
            assert dom[v] >> (a[v] - 1) & 1
            m = adj[v]
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                assert a[u] != a[v]


@needs_c
@settings(max_examples=100, deadline=None)
@given(graphs_with_domains(), st.data())
def test_extends_batch_backends_agree(case, data):
    adj, _ = case
    n = len(adj)
    ring = data.draw(st.lists(st.integers(0, n - 1), unique=True, max_size=min(n, 5)))
    weak = [data.draw(st.booleans()) for _ in ring]
    cols = data.draw(st.lists(st.tuples(*[st.integers(1, 3) for _ in ring]), max_size=6))
    base = [7] * n
    assert _pykernels.extends_batch(adj, base, ring, weak, cols) == _ckernels.extends_batch(adj, base, ring, weak, cols)


@needs_c
def test_canonical_code_backends_agree():
    for M in enumerate_plane_maps(4, 7, 9):
        G = M.to_embedded()
        color = bytearray(len(G.t0))
        starts = range(len(G.t0))
        assert _pykernels.canonical_code(G.t0, G.t1, G.t2, color, starts) == \
            _ckernels.canonical_code(G.t0, G.t1, G.t2, color, starts)
    G = samples.groetzsch_projective()
    color = bytearray(len(G.t0))
    assert _pykernels.canonical_code(G.t0, G.t1, G.t2, color, range(len(G.t0))) == \
        _ckernels.canonical_code(G.t0, G.t1, G.t2, color, range(len(G.t0)))


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    env.pop("CRITSURF_PURE_PYTHON", None)
    if env_value is not None:
        env["CRITSURF_PURE_PYTHON"] = env_value
    out = subprocess.run([sys.executable, "-c", "from critsurf import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_pure_python_switch():
    assert _backend_in_subprocess("1") == "python"
    expect = "cython" if _ckernels is not None else "python"
    assert _backend_in_subprocess(None) == expect
    assert kernels.BACKEND in ("python", "cython")
