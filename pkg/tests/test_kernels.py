"""Backend agreement for the permutation-sum and permanent kernels."""

import numpy as np
import pytest

from anyonsim import kernels
from anyonsim.kernels import pykernels
from oracles import naive_determinant, naive_immanant, random_complex

try:
    from anyonsim.kernels import _ckernels
except ImportError:
    _ckernels = None

PHIS = [0.0, np.pi, np.pi / 4, 1.234, 2.5]

BACKENDS = [pytest.param(pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="compiled"))


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", range(1, 7))
def test_immanant_against_naive_enumeration(backend, n, rng):
    a = random_complex(rng, n)
    for phi in PHIS:
        expected = naive_immanant(a, phi)
        assert backend.immanant_sum(a, phi) == pytest.approx(expected, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", range(1, 7))
def test_ryser_against_naive_enumeration(backend, n, rng):
    a = random_complex(rng, n)
    expected = naive_immanant(a, 0.0)
    assert backend.ryser_permanent(a) == pytest.approx(expected, rel=1e-10, abs=1e-12)


@pytest.mark.skipif(_ckernels is None, reason="compiled backend not built")
@pytest.mark.parametrize("n", range(1, 9))
def test_backends_agree(n, rng):
    a = random_complex(rng, n)
    for phi in PHIS:
        v_c = _ckernels.immanant_sum(a, phi)
        v_py = pykernels.immanant_sum(a, phi)
        assert v_c == pytest.approx(v_py, rel=1e-11, abs=1e-12)
    assert _ckernels.ryser_permanent(a) == pytest.approx(
        pykernels.ryser_permanent(a), rel=1e-11, abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_immanant_special_phases_match_permanent_and_determinant(backend, rng):
    for n in range(2, 9):
        a = random_complex(rng, n)
        perm = backend.ryser_permanent(a)
        det = naive_determinant(a) if n <= 6 else np.linalg.det(a)
        assert backend.immanant_sum(a, 0.0) == pytest.approx(perm, rel=1e-9)
        assert backend.immanant_sum(a, np.pi) == pytest.approx(det, rel=1e-9)


def test_streamed_permutations_match_cached_table(rng, monkeypatch):
    # the fallback streams permutations instead of caching the table above
    # a size threshold; both paths must agree
    a = random_complex(rng, 5)
    cached = pykernels.immanant_sum(a, 0.77)
    monkeypatch.setattr(pykernels, "_PERM_TABLE_LIMIT", 2)
    streamed = pykernels.immanant_sum(a, 0.77)
    assert streamed == pytest.approx(cached, rel=1e-12)


def test_phase_resynchronisation_path(rng):
    # 9! = 362880 permutations crosses the 2^16 resync interval several
    # times; both backends must still agree with the Gray-code permanent.
    a = random_complex(rng, 9)
    perm = kernels.ryser_permanent(a)
    assert kernels.immanant_sum(a, 0.0) == pytest.approx(perm, rel=1e-9)
    if _ckernels is not None:
        generic = _ckernels.immanant_sum(a, 0.37)
        assert generic == pytest.approx(pykernels.immanant_sum(a, 0.37), rel=1e-10)


@pytest.mark.parametrize("backend", BACKENDS)
def test_empty_and_single(backend):
    assert backend.immanant_sum(np.zeros((0, 0), dtype=complex), 1.0) == 1.0 + 0.0j
    assert backend.ryser_permanent(np.zeros((0, 0), dtype=complex)) == 1.0 + 0.0j
    a = np.array([[3.0 - 1.0j]])
    assert backend.immanant_sum(a, 2.0) == 3.0 - 1.0j
    assert backend.ryser_permanent(a) == 3.0 - 1.0j


def test_selected_backend_exports():
    assert kernels.BACKEND in ("compiled", "python")
    assert callable(kernels.immanant_sum)
    assert callable(kernels.ryser_permanent)
