import cmath
import math
import random

import numpy as np
import pytest

from cftorus.discs import (
    BlaschkeComponent,
    BlaschkeFactor,
    disc_make,
    random_disc,
)
from cftorus.maslov import (
    ChartError,
    FrameError,
    FrameLoop,
    LagrangianFrame,
    UndersampledLoopError,
    b_map,
    diag_phase_frame,
    disc_boundary_maslov,
    loop_maslov,
    winding_number,
)


def random_unitary(rng, n):
    state = np.random.RandomState(rng.randint(0, 2 ** 31))
    q, r = np.linalg.qr(state.randn(n, n) + 1j * state.randn(n, n))
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


# -- the plane invariant ---------------------------------------------------------

def test_b_map_identity():
    assert np.allclose(b_map(LagrangianFrame(np.eye(3))), np.eye(3))


def test_b_map_diagonal_phases_square():
    phases = np.array([0.3, 1.1, -0.4])
    d = b_map(diag_phase_frame(phases))
    assert np.allclose(d, np.diag(np.exp(2j * phases)))


def test_b_map_kills_orthogonal_ambiguity():
    theta = 0.77
    rot = np.array([[math.cos(theta), -math.sin(theta)],
                    [math.sin(theta), math.cos(theta)]])
    assert np.allclose(b_map(LagrangianFrame(rot.astype(complex))), np.eye(2))


def test_b_map_invariants_on_random_unitaries():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(1, 5)
        d = b_map(LagrangianFrame(random_unitary(rng, n)))
        assert np.allclose(d @ d.conj(), np.eye(n), atol=1e-9)
        assert np.allclose(d, d.T, atol=1e-9)


def test_frame_must_be_unitary():
    with pytest.raises(FrameError):
        LagrangianFrame(np.array([[2.0, 0], [0, 1.0]], dtype=complex))


# -- winding numbers ----------------------------------------------------------------

def test_winding_unit_circle():
    t = np.arange(64) / 64
    assert winding_number(np.exp(2j * np.pi * t)) == 1


def test_winding_double_reverse():
    t = np.arange(64) / 64
    assert winding_number(np.exp(-4j * np.pi * t)) == -2


def test_winding_of_blaschke_products():
    rng = random.Random(12)
    t = np.exp(2j * np.pi * np.arange(256) / 256)
    for degree in range(6):
        factors = tuple(
            BlaschkeFactor(cmath.rect(0.8 * math.sqrt(rng.random()),
                                      2 * math.pi * rng.random()))
            for _ in range(degree))
        comp = BlaschkeComponent(rng.random(), factors)
        assert winding_number(comp.eval_many(t)) == degree


def test_winding_rejects_near_zero_samples():
    samples = np.array([1.0, 1e-12, 1.0, 1.0], dtype=complex)
    with pytest.raises(ValueError):
        winding_number(samples)


def test_winding_rejects_coarse_steps():
    # degree 3 at 6 samples per turn puts steps at exactly pi
    t = np.arange(6) / 6
    with pytest.raises(UndersampledLoopError):
        winding_number(np.exp(6j * np.pi * t))


# -- frame loops ----------------------------------------------------------------------

def _diag_loop(windings, num=128):
    t = np.arange(num) / num
    frames = tuple(
        diag_phase_frame([math.pi * w * tk for w in windings]) for tk in t)
    return FrameLoop(frames)


def test_constant_loop_has_index_zero():
    frames = (LagrangianFrame(np.eye(2)),) * 16
    assert loop_maslov(FrameLoop(frames)) == 0


def test_half_turn_phase_loop_has_index_one():
    # diag(e^{i pi t}, 1, .., 1) closes as planes and winds once
    assert loop_maslov(_diag_loop([1, 0, 0])) == 1


def test_loop_index_adds_windings():
    assert loop_maslov(_diag_loop([2, -1, 3])) == 4


def test_loop_additive_under_splice():
    rng = random.Random(8)
    for _ in range(50):
        size = rng.randint(1, 3)
        w1 = [rng.randint(-3, 3) for _ in range(size)]
        w2 = [rng.randint(-3, 3) for _ in range(size)]
        loop1 = _diag_loop(w1)
        loop2 = _diag_loop(w2)
        spliced = FrameLoop(loop1.frames + loop2.frames)
        assert (loop_maslov(spliced)
                == loop_maslov(loop1) + loop_maslov(loop2))


def test_loop_invariant_under_fixed_orthogonal_change():
    rng = random.Random(14)
    theta = 1.1
    orth = np.array([[math.cos(theta), -math.sin(theta)],
                     [math.sin(theta), math.cos(theta)]], dtype=complex)
    loop = _diag_loop([2, -1])
    changed = FrameLoop(tuple(LagrangianFrame(f.matrix @ orth)
                              for f in loop.frames))
    assert loop_maslov(changed) == loop_maslov(loop)


# -- disc boundaries --------------------------------------------------------------------

def standard_disc(i, n):
    comps = [BlaschkeComponent(0.0, (BlaschkeFactor(0j),) if j == i else ())
             for j in range(n + 1)]
    return disc_make(comps)


def test_standard_disc_numeric_index_is_two():
    assert disc_boundary_maslov(standard_disc(1, 3)) == 2


def test_degree_three_component_gives_six():
    comps = [BlaschkeComponent(),
             BlaschkeComponent(0.2, tuple(BlaschkeFactor(0.3 * 1j ** k)
                                          for k in range(3))),
             BlaschkeComponent(1.0)]
    assert disc_boundary_maslov(disc_make(comps)) == 6


def test_constant_disc_has_index_zero():
    d = disc_make([BlaschkeComponent(0.4), BlaschkeComponent(1.7)])
    assert disc_boundary_maslov(d) == 0


def test_chart_error_when_zeroth_coordinate_vanishes():
    with pytest.raises(ChartError):
        disc_boundary_maslov(standard_disc(0, 2))


def test_numeric_equals_combinatorial_on_random_discs():
    from cftorus.discs import maslov_index

    rng = random.Random(99)
    for _ in range(50):
        d = random_disc(rng, rng.randint(1, 4), max_degree=4, chart0=True)
        assert disc_boundary_maslov(d) == maslov_index(d)


def test_zero_near_boundary_forces_adaptive_resampling():
    # phase speed ~ (1+r)/(1-r) at radius r = 0.98 overwhelms the default
    # 256-point grid, so the doubling path must engage and still land on 2
    comps = [BlaschkeComponent(),
             BlaschkeComponent(0.1, (BlaschkeFactor(0.98 + 0j),)),
             BlaschkeComponent(0.4)]
    d = disc_make(comps)
    assert disc_boundary_maslov(d) == 2
    with pytest.raises(UndersampledLoopError):
        disc_boundary_maslov(d, max_samples=256)
