"""Property-based checks of the numeric invariants."""

import math

from hypothesis import given, settings, strategies as st

from chargediff.diffusion import (
    ChargeState,
    DiffusionConfig,
    Variant,
    excess_total,
    init_state,
    is_active,
    step,
    step_lazy_walk,
)
from chargediff.distsim import run_distributed
from chargediff.engine import run_query, should_stop
from chargediff.graph import from_edges, parse_edge_list, serialize_edge_list

SETTINGS = dict(max_examples=60, deadline=None)
POW2_WEIGHTS = (0.25, 0.5, 1.0, 2.0, 4.0)


@st.composite
def graphs(draw, max_n=10, directed=None, weighted=False):
    n = draw(st.integers(min_value=2, max_value=max_n))
    if directed is None:
        directed = draw(st.booleans())
    if directed:
        pool = [(i, j) for i in range(n) for j in range(n)]
    else:
        pool = [(i, j) for i in range(n) for j in range(i, n)]
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, min_size=1, max_size=len(pool)))
    if weighted:
        weights = draw(
            st.lists(st.sampled_from(POW2_WEIGHTS), min_size=len(chosen), max_size=len(chosen))
        )
    else:
        weights = [1.0] * len(chosen)
    edges = [(u, v, w) for (u, v), w in zip(chosen, weights)]
    return from_edges(edges, directed=directed)


@st.composite
def configs(draw):
    variant = draw(st.sampled_from(list(Variant)))
    if variant is Variant.LAZY_WALK:
        return DiffusionConfig(variant=variant)
    eps = draw(st.floats(min_value=0.01, max_value=0.5, allow_nan=False))
    alpha = draw(st.floats(min_value=0.05, max_value=0.95, allow_nan=False))
    return DiffusionConfig(alpha=alpha, epsilon=eps, variant=variant, delta=eps / 100)


@given(g=graphs(), cfg=configs(), seed_frac=st.floats(0, 0.999), steps=st.integers(1, 8))
@settings(**SETTINGS)
def test_conservation_and_nonnegativity(g, cfg, seed_frac, steps):
    state = init_state(g, int(seed_frac * g.node_count))
    for _ in range(steps):
        state = step(state, g, cfg)
        total = sum(state.x.values())
        assert abs(total - 1.0) <= 1e-12
        assert all(v >= 0.0 for v in state.x.values())


@given(g=graphs(weighted=True), directed=st.booleans())
@settings(**SETTINGS)
def test_serialize_parse_round_trip(g, directed):
    text = serialize_edge_list(g)
    assert parse_edge_list(text, directed=g.directed) == g


@given(g=graphs(), charges=st.lists(st.floats(0.0, 0.05), min_size=1, max_size=10))
@settings(**SETTINGS)
def test_fixed_point_when_nobody_active(g, charges):
    cfg = DiffusionConfig(alpha=0.5, epsilon=0.1)
    x = {i % g.node_count: c for i, c in enumerate(charges)}
    before = ChargeState(x=dict(x), t=0, ever_active=set(), seed=0)
    after = step(before, g, cfg)
    assert after.x == x


@given(g=graphs(), cfg=configs(), steps=st.integers(1, 10))
@settings(**SETTINGS)
def test_excess_is_nonincreasing(g, cfg, steps):
    if cfg.variant is not Variant.EXCESS:
        cfg = DiffusionConfig(
            alpha=cfg.alpha if cfg.variant is not Variant.LAZY_WALK else 0.5,
            epsilon=0.1,
            variant=Variant.EXCESS,
            delta=1e-3,
        )
    state = init_state(g, 0)
    prev = excess_total(state, cfg)
    for _ in range(steps):
        state = step(state, g, cfg)
        cur = excess_total(state, cfg)
        assert cur <= prev + 1e-12
        prev = cur


@given(g=graphs(max_n=8), steps=st.integers(1, 12))
@settings(**SETTINGS)
def test_zero_threshold_retention_is_lazy_walk(g, steps):
    cfg = DiffusionConfig(alpha=0.5, epsilon=0.0, variant=Variant.RETENTION)
    ret = init_state(g, 0)
    lazy = init_state(g, 0)
    for _ in range(steps):
        ret = step(ret, g, cfg)
        lazy = step_lazy_walk(lazy, g)
        assert ret.x == lazy.x


@given(g=graphs(), cfg=configs(), steps=st.integers(1, 12))
@settings(**SETTINGS)
def test_activated_nodes_hold_the_retained_floor(g, cfg, steps):
    if cfg.variant is Variant.LAZY_WALK:
        return
    floor = (1.0 - cfg.alpha) * cfg.epsilon
    state = init_state(g, 0)
    activated = set(state.ever_active)
    for _ in range(steps):
        state = step(state, g, cfg)
        for node in activated:
            assert state.x.get(node, 0.0) > floor
        activated |= {i for i, v in state.x.items() if is_active(v, cfg)}


@given(g=graphs(max_n=12), cfg=configs(), seed_frac=st.floats(0, 0.999))
@settings(max_examples=40, deadline=None)
def test_distributed_matches_centralized(g, cfg, seed_frac):
    cfg = DiffusionConfig(
        alpha=cfg.alpha,
        epsilon=cfg.epsilon,
        variant=cfg.variant,
        delta=cfg.delta,
        max_iterations=60,
    )
    seed = int(seed_frac * g.node_count)
    central = run_query(g, seed, cfg)
    distributed, _ = run_distributed(g, seed, cfg)
    assert distributed.final_charges == central.final_charges
    assert distributed.iterations == central.iterations
    assert distributed.nn_set == central.nn_set


@given(g=graphs(directed=True, weighted=True), steps=st.integers(1, 10))
@settings(**SETTINGS)
def test_weight_scaling_leaves_trajectories_identical(g, steps):
    scaled = from_edges(
        [
            (i, j, w * 7.3)
            for i in range(g.node_count)
            for j, w in g.adjacency[i]
        ],
        directed=True,
    )
    cfg = DiffusionConfig(alpha=0.5, epsilon=0.07)
    a = init_state(g, 0)
    b = init_state(scaled, 0)
    for _ in range(steps):
        a = step(a, g, cfg)
        b = step(b, scaled, cfg)
        assert a.x == b.x


@given(g=graphs(), cfg=configs())
@settings(**SETTINGS)
def test_terminated_state_is_a_fixed_point_of_should_stop(g, cfg):
    cfg = DiffusionConfig(
        alpha=cfg.alpha, epsilon=cfg.epsilon, variant=cfg.variant,
        delta=cfg.delta, max_iterations=80,
    )
    result = run_query(g, 0, cfg)
    if result.terminated and cfg.variant is not Variant.LAZY_WALK:
        assert should_stop(result.final_charges, g, cfg)
        state = ChargeState(
            x=dict(result.final_charges), t=result.iterations,
            ever_active=set(result.nn_set), seed=0,
        )
        if cfg.variant is Variant.RETENTION:
            after = step(state, g, cfg)
            assert after.x == state.x


def test_masses_survive_float_stress():
    # Long run on an irregular graph; drift must stay at rounding scale.
    g = from_edges(
        [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 0, 1.0),
         (0, 2, 1.0), (1, 3, 1.0)],
    )
    cfg = DiffusionConfig(alpha=0.51, epsilon=0.13)
    state = init_state(g, 0)
    for _ in range(300):
        state = step(state, g, cfg)
    assert math.isclose(sum(state.x.values()), 1.0, abs_tol=1e-12)
