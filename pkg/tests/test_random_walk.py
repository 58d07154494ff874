import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealflow import graph, ideal_flow as ifl, random_walk as rw
from idealflow.errors import DegenerateError, ReducibleError
from idealflow.matrix import SquareMatrix

from conftest import RUNNING_EDGES, RUNNING_FLOW, RUNNING_S

R = SquareMatrix.from_rows
TWO_CYCLE = R([[0, 1], [1, 0]])


def two_cycle_graph():
    return graph.from_edge_list([(0, 1), (1, 0)])


def test_two_cycle_deterministic_counts():
    counts = rw.simulate(two_cycle_graph(), TWO_CYCLE, rw.SimulationConfig(1, 4, seed=0, start=(1, 0)))
    assert counts.counts.tolist() == [[0, 2], [2, 0]]


@settings(max_examples=30)
@given(st.integers(1, 20), st.integers(1, 50), st.integers(0, 2**32))
def test_count_total_and_imbalance(agents, steps, seed):
    g = graph.from_edge_list(RUNNING_EDGES)
    c = rw.simulate(g, R(RUNNING_S), rw.SimulationConfig(agents, steps, seed))
    assert c.counts.sum() == agents * steps == c.total
    # each agent's walk is a path: it unbalances at most its start and end node by one
    assert (c.imbalance() <= agents).all()
    assert (c.counts[np.array(R(RUNNING_S).to_numpy()) == 0] == 0).all()


def test_seed_determinism_and_independence():
    g = graph.from_edge_list(RUNNING_EDGES)
    cfg = rw.SimulationConfig(10, 200, seed=42)
    a = rw.simulate(g, R(RUNNING_S), cfg).counts
    b = rw.simulate(g, R(RUNNING_S), cfg).counts
    c = rw.simulate(g, R(RUNNING_S), rw.SimulationConfig(10, 200, seed=43)).counts
    assert (a == b).all() and not (a == c).all()


def test_agent_streams_do_not_depend_on_batch_size():
    # agent k draws the same path whether run alone or with others
    g = graph.from_edge_list(RUNNING_EDGES)
    one = rw.simulate(g, R(RUNNING_S), rw.SimulationConfig(1, 100, seed=5)).counts
    assert np.array_equal(rw.agent_stream(5, 0).random(3), rw.agent_stream(5, 0).random(3))
    many = [rw.simulate(g, R(RUNNING_S), rw.SimulationConfig(k, 100, seed=5)).counts for k in (1, 2)]
    assert (many[0] == one).all() and (many[1] >= one).all()


@pytest.mark.parametrize("counts, expected", [
    ([[0, 5, 5], [0, 0, 5], [10, 0, 0]], RUNNING_FLOW),
    ([[0, 3], [3, 0]], [[0, 1], [1, 0]]),
    ([[2, 4], [4, 8]], [[1, 2], [2, 4]]),
])
def test_relative_flow(counts, expected):
    assert rw.relative_flow(np.array(counts)) == R(expected).to_float()


def test_relative_flow_empty():
    with pytest.raises(DegenerateError):
        rw.relative_flow(np.zeros((2, 2), dtype=int))


def test_empirical_transition_frequencies_match_chain():
    g = graph.from_edge_list(RUNNING_EDGES)
    s = R(RUNNING_S).to_numpy()
    c = rw.simulate(g, R(RUNNING_S), rw.SimulationConfig(100, 10_000, seed=1)).counts
    visits = c.sum(axis=1)
    for i in range(3):
        for j in range(3):
            p = s[i, j]
            se = np.sqrt(p * (1 - p) / visits[i]) if 0 < p < 1 else 0.0
            assert abs(c[i, j] / visits[i] - p) <= 3 * se + 1e-15


def test_two_cycle_converges_exactly_for_even_budgets():
    ref = ifl.ideal_flow_from_stochastic(TWO_CYCLE)
    rows = rw.convergence_report(two_cycle_graph(), TWO_CYCLE, [200, 2000], ref, seed=3)  # T = 2, 20
    assert [r.max_rel_err for r in rows] == [0.0, 0.0]


def test_tiny_budget_has_large_error():
    g = graph.from_edge_list(RUNNING_EDGES)
    ref = ifl.ideal_flow_from_stochastic(R(RUNNING_S))
    (row,) = rw.convergence_report(g, R(RUNNING_S), [1], ref, seed=0)
    assert row.max_rel_err >= 0.5


def test_convergence_report_and_csv():
    g = graph.from_edge_list(RUNNING_EDGES)
    ref = ifl.ideal_flow_from_stochastic(R(RUNNING_S))
    rows = rw.convergence_report(g, R(RUNNING_S), [1000, 100_000], ref, seed=2)
    assert rows[-1].max_rel_err < rows[0].max_rel_err
    text = rw.report_to_csv(rows)
    assert text.splitlines()[0] == "budget,max_rel_err,mean_rel_err"
    assert text.splitlines()[1].startswith("1000,")
    with pytest.raises(ValueError):
        rw.convergence_report(g, R(RUNNING_S), [100, 100], ref)


@pytest.mark.parametrize("budget, agents, expected", [
    (1000, 100, (100, 10)), (7, 100, (7, 1)), (101, 100, (1, 101)), (1, 100, (1, 1)),
])
def test_split_budget(budget, agents, expected):
    assert rw.split_budget(budget, agents) == expected


def test_simulation_input_errors():
    g = graph.from_edge_list(RUNNING_EDGES)
    with pytest.raises(ValueError):
        # probability on a link the network lacks
        rw.simulate(g, R([[0, 1, 0], [0, 0, 1], [0, 1, 0]]), rw.SimulationConfig(1, 1))
    reducible = graph.from_edge_list([(0, 0), (1, 1)])
    with pytest.raises(ReducibleError):
        rw.simulate(reducible, SquareMatrix.identity(2), rw.SimulationConfig(1, 1))
    with pytest.raises(ValueError):
        rw.SimulationConfig(0, 5)
    with pytest.raises(ValueError):
        rw.SimulationConfig(1, 5, start=(0.5, 0.6))
