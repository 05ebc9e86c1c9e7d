import pytest

import equimetric as eq


def pipeline(name, params, mode="general", scale=1.0, enlargement=1.0):
    """Scenario -> quotient -> slices -> (orbital) -> lift, returning all
    intermediates for assertions."""
    gs = eq.generate_scenario(name, params)
    quotient = eq.quotient_metric(gs, eq.compute_orbits(gs))
    family = eq.build_slice_family(gs, quotient)
    d_G = eq.group_metric(gs.group, "discrete", scale=scale)
    d_O = None
    if mode == "general":
        d_O = eq.build_orbital_metric(gs, quotient, family, d_G)
    graph = eq.build_allowability_graph(
        gs, quotient, family=family, d_O=d_O, mode=mode, enlargement_factor=enlargement
    )
    lifted = eq.lift_metric(graph)
    return {
        "gspace": gs, "quotient": quotient, "family": family,
        "d_G": d_G, "d_O": d_O, "graph": graph, "lifted": lifted,
    }


@pytest.fixture(scope="session")
def circle12():
    gs = eq.generate_scenario("circle", {"n": 12, "k": 3})
    quotient = eq.quotient_metric(gs, eq.compute_orbits(gs))
    family = eq.build_slice_family(gs, quotient)
    return gs, quotient, family


@pytest.fixture(scope="session")
def reflection5():
    gs = eq.generate_scenario("reflection", {"m": 2, "h": 1.0})
    quotient = eq.quotient_metric(gs, eq.compute_orbits(gs))
    family = eq.build_slice_family(gs, quotient)
    return gs, quotient, family
