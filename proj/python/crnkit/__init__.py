"""Reaction network census, conservation and equilibrium counting."""

import json

from . import _core
from ._core import CrnError, ParseError, network_fixtures, network_hash, numeric_fixtures

__all__ = [
    "CrnError",
    "ParseError",
    "census",
    "conserve",
    "count",
    "fixture_text",
    "network_fixtures",
    "network_hash",
    "numeric_fixtures",
]


def fixture_text(name):
    try:
        return _core.fixture_text(name)
    except IndexError as e:
        raise KeyError(str(e)) from None


def _source(network, fixture):
    if (network is None) == (fixture is None):
        raise ValueError("pass exactly one of network text or fixture name")
    return {"text": network or "", "fixture": fixture or ""}


def census(network=None, *, fixture=None, kinetics="mass-action", symbolic_outflows=False, max_dimension=16):
    """Sign census of the flow-augmented Jacobian determinant, as a dict."""
    return json.loads(_core.census_json(**_source(network, fixture), kinetics=kinetics,
                                        symbolic_outflows=symbolic_outflows, max_dimension=max_dimension))


def conserve(network=None, *, fixture=None, candidate=None):
    """Conserved mass vector (entries as rational strings) and optional candidate verdict."""
    if candidate is not None:
        candidate = [str(x) for x in candidate]
    return json.loads(_core.conserve_json(**_source(network, fixture), candidate=candidate))


def _broadcast(value):
    if value is None or isinstance(value, (list, tuple)):
        return None if value is None else [float(x) for x in value]
    return value


def count(network=None, *, fixture=None, rates=None, inflow=None, outflow=None, starts=200, seed=0,
          domain_mult=10.0, mass=None, audit_samples=2000):
    """Equilibria in the bounded domain with audit and homotopy cross-check, as a dict.

    Scalar inflow/outflow values broadcast to every species.
    """
    src = _source(network, fixture)
    inflow, outflow = _broadcast(inflow), _broadcast(outflow)
    if isinstance(inflow, (int, float)) or isinstance(outflow, (int, float)):
        n = len(_core.species(**src))
        if isinstance(inflow, (int, float)):
            inflow = [float(inflow)] * n
        if isinstance(outflow, (int, float)):
            outflow = [float(outflow)] * n
    return json.loads(_core.count_json(**src, rates=dict(rates or {}), inflow=inflow, outflow=outflow,
                                       starts=starts, seed=seed, domain_mult=domain_mult,
                                       mass=None if mass is None else [str(x) for x in mass],
                                       audit_samples=audit_samples))
