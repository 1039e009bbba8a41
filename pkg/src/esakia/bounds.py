"""Size bounds for the exhaustive searches, overridable via environment.

Everything in this package is brute force by design; these caps keep the
exponential sweeps from being invoked on instances they cannot finish.
Each bound can be overridden by setting the corresponding environment
variable to an integer, e.g. ``ESAKIA_POSET_BOUND=7``.
"""

import os

_DEFAULTS = {
    # largest n for enumerate_posets(n)
    "ESAKIA_POSET_BOUND": 6,
    # largest point count for literal all-subsets topology checks
    "ESAKIA_LITERAL_BOUND": 10,
    # largest lattice carrier for the subset-scan nucleus oracle
    "ESAKIA_ORACLE_BOUND": 16,
    # largest n for enumerate_topologies(n)
    "ESAKIA_TOPOLOGY_BOUND": 4,
    # largest dual-space size for building the assembly as a lattice
    "ESAKIA_ASSEMBLY_BOUND": 8,
    # how many assembly steps tower() may iterate
    "ESAKIA_TOWER_BOUND": 2,
}


def _get(name: str) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return _DEFAULTS[name]
    return int(raw)


def poset_bound() -> int:
    return _get("ESAKIA_POSET_BOUND")


def literal_bound() -> int:
    return _get("ESAKIA_LITERAL_BOUND")


def oracle_bound() -> int:
    return _get("ESAKIA_ORACLE_BOUND")


def topology_bound() -> int:
    return _get("ESAKIA_TOPOLOGY_BOUND")


def assembly_bound() -> int:
    return _get("ESAKIA_ASSEMBLY_BOUND")


def tower_bound() -> int:
    return _get("ESAKIA_TOWER_BOUND")
