import json

import pytest
from hypothesis import given

from esakia.errors import LatticeError
from esakia.lattices import (
    FiniteLattice,
    birkhoff_lattice,
    booleanization,
    complement_of,
    completely_prime_filters,
    dense_above,
    essential_primes,
    is_boolean,
    is_scattered_frame,
    is_spatial,
    join_irreducibles,
    lattice_from_json_dict,
    meet_primes,
    min_primes,
    points,
    prime_filters,
    smallest_dense,
    validate,
    validate_order,
)
from esakia.posets import FinitePoset, iter_bits

from conftest import posets


def lat3() -> FiniteLattice:
    return lattice_from_json_dict(
        {"elements": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]]}
    )


def diamond() -> FiniteLattice:
    return birkhoff_lattice(FinitePoset.antichain(2))


def brute_filters(lat: FiniteLattice):
    """Subset scan: every nonempty up-closed meet-closed subset, with
    primality decided literally."""
    out = []
    for mask in range(1, 1 << lat.n):
        members = list(iter_bits(mask))
        if any(
            lat.leq(a, b) and not mask >> b & 1
            for a in members
            for b in range(lat.n)
        ):
            continue
        if any(not mask >> lat.meet(a, b) & 1 for a in members for b in members):
            continue
        proper = mask != (1 << lat.n) - 1
        prime = proper and all(
            not mask >> lat.join(a, b) & 1 or mask >> a & 1 or mask >> b & 1
            for a in range(lat.n)
            for b in range(lat.n)
        )
        cp = prime and all(
            not mask >> lat.join_all(iter_bits(s)) & 1 or s & mask
            for s in range(1 << lat.n)
        )
        out.append((mask, prime, cp))
    return out


def test_birkhoff_of_chain_is_chain():
    lat = birkhoff_lattice(FinitePoset.chain(2))
    assert lat.n == 3
    assert lat.leq(lat.bot, lat.top)
    assert validate(lat).ok


def test_birkhoff_of_antichain_is_diamond():
    lat = diamond()
    assert lat.n == 4
    atoms = [a for a in range(lat.n) if a not in (lat.bot, lat.top)]
    assert len(atoms) == 2
    a, b = atoms
    assert lat.meet(a, b) == lat.bot and lat.join(a, b) == lat.top
    assert is_boolean(lat)


def test_implication_table_on_three_chain():
    lat = lat3()
    z, m, o = (lat.index(x) for x in ("0", "m", "1"))
    assert lat.imp(z, z) == o
    assert lat.imp(m, z) == z
    assert lat.imp(o, z) == z
    assert lat.imp(o, m) == m
    assert lat.neg(z) == o
    assert lat.neg(m) == z
    assert lat.neg(o) == z


def test_implication_is_the_relative_pseudocomplement():
    lat = diamond()
    for a in range(lat.n):
        for b in range(lat.n):
            r = lat.imp(a, b)
            assert lat.leq(lat.meet(a, r), b)
            for x in range(lat.n):
                if lat.leq(lat.meet(a, x), b):
                    assert lat.leq(x, r)


def test_join_irreducibles_and_meet_primes_on_diamond():
    lat = diamond()
    atoms = {a for a in range(lat.n) if a not in (lat.bot, lat.top)}
    assert set(iter_bits(join_irreducibles(lat))) == atoms
    assert set(iter_bits(meet_primes(lat))) == atoms


def test_prime_filters_match_subset_scan():
    for lat in (lat3(), diamond(), birkhoff_lattice(FinitePoset.chain(3))):
        oracle = {
            (mask, cp) for mask, prime, cp in brute_filters(lat) if prime
        }
        got = {(f.members, f.completely_prime) for f in prime_filters(lat)}
        assert got == oracle
        cp_oracle = {mask for mask, prime, cp in brute_filters(lat) if cp}
        assert {f.members for f in completely_prime_filters(lat)} == cp_oracle


def test_finitely_prime_equals_completely_prime():
    for lat in (lat3(), diamond()):
        assert all(f.completely_prime for f in prime_filters(lat))
        assert len(points(lat)) == len(prime_filters(lat))


def test_filters_are_principal_at_join_irreducibles():
    lat = diamond()
    gens = {f.generator for f in prime_filters(lat)}
    assert gens == set(iter_bits(join_irreducibles(lat)))


def test_density_on_three_chain():
    lat = lat3()
    z, m, o = (lat.index(x) for x in ("0", "m", "1"))
    assert dense_above(lat, z) == [m, o]
    assert smallest_dense(lat, z) == m
    assert dense_above(lat, m) == [o]
    assert smallest_dense(lat, m) == o
    assert is_scattered_frame(lat)


def test_booleanization_of_three_chain_is_two():
    lat = lat3()
    b = booleanization(lat)
    assert bin(b.image_mask).count("1") == 2
    z, m, o = (lat.index(x) for x in ("0", "m", "1"))
    # double negation crushes the middle up to the top
    assert b.image_index[b.project[m]] == o
    assert b.image_index[b.project[z]] == z


def test_complements():
    lat = diamond()
    a, b = (x for x in range(lat.n) if x not in (lat.bot, lat.top))
    assert complement_of(lat, a) == b
    mid = lat3().index("m")
    assert complement_of(lat3(), mid) is None


def test_min_primes_meet_back_to_the_element():
    for lat in (lat3(), diamond(), birkhoff_lattice(FinitePoset.chain(3))):
        for a in range(lat.n):
            if a == lat.top:
                continue
            mins = min_primes(lat, a)
            assert mins
            assert lat.meet_all(iter_bits(mins)) == a
            rep = essential_primes(lat, a)
            assert rep.min_mask == mins and rep.meet_is_a
            assert rep.essential_mask  # some essential prime exists


def test_spatiality_of_finite_frames():
    for lat in (lat3(), diamond()):
        ok, witness = is_spatial(lat)
        assert ok and witness is None


def test_validate_order_flags_nondistributive():
    # three incomparable middles with shared bounds
    rep = validate_order(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    assert not rep.ok and not rep.distributive
    assert rep.witness is not None


def test_validate_order_flags_missing_bounds():
    rep = validate_order(["a", "b"], [])
    assert not rep.ok


def test_lattice_from_json_rejects_non_lattice():
    with pytest.raises(LatticeError):
        lattice_from_json_dict({"elements": ["a", "b"], "leq": []})


def test_json_round_trip():
    lat = lat3()
    again = lattice_from_json_dict(json.loads(json.dumps(lat.to_json_dict())))
    assert again.labels == lat.labels
    assert all(
        again.leq(a, b) == lat.leq(a, b)
        for a in range(lat.n)
        for b in range(lat.n)
    )


@given(posets(max_size=4))
def test_birkhoff_lattices_are_heyting(p):
    lat = birkhoff_lattice(p)
    assert validate(lat).ok
    for a in range(lat.n):
        for b in range(lat.n):
            r = lat.imp(a, b)
            assert lat.leq(lat.meet(a, r), b)
            assert all(
                lat.leq(x, r)
                for x in range(lat.n)
                if lat.leq(lat.meet(a, x), b)
            )


@given(posets(max_size=4))
def test_every_finite_frame_is_scattered_and_spatial(p):
    lat = birkhoff_lattice(p)
    assert is_scattered_frame(lat)
    ok, _ = is_spatial(lat)
    assert ok
