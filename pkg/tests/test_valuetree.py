"""Value store tests: paths, vivification, counting, aliases, oracle runs."""

import random

import pytest
from refstore import RefError, RefStore

from joliet import valuetree
from joliet.nodes import IntLit, Path, PathSegment
from joliet.valuetree import (
    AliasCycle,
    MissingNode,
    NegativeIndex,
    ResolvedPath,
    ResolvedStep,
    Store,
    UndefinedValue,
    count,
    dump,
    read,
    resolve,
    write,
)


def literal_eval(expr):
    assert isinstance(expr, IntLit)
    return expr.value


def path(*atoms):
    """atoms: name or (name, index int)."""
    segments = []
    for atom in atoms:
        if isinstance(atom, tuple):
            segments.append(PathSegment(atom[0], IntLit(atom[1])))
        else:
            segments.append(PathSegment(atom))
    return Path(tuple(segments))


def rp(*pairs):
    return ResolvedPath(tuple(ResolvedStep(n, i) for n, i in pairs))


# ── resolve ──────────────────────────────────────────────────────


def test_resolve_alias_prefix_expansion():
    store = Store()
    store.bind_alias("var2", path("a", "b", "c"))
    resolved = resolve(store, path("var2", ("d", 1)), literal_eval)
    assert resolved == rp(("a", 0), ("b", 0), ("c", 0), ("d", 1))


def test_resolve_defaults_index_zero():
    store = Store()
    assert resolve(store, path("x"), literal_eval) == rp(("x", 0))


def test_resolve_self_cycle():
    store = Store()
    store.bind_alias("p", path("p"))
    with pytest.raises(AliasCycle):
        resolve(store, path("p"), literal_eval)


def test_resolve_two_step_cycle():
    store = Store()
    store.bind_alias("p", path("q"))
    store.bind_alias("q", path("p", "x"))
    with pytest.raises(AliasCycle):
        resolve(store, path("p"), literal_eval)


def test_resolve_alias_chain():
    store = Store()
    store.bind_alias("v1", path("a", "b"))
    store.bind_alias("v2", path("v1", "c"))
    resolved = resolve(store, path("v2", "d"), literal_eval)
    assert resolved == rp(("a", 0), ("b", 0), ("c", 0), ("d", 0))


def test_resolve_index_on_alias_use_targets_final_step():
    store = Store()
    store.bind_alias("var", path("a", "b"))
    assert resolve(store, path(("var", 2)), literal_eval) == rp(("a", 0), ("b", 2))
    # an index inside the stored target is kept when the use site has none
    store.bind_alias("var1", path("a", "b", "c", ("d", 1)))
    assert resolve(store, path("var1"), literal_eval) == rp(
        ("a", 0), ("b", 0), ("c", 0), ("d", 1))


def test_resolve_negative_index():
    store = Store()
    with pytest.raises(NegativeIndex):
        resolve(store, path(("x", -1)), literal_eval)


class VarMarker:
    """Stands in for a non-literal index expression."""


def test_alias_targets_reevaluated_per_use():
    store = Store()
    env = {"i": 0}

    def eval_index(expr):
        if isinstance(expr, IntLit):
            return expr.value
        return env["i"]

    store.bind_alias("v", Path((PathSegment("a"),
                                PathSegment("b", VarMarker()))))
    first = resolve(store, path("v"), eval_index)
    env["i"] = 1
    second = resolve(store, path("v"), eval_index)
    assert first == rp(("a", 0), ("b", 0))
    assert second == rp(("a", 0), ("b", 1))


# ── write / read / count ─────────────────────────────────────────


def test_write_creates_structure():
    store = Store()
    write(store, rp(("europe", 0), ("ireland", 0), ("city", 0)), "Dublin")
    assert read(store, rp(("europe", 0), ("ireland", 0), ("city", 0))) == "Dublin"
    assert count(store, rp(("europe", 0), ("ireland", 0), ("city", 0))) == 1


def test_vivification_extends_list_exactly():
    store = Store()
    write(store, rp(("a", 0), ("b", 2)), 7)
    assert count(store, rp(("a", 0), ("b", 0))) == 3
    assert read(store, rp(("a", 0), ("b", 2))) == 7
    with pytest.raises(UndefinedValue):
        read(store, rp(("a", 0), ("b", 0)))
    with pytest.raises(UndefinedValue):
        read(store, rp(("a", 0), ("b", 1)))
    with pytest.raises(MissingNode):
        read(store, rp(("a", 0), ("b", 3)))


def test_write_overwrites():
    store = Store()
    write(store, rp(("x", 0)), 1)
    write(store, rp(("x", 0)), 2)
    assert read(store, rp(("x", 0))) == 2


def test_read_missing_root():
    store = Store()
    with pytest.raises(MissingNode):
        read(store, rp(("nonexistent", 0)))


def test_count_missing_is_zero():
    store = Store()
    assert count(store, rp(("a", 0), ("b", 0))) == 0
    assert count(store, rp(("a", 0))) == 0


def test_count_root_list():
    store = Store()
    write(store, rp(("x", 4)), 1)
    assert count(store, rp(("x", 0))) == 5


def test_count_ignores_final_index():
    store = Store()
    write(store, rp(("a", 0), ("b", 2)), 7)
    assert count(store, rp(("a", 0), ("b", 2))) == 3


def test_write_through_alias_then_read_direct():
    store = Store()
    store.bind_alias("var1", path("a", "b", "c", ("d", 1)))
    resolved = resolve(store, path("var1"), literal_eval)
    write(store, resolved, 42)
    assert read(store, rp(("a", 0), ("b", 0), ("c", 0), ("d", 1))) == 42


def test_rebinding_alias_wins():
    store = Store()
    store.bind_alias("v", path("a", "b"))
    store.bind_alias("v", path("x", "y"))
    assert resolve(store, path("v"), literal_eval) == rp(("x", 0), ("y", 0))


def test_bind_root_scalar_drops_alias():
    store = Store()
    store.bind_alias("k", path("a", "b"))
    store.bind_root_scalar("k", "name")
    assert resolve(store, path("k"), literal_eval) == rp(("k", 0))
    assert read(store, rp(("k", 0))) == "name"


def test_list_never_shrinks():
    store = Store()
    write(store, rp(("a", 0), ("b", 5)), 1)
    write(store, rp(("a", 0), ("b", 0)), 2)
    assert count(store, rp(("a", 0), ("b", 0))) == 6


# ── dump ─────────────────────────────────────────────────────────


def test_dump_format():
    store = Store()
    write(store, rp(("europe", 0), ("ireland", 0), ("city", 0)), "Dublin")
    write(store, rp(("a", 0), ("b", 2)), 7)
    assert dump(store) == "\n".join([
        'europe[0] = undefined',
        'europe[0].ireland[0] = undefined',
        'europe[0].ireland[0].city[0] = "Dublin"',
        'a[0] = undefined',
        'a[0].b[0] = undefined',
        'a[0].b[1] = undefined',
        'a[0].b[2] = 7',
    ])


def test_dump_scalar_forms():
    store = Store()
    write(store, rp(("s", 0)), "x")
    write(store, rp(("i", 0)), 3)
    write(store, rp(("b", 0)), True)
    write(store, rp(("d", 0)), 1.5)
    assert dump(store).split("\n") == [
        's[0] = "x"', "i[0] = 3", "b[0] = true", "d[0] = 1.5"]


def test_empty_dump():
    assert dump(Store()) == ""


# ── randomized oracle agreement ──────────────────────────────────

_NAMES = ("a", "b", "c")
_ALIAS_NAMES = ("p", "q", "r")


def random_atom_path(rng):
    length = rng.randint(1, 3)
    atoms = []
    for i in range(length):
        pool = _NAMES if rng.random() < 0.8 else _ALIAS_NAMES
        name = rng.choice(pool) if i == 0 else rng.choice(_NAMES)
        if rng.random() < 0.6:
            index = rng.randint(0, 3) if rng.random() < 0.97 else -1
            atoms.append((name, index))
        else:
            atoms.append((name, None))
    return atoms


def to_path(atoms):
    return Path(tuple(
        PathSegment(name, None if index is None else IntLit(index))
        for name, index in atoms))


def run_script(rng, ops):
    real = Store()
    ref = RefStore()
    for _ in range(ops):
        op = rng.random()
        atoms = random_atom_path(rng)
        if op < 0.45:
            value = rng.choice((rng.randint(0, 99), "s", True, 2.5))
            results = []
            for runner in (
                lambda: write(real, resolve(real, to_path(atoms),
                                            literal_eval), value),
                lambda: ref.write(atoms, value),
            ):
                try:
                    results.append(("ok", runner()))
                except (valuetree.StoreError, RefError) as err:
                    results.append(("err", getattr(err, "kind", "?")))
            assert results[0] == results[1], atoms
        elif op < 0.75:
            outcomes = []
            for runner in (
                lambda: read(real, resolve(real, to_path(atoms),
                                           literal_eval)),
                lambda: ref.read(atoms),
            ):
                try:
                    outcomes.append(("ok", runner()))
                except (valuetree.StoreError, RefError) as err:
                    outcomes.append(("err", err.kind))
            assert outcomes[0] == outcomes[1], atoms
        elif op < 0.92:
            outcomes = []
            for runner in (
                lambda: count(real, resolve(real, to_path(atoms),
                                            literal_eval)),
                lambda: ref.count(atoms),
            ):
                try:
                    outcomes.append(("ok", runner()))
                except (valuetree.StoreError, RefError) as err:
                    outcomes.append(("err", err.kind))
            assert outcomes[0] == outcomes[1], atoms
        else:
            name = rng.choice(_ALIAS_NAMES)
            real.bind_alias(name, to_path(atoms))
            ref.bind_alias(name, atoms)


def test_oracle_agreement_scripts():
    for seed in range(200):
        rng = random.Random(seed)
        run_script(rng, rng.randint(1, 100))


def test_vivification_count_from_empty():
    for k in range(6):
        store = Store()
        write(store, rp(("a", 0), ("b", k)), 1)
        assert count(store, rp(("a", 0), ("b", 0))) == k + 1
