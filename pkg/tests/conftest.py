"""Shared test helpers."""

from __future__ import annotations

import random

import pytest

from bicomplex import DoubleComplex, Matrix, ONE, sc
from bicomplex.cli import main


ONE_1x1 = Matrix(1, 1, {(0, 0): ONE})


def run_cli(capsys, argv: list[str]) -> tuple[int, str]:
    """Invoke the CLI in-process and capture stdout."""
    code = main(argv)
    return code, capsys.readouterr().out


def run_cli_err(capsys, argv: list[str]) -> tuple[int, str]:
    """Like run_cli but returns stderr, where diagnostics go."""
    code = main(argv)
    return code, capsys.readouterr().err


def staircase(nverts: int, start=(0, 0)) -> DoubleComplex:
    """Zigzag 'del delbar del ...' with nverts one-dimensional vertices.

    Walks del-right then delbar-down alternately from `start`, shifted so
    every bidegree stays nonnegative.
    """
    p, q = start
    verts = [(p, q)]
    for i in range(nverts - 1):
        if i % 2 == 0:
            p += 1
        else:
            q -= 1
        verts.append((p, q))
    qmin = min(q for _, q in verts)
    verts = [(p, q - qmin) for p, q in verts]
    spaces = {v: 1 for v in verts}
    del_maps, delbar_maps = {}, {}
    for a, b in zip(verts, verts[1:]):
        if b == (a[0] + 1, a[1]):
            del_maps[a] = ONE_1x1
        else:
            delbar_maps[b] = ONE_1x1  # arrow points up, from b to a
    return DoubleComplex.build(spaces, del_maps, delbar_maps)


def random_matrix(rng: random.Random, nrows: int, ncols: int, density=0.6) -> Matrix:
    entries = {}
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < density:
                entries[(r, c)] = sc(rng.randint(-3, 3), rng.randint(-1, 1))
    return Matrix(nrows, ncols, entries)


@pytest.fixture
def rng():
    return random.Random(20260814)
