#!/usr/bin/env python
# -*- coding: utf-8 -*-
import os
import shlex
import sys

import invoke

APP_ROOT = os.path.dirname(os.path.abspath(__file__))


def typequant(*args):
    return " ".join(map(shlex.quote, [sys.executable, "-m", "typequant"] + list(args)))


@invoke.task
def test(ctx, coverage=False):
    if coverage:
        ctx.run("coverage run -m pytest -v && coverage report -m --include='typequant/*'")
    else:
        ctx.run("pytest -v")


@invoke.task
def curves(ctx, dest="./curves", samples=100000, seed=0, rate=48):
    """Write the lattice-versus-tree comparison CSVs for m=5 and m=10."""
    dest = os.path.abspath(dest)
    os.makedirs(dest, exist_ok=True)
    for m in (5, 10):
        out = os.path.join(dest, "compare-m%i.csv" % m)
        ctx.run(
            typequant(
                "compare",
                "--m=%i" % m,
                "--rate=%i" % rate,
                "--schemes=type_lattice,type_lattice_biased,type_lattice_dual",
                "--samples=%i" % samples,
                "--seed=%i" % seed,
                "--out=%s" % out,
            )
        )


@invoke.task
def analyze(ctx, m=3, n=2):
    ctx.run(typequant("analyze", "--m=%i" % m, "--n=%i" % n))


@invoke.task
def sdist(ctx):
    ctx.run("cd {} && python setup.py sdist".format(shlex.quote(APP_ROOT)))
