"""Python front end for the satsched core.

Instances are plain dicts in the same JSON shape the command-line tool reads.
Exact rationals come back as strings such as "40/31"; use `fractions.Fraction`
to do arithmetic on them.
"""

import json
from fractions import Fraction

from . import _core
from ._core import BudgetExceeded, CertificateError, InputError, ProtocolError

__all__ = [
    "BudgetExceeded",
    "CertificateError",
    "InputError",
    "ProtocolError",
    "adversary",
    "certify",
    "fraction",
    "generate",
    "gr",
    "opt",
    "ratio",
    "render_svg",
    "sweep",
    "tight_instance",
]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def fraction(value):
    return Fraction(value)


def gr(instance):
    return json.loads(_core.gr(_text(instance)))


def opt(instance, **limits):
    return json.loads(_core.opt(_text(instance), **limits))


def ratio(instance, **limits):
    return json.loads(_core.ratio(_text(instance), **limits))


def certify(instance, mode="auto", variant="either", repair=True):
    return json.loads(_core.certify(_text(instance), mode, variant, repair))


def generate(index, **config):
    return json.loads(_core.generate(config, index))


def sweep(certify="auto", repair=True, threads=1, **config):
    return json.loads(_core.sweep(config, certify, repair, threads))


def adversary(construction, against="gr", m=3, x=None, y=None, max_c=3, a1=64):
    """`against` is "gr", "fixed:N", an int, or a callable (job dict, machines) -> machine."""
    return json.loads(
        _core.adversary(construction, against, m, "" if x is None else str(x), "" if y is None else str(y), max_c, a1)
    )


def tight_instance(epsilon):
    return json.loads(_core.tight_instance(str(epsilon)))


def render_svg(instance, classify=True):
    return _core.render_svg(_text(instance), classify)
